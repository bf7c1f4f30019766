//! Exact Fourier transforms of generalized polytopes, rational
//! parameterizations of quadric hypersurfaces, and numerical experiments on
//! whether a transform restricted to such a surface determines the polytope.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix `f64`, which is what the command-line tool uses.

// `!(x > y)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod fourier;
pub mod linalg;
pub mod polytope;
pub mod quadric;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use fourier::{generalized_ft, polytope_ft, simplex_ft, Decomposition, SpectrumSample};
pub use polytope::{mirror, triangulate, ConvexPolytope, GeneralizedPolytope, Halfspace, Hyperplane, Simplex};
pub use quadric::{classify, line_free, parameterize, Quadric, QuadricCase, QuadricClassification};
pub use scalar::Scalar;

pub type Complex64 = num_complex::Complex<f64>;
pub type Matrix64 = linalg::Matrix<f64>;
pub type Simplex64 = polytope::Simplex<f64>;
pub type ConvexPolytope64 = polytope::ConvexPolytope<f64>;
pub type GeneralizedPolytope64 = polytope::GeneralizedPolytope<f64>;
pub type Hyperplane64 = polytope::Hyperplane<f64>;
pub type Decomposition64 = fourier::Decomposition<f64>;
pub type Quadric64 = quadric::Quadric<f64>;
pub type QuadricClassification64 = quadric::QuadricClassification<f64>;
pub type RationalParameterization64 = quadric::RationalParameterization<f64>;
pub type SamplePlan64 = quadric::SamplePlan<f64>;
pub type ComparisonReport64 = verify::ComparisonReport<f64>;
