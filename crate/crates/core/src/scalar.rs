//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All tolerances in the crate are written for `f64`. [`Scalar::tol`] maps such a
//! tolerance onto the precision of the implementing type by matching its
//! position on a log-epsilon scale, so `f64` keeps the literal value and `f32`
//! gets a proportionally looser one.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real floating point scalar: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Lift an `f64` constant into `Self`.
    #[inline]
    fn c(v: f64) -> Self {
        Self::from_f64(v).expect("f64 constant representable")
    }

    /// Rescale an `f64`-calibrated tolerance to this type's precision.
    #[inline]
    fn tol(t: f64) -> Self {
        let p = Self::epsilon().to_f64().unwrap().ln() / f64::EPSILON.ln();
        if p == 1.0 {
            Self::c(t)
        } else {
            Self::c(t.powf(p))
        }
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Euclidean dot product.
#[inline]
pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

#[inline]
pub fn norm<S: Scalar>(a: &[S]) -> S {
    dot(a, a).sqrt()
}

#[inline]
pub fn max_abs<S: Scalar>(a: &[S]) -> S {
    a.iter().fold(S::zero(), |m, &x| m.max(x.abs()))
}

#[inline]
pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

#[inline]
pub fn add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

#[inline]
pub fn scale<S: Scalar>(a: &[S], k: S) -> Vec<S> {
    a.iter().map(|&x| x * k).collect()
}

/// Cast a slice between scalar types.
pub fn cast_vec<A: Scalar, B: Scalar>(a: &[A]) -> Vec<B> {
    a.iter().map(|&x| B::c(x.as_f64())).collect()
}
