//! Exact Fourier transform `F_P(s) = ∫_P exp(-i s.x) dx` of generalized polytopes.
//!
//! Each convex piece is triangulated and each simplex contributes
//! `|det| * exp[-i s.v_0, ..., -i s.v_n]`, an exponential divided difference
//! over its vertices. The divided-difference form is entire in `s`, so
//! directions where vertex differences are orthogonal to `s` need no special
//! handling. Unions are resolved by inclusion-exclusion over full-dimensional
//! intersections of the pieces.

mod expdiff;
mod quadrature;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polytope::{intersect, triangulate, ConvexPolytope, GeneralizedPolytope, Simplex};
use crate::scalar::Scalar;

pub use expdiff::{expdiff, ExpNodes, EXPONENT_GUARD, MAX_NODES};
pub use quadrature::{
    duffy_simplex, gauss_legendre, point_rng, quadrature_ft, quadrature_ft_indexed, QuadratureMethod, QuadratureSpec,
    MAX_ORDER,
};

/// One evaluation of a transform, optionally tagged with its surface parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSample<S> {
    pub t: Option<Vec<S>>,
    pub s: Vec<S>,
    pub value: Complex<S>,
}

/// Transform of a single simplex.
pub fn simplex_ft<S: Scalar>(sx: &Simplex<S>, s: &[S]) -> Result<Complex<S>> {
    if s.len() != sx.dim() {
        return Err(Error::DimensionMismatch { expected: sx.dim(), got: s.len() });
    }
    let nodes = ExpNodes::from_vertices(sx.vertices(), s)?;
    Ok(expdiff(&nodes)? * sx.abs_det())
}

/// Transform of a convex polytope, summed over its triangulation.
pub fn polytope_ft<S: Scalar>(p: &ConvexPolytope<S>, s: &[S]) -> Result<Complex<S>> {
    Decomposition::convex(p)?.eval(s)
}

/// Transform of a generalized polytope by inclusion-exclusion.
pub fn generalized_ft<S: Scalar>(p: &GeneralizedPolytope<S>, s: &[S]) -> Result<Complex<S>> {
    Decomposition::generalized(p)?.eval(s)
}

/// Signed simplices whose transforms sum to the transform of a region.
///
/// Building one is the expensive part (intersections and triangulations);
/// evaluation at many frequencies reuses it.
#[derive(Clone, Debug)]
pub struct Decomposition<S> {
    dim: usize,
    terms: Vec<(S, Simplex<S>)>,
}

impl<S: Scalar> Decomposition<S> {
    pub fn convex(p: &ConvexPolytope<S>) -> Result<Self> {
        Ok(Self { dim: p.dim(), terms: triangulate(p)?.into_iter().map(|sx| (S::one(), sx)).collect() })
    }

    pub fn from_simplices(dim: usize, simplices: Vec<Simplex<S>>) -> Self {
        Self { dim, terms: simplices.into_iter().map(|sx| (S::one(), sx)).collect() }
    }

    /// Inclusion-exclusion over all subsets `J` with full-dimensional
    /// `P_J`. `P_J` is built from `P_{J \ {max J}}`, so a subset whose
    /// predecessor was empty is skipped without further work.
    pub fn generalized(p: &GeneralizedPolytope<S>) -> Result<Self> {
        let pieces = p.pieces();
        let m = pieces.len();
        let mut memo: Vec<Option<ConvexPolytope<S>>> = vec![None; 1 << m];
        let mut terms = Vec::new();
        for mask in 1usize..1 << m {
            let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
            let rest = mask ^ (1 << top);
            let cell = if rest == 0 {
                Some(pieces[top].clone())
            } else {
                match &memo[rest] {
                    Some(q) => intersect(q, &pieces[top])?,
                    None => None,
                }
            };
            if let Some(c) = &cell {
                let sign = if mask.count_ones() % 2 == 1 { S::one() } else { -S::one() };
                terms.extend(triangulate(c)?.into_iter().map(|sx| (sign, sx)));
            }
            memo[mask] = cell;
        }
        Ok(Self { dim: p.dim(), terms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(S, Simplex<S>)] {
        &self.terms
    }

    /// Signed volume, i.e. the transform at the origin.
    pub fn volume(&self) -> S {
        self.terms.iter().map(|(sign, sx)| *sign * sx.volume()).sum()
    }

    pub fn eval(&self, s: &[S]) -> Result<Complex<S>> {
        if s.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: s.len() });
        }
        let mut acc = Complex::new(S::zero(), S::zero());
        for (sign, sx) in &self.terms {
            acc += simplex_ft(sx, s)? * *sign;
        }
        Ok(acc)
    }

    /// Evaluate at many frequencies in parallel; results keep input order.
    pub fn eval_many(&self, freqs: &[Vec<S>]) -> Result<Vec<Complex<S>>> {
        freqs.par_iter().map(|s| self.eval(s)).collect()
    }

    /// Duffy-Gauss quadrature of the same signed simplices.
    pub fn quadrature(&self, s: &[S], order: usize) -> Complex<S> {
        quadrature::duffy_decomposition(self, s, order)
    }
}
