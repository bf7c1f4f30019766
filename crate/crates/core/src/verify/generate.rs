//! Random fixtures for the identity experiment.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fourier::point_rng;
use crate::polytope::{intersect, volume, ConvexPolytope, GeneralizedPolytope, Halfspace};
use crate::scalar::{dot, Scalar};

/// Attempts before a generator gives up.
const MAX_TRIES: usize = 64;
/// Smallest accepted volume for a random polytope.
const MIN_VOLUME: f64 = 0.05;
/// Symmetric differences at or below this volume count as the same set.
pub const MIN_SYMMETRIC_DIFFERENCE: f64 = 1e-3;
pub const DEFAULT_JITTER: f64 = 0.1;

/// Hull of `n + 1 + k` uniform points in `[-1, 1]^n`, `k ∈ [0, n]`.
pub fn random_convex_polytope<S: Scalar>(n: usize, rng: &mut ChaCha8Rng) -> Result<ConvexPolytope<S>> {
    for _ in 0..MAX_TRIES {
        let count = n + 1 + rng.gen_range(0..=n);
        let pts: Vec<Vec<S>> =
            (0..count).map(|_| (0..n).map(|_| S::c(rng.gen_range(-1.0..1.0))).collect()).collect();
        if let Ok(p) = ConvexPolytope::from_vertices(&pts) {
            if volume(&p) > S::c(MIN_VOLUME) {
                return Ok(p);
            }
        }
    }
    Err(Error::DegenerateInput("could not draw a full-dimensional polytope".into()))
}

/// Two overlapping slabs of `p` along a random direction whose union is `p`.
pub fn redecompose<S: Scalar>(p: &ConvexPolytope<S>, rng: &mut ChaCha8Rng) -> Result<GeneralizedPolytope<S>> {
    let n = p.dim();
    for _ in 0..MAX_TRIES {
        let u: Vec<S> = (0..n).map(|_| S::c(rng.gen_range(-1.0..1.0))).collect();
        let proj: Vec<S> = p.vertices().iter().map(|v| dot(&u, v)).collect();
        let lo = proj.iter().copied().fold(S::infinity(), S::min);
        let hi = proj.iter().copied().fold(S::neg_infinity(), S::max);
        if !(hi - lo > S::c(1e-3)) {
            continue;
        }
        let a: f64 = rng.gen_range(0.3..0.45);
        let b: f64 = rng.gen_range(0.55..0.7);
        let cut_hi = lo + (hi - lo) * S::c(b);
        let cut_lo = lo + (hi - lo) * S::c(a);
        let below = Halfspace::new(u.clone(), cut_hi)?;
        let above = Halfspace::new(u.iter().map(|&x| -x).collect(), -cut_lo)?;
        if let (Some(p1), Some(p2)) = (p.clip(&below), p.clip(&above)) {
            return GeneralizedPolytope::new(vec![p1, p2]);
        }
    }
    Err(Error::DegenerateInput("could not split polytope into overlapping pieces".into()))
}

/// `vol(p Δ q) = vol p + vol q - 2 vol(p ∩ q)`.
pub fn symmetric_difference_volume<S: Scalar>(p: &ConvexPolytope<S>, q: &ConvexPolytope<S>) -> Result<S> {
    let common = intersect(p, q)?.map(|c| volume(&c)).unwrap_or_else(S::zero);
    Ok(volume(p) + volume(q) - S::c(2.0) * common)
}

/// Hull of the vertices of `p`, each jittered uniformly in `[-amp, amp]^n`,
/// redrawn until it differs from `p` by more than [`MIN_SYMMETRIC_DIFFERENCE`].
pub fn perturb<S: Scalar>(p: &ConvexPolytope<S>, amp: f64, rng: &mut ChaCha8Rng) -> Result<ConvexPolytope<S>> {
    for _ in 0..MAX_TRIES {
        let pts: Vec<Vec<S>> = p
            .vertices()
            .iter()
            .map(|v| v.iter().map(|&x| x + S::c(rng.gen_range(-amp..=amp))).collect())
            .collect();
        let Ok(q) = ConvexPolytope::from_vertices(&pts) else { continue };
        if symmetric_difference_volume(p, &q)? > S::c(MIN_SYMMETRIC_DIFFERENCE) {
            return Ok(q);
        }
    }
    Err(Error::DegenerateInput("perturbation kept reproducing the same set".into()))
}

/// A generated identity-experiment pair.
#[derive(Clone, Debug)]
pub struct GeneratedPair<S> {
    pub p1: GeneralizedPolytope<S>,
    pub p2: GeneralizedPolytope<S>,
    pub expect_equal: bool,
}

/// `count` pairs with `p2` a two-piece redecomposition of `p1` (equal) or a
/// vertex-jittered copy (unequal). Pair `i` draws from stream `i` of `seed`.
pub fn generate_pairs<S: Scalar>(n: usize, count: usize, equal: bool, seed: u64) -> Result<Vec<GeneratedPair<S>>> {
    (0..count)
        .map(|i| {
            let mut rng = point_rng(seed, i as u64);
            let p = random_convex_polytope(n, &mut rng)?;
            let p2 = if equal { redecompose(&p, &mut rng)? } else { perturb(&p, DEFAULT_JITTER, &mut rng)?.into() };
            Ok(GeneratedPair { p1: p.into(), p2, expect_equal: equal })
        })
        .collect()
}
