//! Independent numerical oracles for the transform: Monte Carlo over the
//! bounding box and tensor Gauss-Legendre through the Duffy collapse.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polytope::{GeneralizedPolytope, Simplex};
use crate::scalar::{dot, Scalar};

use super::Decomposition;

/// Highest Gauss-Legendre order accepted.
pub const MAX_ORDER: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadratureMethod {
    MonteCarlo,
    DuffyGauss,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureSpec {
    pub method: QuadratureMethod,
    /// Sample count for Monte Carlo, per-axis order for Duffy-Gauss.
    pub count: usize,
    pub seed: u64,
}

impl QuadratureSpec {
    pub fn monte_carlo(samples: usize, seed: u64) -> Self {
        Self { method: QuadratureMethod::MonteCarlo, count: samples, seed }
    }

    pub fn duffy_gauss(order: usize) -> Self {
        Self { method: QuadratureMethod::DuffyGauss, count: order, seed: 0 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidSpec("count must be positive".into()));
        }
        if self.method == QuadratureMethod::DuffyGauss && self.count > MAX_ORDER {
            return Err(Error::InvalidSpec(format!("order {} exceeds {MAX_ORDER}", self.count)));
        }
        if self.method == QuadratureMethod::MonteCarlo && self.count < 2 {
            return Err(Error::InvalidSpec("Monte Carlo needs at least 2 samples".into()));
        }
        Ok(())
    }
}

/// Random stream for evaluation point `index` under `seed`.
pub fn point_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Quadrature estimate of the transform and its standard error (zero for
/// Duffy-Gauss).
pub fn quadrature_ft<S: Scalar>(
    p: &GeneralizedPolytope<S>,
    s: &[S],
    spec: &QuadratureSpec,
) -> Result<(Complex<S>, S)> {
    quadrature_ft_indexed(p, s, spec, 0)
}

/// As [`quadrature_ft`], drawing Monte Carlo samples from the substream for
/// evaluation point `index` so batches are order- and schedule-independent.
pub fn quadrature_ft_indexed<S: Scalar>(
    p: &GeneralizedPolytope<S>,
    s: &[S],
    spec: &QuadratureSpec,
    index: u64,
) -> Result<(Complex<S>, S)> {
    spec.validate()?;
    if s.len() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: s.len() });
    }
    match spec.method {
        QuadratureMethod::MonteCarlo => Ok(monte_carlo(p, s, spec.count, &mut point_rng(spec.seed, index))),
        QuadratureMethod::DuffyGauss => {
            let d = Decomposition::generalized(p)?;
            Ok((duffy_decomposition(&d, s, spec.count), S::zero()))
        }
    }
}

fn monte_carlo<S: Scalar>(p: &GeneralizedPolytope<S>, s: &[S], samples: usize, rng: &mut ChaCha8Rng) -> (Complex<S>, S) {
    let (lo, hi) = p.bounding_box();
    let box_vol: S = lo.iter().zip(&hi).map(|(&a, &b)| b - a).fold(S::one(), |acc, x| acc * x);
    let n = p.dim();
    let mut x = vec![S::zero(); n];
    let (mut sr, mut si, mut sr2, mut si2) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..samples {
        for j in 0..n {
            let u: f64 = rng.gen();
            x[j] = lo[j] + (hi[j] - lo[j]) * S::c(u);
        }
        if p.contains(&x) {
            let phase = -dot(s, &x).as_f64();
            let (im, re) = phase.sin_cos();
            sr += re;
            si += im;
            sr2 += re * re;
            si2 += im * im;
        }
    }
    let k = samples as f64;
    let (mr, mi) = (sr / k, si / k);
    let var = ((sr2 - k * mr * mr) + (si2 - k * mi * mi)) / (k - 1.0);
    let stderr = box_vol * S::c((var.max(0.0) / k).sqrt());
    (Complex::new(box_vol * S::c(mr), box_vol * S::c(mi)), stderr)
}

/// Gauss-Legendre nodes and weights on [0, 1].
pub fn gauss_legendre<S: Scalar>(order: usize) -> (Vec<S>, Vec<S>) {
    let mut nodes = Vec::with_capacity(order);
    let mut weights = Vec::with_capacity(order);
    for i in 0..order {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(order, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(order, x);
        if d != 0.0 {
            dp = d;
        }
        nodes.push(S::c(0.5 * (1.0 - x)));
        weights.push(S::c(1.0 / ((1.0 - x * x) * dp * dp)));
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

/// Tensor Gauss rule on a simplex via the Duffy collapse
/// `b_k = u_k prod_{j<k} (1 - u_j)`, Jacobian `prod_j (1 - u_j)^(n - j)`.
pub fn duffy_simplex<S: Scalar>(sx: &Simplex<S>, s: &[S], order: usize) -> Complex<S> {
    let (nodes, weights) = gauss_legendre::<S>(order);
    duffy_with_rule(sx, s, &nodes, &weights)
}

fn duffy_with_rule<S: Scalar>(sx: &Simplex<S>, s: &[S], nodes: &[S], weights: &[S]) -> Complex<S> {
    let n = sx.dim();
    let v = sx.vertices();
    let edges: Vec<Vec<S>> = v[1..].iter().map(|w| crate::scalar::sub(w, &v[0])).collect();
    let base_phase = dot(s, &v[0]);
    let edge_phase: Vec<S> = edges.iter().map(|e| dot(s, e)).collect();
    let order = nodes.len();
    let mut idx = vec![0usize; n];
    let mut acc = Complex::new(S::zero(), S::zero());
    'grid: loop {
        let mut remaining = S::one();
        let mut weight = S::one();
        let mut phase = base_phase;
        for (k, &i) in idx.iter().enumerate() {
            let u = nodes[i];
            let b = u * remaining;
            phase += b * edge_phase[k];
            weight *= weights[i];
            if k + 1 < n {
                weight *= (S::one() - u).powi((n - k - 1) as i32);
            }
            remaining *= S::one() - u;
        }
        acc += Complex::new(S::zero(), -phase).exp() * weight;
        for k in (0..n).rev() {
            idx[k] += 1;
            if idx[k] < order {
                continue 'grid;
            }
            idx[k] = 0;
        }
        break;
    }
    acc * sx.abs_det()
}

pub(super) fn duffy_decomposition<S: Scalar>(d: &Decomposition<S>, s: &[S], order: usize) -> Complex<S> {
    let (nodes, weights) = gauss_legendre::<S>(order);
    d.terms()
        .iter()
        .map(|(sign, sx)| duffy_with_rule(sx, s, &nodes, &weights) * *sign)
        .fold(Complex::new(S::zero(), S::zero()), |a, b| a + b)
}
