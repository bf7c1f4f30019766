//! Rational parameterizations `σ(t) = T σ'(t) + v` of classified quadrics,
//! the normalized map `σ̂ = (σ_2, ..., σ_n) / σ_1`, sample plans over
//! parameter boxes, and finite-difference Jacobians.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fourier::point_rng;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

use super::{PointCount, Quadric, QuadricCase, QuadricClassification};

/// Default exclusion band around the zero set of `σ_1`.
pub const DEFAULT_SIGMA1_TOL: f64 = 1e-6;
/// Relative central-difference step.
const FD_STEP: f64 = 1e-5;

type Evaluator<S> = Arc<dyn Fn(&[S]) -> Vec<S> + Send + Sync>;

#[derive(Clone)]
enum SurfaceMap<S> {
    NormalForm(QuadricClassification<S>),
    Custom(Evaluator<S>),
}

/// Rational map from a parameter domain in R^{n-1} onto a hypersurface in R^n.
#[derive(Clone)]
pub struct RationalParameterization<S> {
    dim: usize,
    map: SurfaceMap<S>,
    sigma1_tol: S,
}

impl<S: Scalar> fmt::Debug for RationalParameterization<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.map {
            SurfaceMap::NormalForm(cl) => format!("{:?}", cl.case),
            SurfaceMap::Custom(_) => "Custom".to_string(),
        };
        f.debug_struct("RationalParameterization")
            .field("dim", &self.dim)
            .field("map", &kind)
            .field("sigma1_tol", &self.sigma1_tol)
            .finish()
    }
}

impl<S: Scalar> RationalParameterization<S> {
    /// Wrap a user-supplied evaluator `t -> σ(t)` for an n-dimensional surface.
    pub fn custom(dim: usize, f: impl Fn(&[S]) -> Vec<S> + Send + Sync + 'static) -> Self {
        Self { dim, map: SurfaceMap::Custom(Arc::new(f)), sigma1_tol: S::c(DEFAULT_SIGMA1_TOL) }
    }

    pub fn with_sigma1_tol(mut self, tol: S) -> Self {
        self.sigma1_tol = tol;
        self
    }

    pub fn sigma1_tol(&self) -> S {
        self.sigma1_tol
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn param_dim(&self) -> usize {
        self.dim - 1
    }

    pub fn classification(&self) -> Option<&QuadricClassification<S>> {
        match &self.map {
            SurfaceMap::NormalForm(cl) => Some(cl),
            SurfaceMap::Custom(_) => None,
        }
    }

    pub fn quadric(&self) -> Option<&Quadric<S>> {
        self.classification().map(|cl| &cl.quadric)
    }

    fn check_len(&self, t: &[S]) -> Result<()> {
        if t.len() != self.dim - 1 {
            return Err(Error::DimensionMismatch { expected: self.dim - 1, got: t.len() });
        }
        Ok(())
    }

    /// Normal-form point `σ'(t)`; only for quadric parameterizations.
    pub fn normal_form_point(&self, t: &[S]) -> Result<Vec<S>> {
        self.check_len(t)?;
        let SurfaceMap::NormalForm(cl) = &self.map else {
            return Err(Error::InvalidInput("custom surfaces have no normal form".into()));
        };
        let n = self.dim;
        let mut s = Vec::with_capacity(n);
        match cl.case {
            QuadricCase::Paraboloid => {
                s.extend_from_slice(t);
                s.push(t.iter().zip(&cl.epsilons).map(|(&x, &e)| S::c(e as f64) * x * x).sum());
            }
            QuadricCase::CentralMixed => {
                if t[0] == S::zero() {
                    return Err(Error::OutsideDomain);
                }
                s.extend_from_slice(t);
                let rest: S = t[1..].iter().zip(&cl.epsilons).map(|(&x, &e)| S::c(e as f64) * x * x).sum();
                s.push((cl.c_prime.unwrap_or_else(S::zero) - rest) / t[0]);
            }
            QuadricCase::DefiniteSphere => {
                let (cos, sin): (Vec<S>, Vec<S>) = t
                    .iter()
                    .map(|&x| {
                        let d = S::one() + x * x;
                        ((S::one() - x * x) / d, S::c(2.0) * x / d)
                    })
                    .unzip();
                s = spherical_from_trig(&cos, &sin);
            }
        }
        Ok(s)
    }

    /// `σ(t)`.
    pub fn eval(&self, t: &[S]) -> Result<Vec<S>> {
        self.check_len(t)?;
        let s = match &self.map {
            SurfaceMap::NormalForm(cl) => cl.from_normal(&self.normal_form_point(t)?),
            SurfaceMap::Custom(f) => f(t),
        };
        if s.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: s.len() });
        }
        if s.iter().any(|x| !x.is_finite()) {
            return Err(Error::OutsideDomain);
        }
        Ok(s)
    }

    /// Whether `t` lies in the domain minus the band `|σ_1| <= tol`
    /// (and, for the mixed case, minus `|t_1| <= tol`).
    pub fn admissible(&self, t: &[S], tol: S) -> bool {
        if let Some(cl) = self.classification() {
            if cl.case == QuadricCase::CentralMixed && t.first().is_some_and(|&x| x.abs() <= tol) {
                return false;
            }
        }
        matches!(self.eval(t), Ok(s) if s[0].abs() > tol)
    }
}

/// Rational parameterization of a classified quadric.
pub fn parameterize<S: Scalar>(cl: &QuadricClassification<S>) -> Result<RationalParameterization<S>> {
    match cl.point_count {
        PointCount::Many => Ok(RationalParameterization {
            dim: cl.dim(),
            map: SurfaceMap::NormalForm(cl.clone()),
            sigma1_tol: S::c(DEFAULT_SIGMA1_TOL),
        }),
        PointCount::One => Err(Error::PointQuadric),
        PointCount::None => Err(Error::EmptyQuadric),
    }
}

/// Spherical coordinates from per-angle cosines and sines:
/// `s_1 = cos φ_1`, `s_k = sin φ_1 ... sin φ_{k-1} cos φ_k`,
/// `s_n = sin φ_1 ... sin φ_{n-1}`.
fn spherical_from_trig<S: Scalar>(cos: &[S], sin: &[S]) -> Vec<S> {
    let mut out = Vec::with_capacity(cos.len() + 1);
    let mut prefix = S::one();
    for (&c, &s) in cos.iter().zip(sin) {
        out.push(prefix * c);
        prefix *= s;
    }
    out.push(prefix);
    out
}

/// Unit-sphere point `τ(φ)` for angles `φ ∈ R^{n-1}`.
pub fn spherical_map<S: Scalar>(phi: &[S]) -> Vec<S> {
    let (cos, sin): (Vec<S>, Vec<S>) = phi.iter().map(|&p| (p.cos(), p.sin())).unzip();
    spherical_from_trig(&cos, &sin)
}

/// Finite-difference determinant of the Jacobian of the first `n-1`
/// components of `τ` with respect to `φ`.
pub fn angular_jacobian_det_fd<S: Scalar>(phi: &[S]) -> S {
    let k = phi.len();
    fd_jacobian(|p| Ok(spherical_map(p)[..k].to_vec()), phi).expect("spherical map is total").det()
}

/// `(-1)^{n-1} Π_{j=1}^{n-1} sin^{n-j}(φ_j)`.
pub fn angular_jacobian_det_closed_form<S: Scalar>(phi: &[S]) -> S {
    let n = phi.len() + 1;
    let sign = if (n - 1).is_multiple_of(2) { S::one() } else { -S::one() };
    phi.iter().enumerate().fold(sign, |acc, (j, &p)| acc * p.sin().powi((n - 1 - j) as i32))
}

/// Central-difference Jacobian with per-axis step `1e-5 (1 + |x_j|)`.
pub fn fd_jacobian<S: Scalar, F>(f: F, x: &[S]) -> Result<Matrix<S>>
where
    F: Fn(&[S]) -> Result<Vec<S>>,
{
    let k = x.len();
    let mut cols = Vec::with_capacity(k);
    let mut probe = x.to_vec();
    for j in 0..k {
        let h = S::tol(FD_STEP) * (S::one() + x[j].abs());
        probe[j] = x[j] + h;
        let fp = f(&probe)?;
        probe[j] = x[j] - h;
        let fm = f(&probe)?;
        probe[j] = x[j];
        cols.push(fp.iter().zip(&fm).map(|(&a, &b)| (a - b) / (h + h)).collect());
    }
    Ok(Matrix::from_cols(&cols))
}

/// `σ̂(t) = (σ_2/σ_1, ..., σ_n/σ_1)`.
pub fn sigma_hat<S: Scalar>(rp: &RationalParameterization<S>, t: &[S]) -> Result<Vec<S>> {
    let s = rp.eval(t)?;
    if s[0].abs() <= rp.sigma1_tol() {
        return Err(Error::OnSigma1Zero);
    }
    Ok(s[1..].iter().map(|&x| x / s[0]).collect())
}

/// Finite-difference `det(∂σ̂/∂t)`.
pub fn jacobian_det_sigma_hat<S: Scalar>(rp: &RationalParameterization<S>, t: &[S]) -> Result<S> {
    Ok(fd_jacobian(|x| sigma_hat(rp, x), t)?.det())
}

impl<S: Scalar> RationalParameterization<S> {
    /// Finite-difference `det(∂σ̄/∂t)` of the first `n-1` components of `σ`.
    pub fn sigma_bar_jacobian_det(&self, t: &[S]) -> Result<S> {
        let k = self.dim - 1;
        Ok(fd_jacobian(|x| Ok(self.eval(x)?[..k].to_vec()), t)?.det())
    }

    /// Finite-difference Jacobian of the first `n-1` components of `σ'`.
    pub fn normal_form_bar_jacobian(&self, t: &[S]) -> Result<Matrix<S>> {
        let k = self.dim - 1;
        fd_jacobian(|x| Ok(self.normal_form_point(x)?[..k].to_vec()), t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleMode {
    /// `k` points per axis, endpoints included.
    Grid(usize),
    /// `N` uniform points.
    Random(usize),
}

/// Box of parameter values standing in for an open set `O` of the domain.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplePlan<S> {
    pub bounds: Vec<(S, S)>,
    pub mode: SampleMode,
    pub seed: u64,
    pub sigma1_tol: S,
}

impl<S: Scalar> SamplePlan<S> {
    pub fn new(bounds: Vec<(S, S)>, mode: SampleMode, seed: u64) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::InvalidInput("sample box needs at least one axis".into()));
        }
        if let Some((lo, hi)) = bounds.iter().find(|(lo, hi)| !(lo < hi)) {
            return Err(Error::InvalidInput(format!("empty sample interval [{lo}, {hi}]")));
        }
        match mode {
            SampleMode::Grid(0) | SampleMode::Random(0) => {
                return Err(Error::InvalidInput("sample count must be positive".into()))
            }
            _ => {}
        }
        Ok(Self { bounds, mode, seed, sigma1_tol: S::c(DEFAULT_SIGMA1_TOL) })
    }

    /// Same interval on every one of `param_dim` axes.
    pub fn cube(param_dim: usize, lo: S, hi: S, mode: SampleMode, seed: u64) -> Result<Self> {
        Self::new(vec![(lo, hi); param_dim], mode, seed)
    }

    /// `[0.2, 0.8]^{n-1}` with 100 random samples.
    pub fn default_for(param_dim: usize) -> Self {
        Self::cube(param_dim, S::c(0.2), S::c(0.8), SampleMode::Random(100), 0).expect("valid default plan")
    }

    pub fn with_sigma1_tol(mut self, tol: S) -> Self {
        self.sigma1_tol = tol;
        self
    }

    pub fn param_dim(&self) -> usize {
        self.bounds.len()
    }

    /// All parameter points of the plan, admissible or not, in plan order.
    pub fn parameters(&self) -> Vec<Vec<S>> {
        let d = self.bounds.len();
        match self.mode {
            SampleMode::Grid(k) => {
                let axis = |j: usize, i: usize| {
                    let (lo, hi) = self.bounds[j];
                    if k == 1 {
                        (lo + hi) / S::c(2.0)
                    } else {
                        lo + (hi - lo) * S::c(i as f64) / S::c((k - 1) as f64)
                    }
                };
                let total = k.pow(d as u32);
                (0..total)
                    .map(|mut flat| {
                        let mut t = vec![S::zero(); d];
                        for j in (0..d).rev() {
                            t[j] = axis(j, flat % k);
                            flat /= k;
                        }
                        t
                    })
                    .collect()
            }
            SampleMode::Random(count) => {
                let mut rng = point_rng(self.seed, 0);
                (0..count)
                    .map(|_| {
                        self.bounds.iter().map(|&(lo, hi)| lo + (hi - lo) * S::c(rng.gen::<f64>())).collect()
                    })
                    .collect()
            }
        }
    }

    /// Admissible `(t, σ(t))` pairs in plan order.
    pub fn admissible(&self, rp: &RationalParameterization<S>) -> Result<Vec<(Vec<S>, Vec<S>)>> {
        if self.param_dim() != rp.param_dim() {
            return Err(Error::DimensionMismatch { expected: rp.param_dim(), got: self.param_dim() });
        }
        Ok(self
            .parameters()
            .into_iter()
            .filter(|t| rp.admissible(t, self.sigma1_tol))
            .map(|t| {
                let s = rp.eval(&t).expect("admissible points evaluate");
                (t, s)
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{classify, tests::*};
    use super::*;

    fn circle_rp() -> RationalParameterization<f64> {
        parameterize(&classify(&unit_circle()).unwrap()).unwrap()
    }

    #[test]
    fn circle_points() {
        let rp = circle_rp();
        let s0 = rp.eval(&[0.0]).unwrap();
        assert!((s0[0] - 1.0).abs() < 1e-15 && s0[1].abs() < 1e-15);
        let s1 = rp.eval(&[1.0]).unwrap();
        assert!(s1[0].abs() < 1e-15 && (s1[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sphere_origin_parameter() {
        let q = Quadric::<f64>::sphere(&[0.0, 0.0, 0.0], 1.0).unwrap();
        let rp = parameterize(&classify(&q).unwrap()).unwrap();
        let s = rp.eval(&[0.0, 0.0]).unwrap();
        assert!((s[0] - 1.0).abs() < 1e-15 && s[1].abs() < 1e-15 && s[2].abs() < 1e-15);
    }

    #[test]
    fn hyperbola_is_t_and_inverse() {
        let rp = parameterize(&classify(&hyperbola()).unwrap()).unwrap();
        let s = rp.eval(&[2.0]).unwrap();
        assert!((s[0] - 2.0).abs() < 1e-14 && (s[1] - 0.5).abs() < 1e-14);
        assert_eq!(rp.eval(&[0.0]), Err(Error::OutsideDomain));
    }

    #[test]
    fn parabola_is_t_t_squared() {
        let rp = parameterize(&classify(&parabola()).unwrap()).unwrap();
        let s = rp.eval(&[1.5]).unwrap();
        assert!((s[0] - 1.5).abs() < 1e-15 && (s[1] - 2.25).abs() < 1e-15);
    }

    #[test]
    fn sigma_hat_examples() {
        let rp = circle_rp();
        assert!(sigma_hat(&rp, &[0.0]).unwrap()[0].abs() < 1e-15);
        assert!((sigma_hat(&rp, &[0.5]).unwrap()[0] - 4.0 / 3.0).abs() < 1e-14);
        // σ_1(1) = 0
        assert_eq!(sigma_hat(&rp, &[1.0]), Err(Error::OnSigma1Zero));
    }

    #[test]
    fn sigma_hat_jacobian_examples() {
        let rp = circle_rp();
        assert!((jacobian_det_sigma_hat(&rp, &[0.0]).unwrap() - 2.0).abs() < 1e-8);
        let line = RationalParameterization::custom(2, |t: &[f64]| vec![t[0], t[0]]);
        for t in [-0.7, 0.3, 2.0] {
            assert_eq!(jacobian_det_sigma_hat(&line, &[t]).unwrap(), 0.0);
        }
    }

    #[test]
    fn grid_plan_includes_endpoints() {
        let plan = SamplePlan::cube(2, -0.5, 0.5, SampleMode::Grid(5), 0).unwrap();
        let pts = plan.parameters();
        assert_eq!(pts.len(), 25);
        assert_eq!(pts[0], vec![-0.5, -0.5]);
        assert_eq!(pts[24], vec![0.5, 0.5]);
        assert!(pts.contains(&vec![0.0, 0.0]));
    }

    #[test]
    fn random_plan_is_deterministic() {
        let a = SamplePlan::<f64>::cube(2, 0.0, 1.0, SampleMode::Random(10), 7).unwrap();
        let b = a.clone();
        assert_eq!(a.parameters(), b.parameters());
        let c = SamplePlan::<f64>::cube(2, 0.0, 1.0, SampleMode::Random(10), 8).unwrap();
        assert_ne!(a.parameters(), c.parameters());
    }

    #[test]
    fn invalid_plans() {
        assert!(SamplePlan::<f64>::cube(1, 1.0, 1.0, SampleMode::Grid(3), 0).is_err());
        assert!(SamplePlan::<f64>::cube(1, 0.0, 1.0, SampleMode::Random(0), 0).is_err());
    }

    #[test]
    fn angular_determinant_closed_form() {
        for phi in [vec![0.7f64], vec![0.4, 2.1], vec![1.2, 0.3, 2.8]] {
            let fd = angular_jacobian_det_fd(&phi);
            let cf = angular_jacobian_det_closed_form(&phi);
            assert!((fd - cf).abs() <= 1e-8 * cf.abs(), "{fd} vs {cf}");
        }
    }
}
