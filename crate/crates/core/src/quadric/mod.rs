//! Quadric hypersurfaces `½ sᵀA s + bᵀs + c = 0` and their rational
//! parameterizations.
//!
//! [`classify`] reduces a quadric by an affine change of variables
//! `s = T s' + v` to one of three normal forms:
//!
//! 1. paraboloid, `rk A = n-1`: `Σ ε_j s'_j² = s'_n`
//! 2. central with mixed signs: `s'_1 s'_n + Σ_{j=2}^{n-1} ε_j s'_j² = c'`
//! 3. definite: the unit sphere `Σ s'_j² = 1`
//!
//! and [`parameterize`] turns the normal form into a rational map.

mod conditions;
mod param;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::point_rng;
use crate::linalg::{independent_rows, symmetric_eigen, Matrix};
use crate::scalar::{dot, norm, Scalar};

pub use conditions::{
    check_hyperplane_condition, check_inner_point_condition, psi_jacobian_det, solve_last_coordinate,
    HyperplaneCheck, InnerPointCheck,
};
pub use param::{
    angular_jacobian_det_closed_form, angular_jacobian_det_fd, fd_jacobian, jacobian_det_sigma_hat, parameterize,
    sigma_hat, spherical_map, RationalParameterization, SampleMode, SamplePlan, DEFAULT_SIGMA1_TOL,
};

/// Eigenvalues at most this fraction of the largest magnitude count as zero.
const RANK_TOL: f64 = 1e-9;
/// Jacobi stops once the off-diagonal mass is this fraction of `||A||_F`.
const JACOBI_TOL: f64 = 1e-12;
/// Random restarts of the line search.
pub const LINE_SEARCH_SEEDS: u64 = 200;

/// Quadric `½ sᵀA s + bᵀs + c = 0` with symmetric nonzero `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadric<S> {
    a: Matrix<S>,
    b: Vec<S>,
    c: S,
}

impl<S: Scalar> Quadric<S> {
    pub fn new(a: Matrix<S>, b: Vec<S>, c: S) -> Result<Self> {
        let n = a.rows();
        if n < 2 || a.cols() != n {
            return Err(Error::InvalidInput("A must be square with n >= 2".into()));
        }
        if b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: b.len() });
        }
        if !a.is_symmetric(S::tol(1e-12) * (S::one() + a.max_abs())) {
            return Err(Error::InvalidInput("A must be symmetric".into()));
        }
        if a.max_abs() == S::zero() {
            return Err(Error::InvalidInput("A must be nonzero".into()));
        }
        Ok(Self { a, b, c })
    }

    /// Sphere `|s - center|² = r²`.
    pub fn sphere(center: &[S], radius: S) -> Result<Self> {
        let n = center.len();
        let two = S::c(2.0);
        let b = center.iter().map(|&x| -two * x).collect();
        Self::new(Matrix::diag(&vec![two; n]), b, dot(center, center) - radius * radius)
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> &Matrix<S> {
        &self.a
    }

    pub fn b(&self) -> &[S] {
        &self.b
    }

    pub fn c(&self) -> S {
        self.c
    }

    /// `½ sᵀA s + bᵀs + c`.
    pub fn residual(&self, s: &[S]) -> S {
        S::c(0.5) * dot(s, &self.a.mul_vec(s)) + dot(&self.b, s) + self.c
    }

    /// `A s + b`.
    pub fn gradient(&self, s: &[S]) -> Vec<S> {
        self.a.mul_vec(s).iter().zip(&self.b).map(|(&x, &y)| x + y).collect()
    }

    /// The quadric in coordinates `y` with `s = M y + w`.
    pub fn pullback(&self, m: &Matrix<S>, w: &[S]) -> Result<Self> {
        let mt = m.transpose();
        let a = mt.matmul(&self.a).matmul(m);
        // re-symmetrize against rounding
        let n = a.rows();
        let mut sym = a.clone();
        for i in 0..n {
            for j in 0..n {
                sym[(i, j)] = S::c(0.5) * (a[(i, j)] + a[(j, i)]);
            }
        }
        let b = mt.mul_vec(&self.gradient(w));
        Self::new(sym, b, self.residual(w))
    }

    /// Magnitude used to scale absolute tolerances.
    pub fn scale(&self) -> S {
        S::one() + self.a.max_abs() + norm(&self.b) + self.c.abs()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadricCase {
    /// `rk A = n - 1`.
    Paraboloid = 1,
    /// `rk A = n`, eigenvalues of both signs.
    CentralMixed = 2,
    /// `rk A = n`, definite.
    DefiniteSphere = 3,
}

impl QuadricCase {
    pub fn number(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointCount {
    None,
    One,
    Many,
}

/// Outcome of [`classify`]: normal-form case and the affine map onto it.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricClassification<S> {
    pub quadric: Quadric<S>,
    pub case: QuadricCase,
    /// Signs `ε_j` of the normal form (empty for the sphere case).
    pub epsilons: Vec<i8>,
    /// Right-hand side `c'` of the mixed normal form.
    pub c_prime: Option<S>,
    /// `s = T s' + v`.
    pub t: Matrix<S>,
    pub v: Vec<S>,
    pub line_free: bool,
    pub point_count: PointCount,
    /// Eigenvalues of `A`, descending.
    pub eigenvalues: Vec<S>,
}

impl<S: Scalar> QuadricClassification<S> {
    pub fn dim(&self) -> usize {
        self.v.len()
    }

    /// `T s' + v`.
    pub fn from_normal(&self, s_prime: &[S]) -> Vec<S> {
        self.t.mul_vec(s_prime).iter().zip(&self.v).map(|(&x, &y)| x + y).collect()
    }

    /// Residual of the normal-form equation at `s'`.
    pub fn normal_form_residual(&self, s_prime: &[S]) -> S {
        let n = s_prime.len();
        let eps = |j: usize| S::c(self.epsilons[j] as f64);
        match self.case {
            QuadricCase::Paraboloid => {
                (0..n - 1).map(|j| eps(j) * s_prime[j] * s_prime[j]).sum::<S>() - s_prime[n - 1]
            }
            QuadricCase::CentralMixed => {
                s_prime[0] * s_prime[n - 1]
                    + (1..n - 1).map(|j| eps(j - 1) * s_prime[j] * s_prime[j]).sum::<S>()
                    - self.c_prime.unwrap_or_else(S::zero)
            }
            QuadricCase::DefiniteSphere => dot(s_prime, s_prime) - S::one(),
        }
    }
}

#[inline]
fn sign_of<S: Scalar>(x: S) -> i8 {
    if x > S::zero() {
        1
    } else {
        -1
    }
}

/// Eigenpairs of `A` sorted by descending eigenvalue, each eigenvector
/// oriented so its largest-magnitude entry is positive.
fn sorted_eigen<S: Scalar>(a: &Matrix<S>) -> (Vec<S>, Vec<Vec<S>>) {
    let e = symmetric_eigen(a, S::tol(JACOBI_TOL));
    let n = a.rows();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| e.values[j].partial_cmp(&e.values[i]).unwrap());
    let vals = idx.iter().map(|&i| e.values[i]).collect();
    let vecs = idx
        .iter()
        .map(|&i| {
            let mut col = e.vectors.col(i);
            let big = col.iter().fold(S::zero(), |m, &x| m.max(x.abs()));
            let lead = col.iter().position(|&x| x.abs() >= big * (S::one() - S::tol(1e-12))).unwrap();
            if col[lead] < S::zero() {
                col.iter_mut().for_each(|x| *x = -*x);
            }
            col
        })
        .collect();
    (vals, vecs)
}

/// Classify a quadric and build the affine reduction to its normal form.
pub fn classify<S: Scalar>(q: &Quadric<S>) -> Result<QuadricClassification<S>> {
    let n = q.dim();
    let (vals, vecs) = sorted_eigen(q.a());
    let top = vals.iter().fold(S::zero(), |m, &x| m.max(x.abs()));
    let nonzero: Vec<bool> = vals.iter().map(|&x| x.abs() > S::tol(RANK_TOL) * top).collect();
    let rank = nonzero.iter().filter(|&&b| b).count();
    let two = S::c(2.0);
    let half = S::c(0.5);

    if rank == n {
        // centre v = -A⁻¹ b
        let mut v = vec![S::zero(); n];
        for (lam, q_j) in vals.iter().zip(&vecs) {
            let k = dot(q_j, q.b()) / *lam;
            for (vi, &qi) in v.iter_mut().zip(q_j) {
                *vi -= k * qi;
            }
        }
        let kappa = -q.residual(&v);
        let kappa_tol = S::tol(RANK_TOL) * (S::one() + q.c().abs() + (half * dot(&v, &q.a().mul_vec(&v))).abs());
        let all_same = vals.iter().all(|&x| x > S::zero()) || vals.iter().all(|&x| x < S::zero());
        if all_same {
            if kappa.abs() <= kappa_tol {
                return Err(Error::PointQuadric);
            }
            if kappa / vals[0] < S::zero() {
                return Err(Error::EmptyQuadric);
            }
            let cols: Vec<Vec<S>> = vals
                .iter()
                .zip(&vecs)
                .map(|(&lam, q_j)| crate::scalar::scale(q_j, (two * kappa / lam).sqrt()))
                .collect();
            return Ok(QuadricClassification {
                quadric: q.clone(),
                case: QuadricCase::DefiniteSphere,
                epsilons: Vec::new(),
                c_prime: None,
                t: Matrix::from_cols(&cols),
                v,
                line_free: true,
                point_count: PointCount::Many,
                eigenvalues: vals,
            });
        }
        // pair the largest positive with the most negative eigenvalue
        let p = 0;
        let m = n - 1;
        let wp = (two / vals[p].abs()).sqrt() * half;
        let wm = (two / vals[m].abs()).sqrt() * half;
        let mut cols = Vec::with_capacity(n);
        cols.push(vecs[p].iter().zip(&vecs[m]).map(|(&a, &b)| wp * a + wm * b).collect::<Vec<S>>());
        let mut epsilons = Vec::new();
        for j in 1..n - 1 {
            cols.push(crate::scalar::scale(&vecs[j], (two / vals[j].abs()).sqrt()));
            epsilons.push(sign_of(vals[j]));
        }
        cols.push(vecs[p].iter().zip(&vecs[m]).map(|(&a, &b)| wp * a - wm * b).collect());
        let line_free = if kappa.abs() <= kappa_tol {
            false
        } else {
            vals.iter().filter(|&&x| sign_of(x) == sign_of(kappa)).count() == 1
        };
        let c_prime = if kappa.abs() <= kappa_tol { S::zero() } else { kappa };
        return Ok(QuadricClassification {
            quadric: q.clone(),
            case: QuadricCase::CentralMixed,
            epsilons,
            c_prime: Some(c_prime),
            t: Matrix::from_cols(&cols),
            v,
            line_free,
            point_count: PointCount::Many,
            eigenvalues: vals,
        });
    }

    if rank + 1 == n {
        let k = nonzero.iter().position(|&b| !b).unwrap();
        let beta = dot(&vecs[k], q.b());
        if beta.abs() <= S::tol(RANK_TOL) * (top + norm(q.b())) {
            return Err(Error::UnsupportedQuadric("rk(A|b) < n: the quadric is a cylinder over a lower-dimensional one".into()));
        }
        let mut cols = Vec::with_capacity(n);
        let mut epsilons = Vec::with_capacity(n - 1);
        let mut v = vec![S::zero(); n];
        let mut c0 = q.c();
        for j in (0..n).filter(|&j| j != k) {
            let lam = vals[j];
            let bj = dot(&vecs[j], q.b());
            cols.push(crate::scalar::scale(&vecs[j], (two / lam.abs()).sqrt()));
            epsilons.push(sign_of(lam));
            for (vi, &qi) in v.iter_mut().zip(&vecs[j]) {
                *vi -= bj / lam * qi;
            }
            c0 -= bj * bj / (two * lam);
        }
        cols.push(crate::scalar::scale(&vecs[k], -S::one() / beta));
        for (vi, &qi) in v.iter_mut().zip(&vecs[k]) {
            *vi -= c0 / beta * qi;
        }
        let line_free = epsilons.iter().all(|&e| e == epsilons[0]);
        return Ok(QuadricClassification {
            quadric: q.clone(),
            case: QuadricCase::Paraboloid,
            epsilons,
            c_prime: None,
            t: Matrix::from_cols(&cols),
            v,
            line_free,
            point_count: PointCount::Many,
            eigenvalues: vals,
        });
    }

    Err(Error::UnsupportedQuadric(format!("rk(A) = {rank} < n - 1 = {}", n - 1)))
}

/// Randomized search for a line `{u + μ w}` inside the quadric.
///
/// Each restart intersects a random line with the quadric to get a point `u`,
/// then looks for an isotropic direction of `A` restricted to the tangent
/// hyperplane `(A u + b)^⊥`, and accepts it only if the residual vanishes
/// along the line at several offsets.
pub fn find_line<S: Scalar>(q: &Quadric<S>, restarts: u64, seed: u64, radius: S) -> Option<(Vec<S>, Vec<S>)> {
    let n = q.dim();
    let a_norm = q.a().max_abs();
    for r in 0..restarts {
        let mut rng = point_rng(seed, r);
        let Some(u) = random_point_on(q, radius, &mut rng) else { continue };
        let g = q.gradient(&u);
        let basis = complement_basis(&g);
        if basis.is_empty() {
            continue;
        }
        let k = basis.len();
        let mut restricted = Matrix::zeros(k, k);
        for i in 0..k {
            let ai = q.a().mul_vec(&basis[i]);
            for j in 0..k {
                restricted[(i, j)] = dot(&basis[j], &ai);
            }
        }
        let e = symmetric_eigen(&restricted, S::tol(JACOBI_TOL));
        let lift = |coef: &[S]| -> Vec<S> {
            let mut w = vec![S::zero(); n];
            for (c, b) in coef.iter().zip(&basis) {
                for (wi, &bi) in w.iter_mut().zip(b) {
                    *wi += *c * bi;
                }
            }
            let nw = norm(&w);
            w.iter().map(|&x| x / nw).collect()
        };
        let mut candidates = Vec::new();
        let (imin, imax) = (0..k).fold((0, 0), |(lo, hi), i| {
            (if e.values[i] < e.values[lo] { i } else { lo }, if e.values[i] > e.values[hi] { i } else { hi })
        });
        for i in 0..k {
            if e.values[i].abs() <= S::tol(1e-8) * a_norm {
                candidates.push(lift(&e.vectors.col(i)));
            }
        }
        if e.values[imin] < S::zero() && e.values[imax] > S::zero() {
            let cp = e.values[imax].sqrt();
            let cm = (-e.values[imin]).sqrt();
            let coef: Vec<S> = (0..k).map(|r| cm * e.vectors[(r, imax)] + cp * e.vectors[(r, imin)]).collect();
            candidates.push(lift(&coef));
        }
        let reach = S::one() + norm(&u);
        let tol = S::tol(1e-8) * (q.scale() * (S::one() + reach * reach));
        for w in candidates {
            let on_line = [-2.0, -1.0, 1.0, 2.0].iter().all(|&mu| {
                let x: Vec<S> = u.iter().zip(&w).map(|(&ui, &wi)| ui + S::c(mu) * reach * wi).collect();
                q.residual(&x).abs() <= tol
            });
            if on_line {
                return Some((u, w));
            }
        }
    }
    None
}

fn random_point_on<S: Scalar, R: Rng>(q: &Quadric<S>, radius: S, rng: &mut R) -> Option<Vec<S>> {
    let n = q.dim();
    for _ in 0..200 {
        let x: Vec<S> = (0..n).map(|_| radius * S::c(rng.gen_range(-1.0..1.0))).collect();
        let d: Vec<S> = (0..n).map(|_| S::c(rng.gen_range(-1.0..1.0))).collect();
        let dn = norm(&d);
        if dn < S::c(1e-3) {
            continue;
        }
        let d: Vec<S> = d.iter().map(|&v| v / dn).collect();
        let a2 = S::c(0.5) * dot(&d, &q.a().mul_vec(&d));
        let a1 = dot(&d, &q.gradient(&x));
        let a0 = q.residual(&x);
        let mu = if a2.abs() <= S::tol(1e-12) * q.scale() {
            if a1 == S::zero() {
                continue;
            }
            -a0 / a1
        } else {
            let disc = a1 * a1 - S::c(4.0) * a2 * a0;
            if disc < S::zero() {
                continue;
            }
            let sq = disc.sqrt();
            // numerically stable pair of roots
            let big = -(a1 + a1.signum() * sq) / S::c(2.0);
            let r1 = big / a2;
            let r2 = if big != S::zero() { a0 / big } else { r1 };
            if r1.abs() < r2.abs() {
                r1
            } else {
                r2
            }
        };
        let u: Vec<S> = x.iter().zip(&d).map(|(&xi, &di)| xi + mu * di).collect();
        if u.iter().all(|v| v.is_finite()) {
            return Some(u);
        }
    }
    None
}

/// Orthonormal basis of the hyperplane orthogonal to `g`.
fn complement_basis<S: Scalar>(g: &[S]) -> Vec<Vec<S>> {
    let n = g.len();
    let gn = norm(g);
    if gn == S::zero() {
        return Vec::new();
    }
    // g (weighted so it is picked first), then the best-conditioned axes
    let mut rows = vec![g.iter().map(|&x| S::c(2.0) * x / gn).collect::<Vec<S>>()];
    for j in 0..n {
        let mut e = vec![S::zero(); n];
        e[j] = S::one();
        rows.push(e);
    }
    let mut basis: Vec<Vec<S>> = Vec::with_capacity(n);
    for i in independent_rows(&rows, S::tol(1e-9)) {
        let mut v = rows[i].clone();
        for b in &basis {
            let c = dot(&v, b);
            v.iter_mut().zip(b).for_each(|(x, &bi)| *x -= c * bi);
        }
        let nv = norm(&v);
        basis.push(v.iter().map(|&x| x / nv).collect());
    }
    basis.into_iter().skip(1).collect()
}

/// Line-freeness by the normal-form rule, cross-checked against
/// [`find_line`] over [`LINE_SEARCH_SEEDS`] restarts.
pub fn line_free<S: Scalar>(cl: &QuadricClassification<S>) -> Result<bool> {
    let radius = S::one() + norm(&cl.v) + cl.t.max_abs();
    let found = find_line(&cl.quadric, LINE_SEARCH_SEEDS, 0x11E5_EA2C, radius);
    match (cl.line_free, found) {
        (true, Some((u, w))) => Err(Error::InternalInconsistency(format!(
            "normal form says line-free but the quadric contains the line {u:?} + μ {w:?}"
        ))),
        (false, None) => Err(Error::InternalInconsistency(
            "normal form says the quadric contains a line but the search found none".into(),
        )),
        (verdict, _) => Ok(verdict),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(a: &[Vec<f64>], b: &[f64], c: f64) -> Quadric<f64> {
        Quadric::new(Matrix::from_rows(a), b.to_vec(), c).unwrap()
    }

    pub(crate) fn unit_circle() -> Quadric<f64> {
        quad(&[vec![2.0, 0.0], vec![0.0, 2.0]], &[0.0, 0.0], -1.0)
    }

    pub(crate) fn hyperbola() -> Quadric<f64> {
        quad(&[vec![0.0, 1.0], vec![1.0, 0.0]], &[0.0, 0.0], -1.0)
    }

    pub(crate) fn parabola() -> Quadric<f64> {
        quad(&[vec![2.0, 0.0], vec![0.0, 0.0]], &[0.0, -1.0], 0.0)
    }

    fn check_reduction(cl: &QuadricClassification<f64>) {
        // T maps normal-form points onto the quadric: residual is a fixed
        // multiple of the normal-form residual
        let n = cl.dim();
        for k in 0..20 {
            let sp: Vec<f64> = (0..n).map(|j| ((k * 7 + j * 3) % 11) as f64 * 0.17 - 0.8).collect();
            let r = cl.quadric.residual(&cl.from_normal(&sp));
            let rn = cl.normal_form_residual(&sp);
            let ratio = if rn.abs() > 1e-6 { r / rn } else { continue };
            let sp2: Vec<f64> = sp.iter().map(|x| x * 1.3 + 0.1).collect();
            let rn2 = cl.normal_form_residual(&sp2);
            if rn2.abs() > 1e-6 {
                let r2 = cl.quadric.residual(&cl.from_normal(&sp2));
                assert!((r2 / rn2 - ratio).abs() < 1e-9 * (1.0 + ratio.abs()), "{} vs {}", r2 / rn2, ratio);
            }
        }
    }

    #[test]
    fn residual_examples() {
        assert_eq!(unit_circle().residual(&[1.0, 0.0]), 0.0);
        assert_eq!(unit_circle().residual(&[0.0, 0.0]), -1.0);
        assert_eq!(hyperbola().residual(&[2.0, 0.5]), 0.0);
    }

    #[test]
    fn classify_circle() {
        let cl = classify(&unit_circle()).unwrap();
        assert_eq!(cl.case, QuadricCase::DefiniteSphere);
        assert!(cl.line_free);
        assert_eq!(cl.point_count, PointCount::Many);
        assert_eq!(cl.t, Matrix::identity(2));
        assert_eq!(cl.v, vec![0.0, 0.0]);
        check_reduction(&cl);
    }

    #[test]
    fn classify_parabola() {
        let cl = classify(&parabola()).unwrap();
        assert_eq!(cl.case, QuadricCase::Paraboloid);
        assert_eq!(cl.epsilons, vec![1]);
        assert!(cl.line_free);
        check_reduction(&cl);
    }

    #[test]
    fn classify_hyperbola() {
        let cl = classify(&hyperbola()).unwrap();
        assert_eq!(cl.case, QuadricCase::CentralMixed);
        assert!((cl.c_prime.unwrap() - 1.0).abs() < 1e-12);
        assert!(cl.line_free);
        assert!(cl.epsilons.is_empty());
        check_reduction(&cl);
    }

    #[test]
    fn classify_rejections() {
        // cylinder x² + y² = 1 in R³: rk(A|b) = 2
        let cyl = quad(&[vec![2.0, 0.0, 0.0], vec![0.0, 2.0, 0.0], vec![0.0, 0.0, 0.0]], &[0.0; 3], -1.0);
        assert!(matches!(classify(&cyl), Err(Error::UnsupportedQuadric(_))));
        // pair of parallel lines x² = 1
        let lines = quad(&[vec![2.0, 0.0], vec![0.0, 0.0]], &[0.0, 0.0], -1.0);
        assert!(matches!(classify(&lines), Err(Error::UnsupportedQuadric(_))));
        let empty = quad(&[vec![2.0, 0.0], vec![0.0, 2.0]], &[0.0, 0.0], 1.0);
        assert_eq!(classify(&empty), Err(Error::EmptyQuadric));
        let point = quad(&[vec![2.0, 0.0], vec![0.0, 2.0]], &[0.0, 0.0], 0.0);
        assert_eq!(classify(&point), Err(Error::PointQuadric));
        assert!(Quadric::new(Matrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]), vec![0.0, 0.0], 0.0).is_err());
        assert!(Quadric::new(Matrix::<f64>::zeros(2, 2), vec![0.0, 0.0], 0.0).is_err());
    }

    #[test]
    fn hyperbolic_paraboloid_contains_lines() {
        // s3 = s1² - s2²
        let q = quad(&[vec![2.0, 0.0, 0.0], vec![0.0, -2.0, 0.0], vec![0.0, 0.0, 0.0]], &[0.0, 0.0, -1.0], 0.0);
        // the line (t, t, 0) lies on it
        for t in [-2.0, 0.5, 3.0] {
            assert_eq!(q.residual(&[t, t, 0.0]), 0.0);
        }
        let cl = classify(&q).unwrap();
        assert_eq!(cl.case, QuadricCase::Paraboloid);
        assert!(!cl.line_free);
        assert_eq!(line_free(&cl), Ok(false));
        check_reduction(&cl);
    }

    #[test]
    fn line_free_verdicts_agree_with_search() {
        let one_sheet = quad(&[vec![2.0, 0.0, 0.0], vec![0.0, 2.0, 0.0], vec![0.0, 0.0, -2.0]], &[0.0; 3], -1.0);
        let two_sheet = quad(&[vec![2.0, 0.0, 0.0], vec![0.0, -2.0, 0.0], vec![0.0, 0.0, -2.0]], &[0.0; 3], -1.0);
        let cone = quad(&[vec![2.0, 0.0, 0.0], vec![0.0, 2.0, 0.0], vec![0.0, 0.0, -2.0]], &[0.0; 3], 0.0);
        let sphere = Quadric::sphere(&[0.5, -1.0, 2.0], 3.0).unwrap();
        for (q, want) in [
            (unit_circle(), true),
            (hyperbola(), true),
            (parabola(), true),
            (one_sheet, false),
            (two_sheet, true),
            (cone, false),
            (sphere, true),
        ] {
            let cl = classify(&q).unwrap();
            assert_eq!(cl.line_free, want, "{q:?}");
            assert_eq!(line_free(&cl), Ok(want), "{q:?}");
            check_reduction(&cl);
        }
    }

    #[test]
    fn pullback_matches_composition() {
        let q = Quadric::sphere(&[1.0, 2.0], 1.5).unwrap();
        let m = Matrix::from_rows(&[vec![1.0, 0.4], vec![-0.3, 2.0]]);
        let w = [0.2, -0.7];
        let p = q.pullback(&m, &w).unwrap();
        let y = [0.9, -0.4];
        let s: Vec<f64> = m.mul_vec(&y).iter().zip(&w).map(|(a, b)| a + b).collect();
        assert!((p.residual(&y) - q.residual(&s)).abs() < 1e-13);
    }
}
