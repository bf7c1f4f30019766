//! Sample-based checks of the hyperplane and inner-point conditions, and the
//! graph-map determinant `det(∂ψ/∂s̄)` used to factor `det(∂σ̂/∂t)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::affine_rank;
use crate::scalar::{dot, Scalar};

use super::param::{fd_jacobian, jacobian_det_sigma_hat, RationalParameterization, SamplePlan};
use super::Quadric;

/// Affine-rank tolerance relative to the sample scale.
const RANK_TOL: f64 = 1e-9;
/// Jacobian determinants at or below this (times scale) count as zero.
const DET_TOL: f64 = 1e-8;
const PROBE_STEP: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HyperplaneCheck<S> {
    pub holds: bool,
    #[serde(rename = "affineRank")]
    pub affine_rank: usize,
    pub samples: usize,
    /// Affinely independent `n+1` points `σ(t_i)` when the condition holds.
    pub witness: Option<Vec<Vec<S>>>,
    #[serde(rename = "witnessT")]
    pub witness_t: Option<Vec<Vec<S>>>,
}

/// Whether `σ(O)` spans R^n affinely, judged on the plan's admissible samples.
pub fn check_hyperplane_condition<S: Scalar>(
    rp: &RationalParameterization<S>,
    plan: &SamplePlan<S>,
) -> Result<HyperplaneCheck<S>> {
    let n = rp.dim();
    let pts = plan.admissible(rp)?;
    if pts.len() < n + 1 {
        return Err(Error::TooFewSamples { needed: n + 1, got: pts.len() });
    }
    let points: Vec<Vec<S>> = pts.iter().map(|(_, s)| s.clone()).collect();
    let (rank, idx) = affine_rank(&points, S::tol(RANK_TOL));
    let holds = rank == n;
    let (witness, witness_t) = if holds {
        (
            Some(idx.iter().map(|&i| pts[i].1.clone()).collect()),
            Some(idx.iter().map(|&i| pts[i].0.clone()).collect()),
        )
    } else {
        (None, None)
    };
    Ok(HyperplaneCheck { holds, affine_rank: rank, samples: pts.len(), witness, witness_t })
}

/// Line probe along the ray through a surface point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RayProbe<S> {
    pub s: Vec<S>,
    #[serde(rename = "residualBelow")]
    pub residual_below: S,
    #[serde(rename = "residualAbove")]
    pub residual_above: S,
    #[serde(rename = "rayContained")]
    pub ray_contained: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InnerPointCheck<S> {
    pub holds: bool,
    pub samples: usize,
    #[serde(rename = "witnessT")]
    pub witness_t: Option<Vec<S>>,
    #[serde(rename = "witnessDet")]
    pub witness_det: Option<S>,
    #[serde(rename = "maxAbsDet")]
    pub max_abs_det: S,
    /// Absent for surfaces without an implicit quadric.
    #[serde(rename = "rayProbe")]
    pub ray_probe: Option<RayProbe<S>>,
}

/// Certifies an interior point of `σ̂(O)` through a nonvanishing Jacobian of `σ̂`.
pub fn check_inner_point_condition<S: Scalar>(
    rp: &RationalParameterization<S>,
    plan: &SamplePlan<S>,
) -> Result<InnerPointCheck<S>> {
    let n = rp.dim();
    let pts = plan.admissible(rp)?;
    if pts.len() < n + 1 {
        return Err(Error::TooFewSamples { needed: n + 1, got: pts.len() });
    }
    let rp = rp.clone().with_sigma1_tol(plan.sigma1_tol);
    let threshold = S::tol(DET_TOL);
    let mut max_abs_det = S::zero();
    let mut witness: Option<(Vec<S>, S)> = None;
    for (t, _) in &pts {
        // Samples whose FD stencil crosses the σ₁ band are skipped.
        let Ok(det) = jacobian_det_sigma_hat(&rp, t) else { continue };
        if !det.is_finite() {
            continue;
        }
        max_abs_det = max_abs_det.max(det.abs());
        if witness.is_none() && det.abs() > threshold {
            witness = Some((t.clone(), det));
        }
    }
    let probe_t = witness.as_ref().map(|(t, _)| t.clone()).unwrap_or_else(|| pts[0].0.clone());
    let ray_probe = rp.quadric().map(|q| ray_probe(q, &rp.eval(&probe_t).expect("admissible")));
    Ok(InnerPointCheck {
        holds: witness.is_some(),
        samples: pts.len(),
        witness_det: witness.as_ref().map(|w| w.1),
        witness_t: witness.map(|w| w.0),
        max_abs_det,
        ray_probe,
    })
}

fn ray_probe<S: Scalar>(q: &Quadric<S>, s: &[S]) -> RayProbe<S> {
    let at = |lambda: S| q.residual(&s.iter().map(|&x| lambda * x).collect::<Vec<_>>());
    let h = S::c(PROBE_STEP);
    let residual_below = at(S::one() - h);
    let residual_above = at(S::one() + h);
    let scale = S::one() + q.c().abs() + crate::scalar::norm(s).powi(2) * q.a().max_abs();
    let tol = S::tol(RANK_TOL) * scale;
    RayProbe {
        s: s.to_vec(),
        residual_below,
        residual_above,
        ray_contained: residual_below.abs() <= tol && residual_above.abs() <= tol,
    }
}

/// Root of `q(s̄, x) = 0` in the last coordinate nearest to `hint`; absent if
/// there is no real root.
pub fn solve_last_coordinate<S: Scalar>(q: &Quadric<S>, s_bar: &[S], hint: S) -> Option<S> {
    let n = q.dim();
    let a = q.a();
    let k = n - 1;
    // ½ a x² + β x + γ = 0
    let alpha = a[(k, k)] / S::c(2.0);
    let beta = (0..k).map(|j| a[(k, j)] * s_bar[j]).sum::<S>() + q.b()[k];
    let mut full = s_bar.to_vec();
    full.push(S::zero());
    let gamma = q.residual(&full);
    let scale = S::one() + a.max_abs();
    if alpha.abs() <= S::tol(1e-14) * scale {
        if beta == S::zero() {
            return None;
        }
        return Some(-gamma / beta);
    }
    let disc = beta * beta - S::c(4.0) * alpha * gamma;
    if disc < S::zero() {
        // Tangency up to roundoff still has a root.
        if disc < -S::tol(1e-12) * (beta * beta + (S::c(4.0) * alpha * gamma).abs()) {
            return None;
        }
        return Some(-beta / (S::c(2.0) * alpha));
    }
    let sq = disc.sqrt();
    // Cancellation-free pair of roots.
    let qq = -(beta + beta.signum() * sq) / S::c(2.0);
    let r1 = qq / alpha;
    let r2 = if qq != S::zero() { gamma / qq } else { r1 };
    Some(if (r1 - hint).abs() <= (r2 - hint).abs() { r1 } else { r2 })
}

/// `det(∂ψ/∂s̄)` for `ψ(s̄) = (s_2, ..., s_{n-1}, f(s̄)) / s_1`, where `f` solves
/// the quadric for its last coordinate on the sheet nearest `sheet_hint`:
/// `(-1)^n (s̄·∇f − f) / s_1^n`.
pub fn psi_jacobian_det<S: Scalar>(q: &Quadric<S>, s_bar: &[S], sheet_hint: S) -> Result<S> {
    let n = q.dim();
    if s_bar.len() != n - 1 {
        return Err(Error::DimensionMismatch { expected: n - 1, got: s_bar.len() });
    }
    if s_bar[0] == S::zero() {
        return Err(Error::OnSigma1Zero);
    }
    let f0 = solve_last_coordinate(q, s_bar, sheet_hint).ok_or(Error::OutsideDomain)?;
    let f = |x: &[S]| solve_last_coordinate(q, x, f0).map(|v| vec![v]).ok_or(Error::OutsideDomain);
    let grad = fd_jacobian(f, s_bar)?.row(0).to_vec();
    let sign = if n.is_multiple_of(2) { S::one() } else { -S::one() };
    Ok(sign * (dot(s_bar, &grad) - f0) / s_bar[0].powi(n as i32))
}

#[cfg(test)]
mod tests {
    use super::super::param::{parameterize, SampleMode};
    use super::super::{classify, tests::*};
    use super::*;

    fn line() -> RationalParameterization<f64> {
        RationalParameterization::custom(2, |t: &[f64]| vec![t[0], t[0]])
    }

    #[test]
    fn circle_hyperplane_condition() {
        let rp = parameterize(&classify(&unit_circle()).unwrap()).unwrap();
        let plan = SamplePlan::cube(1, -0.5, 0.5, SampleMode::Random(50), 0).unwrap();
        let hc = check_hyperplane_condition(&rp, &plan).unwrap();
        assert!(hc.holds);
        assert_eq!(hc.witness.unwrap().len(), 3);
    }

    #[test]
    fn sphere_hyperplane_condition_on_grid() {
        let q = Quadric::<f64>::sphere(&[0.0, 0.0, 0.0], 1.0).unwrap();
        let rp = parameterize(&classify(&q).unwrap()).unwrap();
        let plan = SamplePlan::cube(2, -0.5, 0.5, SampleMode::Grid(5), 0).unwrap();
        assert!(check_hyperplane_condition(&rp, &plan).unwrap().holds);
    }

    #[test]
    fn line_fails_both_conditions() {
        let plan = SamplePlan::cube(1, 0.2, 0.8, SampleMode::Random(100), 0).unwrap();
        let hc = check_hyperplane_condition(&line(), &plan).unwrap();
        assert!(!hc.holds && hc.witness.is_none() && hc.affine_rank == 1);
        let ic = check_inner_point_condition(&line(), &plan).unwrap();
        assert!(!ic.holds && ic.witness_t.is_none() && ic.ray_probe.is_none());
    }

    #[test]
    fn too_few_samples() {
        let plan = SamplePlan::cube(1, 0.2, 0.8, SampleMode::Random(2), 0).unwrap();
        assert_eq!(
            check_hyperplane_condition(&line(), &plan),
            Err(Error::TooFewSamples { needed: 3, got: 2 })
        );
    }

    #[test]
    fn circle_inner_point_and_probe() {
        let rp = parameterize(&classify(&unit_circle()).unwrap()).unwrap();
        let plan = SamplePlan::cube(1, -0.5, 0.5, SampleMode::Grid(11), 0).unwrap();
        let ic = check_inner_point_condition(&rp, &plan).unwrap();
        assert!(ic.holds);
        assert!(ic.max_abs_det >= 2.0 - 1e-6);
        let probe = ic.ray_probe.unwrap();
        assert!(!probe.ray_contained);
        let direct = ray_probe(&unit_circle(), &[1.0, 0.0]);
        assert!((direct.residual_above - (1.001f64.powi(2) - 1.0)).abs() < 1e-15);
        assert!(!direct.ray_contained);
    }

    #[test]
    fn cone_contains_its_rays() {
        let a = crate::linalg::Matrix::from_rows(&[vec![2.0, 0.0], vec![0.0, -2.0]]);
        let q = Quadric::new(a, vec![0.0, 0.0], 0.0).unwrap();
        assert!(ray_probe(&q, &[1.0, 1.0]).ray_contained);
    }

    #[test]
    fn last_coordinate_roots() {
        let q = Quadric::<f64>::sphere(&[0.0, 0.0, 0.0], 1.0).unwrap();
        let up = solve_last_coordinate(&q, &[0.6, 0.0], 1.0).unwrap();
        let down = solve_last_coordinate(&q, &[0.6, 0.0], -1.0).unwrap();
        assert!((up - 0.8).abs() < 1e-15 && (down + 0.8).abs() < 1e-15);
        assert!(solve_last_coordinate(&q, &[1.5, 0.0], 1.0).is_none());
        assert!((solve_last_coordinate(&parabola(), &[2.0], 0.0).unwrap() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn psi_factorization_on_sphere() {
        let q = Quadric::<f64>::sphere(&[0.0, 0.0, 0.0], 1.0).unwrap();
        let rp = parameterize(&classify(&q).unwrap()).unwrap();
        let plan = SamplePlan::default_for(2);
        for (t, s) in plan.admissible(&rp).unwrap() {
            let lhs = jacobian_det_sigma_hat(&rp, &t).unwrap();
            let rhs = psi_jacobian_det(&q, &s[..2], s[2]).unwrap() * rp.sigma_bar_jacobian_det(&t).unwrap();
            assert!((lhs - rhs).abs() <= 1e-5 * lhs.abs(), "{lhs} vs {rhs} at {t:?}");
        }
    }
}
