//! Numerical experiments around uniqueness of Fourier transforms restricted
//! to hypersurfaces: pairwise comparison on a parameterized surface, the
//! mirror counterexample, modulus invariance, and batch identity runs.
//!
//! Every verdict here rests on finitely many samples and is evidence, not proof.

mod generate;

use num_complex::Complex;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::{point_rng, Decomposition, SpectrumSample};
use crate::linalg::independent_rows;
use crate::polytope::{mirror, GeneralizedPolytope, Hyperplane};
use crate::quadric::{
    check_hyperplane_condition, check_inner_point_condition, HyperplaneCheck, InnerPointCheck,
    RationalParameterization, SamplePlan,
};
use crate::scalar::{dot, norm, Scalar};

pub use generate::{
    generate_pairs, perturb, random_convex_polytope, redecompose, symmetric_difference_volume, GeneratedPair,
    DEFAULT_JITTER, MIN_SYMMETRIC_DIFFERENCE,
};

pub const DEFAULT_THRESHOLD: f64 = 1e-8;
/// A pair is distinguishable only if some difference exceeds this.
pub const DISTINGUISH_FLOOR: f64 = 1e-3;
pub const DEFAULT_MAX_FREQUENCY: f64 = 50.0;
/// On-hyperplane agreement required by the mirror experiment.
pub const MIRROR_TOL: f64 = 1e-10;
pub const MODULUS_TOL: f64 = 1e-10;
/// Coordinate range of sampled frequencies in the mirror experiment.
const MIRROR_RANGE: f64 = 10.0;

pub const EVIDENCE_NOTE: &str = "verdicts rest on finitely many samples; agreement is evidence, not proof of equality";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Indistinguishable,
    Distinguishable,
    Inconclusive,
}

impl Verdict {
    /// `diff <= threshold (1 + value)` is indistinguishable; `diff > floor`
    /// distinguishable; anything between is inconclusive.
    pub fn judge<S: Scalar>(max_abs_diff: S, max_abs_value: S, threshold: S, floor: S) -> Self {
        if max_abs_diff <= threshold * (S::one() + max_abs_value) {
            Verdict::Indistinguishable
        } else if max_abs_diff > floor {
            Verdict::Distinguishable
        } else {
            Verdict::Inconclusive
        }
    }
}

/// Tolerances of a comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompareOptions<S> {
    /// Relative threshold for "indistinguishable".
    pub threshold: S,
    /// Absolute floor for "distinguishable".
    pub floor: S,
    /// Samples with `|s|` above this are dropped.
    pub max_frequency: S,
}

impl<S: Scalar> Default for CompareOptions<S> {
    fn default() -> Self {
        Self {
            threshold: S::c(DEFAULT_THRESHOLD),
            floor: S::c(DISTINGUISH_FLOOR),
            max_frequency: S::c(DEFAULT_MAX_FREQUENCY),
        }
    }
}

impl<S: Scalar> CompareOptions<S> {
    pub fn with_threshold(mut self, threshold: S) -> Self {
        self.threshold = threshold;
        self
    }
}

/// `F_{P1}` against `F_{P2}` at the same frequencies.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport<S> {
    pub samples: Vec<(SpectrumSample<S>, SpectrumSample<S>)>,
    pub max_abs_diff: S,
    pub max_abs_value: S,
    pub verdict: Verdict,
    pub threshold: S,
    pub floor: S,
    /// Admissible samples dropped for exceeding the frequency cap.
    pub dropped: usize,
    pub hyperplane: Option<HyperplaneCheck<S>>,
    pub inner_point: Option<InnerPointCheck<S>>,
    /// False unless both surface conditions were checked and hold.
    pub conditions_certified: bool,
}

impl<S: Scalar> ComparisonReport<S> {
    pub fn abs_diffs(&self) -> impl Iterator<Item = S> + '_ {
        self.samples.iter().map(|(a, b)| (a.value - b.value).norm())
    }
}

/// Compare two transforms at explicit frequencies (no surface conditions).
pub fn compare_at<S: Scalar>(
    p1: &GeneralizedPolytope<S>,
    p2: &GeneralizedPolytope<S>,
    points: Vec<(Option<Vec<S>>, Vec<S>)>,
    opts: &CompareOptions<S>,
) -> Result<ComparisonReport<S>> {
    if p1.dim() != p2.dim() {
        return Err(Error::DimensionMismatch { expected: p1.dim(), got: p2.dim() });
    }
    let total = points.len();
    let points: Vec<_> = points.into_iter().filter(|(_, s)| norm(s) <= opts.max_frequency).collect();
    let dropped = total - points.len();
    let freqs: Vec<Vec<S>> = points.iter().map(|(_, s)| s.clone()).collect();
    let f1 = Decomposition::generalized(p1)?.eval_many(&freqs)?;
    let f2 = Decomposition::generalized(p2)?.eval_many(&freqs)?;
    let mut max_abs_diff = S::zero();
    let mut max_abs_value = S::zero();
    let mut samples = Vec::with_capacity(points.len());
    for (((t, s), a), b) in points.into_iter().zip(f1).zip(f2) {
        max_abs_diff = max_abs_diff.max((a - b).norm());
        max_abs_value = max_abs_value.max(a.norm()).max(b.norm());
        samples.push((
            SpectrumSample { t: t.clone(), s: s.clone(), value: a },
            SpectrumSample { t, s, value: b },
        ));
    }
    Ok(ComparisonReport {
        samples,
        max_abs_diff,
        max_abs_value,
        verdict: Verdict::judge(max_abs_diff, max_abs_value, opts.threshold, opts.floor),
        threshold: opts.threshold,
        floor: opts.floor,
        dropped,
        hyperplane: None,
        inner_point: None,
        conditions_certified: false,
    })
}

/// Compare `F_{P1}` and `F_{P2}` on `σ(t)` for the admissible plan points,
/// stamping the report with the hyperplane and inner-point checks.
pub fn compare_on_surface<S: Scalar>(
    p1: &GeneralizedPolytope<S>,
    p2: &GeneralizedPolytope<S>,
    rp: &RationalParameterization<S>,
    plan: &SamplePlan<S>,
    opts: &CompareOptions<S>,
) -> Result<ComparisonReport<S>> {
    if p1.dim() != rp.dim() {
        return Err(Error::DimensionMismatch { expected: rp.dim(), got: p1.dim() });
    }
    let hyperplane = check_hyperplane_condition(rp, plan)?;
    let inner_point = check_inner_point_condition(rp, plan)?;
    let points = plan.admissible(rp)?.into_iter().map(|(t, s)| (Some(t), s)).collect();
    let mut report = compare_at(p1, p2, points, opts)?;
    if report.samples.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    report.conditions_certified = hyperplane.holds && inner_point.holds;
    report.hyperplane = Some(hyperplane);
    report.inner_point = Some(inner_point);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MirrorReport<S> {
    #[serde(rename = "onSamples")]
    pub on_samples: usize,
    #[serde(rename = "offSamples")]
    pub off_samples: usize,
    #[serde(rename = "onMaxDiff")]
    pub on_max_diff: S,
    #[serde(rename = "offMaxDiff")]
    pub off_max_diff: S,
    #[serde(rename = "onPass")]
    pub on_pass: bool,
    #[serde(rename = "offPass")]
    pub off_pass: bool,
    pub pass: bool,
}

/// Orthonormal basis of the hyperplane `a·s = 0`.
fn orthogonal_complement<S: Scalar>(a: &[S]) -> Vec<Vec<S>> {
    let n = a.len();
    let mut rows = vec![a.to_vec()];
    rows.extend((0..n).map(|j| (0..n).map(|k| if j == k { S::one() } else { S::zero() }).collect()));
    let mut basis: Vec<Vec<S>> = Vec::with_capacity(n);
    for i in independent_rows(&rows, S::tol(1e-9)) {
        let mut v = rows[i].clone();
        for b in &basis {
            let d = dot(&v, b);
            v.iter_mut().zip(b).for_each(|(x, &y)| *x -= d * y);
        }
        let l = norm(&v);
        basis.push(v.into_iter().map(|x| x / l).collect());
    }
    basis.into_iter().skip(1).collect()
}

/// Mirror counterexample: `P` and its reflection through `h` share the
/// transform on `a·s = 0` (Cavalieri) yet differ as sets, which shows up at
/// generic frequencies.
pub fn mirror_counterexample<S: Scalar>(
    p: &GeneralizedPolytope<S>,
    h: &Hyperplane<S>,
    n_on: usize,
    n_off: usize,
    seed: u64,
) -> Result<MirrorReport<S>> {
    let n = p.dim();
    if h.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: h.dim() });
    }
    let scale = S::one() + p.pieces().iter().map(|c| c.magnitude()).fold(S::zero(), S::max);
    let tol = S::tol(1e-9) * scale * norm(&h.normal);
    let values: Vec<S> = p.pieces().iter().flat_map(|c| c.vertices()).map(|v| h.signed_value(v)).collect();
    if !(values.iter().all(|&x| x > tol) || values.iter().all(|&x| x < -tol)) {
        return Err(Error::InvalidFixture("polytope must lie strictly on one side of the hyperplane".into()));
    }
    let q = mirror(p, h);
    let basis = orthogonal_complement(&h.normal);
    let range = S::c(MIRROR_RANGE);
    let on: Vec<Vec<S>> = (0..n_on)
        .map(|i| {
            let mut rng = point_rng(seed, i as u64);
            let mut s = vec![S::zero(); n];
            for b in &basis {
                let c = range * S::c(rng.gen_range(-1.0..1.0));
                s.iter_mut().zip(b).for_each(|(x, &y)| *x += c * y);
            }
            s
        })
        .collect();
    let off: Vec<Vec<S>> = (0..n_off)
        .map(|i| {
            let mut rng = point_rng(seed, (n_on + i) as u64);
            (0..n).map(|_| range * S::c(rng.gen_range(-1.0..1.0))).collect()
        })
        .collect();
    let dp = Decomposition::generalized(p)?;
    let dq = Decomposition::generalized(&q)?;
    let max_diff = |freqs: &[Vec<S>]| -> Result<S> {
        let a = dp.eval_many(freqs)?;
        let b = dq.eval_many(freqs)?;
        Ok(a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(S::zero(), S::max))
    };
    let on_max_diff = max_diff(&on)?;
    let off_max_diff = max_diff(&off)?;
    let on_pass = on_max_diff <= S::tol(MIRROR_TOL);
    let off_pass = off_max_diff > S::c(DISTINGUISH_FLOOR);
    Ok(MirrorReport {
        on_samples: n_on,
        off_samples: n_off,
        on_max_diff,
        off_max_diff,
        on_pass,
        off_pass,
        pass: on_pass && off_pass,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModulusReport<S> {
    pub samples: usize,
    #[serde(rename = "maxTranslationDeviation")]
    pub max_translation_deviation: S,
    #[serde(rename = "maxReflectionDeviation")]
    pub max_reflection_deviation: S,
    pub pass: bool,
}

/// `|F_{P+w}| = |F_P|` and `|F_{-P}| = |F_P|` at the admissible plan points.
pub fn modulus_invariance<S: Scalar>(
    p: &GeneralizedPolytope<S>,
    w: &[S],
    rp: &RationalParameterization<S>,
    plan: &SamplePlan<S>,
) -> Result<ModulusReport<S>> {
    if w.len() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: w.len() });
    }
    if rp.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: rp.dim() });
    }
    let freqs: Vec<Vec<S>> = plan.admissible(rp)?.into_iter().map(|(_, s)| s).collect();
    let base = Decomposition::generalized(p)?.eval_many(&freqs)?;
    let moved = Decomposition::generalized(&p.translate(w))?.eval_many(&freqs)?;
    let reflected = Decomposition::generalized(&p.point_reflection())?.eval_many(&freqs)?;
    let dev = |other: &[Complex<S>]| base.iter().zip(other).map(|(a, b)| (a.norm() - b.norm()).abs()).fold(S::zero(), S::max);
    let max_translation_deviation = dev(&moved);
    let max_reflection_deviation = dev(&reflected);
    let tol = S::tol(MODULUS_TOL);
    Ok(ModulusReport {
        samples: freqs.len(),
        max_translation_deviation,
        max_reflection_deviation,
        pass: max_translation_deviation <= tol && max_reflection_deviation <= tol,
    })
}

/// One pair of an identity experiment.
#[derive(Clone, Debug)]
pub struct IdentityCase<S> {
    pub label: String,
    pub p1: GeneralizedPolytope<S>,
    pub p2: GeneralizedPolytope<S>,
    pub expect_equal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityOutcome<S> {
    pub label: String,
    #[serde(rename = "expectEqual")]
    pub expect_equal: bool,
    pub verdict: Verdict,
    #[serde(rename = "maxAbsDiff")]
    pub max_abs_diff: S,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentitySummary<S> {
    pub total: usize,
    pub agreed: usize,
    #[serde(rename = "conditionsCertified")]
    pub conditions_certified: bool,
    pub outcomes: Vec<IdentityOutcome<S>>,
    pub note: &'static str,
}

impl<S> IdentitySummary<S> {
    pub fn pass(&self) -> bool {
        self.agreed == self.total
    }

    pub fn disagreements(&self) -> impl Iterator<Item = &IdentityOutcome<S>> {
        self.outcomes.iter().filter(|o| !o.agrees)
    }
}

/// Run [`compare_on_surface`] over a suite and tally verdicts against expectations.
/// Inconclusive verdicts never count as agreement.
pub fn identity_experiment<S: Scalar>(
    suite: &[IdentityCase<S>],
    rp: &RationalParameterization<S>,
    plan: &SamplePlan<S>,
    opts: &CompareOptions<S>,
) -> Result<IdentitySummary<S>> {
    if suite.is_empty() {
        return Err(Error::InvalidInput("identity suite is empty".into()));
    }
    let mut outcomes = Vec::with_capacity(suite.len());
    let mut certified = true;
    for case in suite {
        let r = compare_on_surface(&case.p1, &case.p2, rp, plan, opts)?;
        certified &= r.conditions_certified;
        let wanted = if case.expect_equal { Verdict::Indistinguishable } else { Verdict::Distinguishable };
        outcomes.push(IdentityOutcome {
            label: case.label.clone(),
            expect_equal: case.expect_equal,
            verdict: r.verdict,
            max_abs_diff: r.max_abs_diff,
            agrees: r.verdict == wanted,
        });
    }
    Ok(IdentitySummary {
        total: outcomes.len(),
        agreed: outcomes.iter().filter(|o| o.agrees).count(),
        conditions_certified: certified,
        outcomes,
        note: EVIDENCE_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::ConvexPolytope;
    use crate::quadric::{classify, parameterize, Quadric, SampleMode};

    fn square() -> GeneralizedPolytope<f64> {
        ConvexPolytope::unit_cube(2).unwrap().into()
    }

    fn circle5() -> RationalParameterization<f64> {
        parameterize(&classify(&Quadric::sphere(&[0.0, 0.0], 5.0).unwrap()).unwrap()).unwrap()
    }

    fn plan() -> SamplePlan<f64> {
        SamplePlan::cube(1, -0.9, 0.9, SampleMode::Random(100), 1).unwrap()
    }

    #[test]
    fn identical_inputs() {
        let r = compare_on_surface(&square(), &square(), &circle5(), &plan(), &CompareOptions::default()).unwrap();
        assert!(r.max_abs_diff <= 1e-12);
        assert_eq!(r.verdict, Verdict::Indistinguishable);
        assert!(r.conditions_certified);
    }

    #[test]
    fn overlapping_rectangles_match_square() {
        let two = GeneralizedPolytope::new(vec![
            ConvexPolytope::axis_box(&[0.0, 0.0], &[0.6, 1.0]).unwrap(),
            ConvexPolytope::axis_box(&[0.4, 0.0], &[1.0, 1.0]).unwrap(),
        ])
        .unwrap();
        let r = compare_on_surface(&square(), &two, &circle5(), &plan(), &CompareOptions::default()).unwrap();
        assert!(r.max_abs_diff <= 1e-10);
        assert_eq!(r.verdict, Verdict::Indistinguishable);
    }

    #[test]
    fn shifted_square_is_distinguishable() {
        let r = compare_on_surface(&square(), &square().translate(&[0.3, 0.0]), &circle5(), &plan(), &CompareOptions::default())
            .unwrap();
        assert!(r.max_abs_diff > 1e-3);
        assert_eq!(r.verdict, Verdict::Distinguishable);
    }

    #[test]
    fn line_surface_is_never_certified() {
        let line = RationalParameterization::custom(2, |t: &[f64]| vec![t[0], t[0]]);
        let r = compare_on_surface(&square(), &square(), &line, &plan(), &CompareOptions::default()).unwrap();
        assert!(!r.conditions_certified);
    }

    #[test]
    fn verdict_dead_band() {
        assert_eq!(Verdict::judge(1e-5, 1.0, 1e-8, 1e-3), Verdict::Inconclusive);
        assert_eq!(Verdict::judge(1e-9, 1.0, 1e-8, 1e-3), Verdict::Indistinguishable);
        assert_eq!(Verdict::judge(1e-2, 1.0, 1e-8, 1e-3), Verdict::Distinguishable);
    }

    #[test]
    fn mirror_triangle() {
        let tri = GeneralizedPolytope::from_vertex_sets(&[vec![vec![0.0, 1.0], vec![1.0, 1.0], vec![0.0, 2.0]]]).unwrap();
        let h = Hyperplane::through_origin(vec![0.0, 1.0]).unwrap();
        let r = mirror_counterexample(&tri, &h, 50, 50, 0).unwrap();
        assert!(r.on_max_diff <= 1e-10, "{}", r.on_max_diff);
        assert!(r.off_max_diff > 1e-3);
        assert!(r.pass);
    }

    #[test]
    fn mirror_rejects_symmetric_fixture() {
        let sym = GeneralizedPolytope::from(ConvexPolytope::axis_box(&[0.0, -1.0], &[1.0, 1.0]).unwrap());
        let h = Hyperplane::through_origin(vec![0.0, 1.0]).unwrap();
        assert!(matches!(mirror_counterexample(&sym, &h, 5, 5, 0), Err(Error::InvalidFixture(_))));
    }

    #[test]
    fn complement_is_orthonormal() {
        let b = orthogonal_complement(&[1.0f64, 2.0, -0.5]);
        assert_eq!(b.len(), 2);
        for (i, u) in b.iter().enumerate() {
            assert!(dot(u, &[1.0, 2.0, -0.5]).abs() < 1e-14);
            for v in &b[i + 1..] {
                assert!(dot(u, v).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn modulus_examples() {
        let rp = circle5();
        let r = modulus_invariance(&square(), &[2.7, -1.3], &rp, &plan()).unwrap();
        assert!(r.pass);
        let r0 = modulus_invariance(&square(), &[0.0, 0.0], &rp, &plan()).unwrap();
        assert_eq!(r0.max_translation_deviation, 0.0);
        let tri: GeneralizedPolytope<f64> = ConvexPolytope::standard_simplex(2).unwrap().into();
        assert!(modulus_invariance(&tri, &[0.0, 0.0], &rp, &plan()).unwrap().pass);
    }

    #[test]
    fn identity_suite_tally() {
        let suite = vec![
            IdentityCase { label: "same".into(), p1: square(), p2: square(), expect_equal: true },
            IdentityCase { label: "shifted".into(), p1: square(), p2: square().translate(&[0.3, 0.0]), expect_equal: false },
            IdentityCase { label: "wrong".into(), p1: square(), p2: square().translate(&[0.3, 0.0]), expect_equal: true },
        ];
        let s = identity_experiment(&suite, &circle5(), &plan(), &CompareOptions::default()).unwrap();
        assert_eq!((s.total, s.agreed), (3, 2));
        assert_eq!(s.disagreements().next().unwrap().label, "wrong");
        assert!(identity_experiment::<f64>(&[], &circle5(), &plan(), &CompareOptions::default()).is_err());
    }
}
