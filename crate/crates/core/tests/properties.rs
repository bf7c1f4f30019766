mod common;

use common::*;
use num_complex::Complex64;
use polyfourier::fourier::{point_rng, Decomposition};
use polyfourier::polytope::{affine_image, triangulate_from, GeneralizedPolytope, Hyperplane};
use polyfourier::quadric::{classify, parameterize, psi_jacobian_det, jacobian_det_sigma_hat, QuadricCase, SamplePlan};
use polyfourier::verify::{compare_at, mirror_counterexample, random_convex_polytope, CompareOptions};
use polyfourier::Matrix64;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 32, ..ProptestConfig::default() }
}

fn polytope_for(n: usize, seed: u64) -> GeneralizedPolytope<f64> {
    random_convex_polytope::<f64>(n, &mut point_rng(seed, 0)).unwrap().into()
}

fn freq(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-8.0f64..8.0, n)
}

fn dim_and_freq() -> impl Strategy<Value = (usize, Vec<f64>)> {
    (2usize..=4).prop_flat_map(|n| (Just(n), freq(n)))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn apex_choice_does_not_change_transform(seed in any::<u64>(), (n, s) in dim_and_freq()) {
        let p = polytope_for(n, seed);
        let c = &p.pieces()[0];
        let base = Decomposition::from_simplices(n, triangulate_from(c, 0).unwrap()).eval(&s).unwrap();
        for apex in 1..c.vertices().len() {
            let other = Decomposition::from_simplices(n, triangulate_from(c, apex).unwrap()).eval(&s).unwrap();
            prop_assert!((base - other).norm() <= 1e-11 * (1.0 + base.norm()));
        }
    }

    #[test]
    fn hermitian_symmetry(seed in any::<u64>(), (n, s) in dim_and_freq()) {
        let d = Decomposition::generalized(&polytope_for(n, seed)).unwrap();
        let neg: Vec<f64> = s.iter().map(|x| -x).collect();
        prop_assert!((d.eval(&neg).unwrap() - d.eval(&s).unwrap().conj()).norm() <= 1e-12);
    }

    #[test]
    fn translation_multiplies_by_phase(seed in any::<u64>(), (n, s) in dim_and_freq(), w in prop::collection::vec(-3.0f64..3.0, 4)) {
        let p = polytope_for(n, seed);
        let w = &w[..n];
        let base = Decomposition::generalized(&p).unwrap().eval(&s).unwrap();
        let moved = Decomposition::generalized(&p.translate(w)).unwrap().eval(&s).unwrap();
        let phase = Complex64::new(0.0, -w.iter().zip(&s).map(|(a, b)| a * b).sum::<f64>()).exp();
        prop_assert!((moved - phase * base).norm() <= 1e-11);
    }

    #[test]
    fn linear_map_law(seed in any::<u64>(), (n, s) in dim_and_freq(), m in prop::collection::vec(-1.0f64..1.0, 16)) {
        // F_{MP}(s) = |det M| F_P(Mᵀ s)
        let mut rows: Vec<Vec<f64>> = (0..n).map(|i| m[i * n..(i + 1) * n].to_vec()).collect();
        for (i, r) in rows.iter_mut().enumerate() { r[i] += 2.0; }
        let mat = Matrix64::from_rows(&rows);
        let p = polytope_for(n, seed);
        let image = affine_image(&p, &mat, &vec![0.0; n]).unwrap();
        let lhs = Decomposition::generalized(&image).unwrap().eval(&s).unwrap();
        let mts = mat.transpose().mul_vec(&s);
        let rhs = Decomposition::generalized(&p).unwrap().eval(&mts).unwrap() * mat.det().abs();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
    }

    #[test]
    fn mirror_agrees_on_the_hyperplane(seed in any::<u64>(), n in 2usize..=3) {
        let p = polytope_for(n, seed);
        let mut shift = vec![0.0; n];
        shift[n - 1] = 1.5;
        let p = p.translate(&shift);
        let mut normal = vec![0.0; n];
        normal[n - 1] = 1.0;
        let h = Hyperplane::through_origin(normal).unwrap();
        let r = mirror_counterexample(&p, &h, 20, 20, seed).unwrap();
        prop_assert!(r.on_max_diff <= 1e-10);
        prop_assert!(r.off_max_diff > 1e-3);
    }

    #[test]
    fn classification_invariant_under_affine_change(m in prop::collection::vec(-0.6f64..0.6, 9), w in prop::collection::vec(-1.0f64..1.0, 3), which in 0usize..5) {
        let name = ["sphere3.json", "ellipsoid3.json", "paraboloid.json", "hyperboloid2.json", "hyperboloid1.json"][which];
        let q = quadric(name);
        let rows: Vec<Vec<f64>> = (0..3).map(|i| (0..3).map(|j| m[i * 3 + j] + if i == j { 1.0 } else { 0.0 }).collect()).collect();
        let mat = Matrix64::from_rows(&rows);
        prop_assume!(mat.det().abs() > 0.1);
        let a = classify(&q).unwrap();
        let b = classify(&q.pullback(&mat, &w).unwrap()).unwrap();
        prop_assert_eq!(a.case, b.case);
        let sorted = |e: &[i8]| { let mut v = e.to_vec(); v.sort(); v };
        let (ea, eb) = (sorted(&a.epsilons), sorted(&b.epsilons));
        // ε is defined up to a global sign in the mixed case (swap s'_1, s'_n)
        let flipped: Vec<i8> = sorted(&eb.iter().map(|x| -x).collect::<Vec<_>>());
        prop_assert!(ea == eb || (a.case == QuadricCase::CentralMixed && ea == flipped));
        prop_assert_eq!(a.line_free, b.line_free);
    }
}

#[test]
fn normal_form_jacobian_is_identity_in_cases_one_and_two() {
    for name in ["parabola.json", "paraboloid.json", "hyperbola.json", "hyperboloid2.json", "hyperboloid1.json", "saddle.json"] {
        let cl = classify(&quadric(name)).unwrap();
        assert_ne!(cl.case, QuadricCase::DefiniteSphere);
        let rp = parameterize(&cl).unwrap();
        for (t, _) in SamplePlan::default_for(rp.param_dim()).admissible(&rp).unwrap() {
            let j = rp.normal_form_bar_jacobian(&t).unwrap();
            for r in 0..j.rows() {
                for c in 0..j.cols() {
                    let want = if r == c { 1.0 } else { 0.0 };
                    assert!((j[(r, c)] - want).abs() <= 1e-7, "{name} at {t:?}");
                }
            }
        }
    }
}

#[test]
fn psi_factorization_holds_on_spheres() {
    for name in ["sphere2.json", "sphere3.json", "sphere4.json"] {
        let q = quadric(name);
        let n = q.dim();
        let rp = parameterize(&classify(&q).unwrap()).unwrap();
        for (t, s) in SamplePlan::default_for(n - 1).admissible(&rp).unwrap() {
            let lhs = jacobian_det_sigma_hat(&rp, &t).unwrap();
            let rhs = psi_jacobian_det(&q, &s[..n - 1], s[n - 1]).unwrap() * rp.sigma_bar_jacobian_det(&t).unwrap();
            assert!((lhs - rhs).abs() <= 1e-5 * lhs.abs(), "{name} at {t:?}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn verdicts_ignore_sample_order_and_thread_count() {
    let p1 = polytope("square.json");
    let p2 = polytope("square_shifted.json");
    let mut rng = point_rng(1, 0);
    let points: Vec<(Option<Vec<f64>>, Vec<f64>)> = (0..64)
        .map(|_| (None, (0..2).map(|_| rand::Rng::gen_range(&mut rng, -10.0..10.0)).collect()))
        .collect();
    let opts = CompareOptions::default();
    let forward = compare_at(&p1, &p2, points.clone(), &opts).unwrap();
    let reversed = compare_at(&p1, &p2, points.iter().rev().cloned().collect(), &opts).unwrap();
    assert_eq!(forward.verdict, reversed.verdict);
    assert_eq!(forward.max_abs_diff, reversed.max_abs_diff);
    let serial = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let wide = rayon::ThreadPoolBuilder::new().num_threads(6).build().unwrap();
    let a = serial.install(|| compare_at(&p1, &p2, points.clone(), &opts).unwrap());
    let b = wide.install(|| compare_at(&p1, &p2, points.clone(), &opts).unwrap());
    assert_eq!(a, b);
}
