#![allow(dead_code)]

use std::path::PathBuf;

use num_complex::Complex64;
use polyfourier::cli::{load_polytope, load_quadric};
use polyfourier::polytope::{ConvexPolytope, GeneralizedPolytope};
use polyfourier::quadric::Quadric;
use serde_json::Value;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn polytope(name: &str) -> GeneralizedPolytope<f64> {
    load_polytope(&fixture(name)).unwrap()
}

pub fn quadric(name: &str) -> Quadric<f64> {
    load_quadric(&fixture(name)).unwrap()
}

/// `(case, lineFree)` recorded by hand in a quadric fixture.
pub fn expected_quadric(name: &str) -> (u8, bool) {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
    (v["expected"]["case"].as_u64().unwrap() as u8, v["expected"]["lineFree"].as_bool().unwrap())
}

/// `∫_0^1 e^{-i a x} dx`.
pub fn segment_ft(a: f64) -> Complex64 {
    if a == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let ia = Complex64::new(0.0, a);
    (Complex64::new(1.0, 0.0) - (-ia).exp()) / ia
}

/// `∫_0^1 (1 - x) e^{-i a x} dx`, by parts.
pub fn ramp_ft(a: f64) -> Complex64 {
    let ia = Complex64::new(0.0, a);
    Complex64::new(1.0, 0.0) / ia - segment_ft(a) / ia
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Volume of the hull of `points` in R^d by the divergence theorem,
/// `vol = (1/d) Σ_F h_F area(F)`, recursing into facet planes. Polygons use
/// the shoelace formula on angle-sorted vertices.
pub fn hull_volume(points: &[Vec<f64>]) -> f64 {
    let d = points[0].len();
    match d {
        1 => {
            let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
            let hi = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
            hi - lo
        }
        2 => {
            let p = ConvexPolytope::from_vertices(points).unwrap();
            let v = p.vertices();
            let c = [v.iter().map(|x| x[0]).sum::<f64>() / v.len() as f64, v.iter().map(|x| x[1]).sum::<f64>() / v.len() as f64];
            let mut ring: Vec<&Vec<f64>> = v.iter().collect();
            ring.sort_by(|a, b| (a[1] - c[1]).atan2(a[0] - c[0]).partial_cmp(&(b[1] - c[1]).atan2(b[0] - c[0])).unwrap());
            (0..ring.len())
                .map(|i| {
                    let (a, b) = (ring[i], ring[(i + 1) % ring.len()]);
                    a[0] * b[1] - a[1] * b[0]
                })
                .sum::<f64>()
                .abs()
                / 2.0
        }
        _ => {
            let p = ConvexPolytope::from_vertices(points).unwrap();
            let c: Vec<f64> = (0..d).map(|j| p.vertices().iter().map(|v| v[j]).sum::<f64>() / p.vertices().len() as f64).collect();
            let mut total = 0.0;
            for (h, idx) in p.halfspaces().iter().zip(p.facet_vertex_sets()) {
                let height = h.offset - dot(&h.normal, &c);
                let face: Vec<&Vec<f64>> = idx.iter().map(|&i| &p.vertices()[i]).collect();
                let basis = plane_basis(&h.normal);
                let projected: Vec<Vec<f64>> =
                    face.iter().map(|x| basis.iter().map(|b| dot(b, x)).collect()).collect();
                total += height * hull_volume(&projected) / d as f64;
            }
            total
        }
    }
}

/// Orthonormal basis of the complement of a unit vector.
fn plane_basis(u: &[f64]) -> Vec<Vec<f64>> {
    let d = u.len();
    let mut basis: Vec<Vec<f64>> = vec![u.to_vec()];
    for j in 0..d {
        let mut e = vec![0.0; d];
        e[j] = 1.0;
        for b in &basis {
            let k = dot(&e, b);
            e.iter_mut().zip(b).for_each(|(x, y)| *x -= k * y);
        }
        let l = dot(&e, &e).sqrt();
        if l > 1e-8 {
            basis.push(e.into_iter().map(|x| x / l).collect());
        }
        if basis.len() == d {
            break;
        }
    }
    basis.remove(0);
    basis
}

/// Path of the built command-line binary.
pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_polyfourier")
}
