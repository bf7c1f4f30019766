//! Convex and generalized polytopes in R^n for small n.
//!
//! A [`ConvexPolytope`] carries both its irredundant vertex list and its facet
//! halfspaces. Conversions are brute force over n-subsets, which is fine for
//! the sizes this crate targets (n <= 4, a few dozen vertices per piece).
//!
//! A [`GeneralizedPolytope`] is a finite union of full-dimensional convex
//! pieces. Pieces may overlap; integrals over the union are handled by
//! inclusion-exclusion in [`crate::fourier`].

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::linalg::{affine_rank, cofactor_normal, independent_rows, Matrix};
use crate::scalar::{dot, max_abs, norm, Scalar};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 4;
/// Largest supported number of pieces in a generalized polytope.
pub const MAX_PIECES: usize = 8;

/// Relative tolerance for vertex identity and on-hyperplane tests.
const POINT_TOL: f64 = 1e-9;
/// Simplices below `DEGENERATE_VOL * scale^n` are dropped.
const DEGENERATE_VOL: f64 = 1e-12;

#[inline]
fn point_tol<S: Scalar>(magnitude: S) -> S {
    S::tol(POINT_TOL) * (S::one() + magnitude)
}

/// Closed halfspace `normal . x <= offset` with a unit normal.
#[derive(Clone, Debug, PartialEq)]
pub struct Halfspace<S> {
    pub normal: Vec<S>,
    pub offset: S,
}

impl<S: Scalar> Halfspace<S> {
    /// Build from any nonzero normal; the result is normalized.
    pub fn new(normal: Vec<S>, offset: S) -> Result<Self> {
        let n = norm(&normal);
        if !(n > S::zero()) || !n.is_finite() {
            return Err(Error::DegenerateInput("halfspace normal must be nonzero".into()));
        }
        Ok(Self { normal: normal.iter().map(|&x| x / n).collect(), offset: offset / n })
    }

    /// Signed distance; positive outside.
    #[inline]
    pub fn excess(&self, x: &[S]) -> S {
        dot(&self.normal, x) - self.offset
    }
}

/// Affine hyperplane `normal . x = offset`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hyperplane<S> {
    pub normal: Vec<S>,
    pub offset: S,
}

impl<S: Scalar> Hyperplane<S> {
    pub fn new(normal: Vec<S>, offset: S) -> Result<Self> {
        if !(norm(&normal) > S::zero()) {
            return Err(Error::DegenerateInput("hyperplane normal must be nonzero".into()));
        }
        Ok(Self { normal, offset })
    }

    /// Hyperplane through the origin.
    pub fn through_origin(normal: Vec<S>) -> Result<Self> {
        Self::new(normal, S::zero())
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn signed_value(&self, x: &[S]) -> S {
        dot(&self.normal, x) - self.offset
    }

    /// Reflection `x -> x - 2 ((a.x - b) / |a|^2) a`.
    pub fn reflect(&self, x: &[S]) -> Vec<S> {
        let k = S::c(2.0) * self.signed_value(x) / dot(&self.normal, &self.normal);
        x.iter().zip(&self.normal).map(|(&xi, &ai)| xi - k * ai).collect()
    }
}

/// An n-simplex given by n+1 affinely independent vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Simplex<S> {
    vertices: Vec<Vec<S>>,
    abs_det: S,
}

impl<S: Scalar> Simplex<S> {
    /// Validates vertex count and rejects (numerically) flat simplices.
    pub fn new(vertices: Vec<Vec<S>>) -> Result<Self> {
        let n = vertices.first().map_or(0, Vec::len);
        if n == 0 || vertices.len() != n + 1 || vertices.iter().any(|v| v.len() != n) {
            return Err(Error::DegenerateInput(format!(
                "a simplex in R^{n} needs exactly {} vertices",
                n + 1
            )));
        }
        let abs_det = edge_det(&vertices).abs();
        let scale = extent(&vertices);
        if !(abs_det / factorial::<S>(n) > S::tol(DEGENERATE_VOL) * scale.powi(n as i32)) {
            return Err(Error::DegenerateInput("simplex is affinely dependent".into()));
        }
        Ok(Self { vertices, abs_det })
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Vec<S>] {
        &self.vertices
    }

    /// `|det(v_1 - v_0, ..., v_n - v_0)|`, i.e. `n! * volume`.
    pub fn abs_det(&self) -> S {
        self.abs_det
    }

    pub fn volume(&self) -> S {
        self.abs_det / factorial::<S>(self.dim())
    }
}

/// Full-dimensional convex polytope with dual representations.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolytope<S> {
    dim: usize,
    vertices: Vec<Vec<S>>,
    halfspaces: Vec<Halfspace<S>>,
}

impl<S: Scalar> ConvexPolytope<S> {
    /// Convex hull of a point set; see [`hull_facets`].
    pub fn from_vertices(points: &[Vec<S>]) -> Result<Self> {
        hull_facets(points)
    }

    /// Axis-aligned box `[lo_1, hi_1] x ... x [lo_n, hi_n]`.
    pub fn axis_box(lo: &[S], hi: &[S]) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), got: hi.len() });
        }
        let n = lo.len();
        let corners: Vec<Vec<S>> = (0..1usize << n)
            .map(|mask| (0..n).map(|k| if mask >> k & 1 == 1 { hi[k] } else { lo[k] }).collect())
            .collect();
        hull_facets(&corners)
    }

    /// Unit cube `[0, 1]^n`.
    pub fn unit_cube(n: usize) -> Result<Self> {
        Self::axis_box(&vec![S::zero(); n], &vec![S::one(); n])
    }

    /// Standard simplex `conv{0, e_1, ..., e_n}`.
    pub fn standard_simplex(n: usize) -> Result<Self> {
        let mut pts = vec![vec![S::zero(); n]];
        for k in 0..n {
            let mut e = vec![S::zero(); n];
            e[k] = S::one();
            pts.push(e);
        }
        hull_facets(&pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<S>] {
        &self.vertices
    }

    pub fn halfspaces(&self) -> &[Halfspace<S>] {
        &self.halfspaces
    }

    /// Membership by the H-representation (boundary inclusive, to tolerance).
    pub fn contains(&self, x: &[S]) -> bool {
        let tol = point_tol(max_abs(x));
        self.halfspaces.iter().all(|h| h.excess(x) <= tol)
    }

    /// Per-axis `(lo, hi)` of the vertex set.
    pub fn bounding_box(&self) -> (Vec<S>, Vec<S>) {
        bounding_box(&self.vertices)
    }

    pub fn centroid(&self) -> Vec<S> {
        let k = S::c(self.vertices.len() as f64);
        (0..self.dim).map(|j| self.vertices.iter().map(|v| v[j]).sum::<S>() / k).collect()
    }

    /// Largest vertex coordinate magnitude.
    pub fn magnitude(&self) -> S {
        self.vertices.iter().fold(S::zero(), |m, v| m.max(max_abs(v)))
    }

    /// Indices of vertices lying on each facet, aligned with `halfspaces()`.
    pub fn facet_vertex_sets(&self) -> Vec<Vec<usize>> {
        self.halfspaces
            .iter()
            .map(|h| {
                (0..self.vertices.len())
                    .filter(|&i| h.excess(&self.vertices[i]).abs() <= point_tol(max_abs(&self.vertices[i])))
                    .collect()
            })
            .collect()
    }

    /// Intersection with one extra halfspace.
    pub fn clip(&self, h: &Halfspace<S>) -> Option<Self> {
        let mut hs = self.halfspaces.clone();
        hs.push(h.clone());
        from_halfspaces(self.dim, &hs)
    }

    pub fn affine_image(&self, m: &Matrix<S>, w: &[S]) -> Result<Self> {
        let inv = m.inverse(S::tol(1e-12)).ok_or(Error::SingularMatrix)?;
        Ok(self.map_with_inverse(m, &inv, w))
    }

    fn map_with_inverse(&self, m: &Matrix<S>, inv: &Matrix<S>, w: &[S]) -> Self {
        let vertices = self
            .vertices
            .iter()
            .map(|x| m.mul_vec(x).iter().zip(w).map(|(&a, &b)| a + b).collect())
            .collect();
        // u.x <= b  becomes  (M^-T u).y <= b + (M^-T u).w
        let inv_t = inv.transpose();
        let halfspaces = self
            .halfspaces
            .iter()
            .map(|h| {
                let u = inv_t.mul_vec(&h.normal);
                let off = h.offset + dot(&u, w);
                Halfspace::new(u, off).expect("invertible map keeps normals nonzero")
            })
            .collect();
        Self { dim: self.dim, vertices, halfspaces }
    }

    pub fn translate(&self, w: &[S]) -> Self {
        let id = Matrix::identity(self.dim);
        self.map_with_inverse(&id, &id, w)
    }
}

/// Union of finitely many full-dimensional convex pieces of equal dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedPolytope<S> {
    pieces: Vec<ConvexPolytope<S>>,
}

impl<S: Scalar> GeneralizedPolytope<S> {
    pub fn new(pieces: Vec<ConvexPolytope<S>>) -> Result<Self> {
        let Some(first) = pieces.first() else {
            return Err(Error::DegenerateInput("a generalized polytope needs at least one piece".into()));
        };
        if pieces.len() > MAX_PIECES {
            return Err(Error::LimitExceeded(format!("{} pieces (max {MAX_PIECES})", pieces.len())));
        }
        let dim = first.dim();
        if let Some(bad) = pieces.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: bad.dim() });
        }
        Ok(Self { pieces })
    }

    /// Build each piece as the hull of its vertex list.
    pub fn from_vertex_sets(sets: &[Vec<Vec<S>>]) -> Result<Self> {
        Self::new(sets.iter().map(|s| hull_facets(s)).collect::<Result<_>>()?)
    }

    pub fn dim(&self) -> usize {
        self.pieces[0].dim()
    }

    pub fn pieces(&self) -> &[ConvexPolytope<S>] {
        &self.pieces
    }

    pub fn contains(&self, x: &[S]) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn bounding_box(&self) -> (Vec<S>, Vec<S>) {
        let all: Vec<Vec<S>> = self.pieces.iter().flat_map(|p| p.vertices().iter().cloned()).collect();
        bounding_box(&all)
    }

    pub fn translate(&self, w: &[S]) -> Self {
        Self { pieces: self.pieces.iter().map(|p| p.translate(w)).collect() }
    }

    /// Point reflection `x -> -x`.
    pub fn point_reflection(&self) -> Self {
        let n = self.dim();
        let neg = Matrix::diag(&vec![-S::one(); n]);
        Self { pieces: self.pieces.iter().map(|p| p.map_with_inverse(&neg, &neg, &vec![S::zero(); n])).collect() }
    }
}

impl<S: Scalar> From<ConvexPolytope<S>> for GeneralizedPolytope<S> {
    fn from(p: ConvexPolytope<S>) -> Self {
        Self { pieces: vec![p] }
    }
}

fn factorial<S: Scalar>(n: usize) -> S {
    (1..=n).fold(S::one(), |acc, k| acc * S::c(k as f64))
}

fn edge_det<S: Scalar>(vertices: &[Vec<S>]) -> S {
    let v0 = &vertices[0];
    let rows: Vec<Vec<S>> =
        vertices[1..].iter().map(|v| v.iter().zip(v0).map(|(&a, &b)| a - b).collect()).collect();
    Matrix::from_rows(&rows).det()
}

fn bounding_box<S: Scalar>(points: &[Vec<S>]) -> (Vec<S>, Vec<S>) {
    let n = points[0].len();
    let mut lo = vec![S::infinity(); n];
    let mut hi = vec![S::neg_infinity(); n];
    for p in points {
        for j in 0..n {
            lo[j] = lo[j].min(p[j]);
            hi[j] = hi[j].max(p[j]);
        }
    }
    (lo, hi)
}

/// Largest side of the bounding box.
fn extent<S: Scalar>(points: &[Vec<S>]) -> S {
    let (lo, hi) = bounding_box(points);
    lo.iter().zip(&hi).fold(S::zero(), |m, (&a, &b)| m.max(b - a))
}

fn same_point<S: Scalar>(a: &[S], b: &[S]) -> bool {
    let tol = point_tol(max_abs(a).max(max_abs(b)));
    a.iter().zip(b).all(|(&x, &y)| (x - y).abs() <= tol)
}

fn dedup_points<S: Scalar>(points: &[Vec<S>]) -> Vec<Vec<S>> {
    let mut out: Vec<Vec<S>> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| same_point(p, q)) {
            out.push(p.clone());
        }
    }
    out
}

/// Whether two vertex lists describe the same set, matching each point of one
/// to a point of the other within `tol` (max-norm).
pub fn vertex_sets_match<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>], tol: S) -> bool {
    let close = |x: &Vec<S>, y: &Vec<S>| x.iter().zip(y).all(|(&p, &q)| (p - q).abs() <= tol);
    a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| close(x, y))) && b.iter().all(|y| a.iter().any(|x| close(x, y)))
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::LimitExceeded(format!("dimension {n} outside 1..={MAX_DIM}")));
    }
    Ok(())
}

/// V-to-H conversion by brute force over n-subsets.
///
/// Every n-subset that spans a hyperplane with all points weakly on one side
/// yields a facet. Points that are not vertices (interior points, points in the
/// relative interior of a face, duplicates) are dropped from the vertex list.
pub fn hull_facets<S: Scalar>(points: &[Vec<S>]) -> Result<ConvexPolytope<S>> {
    let n = points.first().map_or(0, Vec::len);
    check_dim(n)?;
    if let Some(bad) = points.iter().find(|p| p.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: bad.len() });
    }
    if points.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::DegenerateInput("non-finite coordinate".into()));
    }
    let pts = dedup_points(points);
    if pts.len() < n + 1 || affine_rank(&pts, S::tol(POINT_TOL)).0 < n {
        return Err(Error::DegenerateInput(format!("points do not span R^{n}")));
    }
    let tols: Vec<S> = pts.iter().map(|p| point_tol(max_abs(p))).collect();

    let mut halfspaces: Vec<Halfspace<S>> = Vec::new();
    for subset in (0..pts.len()).combinations(n) {
        let Some(h) = plane_through(&pts, &subset) else { continue };
        let side = |h: &Halfspace<S>| pts.iter().zip(&tols).all(|(p, &t)| h.excess(p) <= t);
        let oriented = if side(&h) {
            h
        } else {
            let flipped = Halfspace { normal: h.normal.iter().map(|&x| -x).collect(), offset: -h.offset };
            if !side(&flipped) {
                continue;
            }
            flipped
        };
        // refit on the best-conditioned tight subset so near-collinear
        // seeds do not leave a tilted copy of the same facet
        let tight: Vec<usize> =
            (0..pts.len()).filter(|&i| oriented.excess(&pts[i]).abs() <= tols[i]).collect();
        let tight_pts: Vec<Vec<S>> = tight.iter().map(|&i| pts[i].clone()).collect();
        let (rank, witness) = affine_rank(&tight_pts, S::tol(POINT_TOL));
        if rank + 1 < n {
            continue;
        }
        let seed: Vec<usize> = witness[..n].iter().map(|&k| tight[k]).collect();
        let refit = plane_through(&pts, &seed)
            .map(|h| if dot(&h.normal, &oriented.normal) < S::zero() { negate(h) } else { h })
            .unwrap_or(oriented);
        let dup = halfspaces.iter().any(|g| {
            let nt = S::tol(POINT_TOL) * S::c(10.0);
            g.normal.iter().zip(&refit.normal).all(|(&a, &b)| (a - b).abs() <= nt)
                && (g.offset - refit.offset).abs() <= point_tol(g.offset.abs())
        });
        if !dup {
            halfspaces.push(refit);
        }
    }

    let vertices: Vec<Vec<S>> = pts
        .iter()
        .zip(&tols)
        .filter(|(p, &t)| {
            let normals: Vec<Vec<S>> =
                halfspaces.iter().filter(|h| h.excess(p).abs() <= t).map(|h| h.normal.clone()).collect();
            independent_rows(&normals, S::tol(POINT_TOL) * S::c(10.0)).len() == n
        })
        .map(|(p, _)| p.clone())
        .collect();
    if vertices.len() < n + 1 {
        return Err(Error::DegenerateInput("hull has too few vertices".into()));
    }
    Ok(ConvexPolytope { dim: n, vertices, halfspaces })
}

fn negate<S: Scalar>(h: Halfspace<S>) -> Halfspace<S> {
    Halfspace { normal: h.normal.iter().map(|&x| -x).collect(), offset: -h.offset }
}

/// Unit-normal hyperplane through the n points `pts[idx]`, if they span one.
fn plane_through<S: Scalar>(pts: &[Vec<S>], idx: &[usize]) -> Option<Halfspace<S>> {
    let base = &pts[idx[0]];
    let diffs: Vec<Vec<S>> =
        idx[1..].iter().map(|&i| pts[i].iter().zip(base).map(|(&a, &b)| a - b).collect()).collect();
    let raw = cofactor_normal(&diffs);
    let scale: S = diffs.iter().map(|d| norm(d)).fold(S::one(), |acc, x| acc * x);
    let nrm = norm(&raw);
    if !(nrm > S::tol(POINT_TOL) * scale) {
        return None;
    }
    let normal: Vec<S> = raw.iter().map(|&x| x / nrm).collect();
    let offset = dot(&normal, base);
    Some(Halfspace { normal, offset })
}

/// H-to-V conversion. Returns `None` when the region is empty or lower
/// dimensional.
pub fn from_halfspaces<S: Scalar>(dim: usize, halfspaces: &[Halfspace<S>]) -> Option<ConvexPolytope<S>> {
    // parallel duplicates: keep the tighter offset
    let mut hs: Vec<Halfspace<S>> = Vec::new();
    for h in halfspaces {
        let nt = S::tol(POINT_TOL) * S::c(10.0);
        match hs.iter_mut().find(|g| g.normal.iter().zip(&h.normal).all(|(&a, &b)| (a - b).abs() <= nt)) {
            Some(g) => g.offset = g.offset.min(h.offset),
            None => hs.push(h.clone()),
        }
    }
    let mut candidates: Vec<Vec<S>> = Vec::new();
    for subset in (0..hs.len()).combinations(dim) {
        let rows: Vec<Vec<S>> = subset.iter().map(|&i| hs[i].normal.clone()).collect();
        let rhs: Vec<S> = subset.iter().map(|&i| hs[i].offset).collect();
        let Some(x) = Matrix::from_rows(&rows).solve(&rhs, S::tol(1e-10)) else { continue };
        if !x.iter().all(|v| v.is_finite()) {
            continue;
        }
        let tol = point_tol(max_abs(&x));
        if hs.iter().all(|h| h.excess(&x) <= tol) && !candidates.iter().any(|c| same_point(c, &x)) {
            candidates.push(x);
        }
    }
    if candidates.len() < dim + 1 {
        return None;
    }
    hull_facets(&candidates).ok()
}

/// Intersection of two convex polytopes; `None` when empty or lower dimensional.
pub fn intersect<S: Scalar>(p: &ConvexPolytope<S>, q: &ConvexPolytope<S>) -> Result<Option<ConvexPolytope<S>>> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: q.dim() });
    }
    // disjoint bounding boxes need no vertex enumeration
    let (plo, phi) = p.bounding_box();
    let (qlo, qhi) = q.bounding_box();
    for j in 0..p.dim() {
        if plo[j].max(qlo[j]) > phi[j].min(qhi[j]) {
            return Ok(None);
        }
    }
    let mut hs = p.halfspaces().to_vec();
    hs.extend_from_slice(q.halfspaces());
    Ok(from_halfspaces(p.dim(), &hs))
}

/// Triangulation fanned from the vertex nearest the vertex centroid.
pub fn triangulate<S: Scalar>(p: &ConvexPolytope<S>) -> Result<Vec<Simplex<S>>> {
    let c = p.centroid();
    let apex = (0..p.vertices().len())
        .min_by(|&i, &j| {
            let di = norm(&crate::scalar::sub(&p.vertices()[i], &c));
            let dj = norm(&crate::scalar::sub(&p.vertices()[j], &c));
            di.partial_cmp(&dj).unwrap()
        })
        .unwrap();
    triangulate_from(p, apex)
}

/// Triangulation fanned from vertex `apex`: the cone from the apex over a
/// triangulation of every facet not containing it, where each facet is in turn
/// fanned from its first vertex over its own ridges, recursively.
pub fn triangulate_from<S: Scalar>(p: &ConvexPolytope<S>, apex: usize) -> Result<Vec<Simplex<S>>> {
    let nv = p.vertices().len();
    if apex >= nv {
        return Err(Error::InvalidInput(format!("apex index {apex} out of range")));
    }
    let facets = p.facet_vertex_sets();
    let mut order: Vec<usize> = (0..nv).collect();
    order.swap(0, apex);
    let mut index_sets = Vec::new();
    fan(p.vertices(), &facets, &order, p.dim(), &mut index_sets);

    let scale = extent(p.vertices());
    let floor = S::tol(DEGENERATE_VOL) * scale.powi(p.dim() as i32);
    let mut out = Vec::with_capacity(index_sets.len());
    for set in index_sets {
        let verts: Vec<Vec<S>> = set.iter().map(|&i| p.vertices()[i].clone()).collect();
        let vol = edge_det(&verts).abs() / factorial::<S>(p.dim());
        if vol > floor {
            out.push(Simplex { abs_det: vol * factorial::<S>(p.dim()), vertices: verts });
        }
    }
    if out.is_empty() {
        return Err(Error::DegenerateInput("triangulation produced no simplices".into()));
    }
    Ok(out)
}

/// Triangulate the `d`-face spanned by vertex indices `face` (first index is
/// the apex), appending simplices as vertex-index lists.
fn fan<S: Scalar>(verts: &[Vec<S>], facets: &[Vec<usize>], face: &[usize], d: usize, out: &mut Vec<Vec<usize>>) {
    if d == 0 || face.len() == d + 1 {
        out.push(face[..d + 1].to_vec());
        return;
    }
    let apex = face[0];
    let members: BTreeSet<usize> = face.iter().copied().collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in facets {
        let sub: Vec<usize> = f.iter().copied().filter(|i| members.contains(i)).collect();
        if sub.len() < d || sub.contains(&apex) || sub.len() == members.len() || seen.contains(&sub) {
            continue;
        }
        let pts: Vec<Vec<S>> = sub.iter().map(|&i| verts[i].clone()).collect();
        if affine_rank(&pts, S::tol(POINT_TOL)).0 != d - 1 {
            continue;
        }
        seen.insert(sub.clone());
        let mut inner = Vec::new();
        fan(verts, facets, &sub, d - 1, &mut inner);
        for mut s in inner {
            s.insert(0, apex);
            out.push(s);
        }
    }
}

/// Sum of triangulation simplex volumes.
pub fn volume<S: Scalar>(p: &ConvexPolytope<S>) -> S {
    triangulate(p).map(|t| t.iter().map(Simplex::volume).sum()).unwrap_or_else(|_| S::zero())
}

/// Reflect every piece through `h`.
pub fn mirror<S: Scalar>(p: &GeneralizedPolytope<S>, h: &Hyperplane<S>) -> GeneralizedPolytope<S> {
    let n = p.dim();
    assert_eq!(h.dim(), n, "hyperplane dimension must match the polytope");
    let aa = dot(&h.normal, &h.normal);
    let two = S::c(2.0);
    // x -> (I - 2 a a^T / |a|^2) x + 2 b a / |a|^2; the linear part is its own inverse
    let mut m = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] -= two * h.normal[i] * h.normal[j] / aa;
        }
    }
    let w: Vec<S> = h.normal.iter().map(|&a| two * h.offset * a / aa).collect();
    GeneralizedPolytope { pieces: p.pieces().iter().map(|c| c.map_with_inverse(&m, &m, &w)).collect() }
}

/// Image under `x -> M x + w`.
pub fn affine_image<S: Scalar>(p: &GeneralizedPolytope<S>, m: &Matrix<S>, w: &[S]) -> Result<GeneralizedPolytope<S>> {
    let n = p.dim();
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: m.rows() });
    }
    if w.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: w.len() });
    }
    let inv = m.inverse(S::tol(1e-12)).ok_or(Error::SingularMatrix)?;
    Ok(GeneralizedPolytope { pieces: p.pieces().iter().map(|c| c.map_with_inverse(m, &inv, w)).collect() })
}
