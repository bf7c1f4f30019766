//! Small dense linear algebra for the desk-scale dimensions used throughout
//! the crate (n <= 16). Row-major storage, no external backend.

use std::ops::{Index, IndexMut};

use num_traits::Zero;

use crate::scalar::{dot, norm, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Copy + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend_from_slice(row);
        }
        Self { rows: r, cols: c, data }
    }

    /// Build from column vectors.
    pub fn from_cols(cols: &[Vec<T>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self
    where
        T: std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
    {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)] + a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T>
    where
        T: std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
    {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(T::zero(), |acc, (&a, &b)| acc + a * b))
            .collect()
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn diag(d: &[S]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn frobenius(&self) -> S {
        norm(&self.data)
    }

    pub fn max_abs(&self) -> S {
        self.data.iter().fold(S::zero(), |m, &x| m.max(x.abs()))
    }

    pub fn is_symmetric(&self, tol: S) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| (self[(i, j)] - self[(j, i)]).abs() <= tol))
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = S::one();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[(i, k)].abs().partial_cmp(&a[(j, k)].abs()).unwrap())
                .unwrap();
            if a[(p, k)] == S::zero() {
                return S::zero();
            }
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            let piv = a[(k, k)];
            det *= piv;
            for i in k + 1..n {
                let f = a[(i, k)] / piv;
                for j in k..n {
                    let v = a[(k, j)];
                    a[(i, j)] -= f * v;
                }
            }
        }
        det
    }

    /// Solve `self * x = b`. Returns `None` when a pivot falls below
    /// `rel_tol * max|a_ij|`.
    pub fn solve(&self, b: &[S], rel_tol: S) -> Option<Vec<S>> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        assert_eq!(n, b.len());
        let floor = rel_tol * self.max_abs();
        let mut a = self.clone();
        let mut x = b.to_vec();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[(i, k)].abs().partial_cmp(&a[(j, k)].abs()).unwrap())
                .unwrap();
            if a[(p, k)].abs() <= floor || a[(p, k)] == S::zero() {
                return None;
            }
            if p != k {
                a.swap_rows(p, k);
                x.swap(p, k);
            }
            let piv = a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] / piv;
                if f == S::zero() {
                    continue;
                }
                for j in k..n {
                    let v = a[(k, j)];
                    a[(i, j)] -= f * v;
                }
                let xv = x[k];
                x[i] -= f * xv;
            }
        }
        for k in (0..n).rev() {
            let mut acc = x[k];
            for j in k + 1..n {
                acc -= a[(k, j)] * x[j];
            }
            x[k] = acc / a[(k, k)];
        }
        Some(x)
    }

    pub fn inverse(&self, rel_tol: S) -> Option<Self> {
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![S::zero(); n];
            e[j] = S::one();
            cols.push(self.solve(&e, rel_tol)?);
        }
        Some(Self::from_cols(&cols))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Greedy pivoted Gram-Schmidt: repeatedly picks the remaining row with the
/// largest component orthogonal to the rows already picked, stopping when that
/// component drops to `tol`. Returns the picked indices in pick order; their
/// count is the numerical rank.
pub fn independent_rows<S: Scalar>(rows: &[Vec<S>], tol: S) -> Vec<usize> {
    let mut resid: Vec<Vec<S>> = rows.to_vec();
    let mut picked = Vec::new();
    let dim = rows.first().map_or(0, Vec::len);
    while picked.len() < dim {
        let best = (0..resid.len())
            .filter(|i| !picked.contains(i))
            .map(|i| (i, norm(&resid[i])))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let Some((i, nrm)) = best else { break };
        if nrm <= tol {
            break;
        }
        picked.push(i);
        let q: Vec<S> = resid[i].iter().map(|&x| x / nrm).collect();
        for r in resid.iter_mut() {
            let c = dot(r, &q);
            for (x, &qk) in r.iter_mut().zip(&q) {
                *x -= c * qk;
            }
        }
    }
    picked
}

/// Affine rank of a point set and an affinely independent witness subset.
///
/// The tolerance is relative: `rel_tol * (1 + max coordinate spread)`.
pub fn affine_rank<S: Scalar>(points: &[Vec<S>], rel_tol: S) -> (usize, Vec<usize>) {
    if points.is_empty() {
        return (0, Vec::new());
    }
    let base = &points[0];
    let diffs: Vec<Vec<S>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(&a, &b)| a - b).collect())
        .collect();
    let spread = diffs.iter().fold(S::zero(), |m, d| m.max(norm(d)));
    let picked = independent_rows(&diffs, rel_tol * (S::one() + spread));
    let mut witness = vec![0];
    witness.extend(picked.iter().map(|&i| i + 1));
    (picked.len(), witness)
}

/// Generalized cross product: for `n-1` row vectors in R^n, the vector whose
/// i-th entry is the signed cofactor obtained by deleting column i. It is
/// orthogonal to every input row and vanishes iff the rows are dependent.
pub fn cofactor_normal<S: Scalar>(rows: &[Vec<S>]) -> Vec<S> {
    let n = rows.len() + 1;
    (0..n)
        .map(|skip| {
            let minor: Vec<Vec<S>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &x)| x).collect())
                .collect();
            let d = if minor.is_empty() { S::one() } else { Matrix::from_rows(&minor).det() };
            if skip % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Eigendecomposition of a symmetric matrix.
#[derive(Clone, Debug)]
pub struct SymmetricEigen<S> {
    pub values: Vec<S>,
    /// Orthonormal eigenvectors stored as columns, aligned with `values`.
    pub vectors: Matrix<S>,
    pub sweeps: usize,
}

/// Cyclic Jacobi eigenvalue iteration. Sweeps until the off-diagonal
/// Frobenius norm is at most `rel_tol * ||A||_F`.
pub fn symmetric_eigen<S: Scalar>(a: &Matrix<S>, rel_tol: S) -> SymmetricEigen<S> {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut m = a.clone();
    let mut v = Matrix::identity(n);
    let threshold = rel_tol * a.frobenius();
    let off = |m: &Matrix<S>| {
        let mut s = S::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[(i, j)] * m[(i, j)];
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    while sweeps < 64 && off(&m) > threshold {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == S::zero() {
                    continue;
                }
                let two = S::c(2.0);
                let theta = (m[(q, q)] - m[(p, p)]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + S::one()).sqrt());
                let c = S::one() / (t * t + S::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let values = (0..n).map(|i| m[(i, i)]).collect();
    SymmetricEigen { values, vectors: v, sweeps }
}
