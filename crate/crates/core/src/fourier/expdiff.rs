//! Divided differences of the exponential.
//!
//! `exp[θ0, ..., θn]` is read off the top-right entry of `exp(B)`, where `B` is
//! upper bidiagonal with the nodes on the diagonal and ones on the
//! superdiagonal. The matrix exponential uses a diagonal shift by the node
//! mean, scaling and squaring, and a diagonal Padé(8, 8) core. Confluent and
//! clustered nodes need no special casing.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Most nodes accepted, i.e. a 16 x 16 bidiagonal matrix.
pub const MAX_NODES: usize = 16;
/// Guard on the real and imaginary parts of each node.
pub const EXPONENT_GUARD: f64 = 700.0;

const PADE_DEGREE: usize = 8;
/// Scaled matrices have 1-norm at most this before the Padé step.
const SCALED_NORM: f64 = 0.5;

/// Nodes `θ_k` of an exponential divided difference.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpNodes<S> {
    nodes: Vec<Complex<S>>,
}

impl<S: Scalar> ExpNodes<S> {
    pub fn new(nodes: Vec<Complex<S>>) -> Result<Self> {
        if nodes.is_empty() || nodes.len() > MAX_NODES {
            return Err(Error::InvalidInput(format!("{} nodes; expected 1..={MAX_NODES}", nodes.len())));
        }
        if nodes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite node".into()));
        }
        Ok(Self { nodes })
    }

    /// Nodes `-i (s . v_k)` for a vertex list.
    pub fn from_vertices(vertices: &[Vec<S>], s: &[S]) -> Result<Self> {
        Self::new(
            vertices
                .iter()
                .map(|v| Complex::new(S::zero(), -crate::scalar::dot(s, v)))
                .collect(),
        )
    }

    pub fn nodes(&self) -> &[Complex<S>] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Divided difference of `exp` over the nodes.
pub fn expdiff<S: Scalar>(nodes: &ExpNodes<S>) -> Result<Complex<S>> {
    let z = nodes.nodes();
    let guard = S::c(EXPONENT_GUARD);
    for w in z {
        if w.re.abs() > guard {
            return Err(Error::Overflow(w.re.as_f64()));
        }
        if w.im.abs() > guard {
            return Err(Error::Overflow(w.im.as_f64()));
        }
    }
    let m = z.len();
    let mean = z.iter().fold(Complex::new(S::zero(), S::zero()), |a, &b| a + b) / S::c(m as f64);
    if m == 1 {
        return Ok(z[0].exp());
    }

    // 1-norm of the shifted bidiagonal matrix
    let mut norm = (z[0] - mean).norm();
    for w in &z[1..] {
        norm = norm.max((*w - mean).norm() + S::one());
    }
    let mut squarings = 0u32;
    while norm > S::c(SCALED_NORM) {
        norm /= S::c(2.0);
        squarings += 1;
    }
    let factor = S::c(2.0).powi(-(squarings as i32));

    let mut b = Matrix::<Complex<S>>::zeros(m, m);
    for k in 0..m {
        b[(k, k)] = (z[k] - mean) * factor;
        if k + 1 < m {
            b[(k, k + 1)] = Complex::new(factor, S::zero());
        }
    }

    let mut x = pade(&b);
    for _ in 0..squarings {
        x = upper_square(&x);
    }
    Ok(mean.exp() * x[(0, m - 1)])
}

/// Padé coefficients `c_k = (2q-k)! q! / ((2q)! k! (q-k)!)`.
fn pade_coefficients<S: Scalar>() -> Vec<S> {
    let q = PADE_DEGREE;
    let mut c = vec![S::one()];
    for k in 1..=q {
        let prev = c[k - 1];
        c.push(prev * S::c((q + 1 - k) as f64) / S::c((k * (2 * q + 1 - k)) as f64));
    }
    c
}

fn pade<S: Scalar>(b: &Matrix<Complex<S>>) -> Matrix<Complex<S>> {
    let m = b.rows();
    let c = pade_coefficients::<S>();
    let zero = Complex::new(S::zero(), S::zero());
    let mut num = Matrix::<Complex<S>>::zeros(m, m);
    let mut den = Matrix::<Complex<S>>::zeros(m, m);
    let mut power = Matrix::<Complex<S>>::zeros(m, m);
    for i in 0..m {
        power[(i, i)] = Complex::new(S::one(), S::zero());
    }
    for (k, &ck) in c.iter().enumerate() {
        let sign = if k % 2 == 0 { S::one() } else { -S::one() };
        for i in 0..m {
            for j in i..m {
                let p = power[(i, j)];
                if p != zero {
                    num[(i, j)] += p * ck;
                    den[(i, j)] += p * (ck * sign);
                }
            }
        }
        if k < PADE_DEGREE {
            power = upper_mul(&power, b);
        }
    }
    upper_solve(&den, &num)
}

/// Product of two upper-triangular matrices.
fn upper_mul<S: Scalar>(a: &Matrix<Complex<S>>, b: &Matrix<Complex<S>>) -> Matrix<Complex<S>> {
    let m = a.rows();
    let mut out = Matrix::<Complex<S>>::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let mut acc = Complex::new(S::zero(), S::zero());
            for k in i..=j {
                acc += a[(i, k)] * b[(k, j)];
            }
            out[(i, j)] = acc;
        }
    }
    out
}

fn upper_square<S: Scalar>(a: &Matrix<Complex<S>>) -> Matrix<Complex<S>> {
    upper_mul(a, a)
}

/// Solve `d x = rhs` for upper-triangular `d` by back substitution, column by column.
fn upper_solve<S: Scalar>(d: &Matrix<Complex<S>>, rhs: &Matrix<Complex<S>>) -> Matrix<Complex<S>> {
    let m = d.rows();
    let mut x = Matrix::<Complex<S>>::zeros(m, m);
    for col in 0..m {
        for i in (0..=col).rev() {
            let mut acc = rhs[(i, col)];
            for k in i + 1..=col {
                acc -= d[(i, k)] * x[(k, col)];
            }
            x[(i, col)] = acc / d[(i, i)];
        }
    }
    x
}
