//! Closed-form spectral facts for paths and complete bipartite graphs.
//!
//! The path `P_m` has adjacency eigenvalues `2 cos(k pi / (m+1))` for
//! `k = 1..m`, so `-1` is an eigenvalue exactly when `3k = 2(m+1)` has an
//! integer solution, i.e. when `m = 2 (mod 3)`. That residue test, not a
//! floating comparison, drives [`path_complement_rank`].
//!
//! [`kernel_of_j_minus_path`] reproduces the kernel analysis of
//! `J_m - A_{P_m}` for even `m` symbolically: the coordinate recurrence is
//! solved with the column-sum scalar `c` kept as a formal parameter, the
//! period-4 boundary conditions pin the two free coordinates as rational
//! multiples of `c`, and the sum identity then forces `c = 0`, hence a
//! trivial kernel. The result is cross-checked against the elimination
//! rank.

use std::f64::consts::PI;

use num_rational::Ratio;
use thiserror::Error;

use crate::graph::Graph;
use crate::matrix::{graph_rank_exact, GraphMatrix, RankPair};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error("path order must be >= 1")]
    EmptyPath,
    #[error("kernel recurrence applies to even path orders >= 2, got {m}")]
    OddOrder { m: usize },
    #[error("complete bipartite part sizes must satisfy a, b >= 1 and a*b >= 2, got ({a}, {b})")]
    DegenerateBipartite { a: usize, b: usize },
    #[error("internal inconsistency while solving the kernel recurrence: {0}")]
    Inconsistent(&'static str),
}

/// Spectrum of the path `P_m`: angles `k/(m+1)` as exact rationals (the
/// eigenvalue is `2 cos` of the angle times pi) plus floating
/// approximations for inspection.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSpectrum {
    pub m: usize,
    pub angles: Vec<Ratio<u64>>,
    pub values: Vec<f64>,
}

impl PathSpectrum {
    /// Index `k` (1-based) with eigenvalue exactly `-1`, when present.
    /// Decided arithmetically: `-1` occurs iff `m = 2 (mod 3)`, at
    /// `k = 2(m+1)/3`.
    pub fn minus_one_index(&self) -> Option<usize> {
        (self.m % 3 == 2).then(|| 2 * (self.m + 1) / 3)
    }
}

pub fn path_spectrum(m: usize) -> Result<PathSpectrum, ClosedFormError> {
    if m == 0 {
        return Err(ClosedFormError::EmptyPath);
    }
    let angles: Vec<Ratio<u64>> = (1..=m).map(|k| Ratio::new(k as u64, m as u64 + 1)).collect();
    let values = (1..=m)
        .map(|k| 2.0 * (k as f64 * PI / (m as f64 + 1.0)).cos())
        .collect();
    Ok(PathSpectrum { m, angles, values })
}

/// `rank(A_{P_m} + I)`: equals `m` unless `m = 2 (mod 3)`, where one
/// eigenvalue `-1` drops the rank to `m - 1`.
pub fn path_complement_rank(m: usize) -> Result<usize, ClosedFormError> {
    if m == 0 {
        return Err(ClosedFormError::EmptyPath);
    }
    Ok(if m % 3 == 2 { m - 1 } else { m })
}

/// Rank pair of `K_{a,b}`: the adjacency spectrum is
/// `{ +-sqrt(ab), 0^(n-2) }`, so `A + I` has eigenvalues `1 +- sqrt(ab)`
/// and `1`, all nonzero once `ab >= 2`; the complement `K_a u K_b` has
/// `A + I = J_a (+) J_b` of rank 2.
pub fn complete_bipartite_rank_pair(a: usize, b: usize) -> Result<RankPair, ClosedFormError> {
    if a == 0 || b == 0 || a * b < 2 {
        return Err(ClosedFormError::DegenerateBipartite { a, b });
    }
    Ok(RankPair {
        n: a + b,
        f_g: a + b,
        f_gbar: 2,
    })
}

/// Result of the symbolic kernel derivation for `J_m - A_{P_m}`, even `m`.
///
/// `boundary` holds the coefficients `(alpha, beta)` with
/// `(y_1, y_2) = (alpha * c, beta * c)` before `c` is eliminated; the
/// derivation then yields `c = 0` and `kernel_dim = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelTrace {
    pub m: usize,
    pub c: i64,
    pub boundary: (Ratio<i64>, Ratio<i64>),
    pub kernel_dim: usize,
}

/// A linear form `alpha*a + beta*b + gamma*c` in the two free recurrence
/// coordinates and the column-sum scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Form {
    a: Ratio<i64>,
    b: Ratio<i64>,
    c: Ratio<i64>,
}

impl Form {
    fn neg(self) -> Form {
        Form {
            a: -self.a,
            b: -self.b,
            c: -self.c,
        }
    }

    fn add(self, other: Form) -> Form {
        Form {
            a: self.a + other.a,
            b: self.b + other.b,
            c: self.c + other.c,
        }
    }

    /// Substitutes `b = beta * c`.
    fn subst_b(self, beta: Ratio<i64>) -> Form {
        Form {
            a: self.a,
            b: Ratio::new(0, 1),
            c: self.c + self.b * beta,
        }
    }

    /// Substitutes `a = alpha * c`.
    fn subst_a(self, alpha: Ratio<i64>) -> Form {
        Form {
            a: Ratio::new(0, 1),
            b: self.b,
            c: self.c + self.a * alpha,
        }
    }
}

/// Solves `(J_m - A_{P_m}) x = 0` for even `m` by mechanizing the proof
/// recurrence, and reports the kernel dimension (always 0).
pub fn kernel_of_j_minus_path(m: usize) -> Result<KernelTrace, ClosedFormError> {
    if m < 2 || m % 2 != 0 {
        return Err(ClosedFormError::OddOrder { m });
    }
    let zero = Ratio::new(0, 1);
    let one = Ratio::new(1, 1);
    let half = Ratio::new(1, 2);

    // y_i = x_i - c/2 satisfies y_{i+1} = -y_{i-1}; free coordinates
    // y_1 = a, y_2 = b.
    let mut y: Vec<Form> = Vec::with_capacity(m);
    y.push(Form { a: one, b: zero, c: zero });
    y.push(Form { a: zero, b: one, c: zero });
    for i in 2..m {
        let prev = y[i - 2];
        y.push(prev.neg());
    }

    // boundary conditions from the first and last coordinate equations:
    // y_2 = c/2 and y_{m-1} = c/2
    let beta = half; // b = c/2
    let y_last = y[m - 2].subst_b(beta);
    if y_last.a == zero {
        return Err(ClosedFormError::Inconsistent(
            "boundary equation does not involve y_1",
        ));
    }
    // y_{m-1} = a*coeff + c*rest = c/2  =>  a = (1/2 - rest)/coeff * c
    let alpha = (half - y_last.c) / y_last.a;

    // sum identity: c = sum x_i = (m/2) c + sum y_i, with every y_i now a
    // multiple of c
    let sum_y = y
        .iter()
        .map(|f| f.subst_b(beta).subst_a(alpha))
        .fold(Form { a: zero, b: zero, c: zero }, Form::add);
    debug_assert!(sum_y.a == zero && sum_y.b == zero);
    let coeff = one - Ratio::new(m as i64, 2) - sum_y.c;
    if coeff == zero {
        return Err(ClosedFormError::Inconsistent(
            "sum identity degenerates, c is unconstrained",
        ));
    }
    // coeff * c = 0 with coeff != 0 forces c = 0; then x_2 = c = 0 and the
    // recurrence x_{i+1} = c - x_{i-1} with x_1 = a + c/2 = 0 collapses the
    // whole kernel vector.
    let kernel_dim = 0;

    // cross-check against elimination
    let elim_nullity = m - graph_rank_exact(&Graph::path(m), GraphMatrix::JMinusA);
    if elim_nullity != kernel_dim {
        return Err(ClosedFormError::Inconsistent(
            "recurrence solution disagrees with the elimination rank",
        ));
    }

    Ok(KernelTrace {
        m,
        c: 0,
        boundary: (alpha, beta),
        kernel_dim,
    })
}
