//! Exact rank of integer matrices.
//!
//! The rank routine is fraction-free (Bareiss) elimination: every division
//! is exact, so ranks over the rationals come out of pure integer
//! arithmetic. Working entries are minors of the input matrix; for the 0/1
//! matrices produced from graphs they stay below the Hadamard bound
//! `n^(n/2)`, which fits in an `i64` up to roughly `n = 26`. The elimination
//! therefore runs on `i64` with overflow checks and transparently restarts
//! on arbitrary-precision integers when a product would overflow.
//!
//! A modular path (`rank_mod_p`) gives a cheap lower bound for sweep
//! workloads: reduction mod a prime can only collapse minors to zero, never
//! create new nonzero ones.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::Graph;
use crate::prime::{inv_mod, is_prime_u64, mul_mod};

/// Default cap on dense matrix dimension (memory guard).
pub const DEFAULT_DIM_CAP: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix dimension {n} exceeds the cap {cap} (dense storage)")]
    DimensionExceedsCap { n: usize, cap: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("rank pair is undefined for the order-0 graph")]
    EmptyGraph,
}

/// Dense square matrix with arbitrary-precision integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Result<IntMatrix, MatrixError> {
        IntMatrix::zeros_with_cap(n, DEFAULT_DIM_CAP)
    }

    pub fn zeros_with_cap(n: usize, cap: usize) -> Result<IntMatrix, MatrixError> {
        if n > cap {
            return Err(MatrixError::DimensionExceedsCap { n, cap });
        }
        Ok(IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        })
    }

    pub fn identity(n: usize) -> Result<IntMatrix, MatrixError> {
        let mut m = IntMatrix::zeros(n)?;
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        Ok(m)
    }

    pub fn all_ones(n: usize) -> Result<IntMatrix, MatrixError> {
        let mut m = IntMatrix::zeros(n)?;
        m.entries.fill(BigInt::one());
        Ok(m)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Result<IntMatrix, MatrixError> {
        let mut m = IntMatrix::zeros(n)?;
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.n + j] = value;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .collect();
        Ok(IntMatrix { n: self.n, entries })
    }

    /// Ordinary matrix product.
    pub fn matmul(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        IntMatrix::from_fn(n, |i, j| (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum())
    }

    fn to_i64(&self) -> Option<Vec<i64>> {
        self.entries.iter().map(|e| e.to_i64()).collect()
    }
}

/// The 0/1 adjacency matrix of `g` (zero diagonal, symmetric).
pub fn adjacency_matrix(g: &Graph) -> Result<IntMatrix, MatrixError> {
    IntMatrix::from_fn(g.n(), |i, j| {
        if i != j && g.has_edge(i, j) {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

/// `A_G + I`.
pub fn a_plus_i(g: &Graph) -> Result<IntMatrix, MatrixError> {
    IntMatrix::from_fn(g.n(), |i, j| {
        if i == j || g.has_edge(i, j) {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

/// `J - A_G`, which equals `A_H + I` for `H` the complement of `g`.
pub fn j_minus_a(g: &Graph) -> Result<IntMatrix, MatrixError> {
    IntMatrix::from_fn(g.n(), |i, j| {
        if i == j || !g.has_edge(i, j) {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

// ---------------------------------------------------------------------------
// Fraction-free elimination
// ---------------------------------------------------------------------------

trait Scalar: Clone {
    fn unit() -> Self;
    fn entry_is_zero(&self) -> bool;
    /// `(pivot * a - lead * b) / div`; `None` signals overflow. The division
    /// is exact by the Sylvester determinant identity.
    fn step(pivot: &Self, a: &Self, lead: &Self, b: &Self, div: &Self) -> Option<Self>;
}

impl Scalar for i64 {
    fn unit() -> i64 {
        1
    }

    fn entry_is_zero(&self) -> bool {
        *self == 0
    }

    #[inline]
    fn step(pivot: &i64, a: &i64, lead: &i64, b: &i64, div: &i64) -> Option<i64> {
        let num = pivot.checked_mul(*a)?.checked_sub(lead.checked_mul(*b)?)?;
        debug_assert_eq!(num % div, 0, "fraction-free division must be exact");
        Some(num / div)
    }
}

impl Scalar for BigInt {
    fn unit() -> BigInt {
        One::one()
    }

    fn entry_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn step(pivot: &BigInt, a: &BigInt, lead: &BigInt, b: &BigInt, div: &BigInt) -> Option<BigInt> {
        let num = pivot * a - lead * b;
        debug_assert!((&num % div).is_zero(), "fraction-free division must be exact");
        Some(num / div)
    }
}

/// Row-echelon reduction of a flat row-major `n x n` buffer. Pivoting is
/// first-nonzero-in-column with row swaps only; columns with no pivot are
/// skipped. Returns the pivot count, or `None` if a product overflowed.
fn bareiss_rank<T: Scalar>(data: &mut [T], n: usize) -> Option<usize> {
    let mut rank = 0;
    let mut prev_pivot = T::unit();
    for col in 0..n {
        let Some(pivot_row) = (rank..n).find(|&r| !data[r * n + col].entry_is_zero()) else {
            continue;
        };
        if pivot_row != rank {
            for j in col..n {
                data.swap(pivot_row * n + j, rank * n + j);
            }
        }
        let pivot = data[rank * n + col].clone();
        for r in rank + 1..n {
            let lead = data[r * n + col].clone();
            // every remaining entry must be updated, even in rows whose
            // leading entry is already zero, to keep entries equal to minors
            for j in col + 1..n {
                data[r * n + j] = T::step(
                    &pivot,
                    &data[r * n + j],
                    &lead,
                    &data[rank * n + j],
                    &prev_pivot,
                )?;
            }
        }
        prev_pivot = pivot;
        rank += 1;
        if rank == n {
            break;
        }
    }
    Some(rank)
}

/// Exact rank over the rationals.
pub fn rank_exact(m: &IntMatrix) -> usize {
    if let Some(mut small) = m.to_i64() {
        if let Some(rank) = bareiss_rank(&mut small, m.n) {
            return rank;
        }
    }
    let mut big = m.entries.clone();
    bareiss_rank(&mut big, m.n).expect("BigInt elimination cannot overflow")
}

/// Rank of `m` reduced mod the prime `p`. Always `<=` the exact rank.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize, MatrixError> {
    if !is_prime_u64(p) {
        return Err(MatrixError::NotPrime { p });
    }
    let pb = BigInt::from(p);
    let mut data: Vec<u64> = m
        .entries
        .iter()
        .map(|e| {
            let mut r = e % &pb;
            if r.is_negative() {
                r += &pb;
            }
            r.to_u64().expect("residue fits u64")
        })
        .collect();
    Ok(gauss_rank_mod_p(&mut data, m.n, p))
}

fn gauss_rank_mod_p(data: &mut [u64], n: usize, p: u64) -> usize {
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot_row) = (rank..n).find(|&r| data[r * n + col] % p != 0) else {
            continue;
        };
        if pivot_row != rank {
            for j in col..n {
                data.swap(pivot_row * n + j, rank * n + j);
            }
        }
        let pivot_inv = inv_mod(data[rank * n + col], p);
        for r in rank + 1..n {
            let lead = data[r * n + col];
            if lead == 0 {
                continue;
            }
            let factor = mul_mod(lead, pivot_inv, p);
            data[r * n + col] = 0;
            for j in col + 1..n {
                let sub = mul_mod(factor, data[rank * n + j], p);
                data[r * n + j] = (data[r * n + j] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

// ---------------------------------------------------------------------------
// Rank pairs
// ---------------------------------------------------------------------------

/// The pair `(rank(A_G + I), rank(A_Gbar + I))` for a graph of order `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RankPair {
    pub n: usize,
    pub f_g: usize,
    pub f_gbar: usize,
}

impl RankPair {
    pub fn product(&self) -> u64 {
        self.f_g as u64 * self.f_gbar as u64
    }

    pub fn sum(&self) -> u64 {
        (self.f_g + self.f_gbar) as u64
    }
}

#[derive(Clone, Copy)]
pub(crate) enum GraphMatrix {
    APlusI,
    JMinusA,
}

fn graph_entries_i64(g: &Graph, kind: GraphMatrix) -> Vec<i64> {
    let n = g.n();
    let mut data = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            let bit = i == j || g.has_edge(i, j);
            data[i * n + j] = match kind {
                GraphMatrix::APlusI => bit as i64,
                GraphMatrix::JMinusA => {
                    if i == j {
                        1
                    } else {
                        !g.has_edge(i, j) as i64
                    }
                }
            };
        }
    }
    data
}

/// Exact rank of `A_G + I` or `J - A_G`, straight from the bit rows.
pub(crate) fn graph_rank_exact(g: &Graph, kind: GraphMatrix) -> usize {
    let n = g.n();
    let mut data = graph_entries_i64(g, kind);
    if let Some(rank) = bareiss_rank(&mut data, n) {
        return rank;
    }
    let mut big: Vec<BigInt> = graph_entries_i64(g, kind)
        .into_iter()
        .map(BigInt::from)
        .collect();
    bareiss_rank(&mut big, n).expect("BigInt elimination cannot overflow")
}

pub(crate) fn graph_rank_mod_p(g: &Graph, kind: GraphMatrix, p: u64) -> usize {
    let n = g.n();
    let mut data: Vec<u64> = graph_entries_i64(g, kind)
        .into_iter()
        .map(|e| e as u64 % p)
        .collect();
    gauss_rank_mod_p(&mut data, n, p)
}

/// Both exact ranks of the pair `(A_G + I, J - A_G)`.
pub fn complement_rank_pair(g: &Graph) -> Result<RankPair, MatrixError> {
    if g.n() == 0 {
        return Err(MatrixError::EmptyGraph);
    }
    Ok(RankPair {
        n: g.n(),
        f_g: graph_rank_exact(g, GraphMatrix::APlusI),
        f_gbar: graph_rank_exact(g, GraphMatrix::JMinusA),
    })
}

/// Modular lower bound on the rank pair (both ranks reduced mod `p`).
pub fn complement_rank_pair_mod_p(g: &Graph, p: u64) -> Result<RankPair, MatrixError> {
    if g.n() == 0 {
        return Err(MatrixError::EmptyGraph);
    }
    if !is_prime_u64(p) {
        return Err(MatrixError::NotPrime { p });
    }
    Ok(RankPair {
        n: g.n(),
        f_g: graph_rank_mod_p(g, GraphMatrix::APlusI, p),
        f_gbar: graph_rank_mod_p(g, GraphMatrix::JMinusA, p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        let n = rows.len();
        IntMatrix::from_fn(n, |i, j| BigInt::from(rows[i][j])).unwrap()
    }

    /// Independent oracle: the rank is the largest k with a nonsingular
    /// k x k minor, determinants by cofactor expansion.
    fn minor_rank_oracle(m: &IntMatrix) -> usize {
        fn det(rows: &[usize], cols: &[usize], m: &IntMatrix) -> BigInt {
            if rows.is_empty() {
                return BigInt::one();
            }
            let mut acc = BigInt::zero();
            let sub_rows = &rows[1..];
            for (idx, &c) in cols.iter().enumerate() {
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let cofactor = det(sub_rows, &sub_cols, m);
                let term = m.get(rows[0], c) * cofactor;
                if idx % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 0..n {
                for mut rest in subsets(n, k - 1) {
                    if rest.iter().all(|&x| x > first) {
                        rest.insert(0, first);
                        out.push(rest);
                    }
                }
            }
            out
        }
        for k in (1..=m.n()).rev() {
            for rows in subsets(m.n(), k) {
                for cols in subsets(m.n(), k) {
                    if !det(&rows, &cols, m).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_exact(&IntMatrix::identity(5).unwrap()), 5);
        assert_eq!(rank_exact(&IntMatrix::all_ones(4).unwrap()), 1);
        assert_eq!(rank_exact(&a_plus_i(&Graph::path(3)).unwrap()), 3);
        assert_eq!(rank_exact(&IntMatrix::zeros(3).unwrap()), 0);
    }

    #[test]
    fn builders_match_definitions() {
        let z = adjacency_matrix(&Graph::empty(3)).unwrap();
        assert_eq!(z, IntMatrix::zeros(3).unwrap());

        let k2 = adjacency_matrix(&Graph::complete(2)).unwrap();
        assert_eq!(k2, mat(&[&[0, 1], &[1, 0]]));

        let p3 = a_plus_i(&Graph::path(3)).unwrap();
        assert_eq!(p3, mat(&[&[1, 1, 0], &[1, 1, 1], &[0, 1, 1]]));

        assert_eq!(a_plus_i(&Graph::complete(3)).unwrap(), IntMatrix::all_ones(3).unwrap());
        assert_eq!(j_minus_a(&Graph::complete(3)).unwrap(), IntMatrix::identity(3).unwrap());

        // J - A_G = A_Gbar + I entrywise
        let g = Graph::from_edges(5, &[(0, 2), (1, 4), (3, 4), (2, 3)]).unwrap();
        assert_eq!(j_minus_a(&g).unwrap(), a_plus_i(&g.complement()).unwrap());
    }

    #[test]
    fn bareiss_agrees_with_minor_oracle() {
        let cases = [
            mat(&[&[1, 2], &[2, 4]]),
            mat(&[&[0, 0], &[0, 0]]),
            mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]),
            mat(&[&[2, 0, 1], &[0, 0, 0], &[4, 0, 2]]),
            mat(&[&[1, 1, 0, 0], &[1, 1, 1, 0], &[0, 1, 1, 1], &[0, 0, 1, 1]]),
            mat(&[&[3, -1, 2, 5], &[0, 0, 0, 0], &[6, -2, 4, 10], &[1, 1, 1, 1]]),
        ];
        for m in &cases {
            assert_eq!(rank_exact(m), minor_rank_oracle(m), "matrix {m:?}");
        }
    }

    #[test]
    fn bareiss_exhaustive_3x3_zero_one() {
        // all 512 0/1 matrices of order 3 against the minor oracle
        for mask in 0..512u32 {
            let m = IntMatrix::from_fn(3, |i, j| BigInt::from(mask >> (3 * i + j) & 1)).unwrap();
            assert_eq!(rank_exact(&m), minor_rank_oracle(&m), "mask {mask}");
        }
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = 1i64 << 62;
        let m = mat(&[&[big, 1], &[1, big]]);
        assert_eq!(rank_exact(&m), 2);

        let huge = BigInt::from_u8(2).unwrap().pow(100);
        let m = IntMatrix::from_fn(2, |i, j| if i == j { huge.clone() } else { BigInt::one() }).unwrap();
        assert_eq!(rank_exact(&m), 2);
        let m = IntMatrix::from_fn(2, |_, _| huge.clone()).unwrap();
        assert_eq!(rank_exact(&m), 1);
    }

    #[test]
    fn mod_p_examples() {
        assert_eq!(rank_mod_p(&IntMatrix::identity(4).unwrap(), 7).unwrap(), 4);
        assert_eq!(rank_mod_p(&IntMatrix::all_ones(4).unwrap(), 5).unwrap(), 1);
        // [[2]] mod 2 -> 0, strictly below the exact rank 1
        let two = IntMatrix::from_fn(1, |_, _| BigInt::from(2)).unwrap();
        assert_eq!(rank_mod_p(&two, 2).unwrap(), 0);
        assert_eq!(rank_exact(&two), 1);
        assert!(matches!(
            rank_mod_p(&two, 6),
            Err(MatrixError::NotPrime { p: 6 })
        ));
    }

    #[test]
    fn negative_entries_reduce_correctly_mod_p() {
        let m = mat(&[&[-3, 0], &[0, 5]]);
        assert_eq!(rank_mod_p(&m, 3).unwrap(), 1);
        assert_eq!(rank_mod_p(&m, 5).unwrap(), 1);
        assert_eq!(rank_mod_p(&m, 7).unwrap(), 2);
    }

    #[test]
    fn hadamard_examples() {
        let g = Graph::path(3);
        let prod = a_plus_i(&g).unwrap().hadamard(&j_minus_a(&g).unwrap()).unwrap();
        assert_eq!(prod, IntMatrix::identity(3).unwrap());

        let m = mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(IntMatrix::all_ones(3).unwrap().hadamard(&m).unwrap(), m);
        assert_eq!(
            IntMatrix::zeros(3).unwrap().hadamard(&m).unwrap(),
            IntMatrix::zeros(3).unwrap()
        );
        assert!(m.hadamard(&IntMatrix::zeros(2).unwrap()).is_err());
    }

    #[test]
    fn rank_pair_examples() {
        let p = complement_rank_pair(&Graph::complete(4)).unwrap();
        assert_eq!((p.f_g, p.f_gbar), (1, 4));
        assert_eq!(p.product(), 4);

        let p = complement_rank_pair(&Graph::complete_bipartite(2, 2).unwrap()).unwrap();
        assert_eq!((p.f_g, p.f_gbar), (4, 2));
        assert_eq!(p.product(), 8);

        let p = complement_rank_pair(&Graph::path(4)).unwrap();
        assert_eq!((p.f_g, p.f_gbar), (4, 4));
        assert_eq!((p.product(), p.sum()), (16, 8));

        assert!(matches!(
            complement_rank_pair(&Graph::empty(0)),
            Err(MatrixError::EmptyGraph)
        ));
    }

    #[test]
    fn rank_pair_swaps_under_complement() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5), (1, 4)]).unwrap();
        let p = complement_rank_pair(&g).unwrap();
        let q = complement_rank_pair(&g.complement()).unwrap();
        assert_eq!((p.f_g, p.f_gbar), (q.f_gbar, q.f_g));
    }

    #[test]
    fn block_additivity_of_ranks() {
        let g1 = Graph::path(4);
        let g2 = Graph::complete(3);
        let union = g1.disjoint_union(&g2);
        let p = complement_rank_pair(&union).unwrap();
        let p1 = complement_rank_pair(&g1).unwrap();
        let p2 = complement_rank_pair(&g2).unwrap();
        assert_eq!(p.f_g, p1.f_g + p2.f_g);
    }

    #[test]
    fn symmetric_rank_self_check() {
        // for symmetric integer M, rank(M) = rank(M * M)
        for g in [Graph::path(6), Graph::complete_bipartite(2, 3).unwrap()] {
            for m in [a_plus_i(&g).unwrap(), j_minus_a(&g).unwrap(), adjacency_matrix(&g).unwrap()] {
                assert!(m.is_symmetric());
                let squared = m.matmul(&m).unwrap();
                assert_eq!(rank_exact(&m), rank_exact(&squared));
            }
        }
    }

    #[test]
    fn modular_pair_matches_exact_on_samples() {
        let p = (1u64 << 61) - 1; // 61-bit Mersenne prime
        assert!(is_prime_u64(p));
        for g in [
            Graph::path(9),
            Graph::complete(7),
            Graph::complete_bipartite(3, 5).unwrap(),
            Graph::from_edges(8, &[(0, 1), (0, 2), (1, 3), (4, 6), (5, 7), (2, 7)]).unwrap(),
        ] {
            let exact = complement_rank_pair(&g).unwrap();
            let modular = complement_rank_pair_mod_p(&g, p).unwrap();
            assert_eq!(exact, modular);
        }
    }

    #[test]
    fn dimension_cap_is_enforced() {
        assert!(matches!(
            IntMatrix::zeros(DEFAULT_DIM_CAP + 1),
            Err(MatrixError::DimensionExceedsCap { .. })
        ));
        assert!(matches!(
            IntMatrix::zeros_with_cap(5, 4),
            Err(MatrixError::DimensionExceedsCap { n: 5, cap: 4 })
        ));
        assert!(IntMatrix::zeros_with_cap(5, 8).is_ok());
    }
}
