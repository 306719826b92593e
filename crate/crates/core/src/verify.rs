//! One verdict per bound: checks the inequality, detects equality, and
//! compares the equality case against its structural characterization.
//!
//! All six checks are symmetric in a graph and its complement, so every
//! verdict is invariant under complementation. A verdict with
//! `holds = false` or `characterization_match = false` on a valid input is
//! a counterexample and gets surfaced as a sweep violation.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, Recognition};
use crate::matrix::{complement_rank_pair, MatrixError, RankPair};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("theorem checks require order n >= 1")]
    EmptyGraph,
    #[error("unknown check name {0:?}")]
    UnknownTheorem(String),
    #[error("identity violated for a valid input: {0}")]
    IdentityViolated(String),
}

impl From<MatrixError> for VerifyError {
    fn from(_: MatrixError) -> VerifyError {
        VerifyError::EmptyGraph
    }
}

/// The checks a sweep can run, one per bound or classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    ProductLower,
    SumLower,
    StrongProduct2n,
    StrongProduct3n,
    UpperTrivial,
    RankClass,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::ProductLower,
        TheoremId::SumLower,
        TheoremId::StrongProduct2n,
        TheoremId::StrongProduct3n,
        TheoremId::UpperTrivial,
        TheoremId::RankClass,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::ProductLower => "product-lower",
            TheoremId::SumLower => "sum-lower",
            TheoremId::StrongProduct2n => "strong-2n",
            TheoremId::StrongProduct3n => "strong-3n",
            TheoremId::UpperTrivial => "upper-trivial",
            TheoremId::RankClass => "rank-class",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<TheoremId, VerifyError> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| VerifyError::UnknownTheorem(s.to_string()))
    }
}

/// Direction of the inequality a verdict encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sense {
    Lower,
    Upper,
}

/// Outcome of a single check on a single graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundVerdict {
    pub theorem_id: TheoremId,
    /// Some bounds only apply to graphs outside the families already
    /// covered by a sharper statement; inapplicable verdicts carry
    /// `holds = true` and no equality.
    pub applicable: bool,
    pub bound: u64,
    pub achieved: u64,
    pub holds: bool,
    pub equality: bool,
    /// Whether equality occurred exactly on the characterized family. Left
    /// `true` where the theorem states witnesses rather than a full
    /// characterization.
    pub characterization_match: bool,
    pub detail: String,
}

impl BoundVerdict {
    fn inapplicable(theorem_id: TheoremId, detail: String) -> BoundVerdict {
        BoundVerdict {
            theorem_id,
            applicable: false,
            bound: 0,
            achieved: 0,
            holds: true,
            equality: false,
            characterization_match: true,
            detail,
        }
    }

    fn checked(
        theorem_id: TheoremId,
        sense: Sense,
        bound: u64,
        achieved: u64,
        characterized: Option<bool>,
    ) -> BoundVerdict {
        let holds = match sense {
            Sense::Lower => achieved >= bound,
            Sense::Upper => achieved <= bound,
        };
        let equality = achieved == bound;
        let (characterization_match, detail) = match characterized {
            None => (true, String::new()),
            Some(family) if family == equality => (true, String::new()),
            Some(family) => (
                false,
                format!(
                    "equality is {equality} but the characterized family membership is {family}"
                ),
            ),
        };
        let detail = if holds {
            detail
        } else {
            format!("achieved {achieved} violates bound {bound}")
        };
        BoundVerdict {
            theorem_id,
            applicable: true,
            bound,
            achieved,
            holds,
            equality,
            characterization_match,
            detail,
        }
    }
}

/// Rank class of `A_G + I` per the small-rank classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankClass {
    RankOne,
    RankTwo,
    RankThreePlus,
}

impl fmt::Display for RankClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankClass::RankOne => "rank-1",
            RankClass::RankTwo => "rank-2",
            RankClass::RankThreePlus => "rank-3+",
        })
    }
}

/// Multiplicity bookkeeping behind the sum bound: `m_minus1` is the
/// multiplicity of eigenvalue `-1` of `A_G` (the nullity of `A_G + I`)
/// and `m0_restricted` the multiplicity of eigenvalue `0` of `A_G`
/// restricted to the hyperplane orthogonal to the all-ones vector (the
/// nullity of `J - A_G`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplicityRecord {
    pub n: usize,
    pub m_minus1: usize,
    pub m0_restricted: usize,
}

impl MultiplicityRecord {
    /// `2n - (m_minus1 + m0_restricted)`, which reconstructs the rank sum.
    pub fn reconstructed_rank_sum(&self) -> usize {
        2 * self.n - (self.m_minus1 + self.m0_restricted)
    }

    /// Whether the multiplicities fill the whole hyperplane (`= n - 1`),
    /// the equality case of the sum bound.
    pub fn boundary_equality(&self) -> bool {
        self.m_minus1 + self.m0_restricted == self.n - 1
    }
}

// ---------------------------------------------------------------------------
// Verdict evaluation
// ---------------------------------------------------------------------------

/// Evaluates one check from precomputed data. This is the sweep hot path;
/// the public per-theorem functions below wrap it.
pub fn evaluate(
    theorem_id: TheoremId,
    pair: &RankPair,
    recognition: &Recognition,
) -> BoundVerdict {
    let n = pair.n as u64;
    match theorem_id {
        TheoremId::ProductLower => {
            let complete_side = recognition.is_complete || recognition.is_empty;
            BoundVerdict::checked(
                theorem_id,
                Sense::Lower,
                n,
                pair.product(),
                Some(complete_side),
            )
        }
        TheoremId::SumLower => {
            let complete_side = recognition.is_complete || recognition.is_empty;
            BoundVerdict::checked(theorem_id, Sense::Lower, n + 1, pair.sum(), Some(complete_side))
        }
        TheoremId::StrongProduct2n => {
            if recognition.is_complete || recognition.is_empty {
                return BoundVerdict::inapplicable(
                    theorem_id,
                    "graph is complete or empty".into(),
                );
            }
            let bipartite_side = recognition.complete_bipartite_parts.is_some()
                || recognition.union_of_two_cliques.is_some();
            BoundVerdict::checked(
                theorem_id,
                Sense::Lower,
                2 * n,
                pair.product(),
                Some(bipartite_side),
            )
        }
        TheoremId::StrongProduct3n => {
            if recognition.is_complete
                || recognition.is_empty
                || recognition.complete_bipartite_parts.is_some()
                || recognition.union_of_two_cliques.is_some()
            {
                return BoundVerdict::inapplicable(
                    theorem_id,
                    "graph or complement is complete, empty, or complete bipartite".into(),
                );
            }
            // equality witnesses exist but no characterization is claimed,
            // so the equality set is recorded, not matched
            BoundVerdict::checked(theorem_id, Sense::Lower, 3 * (n - 1), pair.product(), None)
        }
        TheoremId::UpperTrivial => {
            // product = n^2, sum = 2n, and "both ranks = n" are equivalent,
            // so a single equality flag covers both inequalities
            let full = pair.f_g == pair.n && pair.f_gbar == pair.n;
            let mut v = BoundVerdict::checked(
                theorem_id,
                Sense::Upper,
                n * n,
                pair.product(),
                Some(full),
            );
            if pair.sum() > 2 * n {
                v.holds = false;
                v.detail = format!("rank sum {} exceeds 2n = {}", pair.sum(), 2 * n);
            }
            v
        }
        TheoremId::RankClass => {
            let class = rank_class_of(pair.f_g);
            let expected = match class {
                RankClass::RankOne => recognition.is_complete,
                RankClass::RankTwo => recognition.union_of_two_cliques.is_some(),
                RankClass::RankThreePlus => {
                    !recognition.is_complete && recognition.union_of_two_cliques.is_none()
                }
            };
            BoundVerdict {
                theorem_id,
                applicable: true,
                bound: pair.f_g as u64,
                achieved: pair.f_g as u64,
                holds: true,
                equality: false,
                characterization_match: expected,
                detail: if expected {
                    String::new()
                } else {
                    format!("rank class {class} disagrees with the structure")
                },
            }
        }
    }
}

fn rank_class_of(f_g: usize) -> RankClass {
    match f_g {
        1 => RankClass::RankOne,
        2 => RankClass::RankTwo,
        _ => RankClass::RankThreePlus,
    }
}

fn context(g: &Graph) -> Result<(RankPair, Recognition), VerifyError> {
    if g.n() == 0 {
        return Err(VerifyError::EmptyGraph);
    }
    Ok((complement_rank_pair(g)?, g.recognize()))
}

/// Product lower bound: `f(G) * f(Gbar) >= n`, equality iff `G` or its
/// complement is complete.
pub fn verify_product_lower(g: &Graph) -> Result<BoundVerdict, VerifyError> {
    let (pair, recognition) = context(g)?;
    Ok(evaluate(TheoremId::ProductLower, &pair, &recognition))
}

/// Sum lower bound: `f(G) + f(Gbar) >= n + 1`, equality iff `G` or its
/// complement is complete.
pub fn verify_sum_lower(g: &Graph) -> Result<BoundVerdict, VerifyError> {
    let (pair, recognition) = context(g)?;
    Ok(evaluate(TheoremId::SumLower, &pair, &recognition))
}

/// Strengthened product bound `>= 2n` for graphs that are neither complete
/// nor empty; equality iff `G` or its complement is complete bipartite.
pub fn verify_strong_product_2n(g: &Graph) -> Result<BoundVerdict, VerifyError> {
    let (pair, recognition) = context(g)?;
    Ok(evaluate(TheoremId::StrongProduct2n, &pair, &recognition))
}

/// Strengthened product bound `>= 3(n-1)` once complete bipartite graphs
/// and their complements are also excluded. Equality is recorded but not
/// matched against a characterization.
pub fn verify_strong_product_3n(g: &Graph) -> Result<BoundVerdict, VerifyError> {
    let (pair, recognition) = context(g)?;
    Ok(evaluate(TheoremId::StrongProduct3n, &pair, &recognition))
}

/// Trivial upper bounds `product <= n^2` and `sum <= 2n`, with equality in
/// either exactly when both ranks equal `n`.
pub fn verify_upper_trivial(g: &Graph) -> Result<BoundVerdict, VerifyError> {
    let (pair, recognition) = context(g)?;
    Ok(evaluate(TheoremId::UpperTrivial, &pair, &recognition))
}

/// Classifies `rank(A_G + I)` into 1 / 2 / >= 3 and cross-checks the
/// structural characterization (rank 1 iff complete; rank 2 iff the
/// complement is complete bipartite).
pub fn classify_small_rank(g: &Graph) -> Result<(RankClass, BoundVerdict), VerifyError> {
    let (pair, recognition) = context(g)?;
    let verdict = evaluate(TheoremId::RankClass, &pair, &recognition);
    Ok((rank_class_of(pair.f_g), verdict))
}

/// Runs every check on one graph.
pub fn all_verdicts(g: &Graph) -> Result<Vec<BoundVerdict>, VerifyError> {
    let (pair, recognition) = context(g)?;
    Ok(TheoremId::ALL
        .into_iter()
        .map(|t| evaluate(t, &pair, &recognition))
        .collect())
}

/// Computes the multiplicity record from exact nullities and verifies the
/// identities behind the sum bound: the record reconstructs the rank sum,
/// the multiplicities fit inside the hyperplane (`<= n - 1`), and they fill
/// it exactly when the graph or its complement is complete.
pub fn multiplicity_identities(g: &Graph) -> Result<MultiplicityRecord, VerifyError> {
    let (pair, recognition) = context(g)?;
    let record = MultiplicityRecord {
        n: pair.n,
        m_minus1: pair.n - pair.f_g,
        m0_restricted: pair.n - pair.f_gbar,
    };
    if record.reconstructed_rank_sum() as u64 != pair.sum() {
        return Err(VerifyError::IdentityViolated(format!(
            "2n - multiplicity sum = {} but the rank sum is {}",
            record.reconstructed_rank_sum(),
            pair.sum()
        )));
    }
    if record.m_minus1 + record.m0_restricted > record.n - 1 {
        return Err(VerifyError::IdentityViolated(format!(
            "multiplicity sum {} exceeds the hyperplane dimension {}",
            record.m_minus1 + record.m0_restricted,
            record.n - 1
        )));
    }
    let complete_side = recognition.is_complete || recognition.is_empty;
    if record.boundary_equality() != complete_side {
        return Err(VerifyError::IdentityViolated(format!(
            "multiplicities fill the hyperplane: {}, complete/empty: {}",
            record.boundary_equality(),
            complete_side
        )));
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;

    fn union(specs: impl IntoIterator<Item = FamilySpec>) -> Graph {
        FamilySpec::union(specs).unwrap().build().unwrap()
    }

    #[test]
    fn product_lower_examples() {
        let v = verify_product_lower(&Graph::complete(4)).unwrap();
        assert!(v.holds && v.equality && v.characterization_match);
        assert_eq!((v.bound, v.achieved), (4, 4));

        let v = verify_product_lower(&Graph::empty(5)).unwrap();
        assert!(v.equality && v.characterization_match);
        assert_eq!(v.achieved, 5);

        let v = verify_product_lower(&Graph::path(4)).unwrap();
        assert!(v.holds && !v.equality && v.characterization_match);
        assert_eq!(v.achieved, 16);
    }

    #[test]
    fn sum_lower_examples() {
        let v = verify_sum_lower(&Graph::complete(5)).unwrap();
        assert!(v.equality && v.characterization_match);
        assert_eq!((v.bound, v.achieved), (6, 6));

        let v = verify_sum_lower(&Graph::complete_bipartite(2, 2).unwrap()).unwrap();
        assert!(v.holds && !v.equality);
        assert_eq!(v.achieved, 6);

        let v = verify_sum_lower(&Graph::path(4)).unwrap();
        assert_eq!(v.achieved, 8);
        assert!(!v.equality);
    }

    #[test]
    fn strong_2n_examples() {
        let v = verify_strong_product_2n(&Graph::complete_bipartite(2, 3).unwrap()).unwrap();
        assert!(v.applicable && v.equality && v.characterization_match);
        assert_eq!((v.bound, v.achieved), (10, 10));

        // K_2 u K_2 reaches equality through its complement K_{2,2}
        let v = verify_strong_product_2n(&union([FamilySpec::Complete(2), FamilySpec::Complete(2)]))
            .unwrap();
        assert!(v.equality && v.characterization_match);
        assert_eq!(v.achieved, 8);

        let v = verify_strong_product_2n(&Graph::path(4)).unwrap();
        assert!(v.applicable && v.holds && !v.equality);
        assert_eq!(v.achieved, 16);

        let v = verify_strong_product_2n(&Graph::complete(6)).unwrap();
        assert!(!v.applicable && v.holds);
    }

    #[test]
    fn strong_3n_examples() {
        // K_2 u 2K_1 at n = 4: ranks (3, 3), product 9 = 3(n-1)
        let v = verify_strong_product_3n(&union([FamilySpec::Complete(2), FamilySpec::Empty(2)]))
            .unwrap();
        assert!(v.applicable && v.holds && v.equality && v.characterization_match);
        assert_eq!((v.bound, v.achieved), (9, 9));

        // K_3 u 2K_1 at n = 5: ranks (3, 4), product 12 = 3(n-1)
        let v = verify_strong_product_3n(&union([FamilySpec::Complete(3), FamilySpec::Empty(2)]))
            .unwrap();
        assert!(v.applicable && v.equality);
        assert_eq!(v.achieved, 12);

        // P_5 has ranks (4, 5): applicable, strictly above 12
        let v = verify_strong_product_3n(&Graph::path(5)).unwrap();
        assert!(v.applicable && v.holds && !v.equality);
        assert_eq!((v.bound, v.achieved), (12, 20));

        let v = verify_strong_product_3n(&Graph::complete_bipartite(1, 3).unwrap()).unwrap();
        assert!(!v.applicable);
    }

    #[test]
    fn upper_trivial_examples() {
        let v = verify_upper_trivial(&Graph::path(4)).unwrap();
        assert!(v.holds && v.equality && v.characterization_match);
        assert_eq!((v.bound, v.achieved), (16, 16));

        let v = verify_upper_trivial(&Graph::complete(4)).unwrap();
        assert!(v.holds && !v.equality && v.characterization_match);
        assert_eq!(v.achieved, 4);

        let v = verify_upper_trivial(&Graph::complete_bipartite(2, 2).unwrap()).unwrap();
        assert!(v.holds && !v.equality);
        assert_eq!(v.achieved, 8);
    }

    #[test]
    fn classify_examples() {
        let (class, verdict) = classify_small_rank(&Graph::complete(6)).unwrap();
        assert_eq!(class, RankClass::RankOne);
        assert!(verdict.characterization_match);

        // K_3 u K_1 is the complement of K_{1,3}
        let (class, verdict) =
            classify_small_rank(&union([FamilySpec::Complete(3), FamilySpec::Complete(1)]))
                .unwrap();
        assert_eq!(class, RankClass::RankTwo);
        assert!(verdict.characterization_match);

        let (class, verdict) = classify_small_rank(&Graph::path(4)).unwrap();
        assert_eq!(class, RankClass::RankThreePlus);
        assert!(verdict.characterization_match);
    }

    #[test]
    fn multiplicity_examples() {
        let r = multiplicity_identities(&Graph::complete(4)).unwrap();
        assert_eq!((r.m_minus1, r.m0_restricted), (3, 0));
        assert!(r.boundary_equality());

        let r = multiplicity_identities(&Graph::empty(4)).unwrap();
        assert_eq!((r.m_minus1, r.m0_restricted), (0, 3));
        assert!(r.boundary_equality());

        let r = multiplicity_identities(&Graph::path(4)).unwrap();
        assert_eq!((r.m_minus1, r.m0_restricted), (0, 0));
        assert!(!r.boundary_equality());
        assert_eq!(r.reconstructed_rank_sum(), 8);
    }

    #[test]
    fn verdicts_are_complement_symmetric() {
        let graphs = [
            Graph::path(6),
            Graph::complete_bipartite(2, 3).unwrap(),
            union([FamilySpec::Complete(3), FamilySpec::Empty(2)]),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
                .unwrap(),
        ];
        for g in &graphs {
            let here = all_verdicts(g).unwrap();
            let there = all_verdicts(&g.complement()).unwrap();
            for (a, b) in here.iter().zip(&there) {
                assert_eq!(a.applicable, b.applicable, "{:?}", a.theorem_id);
                assert_eq!(a.holds, b.holds);
                assert_eq!(a.equality, b.equality);
                assert_eq!(a.characterization_match, b.characterization_match);
                if a.theorem_id != TheoremId::RankClass {
                    // rank-class achieved is f_g, which swaps under complement
                    assert_eq!(a.achieved, b.achieved);
                }
            }
        }
    }

    #[test]
    fn applicability_partition_small_orders() {
        // each graph is covered by exactly one of: product-lower equality
        // family (complete/empty), strong-2n applicability, or n <= 1
        for n in 1..=5usize {
            let bits = n * (n - 1) / 2;
            for mask in 0u64..1 << bits {
                let g = crate::sweep::graph_from_edge_mask(n, mask);
                let r = g.recognize();
                let complete_side = r.is_complete || r.is_empty;
                let strong_applicable = !complete_side;
                let covered = [complete_side, strong_applicable, n <= 1];
                if n > 1 {
                    assert_eq!(covered.iter().filter(|&&c| c).count(), 1);
                }
            }
        }
    }

    #[test]
    fn n_zero_is_rejected() {
        assert!(matches!(
            verify_product_lower(&Graph::empty(0)),
            Err(VerifyError::EmptyGraph)
        ));
        assert!(multiplicity_identities(&Graph::empty(0)).is_err());
    }

    #[test]
    fn theorem_id_round_trips_through_names() {
        for t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
        }
        assert!("no-such-check".parse::<TheoremId>().is_err());
    }
}
