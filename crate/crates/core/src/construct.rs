//! Explicit extremal graphs with machine-checked certificates.
//!
//! [`build_fullrank`] assembles, for every order `n >= 4`, a graph whose
//! `A + I` and `J - A` are both nonsingular, following a case table on
//! `n mod 6` built from paths of order not congruent to 2 mod 3 (so each
//! path block contributes full rank) and at most one isolated vertex.
//! [`tightness_witness`] returns the named equality witnesses for the
//! lower bounds. Every returned certificate has been re-verified by exact
//! elimination; a mismatch aborts construction since it could only mean an
//! implementation bug.

use std::fmt;

use thiserror::Error;

use crate::graph::{FamilySpec, Graph};
use crate::matrix::{complement_rank_pair, RankPair};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("full-rank constructions start at order 4, got {n}")]
    OrderTooSmall { n: usize },
    #[error("claim {claim} needs order >= {min}, got {n}")]
    ClaimOrderMismatch {
        claim: CertClaim,
        min: usize,
        n: usize,
    },
    #[error("certificate failed for {recipe}: claim {claim}, ranks ({f_g}, {f_gbar}); this indicates an implementation bug")]
    CertificateFailed {
        recipe: String,
        claim: CertClaim,
        f_g: usize,
        f_gbar: usize,
    },
}

/// How an extremal graph is assembled: disjoint components by family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionRecipe {
    pub n: usize,
    /// `n mod 6`, which selects the component list.
    pub case_id: u8,
    pub components: Vec<FamilySpec>,
}

impl ConstructionRecipe {
    fn build(&self) -> Graph {
        debug_assert_eq!(
            self.components.iter().map(|c| c.order()).sum::<usize>(),
            self.n
        );
        FamilySpec::union(self.components.iter().cloned())
            .expect("recipes are nonempty")
            .build()
            .expect("recipe components are valid")
    }
}

impl fmt::Display for ConstructionRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// What a certificate asserts about its graph's rank pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertClaim {
    /// Both ranks equal `n` (tightness of the upper bounds).
    FullRankBoth,
    /// Product equals `2n` (tightness of the strengthened product bound).
    ProductEquals2n,
    /// Product equals `3(n - 1)` (tightness of the second strengthening).
    ProductEquals3nMinus3,
    /// Sum equals `n + 1` (tightness of the sum bound).
    SumEqualsNPlus1,
}

impl CertClaim {
    pub fn as_str(self) -> &'static str {
        match self {
            CertClaim::FullRankBoth => "full-rank-both",
            CertClaim::ProductEquals2n => "product-2n",
            CertClaim::ProductEquals3nMinus3 => "product-3n-minus-3",
            CertClaim::SumEqualsNPlus1 => "sum-n-plus-1",
        }
    }

    fn satisfied_by(self, pair: &RankPair) -> bool {
        let n = pair.n as u64;
        match self {
            CertClaim::FullRankBoth => pair.f_g == pair.n && pair.f_gbar == pair.n,
            CertClaim::ProductEquals2n => pair.product() == 2 * n,
            CertClaim::ProductEquals3nMinus3 => pair.product() == 3 * (n - 1),
            CertClaim::SumEqualsNPlus1 => pair.sum() == n + 1,
        }
    }
}

impl fmt::Display for CertClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A recipe together with its elimination-checked rank pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub recipe: ConstructionRecipe,
    pub rank_pair: RankPair,
    pub claim: CertClaim,
    pub verified: bool,
}

fn certify(recipe: ConstructionRecipe, claim: CertClaim) -> Result<(Graph, Certificate), ConstructError> {
    let graph = recipe.build();
    let rank_pair = complement_rank_pair(&graph).expect("recipes have positive order");
    if !claim.satisfied_by(&rank_pair) {
        return Err(ConstructError::CertificateFailed {
            recipe: recipe.to_string(),
            claim,
            f_g: rank_pair.f_g,
            f_gbar: rank_pair.f_gbar,
        });
    }
    Ok((
        graph,
        Certificate {
            recipe,
            rank_pair,
            claim,
            verified: true,
        },
    ))
}

/// Builds the order-`n` graph with both ranks equal to `n`, `n >= 4`.
pub fn build_fullrank(n: usize) -> Result<(Graph, Certificate), ConstructError> {
    if n < 4 {
        return Err(ConstructError::OrderTooSmall { n });
    }
    let case_id = (n % 6) as u8;
    let components = match case_id {
        0 | 4 => vec![FamilySpec::Path(n)],
        1 | 5 => vec![FamilySpec::Path(n - 1), FamilySpec::Complete(1)],
        2 => vec![FamilySpec::Path(4), FamilySpec::Path(n - 4)],
        3 => vec![
            FamilySpec::Path(4),
            FamilySpec::Path(n - 5),
            FamilySpec::Complete(1),
        ],
        _ => unreachable!(),
    };
    certify(
        ConstructionRecipe { n, case_id, components },
        CertClaim::FullRankBoth,
    )
}

/// Returns the named witness achieving equality for `claim` at order `n`,
/// with a verified certificate.
pub fn tightness_witness(
    claim: CertClaim,
    n: usize,
) -> Result<(Graph, Certificate), ConstructError> {
    let components = match claim {
        CertClaim::FullRankBoth => return build_fullrank(n),
        CertClaim::SumEqualsNPlus1 => {
            if n < 1 {
                return Err(ConstructError::ClaimOrderMismatch { claim, min: 1, n });
            }
            vec![FamilySpec::Complete(n)]
        }
        CertClaim::ProductEquals2n => {
            // K_{a, n-a} with a = floor(n/2); n >= 3 keeps a(n-a) >= 2
            if n < 3 {
                return Err(ConstructError::ClaimOrderMismatch { claim, min: 3, n });
            }
            vec![FamilySpec::CompleteBipartite(n / 2, n - n / 2)]
        }
        CertClaim::ProductEquals3nMinus3 => {
            if n < 4 {
                return Err(ConstructError::ClaimOrderMismatch { claim, min: 4, n });
            }
            vec![FamilySpec::Complete(2), FamilySpec::Empty(n - 2)]
        }
    };
    certify(
        ConstructionRecipe {
            n,
            case_id: (n % 6) as u8,
            components,
        },
        claim,
    )
}
