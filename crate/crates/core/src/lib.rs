//! Exact complement-rank toolkit.
//!
//! The complement rank of a graph `G` is `rank(A_G + I)` over the reals.
//! This crate computes it exactly (fraction-free integer elimination with a
//! modular fast path), checks the product/sum lower and upper bounds
//! relating a graph and its complement together with their equality
//! characterizations, builds certified full-rank graphs for every order
//! `n >= 4`, and sweeps exhaustive or file-based graph6 corpora looking for
//! counterexamples that should never exist.

pub mod closed_forms;
pub mod construct;
pub mod graph;
pub mod graph6;
pub mod matrix;
pub mod prime;
pub mod sweep;
pub mod verify;

pub use closed_forms::{
    complete_bipartite_rank_pair, kernel_of_j_minus_path, path_complement_rank, path_spectrum,
    ClosedFormError, KernelTrace, PathSpectrum,
};
pub use construct::{
    build_fullrank, tightness_witness, CertClaim, Certificate, ConstructError, ConstructionRecipe,
};
pub use graph::{FamilySpec, Graph, GraphError, Recognition};
pub use graph6::{emit_graph6, parse_graph6, Graph6Error};
pub use matrix::{
    a_plus_i, adjacency_matrix, complement_rank_pair, complement_rank_pair_mod_p, j_minus_a,
    rank_exact, rank_mod_p, IntMatrix, MatrixError, RankPair,
};
pub use sweep::{
    enumerate_labeled, graph_from_edge_mask, sweep, write_report, EnumOptions, ReportFormat,
    SweepError, SweepMode, SweepOptions, SweepReport, SweepSource, Violation,
};
pub use verify::{
    all_verdicts, classify_small_rank, multiplicity_identities, verify_product_lower,
    verify_strong_product_2n, verify_strong_product_3n, verify_sum_lower, verify_upper_trivial,
    BoundVerdict, MultiplicityRecord, RankClass, TheoremId, VerifyError,
};
