//! Exhaustive and file-driven verification sweeps.
//!
//! A sweep runs a set of checks over every graph from a source — all
//! labeled graphs of a given order, or a graph6 file — and aggregates
//! violations (expected to be none), per-check equality inventories, and a
//! rank-pair histogram. Work is partitioned into fixed-size chunks merged
//! in order, so two runs over the same source produce identical reports.
//!
//! In modular mode each graph's rank pair is first computed mod a random
//! 61-bit prime. Modular ranks never exceed the exact ones, so any graph
//! whose modular pair sits on (or below) a bound or equality boundary is
//! re-verified exactly before a verdict is recorded; pairs certified full
//! rank by the modular path are already exact.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::graph::Graph;
use crate::graph6::{emit_graph6, parse_graph6, Graph6Error};
use crate::matrix::{complement_rank_pair, complement_rank_pair_mod_p, RankPair};
use crate::prime::{is_prime_u64, random_prime_61};
use crate::verify::{evaluate, TheoremId};

/// Largest order accepted for exhaustive enumeration.
pub const DEFAULT_ENUM_CAP: usize = 8;

/// Orders at or above this need the explicit long-run opt-in.
const LONG_RUN_THRESHOLD: usize = 8;

const LABELED_CHUNK: u64 = 1 << 16;
const FILE_CHUNK: usize = 4096;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("enumeration order must be >= 1")]
    OrderZero,
    #[error("order {n} exceeds the enumeration cap {cap}")]
    AboveCap { n: usize, cap: usize },
    #[error("order {n} enumerates 2^{bits} graphs; pass the long-run flag to confirm")]
    NeedsLongRun { n: usize, bits: usize },
    #[error("no checks requested")]
    EmptyChecks,
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("line {line}: {error}")]
    MalformedLine { line: usize, error: Graph6Error },
    #[error("line {line}: order-0 graph cannot be checked")]
    OrderZeroLine { line: usize },
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

/// Options for [`enumerate_labeled`].
#[derive(Debug, Clone)]
pub struct EnumOptions {
    pub cap: usize,
    pub long_run: bool,
}

impl Default for EnumOptions {
    fn default() -> EnumOptions {
        EnumOptions {
            cap: DEFAULT_ENUM_CAP,
            long_run: false,
        }
    }
}

/// The labeled graph on `0..n` whose edge set is the binary expansion of
/// `mask`: bit `k` selects the `k`-th pair in graph6 column-major order.
pub fn graph_from_edge_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::with_capacity(mask.count_ones() as usize);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> k & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).expect("mask pairs are in range")
}

/// Streams all `2^(n(n-1)/2)` labeled graphs of order `n` in edge-mask
/// order.
pub fn enumerate_labeled(
    n: usize,
    opts: &EnumOptions,
) -> Result<impl Iterator<Item = Graph>, SweepError> {
    check_enumerable(n, opts)?;
    let bits = n * (n - 1) / 2;
    Ok((0u64..1 << bits).map(move |mask| graph_from_edge_mask(n, mask)))
}

fn check_enumerable(n: usize, opts: &EnumOptions) -> Result<(), SweepError> {
    if n == 0 {
        return Err(SweepError::OrderZero);
    }
    if n > opts.cap {
        return Err(SweepError::AboveCap { n, cap: opts.cap });
    }
    if n >= LONG_RUN_THRESHOLD && !opts.long_run {
        return Err(SweepError::NeedsLongRun {
            n,
            bits: n * (n - 1) / 2,
        });
    }
    Ok(())
}

/// What a sweep reads.
#[derive(Debug, Clone)]
pub enum SweepSource {
    Labeled(usize),
    Graph6File(PathBuf),
}

impl fmt::Display for SweepSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepSource::Labeled(n) => write!(f, "labeled({n})"),
            SweepSource::Graph6File(path) => write!(f, "{}", path.display()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Exact,
    /// Modular ranks with exact re-verification at bound boundaries.
    Modular,
}

impl SweepMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepMode::Exact => "exact",
            SweepMode::Modular => "modular",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub checks: Vec<TheoremId>,
    pub mode: SweepMode,
    /// Modular prime; a fresh random 61-bit prime when unset.
    pub prime: Option<u64>,
    /// Skip malformed graph6 lines (recording them) instead of failing.
    pub lenient: bool,
    pub enumeration: EnumOptions,
}

impl Default for SweepOptions {
    fn default() -> SweepOptions {
        SweepOptions {
            checks: TheoremId::ALL.to_vec(),
            mode: SweepMode::Exact,
            prime: None,
            lenient: false,
            enumeration: EnumOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub graph6: String,
    pub theorem: TheoremId,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedLine {
    pub line_number: usize,
    pub reason: String,
}

/// Aggregate outcome of one sweep.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub source: String,
    pub checks: Vec<TheoremId>,
    pub mode: SweepMode,
    /// The modular prime used, when the modular path ran.
    pub prime: Option<u64>,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub graph_count: u64,
    pub violations: Vec<Violation>,
    pub equality_inventory: BTreeMap<TheoremId, Vec<String>>,
    /// `(n, f_g, f_gbar) -> count`; counts sum to `graph_count`.
    pub histogram: BTreeMap<(usize, usize, usize), u64>,
    pub skipped_lines: Vec<SkippedLine>,
    pub elapsed: Duration,
}

#[derive(Default)]
struct Partial {
    graph_count: u64,
    n_min: Option<usize>,
    n_max: Option<usize>,
    violations: Vec<Violation>,
    inventory: BTreeMap<TheoremId, Vec<String>>,
    histogram: BTreeMap<(usize, usize, usize), u64>,
    skipped: Vec<SkippedLine>,
    error: Option<SweepError>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        if self.error.is_some() {
            return self;
        }
        if let Some(e) = other.error {
            self.error = Some(e);
            return self;
        }
        self.graph_count += other.graph_count;
        self.n_min = match (self.n_min, other.n_min) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.n_max = self.n_max.max(other.n_max);
        self.violations.extend(other.violations);
        for (k, v) in other.inventory {
            self.inventory.entry(k).or_default().extend(v);
        }
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_default() += v;
        }
        self.skipped.extend(other.skipped);
        self
    }
}

/// Whether a modular rank pair could hide a boundary case: any deficiency
/// from full rank, or a product/sum at or below the largest bound.
fn needs_exact_reverify(pair: &RankPair) -> bool {
    let n = pair.n as u64;
    pair.f_g < pair.n
        || pair.f_gbar < pair.n
        || pair.product() <= 3 * n
        || pair.sum() <= n + 1
}

fn rank_pair_for(g: &Graph, mode: SweepMode, prime: u64) -> RankPair {
    match mode {
        SweepMode::Exact => complement_rank_pair(g).expect("order checked"),
        SweepMode::Modular => {
            let modular = complement_rank_pair_mod_p(g, prime).expect("order and prime checked");
            if needs_exact_reverify(&modular) {
                complement_rank_pair(g).expect("order checked")
            } else {
                modular
            }
        }
    }
}

fn process_graph(g: &Graph, opts: &SweepOptions, prime: u64, out: &mut Partial) {
    let recognition = g.recognize();
    let pair = rank_pair_for(g, opts.mode, prime);
    let graph6 = emit_graph6(g).expect("order fits graph6");

    out.graph_count += 1;
    out.n_min = Some(out.n_min.map_or(g.n(), |m| m.min(g.n())));
    out.n_max = Some(out.n_max.map_or(g.n(), |m| m.max(g.n())));
    *out
        .histogram
        .entry((pair.n, pair.f_g, pair.f_gbar))
        .or_default() += 1;

    for &check in &opts.checks {
        let verdict = evaluate(check, &pair, &recognition);
        if !verdict.holds || !verdict.characterization_match {
            out.violations.push(Violation {
                graph6: graph6.clone(),
                theorem: check,
                detail: verdict.detail.clone(),
            });
        }
        if verdict.applicable && verdict.equality {
            out.inventory.entry(check).or_default().push(graph6.clone());
        }
    }
}

/// Runs the requested checks over every graph of the source.
pub fn sweep(source: &SweepSource, opts: &SweepOptions) -> Result<SweepReport, SweepError> {
    if opts.checks.is_empty() {
        return Err(SweepError::EmptyChecks);
    }
    if let Some(p) = opts.prime {
        if !is_prime_u64(p) {
            return Err(SweepError::NotPrime { p });
        }
    }
    let prime = match opts.mode {
        SweepMode::Exact => None,
        SweepMode::Modular => Some(opts.prime.unwrap_or_else(|| random_prime_61(&mut rand::rng()))),
    };
    let started = Instant::now();

    let merged = match source {
        SweepSource::Labeled(n) => {
            check_enumerable(*n, &opts.enumeration)?;
            let bits = n * (n - 1) / 2;
            let total: u64 = 1 << bits;
            let chunks: Vec<(u64, u64)> = (0..total)
                .step_by(LABELED_CHUNK as usize)
                .map(|lo| (lo, total.min(lo + LABELED_CHUNK)))
                .collect();
            chunks
                .into_par_iter()
                .map(|(lo, hi)| {
                    let mut part = Partial::default();
                    for mask in lo..hi {
                        let g = graph_from_edge_mask(*n, mask);
                        process_graph(&g, opts, prime.unwrap_or(2), &mut part);
                    }
                    part
                })
                .reduce(Partial::default, Partial::merge)
        }
        SweepSource::Graph6File(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| SweepError::Io {
                path: path.clone(),
                source,
            })?;
            let lines: Vec<(usize, &str)> = text
                .lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty())
                .collect();
            lines
                .par_chunks(FILE_CHUNK)
                .map(|chunk| {
                    let mut part = Partial::default();
                    for &(line_number, line) in chunk {
                        if part.error.is_some() {
                            break;
                        }
                        match parse_graph6(line) {
                            Ok(g) if g.n() == 0 => {
                                if opts.lenient {
                                    part.skipped.push(SkippedLine {
                                        line_number,
                                        reason: "order-0 graph cannot be checked".into(),
                                    });
                                } else {
                                    part.error =
                                        Some(SweepError::OrderZeroLine { line: line_number });
                                }
                            }
                            Ok(g) => process_graph(&g, opts, prime.unwrap_or(2), &mut part),
                            Err(error) => {
                                if opts.lenient {
                                    part.skipped.push(SkippedLine {
                                        line_number,
                                        reason: error.to_string(),
                                    });
                                } else {
                                    part.error = Some(SweepError::MalformedLine {
                                        line: line_number,
                                        error,
                                    });
                                }
                            }
                        }
                    }
                    part
                })
                .reduce(Partial::default, Partial::merge)
        }
    };

    if let Some(error) = merged.error {
        return Err(error);
    }
    Ok(SweepReport {
        source: source.to_string(),
        checks: opts.checks.clone(),
        mode: opts.mode,
        prime,
        n_min: merged.n_min,
        n_max: merged.n_max,
        graph_count: merged.graph_count,
        violations: merged.violations,
        equality_inventory: merged.inventory,
        histogram: merged.histogram,
        skipped_lines: merged.skipped,
        elapsed: started.elapsed(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Jsonl,
    Csv,
}

/// Serializes a report: JSONL emits a summary record plus one record per
/// violation, equality witness, and histogram cell; CSV emits the
/// histogram table.
pub fn write_report<W: Write>(
    report: &SweepReport,
    format: ReportFormat,
    mut w: W,
) -> io::Result<()> {
    match format {
        ReportFormat::Jsonl => {
            let summary = json!({
                "type": "summary",
                "source": report.source,
                "checks": report.checks.iter().map(|c| c.as_str()).collect::<Vec<_>>(),
                "mode": report.mode.as_str(),
                "prime": report.prime,
                "n_min": report.n_min,
                "n_max": report.n_max,
                "graph_count": report.graph_count,
                "violations": report.violations.len(),
                "skipped_lines": report.skipped_lines.len(),
                "elapsed_secs": report.elapsed.as_secs_f64(),
            });
            writeln!(w, "{summary}")?;
            for v in &report.violations {
                let record = json!({
                    "type": "violation",
                    "graph6": v.graph6,
                    "theorem": v.theorem.as_str(),
                    "detail": v.detail,
                });
                writeln!(w, "{record}")?;
            }
            for (theorem, graphs) in &report.equality_inventory {
                for graph6 in graphs {
                    let record = json!({
                        "type": "equality",
                        "theorem": theorem.as_str(),
                        "graph6": graph6,
                    });
                    writeln!(w, "{record}")?;
                }
            }
            for (&(n, f_g, f_gbar), &count) in &report.histogram {
                let record = json!({
                    "type": "histogram",
                    "n": n,
                    "f_g": f_g,
                    "f_gbar": f_gbar,
                    "count": count,
                });
                writeln!(w, "{record}")?;
            }
        }
        ReportFormat::Csv => {
            writeln!(w, "n,f_g,f_gbar,count")?;
            for (&(n, f_g, f_gbar), &count) in &report.histogram {
                writeln!(w, "{n},{f_g},{f_gbar},{count}")?;
            }
        }
    }
    Ok(())
}
