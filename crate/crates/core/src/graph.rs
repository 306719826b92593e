//! Simple undirected graphs with adjacency stored as per-vertex bit rows,
//! plus the named families (complete, empty, path, complete bipartite) and
//! the structural recognizers the bound characterizations depend on.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("complete bipartite graph requires both part sizes >= 1, got ({a}, {b})")]
    EmptyBipartitePart { a: usize, b: usize },
    #[error("permutation has length {got}, expected {expected}")]
    PermutationLength { expected: usize, got: usize },
    #[error("permutation is not a bijection: value {value} {problem}")]
    PermutationNotBijective { value: usize, problem: &'static str },
    #[error("edge ({u}, {v}) out of range for order {n}")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop ({v}, {v}) is not allowed")]
    SelfLoop { v: usize },
}

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency is a symmetric, irreflexive boolean relation kept as one bit
/// row per vertex (`ceil(n/64)` words each). Values are immutable after
/// construction and cheap to share between parallel workers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        let words_per_row = n.div_ceil(64);
        Graph {
            n,
            words_per_row,
            bits: vec![0; n * words_per_row],
        }
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Graph {
        Graph::empty(n).complement()
    }

    /// The path `P_n` with edges `{i, i+1}` for `0 <= i < n-1`.
    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.set_edge(i - 1, i);
        }
        g
    }

    /// The complete bipartite graph `K_{a,b}` on parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
        if a == 0 || b == 0 {
            return Err(GraphError::EmptyBipartitePart { a, b });
        }
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.set_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Builds a graph from an explicit edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EdgeOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { v });
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.bits[u * self.words_per_row + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.bits[u * self.words_per_row + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words_per_row + u / 64] |= 1 << (u % 64);
    }

    /// One row of the adjacency bitmap (`ceil(n/64)` words, LSB-first).
    pub fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words_per_row..(u + 1) * self.words_per_row]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        let total: usize = (0..self.n).map(|u| self.degree(u)).sum();
        total / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(u);
        (0..self.n).filter(move |&v| row[v / 64] >> (v % 64) & 1 == 1)
    }

    /// The complement graph: `u ~ v` in the result iff `u != v` and
    /// `u !~ v` here.
    pub fn complement(&self) -> Graph {
        let mut out = Graph::empty(self.n);
        for u in 0..self.n {
            let src = self.row(u);
            let dst = &mut out.bits[u * out.words_per_row..(u + 1) * out.words_per_row];
            for (d, s) in dst.iter_mut().zip(src) {
                *d = !s;
            }
            // clear the diagonal bit and the unused tail of the last word
            dst[u / 64] &= !(1 << (u % 64));
            if self.n % 64 != 0 {
                let last = dst.len() - 1;
                dst[last] &= (1 << (self.n % 64)) - 1;
            }
        }
        out
    }

    /// Disjoint union: vertices of `other` are relabeled by offset `self.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut out = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            out.set_edge(u, v);
        }
        for (u, v) in other.edges() {
            out.set_edge(u + self.n, v + self.n);
        }
        out
    }

    /// Relabels vertices: the result has an edge `(sigma(u), sigma(v))` for
    /// every edge `(u, v)` of `self`.
    pub fn permute(&self, sigma: &[usize]) -> Result<Graph, GraphError> {
        if sigma.len() != self.n {
            return Err(GraphError::PermutationLength {
                expected: self.n,
                got: sigma.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &s in sigma {
            if s >= self.n {
                return Err(GraphError::PermutationNotBijective {
                    value: s,
                    problem: "out of range",
                });
            }
            if seen[s] {
                return Err(GraphError::PermutationNotBijective {
                    value: s,
                    problem: "repeated",
                });
            }
            seen[s] = true;
        }
        let mut out = Graph::empty(self.n);
        for (u, v) in self.edges() {
            out.set_edge(sigma[u], sigma[v]);
        }
        Ok(out)
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_edgeless(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Structural recognition used by the equality characterizations.
    pub fn recognize(&self) -> Recognition {
        let complete_bipartite_parts = self.complete_bipartite_parts();
        let union_of_two_cliques = self.complement().complete_bipartite_parts();
        Recognition {
            is_complete: self.is_complete(),
            is_empty: self.is_edgeless(),
            complete_bipartite_parts,
            union_of_two_cliques,
        }
    }

    /// Returns `Some((a, b))` with `a <= b` iff the graph is `K_{a,b}` with
    /// both parts nonempty and spanning the whole vertex set.
    ///
    /// Two-colors by BFS from vertex 0, then verifies that every cross pair
    /// is an edge and no intra pair is; a disconnected graph fails the
    /// reachability check.
    pub fn complete_bipartite_parts(&self) -> Option<(usize, usize)> {
        if self.n < 2 {
            return None;
        }
        let mut color = vec![u8::MAX; self.n];
        color[0] = 0;
        let mut queue = vec![0usize];
        while let Some(u) = queue.pop() {
            for v in self.neighbors(u) {
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    queue.push(v);
                } else if color[v] == color[u] {
                    return None; // odd cycle
                }
            }
        }
        if color.iter().any(|&c| c == u8::MAX) {
            return None; // disconnected
        }
        let part0: Vec<usize> = (0..self.n).filter(|&v| color[v] == 0).collect();
        let part1: Vec<usize> = (0..self.n).filter(|&v| color[v] == 1).collect();
        if part0.is_empty() || part1.is_empty() {
            return None;
        }
        for &u in &part0 {
            for &v in &part1 {
                if !self.has_edge(u, v) {
                    return None;
                }
            }
        }
        // BFS coloring already rules out intra-part edges, but the check is
        // cheap and keeps the recognizer independent of the traversal.
        for part in [&part0, &part1] {
            for (i, &u) in part.iter().enumerate() {
                for &v in &part[i + 1..] {
                    if self.has_edge(u, v) {
                        return None;
                    }
                }
            }
        }
        let (a, b) = (part0.len(), part1.len());
        Some((a.min(b), a.max(b)))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Outcome of [`Graph::recognize`]. Part sizes are reported `(a, b)` with
/// `a <= b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recognition {
    pub is_complete: bool,
    pub is_empty: bool,
    pub complete_bipartite_parts: Option<(usize, usize)>,
    /// Populated iff the complement is complete bipartite, i.e. the graph is
    /// `K_a` together with a disjoint `K_b`.
    pub union_of_two_cliques: Option<(usize, usize)>,
}

/// A symbolic description of a graph built from the named families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Empty(usize),
    Complete(usize),
    Path(usize),
    CompleteBipartite(usize, usize),
    DisjointUnion(Box<FamilySpec>, Box<FamilySpec>),
    Complement(Box<FamilySpec>),
}

impl FamilySpec {
    pub fn union(specs: impl IntoIterator<Item = FamilySpec>) -> Option<FamilySpec> {
        specs
            .into_iter()
            .reduce(|a, b| FamilySpec::DisjointUnion(Box::new(a), Box::new(b)))
    }

    pub fn order(&self) -> usize {
        match self {
            FamilySpec::Empty(n) | FamilySpec::Complete(n) | FamilySpec::Path(n) => *n,
            FamilySpec::CompleteBipartite(a, b) => a + b,
            FamilySpec::DisjointUnion(g1, g2) => g1.order() + g2.order(),
            FamilySpec::Complement(g) => g.order(),
        }
    }

    /// Materializes the described graph.
    pub fn build(&self) -> Result<Graph, GraphError> {
        match self {
            FamilySpec::Empty(n) => Ok(Graph::empty(*n)),
            FamilySpec::Complete(n) => Ok(Graph::complete(*n)),
            FamilySpec::Path(n) => Ok(Graph::path(*n)),
            FamilySpec::CompleteBipartite(a, b) => Graph::complete_bipartite(*a, *b),
            FamilySpec::DisjointUnion(g1, g2) => Ok(g1.build()?.disjoint_union(&g2.build()?)),
            FamilySpec::Complement(g) => Ok(g.build()?.complement()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Empty(n) => write!(f, "E{n}"),
            FamilySpec::Complete(n) => write!(f, "K{n}"),
            FamilySpec::Path(n) => write!(f, "P{n}"),
            FamilySpec::CompleteBipartite(a, b) => write!(f, "K{a},{b}"),
            FamilySpec::DisjointUnion(g1, g2) => write!(f, "{g1}+{g2}"),
            FamilySpec::Complement(g) => match **g {
                FamilySpec::DisjointUnion(..) => write!(f, "~({g})"),
                _ => write!(f, "~{g}"),
            },
        }
    }
}
