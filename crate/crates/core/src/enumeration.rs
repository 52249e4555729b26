//! Orderly generation of connected regular bipartite graphs, the census of
//! balanced cubic graphs, and the checks run over it.
//!
//! A graph on `d` vertices is built as its `m x m` bipartite adjacency
//! matrix (`m = d/2`), one row at a time. Rows are kept in non-increasing
//! lexicographic order (column 0 most significant) and columns likewise
//! (row 0 most significant); the latter means that among columns identical
//! so far, a new row may only use the leftmost ones. Every matrix can be
//! brought to such a doubly sorted form by alternately sorting rows and
//! columns, since each sort raises the row-major bit string.
//!
//! A completed matrix is accepted only when it equals the doubly sorted
//! matrix derived from the canonical labelling of its graph, so each
//! isomorphism class is emitted exactly once regardless of how the search
//! tree is split between workers.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::balance::{balanced, has_bad_cycle_through};
use crate::cayley::recognize_lt_cycle;
use crate::error::{Error, Result};
use crate::graph::{
    bit, canonical_graph, is_isomorphic, is_vertex_transitive, low_mask, write_graph6, Bipartiteness, Bits,
    CanonicalForm, Graph,
};
use crate::report::VerificationReport;

pub const MIN_CENSUS_VERTICES: usize = 6;
pub const MAX_CENSUS_VERTICES: usize = 36;

/// Rows fixed before the search tree is handed out to workers.
const SPLIT_DEPTH: usize = 5;

/// One census run: vertex count, whether to prune to balanced graphs, and
/// an optional `(modulus, residue)` share of the search tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CensusTask {
    pub vertices: usize,
    pub balanced_only: bool,
    pub partition: Option<(usize, usize)>,
}

impl CensusTask {
    pub fn new(vertices: usize) -> Result<Self> {
        check_vertices(vertices)?;
        Ok(Self {
            vertices,
            balanced_only: false,
            partition: None,
        })
    }

    pub fn balanced_only(mut self, on: bool) -> Self {
        self.balanced_only = on;
        self
    }

    pub fn partition(mut self, modulus: usize, residue: usize) -> Result<Self> {
        if modulus == 0 || residue >= modulus {
            return Err(Error::Precondition(format!(
                "residue {residue} must lie in 0..{modulus}"
            )));
        }
        self.partition = Some((modulus, residue));
        Ok(self)
    }
}

fn check_vertices(d: usize) -> Result<()> {
    if !d.is_multiple_of(2) || !(MIN_CENSUS_VERTICES..=MAX_CENSUS_VERTICES).contains(&d) {
        Err(Error::InvalidVertexCount(d))
    } else {
        Ok(())
    }
}

/// Per-graph facts relevant to the open questions about cubic balanced graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureFlags {
    pub graph6: String,
    pub has_twins: bool,
    pub girth: Option<usize>,
    pub vertex_transitive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub d: usize,
    /// Number of connected cubic bipartite classes; `None` when the run
    /// pruned to balanced graphs and never saw the rest.
    pub total_cubic_bipartite: Option<u64>,
    pub balanced_count: u64,
    /// Balanced graphs as graph6, in canonical-form order.
    pub witnesses: Vec<String>,
    pub flags: Vec<ConjectureFlags>,
    pub partition: Option<(usize, usize)>,
    #[serde(skip)]
    pub balanced_graphs: Vec<Graph>,
}

/// Every connected cubic bipartite graph on `d` vertices, one per
/// isomorphism class, in canonical-form order.
pub fn enumerate_cubic_bipartite(d: usize) -> Result<Vec<Graph>> {
    check_vertices(d)?;
    Ok(generate(d / 2, 3, false, None)?.into_values().collect())
}

/// Connected `k`-regular bipartite graphs on `d` vertices, up to
/// isomorphism. The same generator as the cubic census; intended for small
/// orders.
pub fn enumerate_regular_bipartite(d: usize, k: usize) -> Result<Vec<Graph>> {
    if !d.is_multiple_of(2) || d == 0 || d > crate::graph::MAX_VERTICES || k == 0 {
        return Err(Error::InvalidVertexCount(d));
    }
    Ok(generate(d / 2, k, false, None)?.into_values().collect())
}

pub fn run_census(task: CensusTask) -> Result<CensusReport> {
    check_vertices(task.vertices)?;
    let classes = generate(task.vertices / 2, 3, task.balanced_only, task.partition)?;
    let total = classes.len() as u64;
    let mut balanced_graphs = Vec::new();
    for g in classes.into_values() {
        if balanced(&g)? {
            balanced_graphs.push(g);
        }
    }
    let flags = balanced_graphs
        .iter()
        .map(|g| {
            Ok(ConjectureFlags {
                graph6: write_graph6(g),
                has_twins: g.twin_classes().has_nontrivial_twins(),
                girth: g.girth(),
                vertex_transitive: is_vertex_transitive(g)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CensusReport {
        d: task.vertices,
        total_cubic_bipartite: (!task.balanced_only).then_some(total),
        balanced_count: balanced_graphs.len() as u64,
        witnesses: flags.iter().map(|f| f.graph6.clone()).collect(),
        flags,
        partition: task.partition,
        balanced_graphs,
    })
}

/// `f(d)`: connected cubic balanced graphs on `d` vertices, found with
/// balance pruning during generation.
pub fn count_balanced_cubic(d: usize) -> Result<CensusReport> {
    run_census(CensusTask::new(d)?.balanced_only(true))
}

/// Every balanced graph in the census has a class of at least two twins.
pub fn check_conjecture_twins(d: usize) -> Result<VerificationReport> {
    Ok(twins_report(&count_balanced_cubic(d)?))
}

/// For every balanced census graph: girth 4; vertex-transitive only if it
/// is `K_{3,3}`, and then it is recognized as an `(l,t)`-cycle; and the
/// order is a multiple of 6.
pub fn check_conjecture_consequences(d: usize) -> Result<VerificationReport> {
    consequences_report(&count_balanced_cubic(d)?)
}

pub fn twins_report(census: &CensusReport) -> VerificationReport {
    let mut report = VerificationReport::new("conjecture-twins").with_parameter("d", census.d as u64);
    for f in &census.flags {
        report.instances += 1;
        if f.has_twins {
            report.tally("with_twins", 1);
        } else {
            report.fail(
                format!("balanced cubic graph on {} vertices without twins", census.d),
                f.graph6.clone(),
            );
        }
    }
    report
}

pub fn consequences_report(census: &CensusReport) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("conjecture-consequences").with_parameter("d", census.d as u64);
    let k33 = Graph::complete_bipartite(3, 3)?;
    for (g, f) in census.balanced_graphs.iter().zip(&census.flags) {
        report.instances += 1;
        if f.girth != Some(4) {
            report.fail(
                format!("balanced cubic graph with girth {:?}", f.girth),
                f.graph6.clone(),
            );
        }
        if !census.d.is_multiple_of(6) {
            report.fail(
                "balanced cubic graph whose order is not a multiple of 6",
                f.graph6.clone(),
            );
        }
        if f.vertex_transitive {
            report.tally("vertex_transitive", 1);
            if !is_isomorphic(g, &k33)? {
                report.fail(
                    "vertex-transitive balanced cubic graph other than K_{3,3}",
                    f.graph6.clone(),
                );
            }
            if recognize_lt_cycle(g)?.is_none() {
                report.fail(
                    "vertex-transitive balanced graph that is not an (l,t)-cycle",
                    f.graph6.clone(),
                );
            }
        }
    }
    Ok(report)
}

/// Search state for one subtree. Vertex `i < m` is row `i`; vertex `m + j`
/// is column `j`.
#[derive(Clone)]
struct State {
    m: usize,
    k: usize,
    balanced_only: bool,
    rows: Vec<u64>,
    keys: Vec<u64>,
    col_deg: Vec<usize>,
    adj: Vec<u64>,
    /// Runs of columns identical on the rows placed so far, as `[start, end)`.
    classes: Vec<(usize, usize)>,
}

impl State {
    fn new(m: usize, k: usize, balanced_only: bool) -> Self {
        Self {
            m,
            k,
            balanced_only,
            rows: Vec::with_capacity(m),
            keys: Vec::with_capacity(m),
            col_deg: vec![0; m],
            adj: vec![0; 2 * m],
            classes: vec![(0, m)],
        }
    }

    fn key(&self, mask: u64) -> u64 {
        Bits(mask).fold(0, |acc, j| acc | bit(self.m - 1 - j))
    }

    /// Admissible next rows, largest key first.
    fn choices(&self) -> Vec<u64> {
        let i = self.rows.len();
        let rows_after = self.m - i - 1;
        let mut out = Vec::new();
        self.compose(0, self.k, 0, &mut out);
        let prev = self.keys.last().copied().unwrap_or(u64::MAX);
        out.retain(|&mask| {
            self.key(mask) <= prev
                && (0..self.m).all(|j| {
                    let deg = self.col_deg[j] + (mask & bit(j) != 0) as usize;
                    self.k - deg <= rows_after
                })
        });
        out
    }

    fn compose(&self, ci: usize, remaining: usize, mask: u64, out: &mut Vec<u64>) {
        if remaining == 0 {
            out.push(mask);
            return;
        }
        let Some(&(s, e)) = self.classes.get(ci) else {
            return;
        };
        let max = if self.col_deg[s] < self.k {
            remaining.min(e - s)
        } else {
            0
        };
        for c in (0..=max).rev() {
            let take = (s..s + c).fold(0u64, |m, j| m | bit(j));
            self.compose(ci + 1, remaining - c, mask | take, out);
        }
    }

    fn push(&mut self, mask: u64) {
        let i = self.rows.len();
        self.rows.push(mask);
        self.keys.push(self.key(mask));
        self.adj[i] = mask << self.m;
        for j in Bits(mask) {
            self.adj[self.m + j] |= bit(i);
            self.col_deg[j] += 1;
        }
        let mut classes = Vec::with_capacity(self.classes.len() + self.k);
        for &(s, e) in &self.classes {
            let c = (s..e).filter(|&j| mask & bit(j) != 0).count();
            if c > 0 && c < e - s {
                classes.push((s, s + c));
                classes.push((s + c, e));
            } else {
                classes.push((s, e));
            }
        }
        self.classes = classes;
    }

    /// Whether the partial graph can still be completed into a balanced,
    /// connected graph.
    fn viable(&self) -> bool {
        let i = self.rows.len() - 1;
        let placed = low_mask(i + 1) | (low_mask(self.m) << self.m);
        if self.balanced_only && has_bad_cycle_through(&self.adj, i, placed) {
            return false;
        }
        if i + 1 < self.m {
            // The component of the new row is finished when its columns
            // are full; with rows still to come the result is disconnected.
            let comp = component(&self.adj, i);
            let closed = Bits(comp >> self.m).all(|j| self.col_deg[j] == self.k);
            if closed {
                return false;
            }
        }
        true
    }

    fn leaf(&self) -> Result<Option<(CanonicalForm, Graph)>> {
        if component(&self.adj, 0).count_ones() as usize != 2 * self.m {
            return Ok(None);
        }
        let g = Graph::from_rows_unchecked(self.adj.clone());
        let (form, canon) = canonical_graph(&g)?;
        Ok((sorted_matrix(&canon, self.m) == self.rows).then_some((form, g)))
    }
}

fn component(adj: &[u64], start: usize) -> u64 {
    let mut comp = bit(start);
    let mut frontier = comp;
    while frontier != 0 {
        let next = Bits(frontier).fold(0u64, |m, v| m | adj[v]) & !comp;
        comp |= next;
        frontier = next;
    }
    comp
}

/// The doubly sorted bipartite adjacency matrix reached from the given
/// labelling (rows = side of vertex 0, ascending) by alternately sorting
/// rows and columns into non-increasing order.
fn sorted_matrix(g: &Graph, m: usize) -> Vec<u64> {
    let Ok(Bipartiteness::Bipartite(b)) = g.bipartition() else {
        return Vec::new();
    };
    let (left, right) = (b.part(0), b.part(1));
    if left.len() != m || right.len() != m {
        return Vec::new();
    }
    let mut rows: Vec<u64> = left
        .iter()
        .map(|&u| {
            right
                .iter()
                .enumerate()
                .filter(|(_, &w)| g.has_edge(u, w))
                .fold(0u64, |acc, (j, _)| acc | bit(j))
        })
        .collect();
    let rev_key = |mask: u64| Bits(mask).fold(0u64, |acc, j| acc | bit(m - 1 - j));
    loop {
        let mut changed = false;
        let mut sorted = rows.clone();
        sorted.sort_by_key(|&r| std::cmp::Reverse(rev_key(r)));
        if sorted != rows {
            rows = sorted;
            changed = true;
        }
        let col_key = |j: usize| {
            rows.iter()
                .enumerate()
                .filter(|(_, &r)| r & bit(j) != 0)
                .fold(0u64, |acc, (i, _)| acc | bit(m - 1 - i))
        };
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&j| std::cmp::Reverse(col_key(j)));
        if order.iter().enumerate().any(|(p, &j)| p != j) {
            rows = rows
                .iter()
                .map(|&r| {
                    order
                        .iter()
                        .enumerate()
                        .filter(|(_, &j)| r & bit(j) != 0)
                        .fold(0u64, |acc, (p, _)| acc | bit(p))
                })
                .collect();
            changed = true;
        }
        if !changed {
            return rows;
        }
    }
}

fn descend(state: &mut State, out: &mut Vec<(CanonicalForm, Graph)>) -> Result<()> {
    if state.rows.len() == state.m {
        if let Some(found) = state.leaf()? {
            out.push(found);
        }
        return Ok(());
    }
    for mask in state.choices() {
        let saved = state.clone();
        state.push(mask);
        if state.viable() {
            descend(state, out)?;
        }
        *state = saved;
    }
    Ok(())
}

/// Partial states after `depth` rows, in search order.
fn prefixes(state: &mut State, depth: usize, out: &mut Vec<State>) {
    if state.rows.len() == depth {
        out.push(state.clone());
        return;
    }
    for mask in state.choices() {
        let saved = state.clone();
        state.push(mask);
        if state.viable() {
            prefixes(state, depth, out);
        }
        *state = saved;
    }
}

fn generate(
    m: usize,
    k: usize,
    balanced_only: bool,
    partition: Option<(usize, usize)>,
) -> Result<BTreeMap<CanonicalForm, Graph>> {
    let mut roots = Vec::new();
    if k <= m {
        prefixes(&mut State::new(m, k, balanced_only), SPLIT_DEPTH.min(m), &mut roots);
    }
    let found: Vec<Vec<(CanonicalForm, Graph)>> = roots
        .into_par_iter()
        .enumerate()
        .filter(|(idx, _)| partition.is_none_or(|(md, res)| idx % md == res))
        .map(|(_, mut s)| {
            let mut out = Vec::new();
            descend(&mut s, &mut out)?;
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}
