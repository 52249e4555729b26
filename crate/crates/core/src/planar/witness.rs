//! Local unbalancedness witnesses in cubic bipartite planar graphs, the
//! 2-cut reduction to the 3-connected case, and the exhaustive check that
//! ties them together.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{batagelj_enumerate, planarity_test, EmbeddedGraph};
use crate::balance::balanced;
use crate::error::{Error, Result};
use crate::graph::{automorphism_generators, bit, write_graph6, Graph, MAX_VERTICES};
use crate::report::VerificationReport;

/// The subgraph at a degree-3 vertex `v` made of `v`, its three edges and
/// the boundaries of the three faces around `v` with `v` removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SvSubgraph {
    pub v: usize,
    /// Neighbors of `v` in rotation order.
    pub neighbors: [usize; 3],
    pub vertices: Vec<usize>,
    /// Edges as `(small, large)` pairs, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl SvSubgraph {
    /// Whether the edges are exactly those `g` induces on the vertex set.
    pub fn is_induced_in(&self, g: &Graph) -> bool {
        let mask = self.vertices.iter().fold(0u64, |m, &v| m | bit(v));
        let induced: usize = self
            .vertices
            .iter()
            .map(|&v| (g.neighbors(v) & mask).count_ones() as usize)
            .sum();
        induced == 2 * self.edges.len() && self.edges.iter().all(|&(a, b)| g.has_edge(a, b))
    }

    /// The subgraph itself, relabelled to `0..k` in ascending vertex order.
    pub fn graph(&self) -> Graph {
        let index = |x: usize| self.vertices.binary_search(&x).expect("edge inside vertex set");
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(a, b)| (index(a), index(b))).collect();
        Graph::from_edges(self.vertices.len(), &edges).expect("valid subgraph")
    }
}

pub fn s_v_subgraph(g: &EmbeddedGraph, v: usize) -> Result<SvSubgraph> {
    let n = g.graph().n();
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    let rot = g.rotation_at(v);
    let neighbors: [usize; 3] = rot.try_into().map_err(|_| Error::WrongDegree {
        vertex: v,
        degree: rot.len(),
        expected: 3,
    })?;
    let mut vertices = BTreeSet::from([v]);
    let mut edges = BTreeSet::new();
    for &w in &neighbors {
        edges.insert((v.min(w), v.max(w)));
        // The face entered by w -> v leaves v towards the next neighbor and
        // returns along a path to w.
        let (mut x, mut y) = (v, g.succ(v, w));
        while (x, y) != (w, v) {
            if y == v {
                return Err(Error::Precondition(format!("face at {v} passes through it twice")));
            }
            vertices.insert(y);
            if x != v {
                edges.insert((x.min(y), x.max(y)));
            }
            (x, y) = (y, g.succ(y, x));
        }
    }
    Ok(SvSubgraph {
        v,
        neighbors,
        vertices: vertices.into_iter().collect(),
        edges: edges.into_iter().collect(),
    })
}

fn require_cubic_3_connected(g: &Graph) -> Result<()> {
    if g.regular_degree() != Some(3) {
        return Err(Error::Precondition("graph is not cubic".into()));
    }
    if !g.is_bipartite() {
        return Err(Error::Precondition("graph is not bipartite".into()));
    }
    if g.vertex_connectivity()? != 3 {
        return Err(Error::Precondition("graph is not 3-connected".into()));
    }
    Ok(())
}

/// Checks, on a 3-connected cubic bipartite plane graph: every `S_v` is
/// induced and unbalanced, no edge lies in every `S_v`, the graph is
/// unbalanced, and so is every single-edge deletion.
pub fn verify_sv_claims(g: &EmbeddedGraph) -> Result<VerificationReport> {
    let x = g.graph();
    require_cubic_3_connected(x)?;
    let mut report = VerificationReport::new("sv-claims");
    let g6 = write_graph6(x);
    report.instances = 1;
    let mut common: Option<BTreeSet<(usize, usize)>> = None;
    for v in 0..x.n() {
        let sv = s_v_subgraph(g, v)?;
        report.tally("sv_checked", 1);
        if !sv.is_induced_in(x) {
            report.fail(format!("S_{v} is not induced"), g6.clone());
        }
        if balanced(&sv.graph())? {
            report.fail(format!("S_{v} is balanced"), g6.clone());
        }
        let edges: BTreeSet<_> = sv.edges.into_iter().collect();
        common = Some(match common {
            None => edges,
            Some(c) => c.intersection(&edges).copied().collect(),
        });
    }
    if let Some(e) = common.filter(|c| !c.is_empty()) {
        report.fail(format!("edges {e:?} lie in every S_v"), g6.clone());
    }
    if balanced(x)? {
        report.fail("graph is balanced", g6.clone());
    }
    for (a, b) in x.edges() {
        report.tally("edge_deletions", 1);
        if balanced(&x.delete_edge(a, b)?)? {
            report.fail(format!("deleting {{{a},{b}}} leaves a balanced graph"), g6.clone());
        }
    }
    Ok(report)
}

/// A 2-cut `{u, v}` and a component `Y` of `X - {u, v}` that becomes a
/// 3-connected cubic bipartite planar graph once the edge `ab` is added.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoCutDecomposition {
    pub cut: (usize, usize),
    pub component: Vec<usize>,
    pub added_edge: (usize, usize),
    /// `Y + ab`, relabelled in ascending order of `component`.
    #[serde(serialize_with = "serialize_graph6")]
    pub completed: Graph,
}

fn serialize_graph6<S: serde::Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&write_graph6(g))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "decomposition")]
pub enum TwoCutOutcome {
    /// The input is 3-connected.
    NotApplicable,
    Found(TwoCutDecomposition),
    /// 2-connected but no cut yields a 3-connected completion.
    Missing,
}

/// Searches every 2-cut and every side of it for a 3-connected completion.
pub fn two_cut_decompose(g: &Graph) -> Result<TwoCutOutcome> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.regular_degree() != Some(3) || !g.is_bipartite() {
        return Err(Error::Precondition("graph must be cubic and bipartite".into()));
    }
    if planarity_test(g)?.is_none() {
        return Err(Error::Precondition("graph must be planar".into()));
    }
    match g.vertex_connectivity()? {
        k if k >= 3 => return Ok(TwoCutOutcome::NotApplicable),
        2 => {}
        _ => return Err(Error::Precondition("graph must be 2-connected".into())),
    }
    for (u, v) in g.two_cuts()? {
        for comp in g.components_within(g.vertex_mask() & !(bit(u) | bit(v))) {
            if let Some(found) = complete_component(g, (u, v), comp)? {
                return Ok(TwoCutOutcome::Found(found));
            }
        }
    }
    Ok(TwoCutOutcome::Missing)
}

fn complete_component(g: &Graph, cut: (usize, usize), comp: u64) -> Result<Option<TwoCutDecomposition>> {
    let (y, map) = g.induced_by_mask(comp);
    let short: Vec<usize> = (0..y.n()).filter(|&i| y.degree(i) == 2).collect();
    if short.len() != 2 || (0..y.n()).any(|i| y.degree(i) != 2 && y.degree(i) != 3) {
        return Ok(None);
    }
    let (a, b) = (short[0], short[1]);
    if y.has_edge(a, b) {
        return Ok(None);
    }
    let completed = y.add_edge(a, b)?;
    let ok = completed.is_bipartite()
        && completed.n() >= 4
        && completed.vertex_connectivity()? == 3
        && planarity_test(&completed)?.is_some();
    Ok(ok.then(|| TwoCutDecomposition {
        cut,
        component: map.clone(),
        added_edge: (map[a], map[b]),
        completed,
    }))
}

/// Joins `g` minus `e` and `h` minus `f` by two new edges, `e.0-f.0` and
/// `e.1-f.1` (or crossed when `crossed`). Vertices of `h` are shifted by
/// `g.n()`.
pub(crate) fn compose_across_edges(
    g: &Graph,
    e: (usize, usize),
    h: &Graph,
    f: (usize, usize),
    crossed: bool,
) -> Result<Graph> {
    let shift = g.n();
    let n = g.n() + h.n();
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
    }
    let mut edges: Vec<(usize, usize)> = g.delete_edge(e.0, e.1)?.edges();
    edges.extend(
        h.delete_edge(f.0, f.1)?
            .edges()
            .into_iter()
            .map(|(a, b)| (a + shift, b + shift)),
    );
    let (f0, f1) = if crossed { (f.1, f.0) } else { f };
    edges.push((e.0, f0 + shift));
    edges.push((e.1, f1 + shift));
    Graph::from_edges(n, &edges)
}

/// One edge from each orbit of the automorphism group on edges.
pub(crate) fn edge_orbit_representatives(g: &Graph) -> Result<Vec<(usize, usize)>> {
    let edges = g.edges();
    let gens = automorphism_generators(g)?;
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for &e in &edges {
        if seen.contains(&e) {
            continue;
        }
        reps.push(e);
        let mut stack = vec![e];
        seen.insert(e);
        while let Some((a, b)) = stack.pop() {
            for p in &gens {
                let img = (p[a].min(p[b]), p[a].max(p[b]));
                if seen.insert(img) {
                    stack.push(img);
                }
            }
        }
    }
    Ok(reps)
}

/// Exhaustive planar check up to `max_n` vertices: every graph generated
/// from the cube is cubic, bipartite, planar (re-certified independently of
/// its generated embedding), 3-connected and passes [`verify_sv_claims`];
/// and every 2-cut composition of two generated graphs with at most
/// `max_n` vertices each is unbalanced and decomposes back.
pub fn verify_planar_theorem(max_n: usize) -> Result<VerificationReport> {
    let graphs = batagelj_enumerate(max_n)?;
    let mut report = VerificationReport::new("planar").with_parameter("max_n", max_n as u64);
    let mut pieces = Vec::new();
    for g in &graphs {
        let x = g.graph();
        let g6 = write_graph6(x);
        report.tally("generated", 1);
        if x.regular_degree() != Some(3) || !x.is_bipartite() {
            report.fail("generated graph is not cubic bipartite", g6.clone());
            continue;
        }
        if planarity_test(x)?.is_none() {
            report.fail("generated graph fails the planarity test", g6.clone());
        }
        if x.vertex_connectivity()? != 3 {
            report.fail("generated graph is not 3-connected", g6.clone());
            continue;
        }
        let sv = verify_sv_claims(g)?;
        report.merge(sv);
        pieces.push((x.clone(), edge_orbit_representatives(x)?));
    }
    for i in 0..pieces.len() {
        for j in i..pieces.len() {
            let ((g, ge), (h, he)) = (&pieces[i], &pieces[j]);
            if g.n() + h.n() > MAX_VERTICES {
                continue;
            }
            for &e in ge {
                for &f in he {
                    for crossed in [false, true] {
                        let c = compose_across_edges(g, e, h, f, crossed)?;
                        check_composition(&c, &mut report)?;
                    }
                }
            }
        }
    }
    report.counterexamples.sort();
    report.counterexamples.dedup();
    Ok(report)
}

fn check_composition(c: &Graph, report: &mut VerificationReport) -> Result<()> {
    report.tally("compositions", 1);
    let g6 = write_graph6(c);
    if !c.is_bipartite() || c.regular_degree() != Some(3) {
        report.fail("2-cut composition is not cubic bipartite", g6.clone());
        return Ok(());
    }
    if balanced(c)? {
        report.fail("2-cut composition is balanced", g6.clone());
    }
    if !matches!(two_cut_decompose(c)?, TwoCutOutcome::Found(_)) {
        report.fail("2-cut composition does not decompose", g6);
    }
    Ok(())
}
