//! Combinatorial embeddings of planar graphs and the cubic bipartite planar
//! toolkit: face tracing, the cube seed, diamond inflation, A1 subdivision,
//! generation from the cube, planarity testing and the local witnesses used
//! to show such graphs are never balanced.
//!
//! Rotations follow one convention throughout: the face to the left of the
//! dart `a -> b` continues with `b -> succ_b(a)`, where `succ_b` is the
//! cyclic successor in the rotation at `b`.

mod ops;
mod planarity;
mod witness;

pub use ops::{a1_sites, a1_subdivision, a1_subdivision_in_face, batagelj_enumerate, diamond_inflation, A1Site};
pub use planarity::planarity_test;
pub use witness::{
    s_v_subgraph, two_cut_decompose, verify_planar_theorem, verify_sv_claims, SvSubgraph, TwoCutDecomposition,
    TwoCutOutcome,
};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, Graph};

/// A connected graph with a rotation system of genus zero.
#[derive(Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    graph: Graph,
    rotation: Vec<Vec<usize>>,
}

/// A face boundary as its cyclic sequence of darts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceWalk {
    pub darts: Vec<(usize, usize)>,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Tails of the darts, in walk order.
    pub fn vertices(&self) -> Vec<usize> {
        self.darts.iter().map(|d| d.0).collect()
    }

    /// Position of the dart covering edge `{a, b}` in either direction.
    pub(crate) fn edge_position(&self, a: usize, b: usize) -> Option<usize> {
        self.darts
            .iter()
            .position(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    }
}

impl EmbeddedGraph {
    /// Validates that `rotation[v]` lists exactly the neighbors of `v` and
    /// that face tracing satisfies Euler's formula.
    pub fn new(graph: Graph, rotation: Vec<Vec<usize>>) -> Result<Self> {
        if rotation.len() != graph.n() {
            return Err(Error::InvalidRotation(format!(
                "{} rotations for {} vertices",
                rotation.len(),
                graph.n()
            )));
        }
        for (v, rot) in rotation.iter().enumerate() {
            let listed = rot.iter().try_fold(0u64, |m, &w| {
                if w >= graph.n() || m & bit(w) != 0 {
                    None
                } else {
                    Some(m | bit(w))
                }
            });
            if listed != Some(graph.neighbors(v)) {
                return Err(Error::InvalidRotation(format!(
                    "rotation at {v} does not list its neighbors exactly once"
                )));
            }
        }
        if !graph.is_connected() || graph.n() == 0 {
            return Err(Error::Disconnected);
        }
        let e = Self { graph, rotation };
        let (v, edges, f) = (e.graph.n() as i64, e.graph.edge_count() as i64, e.face_count() as i64);
        if v - edges + f != 2 {
            return Err(Error::InvalidRotation(format!(
                "V - E + F = {} - {} + {} is not 2",
                v, edges, f
            )));
        }
        Ok(e)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn rotation_at(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    /// Neighbor following `u` in the rotation at `v`.
    pub fn succ(&self, v: usize, u: usize) -> usize {
        let rot = &self.rotation[v];
        let i = rot.iter().position(|&w| w == u).expect("u is a neighbor of v");
        rot[(i + 1) % rot.len()]
    }

    pub fn faces(&self) -> Vec<FaceWalk> {
        let mut seen = vec![0u64; self.graph.n()];
        let mut out = Vec::new();
        for a in 0..self.graph.n() {
            for &b in &self.rotation[a] {
                if seen[a] & bit(b) != 0 {
                    continue;
                }
                let mut darts = Vec::new();
                let (mut x, mut y) = (a, b);
                while seen[x] & bit(y) == 0 {
                    seen[x] |= bit(y);
                    darts.push((x, y));
                    (x, y) = (y, self.succ(y, x));
                }
                out.push(FaceWalk { darts });
            }
        }
        out
    }

    /// Face count for Euler's formula; an edgeless single vertex has one face.
    pub fn face_count(&self) -> usize {
        self.faces().len().max(1)
    }

    /// Relabels vertices by `perm` (vertex `v` becomes `perm[v]`).
    pub fn permute(&self, perm: &[usize]) -> EmbeddedGraph {
        let mut rotation = vec![Vec::new(); self.graph.n()];
        for (v, rot) in self.rotation.iter().enumerate() {
            rotation[perm[v]] = rot.iter().map(|&w| perm[w]).collect();
        }
        EmbeddedGraph {
            graph: self.graph.permute(perm),
            rotation,
        }
    }

    /// One line per vertex: `v: n1 n2 n3`.
    pub fn to_rotation_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Debug for EmbeddedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EmbeddedGraph({:?})", self.rotation)
    }
}

impl fmt::Display for EmbeddedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, rot) in self.rotation.iter().enumerate() {
            let list: Vec<String> = rot.iter().map(|w| w.to_string()).collect();
            writeln!(f, "{v}: {}", list.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for EmbeddedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let bad = || Error::InvalidRotation(format!("cannot parse line {line:?}"));
            let (head, tail) = line.split_once(':').ok_or_else(bad)?;
            let v = head.trim().parse::<usize>().map_err(|_| bad())?;
            let nbrs = tail
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            rows.push((v, nbrs));
        }
        rows.sort_by_key(|r| r.0);
        if rows.iter().enumerate().any(|(i, r)| r.0 != i) {
            return Err(Error::InvalidRotation(
                "vertex ids must be 0..n-1, each listed once".into(),
            ));
        }
        let n = rows.len();
        let mut edges = Vec::new();
        for (v, nbrs) in &rows {
            for &w in nbrs {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
                if !rows[w].1.contains(v) {
                    return Err(Error::InvalidRotation(format!("{v} lists {w} but not conversely")));
                }
                edges.push((*v, w));
            }
        }
        let graph = Graph::from_edges(n, &edges)?;
        EmbeddedGraph::new(graph, rows.into_iter().map(|r| r.1).collect())
    }
}

/// Free-function form of [`EmbeddedGraph::faces`].
pub fn faces(g: &EmbeddedGraph) -> Vec<FaceWalk> {
    g.faces()
}

/// The 3-cube (vertices labelled by binary coordinates) drawn as two nested
/// squares `0 1 3 2` and `4 5 7 6`.
pub fn cube_seed() -> EmbeddedGraph {
    let rotation = vec![
        vec![1, 4, 2],
        vec![3, 5, 0],
        vec![3, 0, 6],
        vec![2, 7, 1],
        vec![5, 6, 0],
        vec![7, 4, 1],
        vec![7, 2, 4],
        vec![3, 6, 5],
    ];
    EmbeddedGraph::new(Graph::cube(), rotation).expect("cube rotation is planar")
}
