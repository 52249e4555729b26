//! Simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` row per vertex, so neighborhoods,
//! subsets and twin tests are single-word operations.

mod canon;
mod graph6;

pub use canon::{
    automorphism_generators, canonical_form, canonical_graph, is_isomorphic, is_vertex_transitive, orbits,
    CanonicalForm,
};
pub use graph6::{parse_graph6_lines, read_graph6, write_graph6};

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// Iterates the set bits of a word, lowest first.
#[derive(Clone, Copy)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

#[inline]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// An immutable simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Self { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.adj[u] |= bit(v);
            g.adj[v] |= bit(u);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, validating symmetry and loops.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        check_size(n)?;
        let mask = low_mask(n);
        for (u, &row) in adj.iter().enumerate() {
            if row & !mask != 0 {
                let vertex = (row & !mask).trailing_zeros() as usize;
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            if row & bit(u) != 0 {
                return Err(Error::SelfLoop(u));
            }
            for v in Bits(row) {
                if adj[v] & bit(u) == 0 {
                    return Err(Error::Precondition(format!("adjacency is not symmetric at ({u},{v})")));
                }
            }
        }
        Ok(Self { n, adj })
    }

    /// Trusted constructor for rows already known to be a valid adjacency.
    pub(crate) fn from_rows_unchecked(adj: Vec<u64>) -> Self {
        debug_assert!(Self::from_adjacency(adj.clone()).is_ok());
        Self { n: adj.len(), adj }
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Precondition(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        check_size(n)?;
        let mask = low_mask(n);
        Ok(Self {
            n,
            adj: (0..n).map(|u| mask & !bit(u)).collect(),
        })
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let n = a + b;
        check_size(n)?;
        let left = low_mask(a);
        let right = low_mask(n) & !left;
        Ok(Self {
            n,
            adj: (0..n).map(|u| if u < a { right } else { left }).collect(),
        })
    }

    /// The 3-cube with vertices labelled by their coordinates as binary numbers.
    pub fn cube() -> Self {
        let edges: Vec<_> = (0..8usize)
            .flat_map(|u| (0..3).map(move |k| (u, u ^ (1 << k))))
            .filter(|&(u, v)| u < v)
            .collect();
        Self::from_edges(8, &edges).expect("cube is a valid graph")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    /// Neighborhood of `u` as a bitset.
    #[inline]
    pub fn neighbors(&self, u: usize) -> u64 {
        self.adj[u]
    }

    pub fn neighbor_iter(&self, u: usize) -> Bits {
        Bits(self.adj[u])
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| Bits(self.adj[u] & !low_mask(u + 1)).map(move |v| (u, v)))
            .collect()
    }

    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    /// Common degree if the graph is regular. The empty graph on zero
    /// vertices counts as 0-regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, |r| r.count_ones() as usize);
        self.adj.iter().all(|r| r.count_ones() as usize == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_of(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// Vertices reachable from `start` using only vertices in `within`.
    pub(crate) fn component_of(&self, start: usize, within: u64) -> u64 {
        let mut seen = bit(start);
        let mut frontier = bit(start);
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components of the subgraph induced by `within`, ordered by
    /// their smallest vertex.
    pub fn components_within(&self, within: u64) -> Vec<u64> {
        let mut rest = within & self.vertex_mask();
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.component_of(rest.trailing_zeros() as usize, rest);
            out.push(c);
            rest &= !c;
        }
        out
    }

    pub fn components(&self) -> Vec<u64> {
        self.components_within(self.vertex_mask())
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Subgraph induced by the vertex set `s`, relabelled `0..|s|` in
    /// ascending order. Also returns the new-to-old vertex map.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut mask = 0u64;
        for &v in s {
            self.check_vertex(v)?;
            mask |= bit(v);
        }
        Ok(self.induced_by_mask(mask))
    }

    pub(crate) fn induced_by_mask(&self, mask: u64) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = Bits(mask).collect();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| Bits(self.adj[v] & mask).fold(0u64, |acc, w| acc | bit(index[w])))
            .collect();
        (Graph { n: map.len(), adj }, map)
    }

    /// `X \ u`: the subgraph induced on all other vertices.
    pub fn delete_vertex(&self, u: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        Ok(self.induced_by_mask(self.vertex_mask() & !bit(u)).0)
    }

    /// `X \ e`: same vertex set, one edge fewer.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        let mut adj = self.adj.clone();
        adj[u] &= !bit(v);
        adj[v] &= !bit(u);
        Ok(Graph { n: self.n, adj })
    }

    /// Adds an edge, returning a new graph.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let mut adj = self.adj.clone();
        adj[u] |= bit(v);
        adj[v] |= bit(u);
        Ok(Graph { n: self.n, adj })
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            adj[perm[u]] = Bits(self.adj[u]).fold(0, |acc, w| acc | bit(perm[w]));
        }
        Graph { n: self.n, adj }
    }

    /// Two-coloring of a connected graph, or an odd cycle certificate.
    pub fn bipartition(&self) -> Result<Bipartiteness> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.two_color())
    }

    pub fn is_bipartite(&self) -> bool {
        self.components()
            .into_iter()
            .all(|c| self.two_color_from(c.trailing_zeros() as usize).is_ok())
    }

    fn two_color(&self) -> Bipartiteness {
        if self.n == 0 {
            return Bipartiteness::Bipartite(Bipartition { side: Vec::new() });
        }
        match self.two_color_from(0) {
            Ok(side) => Bipartiteness::Bipartite(Bipartition { side }),
            Err(cycle) => Bipartiteness::NotBipartite(cycle),
        }
    }

    /// BFS coloring of the component of `root`; vertices outside it get side 0.
    fn two_color_from(&self, root: usize) -> std::result::Result<Vec<u8>, Vec<usize>> {
        let mut side = vec![u8::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        side[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in self.neighbor_iter(u) {
                if side[v] == u8::MAX {
                    side[v] = side[u] ^ 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if side[v] == side[u] {
                    return Err(odd_cycle(&parent, u, v));
                }
            }
        }
        for s in &mut side {
            if *s == u8::MAX {
                *s = 0;
            }
        }
        Ok(side)
    }

    /// Partition of the vertices into classes of identical neighborhoods.
    pub fn twin_classes(&self) -> TwinPartition {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut rows: Vec<u64> = Vec::new();
        for u in 0..self.n {
            match rows.iter().position(|&r| r == self.adj[u]) {
                Some(i) => classes[i].push(u),
                None => {
                    rows.push(self.adj[u]);
                    classes.push(vec![u]);
                }
            }
        }
        TwinPartition { classes }
    }

    /// Contracts every twin class to a single vertex.
    pub fn twin_quotient(&self) -> Graph {
        let classes = self.twin_classes().classes;
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let mut adj = vec![0u64; reps.len()];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                if self.has_edge(a, b) {
                    adj[i] |= bit(j);
                }
            }
        }
        Graph { n: reps.len(), adj }
    }

    /// Length of a shortest cycle; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for root in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                    break;
                }
                for v in self.neighbor_iter(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Whether removing the vertex set `removed` disconnects the rest.
    /// Fewer than two remaining vertices never count as disconnected.
    pub fn separates(&self, removed: u64) -> bool {
        let rest = self.vertex_mask() & !removed;
        if rest.count_ones() < 2 {
            return false;
        }
        self.component_of(rest.trailing_zeros() as usize, rest) != rest
    }

    /// Minimum number of vertices whose removal disconnects the graph
    /// (`n - 1` for complete graphs). Found by trying removal sets of
    /// increasing size.
    pub fn vertex_connectivity(&self) -> Result<usize> {
        if self.n < 2 {
            return Err(Error::Precondition("vertex connectivity needs n >= 2".into()));
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let min_degree = (0..self.n).map(|u| self.degree(u)).min().unwrap_or(0);
        for k in 1..min_degree {
            if self.find_separator(k, 0, 0).is_some() {
                return Ok(k);
            }
        }
        // Nothing smaller separates; the neighborhood of a minimum-degree
        // vertex does, unless the graph is complete (then it is n - 1).
        Ok(min_degree)
    }

    fn find_separator(&self, k: usize, from: usize, chosen: u64) -> Option<u64> {
        if k == 0 {
            return self.separates(chosen).then_some(chosen);
        }
        (from..self.n).find_map(|v| self.find_separator(k - 1, v + 1, chosen | bit(v)))
    }

    /// All vertex pairs whose removal disconnects the graph.
    pub fn two_cuts(&self) -> Result<Vec<(usize, usize)>> {
        if self.n < 2 {
            return Err(Error::Precondition("two_cuts needs n >= 2".into()));
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.separates(bit(u) | bit(v)) {
                    out.push((u, v));
                }
            }
        }
        Ok(out)
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::TooManyVertices { n, max: MAX_VERTICES })
    } else {
        Ok(())
    }
}

/// Odd cycle through the non-tree edge `{u, v}` joining two same-colored
/// vertices of a BFS tree.
fn odd_cycle(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    let to_root = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let mut pu = to_root(u);
    let mut pv = to_root(v);
    // Strip the shared tail above the lowest common ancestor.
    while pu.len() >= 2 && pv.len() >= 2 && pu[pu.len() - 2] == pv[pv.len() - 2] {
        pu.pop();
        pv.pop();
    }
    pv.pop();
    pv.reverse();
    pu.extend(pv);
    pu
}

/// A proper two-coloring: `side[v]` is 0 or 1 and vertex 0 is on side 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub side: Vec<u8>,
}

impl Bipartition {
    pub fn part(&self, s: u8) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| self.side[v] == s).collect()
    }

    /// Checks that every edge of `g` joins the two sides.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.side.len() != g.n() {
            return Err(Error::InvalidBipartition(format!(
                "{} labels for {} vertices",
                self.side.len(),
                g.n()
            )));
        }
        if let Some(&s) = self.side.iter().find(|&&s| s > 1) {
            return Err(Error::InvalidBipartition(format!("side label {s}")));
        }
        for (u, v) in g.edges() {
            if self.side[u] == self.side[v] {
                return Err(Error::InvalidBipartition(format!("edge {{{u},{v}}} within one side")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartiteness {
    Bipartite(Bipartition),
    /// Closed walk of odd length; consecutive entries (cyclically) are adjacent.
    NotBipartite(Vec<usize>),
}

/// Twin classes sorted by their minimum member, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwinPartition {
    pub classes: Vec<Vec<usize>>,
}

impl TwinPartition {
    pub fn has_nontrivial_twins(&self) -> bool {
        self.classes.iter().any(|c| c.len() >= 2)
    }
}
