//! Canonical labelling by individualization and refinement.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, individualize each vertex of the smallest non-singleton
//! cell in turn, and compare the relabelled graphs at the discrete leaves.
//! The canonical form is the largest leaf graph. Leaves that produce the
//! same graph yield automorphisms, which prune sibling subtrees by orbit and
//! trigger a jump back to the common ancestor.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{bit, Bits, Graph, MAX_VERTICES};
use crate::error::{Error, Result};

/// Isomorphism-class certificate: the vertex count followed by the
/// canonically relabelled adjacency matrix, row-major, bit-packed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    Ok(Search::run(g)?.form())
}

/// The canonical form together with the canonically relabelled graph.
pub fn canonical_graph(g: &Graph) -> Result<(CanonicalForm, Graph)> {
    let search = Search::run(g)?;
    let form = search.form();
    let rows = search.best.map(|l| l.rows).unwrap_or_default();
    Ok((form, Graph::from_rows_unchecked(rows)))
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        // Still validate sizes so the error contract holds.
        check(g)?;
        check(h)?;
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

/// Generators of the automorphism group, as images `perm[v]`.
pub fn automorphism_generators(g: &Graph) -> Result<Vec<Vec<usize>>> {
    Ok(Search::run(g)?.generators)
}

/// Orbit representative (smallest member) of every vertex under `Aut(g)`.
pub fn orbits(g: &Graph) -> Result<Vec<usize>> {
    let gens = automorphism_generators(g)?;
    let mut uf = UnionFind::new(g.n());
    for p in &gens {
        for (v, &w) in p.iter().enumerate() {
            uf.union(v, w);
        }
    }
    Ok((0..g.n()).map(|v| uf.min_of(v)).collect())
}

pub fn is_vertex_transitive(g: &Graph) -> Result<bool> {
    Ok(orbits(g)?.iter().all(|&r| r == 0))
}

fn check(g: &Graph) -> Result<()> {
    if g.n() > MAX_VERTICES {
        Err(Error::TooManyVertices {
            n: g.n(),
            max: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

struct Leaf {
    rows: Vec<u64>,
    lab: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn run(g: &'a Graph) -> Result<Self> {
        check(g)?;
        let mut s = Search {
            adj: g.adjacency(),
            n: g.n(),
            first: None,
            best: None,
            generators: Vec::new(),
        };
        let mut cells = Vec::new();
        if s.n > 0 {
            cells.push(g.vertex_mask());
            refine(s.adj, &mut cells, VecDeque::from([g.vertex_mask()]));
        }
        s.node(cells, &mut Vec::new());
        Ok(s)
    }

    fn form(&self) -> CanonicalForm {
        let n = self.n;
        let rows = self.best.as_ref().map(|l| l.rows.as_slice()).unwrap_or(&[]);
        let mut bytes = vec![n as u8];
        let mut acc = 0u8;
        let mut filled = 0;
        for row in rows {
            for j in 0..n {
                acc = (acc << 1) | ((row >> j) & 1) as u8;
                filled += 1;
                if filled == 8 {
                    bytes.push(acc);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            bytes.push(acc << (8 - filled));
        }
        CanonicalForm(bytes)
    }

    /// Explores the subtree below an equitable partition. Returns the depth
    /// to jump back to after an automorphism discovery.
    fn node(&mut self, cells: Vec<u64>, path: &mut Vec<usize>) -> Option<usize> {
        if cells.len() == self.n {
            return self.leaf(&cells, path);
        }
        let (target, cell) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, &c)| (i, c))
            .expect("non-discrete partition has a non-singleton cell");

        let depth = path.len();
        let mut explored = 0u64;
        let mut known_gens = 0;
        let mut orbit_mask: Vec<u64> = Vec::new();
        for v in Bits(cell) {
            if explored != 0 {
                if known_gens != self.generators.len() || orbit_mask.is_empty() {
                    known_gens = self.generators.len();
                    orbit_mask = self.stabilizer_orbits(path);
                }
                if orbit_mask[v] & explored != 0 {
                    continue;
                }
            }
            explored |= bit(v);
            let mut child = cells.clone();
            child[target] = cell & !bit(v);
            child.insert(target, bit(v));
            refine(self.adj, &mut child, VecDeque::from([bit(v)]));
            path.push(v);
            let jump = self.node(child, path);
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    /// Orbits, as masks, of the group generated by the automorphisms found so
    /// far that fix every vertex on `path`.
    fn stabilizer_orbits(&self, path: &[usize]) -> Vec<u64> {
        let mut uf = UnionFind::new(self.n);
        for p in &self.generators {
            if path.iter().all(|&v| p[v] == v) {
                for (v, &w) in p.iter().enumerate() {
                    uf.union(v, w);
                }
            }
        }
        let mut by_root = vec![0u64; self.n];
        for v in 0..self.n {
            by_root[uf.find(v)] |= bit(v);
        }
        (0..self.n).map(|v| by_root[uf.find(v)]).collect()
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> Option<usize> {
        let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut pos = [0usize; MAX_VERTICES];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i;
        }
        let rows: Vec<u64> = lab
            .iter()
            .map(|&v| Bits(self.adj[v]).fold(0u64, |acc, w| acc | bit(pos[w])))
            .collect();
        let leaf = Leaf {
            rows,
            lab,
            path: path.to_vec(),
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                rows: leaf.rows.clone(),
                lab: leaf.lab.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if leaf.rows == first.rows {
            let jump = common_prefix(&leaf.path, &first.path);
            let gamma = mapping(&first.lab, &leaf.lab);
            self.generators.push(gamma);
            return Some(jump);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match leaf.rows.cmp(&best.rows) {
            std::cmp::Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Equal => {
                let jump = common_prefix(&leaf.path, &best.path);
                let gamma = mapping(&best.lab, &leaf.lab);
                self.generators.push(gamma);
                Some(jump)
            }
            std::cmp::Ordering::Less => None,
        }
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Permutation sending `from[i]` to `to[i]`.
fn mapping(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut p = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        p[a] = b;
    }
    p
}

/// Refines an ordered partition to the coarsest equitable refinement,
/// splitting cells in place by neighbor counts into each splitter.
fn refine(adj: &[u64], cells: &mut Vec<u64>, mut queue: VecDeque<u64>) {
    let mut buckets: Vec<(u32, u64)> = Vec::with_capacity(8);
    while let Some(w) = queue.pop_front() {
        let mut i = 0;
        while i < cells.len() {
            let x = cells[i];
            if x & (x - 1) == 0 {
                i += 1;
                continue;
            }
            buckets.clear();
            for v in Bits(x) {
                let c = (adj[v] & w).count_ones();
                match buckets.binary_search_by_key(&c, |b| b.0) {
                    Ok(k) => buckets[k].1 |= bit(v),
                    Err(k) => buckets.insert(k, (c, bit(v))),
                }
            }
            let k = buckets.len();
            if k == 1 {
                i += 1;
                continue;
            }
            cells.splice(i..i + 1, buckets.iter().map(|b| b.1));
            if let Some(q) = queue.iter().position(|&y| y == x) {
                queue.remove(q);
                queue.extend(buckets.iter().map(|b| b.1));
            } else {
                let largest = buckets
                    .iter()
                    .enumerate()
                    .max_by_key(|(j, b)| (b.1.count_ones(), std::cmp::Reverse(*j)))
                    .map(|(j, _)| j)
                    .unwrap();
                queue.extend(
                    buckets
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != largest)
                        .map(|(_, b)| b.1),
                );
            }
            i += k;
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Unions by keeping the smaller root, so every root is its class minimum.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub(crate) fn min_of(&mut self, x: usize) -> usize {
        self.find(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
        // apply p then q
        p.iter().map(|&x| q[x]).collect()
    }

    /// Size of the group generated by `gens`, by closure (small groups only).
    fn group_order(n: usize, gens: &[Vec<usize>]) -> usize {
        let id: Vec<usize> = (0..n).collect();
        let mut seen = std::collections::HashSet::from([id.clone()]);
        let mut stack = vec![id];
        while let Some(p) = stack.pop() {
            for g in gens {
                let q = compose(&p, g);
                if seen.insert(q.clone()) {
                    stack.push(q);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn permuted_cubes_share_a_form() {
        let cube = Graph::cube();
        let perm = [5, 2, 7, 0, 3, 6, 1, 4];
        assert_eq!(
            canonical_form(&cube).unwrap(),
            canonical_form(&cube.permute(&perm)).unwrap()
        );
    }

    #[test]
    fn canonical_graph_is_isomorphic_and_fixed() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5)]).unwrap();
        let (form, gc) = canonical_graph(&g).unwrap();
        assert_eq!(canonical_form(&gc).unwrap(), form);
        assert_eq!(canonical_graph(&gc).unwrap().1, gc);
        assert_eq!(gc.edge_count(), g.edge_count());
    }

    #[test]
    fn distinct_graphs_have_distinct_forms() {
        let c6 = Graph::cycle(6).unwrap();
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        assert_ne!(canonical_form(&c6).unwrap(), canonical_form(&k33).unwrap());
        assert_eq!(canonical_form(&c6).unwrap(), canonical_form(&c6).unwrap());
        assert!(!is_isomorphic(&Graph::cycle(8).unwrap(), &Graph::cycle(6).unwrap()).unwrap());
        // Same n, same degree sequence, not isomorphic: C6 vs two triangles.
        let two_triangles = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!is_isomorphic(&c6, &two_triangles).unwrap());
    }

    #[test]
    fn trivial_sizes() {
        for n in 0..3 {
            let g = Graph::empty(n).unwrap();
            assert!(is_isomorphic(&g, &g).unwrap());
        }
        assert_ne!(
            canonical_form(&Graph::empty(0).unwrap()).unwrap(),
            canonical_form(&Graph::empty(1).unwrap()).unwrap()
        );
    }

    #[test]
    fn automorphism_group_orders() {
        let cases = [
            (Graph::cube(), 48),
            (Graph::cycle(6).unwrap(), 12),
            (Graph::complete_bipartite(3, 3).unwrap(), 72),
            (Graph::path(3).unwrap(), 2),
            (Graph::complete(4).unwrap(), 24),
        ];
        for (g, order) in cases {
            let gens = automorphism_generators(&g).unwrap();
            for p in &gens {
                assert_eq!(g.permute(p), g, "generator is not an automorphism");
            }
            assert_eq!(group_order(g.n(), &gens), order, "{g:?}");
        }
    }

    #[test]
    fn vertex_transitivity() {
        assert!(is_vertex_transitive(&Graph::complete_bipartite(3, 3).unwrap()).unwrap());
        assert!(!is_vertex_transitive(&Graph::path(3).unwrap()).unwrap());
        assert!(is_vertex_transitive(&Graph::cube()).unwrap());
        assert!(!is_vertex_transitive(&Graph::complete_bipartite(2, 3).unwrap()).unwrap());
    }

    #[test]
    fn rejects_oversized() {
        // Graph itself cannot exceed 64 vertices, so the check is exercised
        // through the constructor.
        assert!(Graph::empty(65).is_err());
        assert!(canonical_form(&Graph::empty(64).unwrap()).is_ok());
    }
}
