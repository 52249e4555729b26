//! Balancedness: bipartite graphs without induced cycles of length 2 mod 4.
//!
//! Induced cycles are found by growing chordless paths from an anchor
//! vertex. A path may only be extended by a vertex that has no neighbor among
//! the path's interior vertices; a vertex adjacent to the anchor closes the
//! cycle and is never extended further.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, low_mask, Bipartiteness, Bipartition, Bits, Graph};
use crate::matrix::ZeroOneMatrix;

/// Largest matrix dimension accepted by [`matrix_is_balanced_oracle`].
pub const ORACLE_MAX_DIM: usize = 8;

/// A chordless cycle, stored as its cyclic vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct InducedCycle {
    pub vertices: Vec<usize>,
}

impl InducedCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Re-checks the cycle against `g` by direct adjacency tests: distinct
    /// vertices, consecutive pairs adjacent, all other pairs non-adjacent.
    pub fn is_induced_in(&self, g: &Graph) -> bool {
        let k = self.vertices.len();
        if k < 3 || self.vertices.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let mask = self.vertices.iter().fold(0u64, |m, &v| m | bit(v));
        if mask.count_ones() as usize != k {
            return false;
        }
        (0..k).all(|i| {
            let v = self.vertices[i];
            let expected = bit(self.vertices[(i + 1) % k]) | bit(self.vertices[(i + k - 1) % k]);
            g.neighbors(v) & mask == expected
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "witness")]
pub enum BalanceReason {
    /// Odd closed walk.
    NotBipartite(Vec<usize>),
    /// Induced cycle of length 2 mod 4.
    BadCycle(InducedCycle),
    Balanced,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub balanced: bool,
    pub reason: BalanceReason,
}

/// Depth-first chordless path search anchored at `start`.
struct CycleSearch<'a, F> {
    adj: &'a [u64],
    start: usize,
    allowed: u64,
    canonical: bool,
    max_len: usize,
    visit: F,
    path: Vec<usize>,
}

impl<F: FnMut(&[usize]) -> ControlFlow<()>> CycleSearch<'_, F> {
    fn run(&mut self) -> ControlFlow<()> {
        self.path.clear();
        self.path.push(self.start);
        self.extend(bit(self.start), 0)
    }

    /// `blocked` is the union of the neighborhoods of the interior vertices
    /// (every path vertex except the anchor and the current end).
    fn extend(&mut self, on_path: u64, blocked: u64) -> ControlFlow<()> {
        let len = self.path.len();
        let x = self.path[len - 1];
        let anchor = bit(self.start);
        let candidates = self.adj[x] & self.allowed & !on_path & !blocked;
        let next_blocked = if len >= 2 { blocked | self.adj[x] } else { blocked };
        for y in Bits(candidates) {
            if len >= 2 && self.adj[y] & anchor != 0 {
                if len < self.max_len && (!self.canonical || y > self.path[1]) {
                    self.path.push(y);
                    let flow = (self.visit)(&self.path);
                    self.path.pop();
                    flow?;
                }
            } else if len + 2 <= self.max_len {
                self.path.push(y);
                let flow = self.extend(on_path | bit(y), next_blocked);
                self.path.pop();
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Visits every induced cycle of `g` exactly once, with its minimum vertex
/// first and its smaller neighbor second. Stops when `visit` breaks.
pub fn for_each_induced_cycle<F>(g: &Graph, max_len: Option<usize>, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let max_len = max_len.unwrap_or(g.n());
    for s in 0..g.n() {
        let mut search = CycleSearch {
            adj: g.adjacency(),
            start: s,
            allowed: g.vertex_mask() & !low_mask(s + 1),
            canonical: true,
            max_len,
            visit: &mut visit,
            path: Vec::with_capacity(g.n()),
        };
        search.run()?;
    }
    ControlFlow::Continue(())
}

/// All induced cycles of length at most `max_len` (unbounded when `None`).
pub fn enumerate_induced_cycles(g: &Graph, max_len: Option<usize>) -> Vec<InducedCycle> {
    let mut out = Vec::new();
    let _ = for_each_induced_cycle(g, max_len, |c| {
        out.push(InducedCycle { vertices: c.to_vec() });
        ControlFlow::Continue(())
    });
    out
}

/// First induced cycle of length 2 mod 4.
///
/// Only one vertex per twin class is searched. An induced cycle through two
/// twins is a 4-cycle, and in any longer induced cycle each vertex can be
/// swapped for its twin without losing the cycle, so every bad cycle has a
/// copy on the class representatives. This keeps blown-up graphs such as
/// `(l,t)`-cycles, which have `t^l` induced `l`-cycles, cheap to check.
fn find_bad_cycle(g: &Graph) -> Option<InducedCycle> {
    let reps = g.twin_classes().classes.iter().fold(0u64, |m, c| m | bit(c[0]));
    let mut found = None;
    for s in Bits(reps) {
        let mut search = CycleSearch {
            adj: g.adjacency(),
            start: s,
            allowed: reps & !low_mask(s + 1),
            canonical: true,
            max_len: g.n(),
            visit: |c: &[usize]| {
                if c.len() % 4 == 2 {
                    found = Some(InducedCycle { vertices: c.to_vec() });
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            },
            path: Vec::with_capacity(g.n()),
        };
        if search.run().is_break() {
            break;
        }
    }
    found
}

/// Whether an induced cycle of length 2 mod 4 passes through `v`, looking
/// only at the subgraph induced by `within` (which must contain `v`).
pub(crate) fn has_bad_cycle_through(adj: &[u64], v: usize, within: u64) -> bool {
    let mut search = CycleSearch {
        adj,
        start: v,
        allowed: within,
        canonical: false,
        max_len: within.count_ones() as usize,
        visit: |c: &[usize]| {
            if c.len() % 4 == 2 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        },
        path: Vec::with_capacity(64),
    };
    search.run().is_break()
}

/// Decides balancedness of a connected graph, with a witness when it fails.
pub fn is_balanced(g: &Graph) -> Result<BalanceReport> {
    match g.bipartition()? {
        Bipartiteness::NotBipartite(walk) => Ok(BalanceReport {
            balanced: false,
            reason: BalanceReason::NotBipartite(walk),
        }),
        Bipartiteness::Bipartite(_) => Ok(match find_bad_cycle(g) {
            Some(c) => BalanceReport {
                balanced: false,
                reason: BalanceReason::BadCycle(c),
            },
            None => BalanceReport {
                balanced: true,
                reason: BalanceReason::Balanced,
            },
        }),
    }
}

/// Shorthand for `is_balanced(g)?.balanced`.
pub fn balanced(g: &Graph) -> Result<bool> {
    Ok(is_balanced(g)?.balanced)
}

/// Rows indexed by side-0 vertices, columns by side-1 vertices, both in
/// ascending vertex order.
pub fn bipartite_adjacency_matrix(g: &Graph, b: &Bipartition) -> Result<ZeroOneMatrix> {
    b.validate(g)?;
    let rows = b.part(0);
    let cols = b.part(1);
    let mut m = ZeroOneMatrix::zeros(rows.len(), cols.len())?;
    for (i, &u) in rows.iter().enumerate() {
        for (j, &v) in cols.iter().enumerate() {
            if g.has_edge(u, v) {
                m.set(i, j, true);
            }
        }
    }
    Ok(m)
}

/// The matrix-side definition, checked exhaustively: every submatrix that
/// has exactly two nonzeros in each row and column, and is minimal with that
/// property, must have entry sum divisible by 4.
pub fn matrix_is_balanced_oracle(a: &ZeroOneMatrix) -> Result<bool> {
    let (r, c) = (a.rows(), a.cols());
    if r > ORACLE_MAX_DIM || c > ORACLE_MAX_DIM {
        return Err(Error::MatrixTooLarge {
            rows: r,
            cols: c,
            max_rows: ORACLE_MAX_DIM,
            max_cols: ORACLE_MAX_DIM,
        });
    }
    let rows = a.row_slice();
    let columns: Vec<u64> = (0..c).map(|j| a.column_bits(j)).collect();
    let mut qualifying: Vec<(u64, u64)> = Vec::new();
    for rs in 0u64..1 << r {
        if rs.count_ones() < 2 {
            continue;
        }
        for cs in 0u64..1 << c {
            if cs.count_ones() < 2 {
                continue;
            }
            let rows_ok = Bits(rs).all(|i| (rows[i] & cs).count_ones() == 2);
            if rows_ok && Bits(cs).all(|j| (columns[j] & rs).count_ones() == 2) {
                qualifying.push((rs, cs));
            }
        }
    }
    let contains =
        |outer: (u64, u64), inner: (u64, u64)| inner != outer && inner.0 & !outer.0 == 0 && inner.1 & !outer.1 == 0;
    Ok(qualifying.iter().all(|&q| {
        let minimal = !qualifying.iter().any(|&p| contains(q, p));
        let sum = 2 * q.0.count_ones();
        !minimal || sum % 4 == 0
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: every vertex subset of size >= 3 whose induced subgraph
    /// is connected and 2-regular is an induced cycle.
    fn brute_force_cycles(g: &Graph) -> Vec<u64> {
        let n = g.n();
        (0u64..1 << n)
            .filter(|&s| {
                s.count_ones() >= 3
                    && Bits(s).all(|v| (g.neighbors(v) & s).count_ones() == 2)
                    && g.component_of(s.trailing_zeros() as usize, s) == s
            })
            .collect()
    }

    fn mask_of(c: &InducedCycle) -> u64 {
        c.vertices.iter().fold(0, |m, &v| m | bit(v))
    }

    #[test]
    fn cycle_graph_has_one_cycle() {
        let c6 = Graph::cycle(6).unwrap();
        let cycles = enumerate_induced_cycles(&c6, None);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].vertices, vec![0, 1, 2, 3, 4, 5]);
        assert!(enumerate_induced_cycles(&c6, Some(5)).is_empty());
    }

    #[test]
    fn k33_cycles_match_brute_force() {
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        let brute = brute_force_cycles(&k33);
        assert_eq!(brute.len(), 9);
        assert!(brute.iter().all(|s| s.count_ones() == 4));
        let cycles = enumerate_induced_cycles(&k33, None);
        assert_eq!(cycles.len(), 9);
        assert!(cycles.iter().all(|c| c.len() == 4 && c.is_induced_in(&k33)));
    }

    #[test]
    fn cube_cycles_match_brute_force() {
        let cube = Graph::cube();
        let brute = brute_force_cycles(&cube);
        let fours = brute.iter().filter(|s| s.count_ones() == 4).count();
        let sixes = brute.iter().filter(|s| s.count_ones() == 6).count();
        let eights = brute.iter().filter(|s| s.count_ones() == 8).count();
        assert_eq!((fours, eights), (6, 0));
        assert!(sixes > 0);
        let mut found: Vec<u64> = enumerate_induced_cycles(&cube, None).iter().map(mask_of).collect();
        found.sort_unstable();
        let mut brute = brute;
        brute.sort_unstable();
        assert_eq!(found, brute);
    }

    #[test]
    fn triangles_are_found() {
        let k4 = Graph::complete(4).unwrap();
        let cycles = enumerate_induced_cycles(&k4, None);
        assert_eq!(cycles.len(), 4);
        assert!(cycles.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn balance_examples() {
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        assert_eq!(is_balanced(&k33).unwrap().reason, BalanceReason::Balanced);
        let c6 = Graph::cycle(6).unwrap();
        match is_balanced(&c6).unwrap().reason {
            BalanceReason::BadCycle(c) => {
                assert_eq!(c.len(), 6);
                assert!(c.is_induced_in(&c6));
            }
            other => panic!("{other:?}"),
        }
        match is_balanced(&Graph::cycle(5).unwrap()).unwrap().reason {
            BalanceReason::NotBipartite(w) => assert_eq!(w.len() % 2, 1),
            other => panic!("{other:?}"),
        }
        assert!(balanced(&Graph::cycle(8).unwrap()).unwrap());
        assert!(!balanced(&Graph::cycle(10).unwrap()).unwrap());
        assert!(balanced(&Graph::complete(2).unwrap()).unwrap());
        assert!(balanced(&Graph::empty(1).unwrap()).unwrap());
        assert!(balanced(&Graph::empty(0).unwrap()).unwrap());
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(is_balanced(&two_edges), Err(Error::Disconnected));
    }

    #[test]
    fn bad_cycle_through_vertex() {
        let c6 = Graph::cycle(6).unwrap();
        assert!(has_bad_cycle_through(c6.adjacency(), 3, c6.vertex_mask()));
        assert!(!has_bad_cycle_through(c6.adjacency(), 3, c6.vertex_mask() & !bit(0)));
        let c8 = Graph::cycle(8).unwrap();
        assert!(!has_bad_cycle_through(c8.adjacency(), 0, c8.vertex_mask()));
    }

    #[test]
    fn bipartite_matrix_examples() {
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        let b = match k33.bipartition().unwrap() {
            Bipartiteness::Bipartite(b) => b,
            _ => unreachable!(),
        };
        let m = bipartite_adjacency_matrix(&k33, &b).unwrap();
        assert_eq!(m.to_string(), "111\n111\n111");
        let c4 = Graph::cycle(4).unwrap();
        let b = Bipartition { side: vec![0, 1, 0, 1] };
        assert_eq!(bipartite_adjacency_matrix(&c4, &b).unwrap().to_string(), "11\n11");
        // P3 with the center on side 1.
        let p3 = Graph::path(3).unwrap();
        let b = Bipartition { side: vec![0, 1, 0] };
        assert_eq!(bipartite_adjacency_matrix(&p3, &b).unwrap().to_string(), "1\n1");
        let bad = Bipartition { side: vec![0, 0, 1] };
        assert!(matches!(
            bipartite_adjacency_matrix(&p3, &bad),
            Err(Error::InvalidBipartition(_))
        ));
    }

    #[test]
    fn matrix_oracle_examples() {
        let ones: ZeroOneMatrix = "111\n111\n111".parse().unwrap();
        assert!(matrix_is_balanced_oracle(&ones).unwrap());
        let c6: ZeroOneMatrix = "110\n011\n101".parse().unwrap();
        assert!(!matrix_is_balanced_oracle(&c6).unwrap());
        let one: ZeroOneMatrix = "1".parse().unwrap();
        assert!(matrix_is_balanced_oracle(&one).unwrap());
        let big = ZeroOneMatrix::zeros(9, 2).unwrap();
        assert!(matches!(
            matrix_is_balanced_oracle(&big),
            Err(Error::MatrixTooLarge { .. })
        ));
    }
}
