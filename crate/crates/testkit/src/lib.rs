//! Slow reference implementations used to cross-check the fast algorithms
//! in `balgraph`, and random instance generators for the property suites.
//!
//! Everything here favours being obviously correct over being quick. The
//! oracles are only meant for small inputs (ten or so vertices, a dozen
//! columns).

use std::collections::{BTreeSet, VecDeque};

use balgraph::graph::{canonical_form, CanonicalForm};
use balgraph::matrix::ZeroOneMatrix;
use balgraph::Graph;
use rand::Rng;

fn bit(i: usize) -> u64 {
    1u64 << i
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Vertex sets (as masks) of all induced cycles, found by testing every
/// subset of at least three vertices: the subset must induce a connected
/// 2-regular graph.
pub fn brute_force_induced_cycles(g: &Graph) -> BTreeSet<u64> {
    assert!(g.n() <= 20, "subset brute force is exponential");
    let mut out = BTreeSet::new();
    for s in 0u64..1 << g.n() {
        if s.count_ones() < 3 {
            continue;
        }
        if bits(s).all(|v| (g.neighbors(v) & s).count_ones() == 2) && connected_within(g, s) {
            out.insert(s);
        }
    }
    out
}

fn connected_within(g: &Graph, s: u64) -> bool {
    let start = s.trailing_zeros() as usize;
    let mut seen = bit(start);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for w in bits(g.neighbors(v) & s & !seen) {
            seen |= bit(w);
            queue.push_back(w);
        }
    }
    seen == s
}

/// Every column subset (as a mask) whose supports partition the rows.
pub fn brute_force_exact_covers(a: &ZeroOneMatrix) -> Vec<u64> {
    assert!(a.cols() <= 20, "subset brute force is exponential");
    let all_rows = if a.rows() == 64 { u64::MAX } else { bit(a.rows()) - 1 };
    let columns: Vec<u64> = (0..a.cols()).map(|j| a.column_bits(j)).collect();
    (0u64..1 << a.cols())
        .filter(|&s| {
            let mut covered = 0u64;
            for j in bits(s) {
                if covered & columns[j] != 0 {
                    return false;
                }
                covered |= columns[j];
            }
            covered == all_rows
        })
        .collect()
}

/// The bipartite graph of a 0/1 matrix: rows are vertices `0..r`, columns
/// are `r..r+c`.
pub fn graph_from_biadjacency(a: &ZeroOneMatrix) -> Graph {
    let r = a.rows();
    let mut edges = Vec::new();
    for i in 0..r {
        for j in 0..a.cols() {
            if a.get(i, j) {
                edges.push((i, r + j));
            }
        }
    }
    Graph::from_edges(r + a.cols(), &edges).expect("at most 64 vertices")
}

/// Row `i` of an `r x c` matrix as an integer with column 0 most
/// significant, so integer order is lexicographic order.
fn row_matrix(c: usize, rows: &[u64]) -> ZeroOneMatrix {
    let spread: Vec<u64> = rows
        .iter()
        .map(|&key| (0..c).filter(|&j| key & bit(c - 1 - j) != 0).fold(0, |m, j| m | bit(j)))
        .collect();
    ZeroOneMatrix::from_row_bits(c, spread).expect("small matrix")
}

fn columns_non_increasing(rows: &[u64], c: usize) -> bool {
    let r = rows.len();
    let col_key = |j: usize| {
        (0..r)
            .filter(|&i| rows[i] & bit(c - 1 - j) != 0)
            .fold(0u64, |m, i| m | bit(r - 1 - i))
    };
    (1..c).all(|j| col_key(j - 1) >= col_key(j))
}

/// All `r x c` matrices without zero rows or columns whose rows and columns
/// are both in non-increasing lexicographic order. Every bipartite graph
/// with sides of sizes `r` and `c` and no isolated vertex has a
/// biadjacency matrix of this shape.
pub fn doubly_sorted_matrices(r: usize, c: usize) -> Vec<ZeroOneMatrix> {
    fn go(r: usize, c: usize, rows: &mut Vec<u64>, out: &mut Vec<ZeroOneMatrix>) {
        if rows.len() == r {
            let union = rows.iter().fold(0, |m, &x| m | x);
            if union == bit(c) - 1 && columns_non_increasing(rows, c) {
                out.push(row_matrix(c, rows));
            }
            return;
        }
        let top = rows.last().copied().unwrap_or(bit(c) - 1);
        for key in (1..=top).rev() {
            rows.push(key);
            go(r, c, rows, out);
            rows.pop();
        }
    }
    let mut out = Vec::new();
    go(r, c, &mut Vec::new(), &mut out);
    out
}

/// Connected bipartite graphs with both sides of size at most `max_side`,
/// each given with its biadjacency matrix. Isomorphic graphs may repeat.
pub fn small_connected_bipartite(max_side: usize) -> Vec<(ZeroOneMatrix, Graph)> {
    let mut out = Vec::new();
    for r in 1..=max_side {
        for c in 1..=max_side {
            for a in doubly_sorted_matrices(r, c) {
                let g = graph_from_biadjacency(&a);
                if g.is_connected() {
                    out.push((a, g));
                }
            }
        }
    }
    out
}

/// Isomorphism classes of connected cubic bipartite graphs on `d`
/// vertices, by listing every `d/2 x d/2` matrix with sorted rows, row
/// sums 3 and column sums 3, and deduplicating by canonical form.
pub fn oracle_cubic_bipartite_classes(d: usize) -> BTreeSet<CanonicalForm> {
    assert!(d.is_multiple_of(2) && d <= 16);
    let m = d / 2;
    let triples: Vec<u64> = (0u64..bit(m)).rev().filter(|x| x.count_ones() == 3).collect();
    let mut out = BTreeSet::new();
    let mut rows = Vec::new();
    let mut col_deg = vec![0usize; m];
    fn go(
        m: usize,
        triples: &[u64],
        from: usize,
        rows: &mut Vec<u64>,
        col_deg: &mut [usize],
        out: &mut BTreeSet<CanonicalForm>,
    ) {
        if rows.len() == m {
            let g = graph_from_biadjacency(&row_matrix(m, rows));
            if g.is_connected() {
                out.insert(canonical_form(&g).expect("small graph"));
            }
            return;
        }
        for (idx, &t) in triples.iter().enumerate().skip(from) {
            if bits(t).any(|j| col_deg[j] == 3) {
                continue;
            }
            bits(t).for_each(|j| col_deg[j] += 1);
            rows.push(t);
            go(m, triples, idx, rows, col_deg, out);
            rows.pop();
            bits(t).for_each(|j| col_deg[j] -= 1);
        }
    }
    go(m, &triples, 0, &mut rows, &mut col_deg, &mut out);
    out
}

/// Isomorphism by trying every bijection (with degree pruning).
pub fn brute_force_isomorphic(g: &Graph, h: &Graph) -> bool {
    fn go(g: &Graph, h: &Graph, map: &mut Vec<usize>, used: u64) -> bool {
        let v = map.len();
        if v == g.n() {
            return true;
        }
        for w in 0..h.n() {
            if used & bit(w) != 0 || g.degree(v) != h.degree(w) {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == h.has_edge(map[u], w)) {
                map.push(w);
                if go(g, h, map, used | bit(w)) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    g.n() == h.n() && g.edge_count() == h.edge_count() && go(g, h, &mut Vec::new(), 0)
}

/// Vertex connectivity from Menger's theorem: the minimum, over
/// non-adjacent pairs, of the number of internally disjoint paths, computed
/// by unit-capacity max flow on the split graph. Complete graphs give `n-1`.
pub fn connectivity_by_flow(g: &Graph) -> usize {
    let n = g.n();
    let mut best = n.saturating_sub(1);
    for s in 0..n {
        for t in s + 1..n {
            if !g.has_edge(s, t) {
                best = best.min(disjoint_paths(g, s, t));
            }
        }
    }
    best
}

fn disjoint_paths(g: &Graph, s: usize, t: usize) -> usize {
    // Node 2v is v's entry, 2v+1 its exit; the arc between has capacity 1
    // except at s and t.
    let n = g.n();
    let size = 2 * n;
    let mut cap = vec![vec![0i32; size]; size];
    for v in 0..n {
        cap[2 * v][2 * v + 1] = if v == s || v == t { n as i32 } else { 1 };
        for w in bits(g.neighbors(v)) {
            cap[2 * v + 1][2 * w] = n as i32;
        }
    }
    let (source, sink) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    loop {
        let mut parent = vec![usize::MAX; size];
        parent[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for y in 0..size {
                if parent[y] == usize::MAX && cap[x][y] > 0 {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if parent[sink] == usize::MAX {
            return flow;
        }
        let mut y = sink;
        while y != source {
            let x = parent[y];
            cap[x][y] -= 1;
            cap[y][x] += 1;
            y = x;
        }
        flow += 1;
    }
}

/// A connected bipartite graph with sides `0..a` and `a..a+b`, each
/// cross edge present with probability `p`; resampled until connected.
pub fn random_connected_bipartite<R: Rng>(rng: &mut R, a: usize, b: usize, p: f64) -> Graph {
    assert!(a >= 1 && b >= 1 && a + b <= 64);
    loop {
        let mut edges = Vec::new();
        for i in 0..a {
            for j in 0..b {
                if rng.gen_bool(p) {
                    edges.push((i, a + j));
                }
            }
        }
        let g = Graph::from_edges(a + b, &edges).expect("within bounds");
        if g.is_connected() {
            return g;
        }
    }
}

/// Adds a new vertex with the same neighborhood as a random vertex `u`.
/// Returns the new graph, `u`, and the new vertex.
pub fn plant_twin<R: Rng>(rng: &mut R, g: &Graph) -> (Graph, usize, usize) {
    let u = rng.gen_range(0..g.n());
    let twin = g.n();
    let mut edges = g.edges();
    edges.extend(bits(g.neighbors(u)).map(|w| (w, twin)));
    (Graph::from_edges(g.n() + 1, &edges).expect("within bounds"), u, twin)
}

/// A uniformly random relabelling of `g`.
pub fn shuffle<R: Rng>(rng: &mut R, g: &Graph) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    for i in (1..perm.len()).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    g.permute(&perm)
}

/// Biadjacency matrix of the `(l,t)`-cycle, built without going through a
/// graph so it works past 64 vertices. Rows are the blown-up even positions
/// of `C_l`, columns the odd ones; for `l = 2` this is the all-ones matrix.
pub fn lt_cycle_biadjacency(l: usize, t: usize) -> ZeroOneMatrix {
    let half = l / 2;
    let mut a = ZeroOneMatrix::zeros(half * t, half * t).expect("at most 64 rows");
    for x in 0..half {
        // Row block x sits at cycle position 2x; its neighbours are 2x-1 and
        // 2x+1, i.e. column blocks x-1 and x (mod l/2).
        for col_block in [x, (x + half - 1) % half] {
            for y in 0..t {
                for z in 0..t {
                    a.set(x * t + y, col_block * t + z, true);
                }
            }
        }
    }
    a
}
