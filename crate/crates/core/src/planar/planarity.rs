//! Planarity testing by path addition (Demoucron, Malgrange and Pertuiset)
//! on each biconnected block, with the block embeddings glued at cut
//! vertices. Positive answers carry a rotation system that is re-checked
//! against Euler's formula.

use super::EmbeddedGraph;
use crate::error::{Error, Result};
use crate::graph::{bit, Bits, Graph};

/// An embedding of `g`, or `None` when `g` is not planar.
pub fn planarity_test(g: &Graph) -> Result<Option<EmbeddedGraph>> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for block in blocks(g) {
        let block_rot = if block.len() == 1 {
            let (a, b) = block[0];
            vec![(a, vec![b]), (b, vec![a])]
        } else {
            match embed_block(g.n(), &block) {
                Some(faces) => rotation_from_faces(&faces),
                None => return Ok(None),
            }
        };
        for (v, rot) in block_rot {
            rotation[v].extend(rot);
        }
    }
    EmbeddedGraph::new(g.clone(), rotation).map(Some)
}

/// Biconnected blocks as edge lists (Hopcroft-Tarjan with an edge stack).
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    struct Dfs<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }
    impl Dfs<'_> {
        fn visit(&mut self, u: usize, parent: usize) {
            self.time += 1;
            self.disc[u] = self.time;
            self.low[u] = self.time;
            for w in self.g.neighbor_iter(u) {
                if self.disc[w] == 0 {
                    self.stack.push((u, w));
                    self.visit(w, u);
                    self.low[u] = self.low[u].min(self.low[w]);
                    if self.low[w] >= self.disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = self.stack.pop() {
                            block.push(e);
                            if e == (u, w) {
                                break;
                            }
                        }
                        self.out.push(block);
                    }
                } else if w != parent && self.disc[w] < self.disc[u] {
                    self.stack.push((u, w));
                    self.low[u] = self.low[u].min(self.disc[w]);
                }
            }
        }
    }
    let mut dfs = Dfs {
        g,
        disc: vec![0; g.n()],
        low: vec![0; g.n()],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    dfs.visit(0, usize::MAX);
    dfs.out
}

/// Faces of a planar embedding of a biconnected block, each a cyclic vertex
/// sequence oriented so that every edge is traversed once each way.
fn embed_block(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut adj = vec![0u64; n];
    for &(a, b) in edges {
        adj[a] |= bit(b);
        adj[b] |= bit(a);
    }
    let all = adj
        .iter()
        .enumerate()
        .filter(|(_, &r)| r != 0)
        .fold(0u64, |m, (v, _)| m | bit(v));

    // Start from any cycle: the first edge plus a path back around it.
    let (a, b) = edges[0];
    let cycle = path_avoiding_edge(&adj, b, a)?;
    let mut faces = vec![cycle.clone(), cycle.iter().rev().copied().collect::<Vec<_>>()];
    let mut h_adj = vec![0u64; n];
    for w in cycle
        .windows(2)
        .chain(std::iter::once(&[cycle[cycle.len() - 1], cycle[0]][..]))
    {
        h_adj[w[0]] |= bit(w[1]);
        h_adj[w[1]] |= bit(w[0]);
    }
    let mut h_vertices = cycle.iter().fold(0u64, |m, &v| m | bit(v));

    loop {
        let fragments = fragments(&adj, &h_adj, h_vertices, all);
        if fragments.is_empty() {
            return Some(faces);
        }
        let masks: Vec<u64> = faces.iter().map(|f| f.iter().fold(0u64, |m, &v| m | bit(v))).collect();
        let admissible: Vec<Vec<usize>> = fragments
            .iter()
            .map(|fr| (0..faces.len()).filter(|&i| fr.attachments & !masks[i] == 0).collect())
            .collect();
        if admissible.iter().any(Vec::is_empty) {
            return None;
        }
        let pick = admissible.iter().position(|a| a.len() == 1).unwrap_or(0);
        let face_index = admissible[pick][0];
        let path = fragment_path(&adj, &fragments[pick]);
        for w in path.windows(2) {
            h_adj[w[0]] |= bit(w[1]);
            h_adj[w[1]] |= bit(w[0]);
        }
        h_vertices |= path.iter().fold(0u64, |m, &v| m | bit(v));
        let face = faces.swap_remove(face_index);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }
}

struct Fragment {
    /// Vertices outside the embedded part, empty for a single chord.
    inner: u64,
    attachments: u64,
}

fn fragments(adj: &[u64], h_adj: &[u64], h_vertices: u64, all: u64) -> Vec<Fragment> {
    let mut out = Vec::new();
    for u in Bits(h_vertices) {
        for w in Bits(adj[u] & h_vertices & !h_adj[u]) {
            if u < w {
                out.push(Fragment {
                    inner: 0,
                    attachments: bit(u) | bit(w),
                });
            }
        }
    }
    let mut rest = all & !h_vertices;
    while rest != 0 {
        let start = rest.trailing_zeros() as usize;
        let mut comp = bit(start);
        let mut frontier = bit(start);
        while frontier != 0 {
            let next = Bits(frontier).fold(0u64, |m, v| m | adj[v]) & rest & !comp;
            comp |= next;
            frontier = next;
        }
        rest &= !comp;
        let attachments = Bits(comp).fold(0u64, |m, v| m | adj[v]) & h_vertices;
        out.push(Fragment {
            inner: comp,
            attachments,
        });
    }
    out
}

/// A path through the fragment between two distinct attachment vertices.
fn fragment_path(adj: &[u64], fr: &Fragment) -> Vec<usize> {
    if fr.inner == 0 {
        return Bits(fr.attachments).collect();
    }
    let start = fr.attachments.trailing_zeros() as usize;
    let mut parent = vec![usize::MAX; adj.len()];
    let mut queue: std::collections::VecDeque<usize> = Bits(adj[start] & fr.inner).collect();
    let mut seen = adj[start] & fr.inner;
    for v in Bits(seen) {
        parent[v] = start;
    }
    while let Some(v) = queue.pop_front() {
        if let Some(end) = Bits(adj[v] & fr.attachments & !bit(start)).next() {
            let mut path = vec![end, v];
            let mut x = v;
            while parent[x] != start {
                x = parent[x];
                path.push(x);
            }
            path.push(start);
            path.reverse();
            return path;
        }
        for w in Bits(adj[v] & fr.inner & !seen) {
            seen |= bit(w);
            parent[w] = v;
            queue.push_back(w);
        }
    }
    unreachable!("fragments of a biconnected block have two attachments")
}

/// Splits the face cycle at the path's endpoints, keeping the face's
/// orientation on the old arcs and running the path once in each direction.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let (x, y) = (path[0], path[path.len() - 1]);
    let i = face.iter().position(|&v| v == x).expect("attachment on face");
    let j = face.iter().position(|&v| v == y).expect("attachment on face");
    let k = face.len();
    let inner = &path[1..path.len() - 1];
    let arc = |from: usize, to: usize| {
        let mut out = Vec::new();
        let mut p = from;
        loop {
            out.push(face[p]);
            if p == to {
                break out;
            }
            p = (p + 1) % k;
        }
    };
    let mut f1 = arc(i, j);
    f1.extend(inner.iter().rev());
    let mut f2 = arc(j, i);
    f2.extend(inner.iter());
    (f1, f2)
}

fn path_avoiding_edge(adj: &[u64], from: usize, to: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; adj.len()];
    let mut seen = bit(from);
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        let mut nbrs = adj[v] & !seen;
        if v == from {
            nbrs &= !bit(to);
        }
        for w in Bits(nbrs) {
            seen |= bit(w);
            parent[w] = v;
            if w == to {
                let mut path = vec![to];
                let mut x = to;
                while x != from {
                    x = parent[x];
                    path.push(x);
                }
                // Cycle starting at `to`: to, ..., from, back to `to` by the edge.
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}

/// Rotation at each vertex from oriented faces: a walk `a -> b -> c` means
/// `succ_b(a) = c`.
fn rotation_from_faces(faces: &[Vec<usize>]) -> Vec<(usize, Vec<usize>)> {
    let mut succ: std::collections::BTreeMap<usize, Vec<(usize, usize)>> = Default::default();
    for f in faces {
        let k = f.len();
        for p in 0..k {
            let (a, b, c) = (f[p], f[(p + 1) % k], f[(p + 2) % k]);
            succ.entry(b).or_default().push((a, c));
        }
    }
    succ.into_iter()
        .map(|(b, pairs)| {
            let next = |a: usize| pairs.iter().find(|p| p.0 == a).map(|p| p.1).expect("closed rotation");
            let first = pairs[0].0;
            let mut rot = vec![first];
            let mut cur = next(first);
            while cur != first {
                rot.push(cur);
                cur = next(cur);
            }
            (b, rot)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn faces_of(g: &Graph) -> Option<usize> {
        planarity_test(g).unwrap().map(|e| e.faces().len())
    }

    #[test]
    fn kuratowski_graphs() {
        assert_eq!(faces_of(&Graph::complete_bipartite(3, 3).unwrap()), None);
        assert_eq!(faces_of(&Graph::complete(5).unwrap()), None);
        assert_eq!(faces_of(&Graph::complete(4).unwrap()), Some(4));
        assert_eq!(faces_of(&Graph::cube()), Some(6));
        assert_eq!(faces_of(&Graph::complete_bipartite(2, 5).unwrap()), Some(5));
    }

    #[test]
    fn trees_and_cut_vertices() {
        assert_eq!(faces_of(&Graph::path(5).unwrap()), Some(1));
        assert!(planarity_test(&Graph::empty(1).unwrap()).unwrap().is_some());
        // Two triangles sharing a vertex, and a triangle with a pendant path.
        let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(faces_of(&bowtie), Some(3));
        let k33_plus = Graph::complete_bipartite(3, 3).unwrap();
        let mut edges = k33_plus.edges();
        edges.push((5, 6));
        let g = Graph::from_edges(7, &edges).unwrap();
        assert_eq!(faces_of(&g), None);
    }

    #[test]
    fn petersen_is_not_planar() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        let petersen = Graph::from_edges(10, &edges).unwrap();
        assert_eq!(faces_of(&petersen), None);
    }

    #[test]
    fn rejects_disconnected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(planarity_test(&g), Err(Error::Disconnected));
    }
}
