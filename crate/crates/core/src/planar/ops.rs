//! The two local operations that build every 3-connected cubic bipartite
//! planar graph from the cube, and the closure search over them.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{cube_seed, EmbeddedGraph, FaceWalk};
use crate::error::{Error, Result};
use crate::graph::{canonical_form, CanonicalForm, Graph, MAX_VERTICES};

/// Replaces the degree-3 vertex `v` by a cube with one corner removed.
///
/// With `v`'s rotation `a b c`, `v` stays as the gadget centre, three new
/// ports `P_a P_b P_c` (colored like `v`) take over the outside edges, and
/// three new vertices `W_ab W_bc W_ca` (colored like `a b c`) join the
/// centre to consecutive ports. New ids are appended in the order
/// `P_a P_b P_c W_ab W_bc W_ca`.
pub fn diamond_inflation(g: &EmbeddedGraph, v: usize) -> Result<EmbeddedGraph> {
    let n = g.graph().n();
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    let degree = g.graph().degree(v);
    if degree != 3 {
        return Err(Error::WrongDegree {
            vertex: v,
            degree,
            expected: 3,
        });
    }
    if n + 6 > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n: n + 6,
            max: MAX_VERTICES,
        });
    }
    let [a, b, c] = <[usize; 3]>::try_from(g.rotation_at(v)).expect("degree 3");
    let (pa, pb, pc, wab, wbc, wca) = (n, n + 1, n + 2, n + 3, n + 4, n + 5);

    let mut rotation = g.rotation().to_vec();
    for (x, port) in [(a, pa), (b, pb), (c, pc)] {
        replace(&mut rotation[x], v, port);
    }
    rotation[v] = vec![wab, wbc, wca];
    rotation.extend([
        vec![a, wab, wca],
        vec![b, wbc, wab],
        vec![c, wca, wbc],
        vec![pa, pb, v],
        vec![pb, pc, v],
        vec![pc, pa, v],
    ]);
    rebuild(rotation)
}

/// A place to apply A1 subdivision: two darts on face `face` (an index
/// into [`EmbeddedGraph::faces`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct A1Site {
    pub e1: (usize, usize),
    pub e2: (usize, usize),
    pub face: usize,
}

/// Subdivides two non-adjacent edges twice each and joins the four new
/// vertices into a square inside a face both edges bound. The first shared
/// face admitting the operation is used.
pub fn a1_subdivision(g: &EmbeddedGraph, e1: (usize, usize), e2: (usize, usize)) -> Result<EmbeddedGraph> {
    check_pair(g, e1, e2)?;
    let faces = g.faces();
    let mut shared = false;
    for face in &faces {
        if face.edge_position(e1.0, e1.1).is_some() && face.edge_position(e2.0, e2.1).is_some() {
            shared = true;
            if let Ok(h) = apply_a1(g, face, e1, e2) {
                return Ok(h);
            }
        }
    }
    Err(if shared {
        Error::ParityMismatch(e1, e2)
    } else {
        Error::NotCofacial(e1, e2)
    })
}

/// A1 subdivision inside a specific face.
pub fn a1_subdivision_in_face(
    g: &EmbeddedGraph,
    e1: (usize, usize),
    e2: (usize, usize),
    face: usize,
) -> Result<EmbeddedGraph> {
    check_pair(g, e1, e2)?;
    let faces = g.faces();
    let walk = faces.get(face).ok_or(Error::NotCofacial(e1, e2))?;
    apply_a1(g, walk, e1, e2)
}

fn check_pair(g: &EmbeddedGraph, e1: (usize, usize), e2: (usize, usize)) -> Result<()> {
    for (a, b) in [e1, e2] {
        if a >= g.graph().n() || b >= g.graph().n() || !g.graph().has_edge(a, b) {
            return Err(Error::MissingEdge(a, b));
        }
    }
    if e1.0 == e2.0 || e1.0 == e2.1 || e1.1 == e2.0 || e1.1 == e2.1 {
        return Err(Error::AdjacentEdges(e1, e2));
    }
    if g.graph().n() + 4 > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n: g.graph().n() + 4,
            max: MAX_VERTICES,
        });
    }
    Ok(())
}

fn apply_a1(g: &EmbeddedGraph, face: &FaceWalk, e1: (usize, usize), e2: (usize, usize)) -> Result<EmbeddedGraph> {
    let (i, j) = match (face.edge_position(e1.0, e1.1), face.edge_position(e2.0, e2.1)) {
        (Some(i), Some(j)) => (i, j),
        _ => return Err(Error::NotCofacial(e1, e2)),
    };
    // Walk order on the face: u -> v ... x -> y ... back to u.
    let (u, v) = face.darts[i];
    let (x, y) = face.darts[j];
    let offset = (j + face.len() - i) % face.len();
    if !offset.is_multiple_of(2) {
        return Err(Error::ParityMismatch(e1, e2));
    }
    let n = g.graph().n();
    let (p, q, r, s) = (n, n + 1, n + 2, n + 3);
    let mut rotation = g.rotation().to_vec();
    replace(&mut rotation[u], v, p);
    replace(&mut rotation[v], u, q);
    replace(&mut rotation[x], y, r);
    replace(&mut rotation[y], x, s);
    rotation.extend([vec![u, s, q], vec![v, p, r], vec![x, q, s], vec![r, p, y]]);
    rebuild(rotation)
}

/// Every (face, dart pair) where A1 subdivision applies: the edges are
/// disjoint and the second dart starts an even number of steps after the
/// first along the face.
pub fn a1_sites(g: &EmbeddedGraph) -> Vec<A1Site> {
    let mut out = Vec::new();
    for (fi, face) in g.faces().iter().enumerate() {
        let len = face.len();
        for i in 0..len {
            for j in (i + 2..len).step_by(2) {
                let (e1, e2) = (face.darts[i], face.darts[j]);
                let disjoint = e1.0 != e2.0 && e1.0 != e2.1 && e1.1 != e2.0 && e1.1 != e2.1;
                if disjoint {
                    out.push(A1Site { e1, e2, face: fi });
                }
            }
        }
    }
    out
}

fn replace(rot: &mut [usize], from: usize, to: usize) {
    let slot = rot.iter_mut().find(|w| **w == from).expect("rotation entry present");
    *slot = to;
}

fn rebuild(rotation: Vec<Vec<usize>>) -> Result<EmbeddedGraph> {
    let edges: Vec<(usize, usize)> = rotation
        .iter()
        .enumerate()
        .flat_map(|(v, rot)| rot.iter().filter(move |&&w| v < w).map(move |&w| (v, w)))
        .collect();
    let graph = Graph::from_edges(rotation.len(), &edges)?;
    EmbeddedGraph::new(graph, rotation)
}

/// Closure of the cube under diamond inflation and A1 subdivision, up to
/// `max_vertices` vertices, one embedding per isomorphism class.
///
/// Graphs are explored level by level in order of vertex count; each
/// level's graphs are expanded in parallel and merged in a fixed order, so
/// the output does not depend on the thread count. Output is sorted by
/// vertex count, then canonical form.
pub fn batagelj_enumerate(max_vertices: usize) -> Result<Vec<EmbeddedGraph>> {
    if max_vertices > MAX_VERTICES {
        return Err(Error::BoundExceeded {
            what: "max_vertices",
            value: max_vertices,
            max: MAX_VERTICES,
        });
    }
    let mut levels: BTreeMap<usize, Vec<(CanonicalForm, EmbeddedGraph)>> = BTreeMap::new();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    if max_vertices >= 8 {
        let cube = cube_seed();
        let form = canonical_form(cube.graph())?;
        seen.insert(form.clone());
        levels.entry(8).or_default().push((form, cube));
    }
    while let Some((_, mut level)) = levels.pop_first() {
        level.sort_by(|a, b| a.0.cmp(&b.0));
        let children: Vec<Vec<(CanonicalForm, EmbeddedGraph)>> = level
            .par_iter()
            .map(|(_, g)| expand(g, max_vertices))
            .collect::<Result<_>>()?;
        for (form, child) in children.into_iter().flatten() {
            if seen.insert(form.clone()) {
                levels.entry(child.graph().n()).or_default().push((form, child));
            }
        }
        out.extend(level.into_iter().map(|(_, g)| g));
    }
    Ok(out)
}

fn expand(g: &EmbeddedGraph, max_vertices: usize) -> Result<Vec<(CanonicalForm, EmbeddedGraph)>> {
    let n = g.graph().n();
    let mut local = HashSet::new();
    let mut out = Vec::new();
    let mut push = |h: EmbeddedGraph| -> Result<()> {
        let form = canonical_form(h.graph())?;
        if local.insert(form.clone()) {
            out.push((form, h));
        }
        Ok(())
    };
    if n + 6 <= max_vertices {
        for v in 0..n {
            push(diamond_inflation(g, v)?)?;
        }
    }
    if n + 4 <= max_vertices {
        let faces = g.faces();
        for site in a1_sites(g) {
            push(apply_a1(g, &faces[site.face], site.e1, site.e2)?)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;

    fn assert_cubic_bipartite(g: &EmbeddedGraph) {
        assert_eq!(g.graph().regular_degree(), Some(3));
        assert!(g.graph().is_bipartite());
        let (v, e, f) = (g.graph().n(), g.graph().edge_count(), g.faces().len());
        assert_eq!(v + f, e + 2);
    }

    #[test]
    fn diamond_on_cube() {
        let cube = cube_seed();
        let first = diamond_inflation(&cube, 0).unwrap();
        assert_eq!(first.graph().n(), 14);
        assert_cubic_bipartite(&first);
        assert_eq!(first.graph().vertex_connectivity().unwrap(), 3);
        for v in 1..8 {
            let other = diamond_inflation(&cube, v).unwrap();
            assert!(is_isomorphic(first.graph(), other.graph()).unwrap());
        }
    }

    #[test]
    fn diamond_gadget_shape() {
        // The centre plus its six new vertices induce a cube minus one corner.
        let cube = cube_seed();
        let g = diamond_inflation(&cube, 5).unwrap();
        let gadget = [5, 8, 9, 10, 11, 12, 13];
        let (sub, _) = g.graph().induced_subgraph(&gadget).unwrap();
        let degrees: Vec<usize> = (0..7).map(|v| sub.degree(v)).collect();
        assert_eq!(degrees, vec![3, 2, 2, 2, 3, 3, 3]);
        let sides = match sub.bipartition().unwrap() {
            crate::graph::Bipartiteness::Bipartite(b) => b,
            _ => panic!("gadget must be bipartite"),
        };
        // Centre and ports on one side, connectors on the other.
        assert_eq!(sides.side, vec![0, 0, 0, 0, 1, 1, 1]);
        let cube_minus = Graph::cube().delete_vertex(7).unwrap();
        assert!(is_isomorphic(&sub, &cube_minus).unwrap());
    }

    #[test]
    fn wrong_degree_is_rejected() {
        let c4 = "0: 1 3\n1: 0 2\n2: 1 3\n3: 0 2".parse::<EmbeddedGraph>().unwrap();
        assert!(matches!(
            diamond_inflation(&c4, 0),
            Err(Error::WrongDegree {
                vertex: 0,
                degree: 2,
                expected: 3
            })
        ));
    }

    #[test]
    fn a1_on_cube_face() {
        let cube = cube_seed();
        // Face 0 1 3 2 of the outer square: edges {0,1} and {3,2} are opposite.
        let g = a1_subdivision(&cube, (0, 1), (3, 2)).unwrap();
        assert_eq!(g.graph().n(), 12);
        assert_cubic_bipartite(&g);
        assert_eq!(g.graph().vertex_connectivity().unwrap(), 3);
        let sides = |h: &Graph| match h.bipartition().unwrap() {
            crate::graph::Bipartiteness::Bipartite(b) => b.part(0).len(),
            _ => 0,
        };
        assert_eq!(sides(g.graph()), 6);
        // The new vertices form a square.
        let (sq, _) = g.graph().induced_subgraph(&[8, 9, 10, 11]).unwrap();
        assert!(is_isomorphic(&sq, &Graph::cycle(4).unwrap()).unwrap());
    }

    #[test]
    fn a1_errors() {
        let cube = cube_seed();
        assert!(matches!(
            a1_subdivision(&cube, (0, 1), (1, 3)),
            Err(Error::AdjacentEdges(..))
        ));
        assert!(matches!(
            a1_subdivision(&cube, (0, 1), (6, 7)),
            Err(Error::NotCofacial(..))
        ));
        assert!(matches!(
            a1_subdivision(&cube, (0, 1), (0, 7)),
            Err(Error::MissingEdge(0, 7))
        ));
        let hex = "0: 1 5\n1: 0 2\n2: 1 3\n3: 2 4\n4: 3 5\n5: 4 0"
            .parse::<EmbeddedGraph>()
            .unwrap();
        // On a hexagon, {0,1} and {3,4} are an odd number of steps apart.
        assert!(matches!(
            a1_subdivision(&hex, (0, 1), (3, 4)),
            Err(Error::ParityMismatch(..))
        ));
    }

    #[test]
    fn small_closures() {
        let eight = batagelj_enumerate(8).unwrap();
        assert_eq!(eight.len(), 1);
        assert_eq!(eight[0].graph(), &Graph::cube());
        let twelve = batagelj_enumerate(12).unwrap();
        let sizes: Vec<usize> = twelve.iter().map(|g| g.graph().n()).collect();
        assert_eq!(sizes, vec![8, 12]);
        assert!(batagelj_enumerate(7).unwrap().is_empty());
        assert!(batagelj_enumerate(65).is_err());
    }
}
