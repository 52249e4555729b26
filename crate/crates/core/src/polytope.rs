//! Exact cover as integral points of the set partitioning polytope
//! `{x : Ax = 1, 0 <= x <= 1}`, and the divisibility check for balanced
//! regular graphs built on it.

use serde::Serialize;

use crate::balance::{balanced, bipartite_adjacency_matrix};
use crate::cayley::{lt_cycle, lt_cycle_matrix, LtSpec};
use crate::enumeration::{count_balanced_cubic, MAX_CENSUS_VERTICES, MIN_CENSUS_VERTICES};
use crate::error::{Error, Result};
use crate::graph::{bit, write_graph6, Bipartiteness, Bits, Graph, MAX_VERTICES};
use crate::matrix::ZeroOneMatrix;
use crate::report::VerificationReport;

/// Columns whose supports partition the row set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactCoverSolution {
    pub columns: Vec<usize>,
}

impl ExactCoverSolution {
    /// Number of chosen columns, the coordinate sum of the 0/1 point.
    pub fn size(&self) -> usize {
        self.columns.len()
    }

    /// Independent re-check: every row is hit exactly once.
    pub fn covers_exactly(&self, a: &ZeroOneMatrix) -> bool {
        (0..a.rows()).all(|i| self.columns.iter().filter(|&&j| a.get(i, j)).count() == 1)
    }
}

/// Finds a set of columns covering every row exactly once, or `None`.
///
/// Backtracks on the uncovered row with the fewest usable columns (lowest
/// row on ties) and tries columns in increasing order, so the result is
/// deterministic.
pub fn exact_cover(a: &ZeroOneMatrix) -> Result<Option<ExactCoverSolution>> {
    if a.rows() > crate::matrix::MAX_DIM || a.cols() > crate::matrix::MAX_DIM {
        return Err(Error::MatrixTooLarge {
            rows: a.rows(),
            cols: a.cols(),
            max_rows: crate::matrix::MAX_DIM,
            max_cols: crate::matrix::MAX_DIM,
        });
    }
    let columns: Vec<u64> = (0..a.cols()).map(|j| a.column_bits(j)).collect();
    let row_cols: Vec<u64> = a.row_slice().to_vec();
    let all_rows = crate::graph::low_mask(a.rows());
    let mut chosen = Vec::new();
    Ok(search(&columns, &row_cols, all_rows, 0, &mut chosen).then(|| {
        chosen.sort_unstable();
        ExactCoverSolution { columns: chosen }
    }))
}

fn search(columns: &[u64], row_cols: &[u64], all_rows: u64, covered: u64, chosen: &mut Vec<usize>) -> bool {
    if covered == all_rows {
        return true;
    }
    // A column is usable when it avoids every covered row.
    let usable = |i: usize| {
        Bits(row_cols[i])
            .filter(|&j| columns[j] & covered == 0)
            .fold(0u64, |m, j| m | bit(j))
    };
    let mut best: Option<(usize, u64)> = None;
    for i in Bits(all_rows & !covered) {
        let cands = usable(i);
        if best.is_none_or(|(_, b)| cands.count_ones() < b.count_ones()) {
            best = Some((i, cands));
            if cands == 0 {
                return false;
            }
        }
    }
    let (_, cands) = best.expect("some row is uncovered");
    for j in Bits(cands) {
        chosen.push(j);
        if search(columns, row_cols, all_rows, covered | columns[j], chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub vertices: usize,
    pub degree: usize,
    pub balanced: bool,
    pub solution: Option<ExactCoverSolution>,
    /// Number of columns in the exact cover, when one was found.
    pub t: Option<usize>,
    pub divisible: bool,
}

impl DivisibilityReport {
    /// For balanced inputs, the cover must exist and satisfy `t * k = |V| / 2`.
    /// Unbalanced inputs carry no claim.
    pub fn holds(&self) -> bool {
        !self.balanced || (self.t.is_some_and(|t| t * self.degree * 2 == self.vertices) && self.divisible)
    }
}

/// Runs the exact-cover argument on a connected, regular, bipartite graph.
pub fn verify_divisibility(g: &Graph) -> Result<DivisibilityReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let degree = g.regular_degree().ok_or(Error::NotRegular)?;
    let Bipartiteness::Bipartite(sides) = g.bipartition()? else {
        return Err(Error::NotBipartite);
    };
    let a = bipartite_adjacency_matrix(g, &sides)?;
    divisibility_from_matrix(&a, degree, balanced(g)?)
}

/// Same check from the bipartite adjacency matrix of a `k`-regular graph
/// whose balance is already known. Useful for graphs past the vertex limit
/// whose matrix still fits.
pub fn divisibility_from_matrix(a: &ZeroOneMatrix, degree: usize, is_balanced: bool) -> Result<DivisibilityReport> {
    let vertices = a.rows() + a.cols();
    let solution = exact_cover(a)?;
    if let Some(s) = &solution {
        debug_assert!(s.covers_exactly(a));
    }
    Ok(DivisibilityReport {
        vertices,
        degree,
        balanced: is_balanced,
        t: solution.as_ref().map(ExactCoverSolution::size),
        solution,
        divisible: degree > 0 && vertices.is_multiple_of(2 * degree),
    })
}

/// `l` values of the `(l,t)`-cycle grid used by [`verify_divisibility_theorem`].
pub const LT_GRID_L: [usize; 5] = [2, 8, 12, 16, 20];
pub const LT_GRID_MAX_T: usize = 4;

/// Exact covers for every balanced regular graph in the standard suite:
/// the `(l,t)`-cycles with `l` in [`LT_GRID_L`] and `t <= LT_GRID_MAX_T`,
/// and every balanced cubic census graph on at most `census_max_d`
/// vertices.
///
/// `(l,t)`-cycles past the vertex limit are handled through their matrix;
/// their balance is taken from the twin quotient `C_l`, checked directly.
pub fn verify_divisibility_theorem(census_max_d: usize) -> Result<VerificationReport> {
    if census_max_d > MAX_CENSUS_VERTICES {
        return Err(Error::BoundExceeded {
            what: "census_max_d",
            value: census_max_d,
            max: MAX_CENSUS_VERTICES,
        });
    }
    let mut report = VerificationReport::new("divisibility").with_parameter("census_max_d", census_max_d as u64);
    for l in LT_GRID_L {
        for t in 1..=LT_GRID_MAX_T {
            let spec = LtSpec::new(l, t)?;
            let (r, g6) = if spec.vertices() <= MAX_VERTICES {
                let g = lt_cycle(spec)?;
                (verify_divisibility(&g)?, write_graph6(&g))
            } else {
                report.tally("matrix_route", 1);
                let quotient_balanced = balanced(&Graph::cycle(l)?)?;
                (
                    divisibility_from_matrix(&lt_cycle_matrix(spec)?, spec.degree(), quotient_balanced)?,
                    String::new(),
                )
            };
            report.instances += 1;
            report.tally("lt_cycles", 1);
            if !r.balanced {
                report.fail(format!("{spec}-cycle is not balanced"), g6.clone());
            }
            if !r.holds() {
                report.fail(format!("{spec}-cycle has no exact cover with t*k = |V|/2"), g6);
            }
        }
    }
    for d in (MIN_CENSUS_VERTICES..=census_max_d).step_by(2) {
        for g in count_balanced_cubic(d)?.balanced_graphs {
            report.instances += 1;
            report.tally("census_graphs", 1);
            let r = verify_divisibility(&g)?;
            if !r.holds() {
                report.fail(
                    format!("balanced census graph on {d} vertices has no exact cover with t*k = |V|/2"),
                    write_graph6(&g),
                );
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_holds() {
        let r = verify_divisibility_theorem(12).unwrap();
        assert!(r.holds(), "{:?}", r.counterexamples);
        assert_eq!(r.tally_value("lt_cycles"), 20);
        assert_eq!(r.tally_value("matrix_route"), 1);
        assert_eq!(r.tally_value("census_graphs"), 2);
        assert!(verify_divisibility_theorem(38).is_err());
    }

    fn shifted(n: usize) -> ZeroOneMatrix {
        // Column j covers rows j and j+1 (mod n).
        let mut m = ZeroOneMatrix::zeros(n, n).unwrap();
        for j in 0..n {
            m.set(j, j, true);
            m.set((j + 1) % n, j, true);
        }
        m
    }

    #[test]
    fn exact_cover_examples() {
        let ones: ZeroOneMatrix = "111\n111\n111".parse().unwrap();
        assert_eq!(exact_cover(&ones).unwrap().unwrap().columns, vec![0]);
        assert_eq!(exact_cover(&shifted(4)).unwrap().unwrap().columns, vec![0, 2]);
        let id: ZeroOneMatrix = "10\n01".parse().unwrap();
        assert_eq!(exact_cover(&id).unwrap().unwrap().columns, vec![0, 1]);
        assert_eq!(exact_cover(&shifted(3)).unwrap(), None);
        let zero_row: ZeroOneMatrix = "11\n00".parse().unwrap();
        assert_eq!(exact_cover(&zero_row).unwrap(), None);
        let empty = ZeroOneMatrix::zeros(0, 3).unwrap();
        assert_eq!(exact_cover(&empty).unwrap().unwrap().columns, Vec::<usize>::new());
    }

    #[test]
    fn divisibility_examples() {
        let k33 = verify_divisibility(&Graph::complete_bipartite(3, 3).unwrap()).unwrap();
        assert_eq!((k33.degree, k33.vertices, k33.t), (3, 6, Some(1)));
        assert!(k33.holds() && k33.divisible);

        let g83 = verify_divisibility(&lt_cycle(LtSpec::new(8, 3).unwrap()).unwrap()).unwrap();
        assert_eq!((g83.degree, g83.vertices, g83.t), (6, 24, Some(2)));
        assert!(g83.holds());

        let k44 = verify_divisibility(&lt_cycle(LtSpec::new(2, 4).unwrap()).unwrap()).unwrap();
        assert_eq!((k44.degree, k44.vertices, k44.t), (4, 8, Some(1)));

        let c6 = verify_divisibility(&Graph::cycle(6).unwrap()).unwrap();
        assert!(!c6.balanced && c6.solution.is_none() && c6.holds());
    }

    #[test]
    fn divisibility_preconditions() {
        assert_eq!(verify_divisibility(&Graph::path(3).unwrap()), Err(Error::NotRegular));
        assert_eq!(verify_divisibility(&Graph::cycle(5).unwrap()), Err(Error::NotBipartite));
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(verify_divisibility(&two), Err(Error::Disconnected));
    }
}
