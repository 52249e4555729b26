//! Dense 0/1 matrices with rows stored as column bitsets.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{bit, Bits};

pub const MAX_DIM: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZeroOneMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<u64>,
}

impl ZeroOneMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows > MAX_DIM || cols > MAX_DIM {
            return Err(Error::MatrixTooLarge {
                rows,
                cols,
                max_rows: MAX_DIM,
                max_cols: MAX_DIM,
            });
        }
        Ok(Self {
            rows,
            cols,
            bits: vec![0; rows],
        })
    }

    /// Builds a matrix from row bitsets (bit `j` of row `i` is entry `(i, j)`).
    pub fn from_row_bits(cols: usize, rows: Vec<u64>) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols)?;
        let mask = crate::graph::low_mask(cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r & !mask != 0 {
                return Err(Error::MalformedMatrix(format!(
                    "row {i} has entries beyond column {cols}"
                )));
            }
            m.bits[i] = r;
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::MalformedMatrix(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 => m.bits[i] |= bit(j),
                    other => return Err(Error::MalformedMatrix(format!("entry {other} at ({i},{j})"))),
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i] & bit(j) != 0
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        if value {
            self.bits[i] |= bit(j);
        } else {
            self.bits[i] &= !bit(j);
        }
    }

    /// Row `i` as a column bitset.
    #[inline]
    pub fn row_bits(&self, i: usize) -> u64 {
        self.bits[i]
    }

    /// Column `j` as a row bitset.
    pub fn column_bits(&self, j: usize) -> u64 {
        (0..self.rows)
            .filter(|&i| self.get(i, j))
            .fold(0, |acc, i| acc | bit(i))
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> Self {
        let bits = (0..self.cols).map(|j| self.column_bits(j)).collect();
        Self {
            rows: self.cols,
            cols: self.rows,
            bits,
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    pub(crate) fn row_slice(&self) -> &[u64] {
        &self.bits
    }

    /// Nonzero positions of row `i`.
    pub fn row_support(&self, i: usize) -> Bits {
        Bits(self.bits[i])
    }
}

impl fmt::Debug for ZeroOneMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ZeroOneMatrix({}x{}; {})",
            self.rows,
            self.cols,
            self.to_string().replace('\n', "/")
        )
    }
}

/// Dense text grid: one line per row, one `0`/`1` character per entry.
impl fmt::Display for ZeroOneMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.cols {
                write!(f, "{}", if self.get(i, j) { '1' } else { '0' })?;
            }
        }
        Ok(())
    }
}

impl FromStr for ZeroOneMatrix {
    type Err = Error;

    /// Parses a text grid; whitespace inside a row is ignored and blank
    /// lines are skipped.
    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .lines()
            .map(|l| l.chars().filter(|c| !c.is_whitespace()).collect::<String>())
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.chars()
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        other => Err(Error::MalformedMatrix(format!("unexpected character {other:?}"))),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&rows)
    }
}

impl Serialize for ZeroOneMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_grid_round_trip() {
        let m: ZeroOneMatrix = "110\n011\n101\n".parse().unwrap();
        assert_eq!(m.rows(), 3);
        assert_eq!(m.cols(), 3);
        assert!(m.get(0, 1) && !m.get(0, 2));
        assert_eq!(m.to_string(), "110\n011\n101");
        assert_eq!(m.to_string().parse::<ZeroOneMatrix>().unwrap(), m);
        assert_eq!(m.column_bits(0), 0b101);
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!("10\n1".parse::<ZeroOneMatrix>().is_err());
        assert!("12".parse::<ZeroOneMatrix>().is_err());
        assert!(ZeroOneMatrix::zeros(65, 1).is_err());
    }
}
