//! Exact rational arithmetic and Gaussian elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cycle::NodeId;
use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator. `Display` prints `p/q`, or just `n` when integral.
pub type Rational = num_rational::BigRational;

pub fn rational(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Rational {
    Rational::new(numer.into(), denom.into())
}

/// A dense square matrix of rationals over sorted nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    nodes: Vec<NodeId>,
    entries: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    /// `nodes` must be strictly increasing; `entries` square with matching size.
    pub fn new(nodes: Vec<NodeId>, entries: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(w) = nodes.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::DuplicateNode(w[1].clone()));
        }
        if entries.len() != nodes.len() {
            return Err(Error::DimensionMismatch {
                expected: nodes.len(),
                found: entries.len(),
            });
        }
        if let Some(row) = entries.iter().find(|r| r.len() != nodes.len()) {
            return Err(Error::DimensionMismatch {
                expected: nodes.len(),
                found: row.len(),
            });
        }
        Ok(RationalMatrix { nodes, entries })
    }

    /// Like [`RationalMatrix::new`] but accepts nodes in any order and
    /// permutes rows and columns into sorted order.
    pub fn from_unsorted(nodes: Vec<NodeId>, entries: Vec<Vec<Rational>>) -> Result<Self> {
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.sort_by(|&i, &j| nodes[i].cmp(&nodes[j]));
        if entries.len() != nodes.len() || entries.iter().any(|r| r.len() != nodes.len()) {
            return Self::new(nodes, entries);
        }
        let sorted_nodes = order.iter().map(|&i| nodes[i].clone()).collect();
        let sorted_entries = order
            .iter()
            .map(|&i| order.iter().map(|&j| entries[i][j].clone()).collect())
            .collect();
        Self::new(sorted_nodes, sorted_entries)
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row][col]
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        self.entries
            .iter()
            .map(|r| r.iter().fold(Rational::zero(), |acc, x| acc + x))
            .collect()
    }

    pub fn column_sums(&self) -> Vec<Rational> {
        (0..self.size())
            .map(|j| {
                self.entries
                    .iter()
                    .fold(Rational::zero(), |acc, r| acc + &r[j])
            })
            .collect()
    }

    pub fn total(&self) -> Rational {
        self.row_sums()
            .into_iter()
            .fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Reduces `rows` (each of width `width`) to reduced row-echelon form in
/// place, considering only the first `pivot_columns` columns as pivot
/// candidates. Returns the pivot column of each nonzero row, in row order.
pub(crate) fn reduce_rows(rows: &mut [Vec<Rational>], pivot_columns: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..pivot_columns {
        if next_row == rows.len() {
            break;
        }
        let Some(found) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, found);
        let inv = rows[next_row][col].recip();
        if !inv.is_one() {
            for x in rows[next_row].iter_mut().skip(col) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = rows[next_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        next_row += 1;
    }
    pivots
}

/// Solves `a x = b` exactly. Free variables are set to zero. Returns `None`
/// when the system is inconsistent.
pub fn solve_exact(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = reduce_rows(&mut rows, cols);
    if rows[pivots.len()..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &col) in rows.iter().zip(&pivots) {
        x[col] = row[cols].clone();
    }
    Some(x)
}
