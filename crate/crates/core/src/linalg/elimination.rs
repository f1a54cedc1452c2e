//! Fraction-free elimination on sparse integer rows.
//!
//! Rational rows are scaled to primitive integer rows (denominators cleared,
//! content divided out) before elimination. Each elimination step forms the
//! cross-multiplied combination `b*row - a*pivot` scaled by `gcd(a, b)` and
//! then divides by the content again, so entries never acquire denominators
//! and stay as small as the row space allows.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::common_denominator;
use super::{Rational, SparseVector};

pub(crate) type IntRow = Vec<(usize, BigInt)>;

pub(crate) fn to_int_row(v: &SparseVector) -> IntRow {
    let den = common_denominator(v.iter().map(|(_, x)| x));
    let mut row: IntRow = v
        .iter()
        .map(|(i, x)| (i, (x.numer() * &den) / x.denom()))
        .collect();
    make_primitive(&mut row);
    row
}

pub(crate) fn int_row_to_vector(row: &IntRow) -> SparseVector {
    SparseVector::from_sorted_unchecked(
        row.iter()
            .map(|(i, x)| (*i, Rational::from_bigint(x.clone())))
            .collect(),
    )
}

/// Divides by the gcd of the entries and makes the leading entry positive.
fn make_primitive(row: &mut IntRow) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.abs();
    for (_, x) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    let negate = first.1.is_negative();
    if g.is_one() && !negate {
        return;
    }
    for (_, x) in row.iter_mut() {
        if !g.is_one() {
            *x = &*x / &g;
        }
        if negate {
            *x = -&*x;
        }
    }
}

fn coefficient(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(i, _)| *i)
        .ok()
        .map(|pos| &row[pos].1)
}

/// Eliminates `col` from `row` using `pivot` (which must have a nonzero entry at `col`).
fn eliminate(row: &IntRow, pivot: &IntRow, col: usize) -> IntRow {
    let a = coefficient(row, col).expect("column present in row");
    let b = coefficient(pivot, col).expect("column present in pivot");
    let g = a.gcd(b);
    let row_factor = b / &g;
    let pivot_factor = a / &g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push((ci, &row[i].1 * &row_factor));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(&pivot[j].1 * &pivot_factor)));
            j += 1;
        } else {
            let x = &row[i].1 * &row_factor - &pivot[j].1 * &pivot_factor;
            if !x.is_zero() {
                out.push((ci, x));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    out
}

/// Incrementally built semi-echelon basis of a row space: every stored row
/// has a distinct leading column.
#[derive(Clone, Debug, Default)]
pub struct Span {
    pivots: BTreeMap<usize, IntRow>,
}

impl Span {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    fn reduce_int(&self, mut row: IntRow) -> IntRow {
        while let Some(&(lead, _)) = row.first() {
            match self.pivots.get(&lead) {
                Some(p) => row = eliminate(&row, p, lead),
                None => break,
            }
        }
        row
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVector) -> bool {
        if v.is_zero() {
            return false;
        }
        self.insert_int(to_int_row(v))
    }

    pub(crate) fn insert_int(&mut self, row: IntRow) -> bool {
        let row = self.reduce_int(row);
        match row.first() {
            Some(&(lead, _)) => {
                self.pivots.insert(lead, row);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        v.is_zero() || self.reduce_int(to_int_row(v)).is_empty()
    }

    /// Basis vectors of the span (integer-scaled, one per pivot column).
    pub fn basis(&self) -> Vec<SparseVector> {
        self.pivots.values().map(int_row_to_vector).collect()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }
}

pub(crate) fn rank_of_rows(rows: &[SparseVector]) -> usize {
    let mut order: Vec<&SparseVector> = rows.iter().filter(|r| !r.is_zero()).collect();
    order.sort_by_key(|r| r.nnz());
    let mut span = Span::new();
    for r in order {
        span.insert(r);
    }
    span.dim()
}

/// Fully reduced row echelon form of an integer-scaled row space.
pub(crate) struct EchelonForm {
    /// pivot column -> row with zeros in every other pivot column
    rows: BTreeMap<usize, IntRow>,
    cols: usize,
}

impl EchelonForm {
    pub(crate) fn reduced(rows: &[SparseVector], cols: usize) -> Self {
        let mut span = Span::new();
        for r in rows {
            span.insert(r);
        }
        let mut pivots = span.pivots;
        let cols_desc: Vec<usize> = pivots.keys().rev().copied().collect();
        for &c in &cols_desc {
            let pivot = pivots[&c].clone();
            for (&other, row) in pivots.iter_mut() {
                if other < c && coefficient(row, c).is_some() {
                    *row = eliminate(row, &pivot, c);
                }
            }
        }
        EchelonForm { rows: pivots, cols }
    }

    pub(crate) fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let free: Vec<usize> = (0..self.cols)
            .filter(|c| !self.rows.contains_key(c))
            .collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (&c, row) in &self.rows {
                    if let Some(a) = coefficient(row, f) {
                        let lead = coefficient(row, c).expect("pivot entry");
                        x[c] = -Rational::from_bigints(a.clone(), lead.clone());
                    }
                }
                x
            })
            .collect()
    }

    /// Solution of the augmented system whose right-hand side sits in column `rhs`.
    pub(crate) fn particular_solution(&self, rhs: usize) -> Option<Vec<Rational>> {
        if self.rows.contains_key(&rhs) {
            return None;
        }
        let mut x = vec![Rational::zero(); rhs];
        for (&c, row) in &self.rows {
            if let Some(b) = coefficient(row, rhs) {
                let lead = coefficient(row, c).expect("pivot entry");
                x[c] = Rational::from_bigints(b.clone(), lead.clone());
            }
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SparseVector {
        SparseVector::from_dense(&xs.iter().map(|&x| Rational::integer(x)).collect::<Vec<_>>())
    }

    #[test]
    fn span_membership() {
        let mut s = Span::new();
        assert!(s.insert(&v(&[1, 2, 0])));
        assert!(s.insert(&v(&[0, 1, 1])));
        assert!(!s.insert(&v(&[2, 5, 1])));
        assert!(s.contains(&v(&[1, 3, 1])));
        assert!(!s.contains(&v(&[0, 0, 1])));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn primitive_rows_stay_small() {
        let row = to_int_row(&SparseVector::from_dense(&[
            Rational::new(-2, 3),
            Rational::new(4, 9),
        ]));
        assert_eq!(row, vec![(0, BigInt::from(3)), (1, BigInt::from(-2))]);
    }
}
