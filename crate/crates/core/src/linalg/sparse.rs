use std::collections::BTreeMap;
use std::fmt;

use super::elimination::{self, EchelonForm};
use super::Rational;
use crate::error::{Error, Result};

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVector {
    entries: Vec<(usize, Rational)>,
}

impl SparseVector {
    pub fn new() -> Self {
        SparseVector {
            entries: Vec::new(),
        }
    }

    pub fn unit(index: usize) -> Self {
        SparseVector {
            entries: vec![(index, Rational::one())],
        }
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing repeats.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, v) in entries {
            if v.is_zero() {
                continue;
            }
            *map.entry(i).or_insert_with(Rational::zero) += v;
        }
        SparseVector {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// Builds from pairs already sorted by index with no zeros or repeats.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, Rational)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVector { entries }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        SparseVector {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: usize) -> Rational {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Rational)> {
        self.entries
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scaled(&self, factor: &Rational) -> SparseVector {
        if factor.is_zero() {
            return SparseVector::new();
        }
        SparseVector {
            entries: self.entries.iter().map(|(i, v)| (*i, v * factor)).collect(),
        }
    }

    /// `self + factor * other`
    pub fn add_scaled(&self, other: &SparseVector, factor: &Rational) -> SparseVector {
        if factor.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, va)), Some((ib, vb))) => {
                    if ia < ib {
                        out.push((*ia, va.clone()));
                        a.next();
                    } else if ib < ia {
                        out.push((*ib, vb * factor));
                        b.next();
                    } else {
                        let s = va + &(vb * factor);
                        if !s.is_zero() {
                            out.push((*ia, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((ia, va)), None) => {
                    out.push((*ia, va.clone()));
                    a.next();
                }
                (None, Some((ib, vb))) => {
                    out.push((*ib, vb * factor));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVector { entries: out }
    }

    pub fn dot_dense(&self, dense: &[Rational]) -> Rational {
        self.entries.iter().map(|(i, v)| v * &dense[*i]).sum()
    }

    pub fn dot(&self, other: &SparseVector) -> Rational {
        let mut acc = Rational::zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (ia, ib) = (self.entries[a].0, other.entries[b].0);
            if ia < ib {
                a += 1;
            } else if ib < ia {
                b += 1;
            } else {
                acc += &self.entries[a].1 * &other.entries[b].1;
                a += 1;
                b += 1;
            }
        }
        acc
    }

    /// Relabels indices through `map`; entries mapped to `None` are dropped.
    pub fn reindex(&self, map: impl Fn(usize) -> Option<usize>) -> SparseVector {
        SparseVector::from_entries(
            self.entries
                .iter()
                .filter_map(|(i, v)| map(*i).map(|j| (j, v.clone()))),
        )
    }
}

impl fmt::Debug for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(i, v)| (i, v)))
            .finish()
    }
}

/// Accumulates a linear combination of sparse vectors.
#[derive(Default, Debug, Clone)]
pub struct Accumulator {
    acc: BTreeMap<usize, Rational>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, index: usize, value: Rational) {
        if value.is_zero() {
            return;
        }
        *self.acc.entry(index).or_insert_with(Rational::zero) += value;
    }

    pub fn add_scaled(&mut self, v: &SparseVector, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            *self.acc.entry(i).or_insert_with(Rational::zero) += x * factor;
        }
    }

    pub fn finish(self) -> SparseVector {
        SparseVector::from_sorted_unchecked(
            self.acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        )
    }
}

/// A sparse rational matrix stored by rows.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVector>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![SparseVector::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(SparseVector::unit).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVector>) -> Result<Self> {
        if let Some(bad) = rows
            .iter()
            .filter_map(|r| r.max_index())
            .find(|&c| c >= cols)
        {
            return Err(Error::Dimension(format!(
                "column index {bad} out of range for {cols} columns"
            )));
        }
        Ok(SparseMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVector]) -> Result<Self> {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter() {
                if i >= rows {
                    return Err(Error::Dimension(format!(
                        "row index {i} out of range for {rows} rows"
                    )));
                }
                buckets[i].push((j, v.clone()));
            }
        }
        Ok(SparseMatrix {
            rows,
            cols: columns.len(),
            data: buckets
                .into_iter()
                .map(SparseVector::from_sorted_unchecked)
                .collect(),
        })
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged dense matrix");
        SparseMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| SparseVector::from_dense(r)).collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::integer(x)).collect())
            .collect();
        if dense.is_empty() {
            return SparseMatrix::zero(0, 0);
        }
        SparseMatrix::from_dense(&dense)
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Dimension(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            buckets[r].push((c, v));
        }
        Ok(SparseMatrix {
            rows,
            cols,
            data: buckets
                .into_iter()
                .map(SparseVector::from_entries)
                .collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVector {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[SparseVector] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let row = &mut self.data[r];
        let mut entries = std::mem::take(row).into_entries();
        match entries.binary_search_by_key(&c, |(i, _)| *i) {
            Ok(pos) => {
                if value.is_zero() {
                    entries.remove(pos);
                } else {
                    entries[pos].1 = value;
                }
            }
            Err(pos) => {
                if !value.is_zero() {
                    entries.insert(pos, (c, value));
                }
            }
        }
        *row = SparseVector::from_sorted_unchecked(entries);
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, c, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.triplets() {
            buckets[c].push((r, v.clone()));
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data: buckets
                .into_iter()
                .map(SparseVector::from_sorted_unchecked)
                .collect(),
        }
    }

    pub fn mul_vec(&self, v: &SparseVector) -> Result<SparseVector> {
        if v.max_index().is_some_and(|m| m >= self.cols) {
            return Err(Error::Dimension("vector longer than column count".into()));
        }
        Ok(SparseVector::from_sorted_unchecked(
            self.data
                .iter()
                .enumerate()
                .filter_map(|(i, row)| {
                    let x = row.dot(v);
                    (!x.is_zero()).then_some((i, x))
                })
                .collect(),
        ))
    }

    pub fn mul_dense(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self.data.iter().map(|row| row.dot_dense(v)).collect())
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = Accumulator::new();
                for (k, a) in row.iter() {
                    acc.add_scaled(&other.data[k], a);
                }
                acc.finish()
            })
            .collect();
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// `self + factor * other`
    pub fn add_scaled(&self, other: &SparseMatrix, factor: &Rational) -> Result<SparseMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch in matrix sum".into()));
        }
        Ok(SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add_scaled(b, factor))
                .collect(),
        })
    }

    pub fn scaled(&self, factor: &Rational) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.scaled(factor)).collect(),
        }
    }

    /// Restriction to the given rows and columns (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut col_pos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            col_pos[c] = k;
        }
        let data = rows
            .iter()
            .map(|&r| self.data[r].reindex(|c| (col_pos[c] != usize::MAX).then_some(col_pos[c])))
            .collect();
        SparseMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        kernel_basis(self)
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} [", self.rows, self.cols)?;
        for (r, c, v) in self.triplets() {
            writeln!(f, "  ({r}, {c}) = {v}")?;
        }
        write!(f, "]")
    }
}

/// Rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    elimination::rank_of_rows(m.row_vectors())
}

/// A basis of the right null space `{ v : m v = 0 }`.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<Rational>> {
    let form = EchelonForm::reduced(m.row_vectors(), m.cols());
    form.kernel_basis()
}

/// Some `x` with `m x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &SparseMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != m.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has length {} but the matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let augmented: Vec<SparseVector> = m
        .row_vectors()
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut entries = row.entries().to_vec();
            if !bi.is_zero() {
                entries.push((m.cols(), bi.clone()));
            }
            SparseVector::from_sorted_unchecked(entries)
        })
        .collect();
    let form = EchelonForm::reduced(&augmented, m.cols() + 1);
    Ok(form.particular_solution(m.cols()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: i64) -> Rational {
        Rational::integer(x)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::identity(2)), 2);
        assert_eq!(rank(&SparseMatrix::zero(3, 3)), 0);
        assert_eq!(rank(&SparseMatrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::identity(2)).is_empty());

        let m = SparseMatrix::from_i64(&[&[1, -1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![r(1), r(1)]);

        assert_eq!(kernel_basis(&SparseMatrix::zero(2, 3)).len(), 3);
    }

    #[test]
    fn solve_examples() {
        let x = solve(&SparseMatrix::identity(2), &[r(3), r(5)])
            .unwrap()
            .unwrap();
        assert_eq!(x, vec![r(3), r(5)]);

        let m = SparseMatrix::from_i64(&[&[1, 1]]);
        let x = solve(&m, &[r(2)]).unwrap().unwrap();
        assert_eq!(m.mul_dense(&x).unwrap(), vec![r(2)]);

        let m = SparseMatrix::from_i64(&[&[1], &[1]]);
        assert_eq!(solve(&m, &[r(0), r(1)]).unwrap(), None);

        assert!(solve(&m, &[r(0)]).is_err());
    }

    #[test]
    fn set_and_get() {
        let mut m = SparseMatrix::zero(2, 2);
        m.set(0, 1, r(3));
        m.set(1, 0, Rational::new(1, 2));
        assert_eq!(m.get(0, 1), r(3));
        assert_eq!(m.nnz(), 2);
        m.set(0, 1, Rational::zero());
        assert_eq!(m.nnz(), 1);
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_i64(&[&[1, 2], &[0, 1]]);
        let b = SparseMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            a.mul(&b).unwrap(),
            SparseMatrix::from_i64(&[&[2, 1], &[1, 0]])
        );
        assert_eq!(a.transpose(), SparseMatrix::from_i64(&[&[1, 0], &[2, 1]]));
    }
}
