//! Explicit matrices for the simple `gl(n)`-module `L_λ`.
//!
//! Weight spaces are built level by level below `λ`. A vector `v` of weight
//! `μ ≠ λ` in `L_λ` is zero exactly when every raising operator `E_j` kills
//! it, so `v ↦ (E_1 v, …, E_{n−1} v)` is injective and identifies `v` with a
//! vector in the (already built) higher weight spaces. Candidates `F_i u` are
//! mapped through `E_j F_i u = F_i E_j u + δ_ij H_i u` and a maximal
//! independent subset becomes the basis of `L_λ(μ)`. This realizes the
//! quotient of the Verma module by the radical of its contravariant form.

use std::collections::{BTreeMap, BTreeSet};

use super::{weyl_dim, Character};
use crate::error::{Error, Result};
use crate::linalg::{solve, Rational, Span, SparseMatrix, SparseVector};
use crate::weight::Weight;

pub const DEFAULT_IRREP_CAP: u64 = 200;

#[derive(Clone, Debug)]
pub struct GlIrrep {
    highest: Weight,
    weights: Vec<Weight>,
    /// `units[a][b]` is the action of `E_ab`.
    units: Vec<Vec<SparseMatrix>>,
}

impl GlIrrep {
    pub fn highest_weight(&self) -> &Weight {
        &self.highest
    }

    pub fn n(&self) -> usize {
        self.highest.n()
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Weight of each basis vector; vector 0 is the highest weight vector.
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// Action of the matrix unit `E_ab` (0-based).
    pub fn unit(&self, a: usize, b: usize) -> &SparseMatrix {
        &self.units[a][b]
    }

    pub fn character(&self) -> Character {
        Character::from_weights(self.n(), &self.weights)
    }

    /// Pairs `((a,b),(c,d))` where `[E_ab, E_cd] = δ_bc E_ad − δ_da E_cb` fails.
    pub fn relation_violations(&self) -> Vec<((usize, usize), (usize, usize))> {
        let n = self.n();
        let mut bad = Vec::new();
        let units: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        for &(a, b) in &units {
            for &(c, d) in &units {
                let x = &self.units[a][b];
                let y = &self.units[c][d];
                let lhs = x
                    .mul(y)
                    .unwrap()
                    .add_scaled(&y.mul(x).unwrap(), &-Rational::one())
                    .unwrap();
                let mut rhs = SparseMatrix::zero(self.dim(), self.dim());
                if b == c {
                    rhs = rhs.add_scaled(&self.units[a][d], &Rational::one()).unwrap();
                }
                if d == a {
                    rhs = rhs
                        .add_scaled(&self.units[c][b], &-Rational::one())
                        .unwrap();
                }
                if lhs != rhs {
                    bad.push(((a, b), (c, d)));
                }
            }
        }
        bad
    }
}

/// Builds `L_λ` with the default dimension cap.
pub fn build_irrep(lambda: &Weight) -> Result<GlIrrep> {
    build_irrep_capped(lambda, DEFAULT_IRREP_CAP)
}

pub fn build_irrep_capped(lambda: &Weight, cap: u64) -> Result<GlIrrep> {
    let expected = weyl_dim(lambda)?;
    if expected > cap {
        return Err(Error::CapExceeded(format!(
            "dim L{lambda} = {expected} exceeds the cap {cap}"
        )));
    }
    let n = lambda.n();
    let simple = |i: usize| &Weight::epsilon(n, i) - &Weight::epsilon(n, i + 1);

    let mut weights: Vec<Weight> = vec![lambda.clone()];
    let mut by_weight: BTreeMap<Weight, Vec<usize>> = BTreeMap::from([(lambda.clone(), vec![0])]);
    // raise[j][v] = E_{j,j+1} v, lower[i][u] = E_{i+1,i} u
    let mut raise: Vec<Vec<SparseVector>> = vec![vec![SparseVector::new()]; n - 1];
    let mut lower: Vec<BTreeMap<usize, SparseVector>> = vec![BTreeMap::new(); n - 1];
    let h = |w: &Weight, i: usize| w.get(i) - w.get(i + 1);

    let mut level: BTreeSet<Weight> = BTreeSet::from([lambda.clone()]);
    while !level.is_empty() {
        let mut targets: BTreeMap<Weight, Vec<(usize, usize)>> = BTreeMap::new();
        for mu in &level {
            for i in 0..n - 1 {
                for &u in &by_weight[mu] {
                    targets.entry(mu - &simple(i)).or_default().push((i, u));
                }
            }
        }
        let mut next = BTreeSet::new();
        for (mu, candidates) in targets {
            // image of each candidate F_i u under v ↦ Σ_j E_j v
            let image = |i: usize, u: usize| -> SparseVector {
                let mut acc = SparseVector::new();
                for j in 0..n - 1 {
                    let eju = &raise[j][u];
                    for (w, c) in eju.iter() {
                        acc = acc.add_scaled(&lower[i][&w], c);
                    }
                    if i == j {
                        acc = acc.add_scaled(&SparseVector::unit(u), &h(&weights[u], i));
                    }
                }
                acc
            };
            let mut span = Span::new();
            let mut chosen: Vec<(usize, usize, SparseVector)> = Vec::new();
            let mut all: Vec<(usize, usize, SparseVector)> = Vec::new();
            for &(i, u) in &candidates {
                let img = image(i, u);
                if span.insert(&img) {
                    chosen.push((i, u, img.clone()));
                }
                all.push((i, u, img));
            }
            if chosen.is_empty() {
                continue;
            }
            let start = weights.len();
            let ids: Vec<usize> = (start..start + chosen.len()).collect();
            for (_, _, img) in &chosen {
                weights.push(mu.clone());
                // E_j of the new basis vector is its image restricted to weight μ + α_j
                let mut per_j: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n - 1];
                for (w, c) in img.iter() {
                    let j = (0..n - 1)
                        .find(|&j| weights[w] == &mu + &simple(j))
                        .expect("image lies in a raised weight space");
                    per_j[j].push((w, c.clone()));
                }
                for (j, entries) in per_j.into_iter().enumerate() {
                    raise[j].push(SparseVector::from_entries(entries));
                }
            }
            let rows = img_rows(&chosen);
            let columns: Vec<SparseVector> = chosen.iter().map(|(_, _, v)| v.clone()).collect();
            let basis_matrix = SparseMatrix::from_columns(rows, &columns)?;
            for (i, u, img) in &all {
                let x = solve(&basis_matrix, &img.to_dense(rows))?
                    .expect("candidate lies in the span of the chosen basis");
                let coords =
                    SparseVector::from_entries(x.into_iter().enumerate().map(|(k, c)| (ids[k], c)));
                lower[*i].insert(*u, coords);
            }
            by_weight.insert(mu.clone(), ids);
            next.insert(mu);
        }
        for mu in &level {
            for i in 0..n - 1 {
                for &u in &by_weight[mu] {
                    lower[i].entry(u).or_default();
                }
            }
        }
        level = next;
    }

    let dim = weights.len();
    if dim as u64 != expected {
        return Err(Error::Invalid(format!(
            "constructed {dim} basis vectors for L{lambda}, expected {expected}"
        )));
    }
    let mut units = vec![vec![SparseMatrix::zero(dim, dim); n]; n];
    for (a, row) in units.iter_mut().enumerate() {
        row[a] = SparseMatrix::from_triplets(
            dim,
            dim,
            weights
                .iter()
                .enumerate()
                .map(|(v, w)| (v, v, w.get(a).clone())),
        )?;
    }
    for j in 0..n - 1 {
        units[j][j + 1] = SparseMatrix::from_columns(dim, &raise[j])?;
        let cols: Vec<SparseVector> = (0..dim)
            .map(|u| lower[j].get(&u).cloned().unwrap_or_default())
            .collect();
        units[j + 1][j] = SparseMatrix::from_columns(dim, &cols)?;
    }
    // E_ab for |a − b| > 1 by commutators
    for gap in 2..n {
        for a in 0..n - gap {
            let b = a + gap;
            units[a][b] = commutator(&units[a][b - 1], &units[b - 1][b]);
            units[b][a] = commutator(&units[b][b - 1], &units[b - 1][a]);
        }
    }
    Ok(GlIrrep {
        highest: lambda.clone(),
        weights,
        units,
    })
}

fn img_rows(chosen: &[(usize, usize, SparseVector)]) -> usize {
    chosen
        .iter()
        .filter_map(|(_, _, v)| v.max_index())
        .max()
        .map_or(0, |m| m + 1)
}

fn commutator(x: &SparseMatrix, y: &SparseMatrix) -> SparseMatrix {
    x.mul(y)
        .unwrap()
        .add_scaled(&y.mul(x).unwrap(), &-Rational::one())
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl::freudenthal;

    fn w(s: &str) -> Weight {
        Weight::parse_list(s).unwrap()
    }

    #[test]
    fn standard_representation() {
        let l = build_irrep(&w("1,0,0")).unwrap();
        assert_eq!(l.dim(), 3);
        assert!(l.relation_violations().is_empty());
        // each E_ab is an elementary matrix in the weight basis
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(l.unit(a, b).nnz(), 1);
            }
        }
    }

    #[test]
    fn exterior_square() {
        let l = build_irrep(&w("1,1,0")).unwrap();
        assert_eq!(l.dim(), 3);
        assert_eq!(l.unit(0, 1).rank(), 1);
        assert!(l.relation_violations().is_empty());
    }

    #[test]
    fn linear_character() {
        let l = build_irrep(&w("1/2,1/2,1/2")).unwrap();
        assert_eq!(l.dim(), 1);
        for i in 0..3 {
            assert_eq!(l.unit(i, i).get(0, 0), Rational::new(1, 2));
        }
        assert!(l.unit(0, 1).is_zero());
    }

    #[test]
    fn census_matches_freudenthal() {
        for s in [
            "1,0,-1",
            "2,1,0",
            "5/2,3/2,1/2",
            "2,0,0",
            "1,1,-1",
            "3,1,0",
            "1,0,0,-1",
        ] {
            let lambda = w(s);
            let l = build_irrep(&lambda).unwrap();
            assert_eq!(l.character(), freudenthal(&lambda).unwrap(), "{s}");
            assert!(l.relation_violations().is_empty(), "{s}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            build_irrep_capped(&w("4,2,0"), 10),
            Err(Error::CapExceeded(_))
        ));
    }
}
