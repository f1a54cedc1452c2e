//! Root data of `W(n)`: root spaces, the Euler field, the `sl(1, n)`
//! subalgebra and a fixed complement of it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::derivation::{basis, BasisDerivation, SuperDerivation};
use super::Algebra;
use crate::error::{Error, Result};
use crate::gl::Character;
use crate::linalg::Rational;
use crate::weight::{Parity, Weight};

/// `E = Σ ξ_i ∂_i`
pub fn euler_field(n: usize) -> SuperDerivation {
    let mut e = SuperDerivation::zero(n);
    for i in 0..n {
        e.add_term(
            BasisDerivation::new(n, 1 << i, i).expect("in range"),
            Rational::one(),
        );
    }
    e
}

/// `ξ_i E = Σ_{k≠i} ξ_i ξ_k ∂_k` for a 0-based `i`.
pub fn xi_euler(n: usize, i: usize) -> SuperDerivation {
    let mut e = SuperDerivation::zero(n);
    for k in (0..n).filter(|&k| k != i) {
        let sign = if k < i { -1 } else { 1 };
        e.add_term(
            BasisDerivation::new(n, (1 << i) | (1 << k), k).expect("in range"),
            Rational::integer(sign),
        );
    }
    e
}

pub(crate) fn sl_embedding_elements(n: usize) -> Vec<SuperDerivation> {
    let mut out = Vec::with_capacity(n * n + 2 * n);
    for j in 0..n {
        out.push(SuperDerivation::basis(
            BasisDerivation::new(n, 0, j).expect("in range"),
        ));
    }
    for a in 0..n {
        for b in 0..n {
            out.push(SuperDerivation::basis(
                BasisDerivation::new(n, 1 << a, b).expect("in range"),
            ));
        }
    }
    for i in 0..n {
        out.push(xi_euler(n, i));
    }
    out
}

/// The `n² + 2n` elements `∂_j`, `ξ_a ∂_b`, `ξ_i E` spanning `sl(1, n)`.
/// Closure under the bracket is checked exactly.
pub fn sl_embedding(n: usize) -> Result<Vec<SuperDerivation>> {
    let elems = sl_embedding_elements(n);
    Algebra::sl(n)?;
    Ok(elems)
}

/// The basis derivation chosen to be dropped from `W_1` for `ξ_i E`:
/// its term with the smallest `k ≠ i`.
fn complement_pivot(n: usize, i: usize) -> BasisDerivation {
    let k = if i == 0 { 1 } else { 0 };
    BasisDerivation::new(n, (1 << i) | (1 << k), k).expect("in range")
}

/// Basis derivations spanning the fixed complement of `sl(1, n)` in `W(n)`:
/// `W_1` without the pivots of the `ξ_i E`, then all of `W_2, …, W_{n−1}`.
pub fn complement_basis(n: usize) -> Result<Vec<BasisDerivation>> {
    let pivots: Vec<BasisDerivation> = (0..n).map(|i| complement_pivot(n, i)).collect();
    Ok(basis(n)?
        .into_iter()
        .filter(|d| d.degree() >= 1 && !pivots.contains(d))
        .collect())
}

/// One weight of a root multiset, with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub weight: Weight,
    pub degree: i32,
    pub parity: Parity,
    pub mult: usize,
}

fn collect_roots<'a>(ds: impl IntoIterator<Item = &'a BasisDerivation>) -> Vec<RootDatum> {
    let mut counts: BTreeMap<(i32, Weight), (Parity, usize)> = BTreeMap::new();
    for d in ds {
        let e = counts
            .entry((d.degree(), d.weight()))
            .or_insert((d.parity(), 0));
        e.1 += 1;
    }
    counts
        .into_iter()
        .map(|((degree, weight), (parity, mult))| RootDatum {
            weight,
            degree,
            parity,
            mult,
        })
        .collect()
}

/// Weights of the complement of `sl(1, n)`, with multiplicity, degree and parity.
pub fn complement_weights(n: usize) -> Result<Vec<RootDatum>> {
    Ok(collect_roots(&complement_basis(n)?))
}

/// Distinct weights of the degree-1 part of the complement.
pub fn complement_roots(n: usize) -> Result<Vec<Weight>> {
    Ok(complement_weights(n)?
        .into_iter()
        .filter(|r| r.degree == 1)
        .map(|r| r.weight)
        .collect())
}

/// Character of the degree-1 part of the complement, as a `gl(n)`-module.
pub fn complement_degree_one_character(n: usize) -> Result<Character> {
    let mut c = Character::new(n);
    for r in complement_weights(n)?.into_iter().filter(|r| r.degree == 1) {
        c.add(&r.weight, r.mult as i64);
    }
    Ok(c)
}

/// Smallest height over the complement weights; `None` when the complement is zero.
pub fn min_complement_height(n: usize) -> Result<Option<Rational>> {
    Ok(complement_weights(n)?
        .into_iter()
        .map(|r| r.weight.height())
        .min())
}

/// Every weight of `W(n)` with multiplicity (zero weight included).
pub fn root_data(n: usize) -> Result<Vec<RootDatum>> {
    Ok(collect_roots(&basis(n)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceParity {
    Even,
    Odd,
    Mixed,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSpace {
    pub dim: usize,
    pub parity: SpaceParity,
}

/// Dimension and parity type of the `α`-weight space of `W(n)`.
pub fn weight_space(n: usize, alpha: &Weight) -> Result<WeightSpace> {
    if alpha.n() != n {
        return Err(Error::Dimension(format!("weight {alpha} for n = {n}")));
    }
    if !alpha.is_integral() {
        return Err(Error::InvalidRoot(format!("{alpha} is not integral")));
    }
    let (mut even, mut odd) = (0, 0);
    for d in basis(n)?.iter().filter(|d| &d.weight() == alpha) {
        match d.parity() {
            Parity::Even => even += 1,
            Parity::Odd => odd += 1,
        }
    }
    let parity = match (even, odd) {
        (0, 0) => SpaceParity::Zero,
        (_, 0) => SpaceParity::Even,
        (0, _) => SpaceParity::Odd,
        _ => SpaceParity::Mixed,
    };
    Ok(WeightSpace {
        dim: even + odd,
        parity,
    })
}

/// Weight multiplicities of `W_k`.
pub fn component_character(n: usize, k: i32) -> Result<Character> {
    if k < -1 || k > n as i32 - 1 {
        return Err(Error::OutOfRange(format!(
            "degree {k} outside −1..={}",
            n as i32 - 1
        )));
    }
    let mut c = Character::new(n);
    for d in basis(n)?.iter().filter(|d| d.degree() == k) {
        c.add(&d.weight(), 1);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SparseVector;

    fn w(xs: &[i64]) -> Weight {
        Weight::from_i64(xs)
    }

    #[test]
    fn euler_field_grades() {
        let n = 3;
        let e = euler_field(n);
        assert_eq!(e.render(), "x1.d1 + x2.d2 + x3.d3");
        for d in basis(n).unwrap() {
            let x = SuperDerivation::basis(d);
            let k = Rational::integer(d.degree() as i64);
            assert_eq!(e.bracket(&x).unwrap(), x.scale(&k));
        }
        let d1 = SuperDerivation::xi_d(2, &[], 1).unwrap();
        assert_eq!(
            euler_field(2).bracket(&d1).unwrap(),
            d1.scale(&-Rational::one())
        );
    }

    #[test]
    fn sl_embedding_sizes() {
        assert_eq!(sl_embedding(2).unwrap().len(), 8);
        assert_eq!(sl_embedding(3).unwrap().len(), 15);
        assert_eq!(basis(3).unwrap().len() - sl_embedding(3).unwrap().len(), 9);
        assert_eq!(complement_basis(3).unwrap().len(), 9);
    }

    #[test]
    fn complement_is_a_complement() {
        for n in 2..=4 {
            let w_basis = basis(n).unwrap();
            let index = |d: &BasisDerivation| w_basis.iter().position(|x| x == d).unwrap();
            let mut span = crate::linalg::Span::new();
            for x in sl_embedding(n).unwrap() {
                assert!(span.insert(&SparseVector::from_entries(
                    x.terms().map(|(d, c)| (index(d), c.clone()))
                )));
            }
            for d in complement_basis(n).unwrap() {
                assert!(span.insert(&SparseVector::unit(index(&d))));
            }
            assert_eq!(span.dim(), w_basis.len());
        }
    }

    #[test]
    fn degree_one_roots() {
        let roots = complement_roots(3).unwrap();
        assert_eq!(roots.len(), 6);
        assert!(roots.contains(&w(&[1, 1, -1])));
        assert!(roots.contains(&w(&[1, 0, 0])));
        assert_eq!(complement_roots(4).unwrap().len(), 16);
        assert!(complement_roots(2).unwrap().is_empty());
    }

    #[test]
    fn root_spaces() {
        let ws = weight_space(3, &w(&[1, -1, 0])).unwrap();
        assert_eq!((ws.dim, ws.parity), (1, SpaceParity::Even));
        let ws = weight_space(3, &w(&[-1, 0, 0])).unwrap();
        assert_eq!((ws.dim, ws.parity), (1, SpaceParity::Odd));
        let ws = weight_space(3, &w(&[1, 1, -1])).unwrap();
        assert_eq!((ws.dim, ws.parity), (1, SpaceParity::Odd));
        // ε_1 occurs as ξ_1ξ_2∂_2 and ξ_1ξ_3∂_3
        let ws = weight_space(3, &w(&[1, 0, 0])).unwrap();
        assert_eq!((ws.dim, ws.parity), (2, SpaceParity::Odd));
        let ws = weight_space(3, &w(&[0, 0, 0])).unwrap();
        assert_eq!((ws.dim, ws.parity), (3, SpaceParity::Even));
    }

    #[test]
    fn component_characters() {
        let c = component_character(3, -1).unwrap();
        assert_eq!(c.dim(), 3);
        assert_eq!(c.mult(&w(&[-1, 0, 0])), 1);
        let c = component_character(3, 2).unwrap();
        assert_eq!(c.dim(), 3);
        for x in [w(&[1, 1, 0]), w(&[1, 0, 1]), w(&[0, 1, 1])] {
            assert_eq!(c.mult(&x), 1);
        }
        assert_eq!(component_character(2, 0).unwrap().dim(), 4);
        assert!(component_character(3, 3).is_err());
    }

    #[test]
    fn minimum_height() {
        assert_eq!(min_complement_height(3).unwrap(), Some(Rational::one()));
        assert_eq!(min_complement_height(2).unwrap(), None);
    }
}
