//! Weyl dimension, Freudenthal multiplicities, Klimyk decomposition and
//! character peeling for `gl(n)`.
//!
//! `ρ = (n−1, n−2, …, 0)` with the standard inner product, Weyl group `S_n`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::ToPrimitive;

use super::Character;
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::weight::Weight;

fn rho(n: usize) -> Weight {
    Weight::from_i64(&(0..n).rev().map(|i| i as i64).collect::<Vec<_>>())
}

/// `Π_{i<j} (λ_i − λ_j + j − i) / (j − i)`
pub fn weyl_dim(lambda: &Weight) -> Result<u64> {
    lambda.require_dominant()?;
    let n = lambda.n();
    let mut d = Rational::one();
    for i in 0..n {
        for j in i + 1..n {
            let gap = Rational::integer((j - i) as i64);
            d = d * ((lambda.get(i) - lambda.get(j)) + &gap) / gap;
        }
    }
    debug_assert!(d.is_integer());
    d.numer()
        .to_u64()
        .ok_or_else(|| Error::CapExceeded(format!("dimension of L{lambda} overflows u64")))
}

/// Whether `μ` is a weight of `L_λ` for integral dominant `λ`: `μ` has the same
/// height and its sorted form is dominated by `λ`.
fn in_weight_polytope(lambda: &Weight, mu: &Weight) -> bool {
    if lambda.height() != mu.height() {
        return false;
    }
    let mut sorted = mu.entries().to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    let (mut a, mut b) = (Rational::zero(), Rational::zero());
    for (x, y) in sorted.iter().zip(lambda.entries()) {
        a += x;
        b += y;
        if a > b {
            return false;
        }
    }
    true
}

/// Full weight multiplicity map of `L_λ` via Freudenthal's recursion.
pub fn freudenthal(lambda: &Weight) -> Result<Character> {
    lambda.require_dominant()?;
    let n = lambda.n();
    let t = lambda.get(n - 1).clone();
    let base = lambda.shifted(&-t.clone());
    Ok(freudenthal_integral(&base).shifted(&t))
}

fn freudenthal_integral(lambda: &Weight) -> Character {
    let n = lambda.n();
    let rho = rho(n);
    let lr = lambda + &rho;
    let norm_lr = lr.dot(&lr);
    let positive: Vec<Weight> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| &Weight::epsilon(n, i) - &Weight::epsilon(n, j))
        .collect();
    let simple: Vec<Weight> = (0..n.saturating_sub(1))
        .map(|i| &Weight::epsilon(n, i) - &Weight::epsilon(n, i + 1))
        .collect();
    let mut mults: BTreeMap<Weight, Rational> = BTreeMap::new();
    mults.insert(lambda.clone(), Rational::one());
    let mut level: BTreeSet<Weight> = BTreeSet::from([lambda.clone()]);
    loop {
        let mut next = BTreeSet::new();
        for mu in &level {
            for a in &simple {
                let nu = mu - a;
                if in_weight_polytope(lambda, &nu) {
                    next.insert(nu);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        for mu in &next {
            let mr = mu + &rho;
            let denom = &norm_lr - &mr.dot(&mr);
            let mut sum = Rational::zero();
            for a in &positive {
                let mut k = 1;
                loop {
                    let shifted = mu + &a.scaled(&Rational::integer(k));
                    match mults.get(&shifted) {
                        Some(m) => sum += m * &shifted.dot(a),
                        None if in_weight_polytope(lambda, &shifted) => {}
                        None => break,
                    }
                    k += 1;
                }
            }
            let m = Rational::integer(2) * sum / denom;
            if !m.is_zero() {
                mults.insert(mu.clone(), m);
            }
        }
        level = next;
    }
    let mut c = Character::new(n);
    for (w, m) in mults {
        c.add(&w, m.to_i64().expect("integral multiplicity"));
    }
    c
}

/// Sorts `v` descending; returns the sign of the sorting permutation, or
/// `None` when two entries coincide.
fn sort_with_sign(v: &mut [Rational]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] < v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some(sign)
}

/// `[L_λ ⊗ L_μ : L_ν]` for every `ν`, by the Klimyk (Brauer) formula.
pub fn klimyk_tensor(lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
    let (big, small) = if weyl_dim(lambda)? >= weyl_dim(mu)? {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let n = big.n();
    if small.n() != n {
        return Err(Error::Dimension(format!(
            "{lambda} and {mu} have different ranks"
        )));
    }
    let rho = rho(n);
    let shifted = big + &rho;
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (kappa, m) in freudenthal(small)?.iter() {
        let mut v = (&shifted + kappa).entries().to_vec();
        if let Some(sign) = sort_with_sign(&mut v) {
            let nu = &Weight::new(v) - &rho;
            *acc.entry(nu).or_insert(0) += sign * m;
        }
    }
    let mut out = BTreeMap::new();
    for (nu, m) in acc {
        match m {
            0 => {}
            m if m > 0 => {
                out.insert(nu, m as u64);
            }
            _ => unreachable!("negative Klimyk multiplicity at {nu}"),
        }
    }
    Ok(out)
}

/// Greedy decomposition of a character into irreducible characters,
/// always peeling the lexicographically largest remaining weight.
pub fn decompose_character(c: &Character) -> Result<BTreeMap<Weight, u64>> {
    let mut rest = c.clone();
    let mut out = BTreeMap::new();
    while let Some((top, m)) = rest.lex_max() {
        let top = top.clone();
        if m < 0 || !top.is_dominant() {
            return Err(Error::NotACharacter(format!(
                "remainder has multiplicity {m} at {top}"
            )));
        }
        rest.add_scaled(&freudenthal(&top)?, -m);
        out.insert(top, m as u64);
    }
    Ok(out)
}

/// Character of `L_λ ⊗ L_μ` decomposed by peeling; the oracle for [`klimyk_tensor`].
pub fn tensor_by_characters(lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
    decompose_character(&freudenthal(lambda)?.product(&freudenthal(mu)?))
}
