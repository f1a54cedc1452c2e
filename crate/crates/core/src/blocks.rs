//! Extensions between Kac modules and the block structure of `W(n)`-modules.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gl::{decompose_character, klimyk_tensor, weyl_dim, DEFAULT_IRREP_CAP};
use crate::kac::build_kac_w;
use crate::linalg::{Rational, SparseVector};
use crate::module::{is_invariant, is_irreducible};
use crate::quiver::Quiver;
use crate::walg::{complement_degree_one_character, complement_roots, complement_weights};
use crate::weight::{Parity, Weight};
use crate::Representation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtRegime {
    /// `λ ∉ Z^n`: the multiplicity is the dimension of `Ext¹`.
    #[serde(rename = "exact")]
    Exact,
    /// Integral `λ`: the multiplicity only bounds `Ext¹` from below.
    #[serde(rename = "lower-bound")]
    LowerBound,
}

impl fmt::Display for ExtRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtRegime::Exact => "exact",
            ExtRegime::LowerBound => "lower-bound",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtDim {
    pub mult: u64,
    pub regime: ExtRegime,
}

/// `[(W/sl)₁ ⊗ L_λ : L_{λ+α}]`.
///
/// Only the degree-1 part of the complement can contribute since
/// `ht(λ+α) = ht(λ) + 1`.
pub fn ext_dim_formula(n: usize, lambda: &Weight, alpha: &Weight) -> Result<ExtDim> {
    check_rank(n, lambda)?;
    lambda.require_dominant()?;
    if !complement_roots(n)?.contains(alpha) {
        return Err(Error::InvalidRoot(format!(
            "{alpha} is not a degree-1 root of the complement of sl(1,{n})"
        )));
    }
    let target = lambda + alpha;
    target.require_dominant()?;
    let mut mult = 0;
    for (kappa, c) in decompose_character(&complement_degree_one_character(n)?)? {
        mult += c * klimyk_tensor(&kappa, lambda)?
            .get(&target)
            .copied()
            .unwrap_or(0);
    }
    Ok(ExtDim {
        mult,
        regime: regime(lambda),
    })
}

pub fn regime(lambda: &Weight) -> ExtRegime {
    if lambda.is_integral() {
        ExtRegime::LowerBound
    } else {
        ExtRegime::Exact
    }
}

fn check_rank(n: usize, w: &Weight) -> Result<()> {
    if w.n() != n {
        return Err(Error::Dimension(format!(
            "{w} has {} entries, expected {n}",
            w.n()
        )));
    }
    Ok(())
}

/// Every pairwise sum of `weights` has height at least 2, so no weight of the
/// degree-2 super-exterior power of the complement, shifted by `λ`, reaches
/// height `ht(λ) + 1`.
pub fn height_certificate(weights: &[Weight]) -> bool {
    let two = Rational::integer(2);
    weights.iter().all(|a| a.height() >= Rational::one())
        && weights
            .iter()
            .enumerate()
            .all(|(i, a)| weights[i..].iter().all(|b| (a + b).height() >= two))
}

/// Height argument excluding `K_{λ+α}` from the degree-2 piece of the
/// Koszul-type resolution.
pub fn verify_height_obstruction(n: usize, lambda: &Weight, alpha: &Weight) -> Result<bool> {
    check_rank(n, lambda)?;
    check_rank(n, alpha)?;
    if alpha.height() != Rational::one() {
        return Err(Error::InvalidRoot(format!(
            "{alpha} does not have height 1"
        )));
    }
    let mut weights: Vec<Weight> = complement_weights(n)?
        .into_iter()
        .map(|r| r.weight)
        .collect();
    weights.sort();
    weights.dedup();
    Ok(height_certificate(&weights))
}

/// `(λ₁ mod Z, parity)`; the parity is the free choice at the coset basepoint.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BlockId {
    pub coset: Rational,
    pub parity: Parity,
}

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.coset, self.parity.bit())
    }
}

fn frac(x: &Rational) -> Rational {
    x - &x.floor()
}

pub fn block_id(lambda: &Weight, parity_base: Parity) -> Result<BlockId> {
    lambda.require_dominant()?;
    Ok(BlockId {
        coset: frac(lambda.get(0)),
        parity: parity_base,
    })
}

/// Chain of dominant weights from `λ` to `μ`, each step `±ε_i`: up to the
/// componentwise maximum, then down. Empty when `λ = μ`.
pub fn block_path(lambda: &Weight, mu: &Weight) -> Result<Vec<Weight>> {
    lambda.require_dominant()?;
    mu.require_dominant()?;
    if lambda.n() != mu.n() || !lambda.same_coset(mu) {
        return Err(Error::DifferentBlocks(format!("{lambda} and {mu}")));
    }
    if lambda == mu {
        return Ok(Vec::new());
    }
    let top = lambda.join(mu);
    let mut path = raise_to(lambda, &top);
    let mut down = raise_to(mu, &top);
    down.pop();
    path.extend(down.into_iter().rev());
    Ok(path)
}

/// `λ, λ+ε_i, …, top`, always raising the leftmost coordinate below `top`.
fn raise_to(lambda: &Weight, top: &Weight) -> Vec<Weight> {
    let mut cur = lambda.clone();
    let mut out = vec![cur.clone()];
    while let Some(i) = (0..cur.n()).find(|&i| cur.get(i) < top.get(i)) {
        cur = &cur + &Weight::epsilon(cur.n(), i);
        out.push(cur.clone());
    }
    out
}

/// Basis indices grouped by the class of their weight modulo `Z^n`,
/// keyed by the vector of fractional parts.
pub fn weight_split<R: Representation + ?Sized>(m: &R) -> BTreeMap<Weight, Vec<usize>> {
    let mut out: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for v in 0..m.dim() {
        let w = m.weight(v);
        let key = Weight::new(w.entries().iter().map(frac).collect());
        out.entry(key).or_default().push(v);
    }
    out
}

/// `M = M' ⊕ M''`, the `±1` eigenspaces of `σ(v) = (−1)^{p(μ)−d} v` for `v`
/// of weight `μ` and parity `d`, where `p(μ) = base + Σ ⌊μ_i⌋`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParitySplit {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

impl ParitySplit {
    pub fn dims(&self) -> (usize, usize) {
        (self.plus.len(), self.minus.len())
    }
}

pub fn weight_parity(mu: &Weight, base: Parity) -> Parity {
    let floors: Rational = mu.entries().iter().map(Rational::floor).sum();
    let even = (floors * Rational::new(1, 2)).is_integer();
    base + if even { Parity::Even } else { Parity::Odd }
}

pub fn parity_split<R: Representation + ?Sized>(m: &R, base: Parity) -> Result<ParitySplit> {
    let cosets = weight_split(m);
    if cosets.len() > 1 {
        let keys: Vec<String> = cosets.keys().map(|k| k.to_string()).collect();
        return Err(Error::MultipleCosets(keys.join(", ")));
    }
    let (mut plus, mut minus) = (Vec::new(), Vec::new());
    for v in 0..m.dim() {
        if weight_parity(&m.weight(v), base) == m.parity(v) {
            plus.push(v);
        } else {
            minus.push(v);
        }
    }
    let units = |vs: &[usize]| {
        vs.iter()
            .map(|&v| SparseVector::unit(v))
            .collect::<Vec<_>>()
    };
    for part in [&plus, &minus] {
        if !is_invariant(m, &units(part)) {
            return Err(Error::Invalid("parity eigenspace is not invariant".into()));
        }
    }
    Ok(ParitySplit { plus, minus })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtArrow {
    pub alpha: Weight,
    pub target: Weight,
    pub mult: u64,
    pub regime: ExtRegime,
}

/// How the simplicity hypotheses on `K_λ` and its neighbours were settled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Hypothesis {
    /// Every Kac module involved was built and tested irreducible.
    Verified,
    /// Some Kac module involved is reducible.
    Failed,
    /// Too large to build; `λ` is sufficiently dominant.
    #[serde(rename = "assumed: sufficiently dominant")]
    Assumed,
    /// Too large to build and not sufficiently dominant.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtFragment {
    pub center: Weight,
    pub arrows: Vec<ExtArrow>,
    pub simplicity: Hypothesis,
}

/// All `λ_i − λ_{i+1} ≥ n`.
pub fn sufficiently_dominant(lambda: &Weight) -> bool {
    let n = Rational::integer(lambda.n() as i64);
    (1..lambda.n()).all(|i| lambda.get(i - 1) - lambda.get(i) >= n)
}

/// Star of arrows out of `λ`, one bundle per distinct dominant `λ+α` with
/// nonzero multiplicity.
pub fn build_ext_fragment(n: usize, lambda: &Weight) -> Result<ExtFragment> {
    check_rank(n, lambda)?;
    lambda.require_dominant()?;
    let arrows: Vec<ExtArrow> = complement_roots(n)?
        .into_par_iter()
        .filter(|alpha| (lambda + alpha).is_dominant())
        .map(|alpha| {
            let d = ext_dim_formula(n, lambda, &alpha)?;
            Ok(ExtArrow {
                target: lambda + &alpha,
                alpha,
                mult: d.mult,
                regime: d.regime,
            })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|a| a.mult > 0)
        .collect();
    let simplicity = simplicity_hypothesis(n, lambda, &arrows)?;
    Ok(ExtFragment {
        center: lambda.clone(),
        arrows,
        simplicity,
    })
}

fn simplicity_hypothesis(n: usize, lambda: &Weight, arrows: &[ExtArrow]) -> Result<Hypothesis> {
    let mut weights = vec![lambda.clone()];
    weights.extend(arrows.iter().map(|a| a.target.clone()));
    let mut buildable = true;
    for w in &weights {
        if weyl_dim(w)? > DEFAULT_IRREP_CAP {
            buildable = false;
            break;
        }
    }
    if !buildable {
        return Ok(if sufficiently_dominant(lambda) {
            Hypothesis::Assumed
        } else {
            Hypothesis::Unknown
        });
    }
    let all_simple = weights
        .par_iter()
        .map(|w| Ok(is_irreducible(&build_kac_w(n, w)?.module)))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    Ok(if all_simple {
        Hypothesis::Verified
    } else {
        Hypothesis::Failed
    })
}

impl ExtFragment {
    pub fn target_count(&self) -> usize {
        self.arrows.len()
    }

    /// Vertex 0 is the center; arrows carry the multiplicities.
    pub fn to_quiver(&self) -> Quiver {
        let mut vertices = vec![self.center.to_string()];
        vertices.extend(self.arrows.iter().map(|a| a.target.to_string()));
        let mut q = Quiver::new(vertices);
        for (i, a) in self.arrows.iter().enumerate() {
            q.add_arrow(0, i + 1, a.mult as usize)
                .expect("vertex exists");
        }
        q
    }

    pub fn to_dot(&self) -> String {
        self.to_quiver().to_dot()
    }
}

/// Whether `a` and `b` get the same [`BlockId`] for a common basepoint parity.
pub fn same_block(a: &Weight, b: &Weight, base: Parity) -> Result<bool> {
    Ok(a.same_coset(b) && block_id(a, base)? == block_id(b, base)?)
}
