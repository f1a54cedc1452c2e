//! Kac modules over `W(n)` and `sl(1, n)` as explicit induced modules.
//!
//! A Kac module is `Λ(F) ⊗ L_λ` where `F` is an abelian odd subalgebra
//! acting freely, the degree-0 part acts on `L_λ` through `gl(n)` and the
//! remaining part kills `1 ⊗ L_λ`. Basis vectors are `f_J ⊗ v` with
//! `f_J = f_{j1} ⋯ f_{jk}`, `j1 < ⋯ < jk`. An algebra element `y` is moved
//! past the odd factors with
//! `y · f_j f_R ⊗ v = [y, f_j] · f_R ⊗ v + (−1)^{p(y)} f_j · (y · f_R ⊗ v)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gl::{build_irrep_capped, weyl_dim, GlIrrep};
use crate::grassmann::render_set;
use crate::linalg::{Accumulator, Rational, SparseMatrix, SparseVector};
use crate::module::{is_irreducible, FiniteModule};
use crate::walg::Algebra;
use crate::weight::{Parity, Weight};

pub const DEFAULT_KAC_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KacFlavor {
    /// `K_λ` over `W(n)`, induced from `W_{≥0}`
    W,
    /// `K^sl(λ)` over `sl(1, n)`, induced from `sl_0 ⊕ sl_1`
    Sl,
    /// `K^op(λ)` over `sl(1, n)`, induced from `sl_{−1} ⊕ sl_0`
    Op,
}

impl fmt::Display for KacFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KacFlavor::W => "w",
            KacFlavor::Sl => "sl",
            KacFlavor::Op => "op",
        })
    }
}

impl FromStr for KacFlavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "w" | "W" => Ok(KacFlavor::W),
            "sl" => Ok(KacFlavor::Sl),
            "op" => Ok(KacFlavor::Op),
            other => Err(Error::Parse(format!(
                "unknown flavor {other:?}; expected w, sl or op"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct KacModule {
    pub module: FiniteModule,
    pub lambda: Weight,
    pub flavor: KacFlavor,
    irrep_dim: usize,
}

impl KacModule {
    pub fn dim(&self) -> usize {
        self.module.weights().len()
    }

    pub fn irrep_dim(&self) -> usize {
        self.irrep_dim
    }

    /// Basis indices spanning `1 ⊗ L_λ`.
    pub fn top_indices(&self) -> std::ops::Range<usize> {
        0..self.irrep_dim
    }
}

pub fn build_kac_w(n: usize, lambda: &Weight) -> Result<KacModule> {
    build_kac(n, lambda, KacFlavor::W, DEFAULT_KAC_CAP)
}

pub fn build_kac_sl(n: usize, lambda: &Weight, flavor: KacFlavor) -> Result<KacModule> {
    if flavor == KacFlavor::W {
        return Err(Error::IncompatibleAlgebra(
            "the W flavor is built over W(n)".into(),
        ));
    }
    build_kac(n, lambda, flavor, DEFAULT_KAC_CAP)
}

pub fn build_kac(n: usize, lambda: &Weight, flavor: KacFlavor, cap: usize) -> Result<KacModule> {
    if lambda.n() != n {
        return Err(Error::Dimension(format!("weight {lambda} for n = {n}")));
    }
    lambda.require_dominant()?;
    let dim_l = weyl_dim(lambda)? as usize;
    let total = dim_l.checked_mul(1 << n).unwrap_or(usize::MAX);
    if total > cap {
        return Err(Error::CapExceeded(format!(
            "dim K{lambda} = 2^{n}·{dim_l} = {total} exceeds the cap {cap}"
        )));
    }
    let irrep = build_irrep_capped(lambda, cap as u64)?;
    let algebra = match flavor {
        KacFlavor::W => Algebra::w(n)?,
        KacFlavor::Sl | KacFlavor::Op => Algebra::sl(n)?,
    };
    let (free_degree, killing): (i32, fn(i32) -> bool) = match flavor {
        KacFlavor::W => (-1, |d| d >= 1),
        KacFlavor::Sl => (-1, |d| d == 1),
        KacFlavor::Op => (1, |d| d == -1),
    };
    let free = algebra.indices_of_degree(free_degree);
    debug_assert_eq!(free.len(), n);
    let builder = Builder {
        algebra: algebra.clone(),
        irrep: &irrep,
        free: &free,
        killing,
        memo: HashMap::new(),
    };
    let module = builder.build()?;
    Ok(KacModule {
        module,
        lambda: lambda.clone(),
        flavor,
        irrep_dim: dim_l,
    })
}

struct Builder<'a> {
    algebra: Arc<Algebra>,
    irrep: &'a GlIrrep,
    free: &'a [usize],
    killing: fn(i32) -> bool,
    memo: HashMap<(usize, u32), Arc<Vec<SparseVector>>>,
}

impl Builder<'_> {
    fn dim_l(&self) -> usize {
        self.irrep.dim()
    }

    fn index(&self, set: u32, v: usize) -> usize {
        set as usize * self.dim_l() + v
    }

    /// `f_j · w` for a vector `w` of the module.
    fn left_free(&self, j: usize, w: &SparseVector) -> SparseVector {
        let d = self.dim_l();
        let bit = 1u32 << j;
        let entries: Vec<(usize, Rational)> = w
            .iter()
            .filter_map(|(i, c)| {
                let set = (i / d) as u32;
                if set & bit != 0 {
                    return None;
                }
                let sign = if (set & (bit - 1)).count_ones() % 2 == 0 {
                    1
                } else {
                    -1
                };
                Some((self.index(set | bit, i % d), c * Rational::integer(sign)))
            })
            .collect();
        SparseVector::from_entries(entries)
    }

    /// `y · (f_set ⊗ v)` for every basis vector `v` of `L_λ`.
    fn act(&mut self, y: usize, set: u32) -> Arc<Vec<SparseVector>> {
        if let Some(r) = self.memo.get(&(y, set)) {
            return r.clone();
        }
        let d = self.dim_l();
        let result: Vec<SparseVector> = if set == 0 {
            if let Some(j) = self.free.iter().position(|&f| f == y) {
                (0..d)
                    .map(|v| SparseVector::unit(self.index(1 << j, v)))
                    .collect()
            } else if (self.killing)(self.algebra.degree(y)) {
                vec![SparseVector::new(); d]
            } else {
                let (a, b) = self
                    .algebra
                    .gl_entry(y)
                    .expect("degree-0 elements are matrix units");
                let m = self.irrep.unit(a, b).transpose();
                (0..d).map(|v| m.row(v).clone()).collect()
            }
        } else {
            let j = set.trailing_zeros() as usize;
            let rest = set & (set - 1);
            let mut acc: Vec<Accumulator> = (0..d).map(|_| Accumulator::new()).collect();
            let bracket = self.algebra.bracket(y, self.free[j]).clone();
            for (z, c) in bracket.iter() {
                let part = self.act(z, rest);
                for (a, p) in acc.iter_mut().zip(part.iter()) {
                    a.add_scaled(p, c);
                }
            }
            let inner = self.act(y, rest);
            let sign = Rational::integer(self.algebra.parity(y).sign());
            for (a, p) in acc.iter_mut().zip(inner.iter()) {
                a.add_scaled(&self.left_free(j, p), &sign);
            }
            acc.into_iter().map(Accumulator::finish).collect()
        };
        let result = Arc::new(result);
        self.memo.insert((y, set), result.clone());
        result
    }

    fn build(mut self) -> Result<FiniteModule> {
        let n = self.free.len();
        let d = self.dim_l();
        let total = d << n;
        let mut weights = Vec::with_capacity(total);
        let mut parities = Vec::with_capacity(total);
        let mut labels = Vec::with_capacity(total);
        for set in 0u32..(1 << n) {
            let mut w = Weight::zero(self.algebra.n());
            for j in (0..n).filter(|j| set >> j & 1 == 1) {
                w = &w + self.algebra.weight(self.free[j]);
            }
            for v in 0..d {
                weights.push(&w + &self.irrep.weights()[v]);
                parities.push(Parity::of(set.count_ones() as i64));
                let f = if set == 0 {
                    "1".to_string()
                } else {
                    render_set(set, "^").replace('x', "f")
                };
                labels.push(format!("{f}⊗v{v}"));
            }
        }
        let mut actions = Vec::with_capacity(self.algebra.dim());
        for y in 0..self.algebra.dim() {
            let mut triplets = Vec::new();
            for set in 0u32..(1 << n) {
                let images = self.act(y, set);
                for (v, img) in images.iter().enumerate() {
                    let col = self.index(set, v);
                    triplets.extend(img.iter().map(|(r, c)| (r, col, c.clone())));
                }
            }
            actions.push(SparseMatrix::from_triplets(total, total, triplets)?);
        }
        FiniteModule::new(self.algebra.clone(), weights, parities, labels, actions)
    }
}

/// Outcome of the typicality test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Typicality {
    pub typical: bool,
    /// `"irreducibility"` when `K^sl(λ)` was built and tested,
    /// `"non-integral"` when only the sufficient condition `λ ∉ Z^n` was used.
    pub method: String,
}

/// `λ` is typical iff `K^sl(λ)` is irreducible.
pub fn is_typical(n: usize, lambda: &Weight) -> Result<Typicality> {
    match build_kac_sl(n, lambda, KacFlavor::Sl) {
        Ok(k) => Ok(Typicality {
            typical: is_irreducible(&k.module),
            method: "irreducibility".into(),
        }),
        Err(Error::CapExceeded(msg)) => {
            if lambda.entries().iter().any(|x| !x.is_integer()) {
                Ok(Typicality {
                    typical: true,
                    method: "non-integral".into(),
                })
            } else {
                Err(Error::CapExceeded(msg))
            }
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{
        highest_weight_vectors, non_cyclic_basis_vectors, submodule_generated, Borel,
    };
    use crate::Representation;

    fn w(s: &str) -> Weight {
        Weight::parse_list(s).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(build_kac_w(3, &w("0,0,0")).unwrap().dim(), 8);
        assert_eq!(build_kac_w(3, &w("1,0,0")).unwrap().dim(), 24);
        assert_eq!(build_kac_w(2, &w("1/3,1/3")).unwrap().dim(), 4);
        for s in ["0,0", "1,0", "1/2,1/2"] {
            let a = build_kac_sl(2, &w(s), KacFlavor::Sl).unwrap();
            let b = build_kac_sl(2, &w(s), KacFlavor::Op).unwrap();
            assert_eq!(a.dim(), b.dim());
        }
        assert!(matches!(
            build_kac(3, &w("4,2,0"), KacFlavor::W, 100),
            Err(Error::CapExceeded(_))
        ));
        assert!(matches!(
            build_kac_w(3, &w("0,1,0")),
            Err(Error::NotDominant { .. })
        ));
    }

    #[test]
    fn actions_are_homomorphisms() {
        for (n, s, flavor) in [
            (2, "1,0", KacFlavor::W),
            (2, "1/2,1/2", KacFlavor::Sl),
            (2, "1,0", KacFlavor::Op),
            (3, "1,0,0", KacFlavor::W),
            (3, "0,0,0", KacFlavor::Sl),
        ] {
            let k = build_kac(n, &w(s), flavor, DEFAULT_KAC_CAP).unwrap();
            assert!(k.module.grading_violations().is_empty(), "{s} {flavor}");
            assert!(k.module.all_bracket_violations().is_empty(), "{s} {flavor}");
        }
    }

    #[test]
    fn highest_weight_line() {
        let k = build_kac_w(3, &w("1,0,0")).unwrap();
        let hw = highest_weight_vectors(&k.module, Borel::B1).unwrap();
        assert_eq!(hw.len(), 1);
        assert_eq!(hw.keys().next().unwrap(), &w("1,0,0"));
        assert_eq!(hw.values().next().unwrap().len(), 1);
    }

    #[test]
    fn sl_typicality() {
        let typical = build_kac_sl(2, &w("1/2,1/2"), KacFlavor::Sl).unwrap();
        assert!(is_irreducible(&typical.module));
        let atypical = build_kac_sl(2, &w("0,0"), KacFlavor::Sl).unwrap();
        assert!(!is_irreducible(&atypical.module));
        let hw = highest_weight_vectors(&atypical.module, Borel::B1).unwrap();
        assert!(hw.values().map(Vec::len).sum::<usize>() >= 2);
        // the bottom vector f1 f2 ⊗ v spans a trivial submodule
        let bottom = SparseVector::unit(atypical.dim() - 1);
        let sub = submodule_generated(&atypical.module, &[bottom]);
        assert!(sub.dim() > 0 && sub.dim() < atypical.dim());
        assert!(!non_cyclic_basis_vectors(&atypical.module).is_empty());
        assert!(is_typical(2, &w("1/2,1/2")).unwrap().typical);
        assert!(!is_typical(2, &w("0,0")).unwrap().typical);
    }

    #[test]
    fn generic_w_kac_modules_are_irreducible() {
        for s in ["1/2,1/2,1/2", "5/2,3/2,1/2"] {
            let k = build_kac_w(3, &w(s)).unwrap();
            assert!(is_irreducible(&k.module), "{s}");
        }
        let k = build_kac_w(3, &w("0,0,0")).unwrap();
        assert!(!is_irreducible(&k.module));
        assert!(k.module.weight(0) == w("0,0,0"));
    }
}
