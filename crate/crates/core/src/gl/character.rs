use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::linalg::Rational;
use crate::weight::Weight;

/// Formal character: weight -> multiplicity. Multiplicities are signed so
/// virtual characters can appear while peeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    n: usize,
    mults: BTreeMap<Weight, i64>,
}

impl Character {
    pub fn new(n: usize) -> Self {
        Character {
            n,
            mults: BTreeMap::new(),
        }
    }

    pub fn from_weights<'a>(n: usize, weights: impl IntoIterator<Item = &'a Weight>) -> Self {
        let mut c = Character::new(n);
        for w in weights {
            c.add(w, 1);
        }
        c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add(&mut self, w: &Weight, k: i64) {
        if k == 0 {
            return;
        }
        assert_eq!(w.n(), self.n, "weight rank");
        let e = self.mults.entry(w.clone()).or_insert(0);
        *e += k;
        if *e == 0 {
            self.mults.remove(w);
        }
    }

    pub fn add_scaled(&mut self, other: &Character, k: i64) {
        for (w, m) in &other.mults {
            self.add(w, m * k);
        }
    }

    pub fn mult(&self, w: &Weight) -> i64 {
        self.mults.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    /// Sum of multiplicities.
    pub fn dim(&self) -> i64 {
        self.mults.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, i64)> + '_ {
        self.mults.iter().map(|(w, m)| (w, *m))
    }

    /// Lexicographically largest weight in the support.
    pub fn lex_max(&self) -> Option<(&Weight, i64)> {
        self.mults.iter().next_back().map(|(w, m)| (w, *m))
    }

    /// Character of the tensor product.
    pub fn product(&self, other: &Character) -> Character {
        let mut out = Character::new(self.n);
        for (a, ma) in &self.mults {
            for (b, mb) in &other.mults {
                out.add(&(a + b), ma * mb);
            }
        }
        out
    }

    pub fn shifted(&self, t: &Rational) -> Character {
        Character {
            n: self.n,
            mults: self.mults.iter().map(|(w, m)| (w.shifted(t), *m)).collect(),
        }
    }

    /// Invariance under every transposition of coordinates.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|i| {
            self.mults.iter().all(|(w, m)| {
                let mut e = w.entries().to_vec();
                e.swap(i, i + 1);
                self.mult(&Weight::new(e)) == *m
            })
        })
    }

    pub fn into_map(self) -> BTreeMap<Weight, i64> {
        self.mults
    }
}

/// One summand of a decomposition, in its JSON shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMult {
    pub weight: Weight,
    pub mult: u64,
}

pub fn decomposition_entries(d: &BTreeMap<Weight, u64>) -> Vec<WeightMult> {
    d.iter()
        .rev()
        .map(|(w, m)| WeightMult {
            weight: w.clone(),
            mult: *m,
        })
        .collect()
}
