//! Weights with respect to the diagonal Cartan subalgebra of `gl(n)`, written
//! in the basis `ε_1, …, ε_n`, and `Z/2` parities.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Rational;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<Rational>);

impl Weight {
    pub fn new(entries: Vec<Rational>) -> Self {
        Weight(entries)
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![Rational::zero(); n])
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Weight(entries.iter().map(|&x| Rational::integer(x)).collect())
    }

    /// The weight `ε_i` (0-based index).
    pub fn epsilon(n: usize, i: usize) -> Self {
        let mut w = Weight::zero(n);
        w.0[i] = Rational::one();
        w
    }

    /// `(t, …, t)`
    pub fn constant(n: usize, t: Rational) -> Self {
        Weight(vec![t; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    /// Sum of the coordinates.
    pub fn height(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    /// `λ_i − λ_{i+1} ∈ Z≥0` for every consecutive pair.
    pub fn is_dominant(&self) -> bool {
        self.dominance_violation().is_none()
    }

    /// The first consecutive pair `(i, i+1)` (0-based) breaking dominance.
    pub fn dominance_violation(&self) -> Option<(usize, usize)> {
        (0..self.n().saturating_sub(1))
            .find(|&i| {
                let d = &self.0[i] - &self.0[i + 1];
                !d.is_integer() || d.is_negative()
            })
            .map(|i| (i, i + 1))
    }

    /// Returns an error naming the violating pair (1-based) when not dominant.
    pub fn require_dominant(&self) -> Result<()> {
        match self.dominance_violation() {
            None => Ok(()),
            Some((i, j)) => Err(Error::NotDominant {
                weight: self.to_string(),
                detail: format!(
                    "λ{} − λ{} = {} is not a nonnegative integer",
                    i + 1,
                    j + 1,
                    &self.0[i] - &self.0[j]
                ),
            }),
        }
    }

    /// Whether `self − other` lies in the root lattice `Z^n`.
    pub fn same_coset(&self, other: &Weight) -> bool {
        self.n() == other.n()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| (a - b).is_integer())
    }

    /// `(t, …, t)` shift.
    pub fn shifted(&self, t: &Rational) -> Weight {
        Weight(self.0.iter().map(|x| x + t).collect())
    }

    pub fn scaled(&self, k: &Rational) -> Weight {
        Weight(self.0.iter().map(|x| x * k).collect())
    }

    /// Standard inner product with `ε_i` orthonormal.
    pub fn dot(&self, other: &Weight) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn with(&self, i: usize, value: Rational) -> Weight {
        let mut w = self.clone();
        w.0[i] = value;
        w
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| if a >= b { a.clone() } else { b.clone() })
                .collect(),
        )
    }

    /// Parses comma-separated rationals, e.g. `5/2,3/2,1/2`.
    pub fn parse_list(s: &str) -> Result<Weight> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        s.split(',')
            .map(|p| p.parse::<Rational>())
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Weight::parse_list(s)
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.n(), rhs.n(), "weights of different rank");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.n(), rhs.n(), "weights of different rank");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|x| -x).collect())
    }
}

/// A `Z/2` grading label.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn of(k: i64) -> Parity {
        if k.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    /// Koszul sign `(−1)^{p(a)p(b)}` as `±1`.
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }

    /// `(−1)^{p}`
    pub fn sign(self) -> i64 {
        if self.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Serialize for Parity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.bit())
    }
}

impl<'de> Deserialize<'de> for Parity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match u8::deserialize(d)? {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            other => Err(serde::de::Error::custom(format!(
                "parity must be 0 or 1, got {other}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominance() {
        assert!(Weight::parse_list("5/2,3/2,1/2").unwrap().is_dominant());
        assert!(Weight::parse_list("1/2,1/2,1/2").unwrap().is_dominant());
        let w = Weight::parse_list("1,2,0").unwrap();
        assert_eq!(w.dominance_violation(), Some((0, 1)));
        assert!(w
            .require_dominant()
            .unwrap_err()
            .to_string()
            .contains("λ1 − λ2"));
        assert!(!Weight::parse_list("1,1/2,0").unwrap().is_dominant());
    }

    #[test]
    fn height_and_display() {
        let w = Weight::parse_list("(5/2, 3/2, 1/2)").unwrap();
        assert_eq!(w.height(), Rational::new(9, 2));
        assert_eq!(w.to_string(), "(5/2,3/2,1/2)");
    }

    #[test]
    fn parity_arithmetic() {
        assert_eq!(Parity::Odd + Parity::Odd, Parity::Even);
        assert_eq!(Parity::of(-3), Parity::Odd);
        assert_eq!(Parity::Odd.koszul(Parity::Odd), -1);
        assert_eq!(Parity::Odd.koszul(Parity::Even), 1);
    }
}
