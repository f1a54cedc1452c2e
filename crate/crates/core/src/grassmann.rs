//! The Grassmann algebra `Λ[ξ_1, …, ξ_n]`.
//!
//! Monomials are bit sets over the generators (bit `i` is `ξ_{i+1}`), always
//! in ascending generator order; every sign is normalized at construction.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Rational;

pub const MAX_GENERATORS: usize = 16;

/// Number of `(i, j)` with `i ∈ a`, `j ∈ b`, `i > j`.
pub fn inversions(a: u32, b: u32) -> u32 {
    let mut count = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        count += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    count
}

/// Sign of `ξ_a · ξ_b` rewritten in ascending order, or `None` when they overlap.
pub fn product_sign(a: u32, b: u32) -> Option<i64> {
    if a & b != 0 {
        None
    } else if inversions(a, b) % 2 == 0 {
        Some(1)
    } else {
        Some(-1)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    n: u8,
    set: u32,
}

impl Monomial {
    pub fn new(n: usize, set: u32) -> Result<Self> {
        check_n(n)?;
        if set >> n != 0 {
            return Err(Error::OutOfRange(format!(
                "monomial {set:#b} uses generators beyond ξ_{n}"
            )));
        }
        Ok(Monomial { n: n as u8, set })
    }

    pub fn one(n: usize) -> Self {
        Monomial { n: n as u8, set: 0 }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn set(&self) -> u32 {
        self.set
    }

    pub fn degree(&self) -> usize {
        self.set.count_ones() as usize
    }

    /// Renders as `x1^x2`; the unit monomial is `1`.
    pub fn render(&self) -> String {
        render_set(self.set, "^")
    }
}

/// Renders a generator set as `x1<sep>x2…`, or `1` when empty.
pub(crate) fn render_set(set: u32, sep: &str) -> String {
    if set == 0 {
        return "1".into();
    }
    (0..32)
        .filter(|i| set >> i & 1 == 1)
        .map(|i| format!("x{}", i + 1))
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_GENERATORS {
        Err(Error::OutOfRange(format!(
            "generator count {n} outside 1..={MAX_GENERATORS}"
        )))
    } else {
        Ok(())
    }
}

/// An element of `Λ[ξ]`: monomial bit set -> coefficient, no stored zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct GrassmannElement {
    n: usize,
    terms: BTreeMap<u32, Rational>,
}

impl GrassmannElement {
    pub fn zero(n: usize) -> Self {
        GrassmannElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0, Rational::one())
    }

    pub fn monomial(n: usize, set: u32, coeff: Rational) -> Self {
        let mut e = Self::zero(n);
        e.add_term(set, coeff);
        e
    }

    /// The generator `ξ_i` (1-based).
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        check_n(n)?;
        if i == 0 || i > n {
            return Err(Error::OutOfRange(format!("generator ξ_{i} with n = {n}")));
        }
        Ok(Self::monomial(n, 1 << (i - 1), Rational::one()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> + '_ {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    pub fn coefficient(&self, set: u32) -> Rational {
        self.terms.get(&set).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, set: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(set).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&set);
        }
    }

    pub fn add(&self, other: &GrassmannElement) -> GrassmannElement {
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.add_term(s, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> GrassmannElement {
        let mut out = Self::zero(self.n);
        for (s, c) in self.terms() {
            out.add_term(s, c * k);
        }
        out
    }

    /// Whether all terms have the same degree; returns that degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|s| s.count_ones() as usize);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn multiply(&self, other: &GrassmannElement) -> Result<GrassmannElement> {
        if self.n != other.n {
            return Err(Error::MismatchedGenerators(self.n, other.n));
        }
        let mut out = Self::zero(self.n);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if let Some(sign) = product_sign(a, b) {
                    out.add_term(a | b, ca * cb * Rational::integer(sign));
                }
            }
        }
        Ok(out)
    }

    /// The odd derivation `∂/∂ξ_j` (1-based `j`).
    pub fn apply_partial(&self, j: usize) -> Result<GrassmannElement> {
        if j == 0 || j > self.n {
            return Err(Error::OutOfRange(format!("∂/∂ξ_{j} with n = {}", self.n)));
        }
        Ok(self.partial0(j - 1))
    }

    /// `∂/∂ξ` for a 0-based generator index.
    pub(crate) fn partial0(&self, j: usize) -> GrassmannElement {
        let bit = 1u32 << j;
        let mut out = Self::zero(self.n);
        for (s, c) in self.terms() {
            if s & bit != 0 {
                let before = (s & (bit - 1)).count_ones();
                let sign = if before % 2 == 0 { 1 } else { -1 };
                out.add_term(s & !bit, c * Rational::integer(sign));
            }
        }
        out
    }

    /// Left multiplication by the monomial `ξ_set`.
    pub(crate) fn left_mul_monomial(&self, set: u32) -> GrassmannElement {
        let mut out = Self::zero(self.n);
        for (s, c) in self.terms() {
            if let Some(sign) = product_sign(set, s) {
                out.add_term(set | s, c * Rational::integer(sign));
            }
        }
        out
    }
}

impl fmt::Debug for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string())
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(s, c)| format!("{c}*{}", render_set(s, "^")))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn xi(n: usize, i: usize) -> GrassmannElement {
        GrassmannElement::generator(n, i).unwrap()
    }

    #[test]
    fn products_of_generators() {
        let p = xi(3, 1).multiply(&xi(3, 2)).unwrap();
        assert_eq!(p, GrassmannElement::monomial(3, 0b011, Rational::one()));
        let q = xi(3, 2).multiply(&xi(3, 1)).unwrap();
        assert_eq!(q, GrassmannElement::monomial(3, 0b011, -Rational::one()));
        assert!(xi(3, 1).multiply(&xi(3, 1)).unwrap().is_zero());
        assert!(xi(3, 1).multiply(&xi(2, 1)).is_err());
    }

    #[test]
    fn partial_derivatives() {
        let x12 = GrassmannElement::monomial(3, 0b011, Rational::one());
        assert_eq!(x12.apply_partial(1).unwrap(), xi(3, 2));
        assert_eq!(
            x12.apply_partial(2).unwrap(),
            xi(3, 1).scale(&-Rational::one())
        );
        assert!(x12.apply_partial(3).unwrap().is_zero());
        assert!(x12.apply_partial(4).is_err());
        assert!(x12.apply_partial(0).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(Monomial::new(3, 0b101).unwrap().render(), "x1^x3");
        assert_eq!(Monomial::one(3).render(), "1");
        assert!(Monomial::new(2, 0b100).is_err());
    }

    fn element(n: usize) -> impl Strategy<Value = GrassmannElement> {
        proptest::collection::vec((0u32..(1 << n), -3i64..=3), 0..6).prop_map(move |terms| {
            let mut e = GrassmannElement::zero(n);
            for (s, c) in terms {
                e.add_term(s, Rational::integer(c));
            }
            e
        })
    }

    fn homogeneous(n: usize) -> impl Strategy<Value = GrassmannElement> {
        (0..=n).prop_flat_map(move |d| {
            let sets: Vec<u32> = (0u32..(1 << n))
                .filter(|s| s.count_ones() as usize == d)
                .collect();
            proptest::collection::vec((proptest::sample::select(sets), -3i64..=3), 1..4).prop_map(
                move |terms| {
                    let mut e = GrassmannElement::zero(n);
                    for (s, c) in terms {
                        e.add_term(s, Rational::integer(c));
                    }
                    e
                },
            )
        })
    }

    proptest! {
        #[test]
        fn associative(a in element(4), b in element(4), c in element(4)) {
            let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn supercommutative(f in homogeneous(4), g in homogeneous(4)) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let (df, dg) = (f.homogeneous_degree().unwrap(), g.homogeneous_degree().unwrap());
            let sign = if df * dg % 2 == 0 { Rational::one() } else { -Rational::one() };
            prop_assert_eq!(f.multiply(&g).unwrap(), g.multiply(&f).unwrap().scale(&sign));
        }

        #[test]
        fn partial_squares_to_zero(f in element(4), j in 1usize..=4) {
            prop_assert!(f.apply_partial(j).unwrap().apply_partial(j).unwrap().is_zero());
        }

        #[test]
        fn partials_anticommute(f in element(4), i in 1usize..=4, j in 1usize..=4) {
            prop_assume!(i != j);
            let ij = f.apply_partial(j).unwrap().apply_partial(i).unwrap();
            let ji = f.apply_partial(i).unwrap().apply_partial(j).unwrap();
            prop_assert_eq!(ij, ji.scale(&-Rational::one()));
        }
    }
}
