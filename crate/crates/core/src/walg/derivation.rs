use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::grassmann::{render_set, GrassmannElement, MAX_GENERATORS};
use crate::linalg::Rational;
use crate::weight::{Parity, Weight};

/// The derivation `ξ_I ∂/∂ξ_j` of `Λ[ξ_1, …, ξ_n]`.
///
/// `set` is the bit set `I` and `target` the 0-based index of `j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisDerivation {
    n: u8,
    set: u32,
    target: u8,
}

impl BasisDerivation {
    pub fn new(n: usize, set: u32, target: usize) -> Result<Self> {
        if n == 0 || n > MAX_GENERATORS {
            return Err(Error::OutOfRange(format!("generator count {n}")));
        }
        if set >> n != 0 || target >= n {
            return Err(Error::OutOfRange(format!(
                "derivation ({set:#b}, {target}) for n = {n}"
            )));
        }
        Ok(BasisDerivation {
            n: n as u8,
            set,
            target: target as u8,
        })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn set(&self) -> u32 {
        self.set
    }

    /// 0-based index of the differentiated generator.
    pub fn target(&self) -> usize {
        self.target as usize
    }

    /// Z-degree `|I| − 1`.
    pub fn degree(&self) -> i32 {
        self.set.count_ones() as i32 - 1
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.degree() as i64)
    }

    /// `Σ_{i∈I} ε_i − ε_j`
    pub fn weight(&self) -> Weight {
        let n = self.n();
        let mut w = vec![Rational::zero(); n];
        for (i, wi) in w.iter_mut().enumerate() {
            if self.set >> i & 1 == 1 {
                *wi += Rational::one();
            }
        }
        w[self.target()] -= Rational::one();
        Weight::new(w)
    }

    /// Integer weight vector, convenient for hashing in hot loops.
    pub fn weight_i64(&self) -> Vec<i64> {
        (0..self.n())
            .map(|i| (self.set >> i & 1) as i64 - (i == self.target()) as i64)
            .collect()
    }

    /// Renders as `x1x2.d3`; `d3` when `I` is empty.
    pub fn render(&self) -> String {
        let d = format!("d{}", self.target + 1);
        if self.set == 0 {
            d
        } else {
            format!("{}.{d}", render_set(self.set, ""))
        }
    }

    /// Parses the `x1x2.d3` rendering.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a basis derivation: {s:?}"));
        let (xs, d) = match s.split_once('.') {
            Some((xs, d)) => (xs, d),
            None => ("", s),
        };
        let target: usize = d
            .strip_prefix('d')
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        let mut set = 0u32;
        for part in xs.split('x').filter(|p| !p.is_empty()) {
            let i: usize = part.parse().map_err(|_| bad())?;
            if i == 0 || i > n || set >> (i - 1) & 1 == 1 {
                return Err(bad());
            }
            set |= 1 << (i - 1);
        }
        if target == 0 {
            return Err(bad());
        }
        BasisDerivation::new(n, set, target - 1)
    }

    fn sort_key(&self) -> (u32, u32, u8) {
        (self.set.count_ones(), self.set, self.target)
    }
}

impl Ord for BasisDerivation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.sort_key()).cmp(&(other.n, other.sort_key()))
    }
}

impl PartialOrd for BasisDerivation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BasisDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for BasisDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// All `n·2^n` basis derivations, ordered by degree, then index set, then target.
pub fn basis(n: usize) -> Result<Vec<BasisDerivation>> {
    if !(2..=6).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "W(n) is supported for 2 ≤ n ≤ 6, got {n}"
        )));
    }
    Ok(basis_unchecked(n))
}

pub(crate) fn basis_unchecked(n: usize) -> Vec<BasisDerivation> {
    let mut out: Vec<BasisDerivation> = (0u32..(1 << n))
        .flat_map(|set| {
            (0..n).map(move |t| BasisDerivation {
                n: n as u8,
                set,
                target: t as u8,
            })
        })
        .collect();
    out.sort();
    out
}

/// A linear combination of basis derivations, i.e. an element of `W(n)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperDerivation {
    n: usize,
    terms: BTreeMap<BasisDerivation, Rational>,
}

impl SuperDerivation {
    pub fn zero(n: usize) -> Self {
        SuperDerivation {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(d: BasisDerivation) -> Self {
        let mut s = Self::zero(d.n());
        s.add_term(d, Rational::one());
        s
    }

    /// Convenience constructor: `ξ_I ∂/∂ξ_j` from 1-based generator indices.
    pub fn xi_d(n: usize, xis: &[usize], j: usize) -> Result<Self> {
        let mut set = 0u32;
        let mut sign = 1i64;
        for &i in xis {
            if i == 0 || i > n {
                return Err(Error::OutOfRange(format!("ξ_{i} with n = {n}")));
            }
            let bit = 1u32 << (i - 1);
            if set & bit != 0 {
                return Ok(Self::zero(n));
            }
            // move ξ_i from the right end into sorted position
            if (set >> i).count_ones() % 2 == 1 {
                sign = -sign;
            }
            set |= bit;
        }
        if j == 0 || j > n {
            return Err(Error::OutOfRange(format!("∂/∂ξ_{j} with n = {n}")));
        }
        let mut s = Self::zero(n);
        s.add_term(
            BasisDerivation::new(n, set, j - 1)?,
            Rational::integer(sign),
        );
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisDerivation, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &BasisDerivation) -> Rational {
        self.terms.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, d: BasisDerivation, c: Rational) {
        assert_eq!(d.n(), self.n, "derivation for a different n");
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(d).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn add(&self, other: &SuperDerivation) -> Result<SuperDerivation> {
        if self.n != other.n {
            return Err(Error::MismatchedGenerators(self.n, other.n));
        }
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(*d, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Rational) -> SuperDerivation {
        let mut out = Self::zero(self.n);
        for (d, c) in self.terms() {
            out.add_term(*d, c * k);
        }
        out
    }

    pub fn sub(&self, other: &SuperDerivation) -> Result<SuperDerivation> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Common parity of all terms, if any.
    pub fn parity(&self) -> Option<Parity> {
        let mut ps = self.terms.keys().map(|d| d.parity());
        let first = ps.next()?;
        ps.all(|p| p == first).then_some(first)
    }

    pub fn degree(&self) -> Option<i32> {
        let mut ds = self.terms.keys().map(|d| d.degree());
        let first = ds.next()?;
        ds.all(|d| d == first).then_some(first)
    }

    pub fn weight(&self) -> Option<Weight> {
        let mut ws = self.terms.keys().map(|d| d.weight());
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    fn parity_part(&self, p: Parity) -> SuperDerivation {
        SuperDerivation {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(d, _)| d.parity() == p)
                .map(|(d, c)| (*d, c.clone()))
                .collect(),
        }
    }

    /// Action on the Grassmann algebra: `Σ c · ξ_I · ∂_j f`.
    pub fn apply(&self, f: &GrassmannElement) -> Result<GrassmannElement> {
        if f.n() != self.n {
            return Err(Error::MismatchedGenerators(self.n, f.n()));
        }
        let mut out = GrassmannElement::zero(self.n);
        for (d, c) in self.terms() {
            let part = f.partial0(d.target()).left_mul_monomial(d.set());
            out = out.add(&part.scale(c));
        }
        Ok(out)
    }

    /// Images of the generators `ξ_1, …, ξ_n`.
    pub fn generator_images(&self) -> Vec<GrassmannElement> {
        let mut images = vec![GrassmannElement::zero(self.n); self.n];
        for (d, c) in self.terms() {
            images[d.target()].add_term(d.set(), c.clone());
        }
        images
    }

    /// The derivation sending `ξ_k` to `images[k]`.
    pub fn from_generator_images(n: usize, images: &[GrassmannElement]) -> Result<Self> {
        if images.len() != n {
            return Err(Error::Dimension(format!(
                "{} generator images for n = {n}",
                images.len()
            )));
        }
        let mut out = Self::zero(n);
        for (k, img) in images.iter().enumerate() {
            if img.n() != n {
                return Err(Error::MismatchedGenerators(n, img.n()));
            }
            for (set, c) in img.terms() {
                out.add_term(BasisDerivation::new(n, set, k)?, c.clone());
            }
        }
        Ok(out)
    }

    /// Superbracket `[x, y] = x∘y − (−1)^{p(x)p(y)} y∘x`, extended bilinearly
    /// over parity components and evaluated on the generators.
    pub fn bracket(&self, other: &SuperDerivation) -> Result<SuperDerivation> {
        if self.n != other.n {
            return Err(Error::MismatchedGenerators(self.n, other.n));
        }
        let n = self.n;
        let mut images = vec![GrassmannElement::zero(n); n];
        for px in [Parity::Even, Parity::Odd] {
            let x = self.parity_part(px);
            if x.is_zero() {
                continue;
            }
            for py in [Parity::Even, Parity::Odd] {
                let y = other.parity_part(py);
                if y.is_zero() {
                    continue;
                }
                let sign = Rational::integer(px.koszul(py));
                let (xi, yi) = (x.generator_images(), y.generator_images());
                for k in 0..n {
                    let xy = x.apply(&yi[k])?;
                    let yx = y.apply(&xi[k])?;
                    images[k] = images[k].add(&xy).add(&yx.scale(&-sign.clone()));
                }
            }
        }
        Self::from_generator_images(n, &images)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms()
            .map(|(d, c)| {
                if c.is_one() {
                    d.render()
                } else {
                    format!("{c}*{}", d.render())
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for SuperDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for SuperDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xd(n: usize, xis: &[usize], j: usize) -> SuperDerivation {
        SuperDerivation::xi_d(n, xis, j).unwrap()
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(basis(2).unwrap().len(), 8);
        let b3 = basis(3).unwrap();
        assert_eq!(b3.len(), 24);
        assert_eq!(b3.iter().filter(|d| d.degree() == -1).count(), 3);
        assert_eq!(b3.iter().filter(|d| d.degree() == 2).count(), 3);
        assert!(basis(1).is_err());
        assert!(basis(7).is_err());
    }

    #[test]
    fn bracket_examples() {
        // [∂1, ξ1∂2] = ∂2
        assert_eq!(
            xd(2, &[], 1).bracket(&xd(2, &[1], 2)).unwrap(),
            xd(2, &[], 2)
        );
        // [ξ1∂2, ξ2∂1] = ξ1∂1 − ξ2∂2
        let lhs = xd(2, &[1], 2).bracket(&xd(2, &[2], 1)).unwrap();
        assert_eq!(lhs, xd(2, &[1], 1).sub(&xd(2, &[2], 2)).unwrap());
        // [∂1, ξ1ξ2∂2] = ξ2∂2 (anticommutator of odd elements)
        assert_eq!(
            xd(2, &[], 1).bracket(&xd(2, &[1, 2], 2)).unwrap(),
            xd(2, &[2], 2)
        );
    }

    #[test]
    fn reordered_constructor_signs() {
        assert_eq!(
            xd(3, &[2, 1], 3),
            xd(3, &[1, 2], 3).scale(&-Rational::one())
        );
        assert!(xd(3, &[1, 1], 3).is_zero());
    }

    #[test]
    fn render_and_parse() {
        let d = BasisDerivation::new(3, 0b011, 2).unwrap();
        assert_eq!(d.render(), "x1x2.d3");
        assert_eq!(BasisDerivation::parse(3, "x1x2.d3").unwrap(), d);
        assert_eq!(BasisDerivation::parse(3, "d2").unwrap().render(), "d2");
        assert!(BasisDerivation::parse(3, "x4.d1").is_err());
    }

    #[test]
    fn weights_and_degrees() {
        let d = BasisDerivation::new(3, 0b011, 2).unwrap();
        assert_eq!(d.weight(), Weight::from_i64(&[1, 1, -1]));
        assert_eq!(d.degree(), 1);
        assert_eq!(d.parity(), Parity::Odd);
    }

    /// The bracket computed on generators agrees with the operator
    /// commutator on every monomial of the Grassmann algebra.
    #[test]
    fn bracket_is_operator_supercommutator() {
        let n = 3;
        let b = basis(n).unwrap();
        for x in &b {
            for y in &b {
                let (sx, sy) = (SuperDerivation::basis(*x), SuperDerivation::basis(*y));
                let br = sx.bracket(&sy).unwrap();
                let sign = Rational::integer(x.parity().koszul(y.parity()));
                for set in 0u32..(1 << n) {
                    let f = GrassmannElement::monomial(n, set, Rational::one());
                    let lhs = br.apply(&f).unwrap();
                    let xy = sx.apply(&sy.apply(&f).unwrap()).unwrap();
                    let yx = sy.apply(&sx.apply(&f).unwrap()).unwrap();
                    assert_eq!(
                        lhs,
                        xy.add(&yx.scale(&-sign.clone())),
                        "[{x}, {y}] on {set:#b}"
                    );
                }
            }
        }
    }
}
