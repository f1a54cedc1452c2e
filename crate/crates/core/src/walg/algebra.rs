use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::derivation::{basis, BasisDerivation, SuperDerivation};
use crate::error::{Error, Result};
use crate::linalg::{solve, Accumulator, Rational, Span, SparseMatrix, SparseVector};
use crate::weight::{Parity, Weight};

/// Which Lie superalgebra a basis describes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    /// `gl(n) = W_0`
    Gl,
    /// `sl(1, n) = W_{-1} ⊕ W_0 ⊕ span{ξ_i E}`
    Sl,
    /// `W(n)`
    W,
    /// Hand-built structure constants (test fixtures).
    Custom(String),
}

impl AlgebraKind {
    pub fn tag(&self) -> &str {
        match self {
            AlgebraKind::Gl => "gl",
            AlgebraKind::Sl => "sl",
            AlgebraKind::W => "W",
            AlgebraKind::Custom(name) => name,
        }
    }
}

/// A finite-dimensional Lie superalgebra given by a homogeneous basis and
/// its structure constants. Every basis element carries a weight for the
/// diagonal Cartan of `gl(n)`, a parity and a Z-degree.
pub struct Algebra {
    kind: AlgebraKind,
    n: usize,
    elements: Vec<Option<SuperDerivation>>,
    labels: Vec<String>,
    weights: Vec<Weight>,
    parities: Vec<Parity>,
    degrees: Vec<i32>,
    gl_entries: Vec<Option<(usize, usize)>>,
    brackets: Vec<Vec<SparseVector>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Algebra({}, n = {}, dim = {})",
            self.kind.tag(),
            self.n,
            self.dim()
        )
    }
}

static W_CACHE: [OnceLock<Arc<Algebra>>; 7] = [const { OnceLock::new() }; 7];
static SL_CACHE: [OnceLock<Arc<Algebra>>; 7] = [const { OnceLock::new() }; 7];
static GL_CACHE: [OnceLock<Arc<Algebra>>; 7] = [const { OnceLock::new() }; 7];

fn check_n(n: usize) -> Result<()> {
    if (2..=6).contains(&n) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!(
            "n must satisfy 2 ≤ n ≤ 6, got {n}"
        )))
    }
}

/// `ξ_a ∂/∂ξ_b` corresponds to the matrix unit `E_ab`.
fn gl_entry(d: &SuperDerivation) -> Option<(usize, usize)> {
    let mut terms = d.terms();
    let (b, c) = terms.next()?;
    if terms.next().is_some() || !c.is_one() || b.set().count_ones() != 1 {
        return None;
    }
    Some((b.set().trailing_zeros() as usize, b.target()))
}

impl Algebra {
    /// `W(n)` with structure constants computed from the action on
    /// generators. Built once per `n` and shared.
    pub fn w(n: usize) -> Result<Arc<Algebra>> {
        check_n(n)?;
        Ok(W_CACHE[n]
            .get_or_init(|| {
                let elems: Vec<SuperDerivation> = basis(n)
                    .expect("checked n")
                    .into_iter()
                    .map(SuperDerivation::basis)
                    .collect();
                Arc::new(
                    Algebra::from_derivations(AlgebraKind::W, n, elems).expect("W(n) is closed"),
                )
            })
            .clone())
    }

    /// `sl(1, n)` realized inside `W(n)`.
    pub fn sl(n: usize) -> Result<Arc<Algebra>> {
        check_n(n)?;
        Ok(SL_CACHE[n]
            .get_or_init(|| {
                let elems = super::roots::sl_embedding_elements(n);
                Arc::new(
                    Algebra::from_derivations(AlgebraKind::Sl, n, elems)
                        .expect("sl(1,n) is closed"),
                )
            })
            .clone())
    }

    /// `gl(n) = W_0`, basis `ξ_a ∂_b ↔ E_ab`.
    pub fn gl(n: usize) -> Result<Arc<Algebra>> {
        check_n(n)?;
        Ok(GL_CACHE[n]
            .get_or_init(|| {
                let elems: Vec<SuperDerivation> = (0..n)
                    .flat_map(|a| (0..n).map(move |b| (a, b)))
                    .map(|(a, b)| {
                        SuperDerivation::basis(
                            BasisDerivation::new(n, 1 << a, b).expect("in range"),
                        )
                    })
                    .collect();
                Arc::new(
                    Algebra::from_derivations(AlgebraKind::Gl, n, elems).expect("gl(n) is closed"),
                )
            })
            .clone())
    }

    pub fn for_kind(kind: &AlgebraKind, n: usize) -> Result<Arc<Algebra>> {
        match kind {
            AlgebraKind::Gl => Algebra::gl(n),
            AlgebraKind::Sl => Algebra::sl(n),
            AlgebraKind::W => Algebra::w(n),
            AlgebraKind::Custom(name) => Err(Error::IncompatibleAlgebra(format!(
                "custom algebra {name:?} has no canonical construction"
            ))),
        }
    }

    /// The subalgebra of `W(n)` spanned by the given homogeneous elements.
    /// Fails unless the span is closed under the bracket.
    pub fn from_derivations(
        kind: AlgebraKind,
        n: usize,
        elements: Vec<SuperDerivation>,
    ) -> Result<Algebra> {
        let w_basis = super::derivation::basis_unchecked(n);
        let index: HashMap<BasisDerivation, usize> =
            w_basis.iter().enumerate().map(|(i, d)| (*d, i)).collect();
        let coords = |x: &SuperDerivation| {
            SparseVector::from_entries(x.terms().map(|(d, c)| (index[d], c.clone())))
        };
        let mut weights = Vec::new();
        let mut parities = Vec::new();
        let mut degrees = Vec::new();
        for e in &elements {
            let (Some(w), Some(p), Some(d)) = (e.weight(), e.parity(), e.degree()) else {
                return Err(Error::Invalid(format!(
                    "basis element {e} is not homogeneous"
                )));
            };
            weights.push(w);
            parities.push(p);
            degrees.push(d);
        }
        let columns: Vec<SparseVector> = elements.iter().map(coords).collect();
        // Elements that are themselves basis derivations are read off directly;
        // otherwise the bracket is expressed in the sub-basis by a linear solve.
        let direct: HashMap<usize, usize> = columns
            .iter()
            .enumerate()
            .filter(|(_, c)| c.nnz() == 1 && c.entries()[0].1.is_one())
            .map(|(j, c)| (c.entries()[0].0, j))
            .collect();
        let all_direct = direct.len() == elements.len();
        let matrix = SparseMatrix::from_columns(w_basis.len(), &columns)?;
        let mut span = Span::new();
        for c in &columns {
            if !span.insert(c) {
                return Err(Error::Invalid(
                    "basis elements are linearly dependent".into(),
                ));
            }
        }
        let express = |v: &SparseVector| -> Result<SparseVector> {
            if all_direct {
                let mut entries = Vec::with_capacity(v.nnz());
                for (i, c) in v.iter() {
                    match direct.get(&i) {
                        Some(&j) => entries.push((j, c.clone())),
                        None => return Err(Error::NotClosed(format!("component {}", w_basis[i]))),
                    }
                }
                return Ok(SparseVector::from_entries(entries));
            }
            if !span.contains(v) {
                return Err(Error::NotClosed(format!("{v:?} leaves the span")));
            }
            let x = solve(&matrix, &v.to_dense(w_basis.len()))?
                .ok_or_else(|| Error::NotClosed("inconsistent system".into()))?;
            Ok(SparseVector::from_dense(&x))
        };
        let mut brackets = Vec::with_capacity(elements.len());
        for (i, x) in elements.iter().enumerate() {
            let mut row = Vec::with_capacity(elements.len());
            for (j, y) in elements.iter().enumerate() {
                if j < i {
                    // [y, x] = −(−1)^{p(x)p(y)} [x, y]
                    let sign = -parities[i].koszul(parities[j]);
                    let earlier: &Vec<SparseVector> = &brackets[j];
                    row.push(earlier[i].scaled(&Rational::integer(sign)));
                    continue;
                }
                let b = x.bracket(y)?;
                row.push(express(&coords(&b)).map_err(|e| match e {
                    Error::NotClosed(detail) => Error::NotClosed(format!("[{x}, {y}]: {detail}")),
                    other => other,
                })?);
            }
            brackets.push(row);
        }
        let labels = elements.iter().map(|e| e.render()).collect();
        let gl_entries = elements.iter().map(gl_entry).collect();
        Ok(Algebra {
            kind,
            n,
            elements: elements.into_iter().map(Some).collect(),
            labels,
            weights,
            parities,
            degrees,
            gl_entries,
            brackets,
        })
    }

    /// An algebra from explicit structure constants; `brackets[i][j]` is
    /// `[e_i, e_j]` in the same basis. No identities are checked.
    pub fn from_structure_constants(
        name: &str,
        n: usize,
        weights: Vec<Weight>,
        parities: Vec<Parity>,
        degrees: Vec<i32>,
        brackets: Vec<Vec<SparseVector>>,
    ) -> Result<Algebra> {
        let d = weights.len();
        if parities.len() != d
            || degrees.len() != d
            || brackets.len() != d
            || brackets.iter().any(|r| r.len() != d)
        {
            return Err(Error::Dimension("structure constant table shape".into()));
        }
        Ok(Algebra {
            kind: AlgebraKind::Custom(name.to_string()),
            n,
            elements: vec![None; d],
            labels: (0..d).map(|i| format!("e{i}")).collect(),
            weights,
            parities,
            degrees,
            gl_entries: vec![None; d],
            brackets,
        })
    }

    /// Abelian even algebra of the given dimension (negative-control fixture).
    pub fn abelian(n: usize, dim: usize) -> Algebra {
        Algebra::from_structure_constants(
            "abelian",
            n,
            vec![Weight::zero(n); dim],
            vec![Parity::Even; dim],
            vec![0; dim],
            vec![vec![SparseVector::new(); dim]; dim],
        )
        .expect("consistent shape")
    }

    /// A copy with `[e_i, e_j]` replaced by `value` (and `[e_j, e_i]` set by
    /// super-antisymmetry). Used to build corrupted fixtures.
    pub fn with_bracket(&self, i: usize, j: usize, value: SparseVector) -> Algebra {
        let mut brackets = self.brackets.clone();
        let sign = -self.parities[i].koszul(self.parities[j]);
        brackets[j][i] = value.scaled(&Rational::integer(sign));
        brackets[i][j] = value;
        Algebra {
            kind: AlgebraKind::Custom(format!("{}-modified", self.kind.tag())),
            n: self.n,
            elements: self.elements.clone(),
            labels: self.labels.clone(),
            weights: self.weights.clone(),
            parities: self.parities.clone(),
            degrees: self.degrees.clone(),
            gl_entries: self.gl_entries.clone(),
            brackets,
        }
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn element(&self, i: usize) -> Option<&SuperDerivation> {
        self.elements[i].as_ref()
    }

    pub fn weight(&self, i: usize) -> &Weight {
        &self.weights[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    /// `Some((a, b))` when basis element `i` is the matrix unit `E_ab` of `gl(n)`.
    pub fn gl_entry(&self, i: usize) -> Option<(usize, usize)> {
        self.gl_entries[i]
    }

    pub fn index_of_gl(&self, a: usize, b: usize) -> Option<usize> {
        self.gl_entries.iter().position(|e| *e == Some((a, b)))
    }

    pub fn indices_of_degree(&self, k: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == k).collect()
    }

    /// `[e_i, e_j]` in this basis.
    pub fn bracket(&self, i: usize, j: usize) -> &SparseVector {
        &self.brackets[i][j]
    }

    /// `[e_i, v]`
    pub fn bracket_basis_vec(&self, i: usize, v: &SparseVector) -> SparseVector {
        let mut acc = Accumulator::new();
        for (k, c) in v.iter() {
            acc.add_scaled(&self.brackets[i][k], c);
        }
        acc.finish()
    }

    /// Bilinear bracket of arbitrary elements.
    pub fn bracket_vecs(&self, u: &SparseVector, v: &SparseVector) -> SparseVector {
        let mut acc = Accumulator::new();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                acc.add_scaled(&self.brackets[i][j], &(a * b));
            }
        }
        acc.finish()
    }

    /// Subalgebra generated by the given elements (as a span in this basis).
    pub fn generated_subalgebra(&self, seeds: &[SparseVector]) -> Span {
        let mut span = Span::new();
        let mut members: Vec<SparseVector> = Vec::new();
        let mut queue: Vec<SparseVector> = Vec::new();
        for s in seeds {
            if span.insert(s) {
                queue.push(s.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for m in members.iter().chain(std::iter::once(&v)) {
                let b = self.bracket_vecs(m, &v);
                if span.insert(&b) {
                    queue.push(b);
                }
            }
            members.push(v);
        }
        span
    }

    /// A small set of basis elements generating the algebra, chosen greedily:
    /// odd elements of degree −1 and 1 first, then everything else.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by_key(|&i| {
            let d = self.degrees[i];
            let rank = match d {
                -1 => 0,
                1 => 1,
                _ => 2,
            };
            (rank, i)
        });
        let mut chosen: Vec<usize> = Vec::new();
        let mut span = Span::new();
        for i in order {
            if span.dim() == self.dim() {
                break;
            }
            if span.contains(&SparseVector::unit(i)) {
                continue;
            }
            chosen.push(i);
            let seeds: Vec<SparseVector> = chosen.iter().map(|&c| SparseVector::unit(c)).collect();
            span = self.generated_subalgebra(&seeds);
        }
        chosen
    }

    /// Basis indices of the Cartan subalgebra (the `E_ii`).
    pub fn cartan_indices(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| matches!(self.gl_entries[i], Some((a, b)) if a == b))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(Algebra::w(2).unwrap().dim(), 8);
        assert_eq!(Algebra::w(3).unwrap().dim(), 24);
        assert_eq!(Algebra::sl(2).unwrap().dim(), 8);
        assert_eq!(Algebra::sl(3).unwrap().dim(), 15);
        assert_eq!(Algebra::gl(3).unwrap().dim(), 9);
        assert!(Algebra::w(7).is_err());
    }

    #[test]
    fn cached_instances_are_shared() {
        let a = Algebra::w(3).unwrap();
        let b = Algebra::w(3).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }

    #[test]
    fn w3_generated_by_degrees_minus_one_and_one() {
        let w = Algebra::w(3).unwrap();
        let gens = w.generating_set();
        assert!(gens.iter().all(|&g| w.degree(g) == -1 || w.degree(g) == 1));
        let seeds: Vec<SparseVector> = gens.iter().map(|&g| SparseVector::unit(g)).collect();
        assert_eq!(w.generated_subalgebra(&seeds).dim(), 24);
    }

    #[test]
    fn gl_identification() {
        let gl = Algebra::gl(3).unwrap();
        let e12 = gl.index_of_gl(0, 1).unwrap();
        let e21 = gl.index_of_gl(1, 0).unwrap();
        let h = gl.bracket(e12, e21);
        let e11 = gl.index_of_gl(0, 0).unwrap();
        let e22 = gl.index_of_gl(1, 1).unwrap();
        assert_eq!(h.get(e11), Rational::one());
        assert_eq!(h.get(e22), -Rational::one());
        assert_eq!(gl.cartan_indices().len(), 3);
    }

    #[test]
    fn non_closed_span_is_rejected() {
        let n = 2;
        let elems = vec![
            SuperDerivation::xi_d(n, &[], 1).unwrap(),
            SuperDerivation::xi_d(n, &[1, 2], 2).unwrap(),
        ];
        let err =
            Algebra::from_derivations(AlgebraKind::Custom("bad".into()), n, elems).unwrap_err();
        assert!(matches!(err, Error::NotClosed(_)));
    }
}
