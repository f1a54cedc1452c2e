//! Finite-dimensional weight modules over the algebras of [`crate::walg`].

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gl::GlIrrep;
use crate::linalg::{Accumulator, Rational, Span, SparseMatrix, SparseVector};
use crate::walg::{Algebra, AlgebraKind};
use crate::weight::{Parity, Weight};

/// Anything on which the basis of an [`Algebra`] acts by weight-graded,
/// parity-respecting linear maps.
pub trait Representation: Sync {
    fn algebra(&self) -> &Arc<Algebra>;
    fn dim(&self) -> usize;
    fn weight(&self, v: usize) -> Weight;
    fn parity(&self, v: usize) -> Parity;
    /// Image of basis vector `v` under basis element `x` of the algebra.
    fn act_basis(&self, x: usize, v: usize) -> SparseVector;

    fn act(&self, x: usize, v: &SparseVector) -> SparseVector {
        let mut acc = Accumulator::new();
        for (i, c) in v.iter() {
            acc.add_scaled(&self.act_basis(x, i), c);
        }
        acc.finish()
    }

    /// Action of an arbitrary algebra element given in the algebra basis.
    fn act_element(&self, y: &SparseVector, v: &SparseVector) -> SparseVector {
        let mut acc = Accumulator::new();
        for (x, c) in y.iter() {
            acc.add_scaled(&self.act(x, v), c);
        }
        acc.finish()
    }

    /// Basis indices grouped by weight.
    fn weight_spaces(&self) -> BTreeMap<Weight, Vec<usize>> {
        let mut out: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for v in 0..self.dim() {
            out.entry(self.weight(v)).or_default().push(v);
        }
        out
    }
}

/// A module given by explicit action matrices, one per algebra basis element.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    algebra: Arc<Algebra>,
    weights: Vec<Weight>,
    parities: Vec<Parity>,
    labels: Vec<String>,
    actions: Vec<SparseMatrix>,
    /// Transposes of `actions`: row `v` is the image of basis vector `v`.
    images: Vec<SparseMatrix>,
}

impl FiniteModule {
    pub fn new(
        algebra: Arc<Algebra>,
        weights: Vec<Weight>,
        parities: Vec<Parity>,
        labels: Vec<String>,
        actions: Vec<SparseMatrix>,
    ) -> Result<Self> {
        let d = weights.len();
        if parities.len() != d || labels.len() != d {
            return Err(Error::Dimension("basis labels".into()));
        }
        if actions.len() != algebra.dim() {
            return Err(Error::Dimension(format!(
                "{} action matrices for an algebra of dimension {}",
                actions.len(),
                algebra.dim()
            )));
        }
        if actions.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::Dimension(format!("action matrices must be {d}×{d}")));
        }
        let images = actions.par_iter().map(SparseMatrix::transpose).collect();
        Ok(FiniteModule {
            algebra,
            weights,
            parities,
            labels,
            actions,
            images,
        })
    }

    /// The one-dimensional trivial module.
    pub fn trivial(algebra: Arc<Algebra>) -> Self {
        let n = algebra.n();
        let actions = vec![SparseMatrix::zero(1, 1); algebra.dim()];
        FiniteModule::new(
            algebra,
            vec![Weight::zero(n)],
            vec![Parity::Even],
            vec!["1".into()],
            actions,
        )
        .expect("consistent shape")
    }

    /// `L_λ` as a `gl(n)`-module.
    pub fn from_gl_irrep(irrep: &GlIrrep) -> Result<Self> {
        let gl = Algebra::gl(irrep.n())?;
        let actions = (0..gl.dim())
            .map(|x| {
                let (a, b) = gl.gl_entry(x).expect("gl basis is matrix units");
                irrep.unit(a, b).clone()
            })
            .collect();
        let labels = (0..irrep.dim()).map(|v| format!("v{v}")).collect();
        FiniteModule::new(
            gl,
            irrep.weights().to_vec(),
            vec![Parity::Even; irrep.dim()],
            labels,
            actions,
        )
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn action(&self, x: usize) -> &SparseMatrix {
        &self.actions[x]
    }

    pub fn kind(&self) -> &AlgebraKind {
        self.algebra.kind()
    }

    /// The same module with every parity flipped.
    pub fn parity_shifted(&self) -> FiniteModule {
        let mut m = self.clone();
        for p in &mut m.parities {
            *p = *p + Parity::Odd;
        }
        m
    }

    /// The same module written in the basis `perm[0], perm[1], …` of the old one.
    pub fn permuted(&self, perm: &[usize]) -> Result<FiniteModule> {
        let d = self.dim();
        let mut inverse = vec![usize::MAX; d];
        for (new, &old) in perm.iter().enumerate() {
            if old >= d || inverse[old] != usize::MAX {
                return Err(Error::Invalid("not a permutation".into()));
            }
            inverse[old] = new;
        }
        if perm.len() != d {
            return Err(Error::Invalid("not a permutation".into()));
        }
        let actions = self
            .actions
            .iter()
            .map(|m| {
                SparseMatrix::from_triplets(
                    d,
                    d,
                    m.triplets()
                        .map(|(r, c, x)| (inverse[r], inverse[c], x.clone())),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteModule::new(
            self.algebra.clone(),
            perm.iter().map(|&o| self.weights[o].clone()).collect(),
            perm.iter().map(|&o| self.parities[o]).collect(),
            perm.iter().map(|&o| self.labels[o].clone()).collect(),
            actions,
        )
    }

    /// External direct sum over the same algebra.
    pub fn direct_sum(&self, other: &FiniteModule) -> Result<FiniteModule> {
        if !Arc::ptr_eq(&self.algebra, &other.algebra) {
            return Err(Error::IncompatibleAlgebra(
                "direct sum of modules over different algebras".into(),
            ));
        }
        let (d1, d2) = (self.dim(), other.dim());
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| {
                SparseMatrix::from_triplets(
                    d1 + d2,
                    d1 + d2,
                    a.triplets()
                        .map(|(r, c, x)| (r, c, x.clone()))
                        .chain(b.triplets().map(|(r, c, x)| (r + d1, c + d1, x.clone()))),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteModule::new(
            self.algebra.clone(),
            self.weights.iter().chain(&other.weights).cloned().collect(),
            self.parities
                .iter()
                .chain(&other.parities)
                .copied()
                .collect(),
            self.labels.iter().chain(&other.labels).cloned().collect(),
            actions,
        )
    }

    /// Basis vectors `v` and algebra elements `x` with `x·v` leaving weight
    /// `wt(v) + wt(x)` or parity `p(v) + p(x)`.
    pub fn grading_violations(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for x in 0..self.algebra.dim() {
            for (r, c, _) in self.actions[x].triplets() {
                let w = &self.weights[c] + self.algebra.weight(x);
                let p = self.parities[c] + self.algebra.parity(x);
                if self.weights[r] != w || self.parities[r] != p {
                    bad.push((x, c));
                }
            }
        }
        bad
    }

    /// Pairs `(x, y)` with `ρ([x,y]) ≠ ρ(x)ρ(y) − (−1)^{p(x)p(y)} ρ(y)ρ(x)`.
    pub fn bracket_violations(&self, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let alg = &self.algebra;
        pairs
            .par_iter()
            .filter(|&&(x, y)| {
                let sign = Rational::integer(-alg.parity(x).koszul(alg.parity(y)));
                let xy = self.actions[x].mul(&self.actions[y]).expect("square");
                let yx = self.actions[y].mul(&self.actions[x]).expect("square");
                let lhs = xy.add_scaled(&yx, &sign).expect("square");
                let mut rhs = SparseMatrix::zero(self.dim(), self.dim());
                for (z, c) in alg.bracket(x, y).iter() {
                    rhs = rhs.add_scaled(&self.actions[z], c).expect("square");
                }
                lhs != rhs
            })
            .copied()
            .collect()
    }

    /// Bracket compatibility on every ordered pair of algebra basis elements.
    pub fn all_bracket_violations(&self) -> Vec<(usize, usize)> {
        let d = self.algebra.dim();
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|x| (x..d).map(move |y| (x, y))).collect();
        self.bracket_violations(&pairs)
    }

    /// Bracket compatibility on pairs drawn from a generating set of the algebra.
    pub fn generator_bracket_violations(&self) -> Vec<(usize, usize)> {
        let gens = self.algebra.generating_set();
        let pairs: Vec<(usize, usize)> = gens
            .iter()
            .flat_map(|&x| gens.iter().map(move |&y| (x, y)))
            .collect();
        self.bracket_violations(&pairs)
    }
}

impl Representation for FiniteModule {
    fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    fn dim(&self) -> usize {
        self.weights.len()
    }

    fn weight(&self, v: usize) -> Weight {
        self.weights[v].clone()
    }

    fn parity(&self, v: usize) -> Parity {
        self.parities[v]
    }

    fn act_basis(&self, x: usize, v: usize) -> SparseVector {
        self.images[x].row(v).clone()
    }

    fn act(&self, x: usize, v: &SparseVector) -> SparseVector {
        let mut acc = Accumulator::new();
        for (i, c) in v.iter() {
            acc.add_scaled(self.images[x].row(i), c);
        }
        acc.finish()
    }
}

/// Smallest invariant subspace containing the seeds.
pub fn submodule_generated<R: Representation + ?Sized>(m: &R, seeds: &[SparseVector]) -> Span {
    let mut span = Span::new();
    let mut queue: Vec<SparseVector> = Vec::new();
    for s in seeds {
        if span.insert(s) {
            queue.push(s.clone());
        }
    }
    let d = m.algebra().dim();
    while let Some(v) = queue.pop() {
        if span.dim() == m.dim() {
            break;
        }
        for x in 0..d {
            let w = m.act(x, &v);
            if span.insert(&w) {
                queue.push(w);
            }
        }
    }
    span
}

/// Vectors in the span of `indices` killed by every algebra element in `elements`.
pub fn joint_kernel<R: Representation + ?Sized>(
    m: &R,
    elements: &[usize],
    indices: &[usize],
) -> Vec<SparseVector> {
    if indices.is_empty() {
        return Vec::new();
    }
    // rows are coordinates of x·v; columns are the basis vectors `indices`
    let columns: Vec<Vec<(usize, SparseVector)>> = indices
        .par_iter()
        .map(|&v| elements.iter().map(|&x| (x, m.act_basis(x, v))).collect())
        .collect();
    let mut row_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut triplets = Vec::new();
    for (col, images) in columns.iter().enumerate() {
        for (k, (_, img)) in images.iter().enumerate() {
            for (r, c) in img.iter() {
                let next = row_index.len();
                let row = *row_index.entry((k, r)).or_insert(next);
                triplets.push((row, col, c.clone()));
            }
        }
    }
    let matrix = SparseMatrix::from_triplets(row_index.len(), indices.len(), triplets)
        .expect("indices in range");
    matrix
        .kernel_basis()
        .into_iter()
        .map(|k| {
            SparseVector::from_entries(k.into_iter().enumerate().map(|(i, c)| (indices[i], c)))
        })
        .collect()
}

/// Positive parts of the Borel subalgebras used for highest weight vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Borel {
    /// upper triangular `gl(n)`
    B0,
    /// `b₀ ⊕ g_{≥1}`
    B1,
    /// `g_{−1} ⊕ b₀`
    B2,
}

impl std::str::FromStr for Borel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "b0" => Ok(Borel::B0),
            "b1" => Ok(Borel::B1),
            "b2" => Ok(Borel::B2),
            other => Err(Error::Parse(format!(
                "unknown Borel {other:?}; expected b0, b1 or b2"
            ))),
        }
    }
}

/// Basis indices of the positive part of `borel` in `alg`.
pub fn positive_part(alg: &Algebra, borel: Borel) -> Result<Vec<usize>> {
    if borel != Borel::B0 && *alg.kind() == AlgebraKind::Gl {
        return Err(Error::IncompatibleAlgebra(format!(
            "{borel:?} is not a Borel subalgebra of gl(n)"
        )));
    }
    Ok((0..alg.dim())
        .filter(|&x| {
            let upper = matches!(alg.gl_entry(x), Some((a, b)) if a < b);
            match borel {
                Borel::B0 => upper,
                Borel::B1 => upper || alg.degree(x) >= 1,
                Borel::B2 => upper || alg.degree(x) == -1,
            }
        })
        .collect())
}

/// Joint kernel of the positive part of `borel`, organized by weight.
pub fn highest_weight_vectors<R: Representation + ?Sized>(
    m: &R,
    borel: Borel,
) -> Result<BTreeMap<Weight, Vec<SparseVector>>> {
    let positive = positive_part(m.algebra(), borel)?;
    let mut out = BTreeMap::new();
    for (w, indices) in m.weight_spaces() {
        let k = joint_kernel(m, &positive, &indices);
        if !k.is_empty() {
            out.insert(w, k);
        }
    }
    Ok(out)
}

/// Irreducibility via singular vectors for the Borel `b₁`.
///
/// Every nonzero submodule contains a `b₁`-singular vector, so the module is
/// simple iff the singular vectors form a single line that generates it.
pub fn is_irreducible<R: Representation + ?Sized>(m: &R) -> bool {
    if m.dim() == 0 {
        return false;
    }
    let borel = if *m.algebra().kind() == AlgebraKind::Gl {
        Borel::B0
    } else {
        Borel::B1
    };
    let singular = highest_weight_vectors(m, borel).expect("borel matches algebra");
    let lines: Vec<&SparseVector> = singular.values().flatten().collect();
    if lines.len() != 1 {
        return false;
    }
    submodule_generated(m, &[lines[0].clone()]).dim() == m.dim()
}

/// Basis vectors whose generated submodule is proper; empty when every
/// basis vector is cyclic.
pub fn non_cyclic_basis_vectors<R: Representation + ?Sized>(m: &R) -> Vec<usize> {
    (0..m.dim())
        .into_par_iter()
        .filter(|&v| submodule_generated(m, &[SparseVector::unit(v)]).dim() < m.dim())
        .collect()
}

/// Invariant vectors, searched in the weight-0 subspace.
pub fn invariants<R: Representation + ?Sized>(m: &R) -> Vec<SparseVector> {
    let zero = Weight::zero(m.algebra().n());
    let indices: Vec<usize> = (0..m.dim()).filter(|&v| m.weight(v) == zero).collect();
    let all: Vec<usize> = (0..m.algebra().dim()).collect();
    joint_kernel(m, &all, &indices)
}

/// Invariant vectors searched in the whole module.
pub fn invariants_full<R: Representation + ?Sized>(m: &R) -> Vec<SparseVector> {
    let indices: Vec<usize> = (0..m.dim()).collect();
    let all: Vec<usize> = (0..m.algebra().dim()).collect();
    joint_kernel(m, &all, &indices)
}

/// Whether `span` is mapped into itself by every algebra basis element.
pub fn is_invariant<R: Representation + ?Sized>(m: &R, basis: &[SparseVector]) -> bool {
    let mut span = Span::new();
    for b in basis {
        span.insert(b);
    }
    basis
        .par_iter()
        .all(|b| (0..m.algebra().dim()).all(|x| span.contains(&m.act(x, b))))
}

/// Bracket compatibility checked vector by vector for a lazily defined module.
pub fn bracket_violations_on_vectors<R: Representation + ?Sized>(
    m: &R,
    pairs: &[(usize, usize)],
    vectors: &[usize],
) -> Vec<(usize, usize)> {
    let alg = m.algebra();
    pairs
        .par_iter()
        .filter(|&&(x, y)| {
            let sign = Rational::integer(-alg.parity(x).koszul(alg.parity(y)));
            vectors.iter().any(|&v| {
                let e = SparseVector::unit(v);
                let lhs = m
                    .act(x, &m.act(y, &e))
                    .add_scaled(&m.act(y, &m.act(x, &e)), &sign);
                let rhs = m.act_element(alg.bracket(x, y), &e);
                lhs != rhs
            })
        })
        .copied()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl::build_irrep;

    fn gl_module(s: &str) -> FiniteModule {
        FiniteModule::from_gl_irrep(&build_irrep(&Weight::parse_list(s).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn gl_irreps_are_modules() {
        for s in ["1,0,0", "1,1,0", "2,1,0", "1,0,-1"] {
            let m = gl_module(s);
            assert!(m.grading_violations().is_empty(), "{s}");
            assert!(m.all_bracket_violations().is_empty(), "{s}");
        }
    }

    #[test]
    fn gl_highest_weight_lines() {
        for s in ["1,0,0", "2,1,0", "1,0,-1"] {
            let m = gl_module(s);
            let hw = highest_weight_vectors(&m, Borel::B0).unwrap();
            assert_eq!(hw.len(), 1);
            let (w, vs) = hw.iter().next().unwrap();
            assert_eq!(w, &Weight::parse_list(s).unwrap());
            assert_eq!(vs.len(), 1);
            assert!(is_irreducible(&m));
        }
        assert!(positive_part(&Algebra::gl(3).unwrap(), Borel::B1).is_err());
    }

    #[test]
    fn direct_sums_are_reducible() {
        let m = gl_module("1,0,0");
        let sum = m.direct_sum(&m).unwrap();
        assert!(!is_irreducible(&sum));
        // every basis vector of L ⊕ L generates a proper submodule
        assert_eq!(non_cyclic_basis_vectors(&sum).len(), 6);
        assert_eq!(submodule_generated(&sum, &[SparseVector::unit(0)]).dim(), 3);
        assert_eq!(submodule_generated(&sum, &[SparseVector::new()]).dim(), 0);
    }

    #[test]
    fn permutation_preserves_structure() {
        let m = gl_module("2,1,0");
        let perm: Vec<usize> = (0..m.dim()).rev().collect();
        let p = m.permuted(&perm).unwrap();
        assert!(p.all_bracket_violations().is_empty());
        assert!(is_irreducible(&p));
        assert!(m.permuted(&[0, 0]).is_err());
    }

    #[test]
    fn trivial_invariants() {
        let w = Algebra::w(3).unwrap();
        let t = FiniteModule::trivial(w);
        assert_eq!(invariants(&t).len(), 1);
        assert_eq!(invariants_full(&t).len(), 1);
    }
}
