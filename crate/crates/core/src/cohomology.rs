//! Chevalley–Eilenberg cohomology in degrees 0 and 1, restricted to the
//! Cartan-weight-0 subcomplex.
//!
//! Cochain conventions, for a homogeneous cochain `c` of parity `p(c)`:
//!
//! ```text
//! (d⁰m)(x)   = (−1)^{p(x)p(m)} x·m
//! (d¹c)(a,b) = (−1)^{p(a)p(c)} a·c(b) − (−1)^{p(b)(p(c)+p(a))} b·c(a) − c([a,b])
//! ```
//!
//! `d¹c` is super-alternating, so only pairs `a < b` and `a = b` odd are kept.
//! The weight-0 part of `C¹` has basis `e_{(y,m)}` (sending basis element `y`
//! to basis vector `m`, zero elsewhere) with `wt(m) = wt(y)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Accumulator, Rational, SparseMatrix, SparseVector};
use crate::module::{invariants, FiniteModule, Representation};
use crate::walg::Algebra;
use crate::weight::{Parity, Weight};

/// Default bound on the stored entries of one differential.
pub const DEFAULT_ENTRY_CAP: usize = 200_000;

/// `Hom(A, B)` with `x·f = ρ_B(x) f − (−1)^{p(x)p(f)} f ρ_A(x)`.
///
/// Elementary functionals `e_{v→w}` are indexed by `w·dim A + v`; the action
/// is evaluated on demand.
pub struct HomModule<'a> {
    source: &'a FiniteModule,
    target: &'a FiniteModule,
}

pub fn hom_module<'a>(a: &'a FiniteModule, b: &'a FiniteModule) -> Result<HomModule<'a>> {
    if !Arc::ptr_eq(a.algebra(), b.algebra()) {
        return Err(Error::IncompatibleAlgebra(format!(
            "Hom between modules over {:?} and {:?}",
            a.algebra(),
            b.algebra()
        )));
    }
    Ok(HomModule {
        source: a,
        target: b,
    })
}

impl HomModule<'_> {
    pub fn index(&self, v: usize, w: usize) -> usize {
        w * self.source.dim() + v
    }

    /// `(v, w)` for the functional `e_{v→w}`.
    pub fn split(&self, f: usize) -> (usize, usize) {
        (f % self.source.dim(), f / self.source.dim())
    }

    /// The identity map when source and target coincide.
    pub fn identity(&self) -> Option<SparseVector> {
        (self.source.dim() == self.target.dim()).then(|| {
            SparseVector::from_entries(
                (0..self.source.dim()).map(|v| (self.index(v, v), Rational::one())),
            )
        })
    }

    /// Materializes the module; only sensible for small dimensions.
    pub fn to_finite(&self) -> Result<FiniteModule> {
        let d = self.dim();
        let actions = (0..self.algebra().dim())
            .into_par_iter()
            .map(|x| {
                let cols: Vec<SparseVector> = (0..d).map(|f| self.act_basis(x, f)).collect();
                SparseMatrix::from_columns(d, &cols)
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteModule::new(
            self.algebra().clone(),
            (0..d).map(|f| self.weight(f)).collect(),
            (0..d).map(|f| self.parity(f)).collect(),
            (0..d)
                .map(|f| {
                    let (v, w) = self.split(f);
                    format!("{}→{}", self.source.label(v), self.target.label(w))
                })
                .collect(),
            actions,
        )
    }
}

impl Representation for HomModule<'_> {
    fn algebra(&self) -> &Arc<Algebra> {
        self.source.algebra()
    }

    fn dim(&self) -> usize {
        self.source.dim() * self.target.dim()
    }

    fn weight(&self, f: usize) -> Weight {
        let (v, w) = self.split(f);
        &self.target.weights()[w] - &self.source.weights()[v]
    }

    fn parity(&self, f: usize) -> Parity {
        let (v, w) = self.split(f);
        self.source.parity(v) + self.target.parity(w)
    }

    fn act_basis(&self, x: usize, f: usize) -> SparseVector {
        let (v, w) = self.split(f);
        let da = self.source.dim();
        let sign = self.algebra().parity(x).koszul(self.parity(f));
        let mut entries: Vec<(usize, Rational)> = Vec::new();
        // ρ_B(x) e_{v→w} = Σ_{w'} ρ_B(x)_{w'w} e_{v→w'}
        for (w2, c) in self.target.act_basis(x, w).iter() {
            entries.push((w2 * da + v, c.clone()));
        }
        // e_{v→w} ρ_A(x) = Σ_{v'} ρ_A(x)_{v v'} e_{v'→w}
        let neg = Rational::integer(-sign);
        for (v2, c) in self.source.action(x).row(v).iter() {
            entries.push((w * da + v2, c * &neg));
        }
        SparseVector::from_entries(entries)
    }
}

/// Options for assembling the complex.
#[derive(Clone, Copy, Debug)]
pub struct ComplexOptions {
    /// Keep only rows `(a, b)` of `d¹` with `a` or `b` in a generating set of
    /// the algebra. The cocycle condition on such pairs implies it on all pairs.
    pub generator_rows: bool,
    /// Bound on stored entries of each differential.
    pub entry_cap: usize,
    /// Flip the sign of the middle term of `d¹` (a deliberately wrong complex
    /// used as a negative control).
    pub corrupt_sign: bool,
}

impl Default for ComplexOptions {
    fn default() -> Self {
        ComplexOptions {
            generator_rows: true,
            entry_cap: DEFAULT_ENTRY_CAP,
            corrupt_sign: false,
        }
    }
}

/// The weight-0 part of `C⁰ → C¹ → C²`.
pub struct WeightZeroComplex {
    /// Basis of `C⁰`: module indices of weight 0.
    pub c0: Vec<usize>,
    /// Basis of `C¹`: pairs (algebra index, module index).
    pub c1: Vec<(usize, usize)>,
    /// Rows of `d¹`: (pair of algebra indices, module index of the value).
    pub c2_rows: Vec<((usize, usize), usize)>,
    pub d0: SparseMatrix,
    pub d1: SparseMatrix,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CohomologyReport {
    pub h0: usize,
    pub h1: usize,
    pub dim_c0: usize,
    pub dim_c1: usize,
    pub rank_d0: usize,
    pub rank_d1: usize,
    pub d1_rows: usize,
    pub d1_entries: usize,
}

fn sign(k: i64) -> Rational {
    Rational::integer(k)
}

pub fn build_complex<R: Representation + ?Sized>(
    m: &R,
    opts: ComplexOptions,
) -> Result<WeightZeroComplex> {
    let alg = m.algebra().clone();
    let n = alg.n();
    let spaces = m.weight_spaces();
    let zero = Weight::zero(n);
    let c0: Vec<usize> = spaces.get(&zero).cloned().unwrap_or_default();

    let mut c1: Vec<(usize, usize)> = Vec::new();
    for y in 0..alg.dim() {
        if let Some(vs) = spaces.get(alg.weight(y)) {
            c1.extend(vs.iter().map(|&v| (y, v)));
        }
    }
    let c1_index: HashMap<(usize, usize), usize> =
        c1.iter().enumerate().map(|(i, p)| (*p, i)).collect();

    // d⁰: column per weight-0 vector
    let d0_cols: Vec<SparseVector> = c0
        .par_iter()
        .map(|&v| {
            let mut acc = Accumulator::new();
            for x in 0..alg.dim() {
                let s = sign(alg.parity(x).koszul(m.parity(v)));
                for (k, c) in m.act_basis(x, v).iter() {
                    acc.add(c1_index[&(x, k)], c * &s);
                }
            }
            acc.finish()
        })
        .collect();
    let d0 = SparseMatrix::from_columns(c1.len(), &d0_cols)?;

    // d¹ rows
    let gens: Vec<usize> = if opts.generator_rows {
        alg.generating_set()
    } else {
        (0..alg.dim()).collect()
    };
    let is_gen: Vec<bool> = {
        let mut g = vec![false; alg.dim()];
        for &x in &gens {
            g[x] = true;
        }
        g
    };
    let pairs: Vec<(usize, usize)> = (0..alg.dim())
        .flat_map(|a| (a..alg.dim()).map(move |b| (a, b)))
        .filter(|&(a, b)| is_gen[a] || is_gen[b])
        .filter(|&(a, b)| a != b || alg.parity(a).is_odd())
        .filter(|&(a, b)| spaces.contains_key(&(alg.weight(a) + alg.weight(b))))
        .collect();

    // each pair contributes a block of rows indexed by module vectors of weight wt(a)+wt(b)
    let blocks: Vec<Vec<(usize, usize, Rational)>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (pa, pb) = (alg.parity(a), alg.parity(b));
            let mut out = Vec::new();
            // term 1: c = e_{(b,m)}
            if let Some(ms) = spaces.get(alg.weight(b)) {
                for &mv in ms {
                    let pc = pb + m.parity(mv);
                    let s = sign(pa.koszul(pc));
                    let col = c1_index[&(b, mv)];
                    for (k, c) in m.act_basis(a, mv).iter() {
                        out.push((k, col, c * &s));
                    }
                }
            }
            // term 2: c = e_{(a,m)}
            if let Some(ms) = spaces.get(alg.weight(a)) {
                for &mv in ms {
                    let pc = pa + m.parity(mv);
                    let mut s = -pb.koszul(pc + pa);
                    if opts.corrupt_sign {
                        s = -s;
                    }
                    let s = sign(s);
                    let col = c1_index[&(a, mv)];
                    for (k, c) in m.act_basis(b, mv).iter() {
                        out.push((k, col, c * &s));
                    }
                }
            }
            // term 3: −c([a,b]) with c = e_{(y,m)}, y in the support of [a,b]
            for (y, coeff) in alg.bracket(a, b).iter() {
                if let Some(ms) = spaces.get(alg.weight(y)) {
                    for &mv in ms {
                        out.push((mv, c1_index[&(y, mv)], -coeff.clone()));
                    }
                }
            }
            out
        })
        .collect();

    let mut c2_rows: Vec<((usize, usize), usize)> = Vec::new();
    let mut triplets: Vec<(usize, usize, Rational)> = Vec::new();
    for (&pair, block) in pairs.iter().zip(blocks) {
        let mut local: BTreeMap<usize, usize> = BTreeMap::new();
        for (k, col, v) in block {
            let next = c2_rows.len() + local.len();
            let row = *local.entry(k).or_insert(next);
            triplets.push((row, col, v));
        }
        let mut ordered: Vec<(usize, usize)> = local.into_iter().collect();
        ordered.sort_by_key(|&(_, r)| r);
        c2_rows.extend(ordered.into_iter().map(|(k, _)| (pair, k)));
        if triplets.len() > opts.entry_cap.saturating_mul(2) {
            break;
        }
    }
    let d1 = SparseMatrix::from_triplets(c2_rows.len(), c1.len(), triplets)?;
    if d1.nnz() > opts.entry_cap {
        return Err(Error::CapExceeded(format!(
            "d¹ has more than {} stored entries",
            opts.entry_cap
        )));
    }
    Ok(WeightZeroComplex {
        c0,
        c1,
        c2_rows,
        d0,
        d1,
    })
}

fn rank_oriented(m: &SparseMatrix) -> usize {
    if m.rows() > m.cols() {
        m.transpose().rank()
    } else {
        m.rank()
    }
}

impl WeightZeroComplex {
    pub fn report(&self) -> CohomologyReport {
        let (rank_d0, rank_d1) =
            rayon::join(|| rank_oriented(&self.d0), || rank_oriented(&self.d1));
        CohomologyReport {
            h0: self.c0.len() - rank_d0,
            h1: self.c1.len() - rank_d1 - rank_d0,
            dim_c0: self.c0.len(),
            dim_c1: self.c1.len(),
            rank_d0,
            rank_d1,
            d1_rows: self.d1.rows(),
            d1_entries: self.d1.nnz(),
        }
    }

    /// `d¹ ∘ d⁰ = 0`
    pub fn d_squared_vanishes(&self) -> bool {
        self.d1.mul(&self.d0).map(|p| p.is_zero()).unwrap_or(false)
    }
}

/// `dim H⁰(g, M)`: invariants, which all lie in weight 0.
pub fn h0<R: Representation + ?Sized>(m: &R) -> usize {
    invariants(m).len()
}

/// `dim H¹(g, M)` on the weight-0 subcomplex with default options.
pub fn h1<R: Representation + ?Sized>(m: &R) -> Result<usize> {
    Ok(cohomology(m, ComplexOptions::default())?.h1)
}

pub fn cohomology<R: Representation + ?Sized>(
    m: &R,
    opts: ComplexOptions,
) -> Result<CohomologyReport> {
    Ok(build_complex(m, opts)?.report())
}

/// Whether `d¹ ∘ d⁰ = 0` on the full set of `d¹` rows.
pub fn d_squared_check<R: Representation + ?Sized>(m: &R, opts: ComplexOptions) -> Result<bool> {
    let opts = ComplexOptions {
        generator_rows: false,
        entry_cap: usize::MAX,
        ..opts
    };
    Ok(build_complex(m, opts)?.d_squared_vanishes())
}

/// Triplet dump `row col num/den`, one entry per line, after a `rows cols` header.
pub fn dump_triplets(m: &SparseMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for (r, c, v) in m.triplets() {
        let _ = writeln!(out, "{r} {c} {}/{}", v.numer(), v.denom());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl::build_irrep;
    use crate::kac::build_kac_w;

    fn w(s: &str) -> Weight {
        Weight::parse_list(s).unwrap()
    }

    #[test]
    fn trivial_coefficients() {
        for n in 2..=3 {
            let t = FiniteModule::trivial(Algebra::w(n).unwrap());
            let r = cohomology(&t, ComplexOptions::default()).unwrap();
            assert_eq!((r.h0, r.h1), (1, 0));
            assert!(d_squared_check(&t, ComplexOptions::default()).unwrap());
        }
    }

    #[test]
    fn gl_has_one_dimensional_abelianization() {
        let t = FiniteModule::trivial(Algebra::gl(3).unwrap());
        assert_eq!(h1(&t).unwrap(), 1);
    }

    #[test]
    fn hom_module_basics() {
        let alg = Algebra::w(3).unwrap();
        let t = FiniteModule::trivial(alg);
        let hom = hom_module(&t, &t).unwrap();
        assert_eq!(hom.dim(), 1);
        assert_eq!(h0(&hom), 1);

        let k = build_kac_w(3, &w("1/2,1/2,1/2")).unwrap();
        let end = hom_module(&k.module, &k.module).unwrap();
        let id = end.identity().unwrap();
        for x in 0..k.module.algebra().dim() {
            assert!(end.act(x, &id).is_zero());
        }
        assert_eq!(h0(&end), 1);

        let k2 = build_kac_w(3, &w("3/2,1/2,1/2")).unwrap();
        assert_eq!(hom_module(&k.module, &k2.module).unwrap().dim(), 8 * 24);
        assert_eq!(h0(&hom_module(&k.module, &k2.module).unwrap()), 0);

        let gl = FiniteModule::from_gl_irrep(&build_irrep(&w("1,0,0")).unwrap()).unwrap();
        assert!(hom_module(&gl, &k.module).is_err());
    }

    #[test]
    fn hom_is_a_module() {
        let a = build_kac_w(2, &w("1/2,1/2")).unwrap();
        let b = build_kac_w(2, &w("3/2,1/2")).unwrap();
        let hom = hom_module(&a.module, &b.module).unwrap();
        let fin = hom.to_finite().unwrap();
        assert!(fin.grading_violations().is_empty());
        assert!(fin.all_bracket_violations().is_empty());
    }

    #[test]
    fn generator_rows_do_not_change_the_kernel() {
        let a = build_kac_w(2, &w("1/2,1/2")).unwrap();
        let b = build_kac_w(2, &w("3/2,1/2")).unwrap();
        let hom = hom_module(&a.module, &b.module).unwrap();
        let full = cohomology(
            &hom,
            ComplexOptions {
                generator_rows: false,
                ..Default::default()
            },
        )
        .unwrap();
        let reduced = cohomology(&hom, ComplexOptions::default()).unwrap();
        assert_eq!(full.h1, reduced.h1);
        assert!(reduced.d1_rows < full.d1_rows);
    }

    #[test]
    fn corrupted_sign_breaks_d_squared() {
        let k = build_kac_w(2, &w("1/2,1/2")).unwrap();
        let end = hom_module(&k.module, &k.module).unwrap();
        assert!(d_squared_check(&end, ComplexOptions::default()).unwrap());
        let bad = ComplexOptions {
            corrupt_sign: true,
            ..Default::default()
        };
        assert!(!d_squared_check(&end, bad).unwrap());
    }

    #[test]
    fn weight_zero_invariants_match_full_space() {
        let a = build_kac_w(2, &w("1/2,1/2")).unwrap();
        let hom = hom_module(&a.module, &a.module).unwrap();
        assert_eq!(h0(&hom), crate::module::invariants_full(&hom).len());
    }

    #[test]
    fn triplet_dump() {
        let m = SparseMatrix::from_i64(&[&[1, 0], &[0, -2]]).scaled(&Rational::new(1, 3));
        assert_eq!(dump_triplets(&m), "2 2\n0 0 1/3\n1 1 -2/3\n");
    }
}
