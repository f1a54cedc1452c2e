//! Structural verifications on a structure-constant table.

use rayon::prelude::*;
use serde::Serialize;

use super::derivation::basis;
use super::roots::{root_data, weight_space, SpaceParity};
use super::Algebra;
use crate::linalg::{Rational, Span, SparseVector};
use crate::weight::Parity;

#[derive(Clone, Debug, Serialize)]
pub struct JacobiReport {
    pub triples: usize,
    /// Ordered basis triples `(i, j, k)` where the identity fails.
    pub violations: Vec<(usize, usize, usize)>,
}

impl JacobiReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `[x,[y,z]] = [[x,y],z] + (−1)^{p(x)p(y)} [y,[x,z]]` on every ordered
/// triple of basis elements.
pub fn verify_super_jacobi(alg: &Algebra) -> JacobiReport {
    let d = alg.dim();
    let violations: Vec<(usize, usize, usize)> = (0..d)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut bad = Vec::new();
            for j in 0..d {
                let xy = alg.bracket(i, j);
                let sign = Rational::integer(alg.parity(i).koszul(alg.parity(j)));
                for k in 0..d {
                    let lhs = alg.bracket_basis_vec(i, alg.bracket(j, k));
                    let first = neg_bracket_right(alg, xy, k);
                    let second = alg.bracket_basis_vec(j, alg.bracket(i, k));
                    let rhs = first.add_scaled(&second, &sign);
                    if lhs != rhs {
                        bad.push((i, j, k));
                    }
                }
            }
            bad
        })
        .collect();
    JacobiReport {
        triples: d * d * d,
        violations,
    }
}

/// `[v, e_k]` for an arbitrary element `v`.
fn neg_bracket_right(alg: &Algebra, v: &SparseVector, k: usize) -> SparseVector {
    let mut out = SparseVector::new();
    for (i, c) in v.iter() {
        out = out.add_scaled(alg.bracket(i, k), c);
    }
    out
}

/// Ideal generated by one element: closure under bracketing with every basis element.
pub fn ideal_closure(alg: &Algebra, seed: &SparseVector) -> Span {
    let mut span = Span::new();
    let mut queue = Vec::new();
    if span.insert(seed) {
        queue.push(seed.clone());
    }
    while let Some(v) = queue.pop() {
        if span.dim() == alg.dim() {
            break;
        }
        for j in 0..alg.dim() {
            let b = alg.bracket_basis_vec(j, &v);
            if span.insert(&b) {
                queue.push(b);
            }
        }
    }
    span
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplicityReport {
    pub dim: usize,
    /// Dimension of the ideal generated by each basis element.
    pub closure_dims: Vec<usize>,
}

impl SimplicityReport {
    pub fn all_full(&self) -> bool {
        self.closure_dims.iter().all(|&d| d == self.dim)
    }
}

pub fn simplicity_probe(alg: &Algebra) -> SimplicityReport {
    let closure_dims = (0..alg.dim())
        .into_par_iter()
        .map(|i| ideal_closure(alg, &SparseVector::unit(i)).dim())
        .collect();
    SimplicityReport {
        dim: alg.dim(),
        closure_dims,
    }
}

/// Pairs `(i, j)` whose bracket violates additivity of degree, weight or parity.
pub fn grading_violations(alg: &Algebra) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let expected_w = alg.weight(i) + alg.weight(j);
            let deg = alg.degree(i) + alg.degree(j);
            let par = alg.parity(i) + alg.parity(j);
            let ok = alg.bracket(i, j).iter().all(|(k, _)| {
                alg.weight(k) == &expected_w && alg.degree(k) == deg && alg.parity(k) == par
            });
            if !ok {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// Whether every root space of `W(n)` is of pure parity `ht(α) mod 2`.
pub fn root_parity_consistent(n: usize) -> crate::Result<bool> {
    for r in root_data(n)? {
        let ws = weight_space(n, &r.weight)?;
        let ht = r.weight.height().to_i64().expect("integral height");
        let expected = match Parity::of(ht) {
            Parity::Even => SpaceParity::Even,
            Parity::Odd => SpaceParity::Odd,
        };
        if ws.parity != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension of each `W_k`, `k = −1, …, n−1`.
pub fn graded_dimensions(n: usize) -> crate::Result<Vec<(i32, usize)>> {
    let b = basis(n)?;
    Ok((-1..n as i32)
        .map(|k| (k, b.iter().filter(|d| d.degree() == k).count()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walg::AlgebraKind;

    #[test]
    fn jacobi_small() {
        for n in 2..=3 {
            let w = Algebra::w(n).unwrap();
            let report = verify_super_jacobi(&w);
            assert_eq!(report.triples, w.dim().pow(3));
            assert!(
                report.ok(),
                "n = {n}: {:?}",
                &report.violations[..5.min(report.violations.len())]
            );
        }
    }

    #[test]
    fn corrupted_structure_constants_break_jacobi() {
        let w = Algebra::w(2).unwrap();
        // [∂_1, ξ_1∂_2] = ∂_2 replaced by 2∂_2
        let d1 = (0..w.dim()).find(|&i| w.label(i) == "d1").unwrap();
        let x1d2 = (0..w.dim()).find(|&i| w.label(i) == "x1.d2").unwrap();
        let d2 = (0..w.dim()).find(|&i| w.label(i) == "d2").unwrap();
        let bad = w.with_bracket(
            d1,
            x1d2,
            SparseVector::unit(d2).scaled(&Rational::integer(2)),
        );
        assert!(matches!(bad.kind(), AlgebraKind::Custom(_)));
        assert!(!verify_super_jacobi(&bad).ok());
    }

    #[test]
    fn simplicity() {
        let r = simplicity_probe(&Algebra::w(2).unwrap());
        assert!(r.all_full());
        assert_eq!(r.closure_dims, vec![8; 8]);
        let abelian = Algebra::abelian(2, 3);
        let r = simplicity_probe(&abelian);
        assert_eq!(r.closure_dims, vec![1; 3]);
        assert!(!r.all_full());
    }

    #[test]
    fn grading() {
        assert!(grading_violations(&Algebra::w(3).unwrap()).is_empty());
        assert!(root_parity_consistent(3).unwrap());
        assert_eq!(
            graded_dimensions(3).unwrap(),
            vec![(-1, 3), (0, 9), (1, 9), (2, 3)]
        );
    }
}
