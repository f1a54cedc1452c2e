//! Hand-checkable values and cross-method invariants.

use std::collections::BTreeMap;

use proptest::prelude::*;
use superw_core::blocks::{block_path, ext_dim_formula};
use superw_core::cohomology::{h0, h1, hom_module};
use superw_core::gl::{freudenthal, klimyk_tensor, tensor_by_characters, weyl_dim};
use superw_core::kac::{build_kac, KacFlavor, DEFAULT_KAC_CAP};
use superw_core::module::FiniteModule;
use superw_core::walg::checks::graded_dimensions;
use superw_core::walg::{complement_roots, Algebra};
use superw_core::{Rational, Weight};

fn w(s: &str) -> Weight {
    Weight::parse_list(s).unwrap()
}

fn decomposition(pairs: &[(&str, u64)]) -> BTreeMap<Weight, u64> {
    pairs.iter().map(|(s, m)| (w(s), *m)).collect()
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn dimensions_of_w() {
    for n in 2..=6 {
        assert_eq!(Algebra::w(n).unwrap().dim(), n << n);
        for (k, d) in graded_dimensions(n).unwrap() {
            assert_eq!(d, n * binom(n, (k + 1) as usize), "n = {n}, k = {k}");
        }
    }
    assert_eq!(Algebra::sl(3).unwrap().dim(), 15);
    assert_eq!(Algebra::gl(3).unwrap().dim(), 9);
}

#[test]
fn weyl_dimensions() {
    for (l, d) in [
        ("2,1,0", 8),
        ("2,0,0", 6),
        ("1,0,-1", 8),
        ("3,0,0", 10),
        ("2,2,0", 6),
        ("1,1,0,0", 6),
        ("2,1,0,0", 20),
    ] {
        assert_eq!(weyl_dim(&w(l)).unwrap(), d, "{l}");
    }
    assert_eq!(weyl_dim(&w("1/2,1/2,1/2")).unwrap(), 1);
}

#[test]
fn su3_tensor_products() {
    // 3 ⊗ 3 = 6 ⊕ 3̄
    assert_eq!(
        klimyk_tensor(&w("1,0,0"), &w("1,0,0")).unwrap(),
        decomposition(&[("2,0,0", 1), ("1,1,0", 1)])
    );
    // 8 ⊗ 8 = 27 ⊕ 10 ⊕ 10̄ ⊕ 8 ⊕ 8 ⊕ 1
    assert_eq!(
        klimyk_tensor(&w("1,0,-1"), &w("1,0,-1")).unwrap(),
        decomposition(&[
            ("2,0,-2", 1),
            ("2,-1,-1", 1),
            ("1,1,-2", 1),
            ("1,0,-1", 2),
            ("0,0,0", 1)
        ])
    );
}

#[test]
fn complement_root_counts() {
    for n in 3..=6 {
        assert_eq!(
            complement_roots(n).unwrap().len(),
            3 * binom(n, 3) + n,
            "n = {n}"
        );
    }
}

#[test]
fn kac_dimensions() {
    for l in ["1/2,1/2,1/2", "1,0,0", "2,1,0", "1/3,1/3,1/3", "3/2,1/2"] {
        let l = w(l);
        let k = build_kac(l.n(), &l, KacFlavor::W, DEFAULT_KAC_CAP).unwrap();
        assert_eq!(
            k.dim() as u64,
            (1u64 << l.n()) * weyl_dim(&l).unwrap(),
            "{l}"
        );
    }
}

#[test]
fn trivial_coefficients() {
    for n in 2..=3 {
        let m = FiniteModule::trivial(Algebra::w(n).unwrap());
        assert_eq!(h0(&m), 1);
        assert_eq!(h1(&m).unwrap(), 0, "W({n}) is perfect");
    }
}

#[test]
fn ext_between_half_weights() {
    let l = w("1/2,1/2,1/2");
    let k = build_kac(3, &l, KacFlavor::W, DEFAULT_KAC_CAP).unwrap();
    // Schur: End(K_λ) invariants are the scalars for simple K_λ
    assert_eq!(h0(&hom_module(&k.module, &k.module).unwrap()), 1);
    let a = w("1,1,-1");
    let t = build_kac(3, &(&l + &a), KacFlavor::W, DEFAULT_KAC_CAP).unwrap();
    let hom = hom_module(&k.module, &t.module).unwrap();
    assert_eq!(h0(&hom), 0);
    assert_eq!(h1(&hom).unwrap(), 1);
    assert_eq!(ext_dim_formula(3, &l, &a).unwrap().mult, 1);
}

fn dominant(n: usize, max: i64) -> impl Strategy<Value = Weight> {
    (
        prop::collection::vec(0..=max, n),
        prop::sample::select(vec![(0, 1), (1, 2), (1, 3), (-1, 4)]),
    )
        .prop_map(move |(mut gaps, (p, q))| {
            gaps[n - 1] = 0;
            let mut acc = 0;
            let mut entries = vec![Rational::zero(); n];
            for i in (0..n).rev() {
                acc += gaps[i];
                entries[i] = Rational::from(acc) + Rational::new(p, q);
            }
            Weight::new(entries)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn weyl_dimension_matches_freudenthal(l in dominant(3, 3)) {
        prop_assert_eq!(freudenthal(&l).unwrap().dim() as u64, weyl_dim(&l).unwrap());
    }

    #[test]
    fn klimyk_agrees_with_character_peeling(a in dominant(3, 2), b in dominant(3, 2)) {
        let k = klimyk_tensor(&a, &b).unwrap();
        prop_assert_eq!(&k, &tensor_by_characters(&a, &b).unwrap());
        prop_assert_eq!(&k, &klimyk_tensor(&b, &a).unwrap());
        let total: u64 = k.iter().map(|(l, m)| m * weyl_dim(l).unwrap()).sum();
        prop_assert_eq!(total, weyl_dim(&a).unwrap() * weyl_dim(&b).unwrap());
    }

    #[test]
    fn linking_paths_take_unit_steps(a in dominant(3, 3), b in dominant(3, 3)) {
        match block_path(&a, &b) {
            Ok(path) => {
                let integral = a.entries().iter().zip(b.entries()).all(|(x, y)| (x - y).is_integer());
                prop_assert!(integral);
                if a != b {
                    prop_assert_eq!(path.first(), Some(&a));
                    prop_assert_eq!(path.last(), Some(&b));
                }
                for step in path.windows(2) {
                    let d = &step[1] - &step[0];
                    let l1: Rational = d.entries().iter().map(|x| x.abs()).sum();
                    prop_assert_eq!(l1, Rational::from(1));
                    prop_assert!(step[1].is_dominant());
                }
            }
            Err(_) => {
                let integral = a.entries().iter().zip(b.entries()).all(|(x, y)| (x - y).is_integer());
                prop_assert!(!integral);
            }
        }
    }
}
