use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superw_core::cohomology::{build_complex, hom_module, ComplexOptions};
use superw_core::gl::klimyk_tensor;
use superw_core::kac::{build_kac, KacFlavor, DEFAULT_KAC_CAP};
use superw_core::{Rational, SparseMatrix, Weight};

fn w(s: &str) -> Weight {
    Weight::parse_list(s).unwrap()
}

/// Sparse random matrix with small integer entries, about `per_row` per row.
fn random_matrix(rows: usize, cols: usize, per_row: usize, seed: u64) -> SparseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Vec::new();
    for r in 0..rows {
        for _ in 0..per_row {
            let v: i64 = rng.gen_range(-3..=3);
            if v != 0 {
                t.push((r, rng.gen_range(0..cols), Rational::from(v)));
            }
        }
    }
    SparseMatrix::from_triplets(rows, cols, t).unwrap()
}

fn rank(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank");
    for size in [50, 150, 400] {
        let m = random_matrix(size, size, 4, 7);
        g.bench_with_input(BenchmarkId::from_parameter(size), &m, |b, m| {
            b.iter(|| black_box(m.rank()))
        });
    }
    g.finish();
}

fn klimyk(c: &mut Criterion) {
    let mut g = c.benchmark_group("klimyk");
    for (l, m) in [
        ("2,1,0", "1,1,0"),
        ("3,1,0,0", "2,1,1,0"),
        ("4,2,1,0", "3,1,0,-1"),
    ] {
        let (l, m) = (w(l), w(m));
        g.bench_function(format!("{l}x{m}"), |b| {
            b.iter(|| klimyk_tensor(&l, &m).unwrap())
        });
    }
    g.finish();
}

fn kac(c: &mut Criterion) {
    let mut g = c.benchmark_group("kac");
    for l in ["1/2,1/2,1/2", "5/2,3/2,1/2", "3/2,1/2,1/2,1/2"] {
        let l = w(l);
        g.bench_function(l.to_string(), |b| {
            b.iter(|| build_kac(l.n(), &l, KacFlavor::W, DEFAULT_KAC_CAP).unwrap())
        });
    }
    g.finish();
}

fn h1(c: &mut Criterion) {
    let mut g = c.benchmark_group("h1");
    g.sample_size(10);
    for (l, a) in [("1/2,1/2,1/2", "1,1,-1"), ("5/2,3/2,1/2", "1,0,0")] {
        let l = w(l);
        let mu = &l + &w(a);
        let ka = build_kac(3, &l, KacFlavor::W, DEFAULT_KAC_CAP).unwrap();
        let kb = build_kac(3, &mu, KacFlavor::W, DEFAULT_KAC_CAP).unwrap();
        g.bench_function(format!("{l}->{mu}"), |b| {
            b.iter(|| {
                let hom = hom_module(&ka.module, &kb.module).unwrap();
                build_complex(&hom, ComplexOptions::default())
                    .unwrap()
                    .report()
                    .h1
            })
        });
    }
    g.finish();
}

criterion_group!(benches, rank, klimyk, kac, h1);
criterion_main!(benches);
