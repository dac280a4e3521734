//! Parallel against sequential execution of the data-parallel kernels: dense
//! elimination, Koszul ranks and interpolation rows.
//!
//! With the `parallel` feature each workload runs twice, inside a one-thread
//! rayon pool (which makes `par` take its sequential path) and inside the global
//! pool. Without the feature only the sequential variant exists.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use secant_forge::families::rnc;
use secant_forge::geometry::{secant_ideal_interp, InterpOptions};
use secant_forge::invariants::koszul_betti;
use secant_forge::linalg::{rank, Dense};
use secant_forge::PrimeField;
use std::hint::black_box;

type Workload = Box<dyn Fn() + Send + Sync>;

fn workloads() -> Vec<(&'static str, Workload)> {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rows: Vec<Vec<u32>> = (0..400).map(|_| (0..400).map(|_| rng.gen_range(0..f.p())).collect()).collect();
    let m = Dense::from_rows(400, &rows);
    let curve = rnc(f, 7).unwrap();
    let ideal = curve.ideal.clone();
    vec![
        ("dense rank 400x400", Box::new(move || assert_eq!(black_box(rank(&f, &m)), 400))),
        ("koszul betti rnc7", Box::new(move || drop(black_box(koszul_betti(&ideal, 6, 2).unwrap())))),
        (
            "interpolate S^2 rnc7",
            Box::new(move || {
                let mut rng = ChaCha8Rng::seed_from_u64(2);
                drop(black_box(secant_ideal_interp(&curve, 2, &InterpOptions::default(), &mut rng).unwrap()))
            }),
        ),
    ]
}

#[cfg(feature = "parallel")]
fn variants() -> Vec<(&'static str, rayon::ThreadPool)> {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    vec![("sequential", one), ("parallel", all)]
}

fn engine(c: &mut Criterion) {
    let mut g = c.benchmark_group("engine");
    g.sample_size(10);
    for (name, work) in workloads() {
        #[cfg(feature = "parallel")]
        for (mode, pool) in variants() {
            g.bench_function(BenchmarkId::new(mode, name), |b| b.iter(|| pool.install(&work)));
        }
        #[cfg(not(feature = "parallel"))]
        g.bench_function(BenchmarkId::new("sequential", name), |b| b.iter(|| work()));
    }
    g.finish();
}

criterion_group!(benches, engine);
criterion_main!(benches);
