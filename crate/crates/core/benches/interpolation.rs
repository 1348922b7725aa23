//! Solve / enumerate / oracle timings on mid-size instances.
//!
//! Run under both execution modes and compare:
//!
//! ```text
//! cargo bench -p latpoly
//! cargo bench -p latpoly --no-default-features
//! ```
//!
//! Benchmark ids carry the mode, so criterion's reports line the two up.
//! With the parallel feature on, an extra `parallel-1thread` id pins the
//! same code to a single rayon worker to expose the raw chunking overhead.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use latpoly::{
    brute_interpolate, CuboidProblem, DistributiveLattice, LatticeElement, LatticeSpec,
    OracleConfig, PolynomialDnf,
};

fn mode() -> &'static str {
    if cfg!(feature = "parallel") {
        "parallel"
    } else {
        "sequential"
    }
}

/// Restrict a known polynomial to the cuboid vertices — feasible by
/// construction, so benches never hit the infeasible fast path.
fn restriction(
    lat: &DistributiveLattice,
    template: &PolynomialDnf,
    bounds: &[(LatticeElement, LatticeElement)],
) -> Vec<LatticeElement> {
    let n = bounds.len();
    (0..1u32 << n)
        .map(|mask| {
            let pt: Vec<LatticeElement> = bounds
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if mask >> i & 1 == 1 { b } else { a })
                .collect();
            template.evaluate_lattice(lat, &pt)
        })
        .collect()
}

/// boolean(4), arity 3, bounds ({1}, {1,2,3}) per coordinate, f the
/// restriction of x ∨ y ∨ z: ~16k raw interval combinations, enough to clear
/// the parallel chunking threshold.
fn wide_instance(lat: &DistributiveLattice) -> CuboidProblem<'_> {
    let a = lat.element_by_label("{1}").unwrap();
    let b = lat.element_by_label("{1,2,3}").unwrap();
    let bounds = vec![(a, b); 3];
    let top = lat.top();
    let bot = lat.bottom();
    // x ∨ y ∨ z: unit coefficients on the singletons.
    let coeffs = (0..8u32)
        .map(|mask| if mask.count_ones() == 1 { top } else { bot })
        .collect();
    let template = PolynomialDnf::over_lattice(lat, 3, coeffs).normalize_monotone();
    let values = restriction(lat, &template, &bounds);
    CuboidProblem::new(lat, bounds, values).unwrap()
}

fn bench_solve(c: &mut Criterion) {
    let lat = DistributiveLattice::build(&LatticeSpec::Boolean(4)).unwrap();
    let prob = wide_instance(&lat);
    let mut g = c.benchmark_group("solve");
    g.bench_with_input(BenchmarkId::new("boolean4-n3", mode()), &prob, |bench, p| {
        bench.iter(|| {
            let sol = p.solve();
            assert!(sol.feasible);
            sol
        })
    });
    g.finish();
}

fn bench_enumerate(c: &mut Criterion) {
    let lat = DistributiveLattice::build(&LatticeSpec::Boolean(4)).unwrap();
    let prob = wide_instance(&lat);
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(20);
    g.bench_with_input(BenchmarkId::new("boolean4-n3", mode()), &prob, |bench, p| {
        bench.iter(|| {
            let sols = p.enumerate_solutions(1_000_000).unwrap();
            assert!(!sols.is_empty());
            sols.len()
        })
    });
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        g.bench_with_input(
            BenchmarkId::new("boolean4-n3", "parallel-1thread"),
            &prob,
            |bench, p| {
                bench.iter(|| pool.install(|| p.enumerate_solutions(1_000_000).unwrap().len()))
            },
        );
    }
    g.finish();
}

fn bench_oracle(c: &mut Criterion) {
    // chain(5), arity 2, cuboid (1,3)², f the restriction of (2 ∧ x) ∨ y.
    let lat = DistributiveLattice::build(&LatticeSpec::Chain(5)).unwrap();
    let bounds = vec![(lat.element_at(1), lat.element_at(3)); 2];
    let template = PolynomialDnf::over_lattice(
        &lat,
        2,
        vec![lat.bottom(), lat.element_at(2), lat.top(), lat.top()],
    );
    let values = restriction(&lat, &template, &bounds);
    let points: Vec<Vec<LatticeElement>> = (0..4u32)
        .map(|mask| {
            bounds
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if mask >> i & 1 == 1 { b } else { a })
                .collect()
        })
        .collect();
    let cfg = OracleConfig::default();
    let mut g = c.benchmark_group("oracle");
    g.bench_function(BenchmarkId::new("chain5-n2", mode()), |bench| {
        bench.iter(|| {
            let sols = brute_interpolate(&lat, 2, &points, &values, &cfg).unwrap();
            assert!(!sols.is_empty());
            sols.len()
        })
    });
    g.finish();
}

criterion_group!(benches, bench_solve, bench_enumerate, bench_oracle);
criterion_main!(benches);
