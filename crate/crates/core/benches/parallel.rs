use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use monadforge::linalg::DEFAULT_PRIME;
use monadforge::net::{cohomology_table, presentation};
use monadforge::par::Execution;
use monadforge::report::VerifyMode;
use monadforge::slice::net_of_octuple;
use monadforge::workbench::{gen_closed_octuple, search_gamma_points, trial_rng, Ansatz, SearchConfig};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search_fast_n2");
    group.sample_size(10);
    for (name, exec) in MODES {
        let cfg = SearchConfig { n: 2, seed: 1, trials: 64, ansatz: Ansatz::Dense, mode: VerifyMode::Fast, prime: DEFAULT_PRIME, exec };
        group.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| b.iter(|| search_gamma_points(cfg).unwrap()));
    }
    group.finish();
}

fn cohomology(c: &mut Criterion) {
    let o = gen_closed_octuple(&mut trial_rng(2, 0), 2, Ansatz::Dense).0.unwrap();
    let p = presentation(&net_of_octuple(&o).unwrap()).unwrap();
    let mut group = c.benchmark_group("cohomology_n2");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| cohomology_table(&p, -4, 3, false, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, search, cohomology);
criterion_main!(benches);
