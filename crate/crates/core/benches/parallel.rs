use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use qo_core::enumerate::genus_distribution_with;
use qo_core::envelope::checks::{check_axioms, check_envelope, Budget, EnvelopeBounds};
use qo_core::envelope::samples::SurfaceSamples;
use qo_core::envelope::QoTarget;
use qo_core::rewrite::{find_certificate_with, replay, Move};
use qo_core::{ChordDiagram, Execution, GlueToken, Label};

const STRATEGIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn genus_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("genus_table");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, 6), &6, |b, &n| {
            b.iter(|| genus_distribution_with(black_box(n), exec))
        });
    }
    group.finish();
}

fn axioms(c: &mut Criterion) {
    let mut group = c.benchmark_group("axioms");
    group.sample_size(10);
    let samples = SurfaceSamples::new(1).with_boundaries(3);
    for (name, exec) in STRATEGIES {
        let budget = Budget::exhaustive(3).with_random(1000, 1).with_exec(exec);
        group.bench_function(BenchmarkId::new(name, "k3"), |b| {
            b.iter(|| check_axioms(&QoTarget::standard(), &samples, black_box(&budget)))
        });
    }
    group.finish();
}

fn envelope(c: &mut Criterion) {
    let mut group = c.benchmark_group("envelope");
    group.sample_size(10);
    let bounds = EnvelopeBounds {
        max_labels: 3,
        max_genus: 1,
        max_boundaries: 3,
    };
    for (name, exec) in STRATEGIES {
        let budget = Budget::exhaustive(3).with_exec(exec);
        group.bench_function(BenchmarkId::new(name, "k3"), |b| {
            b.iter(|| check_envelope(bounds, black_box(&budget)))
        });
    }
    group.finish();
}

fn certificate(c: &mut Criterion) {
    let mut group = c.benchmark_group("certificate");
    group.sample_size(10);
    let t = |k| GlueToken::new(k).unwrap();
    let l = |s: &str| Label::new(s).unwrap();
    let start: ChordDiagram =
        "[ 1 #1 2 #2 #3 3 4 #4 #5 #6 #7 #8 ; (#1 #2) (#3 #4) (#5 #7) (#6 #8) ]"
            .parse()
            .unwrap();
    let path = [
        Move::Boundary {
            from: t(1),
            to: t(2),
            after: l("3"),
        },
        Move::Handle {
            tokens: [t(5), t(6), t(7), t(8)],
            after: l("1"),
        },
        Move::MainLemma {
            x: t(3),
            y: t(4),
            k1: 1,
            k2: 2,
        },
    ];
    let end = replay(&start, &path).unwrap();
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new(name, "depth3"), |b| {
            b.iter(|| find_certificate_with(&start, black_box(&end), 3, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, genus_table, axioms, envelope, certificate);
criterion_main!(benches);
