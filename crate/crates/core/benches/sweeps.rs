use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use l1cocycle::brooks::{Brooks, BrooksSpec};
use l1cocycle::cocycle::defect_measure;
use l1cocycle::derivation::{verify_identities, DerivationAction, VerifyOptions};
use l1cocycle::group::{enumerate_ball, DEFAULT_BALL_CAP};
use l1cocycle::par::{self, Exec};
use l1cocycle::quasitree::{w_sets_qt, AxisFamily, WConfig};
use l1cocycle::Rational;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn defect(c: &mut Criterion) {
    let alpha = Brooks::new(BrooksSpec::<Rational>::standard());
    let mut group = c.benchmark_group("defect_measure");
    group.sample_size(10);
    for radius in [2, 3] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, radius), &radius, |b, &r| {
                b.iter(|| defect_measure(&alpha, r, DEFAULT_BALL_CAP, exec).unwrap().defect)
            });
        }
    }
    group.finish();
}

fn identities(c: &mut Criterion) {
    let action = DerivationAction::new(Brooks::new(BrooksSpec::<Rational>::standard()));
    let mut group = c.benchmark_group("verify_identities");
    group.sample_size(10);
    for (name, exec) in MODES {
        let mut opts = VerifyOptions::new(2);
        opts.exec = exec;
        group.bench_function(name, |b| b.iter(|| verify_identities(&action, &opts).unwrap().violations()));
    }
    group.finish();
}

fn counting_sets(c: &mut Criterion) {
    let family = AxisFamily::new("ab".parse().unwrap()).unwrap();
    let config = WConfig::new(&family, 1, 2, 2).unwrap();
    let ball = enumerate_ball(5, DEFAULT_BALL_CAP).unwrap();
    let mut group = c.benchmark_group("w_sets_ball5");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| par::map(exec, black_box(&ball), |g| w_sets_qt(&family, &config, g).unwrap().size()))
        });
    }
    group.finish();
}

criterion_group!(benches, defect, identities, counting_sets);
criterion_main!(benches);
