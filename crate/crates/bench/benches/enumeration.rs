use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use momcensus::enumerate::{is_canonical, PairingSearch, SearchOptions};
use momcensus::pipeline::analyze;
use momcensus::{filter, DipyramidSpec, SymmetryMode};
use momcensus_bench::unidentified_mom4;

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for sides in [vec![3, 3], vec![4], vec![3, 4], vec![5]] {
        let spec = DipyramidSpec::new(sides).unwrap();
        for prune in [false, true] {
            let id = BenchmarkId::new(if prune { "pruned" } else { "unpruned" }, &spec);
            let s = PairingSearch::new(&spec, SymmetryMode::Rotational);
            group.bench_function(id, |b| {
                b.iter(|| {
                    let options = SearchOptions { prune_topology: prune, node_budget: None };
                    s.run(options, &mut |p: &[usize]| {
                        black_box(p);
                        Ok(())
                    })
                    .unwrap()
                })
            });
        }
    }
    group.finish();
}

fn shard(c: &mut Criterion) {
    let spec = DipyramidSpec::new(vec![3, 3, 4]).unwrap();
    let s = PairingSearch::new(&spec, SymmetryMode::Rotational);
    let shards = s.shards(4, true);
    let prefix = shards[shards.len() / 2].clone();
    let mut group = c.benchmark_group("shard");
    group.sample_size(10);
    group.bench_function("{3,3,4} middle shard", |b| {
        b.iter(|| {
            let options = SearchOptions { prune_topology: true, node_budget: None };
            s.run_subtree(&prefix, None, options, &mut |p: &[usize]| {
                black_box(p);
                Ok(())
            })
            .unwrap()
        })
    });
    group.finish();
}

fn per_gluing(c: &mut Criterion) {
    let entries = unidentified_mom4();
    c.bench_function("canonical check, 34 gluings", |b| {
        b.iter(|| entries.iter().all(|d| is_canonical(&d.spec, &d.pairing, SymmetryMode::Rotational)))
    });
    c.bench_function("filter, 34 gluings", |b| {
        b.iter(|| entries.iter().filter(|d| filter(&d.spec, d.pairing.as_slice()).passed).count())
    });
    c.bench_function("analyze, 34 gluings", |b| {
        b.iter(|| entries.iter().map(|d| analyze(d).unwrap().record()).collect::<Vec<_>>())
    });
}

criterion_group!(benches, search, shard, per_gluing);
criterion_main!(benches);
