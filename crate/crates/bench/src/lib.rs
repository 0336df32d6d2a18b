//! Benchmarks for the preprocessing pipeline, grouped by stage.

use std::hint::black_box;

use criterion::{BenchmarkId, Criterion};
use symbreak_core::instances::{free_choice_grid, pigeonhole};
use symbreak_core::oracle::answer_sets_with;
use symbreak_core::{encode_program, find_generators, program_to_string, run, Config};
use symbreak_core::{parse_program, GroundProgram};

fn workloads() -> Vec<(String, GroundProgram)> {
    let mut out = Vec::new();
    for (p, h) in [(4, 3), (6, 5), (8, 7)] {
        out.push((format!("pigeonhole_{p}_{h}"), pigeonhole(p, h)));
    }
    out.push(("grid_8_3".into(), free_choice_grid(8, 3)));
    out
}

pub fn parsing(c: &mut Criterion) {
    let mut group = c.benchmark_group("smodels");
    for (name, p) in workloads() {
        let text = program_to_string(&p);
        group.bench_with_input(BenchmarkId::new("parse", &name), &text, |b, t| {
            b.iter(|| parse_program(black_box(t)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("write", &name), &p, |b, p| {
            b.iter(|| program_to_string(black_box(p)))
        });
    }
    group.finish();
}

pub fn detection(c: &mut Criterion) {
    let mut group = c.benchmark_group("automorphism");
    for (name, p) in workloads() {
        let g = encode_program(&p);
        group.bench_with_input(BenchmarkId::new("encode", &name), &p, |b, p| {
            b.iter(|| encode_program(black_box(p)))
        });
        group.bench_with_input(BenchmarkId::new("generators", &name), &g, |b, g| {
            b.iter(|| find_generators(black_box(g)))
        });
    }
    group.finish();
}

pub fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(20);
    let config = Config::default();
    for (name, p) in workloads() {
        group.bench_with_input(BenchmarkId::new("run", &name), &p, |b, p| {
            b.iter(|| run(black_box(p), &config).unwrap())
        });
    }
    group.finish();
}

pub fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    let p = pigeonhole(4, 3);
    let broken = run(&p, &Config::default()).unwrap().program;
    group.bench_function("pigeonhole_4_3/plain", |b| {
        b.iter(|| answer_sets_with(black_box(&p), 12).unwrap())
    });
    group.bench_function("pigeonhole_4_3/broken", |b| {
        b.iter(|| answer_sets_with(black_box(&broken), 12).unwrap())
    });
    group.finish();
}
