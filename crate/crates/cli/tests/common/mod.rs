#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;
use symbreak_core::graph::{Color, ColoredGraph};
use symbreak_core::{parse_program, Atom, GroundProgram, Rule};

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

/// `(file name, contents)` of every corpus file, sorted by name.
pub fn corpus() -> Vec<(String, String)> {
    let mut files: Vec<(String, String)> = fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "sm"))
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&p).expect("corpus file"))
        })
        .collect();
    files.sort();
    files
}

pub fn corpus_programs() -> Vec<(String, GroundProgram)> {
    corpus()
        .into_iter()
        .map(|(n, t)| {
            let p = parse_program(&t).unwrap_or_else(|e| panic!("{n}: {e}"));
            (n, p)
        })
        .collect()
}

fn body(rng: &mut StdRng, atoms: &[Atom]) -> (Vec<Atom>, Vec<Atom>) {
    let k = rng.gen_range(0..=3.min(atoms.len()));
    let chosen: Vec<Atom> = atoms.choose_multiple(rng, k).copied().collect();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for a in chosen {
        if rng.gen_bool(0.6) {
            pos.push(a)
        } else {
            neg.push(a)
        }
    }
    (pos, neg)
}

fn random_rule(rng: &mut StdRng, atoms: &[Atom], falsum: Option<Atom>) -> Rule {
    let head = *atoms.choose(rng).unwrap();
    let (pos, neg) = body(rng, atoms);
    match rng.gen_range(0..10) {
        0 | 1 => Rule::Basic { head, pos, neg },
        2 => match falsum {
            Some(f) if !pos.is_empty() || !neg.is_empty() => Rule::Basic { head: f, pos, neg },
            _ => Rule::Basic { head, pos, neg },
        },
        3..=5 => {
            let k = rng.gen_range(1..=2.min(atoms.len()));
            Rule::Choice {
                heads: atoms.choose_multiple(rng, k).copied().collect(),
                pos,
                neg,
            }
        }
        6 => {
            let n = (pos.len() + neg.len()) as u64;
            Rule::Cardinality {
                head,
                bound: rng.gen_range(0..=n),
                pos,
                neg,
            }
        }
        7 => {
            let weights: Vec<u64> = (0..pos.len() + neg.len())
                .map(|_| rng.gen_range(1..=3))
                .collect();
            let total: u64 = weights.iter().sum();
            Rule::Weight {
                head,
                bound: rng.gen_range(0..=total),
                pos,
                neg,
                weights,
            }
        }
        8 if atoms.len() >= 2 => Rule::Disjunctive {
            heads: atoms.choose_multiple(rng, 2).copied().collect(),
            pos,
            neg,
        },
        _ => {
            let weights: Vec<u64> = (0..pos.len() + neg.len())
                .map(|_| rng.gen_range(1..=3))
                .collect();
            if weights.is_empty() {
                Rule::Basic { head, pos, neg }
            } else {
                Rule::Minimize { pos, neg, weights }
            }
        }
    }
}

/// A random program over at most `max_atoms` atoms and `max_rules` rules.
/// About half the programs are closed under a random atom permutation, so
/// that most of them have nontrivial symmetries.
pub fn random_program(rng: &mut StdRng, max_atoms: u32, max_rules: usize) -> GroundProgram {
    let n = rng.gen_range(2..=max_atoms);
    let falsum = rng.gen_bool(0.5).then_some(Atom(1));
    let first = if falsum.is_some() { 2 } else { 1 };
    let atoms: Vec<Atom> = (first..=n).map(Atom).collect();
    let mut shuffled = atoms.clone();
    shuffled.shuffle(rng);
    let sigma = |a: Atom| -> Atom {
        match atoms.iter().position(|&x| x == a) {
            Some(i) => shuffled[i],
            None => a,
        }
    };
    let symmetric = rng.gen_bool(0.6);
    let target = rng.gen_range(1..=max_rules);
    let mut rules: Vec<Rule> = Vec::new();
    while rules.len() < target {
        let mut r = random_rule(rng, &atoms, falsum);
        let start = r.clone();
        loop {
            rules.push(r.clone());
            if !symmetric || rules.len() >= max_rules {
                break;
            }
            r = r.map_atoms(sigma);
            if r == start {
                break;
            }
        }
    }
    let mut p = GroundProgram::new();
    p.rules = rules;
    for &a in &atoms {
        if rng.gen_bool(0.8) {
            p.symbols.push((a, format!("a{}", a.0)));
        }
    }
    if let Some(f) = falsum {
        p.compute_minus.push(f);
    }
    if rng.gen_bool(0.15) {
        p.compute_plus.push(*atoms.choose(rng).unwrap());
    }
    if rng.gen_bool(0.15) {
        p.compute_minus.push(*atoms.choose(rng).unwrap());
    }
    p.max_atom = n;
    p.finish()
}

/// A random colored graph on at most `max_nodes` nodes.
pub fn random_graph(rng: &mut StdRng, max_nodes: u32) -> ColoredGraph {
    let n = rng.gen_range(1..=max_nodes);
    let palette = rng.gen_range(1..=4);
    let colors: Vec<Color> = (0..n).map(|_| Color(rng.gen_range(1..=palette))).collect();
    let mut g = ColoredGraph::with_colors(colors);
    let density = rng.gen_range(0.1..0.7);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(u, v);
            }
        }
    }
    g
}
