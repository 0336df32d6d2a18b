//! Detect, post-process, break: the three steps wired together.

use std::fmt;
use std::time::Instant;

use thiserror::Error;

use crate::automorphism::{find_generators_with, SearchConfig};
use crate::breaking::{
    assemble, binary_rules, break_rows, lex_leader_rules, AtomAllocator, BreakingError,
    BreakingProgram, DEFAULT_AUX_LIMIT,
};
use crate::graph::{encode_program, ColoredGraph};
use crate::program::{Atom, Diagnostic, GroundProgram, Rule};
use crate::symmetry::{
    choose_order, detect_rows, restrict_to_atoms, stabilizer_binary_symmetries, AtomOrder,
    AtomPermutation, BinaryPair, RowMatrix, SymmetryChecker,
};

pub const DEFAULT_STABILIZER_LEVELS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub aux_limit: usize,
    pub search: SearchConfig,
    pub stabilizer_levels: usize,
    pub rows: bool,
    pub binary: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            aux_limit: DEFAULT_AUX_LIMIT,
            search: SearchConfig::default(),
            stabilizer_levels: DEFAULT_STABILIZER_LEVELS,
            rows: true,
            binary: true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunStats {
    pub generators: usize,
    pub rules: usize,
    pub aux: usize,
    pub seconds: f64,
    pub rows: usize,
    pub binpairs: usize,
}

impl fmt::Display for RunStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "generators={} rules={} aux={} seconds={:.3} rows={} binpairs={}",
            self.generators, self.rules, self.aux, self.seconds, self.rows, self.binpairs
        )
    }
}

/// Machine-readable `key=value` summary.
pub fn emit_stats(s: &RunStats) -> String {
    s.to_string()
}

/// Validated symmetries of a program.
#[derive(Debug, Clone)]
pub struct Detection {
    pub graph: ColoredGraph,
    /// Atom restrictions of the node generators that passed the syntactic
    /// check, without identities or duplicates.
    pub generators: Vec<AtomPermutation>,
    /// Node generators whose atom restriction was not a syntactic symmetry.
    pub rejected: usize,
    /// False when the automorphism search ran out of budget.
    pub complete: bool,
}

pub fn detect(p: &GroundProgram, config: &Config) -> Detection {
    let graph = encode_program(p);
    let found = find_generators_with(&graph, &config.search);
    let checker = SymmetryChecker::new(p);
    let mut generators: Vec<AtomPermutation> = Vec::new();
    let mut rejected = 0;
    for sigma in &found.generators {
        match restrict_to_atoms(&graph, sigma) {
            Ok(pi) if pi.is_identity() => {}
            Ok(pi) if checker.is_symmetry(&pi) => {
                if !generators.contains(&pi) {
                    generators.push(pi);
                }
            }
            _ => rejected += 1,
        }
    }
    Detection {
        graph,
        generators,
        rejected,
        complete: found.complete,
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("input program is invalid: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error(transparent)]
    Breaking(#[from] BreakingError),
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub program: GroundProgram,
    pub stats: RunStats,
    pub detection: Detection,
    pub order: AtomOrder,
    pub matrices: Vec<RowMatrix>,
    pub pairs: Vec<BinaryPair>,
    pub per_symmetry_aux_count: Vec<usize>,
    /// Every permutation some added rule relies on: generators, row swaps
    /// and binary-pair witnesses.
    pub symmetries: Vec<AtomPermutation>,
}

/// Runs detection and appends breaking rules to a copy of `p`.
pub fn run(p: &GroundProgram, config: &Config) -> Result<Outcome, PipelineError> {
    let start = Instant::now();
    let diagnostics = p.validate();
    if !diagnostics.is_empty() {
        return Err(PipelineError::Invalid(diagnostics));
    }
    let detection = detect(p, config);
    let checker = SymmetryChecker::new(p);
    let gens = &detection.generators;

    let matrices = if config.rows {
        detect_rows(&checker, gens)
    } else {
        Vec::new()
    };
    let order = choose_order(p, gens, &matrices);

    let pairs: Vec<BinaryPair> = if config.binary && !gens.is_empty() {
        stabilizer_binary_symmetries(
            &detection.graph,
            &order,
            config.stabilizer_levels,
            None,
            &config.search,
        )
        .pairs
        .into_iter()
        .filter(|b| b.is_witnessed(&checker, &order))
        .collect()
    } else {
        Vec::new()
    };

    let (falsum, mut alloc) = match p.false_atom {
        Some(f) => (f, AtomAllocator::above(p.max_atom)),
        None => (Atom(p.max_atom + 1), AtomAllocator::above(p.max_atom + 1)),
    };
    let mut symmetries: Vec<AtomPermutation> = Vec::new();
    let mut fragments: Vec<BreakingProgram> = Vec::new();
    for m in &matrices {
        fragments.push(break_rows(m, &order, config.aux_limit, &mut alloc, falsum));
        symmetries.extend((0..m.row_count() - 1).map(|j| m.row_swap(j, j + 1)));
    }
    for pi in gens {
        if matrices.iter().any(|m| m.permutes_rows(pi)) {
            continue;
        }
        fragments.push(lex_leader_rules(
            pi,
            &order,
            config.aux_limit,
            &mut alloc,
            falsum,
        ));
        symmetries.push(pi.clone());
    }
    let emitted: Vec<&Rule> = fragments.iter().flat_map(|f| &f.new_rules).collect();
    let fresh_pairs: Vec<(Atom, Atom)> = pairs
        .iter()
        .map(|b| (b.from, b.to))
        .filter(|&(v, w)| {
            !emitted.contains(&&Rule::Basic {
                head: falsum,
                pos: vec![v],
                neg: vec![w],
            })
        })
        .collect();
    fragments.push(binary_rules(&fresh_pairs, falsum));
    symmetries.extend(pairs.iter().map(|b| b.witness.clone()));

    let program = assemble(p, &fragments, falsum)?;
    let per_symmetry_aux_count: Vec<usize> = fragments
        .iter()
        .flat_map(|f| f.per_symmetry_aux_count.iter().copied())
        .collect();
    let stats = RunStats {
        generators: gens.len(),
        rules: program.rules.len() - p.rules.len(),
        aux: fragments.iter().map(|f| f.aux_atoms.len()).sum(),
        seconds: start.elapsed().as_secs_f64(),
        rows: matrices.len(),
        binpairs: pairs.len(),
    };
    Ok(Outcome {
        program,
        stats,
        detection,
        order,
        matrices,
        pairs,
        per_symmetry_aux_count,
        symmetries,
    })
}
