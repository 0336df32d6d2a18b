//! Symmetry-breaking rules for stable-model semantics.
//!
//! Every constraint produced here has the form `I <=lex I∘π` (with
//! `false < true` and the shared [`AtomOrder`]) for some syntactic symmetry
//! `π`, possibly cut short. The lexicographically least member of each
//! symmetry orbit of answer sets satisfies all of them at once, which is what
//! makes mixing generator, row and binary fragments sound.
//!
//! Lex-leader constraints need "the prefix so far is equal" conditions.
//! Under stable semantics an auxiliary atom that no rule defines is simply
//! false, so each prefix atom `e_i` gets two defining rules:
//!
//! ```text
//! e_i :- e_{i-1}, v_i, π(v_i).
//! e_i :- e_{i-1}, not v_i, not π(v_i).
//! ```
//!
//! and each position contributes `:- e_{i-1}, v_i, not π(v_i).`

use std::collections::BTreeSet;

use thiserror::Error;

use crate::program::{Atom, GroundProgram, Rule};
use crate::symmetry::{AtomOrder, AtomPermutation, RowMatrix};

pub const DEFAULT_AUX_LIMIT: usize = 50;

/// Hands out consecutive fresh atoms above the input program.
#[derive(Debug, Clone)]
pub struct AtomAllocator {
    first: u32,
    next: u32,
}

impl AtomAllocator {
    /// Fresh atoms start right after `max_atom`.
    pub fn above(max_atom: u32) -> Self {
        AtomAllocator {
            first: max_atom + 1,
            next: max_atom + 1,
        }
    }

    pub fn fresh(&mut self) -> Atom {
        let a = Atom(self.next);
        self.next += 1;
        a
    }

    /// Number of atoms handed out so far.
    pub fn allocated(&self) -> u32 {
        self.next - self.first
    }

    /// Largest atom handed out, or the starting point minus one.
    pub fn last(&self) -> u32 {
        self.next - 1
    }
}

/// Rules added by one or more breaking steps.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BreakingProgram {
    /// Basic rules only; constraints use the false atom as head.
    pub new_rules: Vec<Rule>,
    pub aux_atoms: Vec<Atom>,
    /// One entry per symmetry broken by a lex-leader encoding.
    pub per_symmetry_aux_count: Vec<usize>,
    pub new_max_atom: u32,
}

impl BreakingProgram {
    pub fn is_empty(&self) -> bool {
        self.new_rules.is_empty()
    }

    pub fn extend(&mut self, other: BreakingProgram) {
        self.new_rules.extend(other.new_rules);
        self.aux_atoms.extend(other.aux_atoms);
        self.per_symmetry_aux_count
            .extend(other.per_symmetry_aux_count);
        self.new_max_atom = self.new_max_atom.max(other.new_max_atom);
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BreakingError {
    #[error("auxiliary atom {atom} collides with an existing atom (max atom {max_atom})")]
    AuxCollision { atom: Atom, max_atom: u32 },
    #[error("auxiliary atom {0} allocated twice")]
    DuplicateAux(Atom),
    #[error("breaking rule uses atom {0}, which is neither an input nor an auxiliary atom")]
    UnknownAtom(Atom),
}

fn constraint(falsum: Atom, pos: Vec<Atom>, neg: Vec<Atom>) -> Rule {
    Rule::Basic {
        head: falsum,
        pos,
        neg,
    }
}

/// Lex-leader encoding of `I <=lex I∘π` over the support of `pi`, cut after
/// `aux_limit + 1` positions so that at most `aux_limit` prefix atoms are
/// introduced.
pub fn lex_leader_rules(
    pi: &AtomPermutation,
    order: &AtomOrder,
    aux_limit: usize,
    alloc: &mut AtomAllocator,
    falsum: Atom,
) -> BreakingProgram {
    let mut frag = BreakingProgram {
        new_max_atom: alloc.last(),
        ..Default::default()
    };
    if pi.is_identity() {
        return frag;
    }
    let mut support = order.sorted_support(pi);
    support.truncate(aux_limit.saturating_add(1));
    let k = support.len();
    let mut prefix: Option<Atom> = None;
    for (i, &v) in support.iter().enumerate() {
        let w = pi.apply(v);
        let guard: Vec<Atom> = prefix.into_iter().collect();
        let mut pos = guard.clone();
        pos.push(v);
        frag.new_rules.push(constraint(falsum, pos, vec![w]));
        if i + 1 == k {
            break;
        }
        let e = alloc.fresh();
        let mut both = guard.clone();
        both.extend([v, w]);
        frag.new_rules.push(Rule::Basic {
            head: e,
            pos: both,
            neg: vec![],
        });
        frag.new_rules.push(Rule::Basic {
            head: e,
            pos: guard,
            neg: vec![v, w],
        });
        frag.aux_atoms.push(e);
        prefix = Some(e);
    }
    frag.per_symmetry_aux_count.push(frag.aux_atoms.len());
    frag.new_max_atom = alloc.last();
    frag
}

/// Orders adjacent rows of `m` lexicographically, which breaks the whole
/// row-interchangeability group.
pub fn break_rows(
    m: &RowMatrix,
    order: &AtomOrder,
    aux_limit: usize,
    alloc: &mut AtomAllocator,
    falsum: Atom,
) -> BreakingProgram {
    let mut frag = BreakingProgram {
        new_max_atom: alloc.last(),
        ..Default::default()
    };
    for j in 0..m.row_count().saturating_sub(1) {
        frag.extend(lex_leader_rules(
            &m.row_swap(j, j + 1),
            order,
            aux_limit,
            alloc,
            falsum,
        ));
    }
    frag
}

/// One `:- v, not w.` per distinct pair.
pub fn binary_rules(pairs: &[(Atom, Atom)], falsum: Atom) -> BreakingProgram {
    let mut seen = BTreeSet::new();
    let new_rules = pairs
        .iter()
        .filter(|pair| seen.insert(**pair))
        .map(|&(v, w)| constraint(falsum, vec![v], vec![w]))
        .collect();
    BreakingProgram {
        new_rules,
        ..Default::default()
    }
}

/// Appends the fragments to `p`. When `falsum` is not `p`'s own false atom
/// it is registered in `B-`. Auxiliary atoms stay hidden in the symbol
/// table.
pub fn assemble(
    p: &GroundProgram,
    fragments: &[BreakingProgram],
    falsum: Atom,
) -> Result<GroundProgram, BreakingError> {
    let mut out = p.clone();
    if fragments.iter().all(BreakingProgram::is_empty) {
        return Ok(out);
    }
    let mut aux = BTreeSet::new();
    for a in fragments.iter().flat_map(|f| &f.aux_atoms) {
        if a.0 <= p.max_atom || *a == falsum {
            return Err(BreakingError::AuxCollision {
                atom: *a,
                max_atom: p.max_atom,
            });
        }
        if !aux.insert(*a) {
            return Err(BreakingError::DuplicateAux(*a));
        }
    }
    let fresh_falsum = p.false_atom != Some(falsum);
    if fresh_falsum && falsum.0 <= p.max_atom {
        return Err(BreakingError::AuxCollision {
            atom: falsum,
            max_atom: p.max_atom,
        });
    }
    for rule in fragments.iter().flat_map(|f| &f.new_rules) {
        if let Some(a) = rule
            .atoms()
            .find(|a| a.0 > p.max_atom && *a != falsum && !aux.contains(a))
        {
            return Err(BreakingError::UnknownAtom(a));
        }
        out.rules.push(rule.clone());
    }
    if fresh_falsum {
        out.compute_minus.push(falsum);
    }
    let top = aux.iter().next_back().map_or(0, |a| a.0);
    out.max_atom = p.max_atom.max(top).max(falsum.0);
    out.false_atom = Some(falsum);
    Ok(out)
}
