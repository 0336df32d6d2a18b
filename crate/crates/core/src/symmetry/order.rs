use std::collections::BTreeSet;

use crate::program::{Atom, GroundProgram};

use super::{AtomPermutation, RowMatrix};

/// Total order on atoms `1..=max_atom` used by every lex-leader constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomOrder {
    sequence: Vec<Atom>,
    rank: Vec<u32>,
}

impl AtomOrder {
    /// Ascending index order.
    pub fn natural(max_atom: u32) -> Self {
        Self::from_sequence((1..=max_atom).map(Atom).collect())
    }

    /// Panics unless `sequence` lists each of `1..=len` exactly once.
    pub fn from_sequence(sequence: Vec<Atom>) -> Self {
        let mut rank = vec![u32::MAX; sequence.len() + 1];
        for (i, a) in sequence.iter().enumerate() {
            let slot = &mut rank[a.0 as usize];
            assert_eq!(*slot, u32::MAX, "atom {a} listed twice");
            *slot = i as u32;
        }
        assert!(
            rank[1..].iter().all(|&r| r != u32::MAX),
            "order is not total"
        );
        AtomOrder { sequence, rank }
    }

    pub fn rank(&self, a: Atom) -> u32 {
        self.rank[a.0 as usize]
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// Moved atoms of `pi`, lowest rank first.
    pub fn sorted_support(&self, pi: &AtomPermutation) -> Vec<Atom> {
        let mut s: Vec<Atom> = pi.support().collect();
        s.sort_by_key(|&a| self.rank(a));
        s
    }
}

/// Row matrices first (row-major), then the remaining generator supports
/// cycle by cycle, smallest generators first, then everything else by index.
pub fn choose_order(p: &GroundProgram, gens: &[AtomPermutation], rows: &[RowMatrix]) -> AtomOrder {
    let mut placed: BTreeSet<Atom> = BTreeSet::new();
    let mut sequence = Vec::with_capacity(p.max_atom as usize);
    let mut place = |a: Atom, sequence: &mut Vec<Atom>| {
        if placed.insert(a) {
            sequence.push(a);
        }
    };
    for m in rows {
        for a in m.atoms() {
            place(a, &mut sequence);
        }
    }
    let mut by_size: Vec<&AtomPermutation> = gens.iter().collect();
    by_size.sort_by_key(|g| (g.support_len(), g.support().next()));
    for g in by_size {
        for cycle in g.cycles() {
            for a in cycle {
                place(a, &mut sequence);
            }
        }
    }
    for a in (1..=p.max_atom).map(Atom) {
        place(a, &mut sequence);
    }
    AtomOrder::from_sequence(sequence)
}
