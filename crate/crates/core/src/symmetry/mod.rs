//! From graph automorphisms to validated atom permutations, plus the
//! structure extracted from the group before breaking it: interchangeable
//! rows, a variable order matching the generators, and binary pairs from a
//! pointwise-stabilizer chain.

mod check;
mod order;
mod rows;
mod stabilizer;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::automorphism::NodePermutation;
use crate::graph::ColoredGraph;
use crate::program::{Atom, GroundProgram};

pub use check::{is_syntactic_symmetry, SymmetryChecker};
pub use order::{choose_order, AtomOrder};
pub use rows::{detect_rows, RowMatrix};
pub use stabilizer::{stabilizer_binary_symmetries, BinaryPair, StabilizerChain};

/// Permutation of atoms, stored by its moved points only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AtomPermutation {
    moved: BTreeMap<Atom, Atom>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("node permutation maps atom {0} outside the atom nodes")]
    NotAtomPreserving(Atom),
    #[error("image of not {0} is not the negation of its image")]
    NegationMismatch(Atom),
    #[error("mapping is not a bijection on its support")]
    NotBijective,
}

impl AtomPermutation {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds a permutation from `(atom, image)` pairs; fixed points are
    /// dropped.
    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (Atom, Atom)>,
    ) -> Result<Self, SymmetryError> {
        let moved: BTreeMap<Atom, Atom> = pairs.into_iter().filter(|(a, b)| a != b).collect();
        let domain: BTreeSet<Atom> = moved.keys().copied().collect();
        let image: BTreeSet<Atom> = moved.values().copied().collect();
        if domain != image || image.len() != moved.len() {
            return Err(SymmetryError::NotBijective);
        }
        Ok(AtomPermutation { moved })
    }

    /// Product of the given disjoint cycles.
    pub fn from_cycles(cycles: &[&[Atom]]) -> Result<Self, SymmetryError> {
        let mut pairs = Vec::new();
        for c in cycles {
            for (i, &a) in c.iter().enumerate() {
                pairs.push((a, c[(i + 1) % c.len()]));
            }
        }
        Self::from_pairs(pairs)
    }

    /// Swaps two equally long, disjoint atom tuples position by position.
    pub fn swap(left: &[Atom], right: &[Atom]) -> Result<Self, SymmetryError> {
        if left.len() != right.len() {
            return Err(SymmetryError::NotBijective);
        }
        Self::from_pairs(left.iter().zip(right).flat_map(|(&a, &b)| [(a, b), (b, a)]))
    }

    pub fn apply(&self, a: Atom) -> Atom {
        self.moved.get(&a).copied().unwrap_or(a)
    }

    pub fn is_identity(&self) -> bool {
        self.moved.is_empty()
    }

    /// Moved atoms, ascending.
    pub fn support(&self) -> impl Iterator<Item = Atom> + '_ {
        self.moved.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.moved.len()
    }

    pub fn moves(&self, a: Atom) -> bool {
        self.moved.contains_key(&a)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &AtomPermutation) -> AtomPermutation {
        let mut atoms: BTreeSet<Atom> = self.moved.keys().copied().collect();
        atoms.extend(other.moved.keys().copied());
        AtomPermutation {
            moved: atoms
                .into_iter()
                .map(|a| (a, other.apply(self.apply(a))))
                .filter(|(a, b)| a != b)
                .collect(),
        }
    }

    pub fn inverse(&self) -> AtomPermutation {
        AtomPermutation {
            moved: self.moved.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    pub fn is_involution(&self) -> bool {
        self.moved.iter().all(|(&a, &b)| self.apply(b) == a)
    }

    /// Disjoint cycles, each starting at its smallest atom, ordered by that
    /// atom.
    pub fn cycles(&self) -> Vec<Vec<Atom>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.moved.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut cycle = vec![start];
            let mut a = self.apply(start);
            while a != start {
                seen.insert(a);
                cycle.push(a);
                a = self.apply(a);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation over display names, e.g. `(p q)(r s)`; `()` for the
    /// identity.
    pub fn to_cycle_string(&self, p: &GroundProgram) -> String {
        if self.is_identity() {
            return "()".to_string();
        }
        self.cycles()
            .iter()
            .map(|c| {
                let names: Vec<String> = c.iter().map(|&a| p.display_name(a)).collect();
                format!("({})", names.join(" "))
            })
            .collect()
    }
}

/// The permutation of atoms induced by a node automorphism of the encoding.
pub fn restrict_to_atoms(
    g: &ColoredGraph,
    sigma: &NodePermutation,
) -> Result<AtomPermutation, SymmetryError> {
    let mut pairs = Vec::new();
    for (atom, node) in g.atoms() {
        let img = sigma.apply(node);
        let target = match g.literal_of(img) {
            Some(l) if l.positive => l.atom,
            _ => return Err(SymmetryError::NotAtomPreserving(atom)),
        };
        if sigma.apply(node + 1) != img + 1 {
            return Err(SymmetryError::NegationMismatch(atom));
        }
        pairs.push((atom, target));
    }
    AtomPermutation::from_pairs(pairs)
}
