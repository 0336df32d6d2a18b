use std::collections::BTreeSet;

use crate::program::Atom;

use super::{AtomPermutation, SymmetryChecker};

/// Disjoint, column-aligned atom tuples such that swapping any two rows is a
/// syntactic symmetry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowMatrix {
    pub rows: Vec<Vec<Atom>>,
}

impl RowMatrix {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.rows.iter().flatten().copied()
    }

    pub fn atom_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row_swap(&self, i: usize, j: usize) -> AtomPermutation {
        AtomPermutation::swap(&self.rows[i], &self.rows[j]).expect("rows are disjoint")
    }

    /// Whether `pi` maps every row onto some row, column by column. Such
    /// permutations lie in the row-interchangeability group.
    pub fn permutes_rows(&self, pi: &AtomPermutation) -> bool {
        let atoms: BTreeSet<Atom> = self.atoms().collect();
        if pi.support().any(|a| !atoms.contains(&a)) {
            return false;
        }
        self.rows.iter().all(|r| {
            let image: Vec<Atom> = r.iter().map(|&a| pi.apply(a)).collect();
            self.rows.contains(&image)
        })
    }
}

/// Generators plus all products of two generators.
fn candidate_pool(gens: &[AtomPermutation]) -> Vec<AtomPermutation> {
    let mut pool: Vec<AtomPermutation> = gens.to_vec();
    let mut seen: BTreeSet<AtomPermutation> = pool.iter().cloned().collect();
    for a in gens {
        for b in gens {
            let ab = a.then(b);
            if !ab.is_identity() && seen.insert(ab.clone()) {
                pool.push(ab);
            }
        }
    }
    pool
}

fn grow(
    checker: &SymmetryChecker<'_>,
    pool: &[AtomPermutation],
    seed: &AtomPermutation,
) -> Option<RowMatrix> {
    let cycles = seed.cycles();
    let first: Vec<Atom> = cycles.iter().map(|c| c[0]).collect();
    let second: Vec<Atom> = cycles.iter().map(|c| c[1]).collect();
    if !checker.is_symmetry(&AtomPermutation::swap(&first, &second).ok()?) {
        return None;
    }
    let mut rows = vec![first, second];
    let mut used: BTreeSet<Atom> = rows.iter().flatten().copied().collect();
    loop {
        let mut grew = false;
        for g in pool {
            for r in 0..rows.len() {
                let image: Vec<Atom> = rows[r].iter().map(|&a| g.apply(a)).collect();
                if image.iter().any(|a| used.contains(a)) {
                    continue;
                }
                let last = rows.last().expect("at least two rows");
                let swap = AtomPermutation::swap(last, &image).expect("disjoint rows");
                if checker.is_symmetry(&swap) {
                    used.extend(image.iter().copied());
                    rows.push(image);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    (rows.len() >= 3).then_some(RowMatrix { rows })
}

/// Finds row-interchangeability subgroups. Every involution among the
/// generators and their pairwise products seeds a two-row matrix (one row
/// per side of its 2-cycles); rows are then added while some pool element
/// maps an existing row onto fresh atoms and the swap with the current last
/// row is a syntactic symmetry. Matrices with fewer than three rows are
/// dropped; overlapping matrices are resolved in favor of more atoms, then
/// more rows, then the lowest atom.
pub fn detect_rows(checker: &SymmetryChecker<'_>, gens: &[AtomPermutation]) -> Vec<RowMatrix> {
    let pool = candidate_pool(gens);
    let mut candidates: Vec<RowMatrix> = Vec::new();
    let mut seen_sets: BTreeSet<Vec<Atom>> = BTreeSet::new();
    for seed in pool
        .iter()
        .filter(|p| !p.is_identity() && p.is_involution())
    {
        if let Some(m) = grow(checker, &pool, seed) {
            let mut atoms: Vec<Atom> = m.atoms().collect();
            atoms.sort_unstable();
            if seen_sets.insert(atoms) {
                candidates.push(m);
            }
        }
    }
    candidates.sort_by_key(|m| {
        (
            std::cmp::Reverse(m.atom_count()),
            std::cmp::Reverse(m.row_count()),
            m.atoms().min(),
        )
    });
    let mut taken: BTreeSet<Atom> = BTreeSet::new();
    let mut out = Vec::new();
    for m in candidates {
        if m.atoms().any(|a| taken.contains(&a)) {
            continue;
        }
        taken.extend(m.atoms());
        out.push(m);
    }
    out
}
