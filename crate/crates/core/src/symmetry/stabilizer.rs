use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, VecDeque};

use crate::automorphism::{find_generators_with, fix_nodes, NodePermutation, SearchConfig};
use crate::graph::{ColoredGraph, NodeId};
use crate::program::Atom;

use super::{restrict_to_atoms, AtomOrder, AtomPermutation, SymmetryChecker};

/// "If `from` is true then `to` is true", justified by `witness`, a group
/// element mapping `from` to `to` and fixing every atom ranked below `from`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryPair {
    pub from: Atom,
    pub to: Atom,
    pub witness: AtomPermutation,
}

impl BinaryPair {
    pub fn is_witnessed(&self, checker: &SymmetryChecker<'_>, order: &AtomOrder) -> bool {
        let below = order.rank(self.from);
        self.witness.apply(self.from) == self.to
            && self.witness.support().all(|a| order.rank(a) >= below)
            && checker.is_symmetry(&self.witness)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerChain {
    pub pairs: Vec<BinaryPair>,
    /// Base atoms `v_1, v_2, ...`, one per level run.
    pub base: Vec<Atom>,
    pub complete: bool,
}

/// Walks a pointwise-stabilizer chain: at each level the lowest-ranked moved
/// atom `v` is paired with every other atom of its orbit, then `v` is pinned
/// and the group recomputed. Stops after `levels` levels or at the trivial
/// group. `initial` may carry generators of the full group already found.
pub fn stabilizer_binary_symmetries(
    g: &ColoredGraph,
    order: &AtomOrder,
    levels: usize,
    initial: Option<&[NodePermutation]>,
    config: &SearchConfig,
) -> StabilizerChain {
    let mut complete = true;
    let mut node_gens: Vec<NodePermutation> = match initial {
        Some(gens) => gens.to_vec(),
        None => {
            let found = find_generators_with(g, config);
            complete &= found.complete;
            found.generators
        }
    };
    let mut pinned: Vec<NodeId> = Vec::new();
    let mut chain = StabilizerChain {
        pairs: Vec::new(),
        base: Vec::new(),
        complete,
    };

    for _ in 0..levels {
        let gens: Vec<AtomPermutation> = node_gens
            .iter()
            .filter_map(|s| restrict_to_atoms(g, s).ok())
            .filter(|p| !p.is_identity())
            .collect();
        let Some(v) = gens
            .iter()
            .flat_map(|p| p.support())
            .min_by_key(|&a| order.rank(a))
        else {
            break;
        };

        let mut transversal: BTreeMap<Atom, AtomPermutation> =
            BTreeMap::from([(v, AtomPermutation::identity())]);
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            let to_x = transversal[&x].clone();
            for gen in &gens {
                let y = gen.apply(x);
                if let Entry::Vacant(slot) = transversal.entry(y) {
                    slot.insert(to_x.then(gen));
                    queue.push_back(y);
                }
            }
        }
        let mut orbit: Vec<(Atom, AtomPermutation)> =
            transversal.into_iter().filter(|(w, _)| *w != v).collect();
        orbit.sort_by_key(|(w, _)| order.rank(*w));
        chain
            .pairs
            .extend(orbit.into_iter().map(|(to, witness)| BinaryPair {
                from: v,
                to,
                witness,
            }));
        chain.base.push(v);

        pinned.push(g.atom_node(v).expect("moved atoms have nodes"));
        let found = find_generators_with(&fix_nodes(g, &pinned), config);
        chain.complete &= found.complete;
        node_gens = found.generators;
    }
    chain
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::encode_program;
    use crate::instances::{self, place};
    use crate::symmetry::choose_order;

    #[test]
    fn choice_pair_gives_one_pair() {
        let p = instances::p1();
        let g = encode_program(&p);
        let order = AtomOrder::natural(p.max_atom);
        let chain = stabilizer_binary_symmetries(&g, &order, 5, None, &SearchConfig::default());
        let pairs: Vec<(Atom, Atom)> = chain.pairs.iter().map(|b| (b.from, b.to)).collect();
        assert_eq!(pairs, vec![(Atom(1), Atom(2))]);
        let checker = SymmetryChecker::new(&p);
        assert!(chain.pairs.iter().all(|b| b.is_witnessed(&checker, &order)));
    }

    #[test]
    fn trivial_group_gives_nothing() {
        let p = crate::smodels::parse_program(
            "1 1 1 0 2\n3 1 2 0 0\n0\n1 a\n2 b\n0\nB+\n0\nB-\n0\n1\n",
        )
        .unwrap();
        let g = encode_program(&p);
        let chain = stabilizer_binary_symmetries(
            &g,
            &AtomOrder::natural(2),
            5,
            None,
            &SearchConfig::default(),
        );
        assert!(chain.pairs.is_empty());
        assert!(chain.base.is_empty());
    }

    #[test]
    fn square_pigeonhole_first_level_covers_all_placements() {
        let p = instances::pigeonhole(3, 3);
        let g = encode_program(&p);
        let order = choose_order(&p, &[], &[]);
        let chain = stabilizer_binary_symmetries(&g, &order, 2, None, &SearchConfig::default());
        assert_eq!(chain.base.len(), 2);
        let first = place(3, 1, 1);
        assert_eq!(chain.base[0], first);
        let level1: Vec<Atom> = chain
            .pairs
            .iter()
            .filter(|b| b.from == first)
            .map(|b| b.to)
            .collect();
        assert_eq!(level1.len(), 8);
        let checker = SymmetryChecker::new(&p);
        assert!(chain.pairs.iter().all(|b| b.is_witnessed(&checker, &order)));
        // second level: stabilizer of place(p1,h1) still moves place(p1,h2)
        assert_eq!(chain.base[1], place(3, 1, 2));
    }
}
