//! Individualization-refinement search for a generating set.
//!
//! The first path always individualizes the smallest node of the first
//! non-singleton cell. Levels are then processed bottom-up: at level `i`, for
//! every node `w` of the target cell not yet known to share an orbit with the
//! first-path choice `v_i`, the subtree below `w` is searched for a leaf
//! equivalent to the first leaf. Each hit is an automorphism fixing
//! `v_0..v_{i-1}` and mapping `v_i` to `w`; together they generate the group.

use crate::graph::{ColoredGraph, NodeId};

use super::partition::{OrderedPartition, WorkPartition};
use super::{is_automorphism, NodePermutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of search-tree nodes (refinements) to visit.
    pub node_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphisms {
    pub generators: Vec<NodePermutation>,
    /// False when the node budget ran out; the generators found so far are
    /// still automorphisms but may generate a proper subgroup.
    pub complete: bool,
    pub nodes_visited: u64,
}

struct Level {
    partition: WorkPartition,
    target: Vec<NodeId>,
    chosen: NodeId,
}

struct Search<'g> {
    graph: &'g ColoredGraph,
    budget: u64,
    visited: u64,
    /// Invariant of the first-path partition at each depth, leaf included.
    invariants: Vec<(usize, u64)>,
    first_leaf: Vec<NodeId>,
}

struct OutOfBudget;

impl Search<'_> {
    fn tick(&mut self) -> Result<(), OutOfBudget> {
        self.visited += 1;
        if self.visited > self.budget {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }

    /// Looks below `node` (at `depth`) for a leaf whose labeling maps the
    /// first leaf onto it by an automorphism.
    fn equivalent_leaf(
        &mut self,
        node: &WorkPartition,
        depth: usize,
    ) -> Result<Option<NodePermutation>, OutOfBudget> {
        if node.is_discrete() {
            let mut image = vec![0; node.n()];
            for (k, &v) in self.first_leaf.iter().enumerate() {
                image[v as usize] = node.lab[k];
            }
            let perm = NodePermutation { image };
            return Ok(is_automorphism(self.graph, &perm).then_some(perm));
        }
        let Some(target) = node.target_cell() else {
            return Ok(None);
        };
        let mut members = node.cell(target).to_vec();
        members.sort_unstable();
        for u in members {
            self.tick()?;
            let mut child = node.clone();
            child.individualize(self.graph, u);
            if self.invariants.get(depth + 1) != Some(&child.invariant()) {
                continue;
            }
            if let Some(p) = self.equivalent_leaf(&child, depth + 1)? {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }
}

struct UnionFind(Vec<NodeId>);

impl UnionFind {
    fn find(&mut self, v: NodeId) -> NodeId {
        let mut r = v;
        while self.0[r as usize] != r {
            r = self.0[r as usize];
        }
        let mut x = v;
        while self.0[x as usize] != r {
            let next = self.0[x as usize];
            self.0[x as usize] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: NodeId, b: NodeId) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi as usize] = lo;
        }
    }
}

pub fn find_generators(g: &ColoredGraph) -> Automorphisms {
    find_generators_with(g, &SearchConfig::default())
}

pub fn find_generators_with(g: &ColoredGraph, config: &SearchConfig) -> Automorphisms {
    let n = g.node_count();
    let mut root = WorkPartition::new(n, &OrderedPartition::from_colors(g));
    let all = root.cell_starts().collect();
    root.refine(g, all);

    let mut search = Search {
        graph: g,
        budget: config.node_budget,
        visited: 1,
        invariants: vec![root.invariant()],
        first_leaf: Vec::new(),
    };

    let mut levels: Vec<Level> = Vec::new();
    let mut current = root;
    while let Some(t) = current.target_cell() {
        let mut target = current.cell(t).to_vec();
        target.sort_unstable();
        let chosen = target[0];
        let mut child = current.clone();
        child.individualize(g, chosen);
        search.visited += 1;
        search.invariants.push(child.invariant());
        levels.push(Level {
            partition: current,
            target,
            chosen,
        });
        current = child;
    }
    search.first_leaf = current.lab.clone();

    let mut generators = Vec::new();
    let mut orbits = UnionFind((0..n as NodeId).collect());
    let mut complete = true;

    'levels: for depth in (0..levels.len()).rev() {
        let level = &levels[depth];
        let mut ruled_out: Vec<NodeId> = Vec::new();
        for &w in &level.target[1..] {
            if orbits.find(w) == orbits.find(level.chosen) {
                continue;
            }
            if ruled_out.iter().any(|&x| orbits.find(x) == orbits.find(w)) {
                continue;
            }
            if search.tick().is_err() {
                complete = false;
                break 'levels;
            }
            let mut child = level.partition.clone();
            child.individualize(g, w);
            let found = if search.invariants[depth + 1] == child.invariant() {
                match search.equivalent_leaf(&child, depth + 1) {
                    Ok(found) => found,
                    Err(OutOfBudget) => {
                        complete = false;
                        break 'levels;
                    }
                }
            } else {
                None
            };
            match found {
                Some(perm) => {
                    for v in 0..n as NodeId {
                        orbits.union(v, perm.apply(v));
                    }
                    generators.push(perm);
                }
                None => ruled_out.push(w),
            }
        }
    }

    Automorphisms {
        generators,
        complete,
        nodes_visited: search.visited,
    }
}
