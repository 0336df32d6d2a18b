//! Automorphism groups of colored graphs.
//!
//! [`find_generators`] runs an individualization-refinement search;
//! [`brute_force_automorphisms`] enumerates the whole group for small graphs
//! and serves as the reference in tests.

mod partition;
mod search;

use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

use crate::graph::{Color, ColoredGraph, NodeId};

pub use partition::{color_refine, is_equitable, OrderedPartition};
pub use search::{find_generators, find_generators_with, Automorphisms, SearchConfig};

/// Permutation of nodes in image-array form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodePermutation {
    image: Vec<NodeId>,
}

impl NodePermutation {
    pub fn identity(n: usize) -> Self {
        NodePermutation {
            image: (0..n as NodeId).collect(),
        }
    }

    /// Panics unless `image` is a bijection on `0..image.len()`.
    pub fn from_images(image: Vec<NodeId>) -> Self {
        let mut seen = vec![false; image.len()];
        for &v in &image {
            assert!(
                (v as usize) < image.len() && !std::mem::replace(&mut seen[v as usize], true),
                "not a permutation"
            );
        }
        NodePermutation { image }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, v: NodeId) -> NodeId {
        self.image[v as usize]
    }

    pub fn images(&self) -> &[NodeId] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(i, &v)| i as NodeId == v)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &NodePermutation) -> NodePermutation {
        NodePermutation {
            image: self.image.iter().map(|&v| other.apply(v)).collect(),
        }
    }

    pub fn inverse(&self) -> NodePermutation {
        let mut inv = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v as usize] = i as NodeId;
        }
        NodePermutation { image: inv }
    }

    pub fn support(&self) -> Vec<NodeId> {
        (0..self.image.len() as NodeId)
            .filter(|&v| self.apply(v) != v)
            .collect()
    }
}

/// Checks color preservation and edge preservation in both directions.
pub fn is_automorphism(g: &ColoredGraph, perm: &NodePermutation) -> bool {
    if perm.len() != g.node_count() {
        return false;
    }
    let colors_ok = (0..g.node_count() as NodeId).all(|v| g.color(v) == g.color(perm.apply(v)));
    // a bijection mapping every edge onto an edge maps non-edges to non-edges
    colors_ok
        && g.edges()
            .all(|(u, v)| g.has_edge(perm.apply(u), perm.apply(v)))
}

/// Closure of `{seed}` under the generators.
pub fn orbit(gens: &[NodePermutation], seed: NodeId) -> BTreeSet<NodeId> {
    let mut seen = BTreeSet::from([seed]);
    let mut queue = VecDeque::from([seed]);
    while let Some(v) = queue.pop_front() {
        for g in gens {
            let w = g.apply(v);
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Gives every listed node its own fresh color, so that automorphisms of the
/// result are exactly those of `g` fixing each listed node.
pub fn fix_nodes(g: &ColoredGraph, fixed: &[NodeId]) -> ColoredGraph {
    let mut out = g.clone();
    let mut next = g.max_color().0;
    for &v in fixed {
        next += 1;
        out.set_color(v, Color(next));
    }
    out
}

#[derive(Debug, Error, PartialEq)]
#[error("brute-force enumeration needs {needed} candidate permutations, budget is {budget}")]
pub struct BudgetExceeded {
    pub needed: f64,
    pub budget: u64,
}

pub const DEFAULT_BRUTE_FORCE_BUDGET: u64 = 10_000_000;

/// Every automorphism of `g`, found by enumerating color-respecting
/// bijections. Refuses when the product of the factorials of the color class
/// sizes exceeds `budget`.
pub fn brute_force_automorphisms(
    g: &ColoredGraph,
    budget: u64,
) -> Result<Vec<NodePermutation>, BudgetExceeded> {
    let n = g.node_count();
    let mut class_sizes = std::collections::BTreeMap::new();
    for &c in g.colors() {
        *class_sizes.entry(c).or_insert(0u32) += 1;
    }
    let needed: f64 = class_sizes
        .values()
        .map(|&k| (1..=k).map(f64::from).product::<f64>())
        .product();
    if needed > budget as f64 {
        return Err(BudgetExceeded { needed, budget });
    }

    let mut out = Vec::new();
    let mut image = vec![NodeId::MAX; n];
    let mut used = vec![false; n];
    extend(g, 0, &mut image, &mut used, &mut out);
    Ok(out)
}

fn extend(
    g: &ColoredGraph,
    v: usize,
    image: &mut Vec<NodeId>,
    used: &mut Vec<bool>,
    out: &mut Vec<NodePermutation>,
) {
    let n = g.node_count();
    if v == n {
        out.push(NodePermutation {
            image: image.clone(),
        });
        return;
    }
    let vv = v as NodeId;
    for u in 0..n as NodeId {
        if used[u as usize] || g.color(u) != g.color(vv) {
            continue;
        }
        let consistent = (0..vv).all(|x| g.has_edge(vv, x) == g.has_edge(u, image[x as usize]));
        if !consistent {
            continue;
        }
        image[v] = u;
        used[u as usize] = true;
        extend(g, v + 1, image, used, out);
        used[u as usize] = false;
    }
    image[v] = NodeId::MAX;
}

/// All elements of the group generated by `gens` on `n` points, or `None`
/// once more than `limit` elements have been found.
pub fn group_closure(
    gens: &[NodePermutation],
    n: usize,
    limit: usize,
) -> Option<HashSet<NodePermutation>> {
    let id = NodePermutation::identity(n);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = p.then(g);
            if seen.insert(q.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(q);
            }
        }
    }
    Some(seen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::encode_program;
    use crate::instances;

    fn edge_graph() -> ColoredGraph {
        let mut g = ColoredGraph::with_colors(vec![Color(1); 2]);
        g.add_edge(0, 1);
        g
    }

    #[test]
    fn single_edge_has_two_automorphisms() {
        let all = brute_force_automorphisms(&edge_graph(), DEFAULT_BRUTE_FORCE_BUDGET).unwrap();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn distinct_colors_forbid_swap() {
        let g = ColoredGraph::with_colors(vec![Color(1), Color(2)]);
        let all = brute_force_automorphisms(&g, DEFAULT_BRUTE_FORCE_BUDGET).unwrap();
        assert_eq!(all, vec![NodePermutation::identity(2)]);
    }

    #[test]
    fn choice_pair_graph_has_two_automorphisms() {
        let g = encode_program(&instances::p1());
        let all = brute_force_automorphisms(&g, DEFAULT_BRUTE_FORCE_BUDGET).unwrap();
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|p| is_automorphism(&g, p)));
    }

    #[test]
    fn budget_is_enforced() {
        let g = ColoredGraph::with_colors(vec![Color(1); 12]);
        let err = brute_force_automorphisms(&g, 1000).unwrap_err();
        assert_eq!(err.needed, 479_001_600.0);
    }

    #[test]
    fn fixing_both_edge_nodes_leaves_identity() {
        let g = fix_nodes(&edge_graph(), &[0, 1]);
        let all = brute_force_automorphisms(&g, DEFAULT_BRUTE_FORCE_BUDGET).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(fix_nodes(&edge_graph(), &[]), edge_graph());
    }

    #[test]
    fn orbit_of_seed_without_generators() {
        assert_eq!(orbit(&[], 3), BTreeSet::from([3]));
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = NodePermutation::from_images(vec![1, 0, 2]);
        let b = NodePermutation::from_images(vec![0, 2, 1]);
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
    }
}
