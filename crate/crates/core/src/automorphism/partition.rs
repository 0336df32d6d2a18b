use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

use crate::graph::{ColoredGraph, NodeId};

/// Ordered partition of the node set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedPartition {
    pub cells: Vec<Vec<NodeId>>,
}

impl OrderedPartition {
    /// Color classes in ascending color order, members ascending.
    pub fn from_colors(g: &ColoredGraph) -> Self {
        let mut order: Vec<NodeId> = (0..g.node_count() as NodeId).collect();
        order.sort_by_key(|&v| (g.color(v), v));
        let mut cells: Vec<Vec<NodeId>> = Vec::new();
        for v in order {
            match cells.last_mut() {
                Some(cell) if g.color(cell[0]) == g.color(v) => cell.push(v),
                _ => cells.push(vec![v]),
            }
        }
        OrderedPartition { cells }
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    pub fn node_count(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }
}

/// Whether every two nodes of a cell have the same number of neighbors in
/// every cell.
pub fn is_equitable(g: &ColoredGraph, p: &OrderedPartition) -> bool {
    let mut cell_of = vec![0usize; g.node_count()];
    for (i, cell) in p.cells.iter().enumerate() {
        for &v in cell {
            cell_of[v as usize] = i;
        }
    }
    let profile = |v: NodeId| {
        let mut counts = vec![0u32; p.cells.len()];
        for &u in g.neighbors(v) {
            counts[cell_of[u as usize]] += 1;
        }
        counts
    };
    p.cells.iter().all(|cell| {
        let first = profile(cell[0]);
        cell[1..].iter().all(|&v| profile(v) == first)
    })
}

/// Coarsest equitable refinement of `initial`.
pub fn color_refine(g: &ColoredGraph, initial: &OrderedPartition) -> OrderedPartition {
    let mut w = WorkPartition::new(g.node_count(), initial);
    let all: BTreeSet<usize> = w.cell_starts().collect();
    w.refine(g, all);
    w.to_ordered()
}

/// Array-backed partition: `lab` lists nodes cell by cell, cells are named by
/// the position of their first element. Positions depend only on counts and
/// on the initial partition, never on node labels.
#[derive(Debug, Clone)]
pub(crate) struct WorkPartition {
    pub lab: Vec<NodeId>,
    pos: Vec<usize>,
    start_of: Vec<usize>,
    len_at: Vec<usize>,
    cells: usize,
    /// Hash of every split performed so far.
    pub trace: u64,
}

impl WorkPartition {
    pub fn new(n: usize, initial: &OrderedPartition) -> Self {
        let mut w = WorkPartition {
            lab: Vec::with_capacity(n),
            pos: vec![0; n],
            start_of: vec![0; n],
            len_at: vec![0; n],
            cells: 0,
            trace: 0,
        };
        for cell in &initial.cells {
            let s = w.lab.len();
            let mut members = cell.clone();
            members.sort_unstable();
            for v in members {
                w.pos[v as usize] = w.lab.len();
                w.start_of[v as usize] = s;
                w.lab.push(v);
            }
            w.len_at[s] = cell.len();
            w.cells += 1;
        }
        w
    }

    pub fn n(&self) -> usize {
        self.lab.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.n()
    }

    pub fn cell_starts(&self) -> impl Iterator<Item = usize> + '_ {
        let mut s = 0;
        std::iter::from_fn(move || {
            if s >= self.n() {
                return None;
            }
            let out = s;
            s += self.len_at[s];
            Some(out)
        })
    }

    pub fn cell(&self, start: usize) -> &[NodeId] {
        &self.lab[start..start + self.len_at[start]]
    }

    /// First cell with more than one member.
    pub fn target_cell(&self) -> Option<usize> {
        self.cell_starts().find(|&s| self.len_at[s] > 1)
    }

    /// Invariant of the current partition under relabeling.
    pub fn invariant(&self) -> (usize, u64) {
        (self.cells, self.trace)
    }

    pub fn to_ordered(&self) -> OrderedPartition {
        OrderedPartition {
            cells: self
                .cell_starts()
                .map(|s| {
                    let mut c = self.cell(s).to_vec();
                    c.sort_unstable();
                    c
                })
                .collect(),
        }
    }

    /// Splits `v` off the front of its cell and refines.
    pub fn individualize(&mut self, g: &ColoredGraph, v: NodeId) {
        let s = self.start_of[v as usize];
        let len = self.len_at[s];
        if len == 1 {
            return;
        }
        let p = self.pos[v as usize];
        self.lab.swap(s, p);
        let moved = self.lab[p];
        self.pos[moved as usize] = p;
        self.pos[v as usize] = s;
        self.len_at[s] = 1;
        self.len_at[s + 1] = len - 1;
        for i in s + 1..s + len {
            let u = self.lab[i];
            self.start_of[u as usize] = s + 1;
        }
        self.cells += 1;
        let mut h = DefaultHasher::new();
        (self.trace, "ind", s, len).hash(&mut h);
        self.trace = h.finish();
        self.refine(g, BTreeSet::from([s]));
    }

    pub fn refine(&mut self, g: &ColoredGraph, mut work: BTreeSet<usize>) {
        let n = self.n();
        let mut count = vec![0u32; n];
        let mut touched_nodes: Vec<NodeId> = Vec::new();
        while let Some(splitter) = work.pop_first() {
            if self.is_discrete() {
                break;
            }
            let members: Vec<NodeId> = self.cell(splitter).to_vec();
            let mut touched_cells = BTreeSet::new();
            for &v in &members {
                for &u in g.neighbors(v) {
                    if count[u as usize] == 0 {
                        touched_nodes.push(u);
                    }
                    count[u as usize] += 1;
                    touched_cells.insert(self.start_of[u as usize]);
                }
            }
            let mut hasher = DefaultHasher::new();
            (self.trace, splitter).hash(&mut hasher);
            for x in touched_cells {
                let len = self.len_at[x];
                if len == 1 {
                    continue;
                }
                let slice = &self.lab[x..x + len];
                let c0 = count[slice[0] as usize];
                if slice.iter().all(|&v| count[v as usize] == c0) {
                    continue;
                }
                let mut members: Vec<NodeId> = slice.to_vec();
                members.sort_unstable_by_key(|&v| (count[v as usize], v));
                let mut frag_start = x;
                for (i, &v) in members.iter().enumerate() {
                    let p = x + i;
                    if i > 0 && count[v as usize] != count[members[i - 1] as usize] {
                        self.len_at[frag_start] = p - frag_start;
                        (frag_start, p - frag_start, count[members[i - 1] as usize])
                            .hash(&mut hasher);
                        frag_start = p;
                        self.cells += 1;
                        work.insert(p);
                    }
                    self.lab[p] = v;
                    self.pos[v as usize] = p;
                    self.start_of[v as usize] = frag_start;
                }
                self.len_at[frag_start] = x + len - frag_start;
                (
                    frag_start,
                    x + len - frag_start,
                    count[members[len - 1] as usize],
                )
                    .hash(&mut hasher);
                work.insert(x);
            }
            self.trace = hasher.finish();
            for u in touched_nodes.drain(..) {
                count[u as usize] = 0;
            }
        }
    }
}
