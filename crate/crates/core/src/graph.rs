//! Undirected colored graph whose automorphisms correspond to the syntactic
//! symmetries of a ground program.
//!
//! Every occurring atom `a` contributes a node `a` (color 1) and a node
//! `not a` (color 2) joined by an edge. Every rule contributes a head node
//! and a body node joined by an edge; the head node is adjacent to the head
//! atoms and the body node to the body literals. Choice heads use color 5,
//! plain heads color 3, plain bodies color 4. Cardinality and weight bodies
//! are colored by their bound; weighted literals go through an intermediate
//! node colored by the weight. Minimize statements have a single node of
//! color 6 in place of the body node.
//!
//! Integer colors are allocated after the six structural ones, in ascending
//! order of value. The false atom gets no nodes: constraint heads are left
//! without an atom neighbor.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::program::{Atom, GroundProgram, Literal, Rule};

pub type NodeId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(pub u32);

impl Color {
    pub const ATOM: Color = Color(1);
    pub const NEGATION: Color = Color(2);
    pub const HEAD: Color = Color(3);
    pub const BODY: Color = Color(4);
    pub const CHOICE_HEAD: Color = Color(5);
    pub const MINIMIZE: Color = Color(6);
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    colors: Vec<Color>,
    adjacency: Vec<Vec<NodeId>>,
    atom_nodes: BTreeMap<Atom, NodeId>,
    node_atoms: HashMap<NodeId, Literal>,
    /// Integer value behind each non-structural color.
    integer_colors: BTreeMap<Color, u64>,
}

impl ColoredGraph {
    /// Graph with the given colors and no edges.
    pub fn with_colors(colors: Vec<Color>) -> Self {
        let n = colors.len();
        ColoredGraph {
            colors,
            adjacency: vec![Vec::new(); n],
            atom_nodes: BTreeMap::new(),
            node_atoms: HashMap::new(),
            integer_colors: BTreeMap::new(),
        }
    }

    pub fn add_node(&mut self, color: Color) -> NodeId {
        self.colors.push(color);
        self.adjacency.push(Vec::new());
        (self.colors.len() - 1) as NodeId
    }

    /// Adds the undirected edge `{u, v}`. Self-loops and repeats are ignored.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId) {
        if u == v {
            return;
        }
        let (uu, vv) = (u as usize, v as usize);
        if let Err(i) = self.adjacency[uu].binary_search(&v) {
            self.adjacency[uu].insert(i, v);
        }
        if let Err(i) = self.adjacency[vv].binary_search(&u) {
            self.adjacency[vv].insert(i, u);
        }
    }

    pub fn node_count(&self) -> usize {
        self.colors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn color(&self, v: NodeId) -> Color {
        self.colors[v as usize]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn set_color(&mut self, v: NodeId, c: Color) {
        self.colors[v as usize] = c;
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v as usize]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, ns)| {
            ns.iter()
                .filter(move |&&v| (u as NodeId) < v)
                .map(move |&v| (u as NodeId, v))
        })
    }

    pub fn max_color(&self) -> Color {
        self.colors.iter().copied().max().unwrap_or(Color(0))
    }

    /// Node of the positive literal of `atom`, if the atom occurs.
    pub fn atom_node(&self, atom: Atom) -> Option<NodeId> {
        self.atom_nodes.get(&atom).copied()
    }

    pub fn negation_node(&self, atom: Atom) -> Option<NodeId> {
        self.atom_node(atom).map(|v| v + 1)
    }

    pub fn literal_of(&self, v: NodeId) -> Option<Literal> {
        self.node_atoms.get(&v).copied()
    }

    pub fn atoms(&self) -> impl Iterator<Item = (Atom, NodeId)> + '_ {
        self.atom_nodes.iter().map(|(&a, &v)| (a, v))
    }

    pub fn integer_value(&self, c: Color) -> Option<u64> {
        self.integer_colors.get(&c).copied()
    }

    /// Line-based debug dump: `node <id> <color>` then `edge <u> <v>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (v, c) in self.colors.iter().enumerate() {
            let _ = writeln!(out, "node {v} {}", c.0);
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "edge {u} {v}");
        }
        out
    }
}

struct Encoder {
    graph: ColoredGraph,
    numbers: BTreeMap<u64, Color>,
    false_atom: Option<Atom>,
}

impl Encoder {
    fn literal(&self, l: Literal) -> NodeId {
        let v = self.graph.atom_nodes[&l.atom];
        if l.positive {
            v
        } else {
            v + 1
        }
    }

    fn head_node(&mut self, color: Color, heads: &[Atom]) -> NodeId {
        let h = self.graph.add_node(color);
        for &a in heads {
            if Some(a) == self.false_atom {
                continue;
            }
            let v = self.literal(Literal::pos(a));
            self.graph.add_edge(h, v);
        }
        h
    }

    fn plain_body(&mut self, color: Color, pos: &[Atom], neg: &[Atom]) -> NodeId {
        let b = self.graph.add_node(color);
        let lits = neg
            .iter()
            .map(|&a| Literal::neg(a))
            .chain(pos.iter().map(|&a| Literal::pos(a)));
        for l in lits.collect::<Vec<_>>() {
            let v = self.literal(l);
            self.graph.add_edge(b, v);
        }
        b
    }

    fn weighted_body(&mut self, color: Color, rule: &Rule) -> NodeId {
        let b = self.graph.add_node(color);
        let weights = rule.weights().unwrap_or(&[]);
        let terms: Vec<(Literal, u64)> =
            rule.body_literals().zip(weights.iter().copied()).collect();
        for (l, w) in terms {
            let t = self.graph.add_node(self.numbers[&w]);
            let v = self.literal(l);
            self.graph.add_edge(t, v);
            self.graph.add_edge(t, b);
        }
        b
    }

    fn rule(&mut self, rule: &Rule) {
        match rule {
            Rule::Basic { head, pos, neg } => {
                let h = self.head_node(Color::HEAD, std::slice::from_ref(head));
                let b = self.plain_body(Color::BODY, pos, neg);
                self.graph.add_edge(h, b);
            }
            Rule::Disjunctive { heads, pos, neg } => {
                let h = self.head_node(Color::HEAD, heads);
                let b = self.plain_body(Color::BODY, pos, neg);
                self.graph.add_edge(h, b);
            }
            Rule::Choice { heads, pos, neg } => {
                let h = self.head_node(Color::CHOICE_HEAD, heads);
                let b = self.plain_body(Color::BODY, pos, neg);
                self.graph.add_edge(h, b);
            }
            Rule::Cardinality {
                head,
                bound,
                pos,
                neg,
            } => {
                let h = self.head_node(Color::HEAD, std::slice::from_ref(head));
                let b = self.plain_body(self.numbers[bound], pos, neg);
                self.graph.add_edge(h, b);
            }
            Rule::Weight { head, bound, .. } => {
                let h = self.head_node(Color::HEAD, std::slice::from_ref(head));
                let b = self.weighted_body(self.numbers[bound], rule);
                self.graph.add_edge(h, b);
            }
            Rule::Minimize { .. } => {
                self.weighted_body(Color::MINIMIZE, rule);
            }
        }
    }
}

/// Integers appearing as bounds or weights, ascending.
fn program_numbers(p: &GroundProgram) -> BTreeSet<u64> {
    let mut set = BTreeSet::new();
    for rule in &p.rules {
        match rule {
            Rule::Cardinality { bound, .. } => {
                set.insert(*bound);
            }
            Rule::Weight { bound, weights, .. } => {
                set.insert(*bound);
                set.extend(weights.iter().copied());
            }
            Rule::Minimize { weights, .. } => set.extend(weights.iter().copied()),
            _ => {}
        }
    }
    set
}

/// Builds the colored graph of `p`. Compute statements are encoded as the
/// constraints they abbreviate: `a` in `B+` as `:- not a`, `a` in `B-` as
/// `:- a`.
pub fn encode_program(p: &GroundProgram) -> ColoredGraph {
    let numbers: BTreeMap<u64, Color> = program_numbers(p)
        .into_iter()
        .enumerate()
        .map(|(i, n)| (n, Color(7 + i as u32)))
        .collect();
    let mut enc = Encoder {
        graph: ColoredGraph::with_colors(Vec::new()),
        numbers,
        false_atom: p.false_atom,
    };
    enc.graph.integer_colors = enc.numbers.iter().map(|(&n, &c)| (c, n)).collect();

    for atom in p.occurring_atoms() {
        let v = enc.graph.add_node(Color::ATOM);
        let nv = enc.graph.add_node(Color::NEGATION);
        enc.graph.add_edge(v, nv);
        enc.graph.atom_nodes.insert(atom, v);
        enc.graph.node_atoms.insert(v, Literal::pos(atom));
        enc.graph.node_atoms.insert(nv, Literal::neg(atom));
    }
    for rule in &p.rules {
        enc.rule(rule);
    }
    for &a in &p.compute_plus {
        let h = enc.head_node(Color::HEAD, &[]);
        let b = enc.plain_body(Color::BODY, &[], &[a]);
        enc.graph.add_edge(h, b);
    }
    for &a in &p.compute_minus {
        if Some(a) == p.false_atom {
            continue;
        }
        let h = enc.head_node(Color::HEAD, &[]);
        let b = enc.plain_body(Color::BODY, &[a], &[]);
        enc.graph.add_edge(h, b);
    }
    enc.graph
}

/// Number of nodes per color.
pub fn color_census(g: &ColoredGraph) -> BTreeMap<Color, usize> {
    let mut out = BTreeMap::new();
    for &c in g.colors() {
        *out.entry(c).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances as examples;

    fn census(p: &GroundProgram) -> Vec<(u32, usize)> {
        color_census(&encode_program(p))
            .into_iter()
            .map(|(c, n)| (c.0, n))
            .collect()
    }

    #[test]
    fn choice_pair_census() {
        assert_eq!(
            census(&examples::p1()),
            vec![(1, 2), (2, 2), (4, 2), (5, 2)]
        );
    }

    #[test]
    fn facts_census() {
        assert_eq!(
            census(&examples::p5()),
            vec![(1, 2), (2, 2), (3, 2), (4, 2)]
        );
    }

    #[test]
    fn empty_program_has_no_nodes() {
        let g = encode_program(&GroundProgram::new());
        assert_eq!(g.node_count(), 0);
        assert!(color_census(&g).is_empty());
    }

    #[test]
    fn constraint_head_has_no_atom_neighbor() {
        let p = examples::p3();
        let g = encode_program(&p);
        assert_eq!(g.node_count(), 10);
        let heads: Vec<NodeId> = (0..g.node_count() as NodeId)
            .filter(|&v| g.color(v) == Color::HEAD)
            .collect();
        assert_eq!(heads.len(), 1);
        assert_eq!(g.neighbors(heads[0]).len(), 1);
        let body = g.neighbors(heads[0])[0];
        assert_eq!(g.color(body), Color::BODY);
        let p_node = g.atom_node(p.atom_named("p").unwrap()).unwrap();
        let q_node = g.atom_node(p.atom_named("q").unwrap()).unwrap();
        assert!(g.has_edge(body, p_node) && g.has_edge(body, q_node));
    }

    #[test]
    fn atom_and_negation_nodes_are_paired() {
        let g = encode_program(&examples::p2());
        for (_, v) in g.atoms() {
            assert_eq!(g.color(v), Color::ATOM);
            assert_eq!(g.color(v + 1), Color::NEGATION);
            assert!(g.has_edge(v, v + 1));
        }
    }

    #[test]
    fn weight_terms_are_colored_by_value() {
        let p = crate::smodels::parse_program(
            "5 1 3 2 1 2 3 1 3\n6 0 1 0 2 3\n0\n0\nB+\n0\nB-\n0\n1\n",
        )
        .unwrap();
        let g = encode_program(&p);
        // numbers {1, 3} -> colors 7, 8
        let counts = color_census(&g);
        assert_eq!(counts[&Color(7)], 1);
        // bound 3, weight 3 on the weight rule, weight 3 in minimize
        assert_eq!(counts[&Color(8)], 3);
        assert_eq!(counts[&Color::MINIMIZE], 1);
        assert_eq!(g.integer_value(Color(8)), Some(3));
    }

    #[test]
    fn compute_statements_become_constraints() {
        let p = crate::smodels::parse_program("3 1 1 0 0\n0\n0\nB+\n1\n0\nB-\n0\n1\n").unwrap();
        let g = encode_program(&p);
        let counts = color_census(&g);
        assert_eq!(counts[&Color::HEAD], 1);
        assert_eq!(counts[&Color::BODY], 2);
        let neg = g.negation_node(Atom(1)).unwrap();
        assert_eq!(g.neighbors(neg).len(), 2);
    }
}
