//! Ground program representation shared by every stage of the pipeline.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// A propositional atom, numbered from 1 as in the smodels wire format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(pub u32);

impl Atom {
    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An atom or its default negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal {
            atom,
            positive: true,
        }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal {
            atom,
            positive: false,
        }
    }
}

/// One line of the rules section. Weighted variants keep their weights in
/// wire order: first the negative literals, then the positive ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    Basic {
        head: Atom,
        pos: Vec<Atom>,
        neg: Vec<Atom>,
    },
    Cardinality {
        head: Atom,
        bound: u64,
        pos: Vec<Atom>,
        neg: Vec<Atom>,
    },
    Choice {
        heads: Vec<Atom>,
        pos: Vec<Atom>,
        neg: Vec<Atom>,
    },
    Weight {
        head: Atom,
        bound: u64,
        pos: Vec<Atom>,
        neg: Vec<Atom>,
        weights: Vec<u64>,
    },
    Minimize {
        pos: Vec<Atom>,
        neg: Vec<Atom>,
        weights: Vec<u64>,
    },
    Disjunctive {
        heads: Vec<Atom>,
        pos: Vec<Atom>,
        neg: Vec<Atom>,
    },
}

impl Rule {
    pub fn fact(head: Atom) -> Self {
        Rule::Basic {
            head,
            pos: Vec::new(),
            neg: Vec::new(),
        }
    }

    /// Wire type code.
    pub fn code(&self) -> u32 {
        match self {
            Rule::Basic { .. } => 1,
            Rule::Cardinality { .. } => 2,
            Rule::Choice { .. } => 3,
            Rule::Weight { .. } => 5,
            Rule::Minimize { .. } => 6,
            Rule::Disjunctive { .. } => 8,
        }
    }

    pub fn head_atoms(&self) -> &[Atom] {
        match self {
            Rule::Basic { head, .. }
            | Rule::Cardinality { head, .. }
            | Rule::Weight { head, .. } => std::slice::from_ref(head),
            Rule::Choice { heads, .. } | Rule::Disjunctive { heads, .. } => heads,
            Rule::Minimize { .. } => &[],
        }
    }

    pub fn pos_body(&self) -> &[Atom] {
        match self {
            Rule::Basic { pos, .. }
            | Rule::Cardinality { pos, .. }
            | Rule::Choice { pos, .. }
            | Rule::Weight { pos, .. }
            | Rule::Minimize { pos, .. }
            | Rule::Disjunctive { pos, .. } => pos,
        }
    }

    pub fn neg_body(&self) -> &[Atom] {
        match self {
            Rule::Basic { neg, .. }
            | Rule::Cardinality { neg, .. }
            | Rule::Choice { neg, .. }
            | Rule::Weight { neg, .. }
            | Rule::Minimize { neg, .. }
            | Rule::Disjunctive { neg, .. } => neg,
        }
    }

    /// Body literals in wire order (negative first), which is also the
    /// order weights are aligned to.
    pub fn body_literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.neg_body()
            .iter()
            .map(|&a| Literal::neg(a))
            .chain(self.pos_body().iter().map(|&a| Literal::pos(a)))
    }

    pub fn weights(&self) -> Option<&[u64]> {
        match self {
            Rule::Weight { weights, .. } | Rule::Minimize { weights, .. } => Some(weights),
            _ => None,
        }
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.head_atoms()
            .iter()
            .chain(self.pos_body())
            .chain(self.neg_body())
            .copied()
    }

    /// Applies `f` to every atom occurrence.
    pub fn map_atoms(&self, mut f: impl FnMut(Atom) -> Atom) -> Rule {
        let mut m = |v: &[Atom]| v.iter().map(|&a| f(a)).collect::<Vec<_>>();
        match self {
            Rule::Basic { head, pos, neg } => Rule::Basic {
                head: m(std::slice::from_ref(head))[0],
                pos: m(pos),
                neg: m(neg),
            },
            Rule::Cardinality {
                head,
                bound,
                pos,
                neg,
            } => Rule::Cardinality {
                head: m(std::slice::from_ref(head))[0],
                bound: *bound,
                pos: m(pos),
                neg: m(neg),
            },
            Rule::Choice { heads, pos, neg } => Rule::Choice {
                heads: m(heads),
                pos: m(pos),
                neg: m(neg),
            },
            Rule::Weight {
                head,
                bound,
                pos,
                neg,
                weights,
            } => Rule::Weight {
                head: m(std::slice::from_ref(head))[0],
                bound: *bound,
                pos: m(pos),
                neg: m(neg),
                weights: weights.clone(),
            },
            Rule::Minimize { pos, neg, weights } => Rule::Minimize {
                pos: m(pos),
                neg: m(neg),
                weights: weights.clone(),
            },
            Rule::Disjunctive { heads, pos, neg } => Rule::Disjunctive {
                heads: m(heads),
                pos: m(pos),
                neg: m(neg),
            },
        }
    }
}

/// A ground program as exchanged between grounder and solver.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroundProgram {
    pub rules: Vec<Rule>,
    /// Symbol table in file order. Atoms without an entry are hidden.
    pub symbols: Vec<(Atom, String)>,
    pub compute_plus: Vec<Atom>,
    pub compute_minus: Vec<Atom>,
    /// Number of models requested; 0 means all.
    pub model_count: u64,
    /// Largest atom index in use, 0 for a program without atoms.
    pub max_atom: u32,
    /// Atom standing in for the empty head of constraints. Never true.
    pub false_atom: Option<Atom>,
}

impl GroundProgram {
    pub fn new() -> Self {
        GroundProgram {
            model_count: 1,
            ..Default::default()
        }
    }

    /// Largest atom index referenced anywhere in the program.
    pub fn largest_atom(&self) -> u32 {
        let rules = self.rules.iter().flat_map(Rule::atoms);
        let symbols = self.symbols.iter().map(|(a, _)| *a);
        rules
            .chain(symbols)
            .chain(self.compute_plus.iter().copied())
            .chain(self.compute_minus.iter().copied())
            .map(Atom::index)
            .max()
            .unwrap_or(0)
    }

    /// Recomputes `max_atom` and `false_atom` from the contents.
    pub fn finish(mut self) -> Self {
        self.max_atom = self.max_atom.max(self.largest_atom());
        self.false_atom = self.detect_false_atom();
        self
    }

    /// The constraint head convention used by grounders: an atom listed in
    /// `B-` that only ever occurs as the head of basic rules. The first basic
    /// rule whose head qualifies decides.
    pub fn detect_false_atom(&self) -> Option<Atom> {
        let minus: BTreeSet<Atom> = self.compute_minus.iter().copied().collect();
        let mut disqualified = BTreeSet::new();
        for rule in &self.rules {
            let heads: &[Atom] = match rule {
                Rule::Basic { .. } => &[],
                other => other.head_atoms(),
            };
            disqualified.extend(heads.iter().copied());
            disqualified.extend(rule.pos_body().iter().copied());
            disqualified.extend(rule.neg_body().iter().copied());
        }
        disqualified.extend(self.compute_plus.iter().copied());
        self.rules.iter().find_map(|rule| match rule {
            Rule::Basic { head, .. } if minus.contains(head) && !disqualified.contains(head) => {
                Some(*head)
            }
            _ => None,
        })
    }

    pub fn name_of(&self, atom: Atom) -> Option<&str> {
        self.symbols
            .iter()
            .find(|(a, _)| *a == atom)
            .map(|(_, n)| n.as_str())
    }

    pub fn atom_named(&self, name: &str) -> Option<Atom> {
        self.symbols
            .iter()
            .find(|(_, n)| n == name)
            .map(|(a, _)| *a)
    }

    /// Display name: the symbol if present, `_<index>` otherwise.
    pub fn display_name(&self, atom: Atom) -> String {
        match self.name_of(atom) {
            Some(n) => n.to_string(),
            None => format!("_{}", atom.0),
        }
    }

    /// Atoms that occur in a rule or compute statement, excluding the false
    /// atom, in ascending order.
    pub fn occurring_atoms(&self) -> Vec<Atom> {
        let mut set: BTreeSet<Atom> = self.rules.iter().flat_map(Rule::atoms).collect();
        set.extend(self.compute_plus.iter().copied());
        set.extend(self.compute_minus.iter().copied());
        if let Some(f) = self.false_atom {
            set.remove(&f);
        }
        set.into_iter().collect()
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        validate(self)
    }
}

/// A violated program invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    WeightArity {
        rule: usize,
        literals: usize,
        weights: usize,
    },
    AtomOutOfRange {
        atom: Atom,
        max_atom: u32,
    },
    ZeroAtom {
        rule: Option<usize>,
    },
    EmptyHead {
        rule: usize,
    },
    DuplicateSymbol {
        name: String,
    },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::WeightArity {
                rule,
                literals,
                weights,
            } => write!(
                f,
                "rule {rule}: {literals} body literals but {weights} weights"
            ),
            Diagnostic::AtomOutOfRange { atom, max_atom } => {
                write!(f, "atom {atom} exceeds max atom {max_atom}")
            }
            Diagnostic::ZeroAtom { rule: Some(r) } => write!(f, "rule {r}: atom index 0"),
            Diagnostic::ZeroAtom { rule: None } => write!(f, "atom index 0 outside rules"),
            Diagnostic::EmptyHead { rule } => write!(f, "rule {rule}: empty head list"),
            Diagnostic::DuplicateSymbol { name } => write!(f, "duplicate symbol name {name:?}"),
        }
    }
}

/// Checks every [`GroundProgram`] invariant and reports one diagnostic per
/// violation.
pub fn validate(p: &GroundProgram) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut reported = BTreeSet::new();
    let mut check = |atom: Atom, rule: Option<usize>, out: &mut Vec<Diagnostic>| {
        if atom.0 == 0 {
            out.push(Diagnostic::ZeroAtom { rule });
        } else if atom.0 > p.max_atom && reported.insert(atom) {
            out.push(Diagnostic::AtomOutOfRange {
                atom,
                max_atom: p.max_atom,
            });
        }
    };
    for (i, rule) in p.rules.iter().enumerate() {
        for a in rule.atoms() {
            check(a, Some(i), &mut out);
        }
        if let Some(w) = rule.weights() {
            let literals = rule.pos_body().len() + rule.neg_body().len();
            if w.len() != literals {
                out.push(Diagnostic::WeightArity {
                    rule: i,
                    literals,
                    weights: w.len(),
                });
            }
        }
        if let Rule::Choice { heads, .. } | Rule::Disjunctive { heads, .. } = rule {
            if heads.is_empty() {
                out.push(Diagnostic::EmptyHead { rule: i });
            }
        }
    }
    let others = p
        .symbols
        .iter()
        .map(|(a, _)| *a)
        .chain(p.compute_plus.iter().copied())
        .chain(p.compute_minus.iter().copied());
    for a in others {
        check(a, None, &mut out);
    }
    let mut seen: HashMap<&str, Atom> = HashMap::new();
    for (atom, name) in &p.symbols {
        if seen.insert(name.as_str(), *atom).is_some() {
            out.push(Diagnostic::DuplicateSymbol { name: name.clone() });
        }
    }
    out
}
