use crate::program::{Atom, GroundProgram, Literal, Rule};

use super::AtomPermutation;

/// A rule reduced to what a permutation has to preserve. Head and body sets
/// of plain and choice rules are order- and duplicate-insensitive;
/// cardinality bodies and weighted terms are compared as multisets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum RuleKey {
    Plain {
        heads: Vec<Atom>,
        pos: Vec<Atom>,
        neg: Vec<Atom>,
    },
    Choice {
        heads: Vec<Atom>,
        pos: Vec<Atom>,
        neg: Vec<Atom>,
    },
    Cardinality {
        head: Atom,
        bound: u64,
        pos: Vec<Atom>,
        neg: Vec<Atom>,
    },
    Weight {
        head: Atom,
        bound: u64,
        terms: Vec<(Literal, u64)>,
    },
    Minimize {
        terms: Vec<(Literal, u64)>,
    },
}

fn set(v: impl IntoIterator<Item = Atom>) -> Vec<Atom> {
    let mut v: Vec<Atom> = v.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn multiset(v: impl IntoIterator<Item = Atom>) -> Vec<Atom> {
    let mut v: Vec<Atom> = v.into_iter().collect();
    v.sort_unstable();
    v
}

fn terms(rule: &Rule, f: &impl Fn(Atom) -> Atom) -> Vec<(Literal, u64)> {
    let weights = rule.weights().unwrap_or(&[]);
    let mut t: Vec<(Literal, u64)> = rule
        .body_literals()
        .zip(weights.iter().copied())
        .map(|(l, w)| {
            (
                Literal {
                    atom: f(l.atom),
                    ..l
                },
                w,
            )
        })
        .collect();
    t.sort_unstable();
    t
}

fn key(rule: &Rule, false_atom: Option<Atom>, f: &impl Fn(Atom) -> Atom) -> RuleKey {
    let pos = rule.pos_body().iter().map(|&a| f(a));
    let neg = rule.neg_body().iter().map(|&a| f(a));
    match rule {
        Rule::Basic { .. } | Rule::Disjunctive { .. } => RuleKey::Plain {
            heads: set(rule
                .head_atoms()
                .iter()
                .filter(|&&a| Some(a) != false_atom)
                .map(|&a| f(a))),
            pos: set(pos),
            neg: set(neg),
        },
        Rule::Choice { heads, .. } => RuleKey::Choice {
            heads: set(heads.iter().map(|&a| f(a))),
            pos: set(pos),
            neg: set(neg),
        },
        Rule::Cardinality { head, bound, .. } => RuleKey::Cardinality {
            head: f(*head),
            bound: *bound,
            pos: multiset(pos),
            neg: multiset(neg),
        },
        Rule::Weight { head, bound, .. } => RuleKey::Weight {
            head: f(*head),
            bound: *bound,
            terms: terms(rule, f),
        },
        Rule::Minimize { .. } => RuleKey::Minimize {
            terms: terms(rule, f),
        },
    }
}

fn program_keys(p: &GroundProgram, f: impl Fn(Atom) -> Atom) -> Vec<RuleKey> {
    let mut keys: Vec<RuleKey> = p.rules.iter().map(|r| key(r, p.false_atom, &f)).collect();
    for &a in &p.compute_plus {
        keys.push(RuleKey::Plain {
            heads: vec![],
            pos: vec![],
            neg: vec![f(a)],
        });
    }
    for &a in &p.compute_minus {
        if Some(a) != p.false_atom {
            keys.push(RuleKey::Plain {
                heads: vec![],
                pos: vec![f(a)],
                neg: vec![],
            });
        }
    }
    keys.sort_unstable();
    keys
}

/// Tests permutations against one program, reusing its canonical form.
#[derive(Debug, Clone)]
pub struct SymmetryChecker<'p> {
    program: &'p GroundProgram,
    keys: Vec<RuleKey>,
}

impl<'p> SymmetryChecker<'p> {
    pub fn new(program: &'p GroundProgram) -> Self {
        SymmetryChecker {
            program,
            keys: program_keys(program, |a| a),
        }
    }

    pub fn program(&self) -> &'p GroundProgram {
        self.program
    }

    /// Whether applying `pi` to every rule gives back the same multiset of
    /// rules. The false atom must stay fixed.
    pub fn is_symmetry(&self, pi: &AtomPermutation) -> bool {
        if pi.is_identity() {
            return true;
        }
        let p = self.program;
        if pi
            .support()
            .any(|a| a.0 > p.max_atom || Some(a) == p.false_atom)
        {
            return false;
        }
        program_keys(p, |a| pi.apply(a)) == self.keys
    }
}

pub fn is_syntactic_symmetry(p: &GroundProgram, pi: &AtomPermutation) -> bool {
    SymmetryChecker::new(p).is_symmetry(pi)
}
