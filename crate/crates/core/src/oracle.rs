//! Exact stable-model semantics for small programs.
//!
//! Programs are first normalized to basic and disjunctive rules: every choice
//! head `h` becomes the pair `h :- B, not h'.` / `h' :- B, not h.` over a
//! hidden shadow atom `h'`, cardinality and weight bodies are expanded into
//! one basic rule per minimal satisfying sub-body, and compute statements and
//! false-atom rules become constraints.
//!
//! Enumeration then runs over the atoms that occur under `not` (shadows
//! excluded; a shadow is assumed true exactly when its atom is guessed
//! false). For normal programs each guess fixes a reduct whose least model is
//! the candidate; it is accepted when it reproduces the guess and is the
//! least model of its own reduct. Disjunctive heads join the guessed atoms,
//! and candidates are then checked for being minimal models of their reduct.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::program::{Atom, GroundProgram, Rule};
use crate::symmetry::AtomPermutation;

/// Guessed atoms allowed by default.
pub const DEFAULT_ORACLE_BUDGET: usize = 20;

/// Largest weighted body expanded into minimal sub-bodies.
const MAX_AGGREGATE_LITERALS: usize = 20;

/// Set of true atoms.
pub type Interpretation = BTreeSet<Atom>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{atoms} atoms to enumerate exceed the oracle budget of {budget}")]
    BudgetExceeded { atoms: usize, budget: usize },
    #[error("aggregate with {0} literals is too large to expand")]
    AggregateTooLarge(usize),
}

/// Whether `i` satisfies `r` as a classical implication. Choice rules and
/// minimize statements are satisfied by every interpretation.
pub fn satisfies(i: &Interpretation, r: &Rule) -> bool {
    let holds = |l: crate::Literal| i.contains(&l.atom) == l.positive;
    let body_count = || r.body_literals().filter(|&l| holds(l)).count() as u64;
    let body = match r {
        Rule::Choice { .. } | Rule::Minimize { .. } => return true,
        Rule::Basic { .. } | Rule::Disjunctive { .. } => r.body_literals().all(holds),
        Rule::Cardinality { bound, .. } => body_count() >= *bound,
        Rule::Weight { bound, weights, .. } => {
            let sum: u64 = r
                .body_literals()
                .zip(weights)
                .filter(|(l, _)| holds(*l))
                .map(|(_, w)| *w)
                .sum();
            sum >= *bound
        }
    };
    !body || r.head_atoms().iter().any(|h| i.contains(h))
}

/// Sum of the weights of satisfied literals over all minimize statements.
pub fn objective_value(p: &GroundProgram, i: &Interpretation) -> u64 {
    p.rules
        .iter()
        .filter(|r| matches!(r, Rule::Minimize { .. }))
        .flat_map(|r| r.body_literals().zip(r.weights().unwrap_or(&[]).iter()))
        .filter(|(l, _)| i.contains(&l.atom) == l.positive)
        .map(|(_, w)| *w)
        .sum()
}

/// Positions of all minimal subsets of `weights` reaching `bound`.
fn minimal_subsets(weights: &[u64], bound: u64) -> Result<Vec<Vec<usize>>, OracleError> {
    let n = weights.len();
    if n > MAX_AGGREGATE_LITERALS {
        return Err(OracleError::AggregateTooLarge(n));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sum: u64 = members.iter().map(|&i| weights[i]).sum();
        if sum >= bound && members.iter().all(|&i| sum - weights[i] < bound) {
            out.push(members);
        }
    }
    Ok(out)
}

struct Normalized {
    program: GroundProgram,
    /// `(atom, shadow)` for every choice head occurrence.
    shadows: Vec<(Atom, Atom)>,
    original_max: u32,
}

fn normalize_inner(p: &GroundProgram) -> Result<Normalized, OracleError> {
    let mut next = p.max_atom;
    let falsum = match p.false_atom {
        Some(f) => f,
        None => {
            next += 1;
            Atom(next)
        }
    };
    let mut out = GroundProgram {
        symbols: p.symbols.clone(),
        model_count: p.model_count,
        ..GroundProgram::new()
    };
    let mut shadows = Vec::new();
    let mut constraints = false;
    for r in &p.rules {
        match r {
            Rule::Basic { .. } | Rule::Disjunctive { .. } => out.rules.push(r.clone()),
            Rule::Minimize { .. } => out.rules.push(r.clone()),
            Rule::Choice { heads, pos, neg } => {
                for &h in heads {
                    next += 1;
                    let shadow = Atom(next);
                    shadows.push((h, shadow));
                    for (head, other) in [(h, shadow), (shadow, h)] {
                        let mut n = neg.clone();
                        n.push(other);
                        out.rules.push(Rule::Basic {
                            head,
                            pos: pos.clone(),
                            neg: n,
                        });
                    }
                }
            }
            Rule::Cardinality { head, bound, .. } | Rule::Weight { head, bound, .. } => {
                let literals: Vec<crate::Literal> = r.body_literals().collect();
                let weights: Vec<u64> = match r.weights() {
                    Some(w) => w.to_vec(),
                    None => vec![1; literals.len()],
                };
                for subset in minimal_subsets(&weights, *bound)? {
                    let mut pos = Vec::new();
                    let mut neg = Vec::new();
                    for i in subset {
                        let l = literals[i];
                        if l.positive { &mut pos } else { &mut neg }.push(l.atom);
                    }
                    pos.dedup();
                    neg.dedup();
                    out.rules.push(Rule::Basic {
                        head: *head,
                        pos,
                        neg,
                    });
                }
            }
        }
    }
    for &a in &p.compute_plus {
        constraints = true;
        out.rules.push(Rule::Basic {
            head: falsum,
            pos: vec![],
            neg: vec![a],
        });
    }
    for &a in p.compute_minus.iter().filter(|&&a| a != falsum) {
        constraints = true;
        out.rules.push(Rule::Basic {
            head: falsum,
            pos: vec![a],
            neg: vec![],
        });
    }
    if p.false_atom.is_some() || constraints {
        out.compute_minus.push(falsum);
        out.false_atom = Some(falsum);
    }
    out.max_atom = next;
    Ok(Normalized {
        program: out,
        shadows,
        original_max: p.max_atom,
    })
}

/// Basic and disjunctive rules with the same answer sets (over the original
/// atoms) as `p`. Shadow atoms and, if needed, a fresh false atom are
/// allocated above `p.max_atom`; constraints are headed by the false atom,
/// which is the only entry of `B-`.
pub fn normalize(p: &GroundProgram) -> Result<GroundProgram, OracleError> {
    normalize_inner(p).map(|n| n.program)
}

/// The reduct of a normalized program: rules with a negative body atom in
/// `i` are dropped and the remaining negative literals deleted. Other rule
/// kinds are normalized first.
pub fn reduct(p: &GroundProgram, i: &Interpretation) -> Result<GroundProgram, OracleError> {
    let plain = p
        .rules
        .iter()
        .all(|r| matches!(r, Rule::Basic { .. } | Rule::Disjunctive { .. }));
    let source = if plain { p.clone() } else { normalize(p)? };
    let rules = source
        .rules
        .iter()
        .filter(|r| !r.neg_body().iter().any(|a| i.contains(a)))
        .map(|r| match r {
            Rule::Basic { head, pos, .. } => Rule::Basic {
                head: *head,
                pos: pos.clone(),
                neg: vec![],
            },
            Rule::Disjunctive { heads, pos, .. } => Rule::Disjunctive {
                heads: heads.clone(),
                pos: pos.clone(),
                neg: vec![],
            },
            other => other.clone(),
        })
        .collect();
    Ok(GroundProgram { rules, ..source })
}

/// Dense bitset over atom indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n / 64 + 1])
    }
    fn get(&self, i: u32) -> bool {
        self.0[i as usize / 64] >> (i % 64) & 1 == 1
    }
    fn set(&mut self, i: u32) {
        self.0[i as usize / 64] |= 1 << (i % 64);
    }
    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

#[derive(Debug)]
struct NRule {
    /// Empty for constraints.
    heads: Vec<u32>,
    pos: Vec<u32>,
    neg: Vec<u32>,
}

struct Engine {
    n: usize,
    rules: Vec<NRule>,
    /// Rule indices where the atom occurs in the positive body.
    watch: Vec<Vec<usize>>,
    guesses: Vec<u32>,
    shadows: Vec<(u32, u32)>,
    disjunctive: bool,
    original_max: u32,
}

impl Engine {
    fn new(norm: &Normalized) -> Engine {
        let p = &norm.program;
        let n = p.max_atom as usize + 1;
        let falsum = p.false_atom;
        let mut rules = Vec::new();
        let mut disjunctive = false;
        for r in &p.rules {
            if matches!(r, Rule::Minimize { .. }) {
                continue;
            }
            let heads: Vec<u32> = r
                .head_atoms()
                .iter()
                .filter(|&&h| Some(h) != falsum)
                .map(|h| h.0)
                .collect();
            disjunctive |= heads.len() > 1;
            rules.push(NRule {
                heads,
                pos: r.pos_body().iter().map(|a| a.0).collect(),
                neg: r.neg_body().iter().map(|a| a.0).collect(),
            });
        }
        let mut watch = vec![Vec::new(); n];
        for (i, r) in rules.iter().enumerate() {
            for &a in &r.pos {
                watch[a as usize].push(i);
            }
        }
        let shadow_set: BTreeSet<u32> = norm.shadows.iter().map(|(_, s)| s.0).collect();
        let mut guesses: BTreeSet<u32> = rules
            .iter()
            .flat_map(|r| r.neg.iter().copied())
            .filter(|a| !shadow_set.contains(a))
            .collect();
        if disjunctive {
            guesses.extend(
                rules
                    .iter()
                    .filter(|r| r.heads.len() > 1)
                    .flat_map(|r| r.heads.iter().copied()),
            );
        }
        Engine {
            n,
            rules,
            watch,
            guesses: guesses.into_iter().collect(),
            shadows: norm.shadows.iter().map(|(h, s)| (h.0, s.0)).collect(),
            disjunctive,
            original_max: norm.original_max,
        }
    }

    fn alive(&self, r: &NRule, assumed: &Bits) -> bool {
        !r.neg.iter().any(|&a| assumed.get(a))
    }

    /// Least model of the normal part of the reduct w.r.t. `assumed`,
    /// starting from `seed`. Rules deriving an atom in `frozen` are skipped.
    fn closure(&self, assumed: &Bits, seed: &Bits, frozen: Option<&Bits>) -> Bits {
        let mut model = seed.clone();
        let mut queue: Vec<u32> = Vec::new();
        let fire = |r: &NRule, model: &mut Bits, queue: &mut Vec<u32>| {
            if let [h] = r.heads[..] {
                if !model.get(h) && frozen.is_none_or(|f| !f.get(h)) {
                    model.set(h);
                    queue.push(h);
                }
            }
        };
        let mut missing: Vec<usize> = Vec::with_capacity(self.rules.len());
        for r in &self.rules {
            if r.heads.len() != 1 || !self.alive(r, assumed) {
                missing.push(usize::MAX);
                continue;
            }
            let m = r.pos.iter().filter(|&&a| !seed.get(a)).count();
            missing.push(m);
            if m == 0 {
                fire(r, &mut model, &mut queue);
            }
        }
        while let Some(a) = queue.pop() {
            for &ri in &self.watch[a as usize] {
                if missing[ri] == usize::MAX || missing[ri] == 0 {
                    continue;
                }
                let r = &self.rules[ri];
                missing[ri] -= r.pos.iter().filter(|&&x| x == a).count();
                if missing[ri] == 0 {
                    fire(r, &mut model, &mut queue);
                }
            }
        }
        model
    }

    fn is_model_of_reduct(&self, m: &Bits, reduct_of: &Bits) -> bool {
        self.rules.iter().all(|r| {
            !self.alive(r, reduct_of)
                || !r.pos.iter().all(|&a| m.get(a))
                || r.heads.iter().any(|&h| m.get(h))
        })
    }

    fn violates_constraints(&self, m: &Bits) -> bool {
        self.rules.iter().any(|r| {
            r.heads.is_empty()
                && r.pos.iter().all(|&a| m.get(a))
                && !r.neg.iter().any(|&a| m.get(a))
        })
    }

    fn assumption(&self, mask: u64) -> Bits {
        let mut a = Bits::new(self.n);
        for (i, &g) in self.guesses.iter().enumerate() {
            if mask >> i & 1 == 1 {
                a.set(g);
            }
        }
        for &(h, s) in &self.shadows {
            if !a.get(h) {
                a.set(s);
            }
        }
        a
    }

    fn guesses_match(&self, m: &Bits, mask: u64) -> bool {
        self.guesses
            .iter()
            .enumerate()
            .all(|(i, &g)| m.get(g) == (mask >> i & 1 == 1))
    }

    fn stable_normal(&self, mask: u64) -> Option<Bits> {
        let assumed = self.assumption(mask);
        let empty = Bits::new(self.n);
        let m = self.closure(&assumed, &empty, None);
        if !self.guesses_match(&m, mask) {
            return None;
        }
        if self.closure(&m, &empty, None) != m || self.violates_constraints(&m) {
            return None;
        }
        Some(m)
    }

    fn stable_disjunctive(&self, mask: u64) -> Option<Bits> {
        let assumed = self.assumption(mask);
        let mut frozen = Bits::new(self.n);
        let mut seed = Bits::new(self.n);
        for (i, &g) in self.guesses.iter().enumerate() {
            frozen.set(g);
            if mask >> i & 1 == 1 {
                seed.set(g);
            }
        }
        let m = self.closure(&assumed, &seed, Some(&frozen));
        if !self.is_model_of_reduct(&m, &m) || self.violates_constraints(&m) {
            return None;
        }
        let chosen: Vec<u32> = self.guesses.iter().copied().filter(|&g| m.get(g)).collect();
        for sub in 0u64..(1 << chosen.len()) {
            let mut t = Bits::new(self.n);
            for (i, &g) in chosen.iter().enumerate() {
                if sub >> i & 1 == 1 {
                    t.set(g);
                }
            }
            let smaller = self.closure(&m, &t, Some(&frozen));
            if smaller != m && smaller.is_subset(&m) && self.is_model_of_reduct(&smaller, &m) {
                return None;
            }
        }
        Some(m)
    }

    fn project(&self, m: &Bits) -> Interpretation {
        (1..=self.original_max)
            .filter(|&a| m.get(a))
            .map(Atom)
            .collect()
    }
}

/// All answer sets of `p`, projected onto `p`'s atoms, in ascending order.
/// Fails when more than `budget` atoms would have to be guessed.
pub fn answer_sets_with(
    p: &GroundProgram,
    budget: usize,
) -> Result<Vec<Interpretation>, OracleError> {
    let norm = normalize_inner(p)?;
    let engine = Engine::new(&norm);
    let k = engine.guesses.len();
    if k > budget || k >= 63 {
        return Err(OracleError::BudgetExceeded { atoms: k, budget });
    }
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << k) {
        let found = if engine.disjunctive {
            engine.stable_disjunctive(mask)
        } else {
            engine.stable_normal(mask)
        };
        if let Some(m) = found {
            out.insert(engine.project(&m));
        }
    }
    Ok(out.into_iter().collect())
}

pub fn answer_sets(p: &GroundProgram) -> Result<Vec<Interpretation>, OracleError> {
    answer_sets_with(p, DEFAULT_ORACLE_BUDGET)
}

/// Answer sets with the least objective value.
pub fn optimal_answer_sets(p: &GroundProgram) -> Result<Vec<Interpretation>, OracleError> {
    let all = answer_sets(p)?;
    let best = all.iter().map(|i| objective_value(p, i)).min();
    Ok(all
        .into_iter()
        .filter(|i| Some(objective_value(p, i)) == best)
        .collect())
}

pub fn apply_to_interpretation(pi: &AtomPermutation, i: &Interpretation) -> Interpretation {
    i.iter().map(|&a| pi.apply(a)).collect()
}

/// Orbit of `i` under the group generated by `gens`.
pub fn interpretation_orbit(gens: &[AtomPermutation], i: &Interpretation) -> Vec<Interpretation> {
    let mut seen: HashSet<Interpretation> = HashSet::from([i.clone()]);
    let mut order = vec![i.clone()];
    let mut k = 0;
    while k < order.len() {
        for g in gens {
            let img = apply_to_interpretation(g, &order[k]);
            if seen.insert(img.clone()) {
                order.push(img);
            }
        }
        k += 1;
    }
    order
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoundnessVerdict {
    /// Every orbit of answer sets keeps a representative.
    pub sound: bool,
    /// Every surviving answer set was an answer set of the input.
    pub conservative: bool,
    pub before: usize,
    pub after: usize,
    /// Answer sets of the input whose orbit lost every member.
    pub lost: Vec<Interpretation>,
}

impl SoundnessVerdict {
    pub fn holds(&self) -> bool {
        self.sound && self.conservative
    }
}

/// Compares answer sets of `p` and `augmented` (projected onto `p`'s
/// atoms) orbit by orbit.
pub fn check_soundness_with(
    p: &GroundProgram,
    gens: &[AtomPermutation],
    augmented: &GroundProgram,
    budget: usize,
) -> Result<SoundnessVerdict, OracleError> {
    let before = answer_sets_with(p, budget)?;
    let project = |i: Interpretation| -> Interpretation {
        i.into_iter().filter(|a| a.0 <= p.max_atom).collect()
    };
    let after: BTreeSet<Interpretation> = answer_sets_with(augmented, budget)?
        .into_iter()
        .map(project)
        .collect();
    let before_set: BTreeSet<&Interpretation> = before.iter().collect();
    let conservative = after.iter().all(|i| before_set.contains(i));
    let lost: Vec<Interpretation> = before
        .iter()
        .filter(|i| {
            !interpretation_orbit(gens, i)
                .iter()
                .any(|j| after.contains(j))
        })
        .cloned()
        .collect();
    Ok(SoundnessVerdict {
        sound: lost.is_empty(),
        conservative,
        before: before.len(),
        after: after.len(),
        lost,
    })
}

pub fn check_soundness(
    p: &GroundProgram,
    gens: &[AtomPermutation],
    augmented: &GroundProgram,
) -> Result<SoundnessVerdict, OracleError> {
    check_soundness_with(p, gens, augmented, DEFAULT_ORACLE_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::smodels::parse_program;

    fn set(atoms: &[u32]) -> Interpretation {
        atoms.iter().map(|&a| Atom(a)).collect()
    }

    fn basic(head: u32, pos: &[u32], neg: &[u32]) -> Rule {
        Rule::Basic {
            head: Atom(head),
            pos: pos.iter().map(|&a| Atom(a)).collect(),
            neg: neg.iter().map(|&a| Atom(a)).collect(),
        }
    }

    fn program(rules: Vec<Rule>) -> GroundProgram {
        GroundProgram {
            rules,
            ..GroundProgram::new()
        }
        .finish()
    }

    #[test]
    fn satisfaction_examples() {
        // p=1, q=2, r=3
        assert!(!satisfies(&set(&[1, 2]), &basic(3, &[1, 2], &[])));
        // constraint with unsatisfied body, false atom 9
        assert!(satisfies(&set(&[]), &basic(9, &[1, 2], &[])));
        let w = Rule::Weight {
            head: Atom(5),
            bound: 3,
            pos: vec![Atom(1)],
            neg: vec![],
            weights: vec![2],
        };
        assert!(satisfies(&set(&[1]), &w));
        assert!(satisfies(
            &set(&[]),
            &Rule::Choice {
                heads: vec![Atom(1)],
                pos: vec![],
                neg: vec![]
            }
        ));
    }

    #[test]
    fn reduct_examples() {
        // a=1, b=2; a :- not b.
        let p = program(vec![basic(1, &[], &[2])]);
        assert_eq!(
            reduct(&p, &set(&[])).unwrap().rules,
            vec![Rule::fact(Atom(1))]
        );
        assert!(reduct(&p, &set(&[2])).unwrap().rules.is_empty());
        let positive = program(vec![basic(1, &[2], &[]), Rule::fact(Atom(2))]);
        for i in [set(&[]), set(&[1]), set(&[1, 2])] {
            assert_eq!(reduct(&positive, &i).unwrap().rules, positive.rules);
        }
    }

    #[test]
    fn interchangeability_examples_answer_sets() {
        assert_eq!(answer_sets(&instances::p5()).unwrap(), vec![set(&[1, 2])]);
        assert_eq!(
            answer_sets(&instances::p1()).unwrap(),
            vec![set(&[]), set(&[1]), set(&[1, 2]), set(&[2])]
        );
        assert_eq!(
            answer_sets(&instances::p2()).unwrap(),
            vec![set(&[]), set(&[1]), set(&[1, 2, 3]), set(&[2])]
        );
        // :- p, q removes {p, q}
        assert_eq!(
            answer_sets(&instances::p3()).unwrap(),
            vec![set(&[]), set(&[2]), set(&[3])]
        );
        // p | q :- p, q adds nothing to the free choices
        assert_eq!(answer_sets(&instances::p4()).unwrap().len(), 4);
    }

    #[test]
    fn negation_loops() {
        // a :- not b.  b :- not a.
        let p = program(vec![basic(1, &[], &[2]), basic(2, &[], &[1])]);
        assert_eq!(answer_sets(&p).unwrap(), vec![set(&[1]), set(&[2])]);
        // a :- not a.
        let odd = program(vec![basic(1, &[], &[1])]);
        assert!(answer_sets(&odd).unwrap().is_empty());
        // a :- a.  has only the empty answer set
        let pos = program(vec![basic(1, &[1], &[])]);
        assert_eq!(answer_sets(&pos).unwrap(), vec![set(&[])]);
    }

    #[test]
    fn disjunction_is_minimal() {
        // a | b.
        let p = program(vec![Rule::Disjunctive {
            heads: vec![Atom(1), Atom(2)],
            pos: vec![],
            neg: vec![],
        }]);
        assert_eq!(answer_sets(&p).unwrap(), vec![set(&[1]), set(&[2])]);
        // a | b.  a :- b.  b :- a.  gives {a, b}
        let q = program(vec![
            Rule::Disjunctive {
                heads: vec![Atom(1), Atom(2)],
                pos: vec![],
                neg: vec![],
            },
            basic(1, &[2], &[]),
            basic(2, &[1], &[]),
        ]);
        assert_eq!(answer_sets(&q).unwrap(), vec![set(&[1, 2])]);
        // a | b.  c :- not a.  picks {a} or {b, c}
        let r = program(vec![
            Rule::Disjunctive {
                heads: vec![Atom(1), Atom(2)],
                pos: vec![],
                neg: vec![],
            },
            basic(3, &[], &[1]),
        ]);
        assert_eq!(answer_sets(&r).unwrap(), vec![set(&[1]), set(&[2, 3])]);
    }

    #[test]
    fn cardinality_and_weight_bodies() {
        // {a}. {b}. {c}.  h :- 2 {a, b, c}.
        let mut rules: Vec<Rule> = (1..=3)
            .map(|a| Rule::Choice {
                heads: vec![Atom(a)],
                pos: vec![],
                neg: vec![],
            })
            .collect();
        rules.push(Rule::Cardinality {
            head: Atom(4),
            bound: 2,
            pos: vec![Atom(1), Atom(2), Atom(3)],
            neg: vec![],
        });
        let p = program(rules.clone());
        let sets = answer_sets(&p).unwrap();
        assert_eq!(sets.len(), 8);
        for s in &sets {
            let count = (1..=3).filter(|&a| s.contains(&Atom(a))).count();
            assert_eq!(s.contains(&Atom(4)), count >= 2, "{s:?}");
        }
        // h :- 3 [a=2, not b=2]
        rules.pop();
        rules.push(Rule::Weight {
            head: Atom(4),
            bound: 3,
            pos: vec![Atom(1)],
            neg: vec![Atom(2)],
            weights: vec![2, 2],
        });
        let sets = answer_sets(&program(rules)).unwrap();
        for s in &sets {
            let h = s.contains(&Atom(1)) && !s.contains(&Atom(2));
            assert_eq!(s.contains(&Atom(4)), h, "{s:?}");
        }
    }

    #[test]
    fn compute_statements_filter() {
        let p =
            parse_program("3 1 1 0 0\n3 1 2 0 0\n0\n1 a\n2 b\n0\nB+\n1\n0\nB-\n2\n0\n1\n").unwrap();
        assert_eq!(answer_sets(&p).unwrap(), vec![set(&[1])]);
    }

    #[test]
    fn every_answer_set_is_a_minimal_model_of_its_reduct() {
        let p = instances::pigeonhole(3, 3);
        let sets = answer_sets(&p).unwrap();
        assert_eq!(sets.len(), 6);
        let norm = normalize(&p).unwrap();
        for s in &sets {
            for r in &p.rules {
                let with_false = s.clone();
                assert!(satisfies(&with_false, r) || r.head_atoms() == [Atom(1)]);
            }
            let red = reduct(&norm, s).unwrap();
            assert!(red.rules.iter().all(|r| !r.head_atoms().is_empty()));
        }
    }

    #[test]
    fn pigeonhole_without_room_is_unsat() {
        assert!(answer_sets(&instances::pigeonhole(4, 3))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let p = instances::free_choice_grid(3, 3);
        assert_eq!(
            answer_sets_with(&p, 8),
            Err(OracleError::BudgetExceeded {
                atoms: 9,
                budget: 8
            })
        );
    }

    #[test]
    fn objective_examples() {
        assert_eq!(objective_value(&instances::p1(), &set(&[1])), 0);
        let single = program(vec![Rule::Minimize {
            pos: vec![Atom(1)],
            neg: vec![],
            weights: vec![3],
        }]);
        assert_eq!(objective_value(&single, &set(&[1])), 3);
        let two = program(vec![Rule::Minimize {
            pos: vec![Atom(1)],
            neg: vec![Atom(2)],
            weights: vec![2, 3],
        }]);
        assert_eq!(objective_value(&two, &set(&[1])), 5);
    }

    #[test]
    fn soundness_verdicts() {
        let p = instances::p1();
        let swap = AtomPermutation::from_cycles(&[&[Atom(1), Atom(2)]]).unwrap();
        let trivial = check_soundness(&p, std::slice::from_ref(&swap), &p).unwrap();
        assert!(trivial.holds());
        assert_eq!((trivial.before, trivial.after), (4, 4));

        // :- p, not q.  with a fresh false atom 3
        let mut broken = p.clone();
        broken.rules.push(basic(3, &[1], &[2]));
        broken.compute_minus.push(Atom(3));
        let broken = broken.finish();
        let v = check_soundness(&p, std::slice::from_ref(&swap), &broken).unwrap();
        assert!(v.holds());
        assert_eq!(
            answer_sets(&broken).unwrap(),
            vec![set(&[]), set(&[1, 2]), set(&[2])]
        );

        // :- p.  :- not p.  kills everything
        let mut dead = p.clone();
        dead.rules.push(basic(3, &[1], &[]));
        dead.rules.push(basic(3, &[], &[1]));
        dead.compute_minus.push(Atom(3));
        let v = check_soundness(&p, &[swap], &dead.finish()).unwrap();
        assert!(!v.sound);
        assert_eq!(v.lost.len(), 4);
    }

    #[test]
    fn orbits_follow_generators() {
        let swap = AtomPermutation::from_cycles(&[&[Atom(1), Atom(2)]]).unwrap();
        assert_eq!(
            interpretation_orbit(std::slice::from_ref(&swap), &set(&[1])).len(),
            2
        );
        assert_eq!(interpretation_orbit(&[swap], &set(&[1, 2])).len(), 1);
    }
}
