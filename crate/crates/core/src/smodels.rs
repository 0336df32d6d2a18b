//! Reader and writer for the lparse/smodels intermediate format, including
//! gringo's disjunctive rule type 8.

use std::collections::HashSet;
use std::io::{self, Write};

use thiserror::Error;

use crate::program::{Atom, GroundProgram, Rule};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("malformed integer {0:?}")]
    MalformedInteger(String),
    #[error("unknown rule type {0}")]
    UnknownRuleType(u64),
    #[error("truncated rule: expected {expected} more value(s)")]
    TruncatedRule { expected: usize },
    #[error("weight count mismatch: {literals} literals but {weights} weights")]
    WeightCountMismatch { literals: usize, weights: usize },
    #[error("duplicate symbol name {0:?}")]
    DuplicateSymbol(String),
    #[error("negative literal count {neg} exceeds literal count {lits}")]
    LiteralCounts { lits: usize, neg: usize },
    #[error("atom index 0")]
    ZeroAtom,
    #[error("unexpected trailing data {0:?}")]
    TrailingData(String),
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEof(&'static str),
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next non-blank line with its 1-based number.
    fn next(&mut self, what: &'static str) -> Result<(usize, &'a str), ParseError> {
        for (i, l) in self.inner.by_ref() {
            self.last = i + 1;
            if !l.trim().is_empty() {
                return Ok((i + 1, l.trim()));
            }
        }
        Err(ParseError {
            line: self.last + 1,
            kind: ParseErrorKind::UnexpectedEof(what),
        })
    }
}

struct Tokens<'a> {
    line: usize,
    iter: std::str::SplitWhitespace<'a>,
}

impl<'a> Tokens<'a> {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            kind,
        }
    }

    fn int(&mut self, remaining: usize) -> Result<u64, ParseError> {
        let tok = self.iter.next().ok_or_else(|| {
            self.err(ParseErrorKind::TruncatedRule {
                expected: remaining.max(1),
            })
        })?;
        tok.parse::<u64>()
            .map_err(|_| self.err(ParseErrorKind::MalformedInteger(tok.to_string())))
    }

    fn count(&mut self) -> Result<usize, ParseError> {
        let v = self.int(1)?;
        usize::try_from(v).map_err(|_| self.err(ParseErrorKind::MalformedInteger(v.to_string())))
    }

    fn atom(&mut self, remaining: usize) -> Result<Atom, ParseError> {
        let v = self.int(remaining)?;
        if v == 0 {
            return Err(self.err(ParseErrorKind::ZeroAtom));
        }
        u32::try_from(v)
            .map(Atom)
            .map_err(|_| self.err(ParseErrorKind::MalformedInteger(v.to_string())))
    }

    fn atoms(&mut self, n: usize) -> Result<Vec<Atom>, ParseError> {
        (0..n).map(|i| self.atom(n - i)).collect()
    }

    /// `#lits #neg neg... pos...`
    fn body(&mut self) -> Result<(Vec<Atom>, Vec<Atom>), ParseError> {
        let lits = self.count()?;
        let neg = self.count()?;
        if neg > lits {
            return Err(self.err(ParseErrorKind::LiteralCounts { lits, neg }));
        }
        let n = self.atoms(neg)?;
        let p = self.atoms(lits - neg)?;
        Ok((p, n))
    }

    fn heads(&mut self) -> Result<Vec<Atom>, ParseError> {
        let n = self.count()?;
        self.atoms(n)
    }

    fn weights(&mut self, literals: usize) -> Result<Vec<u64>, ParseError> {
        let rest: Vec<&str> = self.iter.by_ref().collect();
        if rest.len() != literals {
            return Err(self.err(ParseErrorKind::WeightCountMismatch {
                literals,
                weights: rest.len(),
            }));
        }
        rest.into_iter()
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| self.err(ParseErrorKind::MalformedInteger(t.to_string())))
            })
            .collect()
    }

    fn finish(mut self) -> Result<(), ParseError> {
        match self.iter.next() {
            None => Ok(()),
            Some(t) => Err(self.err(ParseErrorKind::TrailingData(t.to_string()))),
        }
    }
}

fn tokens(line: usize, text: &str) -> Tokens<'_> {
    Tokens {
        line,
        iter: text.split_whitespace(),
    }
}

fn parse_rule(line: usize, code: u64, t: &mut Tokens<'_>) -> Result<Rule, ParseError> {
    let rule = match code {
        1 => {
            let head = t.atom(1)?;
            let (pos, neg) = t.body()?;
            Rule::Basic { head, pos, neg }
        }
        2 => {
            let head = t.atom(1)?;
            let lits = t.count()?;
            let negc = t.count()?;
            if negc > lits {
                return Err(t.err(ParseErrorKind::LiteralCounts { lits, neg: negc }));
            }
            let bound = t.int(1)?;
            let neg = t.atoms(negc)?;
            let pos = t.atoms(lits - negc)?;
            Rule::Cardinality {
                head,
                bound,
                pos,
                neg,
            }
        }
        3 => {
            let heads = t.heads()?;
            let (pos, neg) = t.body()?;
            Rule::Choice { heads, pos, neg }
        }
        5 => {
            let head = t.atom(1)?;
            let bound = t.int(1)?;
            let (pos, neg) = t.body()?;
            let weights = t.weights(pos.len() + neg.len())?;
            Rule::Weight {
                head,
                bound,
                pos,
                neg,
                weights,
            }
        }
        6 => {
            if t.int(1)? != 0 {
                return Err(t.err(ParseErrorKind::Expected("0 after minimize type code")));
            }
            let (pos, neg) = t.body()?;
            let weights = t.weights(pos.len() + neg.len())?;
            Rule::Minimize { pos, neg, weights }
        }
        8 => {
            let heads = t.heads()?;
            let (pos, neg) = t.body()?;
            Rule::Disjunctive { heads, pos, neg }
        }
        other => {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::UnknownRuleType(other),
            })
        }
    };
    Ok(rule)
}

fn parse_atom_block(lines: &mut Lines<'_>, header: &'static str) -> Result<Vec<Atom>, ParseError> {
    let (line, text) = lines.next(header)?;
    if text != header {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::Expected(header),
        });
    }
    let mut atoms = Vec::new();
    loop {
        let (line, text) = lines.next("atom or 0")?;
        let mut t = tokens(line, text);
        let v = t.int(1)?;
        t.finish()?;
        if v == 0 {
            return Ok(atoms);
        }
        let atom = u32::try_from(v).map_err(|_| ParseError {
            line,
            kind: ParseErrorKind::MalformedInteger(v.to_string()),
        })?;
        atoms.push(Atom(atom));
    }
}

/// Parses a complete smodels document.
pub fn parse_program(text: &str) -> Result<GroundProgram, ParseError> {
    let mut lines = Lines::new(text);
    let mut program = GroundProgram::new();

    loop {
        let (line, text) = lines.next("rule or 0")?;
        let mut t = tokens(line, text);
        let code = t.int(1)?;
        if code == 0 {
            t.finish()?;
            break;
        }
        let rule = parse_rule(line, code, &mut t)?;
        t.finish()?;
        program.rules.push(rule);
    }

    let mut names = HashSet::new();
    loop {
        let (line, text) = lines.next("symbol or 0")?;
        let (first, rest) = match text.split_once(char::is_whitespace) {
            Some((a, b)) => (a, b.trim()),
            None => (text, ""),
        };
        let v = first.parse::<u64>().map_err(|_| ParseError {
            line,
            kind: ParseErrorKind::MalformedInteger(first.to_string()),
        })?;
        if v == 0 {
            if !rest.is_empty() {
                return Err(ParseError {
                    line,
                    kind: ParseErrorKind::TrailingData(rest.to_string()),
                });
            }
            break;
        }
        let atom = u32::try_from(v).map_err(|_| ParseError {
            line,
            kind: ParseErrorKind::MalformedInteger(v.to_string()),
        })?;
        if rest.is_empty() {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::Expected("symbol name"),
            });
        }
        if !names.insert(rest.to_string()) {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::DuplicateSymbol(rest.to_string()),
            });
        }
        program.symbols.push((Atom(atom), rest.to_string()));
    }

    program.compute_plus = parse_atom_block(&mut lines, "B+")?;
    program.compute_minus = parse_atom_block(&mut lines, "B-")?;

    let (line, text) = lines.next("model count")?;
    let mut t = tokens(line, text);
    program.model_count = t.int(1)?;
    t.finish()?;
    if let Ok((line, text)) = lines.next("") {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::TrailingData(text.to_string()),
        });
    }

    Ok(program.finish())
}

fn write_list(out: &mut String, atoms: &[Atom]) {
    for a in atoms {
        out.push(' ');
        out.push_str(&a.0.to_string());
    }
}

fn write_rule(out: &mut String, rule: &Rule) {
    out.push_str(&rule.code().to_string());
    let body = |out: &mut String, pos: &[Atom], neg: &[Atom]| {
        out.push_str(&format!(" {} {}", pos.len() + neg.len(), neg.len()));
        write_list(out, neg);
        write_list(out, pos);
    };
    match rule {
        Rule::Basic { head, pos, neg } => {
            out.push_str(&format!(" {head}"));
            body(out, pos, neg);
        }
        Rule::Cardinality {
            head,
            bound,
            pos,
            neg,
        } => {
            out.push_str(&format!(
                " {head} {} {} {bound}",
                pos.len() + neg.len(),
                neg.len()
            ));
            write_list(out, neg);
            write_list(out, pos);
        }
        Rule::Choice { heads, pos, neg } | Rule::Disjunctive { heads, pos, neg } => {
            out.push_str(&format!(" {}", heads.len()));
            write_list(out, heads);
            body(out, pos, neg);
        }
        Rule::Weight {
            head,
            bound,
            pos,
            neg,
            weights,
        } => {
            out.push_str(&format!(" {head} {bound}"));
            body(out, pos, neg);
            for w in weights {
                out.push_str(&format!(" {w}"));
            }
        }
        Rule::Minimize { pos, neg, weights } => {
            out.push_str(" 0");
            body(out, pos, neg);
            for w in weights {
                out.push_str(&format!(" {w}"));
            }
        }
    }
    out.push('\n');
}

/// Serializes `p` in canonical single-space form.
pub fn program_to_string(p: &GroundProgram) -> String {
    let mut out = String::new();
    for rule in &p.rules {
        write_rule(&mut out, rule);
    }
    out.push_str("0\n");
    for (atom, name) in &p.symbols {
        out.push_str(&format!("{atom} {name}\n"));
    }
    out.push_str("0\nB+\n");
    for a in &p.compute_plus {
        out.push_str(&format!("{a}\n"));
    }
    out.push_str("0\nB-\n");
    for a in &p.compute_minus {
        out.push_str(&format!("{a}\n"));
    }
    out.push_str(&format!("0\n{}\n", p.model_count));
    out
}

pub fn write_program<W: Write + ?Sized>(p: &GroundProgram, out: &mut W) -> io::Result<()> {
    out.write_all(program_to_string(p).as_bytes())
}

/// Collapses runs of horizontal whitespace and drops blank lines, the
/// equivalence under which round trips are compared.
pub fn normalize_whitespace(text: &str) -> String {
    let mut out = String::new();
    for line in text.lines() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.is_empty() {
            continue;
        }
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TAIL: &str = "0\nB+\n0\nB-\n0\n1\n";

    #[test]
    fn basic_rule_with_symbol() {
        let p = parse_program("1 2 1 0 3\n0\n2 p\n0\nB+\n0\nB-\n0\n1\n").unwrap();
        assert_eq!(
            p.rules,
            vec![Rule::Basic {
                head: Atom(2),
                pos: vec![Atom(3)],
                neg: vec![]
            }]
        );
        assert_eq!(p.symbols, vec![(Atom(2), "p".to_string())]);
        assert_eq!(p.max_atom, 3);
    }

    #[test]
    fn choice_rule() {
        let p = parse_program(&format!("3 1 2 0 0\n0\n{TAIL}")).unwrap();
        assert_eq!(
            p.rules,
            vec![Rule::Choice {
                heads: vec![Atom(2)],
                pos: vec![],
                neg: vec![]
            }]
        );
    }

    #[test]
    fn weight_rule_aligns_weights_neg_first() {
        let p = parse_program(&format!("5 2 7 3 1 4 3 5 3 5 6\n0\n{TAIL}")).unwrap();
        assert_eq!(
            p.rules,
            vec![Rule::Weight {
                head: Atom(2),
                bound: 7,
                neg: vec![Atom(4)],
                pos: vec![Atom(3), Atom(5)],
                weights: vec![3, 5, 6]
            }]
        );
        // without the leading two weights the line is short
        let err = parse_program(&format!("5 2 7 3 1 4 3 5 6\n0\n{TAIL}")).unwrap_err();
        assert_eq!(
            err.kind,
            ParseErrorKind::WeightCountMismatch {
                literals: 3,
                weights: 1
            }
        );
    }

    #[test]
    fn empty_program_writes_bare_sections() {
        assert_eq!(
            program_to_string(&GroundProgram::new()),
            "0\n0\nB+\n0\nB-\n0\n1\n"
        );
    }

    #[test]
    fn facts_are_type_one_lines() {
        let p = GroundProgram {
            rules: vec![Rule::fact(Atom(1)), Rule::fact(Atom(2))],
            symbols: vec![(Atom(1), "p".into()), (Atom(2), "q".into())],
            ..GroundProgram::new()
        }
        .finish();
        assert_eq!(
            program_to_string(&p),
            "1 1 0 0\n1 2 0 0\n0\n1 p\n2 q\n0\nB+\n0\nB-\n0\n1\n"
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases: &[(&str, usize, ParseErrorKind)] = &[
            (
                "1 x 0 0\n0\n",
                1,
                ParseErrorKind::MalformedInteger("x".into()),
            ),
            ("1 1 0 0\n4 1 0 0\n", 2, ParseErrorKind::UnknownRuleType(4)),
            (
                "1 1 2 0 3\n",
                1,
                ParseErrorKind::TruncatedRule { expected: 1 },
            ),
            (
                "5 2 1 2 0 3 4 1\n",
                1,
                ParseErrorKind::WeightCountMismatch {
                    literals: 2,
                    weights: 1,
                },
            ),
            (
                "0\n1 a\n2 a\n0\n",
                3,
                ParseErrorKind::DuplicateSymbol("a".into()),
            ),
        ];
        for (text, line, kind) in cases {
            let err = parse_program(text).unwrap_err();
            assert_eq!(err.line, *line, "{text:?}");
            assert_eq!(&err.kind, kind, "{text:?}");
        }
    }

    #[test]
    fn missing_sections_are_rejected() {
        let err = parse_program("0\n0\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedEof("B+"));
        let err = parse_program("0\n0\nB-\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Expected("B+"));
    }

    #[test]
    fn compute_sections_and_count() {
        let p = parse_program("1 1 1 0 2\n3 1 2 0 0\n0\n2 a\n0\nB+\n2\n0\nB-\n1\n0\n3\n").unwrap();
        assert_eq!(p.compute_plus, vec![Atom(2)]);
        assert_eq!(p.compute_minus, vec![Atom(1)]);
        assert_eq!(p.model_count, 3);
        assert_eq!(p.false_atom, Some(Atom(1)));
    }

    fn arb_atoms(max: u32, len: usize) -> impl Strategy<Value = Vec<Atom>> {
        prop::collection::vec((1..=max).prop_map(Atom), 0..=len)
    }

    fn arb_rule() -> impl Strategy<Value = Rule> {
        let a = || (1u32..=8).prop_map(Atom);
        prop_oneof![
            (a(), arb_atoms(8, 3), arb_atoms(8, 3)).prop_map(|(head, pos, neg)| Rule::Basic {
                head,
                pos,
                neg
            }),
            (a(), 0u64..5, arb_atoms(8, 3), arb_atoms(8, 3)).prop_map(|(head, bound, pos, neg)| {
                Rule::Cardinality {
                    head,
                    bound,
                    pos,
                    neg,
                }
            }),
            (
                prop::collection::vec(a(), 1..3),
                arb_atoms(8, 3),
                arb_atoms(8, 3)
            )
                .prop_map(|(heads, pos, neg)| Rule::Choice { heads, pos, neg }),
            (
                a(),
                0u64..9,
                arb_atoms(8, 3),
                arb_atoms(8, 3),
                prop::collection::vec(0u64..6, 6)
            )
                .prop_map(|(head, bound, pos, neg, mut weights)| {
                    weights.truncate(pos.len() + neg.len());
                    weights.resize(pos.len() + neg.len(), 1);
                    Rule::Weight {
                        head,
                        bound,
                        pos,
                        neg,
                        weights,
                    }
                }),
            (
                arb_atoms(8, 3),
                arb_atoms(8, 3),
                prop::collection::vec(0u64..6, 6)
            )
                .prop_map(|(pos, neg, mut weights)| {
                    weights.truncate(pos.len() + neg.len());
                    weights.resize(pos.len() + neg.len(), 2);
                    Rule::Minimize { pos, neg, weights }
                }),
            (
                prop::collection::vec(a(), 1..3),
                arb_atoms(8, 3),
                arb_atoms(8, 3)
            )
                .prop_map(|(heads, pos, neg)| Rule::Disjunctive { heads, pos, neg }),
        ]
    }

    fn arb_program() -> impl Strategy<Value = GroundProgram> {
        (
            prop::collection::vec(arb_rule(), 0..8),
            prop::collection::btree_set(1u32..=8, 0..4),
            arb_atoms(8, 2),
            arb_atoms(8, 2),
            0u64..3,
        )
            .prop_map(|(rules, named, plus, minus, count)| {
                GroundProgram {
                    rules,
                    symbols: named
                        .into_iter()
                        .map(|a| (Atom(a), format!("s{a}")))
                        .collect(),
                    compute_plus: plus,
                    compute_minus: minus,
                    model_count: count,
                    ..GroundProgram::new()
                }
                .finish()
            })
    }

    proptest! {
        #[test]
        fn parse_inverts_write(p in arb_program()) {
            let text = program_to_string(&p);
            let back = parse_program(&text).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert!(validate_ok(&back));
        }

        #[test]
        fn whitespace_noise_does_not_matter(p in arb_program()) {
            let text = program_to_string(&p).replace(' ', " \t ").replace('\n', "  \n\n");
            let back = parse_program(&text).unwrap();
            prop_assert_eq!(normalize_whitespace(&program_to_string(&back)), program_to_string(&p));
        }
    }

    fn validate_ok(p: &GroundProgram) -> bool {
        p.validate().is_empty()
    }
}
