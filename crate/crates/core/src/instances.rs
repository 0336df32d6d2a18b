//! Small hand-built programs: the five two-atom interchangeability examples,
//! pigeonhole instances and free-choice grids.

use crate::program::{Atom, GroundProgram, Rule};
use crate::smodels::parse_program;

fn parse(text: &str) -> GroundProgram {
    parse_program(text).expect("built-in instance parses")
}

/// `{p}. {q}.`
pub fn p1() -> GroundProgram {
    parse("3 1 1 0 0\n3 1 2 0 0\n0\n1 p\n2 q\n0\nB+\n0\nB-\n0\n1\n")
}

/// `r :- p, q. {p}. {q}.`
pub fn p2() -> GroundProgram {
    parse("1 3 2 0 1 2\n3 1 1 0 0\n3 1 2 0 0\n0\n1 p\n2 q\n3 r\n0\nB+\n0\nB-\n0\n1\n")
}

/// `:- p, q. {p}. {q}.` with atom 1 as the constraint head.
pub fn p3() -> GroundProgram {
    parse("1 1 2 0 2 3\n3 1 2 0 0\n3 1 3 0 0\n0\n2 p\n3 q\n0\nB+\n0\nB-\n1\n0\n1\n")
}

/// `p | q :- p, q. {p}. {q}.`
pub fn p4() -> GroundProgram {
    parse("8 2 1 2 2 0 1 2\n3 1 1 0 0\n3 1 2 0 0\n0\n1 p\n2 q\n0\nB+\n0\nB-\n0\n1\n")
}

/// `p. q.`
pub fn p5() -> GroundProgram {
    parse("1 1 0 0\n1 2 0 0\n0\n1 p\n2 q\n0\nB+\n0\nB-\n0\n1\n")
}

pub fn interchangeability_examples() -> Vec<(&'static str, GroundProgram)> {
    vec![
        ("P1", p1()),
        ("P2", p2()),
        ("P3", p3()),
        ("P4", p4()),
        ("P5", p5()),
    ]
}

/// Atom for "pigeon `i` sits in hole `j`" (both 1-based) in
/// [`pigeonhole`]`(_, holes)`.
pub fn place(holes: u32, i: u32, j: u32) -> Atom {
    Atom(2 + (i - 1) * holes + (j - 1))
}

/// Every pigeon sits in some hole, no hole holds two pigeons. Atom 1 is the
/// constraint head; placements are free choices.
pub fn pigeonhole(pigeons: u32, holes: u32) -> GroundProgram {
    let f = Atom(1);
    let mut p = GroundProgram::new();
    for i in 1..=pigeons {
        for j in 1..=holes {
            p.rules.push(Rule::Choice {
                heads: vec![place(holes, i, j)],
                pos: vec![],
                neg: vec![],
            });
        }
    }
    for i in 1..=pigeons {
        p.rules.push(Rule::Basic {
            head: f,
            pos: vec![],
            neg: (1..=holes).map(|j| place(holes, i, j)).collect(),
        });
    }
    for j in 1..=holes {
        for i in 1..=pigeons {
            for k in i + 1..=pigeons {
                p.rules.push(Rule::Basic {
                    head: f,
                    pos: vec![place(holes, i, j), place(holes, k, j)],
                    neg: vec![],
                });
            }
        }
    }
    for i in 1..=pigeons {
        for j in 1..=holes {
            p.symbols
                .push((place(holes, i, j), format!("place(p{i},h{j})")));
        }
    }
    p.compute_minus.push(f);
    p.finish()
}

/// Unconstrained choices over a `rows x cols` grid; atom of cell `(r, c)`
/// (0-based) is `1 + r * cols + c`.
pub fn free_choice_grid(rows: u32, cols: u32) -> GroundProgram {
    let mut p = GroundProgram::new();
    for r in 0..rows {
        for c in 0..cols {
            let a = Atom(1 + r * cols + c);
            p.rules.push(Rule::Choice {
                heads: vec![a],
                pos: vec![],
                neg: vec![],
            });
            p.symbols.push((a, format!("x({r},{c})")));
        }
    }
    p.finish()
}
