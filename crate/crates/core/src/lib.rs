//! Static symmetry breaking for ground answer-set programs in the smodels
//! intermediate format.
//!
//! The pipeline encodes a program as a colored graph, searches the graph's
//! automorphism group, converts the generators back into atom permutations,
//! and appends rules that cut every symmetry orbit of answer sets down to a
//! smaller set of representatives without losing any orbit. A brute-force
//! stable-model engine ([`oracle`]) checks each of these steps on small
//! programs.

pub mod automorphism;
pub mod breaking;
pub mod graph;
pub mod instances;
pub mod oracle;
pub mod pipeline;
pub mod program;
pub mod smodels;
pub mod symmetry;

pub use automorphism::{find_generators, find_generators_with, NodePermutation, SearchConfig};
pub use breaking::{AtomAllocator, BreakingProgram, DEFAULT_AUX_LIMIT};
pub use graph::{color_census, encode_program, Color, ColoredGraph, NodeId};
pub use oracle::{answer_sets, check_soundness, Interpretation, OracleError};
pub use pipeline::{emit_stats, run, Config, Detection, Outcome, PipelineError, RunStats};
pub use program::{validate, Atom, Diagnostic, GroundProgram, Literal, Rule};
pub use smodels::{parse_program, program_to_string, write_program, ParseError};
pub use symmetry::{is_syntactic_symmetry, AtomOrder, AtomPermutation, RowMatrix};
