//! Answer sets of ground normal logic programs, computed on the rule
//! dependency graph.
//!
//! Rules are the vertices of the graph. A 0-edge `(r, r')` says that the head
//! of `r` occurs positively in the body of `r'`, a 1-edge says that it occurs
//! negatively. Answer sets correspond to total colorings of the graph in which
//! ⊕ marks the applied rules. The solver extends partial colorings with
//! propagation operators and choices until they are total.
//!
//! ```
//! use rdg_core::{solve, Program, SolveOptions, Strategy};
//!
//! let p = Program::parse("p. b :- p. f :- b, not f'. f' :- p, not f.").unwrap();
//! let out = solve(&p, Strategy::VI, &SolveOptions::all()).unwrap();
//! let shown: Vec<String> = out.answers.iter().map(|a| p.show_atoms(&a.atoms)).collect();
//! assert_eq!(shown, ["{b, f, p}", "{b, f', p}"]);
//! ```

pub mod bench;
pub mod checker;
pub mod coloring;
pub mod error;
pub mod fixtures;
pub mod operators;
pub mod oracle;
pub mod program;
pub mod rdg;
pub mod semantics;
pub mod solver;
pub mod support;

pub use coloring::{Color, Coloring, Conflict, ConflictReason};
pub use error::{BenchError, GraphError, OracleError, ProgramError, SolveError};
pub use program::{AtomId, AtomSet, Program, Rule, RuleId, RuleSet};
pub use rdg::Rdg;
pub use semantics::Interpretation3;
pub use solver::{solve, trace, Mode, SearchStats, SolveOptions, Solution, Strategy};
