//! Small programs used throughout the documentation and tests.

use crate::program::{Program, RuleId};

/// The penguin program: `p. b :- p. f :- b, not f'. f' :- p, not f. b :- m.
/// x :- f, f', not x.` Answer sets `{b, p, f}` and `{b, p, f'}`.
pub const PENGUIN: &str = "p.\nb :- p.\nf :- b, not f'.\nf' :- p, not f.\nb :- m.\nx :- f, f', not x.\n";

/// `a. b :- not a. c :- b. b :- c.` Its only answer set is `{a}`; the rules
/// for `b` and `c` form a 0-loop that only an unfounded-set check refutes.
pub const SUPPORT_LOOP: &str = "a.\nb :- not a.\nc :- b.\nb :- c.\n";

/// `p :- not q. q :- r, not p. r :- q.` Answer set `{p}`, found without any
/// choice once unsupported rules are detected early.
pub const EARLY_UNSUPPORTED: &str = "p :- not q.\nq :- r, not p.\nr :- q.\n";

pub fn penguin() -> Program {
    Program::parse(PENGUIN).expect("fixture parses")
}

pub fn support_loop() -> Program {
    Program::parse(SUPPORT_LOOP).expect("fixture parses")
}

pub fn early_unsupported() -> Program {
    Program::parse(EARLY_UNSUPPORTED).expect("fixture parses")
}

/// The `k`-th rule of a listing, counting from one.
pub fn r(k: usize) -> RuleId {
    assert!(k > 0, "rules are numbered from 1");
    RuleId(k - 1)
}
