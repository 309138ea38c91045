//! Brute-force answer sets, straight from the definition `X = Cn(Π^X)`.
//!
//! Nothing here uses the dependency graph; the rest of the crate is tested
//! against it.

use crate::coloring::{Color, Coloring};
use crate::error::OracleError;
use crate::program::{cn, generating_rules, reduct, AtomId, AtomSet, Program};

/// Largest number of candidate atoms [`enumerate_answer_sets`] accepts.
pub const ORACLE_LIMIT: usize = 22;

pub fn is_answer_set(p: &Program, x: &AtomSet) -> bool {
    cn(&reduct(p, x)) == *x
}

/// Atoms that may belong to an answer set: heads of rules, except atoms all
/// of whose rules contain the head negatively (such an atom deletes its own
/// rules from the reduct, so it is never derived).
pub fn candidate_atoms(p: &Program) -> Vec<AtomId> {
    let mut possible = vec![false; p.atom_count()];
    for r in p.rules() {
        if !r.nbody.contains(&r.head) {
            possible[r.head.0] = true;
        }
    }
    p.atom_ids().filter(|a| possible[a.0]).collect()
}

/// Every answer set, sorted by atom names.
pub fn enumerate_answer_sets(p: &Program) -> Result<Vec<AtomSet>, OracleError> {
    let cands = candidate_atoms(p);
    if cands.len() > ORACLE_LIMIT {
        return Err(OracleError::TooLarge {
            limit: ORACLE_LIMIT,
            found: cands.len(),
        });
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << cands.len()) {
        let x: AtomSet = cands
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &a)| a)
            .collect();
        if is_answer_set(p, &x) {
            out.push(x);
        }
    }
    p.sort_atom_sets(&mut out);
    Ok(out)
}

/// Whether `x` is an answer set whose generating rules include the ⊕ rules of
/// `c` and exclude its ⊖ rules.
pub fn compatible(p: &Program, c: &Coloring, x: &AtomSet) -> bool {
    if !is_answer_set(p, x) {
        return false;
    }
    let gr = generating_rules(p, x);
    c.with(Color::Plus).all(|r| gr.contains(&r)) && !c.with(Color::Minus).any(|r| gr.contains(&r))
}

/// The admissible coloring `(GR(Π, X), Π ∖ GR(Π, X))` of a set of atoms.
pub fn coloring_of(p: &Program, x: &AtomSet) -> Coloring {
    let gr = generating_rules(p, x);
    let minus = p.rule_ids().filter(|r| !gr.contains(r));
    Coloring::from_sets(p.len(), gr.iter().copied(), minus).expect("sides are disjoint")
}
