//! Ground normal logic programs.
//!
//! A [`Program`] is a finite set of rules `h :- b1, ..., bm, not c1, ..., not ck`
//! over interned atoms. Besides the representation this module hosts the
//! classical set-based primitives everything else is checked against: the
//! reduct of a program relative to a set of atoms, the least model [`cn`] of a
//! negation-free program, and the generating rules of a set of atoms.

mod parse;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use parse::parse_program;

use crate::error::ProgramError;

/// Prefix reserved for atoms introduced when desugaring headless constraints.
pub const RESERVED_PREFIX: &str = "__c";

/// Dense index of an atom inside one [`Program`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AtomId(pub usize);

/// Dense index of a rule inside one [`Program`], assigned in input order.
///
/// Rendered as `r<k>` with `k = index + 1`, so the first rule of a listing is
/// `r1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RuleId(pub usize);

impl RuleId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}", self.0 + 1)
    }
}

pub type AtomSet = BTreeSet<AtomId>;
pub type RuleSet = BTreeSet<RuleId>;

/// A normal rule with exactly one head atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub id: RuleId,
    pub head: AtomId,
    pub pbody: AtomSet,
    pub nbody: AtomSet,
}

impl Rule {
    fn key(&self) -> (AtomId, AtomSet, AtomSet) {
        (self.head, self.pbody.clone(), self.nbody.clone())
    }
}

/// A ground normal logic program.
///
/// Immutable once built; construct it with [`Program::parse`] or a
/// [`ProgramBuilder`].
#[derive(Clone, Debug)]
pub struct Program {
    rules: Vec<Rule>,
    atoms: Vec<String>,
    index: HashMap<String, AtomId>,
}

impl Program {
    pub fn builder() -> ProgramBuilder {
        ProgramBuilder::default()
    }

    pub fn parse(text: &str) -> Result<Program, ProgramError> {
        parse_program(text)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, id: RuleId) -> &Rule {
        &self.rules[id.0]
    }

    pub fn rule_ids(&self) -> impl Iterator<Item = RuleId> + '_ {
        (0..self.rules.len()).map(RuleId)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom_ids(&self) -> impl Iterator<Item = AtomId> + '_ {
        (0..self.atoms.len()).map(AtomId)
    }

    pub fn all_atoms(&self) -> AtomSet {
        self.atom_ids().collect()
    }

    pub fn atom_name(&self, a: AtomId) -> &str {
        &self.atoms[a.0]
    }

    pub fn atom(&self, name: &str) -> Option<AtomId> {
        self.index.get(name).copied()
    }

    /// Looks up a set of atoms by name; panics on unknown names.
    pub fn atoms_named<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> AtomSet {
        names
            .into_iter()
            .map(|n| self.atom(n).unwrap_or_else(|| panic!("unknown atom `{n}`")))
            .collect()
    }

    /// Atom names of `set`, sorted by name.
    pub fn names(&self, set: &AtomSet) -> Vec<&str> {
        let mut names: Vec<&str> = set.iter().map(|&a| self.atom_name(a)).collect();
        names.sort_unstable();
        names
    }

    /// Sorts atom sets by their sorted name lists and drops duplicates.
    pub fn sort_atom_sets(&self, sets: &mut Vec<AtomSet>) {
        sets.sort_by(|a, b| self.names(a).cmp(&self.names(b)));
        sets.dedup();
    }

    /// `{a, b}` with names in sorted order; reserved atoms are left out.
    pub fn show_atoms(&self, set: &AtomSet) -> String {
        let names: Vec<&str> = self
            .names(set)
            .into_iter()
            .filter(|n| !n.starts_with(RESERVED_PREFIX))
            .collect();
        format!("{{{}}}", names.join(", "))
    }

    /// `{h(r) | r ∈ rules}`.
    pub fn heads<'a>(&self, rules: impl IntoIterator<Item = &'a RuleId>) -> AtomSet {
        rules.into_iter().map(|&r| self.rule(r).head).collect()
    }

    /// Atoms heading at least one rule.
    pub fn head_atoms(&self) -> AtomSet {
        self.rules.iter().map(|r| r.head).collect()
    }

    pub fn is_reserved(&self, a: AtomId) -> bool {
        self.atom_name(a).starts_with(RESERVED_PREFIX)
    }

    /// Returns the program as a negation-free program, or an error naming the
    /// first rule with a negative body.
    pub fn as_basic(&self) -> Result<BasicProgram, ProgramError> {
        if let Some(r) = self.rules.iter().find(|r| !r.nbody.is_empty()) {
            return Err(ProgramError::NotBasic(r.id));
        }
        Ok(BasicProgram {
            rules: self
                .rules
                .iter()
                .map(|r| BasicRule {
                    origin: r.id,
                    head: r.head,
                    body: r.pbody.clone(),
                })
                .collect(),
        })
    }

    /// Structural equality by atom names, independent of atom numbering.
    pub fn same_structure(&self, other: &Program) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mine: BTreeSet<_> = self.atoms.iter().collect();
        let theirs: BTreeSet<_> = other.atoms.iter().collect();
        if mine != theirs {
            return false;
        }
        let named = |p: &Program, r: &Rule| {
            let names = |s: &AtomSet| -> BTreeSet<String> {
                s.iter().map(|&a| p.atom_name(a).to_string()).collect()
            };
            (p.atom_name(r.head).to_string(), names(&r.pbody), names(&r.nbody))
        };
        self.rules
            .iter()
            .zip(&other.rules)
            .all(|(a, b)| named(self, a) == named(other, b))
    }

    fn fmt_rule(&self, r: &Rule, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = self.atom_name(r.head);
        let constraint = head.starts_with(RESERVED_PREFIX) && r.nbody.contains(&r.head);
        let mut body: Vec<String> = r.pbody.iter().map(|&a| self.atom_name(a).to_string()).collect();
        body.extend(
            r.nbody
                .iter()
                .filter(|&&a| !(constraint && a == r.head))
                .map(|&a| format!("not {}", self.atom_name(a))),
        );
        if constraint {
            write!(f, ":- {}.", body.join(", "))
        } else if body.is_empty() {
            write!(f, "{head}.")
        } else {
            write!(f, "{head} :- {}.", body.join(", "))
        }
    }
}

/// One rule per line, in the input grammar. Desugared constraints are printed
/// back in headless form so that the output reparses to the same program.
impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            self.fmt_rule(r, f)?;
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Incremental construction of a [`Program`] from atom names.
///
/// Atom and rule ids follow first occurrence; structurally duplicate rules are
/// dropped.
#[derive(Default)]
pub struct ProgramBuilder {
    atoms: Vec<String>,
    index: HashMap<String, AtomId>,
    rules: Vec<Rule>,
    seen: HashSet<(AtomId, AtomSet, AtomSet)>,
    constraints: HashSet<(AtomSet, AtomSet)>,
    next_constraint: usize,
}

pub(crate) fn valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    if !matches!(chars.next(), Some('a'..='z')) {
        return false;
    }
    let rest = chars.as_str();
    let core = rest.trim_end_matches('\'');
    core.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl ProgramBuilder {
    fn intern(&mut self, name: &str) -> AtomId {
        if let Some(&a) = self.index.get(name) {
            return a;
        }
        let a = AtomId(self.atoms.len());
        self.atoms.push(name.to_string());
        self.index.insert(name.to_string(), a);
        a
    }

    fn checked(&mut self, name: &str) -> Result<AtomId, ProgramError> {
        if name.starts_with(RESERVED_PREFIX) {
            return Err(ProgramError::ReservedAtom {
                name: name.to_string(),
                line: 0,
                column: 0,
            });
        }
        if !valid_atom_name(name) {
            return Err(ProgramError::InvalidAtom(name.to_string()));
        }
        Ok(self.intern(name))
    }

    /// Adds `head :- pos, not neg`. Returns `false` if the rule was a duplicate.
    pub fn rule(&mut self, head: &str, pos: &[&str], neg: &[&str]) -> Result<bool, ProgramError> {
        let head = self.checked(head)?;
        let pbody = pos.iter().map(|n| self.checked(n)).collect::<Result<AtomSet, _>>()?;
        let nbody = neg.iter().map(|n| self.checked(n)).collect::<Result<AtomSet, _>>()?;
        Ok(self.push(head, pbody, nbody))
    }

    /// Adds the headless constraint `:- pos, not neg` as
    /// `__c<k> :- pos, not neg, not __c<k>`.
    pub fn constraint(&mut self, pos: &[&str], neg: &[&str]) -> Result<bool, ProgramError> {
        let pbody = pos.iter().map(|n| self.checked(n)).collect::<Result<AtomSet, _>>()?;
        let nbody = neg.iter().map(|n| self.checked(n)).collect::<Result<AtomSet, _>>()?;
        Ok(self.push_constraint(pbody, nbody))
    }

    pub(crate) fn push_constraint(&mut self, pbody: AtomSet, mut nbody: AtomSet) -> bool {
        if !self.constraints.insert((pbody.clone(), nbody.clone())) {
            return false;
        }
        let name = format!("{RESERVED_PREFIX}{}", self.next_constraint);
        self.next_constraint += 1;
        let head = self.intern(&name);
        nbody.insert(head);
        self.push(head, pbody, nbody)
    }

    pub(crate) fn push(&mut self, head: AtomId, pbody: AtomSet, nbody: AtomSet) -> bool {
        let rule = Rule {
            id: RuleId(self.rules.len()),
            head,
            pbody,
            nbody,
        };
        if !self.seen.insert(rule.key()) {
            return false;
        }
        self.rules.push(rule);
        true
    }

    pub(crate) fn intern_unchecked(&mut self, name: &str) -> AtomId {
        self.intern(name)
    }

    pub fn build(self) -> Program {
        Program {
            rules: self.rules,
            atoms: self.atoms,
            index: self.index,
        }
    }
}

/// A negation-free rule; `origin` is the rule it was derived from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicRule {
    pub origin: RuleId,
    pub head: AtomId,
    pub body: AtomSet,
}

/// A negation-free program, e.g. a reduct.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasicProgram {
    pub rules: Vec<BasicRule>,
}

impl BasicProgram {
    pub fn origins(&self) -> RuleSet {
        self.rules.iter().map(|r| r.origin).collect()
    }
}

/// The reduct of `p` relative to `x`: every rule whose negative body misses
/// `x`, with its negative body dropped.
pub fn reduct(p: &Program, x: &AtomSet) -> BasicProgram {
    BasicProgram {
        rules: p
            .rules()
            .iter()
            .filter(|r| r.nbody.is_disjoint(x))
            .map(|r| BasicRule {
                origin: r.id,
                head: r.head,
                body: r.pbody.clone(),
            })
            .collect(),
    }
}

/// Least set of atoms closed under a basic program, by iterating the
/// immediate-consequence operator from the empty set.
pub fn cn(p: &BasicProgram) -> AtomSet {
    let mut current = AtomSet::new();
    loop {
        let next: AtomSet = p
            .rules
            .iter()
            .filter(|r| r.body.is_subset(&current))
            .map(|r| r.head)
            .collect();
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Rules whose positive body is contained in `x` and whose negative body
/// misses `x`.
pub fn generating_rules(p: &Program, x: &AtomSet) -> RuleSet {
    p.rules()
        .iter()
        .filter(|r| r.pbody.is_subset(x) && r.nbody.is_disjoint(x))
        .map(|r| r.id)
        .collect()
}
