//! Partial colorings of a rule dependency graph.
//!
//! A coloring maps some rules to ⊕ (applied) and some to ⊖ (not applied).
//! Whether a rule is supported or blocked under a coloring is read off its
//! immediate predecessors only.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::program::{AtomSet, Program, RuleId, RuleSet};
use crate::rdg::Rdg;
use crate::semantics::Interpretation3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Plus => Color::Minus,
            Color::Minus => Color::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Color::Plus => '⊕',
            Color::Minus => '⊖',
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConflictReason {
    /// The rule would be colored ⊕ and ⊖ at once.
    BothColors,
    /// The operator has no value here; the rule is the lowest ⊕ rule outside
    /// every support graph.
    OperatorUndefined,
}

/// Failure of a join or an operator. Search treats it as a dead end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Conflict {
    pub rule: RuleId,
    pub reason: ConflictReason,
}

impl Conflict {
    pub fn both(rule: RuleId) -> Conflict {
        Conflict { rule, reason: ConflictReason::BothColors }
    }

    pub fn undefined(rule: RuleId) -> Conflict {
        Conflict { rule, reason: ConflictReason::OperatorUndefined }
    }
}

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reason {
            ConflictReason::BothColors => write!(f, "rule {} would receive both colors", self.rule),
            ConflictReason::OperatorUndefined => write!(f, "operator undefined at rule {}", self.rule),
        }
    }
}

impl std::error::Error for Conflict {}

/// A partial map from rules to colors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<Option<Color>>,
}

impl Coloring {
    /// The uncolored map over `n` rules.
    pub fn empty(n: usize) -> Coloring {
        Coloring { colors: vec![None; n] }
    }

    /// Builds a coloring from its two sides; fails on the lowest rule listed
    /// in both.
    pub fn from_sets<P, M>(n: usize, plus: P, minus: M) -> Result<Coloring, Conflict>
    where
        P: IntoIterator<Item = RuleId>,
        M: IntoIterator<Item = RuleId>,
    {
        let mut c = Coloring::empty(n);
        for r in plus {
            c.colors[r.0] = Some(Color::Plus);
        }
        let mut clash: Option<RuleId> = None;
        for r in minus {
            if c.colors[r.0] == Some(Color::Plus) {
                clash = Some(clash.map_or(r, |k| k.min(r)));
            } else {
                c.colors[r.0] = Some(Color::Minus);
            }
        }
        match clash {
            Some(r) => Err(Conflict::both(r)),
            None => Ok(c),
        }
    }

    /// Number of rules the coloring ranges over.
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, r: RuleId) -> Option<Color> {
        self.colors[r.0]
    }

    pub fn is_plus(&self, r: RuleId) -> bool {
        self.colors[r.0] == Some(Color::Plus)
    }

    pub fn is_minus(&self, r: RuleId) -> bool {
        self.colors[r.0] == Some(Color::Minus)
    }

    pub fn is_colored(&self, r: RuleId) -> bool {
        self.colors[r.0].is_some()
    }

    /// Colors an uncolored rule; a rule that already has a color is left alone
    /// and `false` is returned.
    pub(crate) fn set(&mut self, r: RuleId, color: Color) -> bool {
        if self.colors[r.0].is_some() {
            return false;
        }
        self.colors[r.0] = Some(color);
        true
    }

    pub fn plus(&self) -> RuleSet {
        self.with(Color::Plus).collect()
    }

    pub fn minus(&self) -> RuleSet {
        self.with(Color::Minus).collect()
    }

    pub fn with(&self, color: Color) -> impl Iterator<Item = RuleId> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter(move |(_, c)| **c == Some(color))
            .map(|(i, _)| RuleId(i))
    }

    pub fn uncolored(&self) -> impl Iterator<Item = RuleId> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .map(|(i, _)| RuleId(i))
    }

    pub fn colored_count(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// Total over the vertices of `g`; rules removed from the graph are ignored.
    pub fn is_total_on(&self, g: &Rdg) -> bool {
        g.vertices().all(|r| self.is_colored(r))
    }

    /// `self ⊑ other`.
    pub fn leq(&self, other: &Coloring) -> bool {
        self.colors
            .iter()
            .zip(&other.colors)
            .all(|(a, b)| a.is_none() || a == b)
    }

    /// `self ⊔ other`, or the lowest rule the two disagree on.
    pub fn join(&self, other: &Coloring) -> Result<Coloring, Conflict> {
        let mut out = self.clone();
        for (i, (a, b)) in self.colors.iter().zip(&other.colors).enumerate() {
            match (a, b) {
                (Some(x), Some(y)) if x != y => return Err(Conflict::both(RuleId(i))),
                (None, Some(_)) => out.colors[i] = *b,
                _ => {}
            }
        }
        Ok(out)
    }

    /// Rules colored here but not in `before`, in id order.
    pub fn newly_colored(&self, before: &Coloring) -> Vec<RuleId> {
        (0..self.len())
            .map(RuleId)
            .filter(|&r| self.is_colored(r) && !before.is_colored(r))
            .collect()
    }

    pub fn to_json(&self) -> ColoringJson {
        ColoringJson {
            rules: self.len(),
            plus: self.with(Color::Plus).map(|r| r.0).collect(),
            minus: self.with(Color::Minus).map(|r| r.0).collect(),
        }
    }

    pub fn from_json(j: &ColoringJson) -> Result<Coloring, Conflict> {
        Coloring::from_sets(
            j.rules,
            j.plus.iter().map(|&i| RuleId(i)),
            j.minus.iter().map(|&i| RuleId(i)),
        )
    }
}

fn write_set(f: &mut fmt::Formatter<'_>, rules: impl Iterator<Item = RuleId>) -> fmt::Result {
    f.write_str("{")?;
    for (i, r) in rules.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{r}")?;
    }
    f.write_str("}")
}

impl fmt::Display for Coloring {
    /// `⊕:{r1,r2} ⊖:{r5}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⊕:")?;
        write_set(f, self.with(Color::Plus))?;
        f.write_str(" ⊖:")?;
        write_set(f, self.with(Color::Minus))
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coloring({self})")
    }
}

/// Serialized form of a coloring. Rule ids are zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub rules: usize,
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Status {
    pub supported: bool,
    pub unsupported: bool,
    pub blocked: bool,
    pub unblocked: bool,
}

/// Applicability of `r` under `c`, from its immediate predecessors.
pub fn classify(g: &Rdg, p: &Program, c: &Coloring, r: RuleId) -> Status {
    let rule = p.rule(r);
    let mut st = Status {
        supported: true,
        unsupported: false,
        blocked: false,
        unblocked: true,
    };
    for &q in &rule.pbody {
        let defs = g.rules_with_head(q);
        if !defs.iter().any(|&d| c.is_plus(d)) {
            st.supported = false;
        }
        if defs.iter().all(|&d| c.is_minus(d)) {
            st.unsupported = true;
        }
    }
    for &b in g.pred1(r) {
        match c.get(b) {
            Some(Color::Plus) => st.blocked = true,
            Some(Color::Minus) => {}
            None => st.unblocked = false,
        }
    }
    if st.blocked {
        st.unblocked = false;
    }
    st
}

/// `S`, `S̄`, `B` and `B̄` of a colored graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleSets {
    pub s: RuleSet,
    pub sbar: RuleSet,
    pub b: RuleSet,
    pub bbar: RuleSet,
}

pub fn sets(g: &Rdg, p: &Program, c: &Coloring) -> RuleSets {
    let mut out = RuleSets::default();
    for r in g.vertices() {
        let st = classify(g, p, c, r);
        if st.supported {
            out.s.insert(r);
        }
        if st.unsupported {
            out.sbar.insert(r);
        }
        if st.blocked {
            out.b.insert(r);
        }
        if st.unblocked {
            out.bbar.insert(r);
        }
    }
    out
}

/// `(X_C, Y_C)`: heads of ⊕ rules, and atoms whose every rule is ⊖.
pub fn interpretation_of(p: &Program, c: &Coloring) -> Interpretation3 {
    let x: AtomSet = p.heads(&c.plus());
    let mut all_minus = vec![true; p.atom_count()];
    for r in p.rules() {
        if !c.is_minus(r.id) {
            all_minus[r.head.0] = false;
        }
    }
    let y: AtomSet = p.atom_ids().filter(|a| all_minus[a.0]).collect();
    debug_assert!(x.is_disjoint(&y), "heads of ⊕ rules cannot be false");
    Interpretation3 { x, y }
}
