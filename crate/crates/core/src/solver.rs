//! Backtracking search over coloring sequences.
//!
//! A strategy fixes the initial coloring, which rules may be chosen next
//! (any uncolored rule, or only uncolored supported ones), which colors a
//! choice may use, the propagation applied after every choice and the test on
//! the final coloring:
//!
//! | strategy | start | choice | after choice | final |
//! |---|---|---|---|---|
//! | I | `(∅,∅)` | any rule, ⊕/⊖ | none | `P(C)=C`, `U(C)=C` |
//! | II, II+, II- | `(PU)*` | any rule | `(PU)*` | total |
//! | III+ | `(∅,∅)` | any rule, ⊕ | none | `U(P*(C))` total |
//! | III- | `(∅,∅)` | any rule, ⊖ | none | `P*(C)` total |
//! | IV, IV+ | `(∅,∅)` | supported rule | none | `N`, then `P(C)=C` |
//! | V, V+ | `P*` | supported rule | `P*` | `N`, then `P(C)=C` |
//! | VI, VI+, VI- | `(PV)*` | supported rule | `(PV)*` | total |
//!
//! Candidates are ordered by id. When solving, rules blocking themselves come
//! first: such a rule is ⊖ in every answer set, so once it is a candidate
//! both branches tend to fail at once. Traces keep the plain order.
//!
//! Two-colored strategies branch on the color of the first candidate, ⊕
//! first. One-colored strategies branch on which candidate gets the color;
//! the `i`-th branch may no longer choose the candidates tried before it, so
//! no set of choices is explored twice.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::coloring::{sets, Color, Coloring, Conflict};
use crate::error::SolveError;
use crate::operators::{
    choice_candidates, op_n, op_p, op_p_star, op_pu_star, op_pv_star, op_u, ChoiceKind, OpResult,
};
use crate::program::{AtomSet, Program, RuleId};
use crate::rdg::Rdg;
use crate::support::{is_support_graph, witness_edges};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    I,
    II,
    IIPlus,
    IIMinus,
    IIIPlus,
    IIIMinus,
    IV,
    IVPlus,
    V,
    VPlus,
    VI,
    VIPlus,
    VIMinus,
}

impl Strategy {
    pub const ALL: [Strategy; 13] = [
        Strategy::I,
        Strategy::II,
        Strategy::IIPlus,
        Strategy::IIMinus,
        Strategy::IIIPlus,
        Strategy::IIIMinus,
        Strategy::IV,
        Strategy::IVPlus,
        Strategy::V,
        Strategy::VPlus,
        Strategy::VI,
        Strategy::VIPlus,
        Strategy::VIMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::I => "I",
            Strategy::II => "II",
            Strategy::IIPlus => "II+",
            Strategy::IIMinus => "II-",
            Strategy::IIIPlus => "III+",
            Strategy::IIIMinus => "III-",
            Strategy::IV => "IV",
            Strategy::IVPlus => "IV+",
            Strategy::V => "V",
            Strategy::VPlus => "V+",
            Strategy::VI => "VI",
            Strategy::VIPlus => "VI+",
            Strategy::VIMinus => "VI-",
        }
    }

    fn kind(self) -> ChoiceKind {
        match self {
            Strategy::I
            | Strategy::II
            | Strategy::IIPlus
            | Strategy::IIMinus
            | Strategy::IIIPlus
            | Strategy::IIIMinus => ChoiceKind::C,
            _ => ChoiceKind::D,
        }
    }

    /// `None` for two-colored strategies.
    fn only(self) -> Option<Color> {
        match self {
            Strategy::IIPlus | Strategy::IIIPlus | Strategy::IVPlus | Strategy::VPlus | Strategy::VIPlus => {
                Some(Color::Plus)
            }
            Strategy::IIMinus | Strategy::IIIMinus | Strategy::VIMinus => Some(Color::Minus),
            _ => None,
        }
    }

    fn closure(self) -> Closure {
        match self {
            Strategy::II | Strategy::IIPlus | Strategy::IIMinus => Closure::PU,
            Strategy::V | Strategy::VPlus => Closure::P,
            Strategy::VI | Strategy::VIPlus | Strategy::VIMinus => Closure::PV,
            _ => Closure::None,
        }
    }

    /// Whether the final step is `N` followed by a `P` test.
    fn ends_with_n(self) -> bool {
        matches!(self, Strategy::IV | Strategy::IVPlus | Strategy::V | Strategy::VPlus)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Strategy, String> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| format!("unknown strategy `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Closure {
    None,
    P,
    PU,
    PV,
}

impl Closure {
    fn apply(self, g: &Rdg, p: &Program, c: Coloring) -> OpResult {
        match self {
            Closure::None => Ok(c),
            Closure::P => op_p_star(g, p, &c),
            Closure::PU => op_pu_star(g, p, &c),
            Closure::PV => op_pv_star(g, p, &c),
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Closure::None => "",
            Closure::P => "P*",
            Closure::PU => "(PU)*",
            Closure::PV => "(PV)*",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    First,
    #[default]
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub mode: Mode,
    /// Stop once this many choices have been made.
    pub max_choices: Option<u64>,
    /// Largest program strategy I accepts.
    pub strategy_i_limit: usize,
    /// Worker threads for exploring sibling branches (all-answers mode only).
    pub jobs: usize,
    /// Check the sequence invariants at every step.
    pub check_invariants: bool,
}

impl Default for SolveOptions {
    fn default() -> SolveOptions {
        SolveOptions {
            mode: Mode::All,
            max_choices: None,
            strategy_i_limit: 15,
            jobs: 1,
            check_invariants: false,
        }
    }
}

impl SolveOptions {
    pub fn all() -> SolveOptions {
        SolveOptions::default()
    }

    pub fn first() -> SolveOptions {
        SolveOptions {
            mode: Mode::First,
            ..SolveOptions::default()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub choices: u64,
    pub assignments: u64,
    pub backtracks: u64,
}

impl SearchStats {
    fn add(&mut self, o: &SearchStats) {
        self.choices += o.choices;
        self.assignments += o.assignments;
        self.backtracks += o.backtracks;
    }
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "choices={} assignments={} backtracks={}",
            self.choices, self.assignments, self.backtracks
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Answer {
    pub atoms: AtomSet,
    pub coloring: Coloring,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Sorted by atom names.
    pub answers: Vec<Answer>,
    pub stats: SearchStats,
    /// False when the search stopped at `max_choices`; the answers are then
    /// only those found so far.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub op: String,
    pub coloring: Coloring,
}

/// A coloring sequence `C⁰, …, Cⁿ`, each element with the operations that
/// produced it from its predecessor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringSequence {
    pub steps: Vec<Step>,
}

impl ColoringSequence {
    pub fn last(&self) -> Option<&Coloring> {
        self.steps.last().map(|s| &s.coloring)
    }
}

impl fmt::Display for ColoringSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "C{i} = {} = {}", s.op, s.coloring)?;
        }
        Ok(())
    }
}

/// Rules a one-colored branch may no longer choose.
type Excluded = Vec<bool>;

struct Child {
    coloring: Coloring,
    excluded: Excluded,
    choice: (RuleId, Color),
}

#[derive(Default)]
struct Expansion {
    accept: Option<(Coloring, &'static str)>,
    children: Vec<Child>,
}

struct Search<'a> {
    g: &'a Rdg,
    p: &'a Program,
    strat: Strategy,
    opts: &'a SolveOptions,
    target: Option<&'a Coloring>,
    stats: SearchStats,
    answers: Vec<Answer>,
    stopped: bool,
    limit_hit: bool,
    violation: Option<String>,
    path: Vec<Step>,
    found: Option<Vec<Step>>,
}

fn newly(after: &Coloring, before: &Coloring) -> u64 {
    (after.colored_count() - before.colored_count()) as u64
}

impl<'a> Search<'a> {
    fn new(g: &'a Rdg, p: &'a Program, strat: Strategy, opts: &'a SolveOptions) -> Search<'a> {
        Search {
            g,
            p,
            strat,
            opts,
            target: None,
            stats: SearchStats::default(),
            answers: Vec::new(),
            stopped: false,
            limit_hit: false,
            violation: None,
            path: Vec::new(),
            found: None,
        }
    }

    fn below_target(&self, c: &Coloring) -> bool {
        self.target.is_none_or(|t| c.leq(t))
    }

    /// `C⁰`, or `None` when it does not exist.
    fn root(&mut self) -> Option<Coloring> {
        let empty = Coloring::empty(self.g.rule_count());
        let closure = self.strat.closure();
        match closure.apply(self.g, self.p, empty.clone()) {
            Ok(c) => {
                self.stats.assignments += newly(&c, &empty);
                let tag = if closure == Closure::None { "(∅,∅)" } else { closure.tag() };
                self.path.push(Step { op: tag.to_string(), coloring: c.clone() });
                Some(c)
            }
            Err(_) => {
                self.stats.backtracks += 1;
                None
            }
        }
    }

    fn n_leaf(&mut self, c: &Coloring) -> Option<Coloring> {
        let leaf = op_n(self.g, c);
        self.stats.assignments += newly(&leaf, c);
        if self.opts.check_invariants && matches!(self.strat, Strategy::V | Strategy::VPlus) {
            let supported = sets(self.g, self.p, c).s;
            if let Some(r) = leaf.newly_colored(c).into_iter().find(|r| supported.contains(r)) {
                self.violate(format!("N colored {r} although it is supported"));
            }
        }
        if op_p(self.g, self.p, &leaf).as_ref() == Ok(&leaf) {
            Some(leaf)
        } else {
            self.stats.backtracks += 1;
            None
        }
    }

    fn violate(&mut self, msg: String) {
        if self.violation.is_none() {
            self.violation = Some(msg);
        }
        self.stopped = true;
    }

    fn candidates(&self, c: &Coloring, excluded: &Excluded) -> Vec<RuleId> {
        choice_candidates(self.g, self.p, c, self.strat.kind())
            .into_iter()
            .filter(|r| !excluded[r.0])
            .collect()
    }

    /// Colors `r` in `c` and propagates.
    fn child(&mut self, c: &Coloring, r: RuleId, color: Color, excluded: Excluded) -> Option<Child> {
        let mut chosen = c.clone();
        chosen.set(r, color);
        self.stats.choices += 1;
        match self.strat.closure().apply(self.g, self.p, chosen) {
            Ok(next) => {
                self.stats.assignments += newly(&next, c);
                Some(Child { coloring: next, excluded, choice: (r, color) })
            }
            Err(_) => {
                self.stats.assignments += 1;
                self.stats.backtracks += 1;
                None
            }
        }
    }

    /// Branches on the colors of one rule, or on which rule gets the color.
    fn branch(&mut self, c: &Coloring, excluded: &Excluded, cands: &[RuleId]) -> Vec<Child> {
        let mut cands = cands.to_vec();
        if self.target.is_none() {
            cands.sort_by_key(|&r| !self.g.has_e1(r, r));
        }
        let mut out = Vec::new();
        match self.strat.only() {
            None => {
                let r = cands[0];
                for color in [Color::Plus, Color::Minus] {
                    out.extend(self.child(c, r, color, excluded.clone()));
                }
            }
            Some(color) => {
                let mut ex = excluded.clone();
                for &r in &cands {
                    out.extend(self.child(c, r, color, ex.clone()));
                    ex[r.0] = true;
                }
            }
        }
        out
    }

    fn expand(&mut self, c: &Coloring, excluded: &Excluded) -> Expansion {
        let (g, p) = (self.g, self.p);
        let mut ex = Expansion::default();
        match self.strat {
            Strategy::I => {
                if c.is_total() {
                    if op_p(g, p, c).as_ref() == Ok(c) && op_u(g, p, c).as_ref() == Ok(c) {
                        ex.accept = Some((c.clone(), ""));
                    } else {
                        self.stats.backtracks += 1;
                    }
                } else {
                    let cands = self.candidates(c, excluded);
                    ex.children = self.branch(c, excluded, &cands);
                }
            }
            Strategy::IIIPlus | Strategy::IIIMinus => {
                let plus = self.strat == Strategy::IIIPlus;
                let fin: Result<Coloring, Conflict> = op_p_star(g, p, c).and_then(|q| if plus { op_u(g, p, &q) } else { Ok(q) });
                let f = match fin {
                    Ok(f) => f,
                    Err(_) => {
                        self.stats.backtracks += 1;
                        return ex;
                    }
                };
                if f.is_total() {
                    self.stats.assignments += newly(&f, c);
                    ex.accept = Some((f, if plus { "U∘P*" } else { "P*" }));
                    return ex;
                }
                let cands: Vec<RuleId> = f.uncolored().filter(|r| !excluded[r.0]).collect();
                if cands.is_empty() {
                    self.stats.backtracks += 1;
                }
                ex.children = self.branch(c, excluded, &cands);
            }
            s if s.ends_with_n() => {
                let all = choice_candidates(g, p, c, ChoiceKind::D);
                if s == Strategy::IVPlus || all.is_empty() {
                    if let Some(leaf) = self.n_leaf(c) {
                        ex.accept = Some((leaf, "N"));
                    }
                }
                let cands: Vec<RuleId> = all.iter().copied().filter(|r| !excluded[r.0]).collect();
                if !cands.is_empty() {
                    ex.children = self.branch(c, excluded, &cands);
                } else if !all.is_empty() && s != Strategy::IVPlus {
                    // Every candidate was already tried by an earlier sibling.
                    self.stats.backtracks += 1;
                }
            }
            _ => {
                if c.is_total() {
                    ex.accept = Some((c.clone(), ""));
                    return ex;
                }
                let cands = self.candidates(c, excluded);
                if cands.is_empty() {
                    self.stats.backtracks += 1;
                    return ex;
                }
                ex.children = self.branch(c, excluded, &cands);
            }
        }
        ex
    }

    fn check_step(&mut self, before: &Coloring, after: &Coloring) {
        if !before.leq(after) {
            self.violate(format!("sequence is not increasing: {before} then {after}"));
            return;
        }
        if self.strat.closure() != Closure::None {
            let s = sets(self.g, self.p, before);
            let forced_plus = s.s.intersection(&s.bbar).any(|r| !after.is_plus(*r));
            let forced_minus = s.sbar.union(&s.b).any(|r| !after.is_minus(*r));
            if forced_plus || forced_minus {
                self.violate(format!("{after} does not contain P({before})"));
                return;
            }
        }
        if self.strat.kind() == ChoiceKind::D {
            let plus = after.plus();
            let ok = witness_edges(self.g, self.p, &plus)
                .map(|sg| is_support_graph(self.g, self.p, after, &sg))
                .unwrap_or(false);
            if !ok {
                self.violate(format!("⊕ rules of {after} do not form a support graph"));
            }
        }
    }

    fn accept(&mut self, c: Coloring, op: &'static str) {
        if let Some(t) = self.target {
            if &c == t {
                let mut path = self.path.clone();
                if !op.is_empty() {
                    path.push(Step { op: op.to_string(), coloring: c });
                }
                self.found = Some(path);
                self.stopped = true;
            }
            return;
        }
        let atoms = self.p.heads(&c.plus());
        self.answers.push(Answer { atoms, coloring: c });
        if self.opts.mode == Mode::First {
            self.stopped = true;
        }
    }

    fn over_budget(&mut self) -> bool {
        if let Some(max) = self.opts.max_choices {
            if self.stats.choices >= max {
                self.limit_hit = true;
                self.stopped = true;
            }
        }
        self.stopped
    }

    fn step_tag(&self, (r, color): (RuleId, Color)) -> String {
        let choice = format!("C{}({r})", color.symbol());
        match self.strat.closure() {
            Closure::None => choice,
            cl => format!("{}∘{choice}", cl.tag()),
        }
    }

    fn visit(&mut self, c: &Coloring, excluded: &Excluded) {
        if self.over_budget() {
            return;
        }
        let ex = self.expand(c, excluded);
        if let Some((leaf, op)) = ex.accept {
            self.accept(leaf, op);
        }
        for child in ex.children {
            if self.stopped {
                return;
            }
            if self.opts.check_invariants {
                self.check_step(c, &child.coloring);
            }
            if !self.below_target(&child.coloring) {
                continue;
            }
            let traced = self.target.is_some();
            if traced {
                let op = self.step_tag(child.choice);
                self.path.push(Step { op, coloring: child.coloring.clone() });
            }
            self.visit(&child.coloring, &child.excluded);
            if traced {
                self.path.pop();
            }
        }
    }

    /// Explores the children of the top `depth` levels on the rayon pool and
    /// merges results in sibling order.
    fn visit_parallel(&mut self, c: &Coloring, excluded: &Excluded, depth: usize) {
        if depth == 0 {
            self.visit(c, excluded);
            return;
        }
        let ex = self.expand(c, excluded);
        if let Some((leaf, op)) = ex.accept {
            self.accept(leaf, op);
        }
        let (g, p, strat, opts) = (self.g, self.p, self.strat, self.opts);
        let results: Vec<(Vec<Answer>, SearchStats, Option<String>)> = ex
            .children
            .par_iter()
            .map(|child| {
                let mut s = Search::new(g, p, strat, opts);
                if opts.check_invariants {
                    s.check_step(c, &child.coloring);
                }
                s.visit_parallel(&child.coloring, &child.excluded, depth - 1);
                (s.answers, s.stats, s.violation)
            })
            .collect();
        for (answers, stats, violation) in results {
            self.answers.extend(answers);
            self.stats.add(&stats);
            if self.violation.is_none() {
                self.violation = violation;
            }
        }
    }
}

/// Answer sets of `p` found by `strat`, with their admissible colorings.
pub fn solve(p: &Program, strat: Strategy, opts: &SolveOptions) -> Result<Solution, SolveError> {
    if strat == Strategy::I && p.len() > opts.strategy_i_limit {
        return Err(SolveError::TooLarge {
            strategy: strat.to_string(),
            limit: opts.strategy_i_limit,
            rules: p.len(),
        });
    }
    let g = Rdg::build(p);
    let mut search = Search::new(&g, p, strat, opts);
    search.path.clear();
    if let Some(c0) = search.root() {
        let excluded = vec![false; p.len()];
        let parallel = opts.jobs > 1 && opts.mode == Mode::All && opts.max_choices.is_none();
        if parallel {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(opts.jobs)
                .build()
                .map_err(|e| SolveError::Invariant(e.to_string()))?;
            pool.install(|| search.visit_parallel(&c0, &excluded, 6));
        } else {
            search.visit(&c0, &excluded);
        }
    }
    if let Some(v) = search.violation {
        return Err(SolveError::Invariant(v));
    }
    let mut answers = search.answers;
    if opts.mode == Mode::First {
        answers.truncate(1);
    }
    answers.sort_by(|a, b| p.names(&a.atoms).cmp(&p.names(&b.atoms)));
    answers.dedup_by(|a, b| a.atoms == b.atoms);
    Ok(Solution {
        answers,
        stats: search.stats,
        complete: !search.limit_hit,
    })
}

/// A coloring sequence of `strat` ending in the total coloring `target`, if
/// the strategy can reach it.
pub fn trace(p: &Program, strat: Strategy, target: &Coloring) -> Option<ColoringSequence> {
    if !target.is_total() || target.len() != p.len() {
        return None;
    }
    let g = Rdg::build(p);
    let opts = SolveOptions {
        strategy_i_limit: usize::MAX,
        ..SolveOptions::all()
    };
    let mut search = Search::new(&g, p, strat, &opts);
    search.target = Some(target);
    let c0 = search.root()?;
    if !search.below_target(&c0) {
        return None;
    }
    search.visit(&c0, &vec![false; p.len()]);
    search.found.map(|steps| ColoringSequence { steps })
}
