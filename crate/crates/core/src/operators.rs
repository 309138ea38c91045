//! Deterministic coloring operators and the two choice operators.
//!
//! Every operator works on the vertices of the given graph, so the same code
//! runs on restricted graphs. A `Conflict` means the operator has no value at
//! the input; search backtracks on it.

use std::collections::VecDeque;

use crate::coloring::{classify, sets, Color, Coloring, Conflict};
use crate::error::GraphError;
use crate::program::{Program, RuleId};
use crate::rdg::Rdg;
use crate::support::{horn_closure, max_support_vertices};

pub type OpResult = Result<Coloring, Conflict>;

/// The color `P` forces on `r`, if any: ⊕ for supported unblocked rules, ⊖ for
/// unsupported or blocked ones.
pub fn forced(g: &Rdg, p: &Program, c: &Coloring, r: RuleId) -> Option<Color> {
    let st = classify(g, p, c, r);
    if st.unsupported || st.blocked {
        Some(Color::Minus)
    } else if st.supported && st.unblocked {
        Some(Color::Plus)
    } else {
        None
    }
}

/// `P(C) = C ⊔ (S ∩ B̄, S̄ ∪ B)`.
pub fn op_p(g: &Rdg, p: &Program, c: &Coloring) -> OpResult {
    let s = sets(g, p, c);
    let plus = s.s.intersection(&s.bbar).copied();
    let minus = s.sbar.union(&s.b).copied();
    let step = Coloring::from_sets(c.len(), plus, minus)?;
    c.join(&step)
}

/// Result of [`op_p_star_counted`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PStar {
    pub result: OpResult,
    pub queue_pushes: usize,
}

/// `P*(C)`, the least P-closed coloring above `c`.
pub fn op_p_star(g: &Rdg, p: &Program, c: &Coloring) -> OpResult {
    op_p_star_counted(g, p, c).result
}

/// `P*` with the number of worklist insertions. Every rule is inserted at most
/// once, since a forced color never changes as the coloring grows.
pub fn op_p_star_counted(g: &Rdg, p: &Program, c: &Coloring) -> PStar {
    let seeds: Vec<RuleId> = g.vertices().collect();
    propagate(g, p, c.clone(), seeds)
}

/// `P*` of a coloring that differs from a P-closed one only at `changed`.
pub(crate) fn op_p_star_after(g: &Rdg, p: &Program, c: Coloring, changed: &[RuleId]) -> OpResult {
    let mut seeds: Vec<RuleId> = Vec::new();
    for &r in changed {
        seeds.push(r);
        seeds.extend_from_slice(g.succ0(r));
        seeds.extend_from_slice(g.succ1(r));
    }
    seeds.sort_unstable();
    seeds.dedup();
    propagate(g, p, c, seeds).result
}

struct Worklist {
    queued: Vec<bool>,
    queue: VecDeque<(RuleId, Color)>,
    pushes: usize,
}

impl Worklist {
    /// Checks `r` against the current coloring and queues it when newly forced.
    fn examine(&mut self, g: &Rdg, p: &Program, c: &Coloring, r: RuleId) -> Result<(), Conflict> {
        if self.queued[r.0] {
            return Ok(());
        }
        match (forced(g, p, c, r), c.get(r)) {
            (Some(f), Some(have)) if f != have => Err(Conflict::both(r)),
            (Some(f), None) => {
                self.queued[r.0] = true;
                self.pushes += 1;
                self.queue.push_back((r, f));
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

fn propagate(g: &Rdg, p: &Program, mut c: Coloring, seeds: Vec<RuleId>) -> PStar {
    let mut w = Worklist {
        queued: vec![false; c.len()],
        queue: VecDeque::new(),
        pushes: 0,
    };
    let run = |w: &mut Worklist, c: &mut Coloring| -> Result<(), Conflict> {
        for r in seeds {
            w.examine(g, p, c, r)?;
        }
        while let Some((r, color)) = w.queue.pop_front() {
            c.set(r, color);
            for &s in g.succ0(r).iter().chain(g.succ1(r)) {
                w.examine(g, p, c, s)?;
            }
        }
        Ok(())
    };
    let result = run(&mut w, &mut c).map(|()| c);
    PStar {
        result,
        queue_pushes: w.pushes,
    }
}

/// `U(C) = (C⊕, Π ∖ V)` for the vertex set `V` of the maximal support graph;
/// undefined when some ⊕ rule lies outside `V`.
pub fn op_u(g: &Rdg, p: &Program, c: &Coloring) -> OpResult {
    let m = max_support_vertices(g, p, c);
    if !m.ok {
        let r = c
            .with(Color::Plus)
            .find(|r| !m.vertices.contains(r))
            .expect("a ⊕ rule lies outside the support graph");
        return Err(Conflict::undefined(r));
    }
    let mut out = c.clone();
    for r in g.vertices() {
        if !m.vertices.contains(&r) {
            out.set(r, Color::Minus);
        }
    }
    Ok(out)
}

/// `T*(C)`: adds every supported rule outside `C⊖` to `C⊕` until nothing
/// changes.
pub fn op_t_star(g: &Rdg, p: &Program, c: &Coloring) -> Coloring {
    let plus: Vec<RuleId> = c.with(Color::Plus).collect();
    let cl = horn_closure(g, p, |r| !c.is_minus(r), plus);
    let mut out = c.clone();
    for r in cl.order {
        out.set(r, Color::Plus);
    }
    out
}

/// `V(C) = (C⊕, Π ∖ T*(C)⊕)`.
pub fn op_v(g: &Rdg, p: &Program, c: &Coloring) -> Coloring {
    let t = op_t_star(g, p, c);
    let mut out = c.clone();
    for r in g.vertices() {
        if !t.is_plus(r) {
            out.set(r, Color::Minus);
        }
    }
    out
}

/// `N(C) = (C⊕, Π ∖ C⊕)`.
pub fn op_n(g: &Rdg, c: &Coloring) -> Coloring {
    let mut out = c.clone();
    for r in g.vertices() {
        out.set(r, Color::Minus);
    }
    out
}

/// Least coloring above `c` closed under `P` and `U`.
pub fn op_pu_star(g: &Rdg, p: &Program, c: &Coloring) -> OpResult {
    let mut c = op_p_star(g, p, c)?;
    loop {
        let u = op_u(g, p, &c)?;
        if u == c {
            return Ok(c);
        }
        let changed = u.newly_colored(&c);
        c = op_p_star_after(g, p, u, &changed)?;
    }
}

/// Least coloring above `c` closed under `P` and `V`.
pub fn op_pv_star(g: &Rdg, p: &Program, c: &Coloring) -> OpResult {
    let mut c = op_p_star(g, p, c)?;
    loop {
        let v = op_v(g, p, &c);
        if v == c {
            return Ok(c);
        }
        let changed = v.newly_colored(&c);
        c = op_p_star_after(g, p, v, &changed)?;
    }
}

/// The order-reversed composition `P*(U(C))`, kept to show that it differs
/// from `U(P*(C))`.
pub fn op_p_star_after_u(g: &Rdg, p: &Program, c: &Coloring) -> OpResult {
    op_p_star(g, p, &op_u(g, p, c)?)
}

/// `U(P*(C))`.
pub fn op_u_after_p_star(g: &Rdg, p: &Program, c: &Coloring) -> OpResult {
    op_u(g, p, &op_p_star(g, p, c)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChoiceKind {
    /// Any uncolored rule.
    C,
    /// Uncolored supported rules.
    D,
}

pub fn choice_candidates(g: &Rdg, p: &Program, c: &Coloring, kind: ChoiceKind) -> Vec<RuleId> {
    g.vertices()
        .filter(|&r| !c.is_colored(r))
        .filter(|&r| kind == ChoiceKind::C || classify(g, p, c, r).supported)
        .collect()
}

pub fn apply_choice(c: &Coloring, r: RuleId, color: Color) -> Result<Coloring, GraphError> {
    if r.0 >= c.len() {
        return Err(GraphError::UnknownRule(r));
    }
    let mut out = c.clone();
    if !out.set(r, color) {
        return Err(GraphError::AlreadyColored(r));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{early_unsupported, penguin, r, support_loop};

    fn col(n: usize, plus: &[usize], minus: &[usize]) -> Coloring {
        Coloring::from_sets(n, plus.iter().map(|&k| r(k)), minus.iter().map(|&k| r(k))).unwrap()
    }

    fn setup(p: Program) -> (Rdg, Program) {
        (Rdg::build(&p), p)
    }

    #[test]
    fn p_on_penguin() {
        let (g, p) = setup(penguin());
        let e = Coloring::empty(6);
        assert_eq!(op_p(&g, &p, &e), Ok(col(6, &[1], &[5])));
        let c = col(6, &[1, 2], &[5]);
        assert_eq!(op_p(&g, &p, &c), Ok(c.clone()));
        assert_eq!(op_p_star(&g, &p, &e), Ok(c));
    }

    #[test]
    fn p_fails_on_self_blocking_rule() {
        let (g, p) = setup(Program::parse("a :- not a.").unwrap());
        let c = col(1, &[1], &[]);
        assert_eq!(op_p(&g, &p, &c), Err(Conflict::both(r(1))));
        assert_eq!(op_p_star(&g, &p, &c), Err(Conflict::both(r(1))));
    }

    #[test]
    fn p_star_examples() {
        let (g, p) = setup(Program::parse("a. c :- a, not c.").unwrap());
        assert_eq!(op_p_star(&g, &p, &Coloring::empty(2)), Ok(col(2, &[1], &[])));
        let (g, p) = setup(support_loop());
        assert_eq!(op_p_star(&g, &p, &col(4, &[1], &[])), Ok(col(4, &[1], &[2])));
    }

    #[test]
    fn u_examples() {
        let (g, p) = setup(penguin());
        assert_eq!(op_u(&g, &p, &Coloring::empty(6)), Ok(col(6, &[], &[5])));
        let (g, p) = setup(Program::parse("p :- q. q :- p.").unwrap());
        assert_eq!(op_u(&g, &p, &Coloring::empty(2)), Ok(col(2, &[], &[1, 2])));
        let (g, p) = setup(Program::parse("a.").unwrap());
        let c = col(1, &[], &[1]);
        assert_eq!(op_u(&g, &p, &c), Ok(c));
        let (g, p) = setup(support_loop());
        assert_eq!(
            op_u(&g, &p, &col(4, &[4], &[2])),
            Err(Conflict::undefined(r(4)))
        );
    }

    #[test]
    fn t_star_and_v() {
        let (g, p) = setup(support_loop());
        assert_eq!(op_t_star(&g, &p, &col(4, &[1], &[])).plus(), col(4, &[1, 2, 3, 4], &[]).plus());
        assert_eq!(op_t_star(&g, &p, &col(4, &[1], &[2])), col(4, &[1], &[2]));
        let c = col(4, &[1], &[2]);
        assert_eq!(op_v(&g, &p, &c), col(4, &[1], &[2, 3, 4]));
        assert_eq!(op_u(&g, &p, &c), Ok(op_v(&g, &p, &c)));

        let (g, p) = setup(early_unsupported());
        assert_eq!(op_v(&g, &p, &Coloring::empty(3)), col(3, &[], &[2, 3]));
        let (g, p) = setup(penguin());
        assert_eq!(op_v(&g, &p, &Coloring::empty(6)), col(6, &[], &[5]));
    }

    #[test]
    fn n_examples() {
        let (g, p) = setup(support_loop());
        assert_eq!(op_n(&g, &col(4, &[1], &[2])), col(4, &[1], &[2, 3, 4]));
        assert_eq!(op_n(&g, &Coloring::empty(4)), col(4, &[], &[1, 2, 3, 4]));
        let t = col(4, &[1, 3], &[2, 4]);
        assert_eq!(op_n(&g, &t), t);
        let _ = p;
    }

    #[test]
    fn composite_closures() {
        let (g, p) = setup(penguin());
        let e = Coloring::empty(6);
        assert_eq!(op_pu_star(&g, &p, &e), Ok(col(6, &[1, 2], &[5])));
        assert_eq!(op_pv_star(&g, &p, &e), Ok(col(6, &[1, 2], &[5])));

        let (g, p) = setup(support_loop());
        let e = Coloring::empty(4);
        assert_eq!(op_pu_star(&g, &p, &e), Ok(col(4, &[1], &[2, 3, 4])));
        assert_eq!(op_pv_star(&g, &p, &e), Ok(col(4, &[1], &[2, 3, 4])));

        let (g, p) = setup(early_unsupported());
        let e = Coloring::empty(3);
        assert_eq!(op_pu_star(&g, &p, &e), Ok(col(3, &[1], &[2, 3])));
        assert_eq!(op_pv_star(&g, &p, &e), Ok(col(3, &[1], &[2, 3])));
    }

    #[test]
    fn order_of_u_and_p_star_matters() {
        let (g, p) = setup(support_loop());
        let c = col(4, &[1], &[]);
        assert_eq!(op_u_after_p_star(&g, &p, &c), Ok(col(4, &[1], &[2, 3, 4])));
        assert_eq!(op_p_star_after_u(&g, &p, &c), Ok(col(4, &[1], &[2])));
    }

    #[test]
    fn candidates() {
        let (g, p) = setup(penguin());
        let c = col(6, &[1, 2], &[5]);
        assert_eq!(choice_candidates(&g, &p, &c, ChoiceKind::C), vec![r(3), r(4), r(6)]);
        assert_eq!(choice_candidates(&g, &p, &c, ChoiceKind::D), vec![r(3), r(4)]);
        let total = col(6, &[1, 2, 3], &[4, 5, 6]);
        assert!(choice_candidates(&g, &p, &total, ChoiceKind::C).is_empty());

        let (g, p) = setup(support_loop());
        assert!(choice_candidates(&g, &p, &col(4, &[1], &[2]), ChoiceKind::D).is_empty());
    }

    #[test]
    fn choices() {
        let c = col(6, &[1, 2], &[5]);
        assert_eq!(apply_choice(&c, r(3), Color::Plus), Ok(col(6, &[1, 2, 3], &[5])));
        assert_eq!(apply_choice(&Coloring::empty(2), r(2), Color::Minus), Ok(col(2, &[], &[2])));
        assert_eq!(apply_choice(&c, r(1), Color::Minus), Err(GraphError::AlreadyColored(r(1))));
    }
}
