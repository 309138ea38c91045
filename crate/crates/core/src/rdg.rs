//! The rule dependency graph.
//!
//! Vertices are rules. There is a 0-edge `(r, r')` when the head of `r` occurs
//! in the positive body of `r'` and a 1-edge when it occurs in the negative
//! body. Both labels are stored with forward and backward adjacency, each list
//! sorted by rule id.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::program::{AtomId, Program, RuleId, RuleSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rdg {
    n: usize,
    vertices: Vec<bool>,
    succ0: Vec<Vec<RuleId>>,
    pred0: Vec<Vec<RuleId>>,
    succ1: Vec<Vec<RuleId>>,
    pred1: Vec<Vec<RuleId>>,
    heads: Vec<Vec<RuleId>>,
}

pub type EdgeSet = BTreeSet<(RuleId, RuleId)>;

impl Rdg {
    pub fn build(p: &Program) -> Rdg {
        let n = p.len();
        let mut heads = vec![Vec::new(); p.atom_count()];
        for r in p.rules() {
            heads[r.head.0].push(r.id);
        }
        let mut g = Rdg {
            n,
            vertices: vec![true; n],
            succ0: vec![Vec::new(); n],
            pred0: vec![Vec::new(); n],
            succ1: vec![Vec::new(); n],
            pred1: vec![Vec::new(); n],
            heads,
        };
        // Iterating targets in id order keeps every successor list sorted.
        for target in p.rules() {
            for &q in &target.pbody {
                for &src in &g.heads[q.0] {
                    g.succ0[src.0].push(target.id);
                    g.pred0[target.id.0].push(src);
                }
            }
            for &q in &target.nbody {
                for &src in &g.heads[q.0] {
                    g.succ1[src.0].push(target.id);
                    g.pred1[target.id.0].push(src);
                }
            }
        }
        for list in g.pred0.iter_mut().chain(g.pred1.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        for list in g.succ0.iter_mut().chain(g.succ1.iter_mut()) {
            list.dedup();
        }
        g
    }

    /// The induced subgraph on `w`; rule ids are preserved.
    pub fn restrict(&self, w: &RuleSet) -> Rdg {
        let keep = |r: &RuleId| w.contains(r) && self.vertices[r.0];
        let filter = |lists: &[Vec<RuleId>]| -> Vec<Vec<RuleId>> {
            lists
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    if keep(&RuleId(i)) {
                        l.iter().copied().filter(keep).collect()
                    } else {
                        Vec::new()
                    }
                })
                .collect()
        };
        Rdg {
            n: self.n,
            vertices: (0..self.n).map(|i| keep(&RuleId(i))).collect(),
            succ0: filter(&self.succ0),
            pred0: filter(&self.pred0),
            succ1: filter(&self.succ1),
            pred1: filter(&self.pred1),
            heads: self
                .heads
                .iter()
                .map(|l| l.iter().copied().filter(keep).collect())
                .collect(),
        }
    }

    /// Number of rules of the underlying program (including rules removed by
    /// [`Rdg::restrict`]).
    pub fn rule_count(&self) -> usize {
        self.n
    }

    pub fn contains(&self, r: RuleId) -> bool {
        r.0 < self.n && self.vertices[r.0]
    }

    pub fn vertices(&self) -> impl Iterator<Item = RuleId> + '_ {
        (0..self.n).map(RuleId).filter(|&r| self.vertices[r.0])
    }

    pub fn vertex_set(&self) -> RuleSet {
        self.vertices().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.iter().filter(|&&v| v).count()
    }

    pub fn succ0(&self, r: RuleId) -> &[RuleId] {
        &self.succ0[r.0]
    }

    pub fn pred0(&self, r: RuleId) -> &[RuleId] {
        &self.pred0[r.0]
    }

    pub fn succ1(&self, r: RuleId) -> &[RuleId] {
        &self.succ1[r.0]
    }

    pub fn pred1(&self, r: RuleId) -> &[RuleId] {
        &self.pred1[r.0]
    }

    /// Rules of the graph whose head is `a`.
    pub fn rules_with_head(&self, a: AtomId) -> &[RuleId] {
        self.heads.get(a.0).map_or(&[], Vec::as_slice)
    }

    pub fn e0(&self) -> EdgeSet {
        self.edges(&self.succ0)
    }

    pub fn e1(&self) -> EdgeSet {
        self.edges(&self.succ1)
    }

    fn edges(&self, succ: &[Vec<RuleId>]) -> EdgeSet {
        succ.iter()
            .enumerate()
            .flat_map(|(i, l)| l.iter().map(move |&t| (RuleId(i), t)))
            .collect()
    }

    pub fn has_e0(&self, from: RuleId, to: RuleId) -> bool {
        self.succ0[from.0].binary_search(&to).is_ok()
    }

    pub fn has_e1(&self, from: RuleId, to: RuleId) -> bool {
        self.succ1[from.0].binary_search(&to).is_ok()
    }

    /// DOT rendering: one node per rule, edges labeled `0` or `1` (1-edges dashed).
    pub fn to_dot(&self, p: &Program) -> String {
        let mut out = String::from("digraph rdg {\n");
        for r in self.vertices() {
            let rule = p.rule(r);
            let mut label = format!("{r}: {}", p.atom_name(rule.head));
            if !rule.pbody.is_empty() || !rule.nbody.is_empty() {
                let mut body: Vec<String> = rule.pbody.iter().map(|&a| p.atom_name(a).to_string()).collect();
                body.extend(rule.nbody.iter().map(|&a| format!("not {}", p.atom_name(a))));
                label.push_str(" :- ");
                label.push_str(&body.join(", "));
            }
            let _ = writeln!(out, "  {} [label=\"{}\"];", r, label.replace('"', "\\\""));
        }
        for (a, b) in self.e0() {
            let _ = writeln!(out, "  {a} -> {b} [label=\"0\"];");
        }
        for (a, b) in self.e1() {
            let _ = writeln!(out, "  {a} -> {b} [label=\"1\", style=dashed];");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{penguin, r};

    fn edges(list: &[(usize, usize)]) -> EdgeSet {
        list.iter().map(|&(a, b)| (r(a), r(b))).collect()
    }

    #[test]
    fn penguin_graph() {
        let p = penguin();
        let g = Rdg::build(&p);
        assert_eq!(g.e0(), edges(&[(1, 2), (1, 4), (2, 3), (3, 6), (4, 6), (5, 3)]));
        assert_eq!(g.e1(), edges(&[(3, 4), (4, 3), (6, 6)]));
    }

    #[test]
    fn chain_and_self_loop() {
        let p = Program::parse("a. c :- a.").unwrap();
        let g = Rdg::build(&p);
        assert_eq!(g.e0(), edges(&[(1, 2)]));
        assert!(g.e1().is_empty());

        let p = Program::parse("a :- not a.").unwrap();
        let g = Rdg::build(&p);
        assert!(g.e0().is_empty());
        assert_eq!(g.e1(), edges(&[(1, 1)]));
    }

    #[test]
    fn restriction() {
        let g = Rdg::build(&penguin());
        let sub = g.restrict(&RuleSet::from([r(1), r(2), r(6)]));
        assert_eq!(sub.e0(), edges(&[(1, 2)]));
        assert_eq!(sub.e1(), edges(&[(6, 6)]));
        assert_eq!(sub.vertex_set(), RuleSet::from([r(1), r(2), r(6)]));

        assert_eq!(g.restrict(&g.vertex_set()), g);
        let empty = g.restrict(&RuleSet::new());
        assert_eq!(empty.vertex_count(), 0);
        assert!(empty.e0().is_empty() && empty.e1().is_empty());
    }

    #[test]
    fn dot_output_lists_every_edge() {
        let p = penguin();
        let dot = Rdg::build(&p).to_dot(&p);
        assert!(dot.starts_with("digraph rdg {"));
        assert_eq!(dot.matches("[label=\"0\"]").count(), 6);
        assert_eq!(dot.matches("[label=\"1\", style=dashed]").count(), 3);
        assert!(dot.contains("r3: f :- b, not f'"));
    }
}
