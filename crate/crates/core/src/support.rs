//! Support graphs and blockage graphs.
//!
//! The vertex set of the maximal support graph is computed with a counter per
//! rule (the number of positive body atoms not yet derived) and a queue of
//! rules whose counter reached zero, as in linear-time Horn satisfiability.
//! The queue pops in ascending rule id.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::coloring::Coloring;
use crate::error::GraphError;
use crate::program::{Program, RuleId, RuleSet};
use crate::rdg::{EdgeSet, Rdg};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportGraph {
    pub vertices: RuleSet,
    pub edges: EdgeSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxSupport {
    pub vertices: RuleSet,
    /// Whether every ⊕ rule is a vertex, i.e. a support graph of the colored
    /// graph exists.
    pub ok: bool,
    pub queue_pushes: usize,
}

pub(crate) struct Closure {
    pub member: Vec<bool>,
    /// Non-seed members in the order they were popped.
    pub order: Vec<RuleId>,
    /// The first member deriving each atom.
    pub deriver: Vec<Option<RuleId>>,
    pub pushes: usize,
}

/// Forward chaining over the rules of `g` admitted by `allowed`, starting from
/// the `seed` rules, which count as members without needing support.
pub(crate) fn horn_closure(
    g: &Rdg,
    p: &Program,
    allowed: impl Fn(RuleId) -> bool,
    seed: impl IntoIterator<Item = RuleId>,
) -> Closure {
    let n = g.rule_count();
    let mut out = Closure {
        member: vec![false; n],
        order: Vec::new(),
        deriver: vec![None; p.atom_count()],
        pushes: 0,
    };
    for r in seed {
        out.member[r.0] = true;
        let h = p.rule(r).head;
        if out.deriver[h.0].is_none() {
            out.deriver[h.0] = Some(r);
        }
    }
    let mut counter = vec![0usize; n];
    let mut heap = BinaryHeap::new();
    for r in g.vertices() {
        if out.member[r.0] || !allowed(r) {
            continue;
        }
        counter[r.0] = p.rule(r).pbody.iter().filter(|q| out.deriver[q.0].is_none()).count();
        if counter[r.0] == 0 {
            heap.push(Reverse(r));
            out.pushes += 1;
        }
    }
    while let Some(Reverse(r)) = heap.pop() {
        out.member[r.0] = true;
        out.order.push(r);
        let h = p.rule(r).head;
        if out.deriver[h.0].is_some() {
            continue;
        }
        out.deriver[h.0] = Some(r);
        for &s in g.succ0(r) {
            if out.member[s.0] || !allowed(s) || counter[s.0] == 0 {
                continue;
            }
            counter[s.0] -= 1;
            if counter[s.0] == 0 {
                heap.push(Reverse(s));
                out.pushes += 1;
            }
        }
    }
    out
}

/// Vertex set of the maximal support graph of `(g, c)`: the rules outside
/// `c.minus` that are derivable without `c.minus`.
pub fn max_support_vertices(g: &Rdg, p: &Program, c: &Coloring) -> MaxSupport {
    let cl = horn_closure(g, p, |r| !c.is_minus(r), []);
    let vertices: RuleSet = cl.order.iter().copied().collect();
    let ok = c.with(crate::coloring::Color::Plus).all(|r| cl.member[r.0]);
    MaxSupport {
        vertices,
        ok,
        queue_pushes: cl.pushes,
    }
}

/// A support graph with vertex set `v`. Each positive body atom is linked to
/// the rule that derived it first.
pub fn witness_edges(g: &Rdg, p: &Program, v: &RuleSet) -> Result<SupportGraph, GraphError> {
    if let Some(&r) = v.iter().find(|&&r| !g.contains(r)) {
        return Err(GraphError::UnknownRule(r));
    }
    let cl = horn_closure(g, p, |r| v.contains(&r), []);
    if let Some(&r) = v.iter().find(|r| !cl.member[r.0]) {
        return Err(GraphError::NotSupportClosed(r));
    }
    let mut edges = EdgeSet::new();
    for &r in v {
        for q in &p.rule(r).pbody {
            let d = cl.deriver[q.0].expect("member rules have derived bodies");
            edges.insert((d, r));
        }
    }
    Ok(SupportGraph {
        vertices: v.clone(),
        edges,
    })
}

fn acyclic(vertices: &RuleSet, edges: &EdgeSet, n: usize) -> bool {
    let mut indeg = vec![0usize; n];
    let mut succ: Vec<Vec<RuleId>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        indeg[b.0] += 1;
        succ[a.0].push(b);
    }
    let mut queue: VecDeque<RuleId> = vertices.iter().copied().filter(|r| indeg[r.0] == 0).collect();
    let mut seen = 0;
    while let Some(r) = queue.pop_front() {
        seen += 1;
        for &s in &succ[r.0] {
            indeg[s.0] -= 1;
            if indeg[s.0] == 0 {
                queue.push_back(s);
            }
        }
    }
    seen == vertices.len()
}

/// Whether `sg` is a support graph of `g` colored by `c`.
pub fn is_support_graph(g: &Rdg, p: &Program, c: &Coloring, sg: &SupportGraph) -> bool {
    let n = g.rule_count();
    if sg.vertices.iter().any(|&r| !g.contains(r)) {
        return false;
    }
    let inside = |r: &RuleId| sg.vertices.contains(r);
    if !sg.edges.iter().all(|&(a, b)| inside(&a) && inside(&b) && g.has_e0(a, b)) {
        return false;
    }
    if !acyclic(&sg.vertices, &sg.edges, n) {
        return false;
    }
    let mut fed = vec![Vec::new(); n];
    for &(a, b) in &sg.edges {
        fed[b.0].push(p.rule(a).head);
    }
    let supported = sg
        .vertices
        .iter()
        .all(|r| p.rule(*r).pbody.iter().all(|q| fed[r.0].contains(q)));
    supported
        && c.with(crate::coloring::Color::Plus).all(|r| inside(&r))
        && !c.with(crate::coloring::Color::Minus).any(|r| inside(&r))
}

/// Whether `(v, e)` is a blockage graph of `g` colored by `c`: no 1-edge joins
/// two ⊕ rules, and the ⊖ rules of `v` are exactly those blocked by some ⊕
/// rule along `e`.
pub fn is_blockage_graph(g: &Rdg, c: &Coloring, v: &RuleSet, e: &EdgeSet) -> bool {
    let within = e
        .iter()
        .all(|&(a, b)| v.contains(&a) && v.contains(&b) && g.has_e1(a, b));
    if !within {
        return false;
    }
    if e.iter().any(|&(a, b)| c.is_plus(a) && c.is_plus(b)) {
        return false;
    }
    let blocked: RuleSet = e
        .iter()
        .filter(|&&(a, b)| c.is_plus(a) && c.is_minus(b))
        .map(|&(_, b)| b)
        .collect();
    let expected: RuleSet = v.iter().copied().filter(|&r| c.is_minus(r)).collect();
    blocked == expected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{penguin, r, support_loop};

    fn col(n: usize, plus: &[usize], minus: &[usize]) -> Coloring {
        Coloring::from_sets(n, plus.iter().map(|&k| r(k)), minus.iter().map(|&k| r(k))).unwrap()
    }

    fn rs(ks: &[usize]) -> RuleSet {
        ks.iter().map(|&k| r(k)).collect()
    }

    fn es(list: &[(usize, usize)]) -> EdgeSet {
        list.iter().map(|&(a, b)| (r(a), r(b))).collect()
    }

    #[test]
    fn penguin_maximal_support() {
        let p = penguin();
        let g = Rdg::build(&p);
        let m = max_support_vertices(&g, &p, &Coloring::empty(6));
        assert_eq!(m.vertices, rs(&[1, 2, 3, 4, 6]));
        assert!(m.ok);
        let m = max_support_vertices(&g, &p, &col(6, &[1, 2], &[6]));
        assert_eq!(m.vertices, rs(&[1, 2, 3, 4]));
        assert!(m.ok);
        assert!(m.queue_pushes <= 6);
    }

    #[test]
    fn support_loop_maximal_support() {
        let p = support_loop();
        let g = Rdg::build(&p);
        assert!(!max_support_vertices(&g, &p, &col(4, &[4], &[2])).ok);
        let m = max_support_vertices(&g, &p, &Coloring::empty(4));
        assert_eq!(m.vertices, rs(&[1, 2, 3, 4]));
    }

    #[test]
    fn several_rules_for_one_atom() {
        // b has two rules; c must be counted once per atom, not per edge.
        let p = Program::parse("a. b :- a. b. c :- b, d. d :- a.").unwrap();
        let g = Rdg::build(&p);
        let m = max_support_vertices(&g, &p, &Coloring::empty(5));
        assert_eq!(m.vertices, rs(&[1, 2, 3, 4, 5]));
        assert!(m.queue_pushes <= 5);
    }

    #[test]
    fn witnesses() {
        let p = support_loop();
        let g = Rdg::build(&p);
        let sg = witness_edges(&g, &p, &g.vertex_set()).unwrap();
        assert!(sg.edges.is_superset(&es(&[(2, 3), (3, 4)])));
        assert!(is_support_graph(&g, &p, &Coloring::empty(4), &sg));

        let empty = witness_edges(&g, &p, &RuleSet::new()).unwrap();
        assert!(empty.vertices.is_empty() && empty.edges.is_empty());

        let pg = penguin();
        let gg = Rdg::build(&pg);
        assert_eq!(witness_edges(&gg, &pg, &rs(&[1, 2])).unwrap().edges, es(&[(1, 2)]));
        assert_eq!(
            witness_edges(&gg, &pg, &rs(&[2, 3])),
            Err(GraphError::NotSupportClosed(r(2)))
        );
    }

    #[test]
    fn support_graph_validation() {
        let p = support_loop();
        let g = Rdg::build(&p);
        let cyclic = SupportGraph { vertices: g.vertex_set(), edges: es(&[(4, 3), (3, 4)]) };
        assert!(!is_support_graph(&g, &p, &Coloring::empty(4), &cyclic));

        let pg = penguin();
        let gg = Rdg::build(&pg);
        let none = SupportGraph { vertices: RuleSet::new(), edges: EdgeSet::new() };
        assert!(is_support_graph(&gg, &pg, &Coloring::empty(6), &none));
        let c1 = col(6, &[1, 2, 3], &[4, 5, 6]);
        let sg = SupportGraph { vertices: rs(&[1, 2, 3]), edges: es(&[(1, 2), (2, 3)]) };
        assert!(is_support_graph(&gg, &pg, &c1, &sg));
        let missing = SupportGraph { vertices: rs(&[1, 2, 3]), edges: es(&[(1, 2)]) };
        assert!(!is_support_graph(&gg, &pg, &c1, &missing));
    }

    #[test]
    fn blockage_graphs() {
        let p = penguin();
        let g = Rdg::build(&p);
        let c1 = col(6, &[1, 2, 3], &[4, 5, 6]);
        assert!(is_blockage_graph(&g, &c1, &rs(&[1, 2, 3, 4]), &es(&[(3, 4), (4, 3)])));
        let all_plus = col(6, &[1, 2, 3, 4, 5, 6], &[]);
        assert!(!is_blockage_graph(&g, &all_plus, &rs(&[3, 4]), &es(&[(3, 4)])));
        assert!(is_blockage_graph(&g, &c1, &RuleSet::new(), &EdgeSet::new()));
    }
}
