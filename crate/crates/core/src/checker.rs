//! Five ways to decide whether a total coloring is admissible, i.e. whether
//! its ⊕ rules are the generating rules of an answer set. They always agree.

use crate::coloring::{sets, Color, Coloring};
use crate::error::GraphError;
use crate::operators::{op_p, op_u};
use crate::program::{Program, RuleSet};
use crate::rdg::Rdg;
use crate::support::{is_blockage_graph, max_support_vertices};

fn total(g: &Rdg, c: &Coloring) -> Result<(), GraphError> {
    if c.len() != g.rule_count() {
        return Err(GraphError::SizeMismatch {
            expected: g.rule_count(),
            found: c.len(),
        });
    }
    if !c.is_total_on(g) {
        return Err(GraphError::NotTotal);
    }
    Ok(())
}

fn plus_on(g: &Rdg, c: &Coloring) -> RuleSet {
    c.with(Color::Plus).filter(|&r| g.contains(r)).collect()
}

/// `C⊕ = S ∩ B̄` and `(Γ, C)` has a support graph.
pub fn check_i(g: &Rdg, p: &Program, c: &Coloring) -> Result<bool, GraphError> {
    total(g, c)?;
    let s = sets(g, p, c);
    let applicable: RuleSet = s.s.intersection(&s.bbar).copied().collect();
    Ok(plus_on(g, c) == applicable && max_support_vertices(g, p, c).ok)
}

/// `C⊕` is the vertex set of the maximal support graph of `Γ` restricted to
/// `B̄`.
pub fn check_ii(g: &Rdg, p: &Program, c: &Coloring) -> Result<bool, GraphError> {
    total(g, c)?;
    let bbar = sets(g, p, c).bbar;
    let sub = g.restrict(&bbar);
    let v = max_support_vertices(&sub, p, &Coloring::empty(c.len())).vertices;
    Ok(plus_on(g, c) == v)
}

/// `(Γ, C)` has a support graph and `(S, E1|S)` is a blockage graph.
pub fn check_iii(g: &Rdg, p: &Program, c: &Coloring) -> Result<bool, GraphError> {
    total(g, c)?;
    if !max_support_vertices(g, p, c).ok {
        return Ok(false);
    }
    let s = sets(g, p, c).s;
    let e = g.restrict(&s).e1();
    Ok(is_blockage_graph(g, c, &s, &e))
}

/// `P(C) = C` and `(Γ, C)` has a support graph.
pub fn check_i_prime(g: &Rdg, p: &Program, c: &Coloring) -> Result<bool, GraphError> {
    total(g, c)?;
    Ok(op_p(g, p, c).as_ref() == Ok(c) && max_support_vertices(g, p, c).ok)
}

/// `P(C) = C` and `U(C) = C`.
pub fn check_i_dprime(g: &Rdg, p: &Program, c: &Coloring) -> Result<bool, GraphError> {
    total(g, c)?;
    Ok(op_p(g, p, c).as_ref() == Ok(c) && op_u(g, p, c).as_ref() == Ok(c))
}

/// All five verdicts, in the order I, II, III, I′, I″.
pub fn check_all(g: &Rdg, p: &Program, c: &Coloring) -> Result<[bool; 5], GraphError> {
    Ok([
        check_i(g, p, c)?,
        check_ii(g, p, c)?,
        check_iii(g, p, c)?,
        check_i_prime(g, p, c)?,
        check_i_dprime(g, p, c)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{penguin, r, support_loop};

    fn col(n: usize, plus: &[usize], minus: &[usize]) -> Coloring {
        Coloring::from_sets(n, plus.iter().map(|&k| r(k)), minus.iter().map(|&k| r(k))).unwrap()
    }

    fn verdicts(text: &str, plus: &[usize], minus: &[usize]) -> [bool; 5] {
        let p = Program::parse(text).unwrap();
        let g = Rdg::build(&p);
        check_all(&g, &p, &col(p.len(), plus, minus)).unwrap()
    }

    #[test]
    fn penguin_admissible_colorings() {
        let p = penguin();
        let g = Rdg::build(&p);
        assert_eq!(check_all(&g, &p, &col(6, &[1, 2, 3], &[4, 5, 6])), Ok([true; 5]));
        assert_eq!(check_all(&g, &p, &col(6, &[1, 2, 4], &[3, 5, 6])), Ok([true; 5]));
        assert_eq!(check_all(&g, &p, &col(6, &[1, 2, 3, 4, 5, 6], &[])), Ok([false; 5]));
    }

    #[test]
    fn rejected_colorings() {
        assert_eq!(verdicts("a :- not a.", &[1], &[]), [false; 5]);
        assert_eq!(verdicts("a.", &[], &[1]), [false; 5]);
        assert_eq!(verdicts("p :- q. q :- p.", &[1, 2], &[]), [false; 5]);
        assert_eq!(verdicts("", &[], &[]), [true; 5]);
    }

    #[test]
    fn support_loop_all_colorings() {
        let p = support_loop();
        let g = Rdg::build(&p);
        for mask in 0u32..16 {
            let plus: Vec<usize> = (1..=4).filter(|k| mask & (1 << (k - 1)) != 0).collect();
            let minus: Vec<usize> = (1..=4).filter(|k| mask & (1 << (k - 1)) == 0).collect();
            let v = check_all(&g, &p, &col(4, &plus, &minus)).unwrap();
            assert!(v.iter().all(|&b| b == v[0]), "disagreement on {plus:?}");
            assert_eq!(v[0], plus == [1], "{plus:?}");
        }
    }

    #[test]
    fn partial_colorings_are_refused() {
        let p = penguin();
        let g = Rdg::build(&p);
        assert_eq!(check_i(&g, &p, &col(6, &[1], &[])), Err(GraphError::NotTotal));
        assert_eq!(
            check_ii(&g, &p, &Coloring::empty(2)),
            Err(GraphError::SizeMismatch { expected: 6, found: 2 })
        );
    }
}
