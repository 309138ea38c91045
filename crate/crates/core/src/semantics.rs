//! Three-valued semantics: Fitting's operator, unfounded sets and the
//! well-founded model.

use crate::coloring::{interpretation_of, sets, Color, Coloring};
use crate::error::GraphError;
use crate::operators::{op_p_star, op_pu_star};
use crate::program::{cn, reduct, AtomSet, Program};
use crate::rdg::Rdg;
use crate::support::max_support_vertices;

/// A pair of disjoint atom sets: true atoms `x` and false atoms `y`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Interpretation3 {
    pub x: AtomSet,
    pub y: AtomSet,
}

impl Interpretation3 {
    pub fn new(x: AtomSet, y: AtomSet) -> Interpretation3 {
        debug_assert!(x.is_disjoint(&y));
        Interpretation3 { x, y }
    }

    /// Componentwise inclusion.
    pub fn leq(&self, other: &Interpretation3) -> bool {
        self.x.is_subset(&other.x) && self.y.is_subset(&other.y)
    }

    /// `true: {a}  false: {b, c}` with reserved atoms hidden.
    pub fn show(&self, p: &Program) -> String {
        format!("true: {}  false: {}", p.show_atoms(&self.x), p.show_atoms(&self.y))
    }
}

/// One application of Fitting's operator `Φ`.
pub fn fitting_step(p: &Program, i: &Interpretation3) -> Interpretation3 {
    let mut x = AtomSet::new();
    let mut falsified = vec![true; p.atom_count()];
    for r in p.rules() {
        if r.pbody.is_subset(&i.x) && r.nbody.is_subset(&i.y) {
            x.insert(r.head);
        }
        let body_false = !r.pbody.is_disjoint(&i.y) || !r.nbody.is_disjoint(&i.x);
        if !body_false {
            falsified[r.head.0] = false;
        }
    }
    let y = p.atom_ids().filter(|a| falsified[a.0]).collect();
    Interpretation3 { x, y }
}

/// Least fixpoint of `Φ`, iterated from `(∅, ∅)`.
pub fn fitting_lfp(p: &Program) -> Interpretation3 {
    let mut i = Interpretation3::default();
    loop {
        let next = fitting_step(p, &i);
        if next == i {
            return i;
        }
        i = next;
    }
}

/// Whether `z` is unfounded with respect to `i`: every rule for an atom of `z`
/// has a body literal false in `i` or a positive body atom in `z`.
pub fn is_unfounded_set(p: &Program, i: &Interpretation3, z: &AtomSet) -> bool {
    p.rules().iter().filter(|r| z.contains(&r.head)).all(|r| {
        !r.pbody.is_disjoint(&i.y) || !r.nbody.is_disjoint(&i.x) || !r.pbody.is_disjoint(z)
    })
}

/// The greatest unfounded set with respect to `(X_C, Y_C)`: the atoms not
/// heading any rule of the maximal support graph of `(g, c)`.
///
/// Requires every ⊖ rule of `c` to be unsupported or blocked.
pub fn gus(g: &Rdg, p: &Program, c: &Coloring) -> Result<AtomSet, GraphError> {
    let s = sets(g, p, c);
    if let Some(r) = c.with(Color::Minus).find(|r| !s.sbar.contains(r) && !s.b.contains(r)) {
        return Err(GraphError::UnjustifiedMinus(r));
    }
    let v = max_support_vertices(g, p, c).vertices;
    let derivable = p.heads(&v);
    Ok(p.all_atoms().difference(&derivable).copied().collect())
}

/// Fitting semantics read off `P*((∅, ∅))`.
pub fn fitting_by_coloring(p: &Program) -> Interpretation3 {
    let g = Rdg::build(p);
    let c = op_p_star(&g, p, &Coloring::empty(p.len())).expect("P* exists on the empty coloring");
    interpretation_of(p, &c)
}

/// The well-founded model, read off `(PU)*((∅, ∅))`.
pub fn well_founded_model(p: &Program) -> Interpretation3 {
    let g = Rdg::build(p);
    let c = op_pu_star(&g, p, &Coloring::empty(p.len())).expect("(PU)* exists on the empty coloring");
    interpretation_of(p, &c)
}

/// The well-founded model by the alternating fixpoint: `W = lfp(C²)` for
/// `C(X) = Cn(Π^X)`, and the false atoms are those outside `C(W)`.
pub fn wfm_oracle(p: &Program) -> Interpretation3 {
    let c = |x: &AtomSet| cn(&reduct(p, x));
    let mut w = AtomSet::new();
    loop {
        let next = c(&c(&w));
        if next == w {
            break;
        }
        w = next;
    }
    let y = p.all_atoms().difference(&c(&w)).copied().collect();
    Interpretation3 { x: w, y }
}
