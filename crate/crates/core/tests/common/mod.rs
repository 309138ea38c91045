//! Reference implementations written directly from the textbook definitions,
//! over bitmasks, sharing no code with the library beyond reading the rules.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rdg_core::{AtomSet, Coloring, Program, RuleId};

#[derive(Clone, Debug)]
pub struct Naive {
    pub atoms: usize,
    pub head: Vec<usize>,
    pub pos: Vec<u64>,
    pub neg: Vec<u64>,
}

pub fn mask(set: &AtomSet) -> u64 {
    set.iter().fold(0, |m, a| m | (1 << a.0))
}

pub fn unmask(m: u64) -> AtomSet {
    (0..64).filter(|i| m & (1 << i) != 0).map(rdg_core::AtomId).collect()
}

/// Subsets of `m`, including `0` and `m` itself.
pub fn submasks(m: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(m);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & m) };
        Some(cur)
    })
}

impl Naive {
    pub fn new(p: &Program) -> Naive {
        assert!(p.atom_count() <= 64);
        Naive {
            atoms: p.atom_count(),
            head: p.rules().iter().map(|r| r.head.0).collect(),
            pos: p.rules().iter().map(|r| mask(&r.pbody)).collect(),
            neg: p.rules().iter().map(|r| mask(&r.nbody)).collect(),
        }
    }

    pub fn rules(&self) -> usize {
        self.head.len()
    }

    pub fn all(&self) -> u64 {
        if self.atoms == 64 {
            u64::MAX
        } else {
            (1u64 << self.atoms) - 1
        }
    }

    /// Least model of the rules admitted by `keep`, ignoring negative bodies.
    fn least_model(&self, keep: impl Fn(usize) -> bool) -> u64 {
        let mut m = 0u64;
        loop {
            let mut next = m;
            for r in 0..self.rules() {
                if keep(r) && self.pos[r] & !m == 0 {
                    next |= 1 << self.head[r];
                }
            }
            if next == m {
                return m;
            }
            m = next;
        }
    }

    /// `Cn(Π^X)`.
    pub fn gamma(&self, x: u64) -> u64 {
        self.least_model(|r| self.neg[r] & x == 0)
    }

    pub fn is_answer_set(&self, x: u64) -> bool {
        self.gamma(x) == x
    }

    /// All answer sets. An answer set `X` is fixed by `X ∩ N`, where `N` holds
    /// the atoms occurring under `not`, so every subset `S` of `N` is tried as
    /// a guess for `Cn(Π^S)`.
    pub fn answer_sets(&self) -> Vec<u64> {
        let negs = self.neg.iter().fold(0u64, |m, &n| m | n);
        assert!(negs.count_ones() <= 24, "too many atoms for brute force");
        let mut out: Vec<u64> = submasks(negs)
            .map(|s| (s, self.gamma(s)))
            .filter(|&(s, x)| x & negs == s && self.is_answer_set(x))
            .map(|(_, x)| x)
            .collect();
        out.sort_unstable();
        out
    }

    pub fn generating(&self, x: u64) -> Vec<bool> {
        (0..self.rules())
            .map(|r| self.pos[r] & !x == 0 && self.neg[r] & x == 0)
            .collect()
    }

    /// Whether the total coloring `plus` is the set of generating rules of an
    /// answer set.
    pub fn admissible(&self, plus: &[bool]) -> bool {
        let x = (0..self.rules()).filter(|&r| plus[r]).fold(0u64, |m, r| m | (1 << self.head[r]));
        self.is_answer_set(x) && self.generating(x) == plus
    }

    /// Well-founded model by the alternating fixpoint.
    pub fn wfm(&self) -> (u64, u64) {
        let mut w = 0u64;
        loop {
            let next = self.gamma(self.gamma(w));
            if next == w {
                return (w, self.all() & !self.gamma(w));
            }
            w = next;
        }
    }

    /// Least fixpoint of Fitting's operator.
    pub fn fitting(&self) -> (u64, u64) {
        let (mut t, mut f) = (0u64, 0u64);
        loop {
            let mut nt = 0u64;
            let mut alive = 0u64;
            for r in 0..self.rules() {
                if self.pos[r] & !t == 0 && self.neg[r] & !f == 0 {
                    nt |= 1 << self.head[r];
                }
                if self.pos[r] & f == 0 && self.neg[r] & t == 0 {
                    alive |= 1 << self.head[r];
                }
            }
            let nf = self.all() & !alive;
            if (nt, nf) == (t, f) {
                return (t, f);
            }
            (t, f) = (nt, nf);
        }
    }

    pub fn unfounded(&self, x: u64, y: u64, z: u64) -> bool {
        (0..self.rules())
            .filter(|&r| z & (1 << self.head[r]) != 0)
            .all(|r| self.pos[r] & y != 0 || self.neg[r] & x != 0 || self.pos[r] & z != 0)
    }

    /// Union of all unfounded sets with respect to `(x, y)`.
    pub fn greatest_unfounded(&self, x: u64, y: u64) -> u64 {
        assert!(self.atoms <= 16);
        submasks(self.all())
            .filter(|&z| self.unfounded(x, y, z))
            .fold(0, |m, z| m | z)
    }

    /// Whether the rules in `w` can be applied one after another, each with
    /// its positive body produced by earlier ones.
    pub fn self_supporting(&self, w: u64) -> bool {
        let mut done = 0u64;
        let mut derived = 0u64;
        loop {
            let mut progress = false;
            for r in 0..self.rules() {
                if w & (1 << r) != 0 && done & (1 << r) == 0 && self.pos[r] & !derived == 0 {
                    done |= 1 << r;
                    derived |= 1 << self.head[r];
                    progress = true;
                }
            }
            if !progress {
                return done == w;
            }
        }
    }

    /// Union of the vertex sets of all support graphs avoiding `minus`.
    pub fn max_support(&self, minus: u64) -> u64 {
        assert!(self.rules() <= 16);
        let all_rules = (1u64 << self.rules()) - 1;
        submasks(all_rules & !minus)
            .filter(|&w| self.self_supporting(w))
            .fold(0, |m, w| m | w)
    }
}

pub fn rule_mask<'a>(rules: impl IntoIterator<Item = &'a RuleId>) -> u64 {
    rules.into_iter().fold(0, |m, r| m | (1 << r.0))
}

pub fn plus_mask(c: &Coloring) -> u64 {
    rule_mask(&c.plus())
}

pub fn minus_mask(c: &Coloring) -> u64 {
    rule_mask(&c.minus())
}

/// Answer sets as sorted lists of atom names, for comparisons across
/// representations.
pub fn named(p: &Program, sets: impl IntoIterator<Item = AtomSet>) -> BTreeSet<Vec<String>> {
    sets.into_iter()
        .map(|s| p.names(&s).into_iter().map(String::from).collect())
        .collect()
}

/// A pseudo-random coloring: each rule uncolored, ⊕ or ⊖ by the bits of a
/// simple generator.
pub fn random_coloring(n: usize, seed: u64) -> Coloring {
    let mut state = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1;
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for r in 0..n {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        match state % 3 {
            0 => {}
            1 => plus.push(RuleId(r)),
            _ => minus.push(RuleId(r)),
        }
    }
    Coloring::from_sets(n, plus, minus).expect("sides are disjoint")
}

/// A sub-coloring of `c`: each colored rule is kept with probability 1/2.
pub fn weaken(c: &Coloring, seed: u64) -> Coloring {
    let mut state = seed.wrapping_mul(0xd1b5_4a32_d192_ed03) | 1;
    let mut keep = |_: &RuleId| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state & 1 == 0
    };
    let plus: Vec<RuleId> = c.plus().into_iter().filter(|r| keep(r)).collect();
    let minus: Vec<RuleId> = c.minus().into_iter().filter(|r| keep(r)).collect();
    Coloring::from_sets(c.len(), plus, minus).expect("sides are disjoint")
}

pub fn total_coloring(n: usize, plus_bits: u64) -> Coloring {
    let plus = (0..n).filter(|r| plus_bits & (1 << r) != 0).map(RuleId);
    let minus = (0..n).filter(|r| plus_bits & (1 << r) == 0).map(RuleId);
    Coloring::from_sets(n, plus, minus).expect("sides are disjoint")
}
