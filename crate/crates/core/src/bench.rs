//! Instance generators.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::BenchError;
use crate::program::Program;

fn hc(u: usize, v: usize) -> String {
    format!("hc_{u}_{v}")
}

/// Hamiltonian cycles of the complete directed graph on nodes `1..=n`.
///
/// Every edge is guessed by an even loop `hc_u_v :- not nhc_u_v.
/// nhc_u_v :- not hc_u_v.`; constraints allow at most one chosen edge out of
/// and into each node; every node must be reachable from node 1 and node 1
/// must be entered again. Each cycle yields exactly one answer set, so there
/// are `(n-1)!` of them.
pub fn gen_hc_complete(n: usize) -> Result<Program, BenchError> {
    if n < 3 {
        return Err(BenchError::TooFewNodes(n));
    }
    let mut b = Program::builder();
    let add = |res: Result<bool, _>| {
        res.expect("generated names are valid");
    };
    let nodes = 1..=n;
    for u in nodes.clone() {
        for v in nodes.clone().filter(|&v| v != u) {
            let (e, ne) = (hc(u, v), format!("nhc_{u}_{v}"));
            add(b.rule(&e, &[], &[&ne]));
            add(b.rule(&ne, &[], &[&e]));
        }
    }
    for u in nodes.clone() {
        for v in nodes.clone().filter(|&v| v != u) {
            for w in nodes.clone().filter(|&w| w != u && w > v) {
                add(b.constraint(&[&hc(u, v), &hc(u, w)], &[]));
                add(b.constraint(&[&hc(v, u), &hc(w, u)], &[]));
            }
        }
    }
    add(b.rule("reach_1", &[], &[]));
    for v in nodes.clone().filter(|&v| v != 1) {
        let rv = format!("reach_{v}");
        for u in nodes.clone().filter(|&u| u != v) {
            add(b.rule(&rv, &[&format!("reach_{u}"), &hc(u, v)], &[]));
        }
    }
    for u in nodes.clone().filter(|&u| u != 1) {
        add(b.rule("in1", &[&hc(u, 1)], &[]));
    }
    add(b.constraint(&[], &["in1"]));
    for v in nodes.filter(|&v| v != 1) {
        add(b.constraint(&[], &[&format!("reach_{v}")]));
    }
    Ok(b.build())
}

/// A random program over atoms `a1..a<natoms>`, the same for equal arguments.
///
/// Each rule gets a uniform head, and positive and negative bodies of uniform
/// size up to the given maxima, each sampled without replacement. Duplicate
/// rules are dropped, so the result may have fewer than `nrules` rules.
pub fn gen_random(seed: u64, natoms: usize, nrules: usize, max_pbody: usize, max_nbody: usize) -> Program {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (1..=natoms).map(|i| format!("a{i}")).collect();
    let mut b = Program::builder();
    let body = |rng: &mut ChaCha8Rng, max: usize| -> Vec<&str> {
        let k = rng.gen_range(0..=max.min(natoms));
        sample(rng, natoms, k).into_iter().map(|i| names[i].as_str()).collect()
    };
    for _ in 0..nrules {
        let head = names[rng.gen_range(0..natoms)].clone();
        let pos = body(&mut rng, max_pbody);
        let neg = body(&mut rng, max_nbody);
        b.rule(&head, &pos, &neg).expect("generated names are valid");
    }
    b.build()
}

/// Program number `seed` of a corpus with up to `max_atoms` atoms, up to
/// `max_rules` rules and bodies of up to two atoms on each side.
pub fn corpus_program(seed: u64, max_atoms: usize, max_rules: usize) -> Program {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let natoms = rng.gen_range(1..=max_atoms);
    let nrules = rng.gen_range(1..=max_rules);
    let max_pbody = rng.gen_range(0..=2);
    let max_nbody = rng.gen_range(0..=2);
    gen_random(seed, natoms, nrules, max_pbody, max_nbody)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_is_deterministic() {
        let a = gen_random(1, 4, 6, 2, 2);
        let b = gen_random(1, 4, 6, 2, 2);
        assert_eq!(a.to_string(), b.to_string());
        assert!(a.len() <= 6);
        assert_ne!(gen_random(2, 4, 6, 2, 2).to_string(), a.to_string());
    }

    #[test]
    fn single_fact() {
        for seed in 0..5 {
            let p = gen_random(seed, 1, 1, 0, 0);
            assert_eq!(p.to_string(), "a1.\n");
        }
    }

    #[test]
    fn corpus_bounds() {
        for seed in 0..200 {
            let p = corpus_program(seed, 8, 14);
            assert!(p.atom_count() <= 8 && p.len() <= 14 && !p.is_empty());
        }
    }

    #[test]
    fn hc_shape() {
        assert_eq!(gen_hc_complete(2).unwrap_err(), BenchError::TooFewNodes(2));
        let p = gen_hc_complete(3).unwrap();
        let text = p.to_string();
        assert!(text.contains("hc_1_2 :- not nhc_1_2."));
        assert!(text.contains(":- not in1."));
        assert!(text.contains(":- hc_1_2, hc_1_3."));
        assert_eq!(Program::parse(&text).unwrap().len(), p.len());
    }
}
