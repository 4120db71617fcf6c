//! The label poset against two-sided ideals computed from diagrams.

use std::collections::{HashSet, VecDeque};

use tonalg::algebra::generators;
use tonalg::diagram::builders;
use tonalg::gamma::{gamma_set, poset_leq, ToneVector};
use tonalg::Diagram;

/// Every diagram reachable from `seed` by multiplying with generators on
/// either side.
fn ideal_closure(seed: Diagram, gens: &[Diagram]) -> HashSet<Diagram> {
    let mut seen = HashSet::from([seed.clone()]);
    let mut queue = VecDeque::from([seed]);
    while let Some(d) = queue.pop_front() {
        for g in gens {
            for (_, x) in [g.compose(&d).unwrap(), d.compose(g).unwrap()] {
                if seen.insert(x.clone()) {
                    queue.push_back(x);
                }
            }
        }
    }
    seen
}

fn check(l: usize, n: usize) {
    let gens = generators(l, n).unwrap();
    let gamma = gamma_set(l, n).unwrap();
    let pre: Vec<Diagram> = gamma.iter().map(|m| builders::standard_preidempotent(m, n).unwrap()).collect();
    for (b, ab) in gamma.iter().zip(&pre) {
        let ideal = ideal_closure(ab.clone(), &gens);
        let vectors: HashSet<ToneVector> = ideal.iter().map(|d| d.prop_vector(l).unwrap()).collect();
        for (a, aa) in gamma.iter().zip(&pre) {
            let by_diagrams = ideal.contains(aa);
            assert_eq!(by_diagrams, poset_leq(a, b).unwrap(), "l={l} n={n} a={a} b={b}");
            assert_eq!(by_diagrams, vectors.contains(a), "l={l} n={n} a={a} b={b}");
        }
    }
}

#[test]
fn poset_matches_ideals_tone_one() {
    for n in 1..=5 {
        check(1, n);
    }
}

#[test]
fn poset_matches_ideals_tone_two() {
    for n in 1..=6 {
        check(2, n);
    }
}

#[test]
fn poset_matches_ideals_tone_three() {
    for n in 1..=6 {
        check(3, n);
    }
}
