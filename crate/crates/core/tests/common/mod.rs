#![allow(dead_code)]

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use wreath_core::{InitialAutomaton, MealyAutomaton, Permutation};

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("q{i}")).collect()
}

/// Random automaton over `k` letters with `n` states. Root permutations are
/// shifts `i -> i + e` when `cyclic`, arbitrary otherwise.
pub fn random_automaton<R: Rng>(rng: &mut R, k: usize, n: usize, cyclic: bool) -> InitialAutomaton {
    let delta = (0..n)
        .map(|_| (0..k).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let out = (0..n)
        .map(|_| {
            if cyclic {
                Permutation::shift(k, rng.gen_range(0..k))
            } else {
                let mut images: Vec<usize> = (0..k).collect();
                images.shuffle(rng);
                Permutation::new(images).unwrap()
            }
        })
        .collect();
    let initial = rng.gen_range(0..n);
    MealyAutomaton::new(k, names(n), delta, out)
        .unwrap()
        .with_initial(initial)
        .unwrap()
}

pub fn random_word<R: Rng>(rng: &mut R, k: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..k)).collect()
}

/// proptest strategy for automata with `k` letters and `1..=max_states` states.
pub fn automaton_with(
    k: usize,
    max_states: usize,
    cyclic: bool,
) -> impl Strategy<Value = InitialAutomaton> {
    (1..=max_states).prop_flat_map(move |n| {
        let perm = if cyclic {
            (0..k).prop_map(move |e| Permutation::shift(k, e)).boxed()
        } else {
            Just((0..k).collect::<Vec<usize>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::new(v).unwrap())
                .boxed()
        };
        (
            prop::collection::vec(prop::collection::vec(0..n, k), n),
            prop::collection::vec(perm, n),
            0..n,
        )
            .prop_map(move |(delta, out, init)| {
                MealyAutomaton::new(k, names(n), delta, out)
                    .unwrap()
                    .with_initial(init)
                    .unwrap()
            })
    })
}

pub fn automaton(
    max_k: usize,
    max_states: usize,
    cyclic: bool,
) -> impl Strategy<Value = InitialAutomaton> {
    (2..=max_k).prop_flat_map(move |k| automaton_with(k, max_states, cyclic))
}

pub fn word(k: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..k, 0..=max_len)
}
