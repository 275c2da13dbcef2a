//! Minimization and behavioural equivalence of initial automata.
//!
//! Two states are equivalent iff they compute the same map on all words. The
//! coarsest such partition is found by refinement: start from classes of equal
//! output permutation, then split by the classes of the successors until stable.

use std::collections::HashMap;
use std::hash::Hash;

use crate::automaton::{InitialAutomaton, MealyAutomaton};
use crate::error::Result;
use crate::permutation::Permutation;

/// Dense class ids numbered by first appearance.
fn number_by_first_appearance<K: Hash + Eq>(
    keys: impl IntoIterator<Item = K>,
) -> (Vec<usize>, usize) {
    let mut ids = HashMap::new();
    let classes = keys
        .into_iter()
        .map(|key| {
            let next = ids.len();
            *ids.entry(key).or_insert(next)
        })
        .collect();
    (classes, ids.len())
}

/// Coarsest partition of states `0..n` compatible with outputs and transitions.
fn refine(outputs: &[&Permutation], delta: &[Vec<usize>]) -> Vec<usize> {
    let (mut class, mut count) = number_by_first_appearance(outputs.iter().copied());
    loop {
        let signatures = delta.iter().enumerate().map(|(q, row)| {
            let succ: Vec<usize> = row.iter().map(|&s| class[s]).collect();
            (class[q], succ)
        });
        let (next, next_count) = number_by_first_appearance(signatures);
        class = next;
        if next_count == count {
            return class;
        }
        count = next_count;
    }
}

/// Minimal initial automaton computing the same map as `g`, plus, for each of
/// its states, the original state it was taken from.
pub fn minimize_with_origin(g: &InitialAutomaton) -> (InitialAutomaton, Vec<usize>) {
    let m = g.automaton();
    let reachable = m.reachable_from(g.initial());
    let (sub, _) = m.restrict(&reachable);
    let outputs: Vec<&Permutation> = (0..sub.num_states()).map(|q| sub.output(q)).collect();
    let delta: Vec<Vec<usize>> = (0..sub.num_states())
        .map(|q| sub.transitions(q).to_vec())
        .collect();
    let class = refine(&outputs, &delta);

    // class ids already follow breadth-first order from the initial state
    let classes = class.iter().copied().max().map_or(0, |c| c + 1);
    let mut rep = vec![usize::MAX; classes];
    for (q, &c) in class.iter().enumerate() {
        if rep[c] == usize::MAX {
            rep[c] = q;
        }
    }
    let names = rep.iter().map(|&q| sub.name(q).to_owned()).collect();
    let new_delta = rep
        .iter()
        .map(|&q| delta[q].iter().map(|&s| class[s]).collect())
        .collect();
    let out = rep.iter().map(|&q| outputs[q].clone()).collect();
    let automaton = MealyAutomaton::new(m.alphabet_size(), names, new_delta, out)
        .expect("quotient of a valid automaton is valid");
    let origin = rep.iter().map(|&q| reachable[q]).collect();
    (
        InitialAutomaton::new(automaton, class[0]).expect("initial class exists"),
        origin,
    )
}

/// Minimal initial automaton computing the same map as `g`.
pub fn minimize(g: &InitialAutomaton) -> InitialAutomaton {
    minimize_with_origin(g).0
}

/// Whether `f` and `g` compute the same map on every word.
pub fn equivalent(f: &InitialAutomaton, g: &InitialAutomaton) -> Result<bool> {
    f.same_alphabet(g)?;
    let (fm, gm) = (f.automaton(), g.automaton());
    let offset = fm.num_states();
    let mut outputs: Vec<&Permutation> = Vec::with_capacity(offset + gm.num_states());
    let mut delta = Vec::with_capacity(offset + gm.num_states());
    for q in 0..fm.num_states() {
        outputs.push(fm.output(q));
        delta.push(fm.transitions(q).to_vec());
    }
    for q in 0..gm.num_states() {
        outputs.push(gm.output(q));
        delta.push(gm.transitions(q).iter().map(|&s| s + offset).collect());
    }
    let class = refine(&outputs, &delta);
    Ok(class[f.initial()] == class[offset + g.initial()])
}
