//! Invertible Mealy automata over the alphabet `{0, .., k-1}` and the tree
//! automorphisms computed by their states.
//!
//! A state `q` acts on words by `q(a u) = λ_q(a) q_a(u)`: the first symbol is
//! consumed at the root, rewritten by the state's output permutation, and the
//! remainder of the word is handed to the section `q_a = δ(q, a)`.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::permutation::Permutation;

/// A word over the alphabet, first symbol at the root.
pub type Word = Vec<usize>;

/// Alphabet, named states, transition table and per-state output permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealyAutomaton {
    k: usize,
    names: Vec<String>,
    delta: Vec<Vec<usize>>,
    out: Vec<Permutation>,
}

pub(crate) fn valid_state_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl MealyAutomaton {
    /// Builds an automaton, checking every structural invariant.
    pub fn new(
        k: usize,
        names: Vec<String>,
        delta: Vec<Vec<usize>>,
        out: Vec<Permutation>,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidAutomaton(msg));
        if k < 2 {
            return invalid(format!("alphabet size must be at least 2, got {k}"));
        }
        let n = names.len();
        if n == 0 {
            return invalid("automaton has no states".into());
        }
        if delta.len() != n || out.len() != n {
            return invalid(format!(
                "{n} names but {} transition rows and {} output rows",
                delta.len(),
                out.len()
            ));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !valid_state_name(name) {
                return invalid(format!("bad state name `{name}`"));
            }
            if !seen.insert(name.as_str()) {
                return invalid(format!("duplicate state `{name}`"));
            }
        }
        for (q, (row, perm)) in delta.iter().zip(&out).enumerate() {
            if row.len() != k || row.iter().any(|&s| s >= n) {
                return invalid(format!("state `{}`: bad transition row {row:?}", names[q]));
            }
            if perm.len() != k {
                return Err(Error::BadPermutation(names[q].clone()));
            }
        }
        Ok(Self {
            k,
            names,
            delta,
            out,
        })
    }

    /// The one-state automaton computing the identity on words over `k` letters.
    pub fn identity(k: usize) -> Self {
        Self::new(
            k,
            vec!["e".into()],
            vec![vec![0; k]],
            vec![Permutation::identity(k)],
        )
        .expect("identity automaton is well formed")
    }

    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, q: usize) -> &str {
        &self.names[q]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `δ(q, a)`, the section of state `q` at symbol `a`.
    #[inline]
    pub fn next(&self, q: usize, a: usize) -> usize {
        self.delta[q][a]
    }

    pub fn transitions(&self, q: usize) -> &[usize] {
        &self.delta[q]
    }

    /// `λ_q`, the root permutation of state `q`.
    pub fn output(&self, q: usize) -> &Permutation {
        &self.out[q]
    }

    /// States reachable from `start`, in breadth-first order (symbols ascending).
    pub fn reachable_from(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for &s in &self.delta[q] {
                if !std::mem::replace(&mut seen[s], true) {
                    queue.push_back(s);
                }
            }
        }
        order
    }

    /// Automaton restricted to `states` (in that order), renumbered densely.
    /// Every transition out of `states` must land in `states`.
    pub(crate) fn restrict(&self, states: &[usize]) -> (Self, Vec<Option<usize>>) {
        let mut index = vec![None; self.num_states()];
        for (i, &q) in states.iter().enumerate() {
            index[q] = Some(i);
        }
        let names = states.iter().map(|&q| self.names[q].clone()).collect();
        let delta = states
            .iter()
            .map(|&q| {
                self.delta[q]
                    .iter()
                    .map(|&s| index[s].expect("state set closed under transitions"))
                    .collect()
            })
            .collect();
        let out = states.iter().map(|&q| self.out[q].clone()).collect();
        (
            Self {
                k: self.k,
                names,
                delta,
                out,
            },
            index,
        )
    }

    pub fn with_initial(self, initial: usize) -> Result<InitialAutomaton> {
        InitialAutomaton::new(self, initial)
    }
}

/// A Mealy automaton with a distinguished state; computes one tree automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialAutomaton {
    automaton: MealyAutomaton,
    initial: usize,
}

impl InitialAutomaton {
    pub fn new(automaton: MealyAutomaton, initial: usize) -> Result<Self> {
        if initial >= automaton.num_states() {
            return Err(Error::InvalidAutomaton(format!(
                "initial state {initial} out of range"
            )));
        }
        Ok(Self { automaton, initial })
    }

    pub fn identity(k: usize) -> Self {
        Self {
            automaton: MealyAutomaton::identity(k),
            initial: 0,
        }
    }

    pub fn automaton(&self) -> &MealyAutomaton {
        &self.automaton
    }

    pub fn into_automaton(self) -> MealyAutomaton {
        self.automaton
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn alphabet_size(&self) -> usize {
        self.automaton.k
    }

    pub fn num_states(&self) -> usize {
        self.automaton.num_states()
    }

    fn check_word(&self, w: &[usize]) -> Result<()> {
        match w.iter().position(|&a| a >= self.automaton.k) {
            Some(position) => Err(Error::BadSymbol { position }),
            None => Ok(()),
        }
    }

    /// Image of `w` under the automorphism.
    pub fn apply(&self, w: &[usize]) -> Result<Word> {
        self.check_word(w)?;
        let mut q = self.initial;
        Ok(w.iter()
            .map(|&a| {
                let b = self.automaton.out[q].apply(a);
                q = self.automaton.delta[q][a];
                b
            })
            .collect())
    }

    /// State reached from the initial state by reading `w`.
    pub fn section_state(&self, w: &[usize]) -> Result<usize> {
        self.check_word(w)?;
        Ok(w.iter()
            .fold(self.initial, |q, &a| self.automaton.delta[q][a]))
    }

    /// The section `g_w`: same automaton, initial state moved along `w`.
    pub fn section(&self, w: &[usize]) -> Result<Self> {
        let initial = self.section_state(w)?;
        Ok(Self {
            automaton: self.automaton.clone(),
            initial,
        })
    }

    /// The inverse automorphism, obtained by swapping input and output on every edge.
    /// State `q` of the result computes the inverse of state `q` of `self`.
    pub fn inverse(&self) -> Self {
        let m = &self.automaton;
        let out: Vec<Permutation> = m.out.iter().map(Permutation::inverse).collect();
        let delta = (0..m.num_states())
            .map(|q| (0..m.k).map(|b| m.delta[q][out[q].apply(b)]).collect())
            .collect();
        Self {
            automaton: MealyAutomaton {
                k: m.k,
                names: m.names.clone(),
                delta,
                out,
            },
            initial: self.initial,
        }
    }

    /// `w -> self(other(w))`, keeping only reachable pairs of the product.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(self.compose_with_origin(other)?.0)
    }

    /// Like [`compose`](Self::compose), also returning the pair `(p, q)` of
    /// states behind every state of the result.
    pub fn compose_with_origin(&self, other: &Self) -> Result<(Self, Vec<(usize, usize)>)> {
        let (f, g) = (&self.automaton, &other.automaton);
        if f.k != g.k {
            return Err(Error::AlphabetMismatch(f.k, g.k));
        }
        let k = f.k;
        let start = (self.initial, other.initial);
        let mut index: HashMap<(usize, usize), usize> = HashMap::from([(start, 0)]);
        let mut pairs = vec![start];
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut out = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let next = (f.delta[p][g.out[q].apply(a)], g.delta[q][a]);
                let id = *index.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                row.push(id);
            }
            delta.push(row);
            out.push(f.out[p].compose(&g.out[q]));
            i += 1;
        }
        let names = pair_names(&pairs, f, g);
        let automaton = MealyAutomaton {
            k,
            names,
            delta,
            out,
        };
        Ok((
            Self {
                automaton,
                initial: 0,
            },
            pairs,
        ))
    }

    /// Checks that `other` has the same alphabet.
    pub(crate) fn same_alphabet(&self, other: &Self) -> Result<()> {
        if self.alphabet_size() != other.alphabet_size() {
            return Err(Error::AlphabetMismatch(
                self.alphabet_size(),
                other.alphabet_size(),
            ));
        }
        Ok(())
    }
}

/// Names `p_q` for product states, disambiguated with a numeric suffix on collision.
fn pair_names(pairs: &[(usize, usize)], f: &MealyAutomaton, g: &MealyAutomaton) -> Vec<String> {
    let mut used = HashSet::new();
    pairs
        .iter()
        .map(|&(p, q)| {
            let base = format!("{}_{}", f.names[p], g.names[q]);
            let mut name = base.clone();
            let mut n = 2;
            while !used.insert(name.clone()) {
                name = format!("{base}_{n}");
                n += 1;
            }
            name
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    /// a = (01)(e, a), e = identity
    fn odometer() -> InitialAutomaton {
        MealyAutomaton::new(
            2,
            vec!["a".into(), "e".into()],
            vec![vec![1, 0], vec![1, 1]],
            vec![perm(&[1, 0]), perm(&[0, 1])],
        )
        .unwrap()
        .with_initial(0)
        .unwrap()
    }

    /// a = (a, b), b = (01)(a, b)
    fn lamplighter(initial: usize) -> InitialAutomaton {
        MealyAutomaton::new(
            2,
            vec!["a".into(), "b".into()],
            vec![vec![0, 1], vec![0, 1]],
            vec![perm(&[0, 1]), perm(&[1, 0])],
        )
        .unwrap()
        .with_initial(initial)
        .unwrap()
    }

    #[test]
    fn odometer_action() {
        let a = odometer();
        assert_eq!(a.apply(&[0]).unwrap(), vec![1]);
        assert_eq!(a.apply(&[1, 1]).unwrap(), vec![0, 0]);
        assert_eq!(a.apply(&[1, 1, 0]).unwrap(), vec![0, 0, 1]);
        assert_eq!(a.apply(&[]).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn identity_action() {
        let e = InitialAutomaton::identity(2);
        assert_eq!(e.apply(&[0, 1, 0, 1]).unwrap(), vec![0, 1, 0, 1]);
    }

    #[test]
    fn bad_symbol_position() {
        assert_eq!(
            odometer().apply(&[0, 1, 2]),
            Err(Error::BadSymbol { position: 2 })
        );
        assert_eq!(
            odometer().section(&[3]),
            Err(Error::BadSymbol { position: 0 })
        );
    }

    #[test]
    fn sections() {
        assert_eq!(lamplighter(0).section(&[1]).unwrap().initial(), 1);
        assert_eq!(odometer().section(&[]).unwrap(), odometer());
        let e = odometer().section(&[0]).unwrap();
        assert_eq!(e.automaton().name(e.initial()), "e");
        assert!(e.automaton().output(e.initial()).is_identity());
    }

    #[test]
    fn inverse_of_odometer() {
        let inv = odometer().inverse();
        assert_eq!(inv.apply(&[0, 0]).unwrap(), vec![1, 1]);
        for w in [[0, 0, 0], [1, 0, 1], [1, 1, 1], [0, 1, 1]] {
            assert_eq!(
                inv.apply(&odometer().apply(&w).unwrap()).unwrap(),
                w.to_vec()
            );
        }
    }

    #[test]
    fn compose_adds_twice() {
        let a = odometer();
        let aa = a.compose(&a).unwrap();
        assert_eq!(aa.apply(&[0, 0]).unwrap(), vec![0, 1]);
        assert!(aa.num_states() <= 4);
    }

    #[test]
    fn compose_rejects_alphabet_mismatch() {
        let e3 = InitialAutomaton::identity(3);
        assert_eq!(odometer().compose(&e3), Err(Error::AlphabetMismatch(2, 3)));
    }

    #[test]
    fn compose_names_are_unique_and_valid() {
        let a = odometer();
        let (c, pairs) = a.compose(&a).unwrap().compose_with_origin(&a).unwrap();
        let names: HashSet<_> = c.automaton().names().iter().collect();
        assert_eq!(names.len(), pairs.len());
        assert!(c.automaton().names().iter().all(|n| valid_state_name(n)));
    }

    #[test]
    fn constructor_rejects_bad_tables() {
        let r = MealyAutomaton::new(2, vec!["a".into()], vec![vec![0, 1]], vec![perm(&[0, 1])]);
        assert!(matches!(r, Err(Error::InvalidAutomaton(_))));
        let r = MealyAutomaton::new(
            2,
            vec!["a".into()],
            vec![vec![0, 0]],
            vec![perm(&[0, 1, 2])],
        );
        assert_eq!(r, Err(Error::BadPermutation("a".into())));
        let r = MealyAutomaton::new(1, vec!["a".into()], vec![vec![0]], vec![perm(&[0])]);
        assert!(r.is_err());
    }
}
