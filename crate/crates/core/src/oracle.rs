//! Brute-force ground truth by direct simulation of the tree action.
//!
//! Everything here enumerates whole tree levels and is exponential in the
//! level; [`OracleLimits`] bounds the number of words per level.

use crate::automaton::InitialAutomaton;
use crate::error::{Error, Result};
use crate::labels::LabeledAutomaton;
use crate::minimize::minimize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    /// Largest `k^n` any oracle call will enumerate.
    pub max_words: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_words: 1_000_000,
        }
    }
}

impl OracleLimits {
    fn words(&self, k: usize, level: usize) -> Result<usize> {
        let words = u32::try_from(level)
            .ok()
            .and_then(|n| (k as u64).checked_pow(n))
            .filter(|&w| w <= self.max_words)
            .ok_or(Error::LevelTooLarge {
                level,
                cap: self.max_words,
            })?;
        Ok(words as usize)
    }
}

/// Orbit structure of `⟨g⟩` on the words of one length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelOrbitReport {
    pub level: usize,
    pub orbit_count: usize,
    pub max_orbit: usize,
    pub transitive: bool,
}

/// Words of length `level` are indexed in base `k`, first symbol most significant.
/// Returns `perm` with `perm[x] = index of g(word x)`, for every state as the
/// initial one: `q(a u) = λ_q(a) q_a(u)` applied one level at a time.
struct LevelTables<'a> {
    g: &'a InitialAutomaton,
    level: usize,
    /// `tables[q][x]`
    tables: Vec<Vec<u32>>,
}

impl<'a> LevelTables<'a> {
    fn new(g: &'a InitialAutomaton) -> Self {
        Self {
            g,
            level: 0,
            tables: vec![vec![0]; g.num_states()],
        }
    }

    fn descend(&mut self) {
        let m = self.g.automaton();
        let k = m.alphabet_size();
        let block = self.tables[0].len();
        let next = (0..m.num_states())
            .map(|q| {
                let out = m.output(q);
                let mut table = Vec::with_capacity(k * block);
                for a in 0..k {
                    let head = (out.apply(a) * block) as u32;
                    table.extend(self.tables[m.next(q, a)].iter().map(|&x| head + x));
                }
                table
            })
            .collect();
        self.tables = next;
        self.level += 1;
    }

    fn permutation(&self) -> &[u32] {
        &self.tables[self.g.initial()]
    }
}

/// The permutation induced by `g` on the `k^level` words of length `level`.
pub fn level_permutation(
    g: &InitialAutomaton,
    level: usize,
    limits: &OracleLimits,
) -> Result<Vec<u32>> {
    limits.words(g.alphabet_size(), level)?;
    let mut t = LevelTables::new(g);
    while t.level < level {
        t.descend();
    }
    Ok(t.permutation().to_vec())
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
    }
}

/// Sizes of the orbits (cycles) of a permutation, in order of their least element.
pub fn orbit_sizes(perm: &[u32]) -> Vec<usize> {
    let mut uf = UnionFind::new(perm.len());
    for (x, &y) in perm.iter().enumerate() {
        uf.union(x as u32, y);
    }
    let roots: Vec<u32> = (0..perm.len() as u32)
        .filter(|&x| uf.find(x) == x)
        .collect();
    roots
        .iter()
        .map(|&x| uf.size[x as usize] as usize)
        .collect()
}

fn report(level: usize, perm: &[u32]) -> LevelOrbitReport {
    let sizes = orbit_sizes(perm);
    LevelOrbitReport {
        level,
        orbit_count: sizes.len(),
        max_orbit: sizes.iter().copied().max().unwrap_or(0),
        transitive: sizes.len() == 1,
    }
}

pub fn level_transitive(g: &InitialAutomaton, level: usize) -> Result<LevelOrbitReport> {
    level_transitive_with(g, level, &OracleLimits::default())
}

pub fn level_transitive_with(
    g: &InitialAutomaton,
    level: usize,
    limits: &OracleLimits,
) -> Result<LevelOrbitReport> {
    Ok(report(level, &level_permutation(g, level, limits)?))
}

/// Reports for every level `0..=max_level`, sharing the work between levels.
pub fn level_reports(
    g: &InitialAutomaton,
    max_level: usize,
    limits: &OracleLimits,
) -> Result<Vec<LevelOrbitReport>> {
    limits.words(g.alphabet_size(), max_level)?;
    let mut t = LevelTables::new(g);
    let mut reports = vec![report(0, t.permutation())];
    while t.level < max_level {
        t.descend();
        reports.push(report(t.level, t.permutation()));
    }
    Ok(reports)
}

pub fn abelian_coefficient_bruteforce(
    g: &LabeledAutomaton,
    level: usize,
    component: usize,
) -> Result<u64> {
    abelian_coefficient_bruteforce_with(g, level, component, &OracleLimits::default())
}

/// `Σ_{|w| = level} label(g_w)` by enumerating every word of the given length.
pub fn abelian_coefficient_bruteforce_with(
    g: &LabeledAutomaton,
    level: usize,
    component: usize,
    limits: &OracleLimits,
) -> Result<u64> {
    let modulus = g.labels().check_component(component)?;
    let element = g.element();
    limits.words(element.alphabet_size(), level)?;
    let m = element.automaton();
    let mut sum: u64 = 0;
    // depth-first walk over all prefixes
    let mut stack = vec![(element.initial(), 0usize)];
    while let Some((q, depth)) = stack.pop() {
        if depth == level {
            sum = (sum + g.labels().label(q)[component]) % modulus;
            continue;
        }
        for a in 0..m.alphabet_size() {
            stack.push((m.next(q, a), depth + 1));
        }
    }
    Ok(sum)
}

/// `h g h^{-1}`, minimized.
pub fn conjugate_by(h: &InitialAutomaton, g: &InitialAutomaton) -> Result<InitialAutomaton> {
    Ok(minimize(&h.compose(g)?.compose(&h.inverse())?))
}
