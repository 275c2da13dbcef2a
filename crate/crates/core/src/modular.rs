//! Linear algebra over `Z/m` driving the abelianization coefficient stream.

use std::collections::HashMap;

use num_integer::Integer;

use crate::automaton::MealyAutomaton;
use crate::error::{Error, Result};
use crate::labels::AbelianLabels;

/// Upper bound on distinct vectors visited by cycle detection.
pub const DEFAULT_CYCLE_CAP: usize = 10_000_000;

/// `gcd(c, m) = 1`.
pub fn is_unit(c: u64, m: u64) -> bool {
    c.gcd(&m) == 1
}

/// Inverse of `a` modulo `m`, if `a` is a unit.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let egcd = (a as i128 % m as i128).extended_gcd(&(m as i128));
    (egcd.gcd == 1).then(|| egcd.x.rem_euclid(m as i128) as u64)
}

pub fn is_prime(m: u64) -> bool {
    m >= 2
        && (2..)
            .take_while(|d| d * d <= m)
            .all(|d| !m.is_multiple_of(d))
}

/// Entry `(r, s)` counts the symbols `a` with `δ(r, a) = s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: Vec<Vec<u64>>,
}

impl IncidenceMatrix {
    pub fn of(m: &MealyAutomaton) -> Self {
        let n = m.num_states();
        let rows = (0..n)
            .map(|r| {
                let mut row = vec![0; n];
                for &s in m.transitions(r) {
                    row[s] += 1;
                }
                row
            })
            .collect();
        Self { rows }
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(Self { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn entry(&self, r: usize, s: usize) -> u64 {
        self.rows[r][s]
    }

    /// `A v mod m`.
    pub fn mul_vec_mod(&self, v: &[u64], m: u64) -> Vec<u64> {
        self.rows
            .iter()
            .map(|row| {
                let sum: u128 = row
                    .iter()
                    .zip(v)
                    .map(|(&a, &x)| a as u128 * x as u128)
                    .sum();
                (sum % m as u128) as u64
            })
            .collect()
    }

    /// `diag(self, other)`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let (m, n) = (self.dim(), other.dim());
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().copied().chain(std::iter::repeat_n(0, n)).collect())
            .chain(
                other
                    .rows
                    .iter()
                    .map(|r| std::iter::repeat_n(0, m).chain(r.iter().copied()).collect()),
            )
            .collect();
        Self { rows }
    }
}

/// A vector of residues modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModVector {
    modulus: u64,
    entries: Vec<u64>,
}

impl ModVector {
    /// Entries are reduced into `0..modulus`.
    pub fn new(modulus: u64, entries: Vec<u64>) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        let entries = entries.into_iter().map(|x| x % modulus).collect();
        Self { modulus, entries }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(self; other)`.
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus);
        Self {
            modulus: self.modulus,
            entries: self.entries.iter().chain(&other.entries).copied().collect(),
        }
    }
}

/// The label vector `(label_component(q))_q`.
pub fn abelian_vector(labels: &AbelianLabels, component: usize) -> Result<ModVector> {
    let m = labels.check_component(component)?;
    Ok(ModVector::new(
        m,
        (0..labels.num_states())
            .map(|q| labels.label(q)[component])
            .collect(),
    ))
}

/// A sequence of residues that is periodic after a finite preperiod.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventuallyPeriodicStream {
    modulus: u64,
    preperiod: Vec<u64>,
    period: Vec<u64>,
}

impl EventuallyPeriodicStream {
    pub fn new(modulus: u64, preperiod: Vec<u64>, period: Vec<u64>) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        Self {
            modulus,
            preperiod,
            period,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    pub fn term(&self, j: usize) -> u64 {
        match j.checked_sub(self.preperiod.len()) {
            None => self.preperiod[j],
            Some(i) => self.period[i % self.period.len()],
        }
    }

    pub fn terms(&self, count: usize) -> Vec<u64> {
        (0..count).map(|j| self.term(j)).collect()
    }

    /// Least index whose term satisfies `pred`. Scanning the preperiod and one
    /// copy of the period covers every residue the stream takes.
    pub fn first_index(&self, pred: impl Fn(u64) -> bool) -> Option<usize> {
        self.preperiod
            .iter()
            .chain(&self.period)
            .position(|&c| pred(c))
    }
}

/// Iterates `x -> step(x)` from `start` until a vector repeats and records
/// `observe(x)` for every visited vector.
pub(crate) fn observed_orbit(
    start: Vec<u64>,
    modulus: u64,
    cap: usize,
    step: impl Fn(&[u64]) -> Vec<u64>,
    observe: impl Fn(&[u64]) -> u64,
) -> Result<EventuallyPeriodicStream> {
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut terms = Vec::new();
    let mut x = start;
    loop {
        if let Some(&r) = seen.get(&x) {
            let period = terms.split_off(r);
            return Ok(EventuallyPeriodicStream::new(modulus, terms, period));
        }
        if seen.len() >= cap {
            return Err(Error::CycleCapExceeded(cap));
        }
        terms.push(observe(&x));
        let next = step(&x);
        seen.insert(x, terms.len() - 1);
        x = next;
    }
}

/// The stream `j -> (A^j v)_init mod m`.
pub fn coefficient_stream(
    a: &IncidenceMatrix,
    v: &ModVector,
    init: usize,
) -> Result<EventuallyPeriodicStream> {
    coefficient_stream_with_cap(a, v, init, DEFAULT_CYCLE_CAP)
}

pub fn coefficient_stream_with_cap(
    a: &IncidenceMatrix,
    v: &ModVector,
    init: usize,
    cap: usize,
) -> Result<EventuallyPeriodicStream> {
    if v.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: v.len(),
        });
    }
    if init >= a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: init,
        });
    }
    let m = v.modulus();
    observed_orbit(
        v.entries().to_vec(),
        m,
        cap,
        |x| a.mul_vec_mod(x, m),
        |x| x[init],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::AutomatonFile;

    fn automaton(text: &str) -> MealyAutomaton {
        AutomatonFile::parse(text).unwrap().automaton
    }

    const ODOMETER: &str = "alphabet 2\nstate a perm 1 0 to e a\nstate e perm 0 1 to e e\n";
    const LAMPLIGHTER: &str = "alphabet 2\nstate a perm 0 1 to a b\nstate b perm 1 0 to a b\n";

    #[test]
    fn incidence_matrices() {
        assert_eq!(
            IncidenceMatrix::of(&automaton(LAMPLIGHTER)).rows(),
            &[vec![1, 1], vec![1, 1]]
        );
        assert_eq!(
            IncidenceMatrix::of(&automaton(ODOMETER)).rows(),
            &[vec![1, 1], vec![0, 2]]
        );
        assert_eq!(
            IncidenceMatrix::of(&MealyAutomaton::identity(3)).rows(),
            &[vec![3]]
        );
    }

    #[test]
    fn label_vectors() {
        let odo = crate::labels::validate_cyclic(&automaton(ODOMETER)).unwrap();
        assert_eq!(abelian_vector(&odo, 0).unwrap().entries(), &[1, 0]);
        let lamp = crate::labels::validate_cyclic(&automaton(LAMPLIGHTER)).unwrap();
        assert_eq!(abelian_vector(&lamp, 0).unwrap().entries(), &[0, 1]);
        assert_eq!(
            abelian_vector(&lamp, 1),
            Err(Error::BadComponent {
                component: 1,
                components: 1
            })
        );
    }

    #[test]
    fn odometer_stream_is_all_ones() {
        let a = IncidenceMatrix::of(&automaton(ODOMETER));
        let s = coefficient_stream(&a, &ModVector::new(2, vec![1, 0]), 0).unwrap();
        assert_eq!(s.preperiod(), &[] as &[u64]);
        assert_eq!(s.period(), &[1]);
    }

    #[test]
    fn lamplighter_b_stream() {
        let a = IncidenceMatrix::of(&automaton(LAMPLIGHTER));
        let s = coefficient_stream(&a, &ModVector::new(2, vec![0, 1]), 1).unwrap();
        assert_eq!(s.preperiod(), &[1, 1]);
        assert_eq!(s.period(), &[0]);
        assert_eq!(s.terms(6), vec![1, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn zero_vector_gives_zero_stream() {
        let a = IncidenceMatrix::of(&automaton(LAMPLIGHTER));
        let s = coefficient_stream(&a, &ModVector::new(5, vec![0, 0]), 0).unwrap();
        assert_eq!(s.terms(10), vec![0; 10]);
    }

    #[test]
    fn dimension_mismatch_and_cap() {
        let a = IncidenceMatrix::of(&automaton(LAMPLIGHTER));
        assert!(matches!(
            coefficient_stream(&a, &ModVector::new(2, vec![1]), 0),
            Err(Error::DimensionMismatch { .. })
        ));
        // x -> x + 1 on Z/7 has period 7
        let shift = IncidenceMatrix::from_rows(vec![vec![1, 1], vec![0, 1]]).unwrap();
        let v = ModVector::new(7, vec![0, 1]);
        assert_eq!(
            coefficient_stream_with_cap(&shift, &v, 0, 3),
            Err(Error::CycleCapExceeded(3))
        );
        let s = coefficient_stream(&shift, &v, 0).unwrap();
        assert_eq!(s.period(), &[0, 1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn first_index_scans_one_period() {
        let s = EventuallyPeriodicStream::new(4, vec![1, 3], vec![1, 2, 3]);
        assert_eq!(s.first_index(|c| !is_unit(c, 4)), Some(3));
        assert_eq!(s.term(100), s.term(100 - 3));
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(mod_inverse(1, 2), Some(1));
        assert!(is_unit(5, 6) && !is_unit(3, 6) && !is_unit(0, 2));
        let primes: Vec<u64> = (0..30).filter(|&m| is_prime(m)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
