//! Decision procedures on finite-state elements of iterated wreath products,
//! all driven by the abelianization coefficient stream
//! `⟨g, t^j⟩ = Σ_{|w|=j} label(g_w) = (A^j v)_init`.
//!
//! For the cyclic top group `Z/k`, `g` is spherically transitive iff every
//! coefficient is a unit mod `k`, and two spherically transitive elements are
//! conjugate iff their streams coincide.

use std::fmt;

use crate::automaton::InitialAutomaton;
use crate::error::{Error, Result};
use crate::labels::{validate_cyclic, LabeledAutomaton};
use crate::modular::{
    abelian_vector, coefficient_stream, is_prime, is_unit, observed_orbit,
    EventuallyPeriodicStream, IncidenceMatrix, ModVector, DEFAULT_CYCLE_CAP,
};
use crate::poly::{det_poly, IntPolynomial, RationalSeries};

/// What is known about the coefficient stream behind a transitivity verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StreamEvidence {
    Complete(EventuallyPeriodicStream),
    /// Leading terms up to and including the first non-unit.
    Prefix {
        modulus: u64,
        terms: Vec<u64>,
    },
}

impl StreamEvidence {
    pub fn modulus(&self) -> u64 {
        match self {
            Self::Complete(s) => s.modulus(),
            Self::Prefix { modulus, .. } => *modulus,
        }
    }

    pub fn complete(&self) -> Option<&EventuallyPeriodicStream> {
        match self {
            Self::Complete(s) => Some(s),
            Self::Prefix { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitivityVerdict {
    pub transitive: bool,
    /// Least `j` whose coefficient is not a unit mod `k`.
    pub first_bad_index: Option<usize>,
    pub stream: StreamEvidence,
}

/// The coefficient stream of `g` in the given label component.
pub fn abelianization_stream(
    g: &LabeledAutomaton,
    component: usize,
) -> Result<EventuallyPeriodicStream> {
    let v = abelian_vector(g.labels(), component)?;
    let a = IncidenceMatrix::of(g.element().automaton());
    coefficient_stream(&a, &v, g.element().initial())
}

/// Decides whether `⟨g⟩` acts transitively on every level of the tree.
/// Requires every root permutation of `g` to be a power of the standard k-cycle.
pub fn is_spherically_transitive(g: &InitialAutomaton) -> Result<TransitivityVerdict> {
    let k = g.alphabet_size() as u64;
    let labeled = LabeledAutomaton::cyclic(g.clone())?;
    let stream = abelianization_stream(&labeled, 0)?;
    let first_bad_index = stream.first_index(|c| !is_unit(c, k));
    Ok(TransitivityVerdict {
        transitive: first_bad_index.is_none(),
        first_bad_index,
        stream: StreamEvidence::Complete(stream),
    })
}

/// Binary-alphabet shortcut: with `n` states it suffices to check that the
/// coefficients `0..=n+1` are all 1, since every spherically transitive
/// element of `Aut(T_2)` has the all-ones stream.
pub fn transitive_k2_fast(g: &InitialAutomaton) -> Result<TransitivityVerdict> {
    if g.alphabet_size() != 2 {
        return Err(Error::NotBinary(g.alphabet_size()));
    }
    let labels = validate_cyclic(g.automaton())?;
    let a = IncidenceMatrix::of(g.automaton());
    let mut x = abelian_vector(&labels, 0)?.entries().to_vec();
    let n = g.num_states();
    let mut terms = Vec::with_capacity(n + 2);
    for j in 0..n + 2 {
        let c = x[g.initial()];
        terms.push(c);
        if c == 0 {
            return Ok(TransitivityVerdict {
                transitive: false,
                first_bad_index: Some(j),
                stream: StreamEvidence::Prefix { modulus: 2, terms },
            });
        }
        x = a.mul_vec_mod(&x, 2);
    }
    Ok(TransitivityVerdict {
        transitive: true,
        first_bad_index: None,
        stream: StreamEvidence::Complete(EventuallyPeriodicStream::new(2, terms, vec![1])),
    })
}

/// Outcome of comparing two abelianization images.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbelianEquality {
    pub equal: bool,
    /// Least `j` where the coefficients differ in some component.
    pub witness: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Route {
    /// Prime moduli use the linear-dependence bound, others cycle detection.
    Auto,
    Generic,
    Prime,
}

/// Block data for one label component: `M = diag(A_f, A_g)`, `v = (v_f; v_g)`
/// and the coordinates whose difference is observed.
struct DifferenceSystem {
    m: IncidenceMatrix,
    v: ModVector,
    left: usize,
    right: usize,
}

impl DifferenceSystem {
    fn new(f: &LabeledAutomaton, g: &LabeledAutomaton, component: usize) -> Result<Self> {
        let af = IncidenceMatrix::of(f.element().automaton());
        let ag = IncidenceMatrix::of(g.element().automaton());
        let v =
            abelian_vector(f.labels(), component)?.stack(&abelian_vector(g.labels(), component)?);
        Ok(Self {
            left: f.element().initial(),
            right: af.dim() + g.element().initial(),
            m: af.block_diag(&ag),
            v,
        })
    }

    fn diff(&self, x: &[u64]) -> u64 {
        let modulus = self.v.modulus();
        (x[self.left] + modulus - x[self.right]) % modulus
    }

    fn witness_by_cycle(&self) -> Result<Option<usize>> {
        let modulus = self.v.modulus();
        let stream = observed_orbit(
            self.v.entries().to_vec(),
            modulus,
            DEFAULT_CYCLE_CAP,
            |x| self.m.mul_vec_mod(x, modulus),
            |x| self.diff(x),
        )?;
        Ok(stream.first_index(|c| c != 0))
    }

    /// Over a field, `v, Mv, .., M^d v` are dependent (`d` = dimension), so a
    /// difference vanishing for `j < d` vanishes for all `j`.
    fn witness_by_dimension(&self) -> Option<usize> {
        let modulus = self.v.modulus();
        let mut x = self.v.entries().to_vec();
        for j in 0..self.m.dim() {
            if self.diff(&x) != 0 {
                return Some(j);
            }
            x = self.m.mul_vec_mod(&x, modulus);
        }
        None
    }
}

fn compare(f: &LabeledAutomaton, g: &LabeledAutomaton, route: Route) -> Result<AbelianEquality> {
    f.element().same_alphabet(g.element())?;
    let moduli = f.labels().moduli();
    if moduli != g.labels().moduli() {
        return Err(Error::ModuliMismatch(
            moduli.to_vec(),
            g.labels().moduli().to_vec(),
        ));
    }
    if route == Route::Prime {
        if let Some(&m) = moduli.iter().find(|&&m| !is_prime(m)) {
            return Err(Error::NotPrime(m));
        }
    }
    let mut witness: Option<usize> = None;
    for (component, &m) in moduli.iter().enumerate() {
        let system = DifferenceSystem::new(f, g, component)?;
        let w = match route {
            Route::Generic => system.witness_by_cycle()?,
            Route::Prime => system.witness_by_dimension(),
            Route::Auto if is_prime(m) => system.witness_by_dimension(),
            Route::Auto => system.witness_by_cycle()?,
        };
        witness = match (witness, w) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }
    Ok(AbelianEquality {
        equal: witness.is_none(),
        witness,
    })
}

/// Whether `f` and `g` have the same image in the abelianization. Prime
/// components take the linear-dependence shortcut; others use cycle detection.
pub fn abelianization_equal(f: &LabeledAutomaton, g: &LabeledAutomaton) -> Result<AbelianEquality> {
    compare(f, g, Route::Auto)
}

/// [`abelianization_equal`] using cycle detection for every component.
pub fn abelianization_equal_generic(
    f: &LabeledAutomaton,
    g: &LabeledAutomaton,
) -> Result<AbelianEquality> {
    compare(f, g, Route::Generic)
}

/// [`abelianization_equal`] using only the dimension bound; every modulus must be prime.
pub fn abelianization_equal_prime(
    f: &LabeledAutomaton,
    g: &LabeledAutomaton,
) -> Result<AbelianEquality> {
    compare(f, g, Route::Prime)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conjugacy {
    Conjugate,
    NotConjugate,
    Undecided,
}

impl fmt::Display for Conjugacy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Conjugate => "Conjugate",
            Self::NotConjugate => "NotConjugate",
            Self::Undecided => "Undecided",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyVerdict {
    pub verdict: Conjugacy,
    pub reason: String,
}

/// Conjugacy in the iterated wreath product of `Z/k`. Only pairs of spherically
/// transitive elements are decided by abelianization; a transitive and a
/// non-transitive element are never conjugate; other pairs are left undecided.
pub fn conjugate(f: &InitialAutomaton, g: &InitialAutomaton) -> Result<ConjugacyVerdict> {
    f.same_alphabet(g)?;
    let tf = is_spherically_transitive(f)?;
    let tg = is_spherically_transitive(g)?;
    let (verdict, reason) = match (tf.transitive, tg.transitive) {
        (true, true) => {
            let eq = abelianization_equal(
                &LabeledAutomaton::cyclic(f.clone())?,
                &LabeledAutomaton::cyclic(g.clone())?,
            )?;
            match eq.witness {
                None => (
                    Conjugacy::Conjugate,
                    "both spherically transitive with equal abelianization".to_owned(),
                ),
                Some(j) => (
                    Conjugacy::NotConjugate,
                    format!("both spherically transitive; abelianizations differ at t^{j}"),
                ),
            }
        }
        (true, false) | (false, true) => (
            Conjugacy::NotConjugate,
            format!(
                "only the {} element is spherically transitive",
                if tf.transitive { "first" } else { "second" }
            ),
        ),
        (false, false) => (
            Conjugacy::Undecided,
            "neither element is spherically transitive; abelianization does not decide conjugacy"
                .to_owned(),
        ),
    };
    Ok(ConjugacyVerdict { verdict, reason })
}

/// `(I - At)^{-1} v` at the initial state, as numerator / denominator over `Z/m`
/// via Cramer's rule on `I - At` over `Z[t]`.
pub fn rational_form(g: &LabeledAutomaton, component: usize) -> Result<RationalSeries> {
    let m = g.labels().check_component(component)?;
    let a = IncidenceMatrix::of(g.element().automaton());
    let v = abelian_vector(g.labels(), component)?;
    let n = a.dim();
    let mut matrix: Vec<Vec<IntPolynomial>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|s| {
                    let diag = i64::from(r == s);
                    IntPolynomial::from_i64s(&[diag, -(a.entry(r, s) as i64)])
                })
                .collect()
        })
        .collect();
    let denominator = det_poly(&matrix);
    let init = g.element().initial();
    for (r, row) in matrix.iter_mut().enumerate() {
        row[init] = IntPolynomial::constant(v.entries()[r]);
    }
    let numerator = det_poly(&matrix);
    Ok(RationalSeries::from_int(m, &numerator, &denominator))
}
