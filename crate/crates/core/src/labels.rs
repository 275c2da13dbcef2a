//! Per-state images of the root permutations in a finite abelian group
//! `Z/m_1 × .. × Z/m_r`.

use crate::automaton::{InitialAutomaton, MealyAutomaton};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianLabels {
    moduli: Vec<u64>,
    labels: Vec<Vec<u64>>,
}

impl AbelianLabels {
    /// Checks every modulus is at least 2 and every residue is canonical.
    pub fn new(moduli: Vec<u64>, labels: Vec<Vec<u64>>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidLabels("no moduli".into()));
        }
        if let Some(m) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidLabels(format!("modulus {m} is less than 2")));
        }
        for (q, row) in labels.iter().enumerate() {
            if row.len() != moduli.len() {
                return Err(Error::InvalidLabels(format!(
                    "state {q}: {} residues for {} moduli",
                    row.len(),
                    moduli.len()
                )));
            }
            if let Some((c, m)) = row.iter().zip(&moduli).find(|(c, m)| c >= m) {
                return Err(Error::InvalidLabels(format!(
                    "state {q}: residue {c} out of range mod {m}"
                )));
            }
        }
        Ok(Self { moduli, labels })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn num_components(&self) -> usize {
        self.moduli.len()
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, q: usize) -> &[u64] {
        &self.labels[q]
    }

    pub fn check_component(&self, component: usize) -> Result<u64> {
        self.moduli
            .get(component)
            .copied()
            .ok_or(Error::BadComponent {
                component,
                components: self.moduli.len(),
            })
    }

    /// Labels of the product states `(p, q)`: `label(p) + label(q)`.
    pub fn for_pairs(&self, other: &Self, pairs: &[(usize, usize)]) -> Result<Self> {
        if self.moduli != other.moduli {
            return Err(Error::ModuliMismatch(
                self.moduli.clone(),
                other.moduli.clone(),
            ));
        }
        let labels = pairs
            .iter()
            .map(|&(p, q)| {
                self.moduli
                    .iter()
                    .enumerate()
                    .map(|(i, &m)| (self.labels[p][i] + other.labels[q][i]) % m)
                    .collect()
            })
            .collect();
        Ok(Self {
            moduli: self.moduli.clone(),
            labels,
        })
    }

    /// Labels of the inverse automaton: every residue negated.
    pub fn negated(&self) -> Self {
        let labels = self
            .labels
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.moduli)
                    .map(|(&c, &m)| (m - c) % m)
                    .collect()
            })
            .collect();
        Self {
            moduli: self.moduli.clone(),
            labels,
        }
    }

    /// Labels restricted to `states`, in that order.
    pub fn select(&self, states: &[usize]) -> Self {
        Self {
            moduli: self.moduli.clone(),
            labels: states.iter().map(|&q| self.labels[q].clone()).collect(),
        }
    }
}

/// Checks that every root permutation is a shift `i -> i + e_q mod k`
/// and returns the labels `q -> e_q` in `Z/k`.
pub fn validate_cyclic(m: &MealyAutomaton) -> Result<AbelianLabels> {
    let k = m.alphabet_size();
    let labels = (0..m.num_states())
        .map(|q| {
            m.output(q)
                .cyclic_exponent()
                .map(|e| vec![e as u64])
                .ok_or_else(|| Error::NotCyclic(m.name(q).to_owned()))
        })
        .collect::<Result<_>>()?;
    Ok(AbelianLabels {
        moduli: vec![k as u64],
        labels,
    })
}

/// An initial automaton together with labels for each of its states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledAutomaton {
    element: InitialAutomaton,
    labels: AbelianLabels,
}

impl LabeledAutomaton {
    pub fn new(element: InitialAutomaton, labels: AbelianLabels) -> Result<Self> {
        if labels.num_states() != element.num_states() {
            return Err(Error::InvalidLabels(format!(
                "{} labels for {} states",
                labels.num_states(),
                element.num_states()
            )));
        }
        Ok(Self { element, labels })
    }

    /// Labels derived from the cyclic root permutations.
    pub fn cyclic(element: InitialAutomaton) -> Result<Self> {
        let labels = validate_cyclic(element.automaton())?;
        Ok(Self { element, labels })
    }

    pub fn element(&self) -> &InitialAutomaton {
        &self.element
    }

    pub fn labels(&self) -> &AbelianLabels {
        &self.labels
    }
}
