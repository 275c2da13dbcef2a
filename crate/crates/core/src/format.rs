//! Line-oriented text format for automata.
//!
//! ```text
//! # lamplighter
//! alphabet 2
//! state a perm 0 1 to a b
//! state b perm 1 0 to a b
//! initial b
//! abelian 2
//! label a 0
//! label b 1
//! ```
//!
//! `#` starts a comment, blank lines are ignored and tokens are separated by
//! arbitrary whitespace. `alphabet` must precede the first `state`; state
//! references may point forward. When `abelian` is present every state needs
//! a `label` line.

use std::collections::HashMap;
use std::fmt;

use crate::automaton::{valid_state_name, InitialAutomaton, MealyAutomaton, Word};
use crate::error::{Error, Result};
use crate::labels::{AbelianLabels, LabeledAutomaton};
use crate::permutation::Permutation;

/// Contents of an automaton file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomatonFile {
    pub automaton: MealyAutomaton,
    pub initial: Option<usize>,
    pub labels: Option<AbelianLabels>,
}

struct StateLine<'a> {
    line: usize,
    name: &'a str,
    perm: Permutation,
    targets: Vec<&'a str>,
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(line: usize, token: &str) -> Result<T> {
    token.parse().map_err(|_| {
        syntax(
            line,
            format!("expected a non-negative integer, found `{token}`"),
        )
    })
}

impl AutomatonFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut k: Option<usize> = None;
        let mut states: Vec<StateLine> = Vec::new();
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut initial: Option<(usize, &str)> = None;
        let mut moduli: Option<Vec<u64>> = None;
        let mut label_lines: Vec<(usize, &str, Vec<u64>)> = Vec::new();
        let mut last_line = 0;

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let Some((&keyword, args)) = tokens.split_first() else {
                continue;
            };
            match keyword {
                "alphabet" => {
                    if k.is_some() {
                        return Err(syntax(line, "duplicate `alphabet`"));
                    }
                    let [size] = args else {
                        return Err(syntax(line, "expected `alphabet <k>`"));
                    };
                    let size: usize = number(line, size)?;
                    if size < 2 {
                        return Err(syntax(line, "alphabet size must be at least 2"));
                    }
                    k = Some(size);
                }
                "state" => {
                    let k = k.ok_or(Error::MissingAlphabet)?;
                    if args.len() != 2 * k + 3 || args[1] != "perm" || args[k + 2] != "to" {
                        return Err(syntax(
                            line,
                            format!("expected `state <name> perm <{k} symbols> to <{k} states>`"),
                        ));
                    }
                    let name = args[0];
                    if !valid_state_name(name) {
                        return Err(syntax(line, format!("invalid state name `{name}`")));
                    }
                    if index.insert(name, states.len()).is_some() {
                        return Err(Error::DuplicateState {
                            line,
                            name: name.to_owned(),
                        });
                    }
                    let images = args[2..k + 2]
                        .iter()
                        .map(|t| number(line, t))
                        .collect::<Result<Vec<usize>>>()?;
                    let perm = Permutation::new(images)
                        .ok_or_else(|| Error::BadPermutation(name.to_owned()))?;
                    states.push(StateLine {
                        line,
                        name,
                        perm,
                        targets: args[k + 3..].to_vec(),
                    });
                }
                "initial" => {
                    if initial.is_some() {
                        return Err(syntax(line, "duplicate `initial`"));
                    }
                    let [name] = args else {
                        return Err(syntax(line, "expected `initial <name>`"));
                    };
                    initial = Some((line, name));
                }
                "abelian" => {
                    if moduli.is_some() {
                        return Err(syntax(line, "duplicate `abelian`"));
                    }
                    if args.is_empty() {
                        return Err(syntax(line, "expected `abelian <m1> ... <mr>`"));
                    }
                    let ms = args
                        .iter()
                        .map(|t| number(line, t))
                        .collect::<Result<Vec<u64>>>()?;
                    if ms.iter().any(|&m| m < 2) {
                        return Err(syntax(line, "moduli must be at least 2"));
                    }
                    moduli = Some(ms);
                }
                "label" => {
                    let Some((name, residues)) = args.split_first() else {
                        return Err(syntax(line, "expected `label <name> <c1> ... <cr>`"));
                    };
                    let residues = residues
                        .iter()
                        .map(|t| number(line, t))
                        .collect::<Result<Vec<u64>>>()?;
                    label_lines.push((line, name, residues));
                }
                other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
            }
        }

        let k = k.ok_or(Error::MissingAlphabet)?;
        if states.is_empty() {
            return Err(syntax(last_line, "no states declared"));
        }
        let resolve = |line: usize, name: &str| {
            index.get(name).copied().ok_or_else(|| Error::UnknownState {
                line,
                name: name.to_owned(),
            })
        };

        let mut delta = Vec::with_capacity(states.len());
        for s in &states {
            delta.push(
                s.targets
                    .iter()
                    .map(|t| resolve(s.line, t))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let names = states.iter().map(|s| s.name.to_owned()).collect();
        let out = states.iter().map(|s| s.perm.clone()).collect();
        let automaton = MealyAutomaton::new(k, names, delta, out)?;

        let initial = initial
            .map(|(line, name)| resolve(line, name))
            .transpose()?;

        let labels = match moduli {
            None => {
                if let Some((line, ..)) = label_lines.first() {
                    return Err(syntax(
                        *line,
                        "`label` without a preceding `abelian` declaration",
                    ));
                }
                None
            }
            Some(moduli) => {
                let mut rows: Vec<Option<Vec<u64>>> = vec![None; states.len()];
                for (line, name, residues) in label_lines {
                    let q = resolve(line, name)?;
                    if residues.len() != moduli.len() {
                        return Err(syntax(
                            line,
                            format!(
                                "expected {} residues, found {}",
                                moduli.len(),
                                residues.len()
                            ),
                        ));
                    }
                    if let Some((c, m)) = residues.iter().zip(&moduli).find(|(c, m)| c >= m) {
                        return Err(syntax(line, format!("residue {c} out of range mod {m}")));
                    }
                    if rows[q].replace(residues).is_some() {
                        return Err(syntax(line, format!("duplicate label for `{name}`")));
                    }
                }
                let rows = rows
                    .into_iter()
                    .enumerate()
                    .map(|(q, r)| {
                        r.ok_or_else(|| {
                            Error::InvalidLabels(format!("state `{}` has no label", states[q].name))
                        })
                    })
                    .collect::<Result<_>>()?;
                Some(AbelianLabels::new(moduli, rows)?)
            }
        };

        Ok(Self {
            automaton,
            initial,
            labels,
        })
    }

    pub fn from_initial(g: InitialAutomaton, labels: Option<AbelianLabels>) -> Self {
        let initial = Some(g.initial());
        Self {
            automaton: g.into_automaton(),
            initial,
            labels,
        }
    }

    pub fn initial_automaton(&self) -> Result<InitialAutomaton> {
        let initial = self.initial.ok_or(Error::MissingInitial)?;
        InitialAutomaton::new(self.automaton.clone(), initial)
    }

    /// The initial automaton with its explicit labels, if present.
    pub fn labeled(&self) -> Result<Option<LabeledAutomaton>> {
        let g = self.initial_automaton()?;
        self.labels
            .clone()
            .map(|l| LabeledAutomaton::new(g, l))
            .transpose()
    }

    /// Explicit labels if the file declares them, otherwise labels derived
    /// from cyclic root permutations.
    pub fn labeled_or_cyclic(&self) -> Result<LabeledAutomaton> {
        match self.labeled()? {
            Some(l) => Ok(l),
            None => LabeledAutomaton::cyclic(self.initial_automaton()?),
        }
    }
}

impl fmt::Display for AutomatonFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.automaton;
        writeln!(f, "alphabet {}", m.alphabet_size())?;
        for q in 0..m.num_states() {
            write!(f, "state {} perm {} to", m.name(q), m.output(q))?;
            for &s in m.transitions(q) {
                write!(f, " {}", m.name(s))?;
            }
            writeln!(f)?;
        }
        if let Some(q) = self.initial {
            writeln!(f, "initial {}", m.name(q))?;
        }
        if let Some(labels) = &self.labels {
            write!(f, "abelian")?;
            for m in labels.moduli() {
                write!(f, " {m}")?;
            }
            writeln!(f)?;
            for q in 0..m.num_states() {
                write!(f, "label {}", m.name(q))?;
                for c in labels.label(q) {
                    write!(f, " {c}")?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Parses a word: a digit string when `k <= 10`, otherwise (or whenever a
/// comma is present) comma-separated integers.
pub fn parse_word(text: &str, k: usize) -> Result<Word> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let symbols: Vec<Option<usize>> = if k <= 10 && !text.contains(',') {
        text.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect()
    } else {
        text.split(',').map(|t| t.trim().parse().ok()).collect()
    };
    symbols
        .into_iter()
        .enumerate()
        .map(|(position, s)| s.filter(|&a| a < k).ok_or(Error::BadSymbol { position }))
        .collect()
}

pub fn format_word(w: &[usize], k: usize) -> String {
    if k <= 10 {
        w.iter().map(|a| char::from(b'0' + *a as u8)).collect()
    } else {
        w.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    }
}
