use std::collections::BTreeMap;
use std::fmt::{self, Display};

use sha2::{Digest, Sha256};

/// Flat `key: value` report, rendered with keys in sorted order.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct VerdictDocument {
    entries: BTreeMap<String, String>,
    inputs: usize,
}

impl VerdictDocument {
    pub fn new(command: &str) -> Self {
        let mut doc = Self::default();
        doc.set("command", command);
        doc
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.entries.insert(key.into(), value.to_string());
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Records an input file's path and the SHA-256 of its bytes.
    pub fn add_input(&mut self, path: &str, bytes: &[u8]) {
        self.inputs += 1;
        let n = self.inputs;
        self.set(format!("input.{n}.path"), path);
        self.set(
            format!("input.{n}.sha256"),
            hex::encode(Sha256::digest(bytes)),
        );
    }
}

impl Display for VerdictDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}

/// `[a, b, c]`
pub fn list<T: Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn optional<T: Display>(value: Option<T>) -> String {
    value.map_or_else(|| "none".to_owned(), |v| v.to_string())
}
