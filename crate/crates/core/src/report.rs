use std::collections::BTreeMap;

use serde::Serialize;

/// Outcome of an exhaustive verification run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub parameters: BTreeMap<String, u64>,
    pub instances: u64,
    pub tallies: BTreeMap<String, u64>,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Counterexample {
    pub description: String,
    pub graph6: String,
}

impl VerificationReport {
    pub fn new(check: &str) -> Self {
        Self {
            check: check.to_string(),
            ..Self::default()
        }
    }

    pub fn with_parameter(mut self, key: &str, value: u64) -> Self {
        self.parameters.insert(key.to_string(), value);
        self
    }

    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn tally(&mut self, key: &str, by: u64) {
        *self.tallies.entry(key.to_string()).or_default() += by;
    }

    pub fn tally_value(&self, key: &str) -> u64 {
        self.tallies.get(key).copied().unwrap_or(0)
    }

    pub fn fail(&mut self, description: impl Into<String>, graph6: impl Into<String>) {
        self.counterexamples.push(Counterexample {
            description: description.into(),
            graph6: graph6.into(),
        });
    }

    /// Folds another report of the same check into this one.
    pub fn merge(&mut self, other: VerificationReport) {
        self.instances += other.instances;
        for (k, v) in other.tallies {
            *self.tallies.entry(k).or_default() += v;
        }
        self.counterexamples.extend(other.counterexamples);
    }
}
