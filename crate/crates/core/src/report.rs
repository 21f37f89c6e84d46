//! Verification reports and the knobs that bound exhaustive checks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Bounds for exhaustive scans and the sampling fallback.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    /// Largest number of tuples evaluated exhaustively.
    pub exhaustive_bound: u64,
    /// Samples drawn when a scan exceeds the exhaustive bound.
    pub samples: u64,
    pub seed: u64,
    /// When false, scans beyond the bound are refused instead of sampled.
    pub allow_sampling: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            exhaustive_bound: 1 << 24,
            samples: 100_000,
            seed: 0,
            allow_sampling: true,
        }
    }
}

impl CheckConfig {
    pub(crate) fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive,
    Sampled,
    /// Exhaustive over a grid `S^k` with `|S| = 3`, which decides a polynomial
    /// identity of degree at most 2 in each variable.
    Grid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub mode: CheckMode,
    pub evaluations: u64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub check: String,
    /// Element indices of the failing tuple.
    pub args: Vec<u32>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub ok: bool,
    pub checks: Vec<Check>,
    pub witnesses: Vec<Witness>,
}

impl Report {
    pub fn new() -> Report {
        Report {
            ok: true,
            checks: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn record(&mut self, name: &str, mode: CheckMode, evaluations: u64, witness: Option<Witness>) {
        let passed = witness.is_none();
        self.ok &= passed;
        self.checks.push(Check {
            name: name.to_string(),
            mode,
            evaluations,
            passed,
        });
        self.witnesses.extend(witness);
    }

    pub fn merge(&mut self, other: Report) {
        self.ok &= other.ok;
        self.checks.extend(other.checks);
        self.witnesses.extend(other.witnesses);
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn sampled(&self) -> bool {
        self.checks.iter().any(|c| c.mode == CheckMode::Sampled)
    }
}

pub(crate) fn witness(check: &str, args: &[u32], detail: String) -> Witness {
    Witness {
        check: check.to_string(),
        args: args.to_vec(),
        detail,
    }
}

/// Iterates all `k`-tuples over `0..size` in lexicographic order, stopping at the first
/// tuple for which `f` yields a witness.
pub(crate) fn scan_tuples<F>(size: u32, k: usize, mut f: F) -> Option<Witness>
where
    F: FnMut(&[u32]) -> Option<Witness>,
{
    let mut t = vec![0u32; k];
    loop {
        if let Some(w) = f(&t) {
            return Some(w);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < size {
                break;
            }
            t[i] = 0;
        }
    }
}
