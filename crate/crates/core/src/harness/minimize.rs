//! Greedy 1-minimal shrinking of instances that exhibit a behaviour.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{diff_run, DiffConfig, DisagreementKind, OracleVerdict};
use crate::graph::Graph;

/// Vertex deletions stop here: smaller graphs cannot carry a circuit.
pub const MIN_VERTICES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    OracleHamiltonian,
    OracleNonHamiltonian,
    /// Fuzzy verdict differs from a known oracle verdict (either way).
    FuzzyOracleDisagree,
    FuzzyPositiveOracleNegative,
    FuzzyNegativeOraclePositive,
    ExtractionFailure,
    ContainmentViolation,
    /// Fuzzy and exact level sets differ somewhere.
    LevelsetsDiffer,
    ExactOracleMismatch,
}

impl Predicate {
    pub const ALL: [Predicate; 9] = [
        Predicate::OracleHamiltonian,
        Predicate::OracleNonHamiltonian,
        Predicate::FuzzyOracleDisagree,
        Predicate::FuzzyPositiveOracleNegative,
        Predicate::FuzzyNegativeOraclePositive,
        Predicate::ExtractionFailure,
        Predicate::ContainmentViolation,
        Predicate::LevelsetsDiffer,
        Predicate::ExactOracleMismatch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::OracleHamiltonian => "oracle-hamiltonian",
            Predicate::OracleNonHamiltonian => "oracle-non-hamiltonian",
            Predicate::FuzzyOracleDisagree => "fuzzy-oracle-disagree",
            Predicate::FuzzyPositiveOracleNegative => "fuzzy-positive-oracle-negative",
            Predicate::FuzzyNegativeOraclePositive => "fuzzy-negative-oracle-positive",
            Predicate::ExtractionFailure => "extraction-failure",
            Predicate::ContainmentViolation => "containment-violation",
            Predicate::LevelsetsDiffer => "levelsets-differ",
            Predicate::ExactOracleMismatch => "exact-oracle-mismatch",
        }
    }

    pub fn from_kind(kind: DisagreementKind) -> Option<Predicate> {
        use DisagreementKind::*;
        Some(match kind {
            FuzzyPositiveOracleNegative => Predicate::FuzzyPositiveOracleNegative,
            FuzzyNegativeOraclePositive => Predicate::FuzzyNegativeOraclePositive,
            ExtractionFailure => Predicate::ExtractionFailure,
            ContainmentViolation => Predicate::ContainmentViolation,
            ExactOracleMismatch => Predicate::ExactOracleMismatch,
            ExactLevelsetMismatch | InvalidWitness | SizeBoundViolation => return None,
        })
    }

    /// Evaluated from start vertex 0.
    pub fn holds(self, g: &Graph, cfg: &DiffConfig) -> bool {
        if g.n() == 0 {
            return false;
        }
        let r = diff_run(g, 0, cfg);
        let kinds = r.disagreements();
        let has = |k| kinds.contains(&k);
        match self {
            Predicate::OracleHamiltonian => r.oracle.verdict == OracleVerdict::Yes,
            Predicate::OracleNonHamiltonian => r.oracle.verdict == OracleVerdict::No,
            Predicate::FuzzyOracleDisagree => r.agreement.oracle_fuzzy == Some(false),
            Predicate::FuzzyPositiveOracleNegative => {
                has(DisagreementKind::FuzzyPositiveOracleNegative)
            }
            Predicate::FuzzyNegativeOraclePositive => {
                has(DisagreementKind::FuzzyNegativeOraclePositive)
            }
            Predicate::ExtractionFailure => has(DisagreementKind::ExtractionFailure),
            Predicate::ContainmentViolation => has(DisagreementKind::ContainmentViolation),
            Predicate::LevelsetsDiffer => r.agreement.levelsets_equality == Some(false),
            Predicate::ExactOracleMismatch => has(DisagreementKind::ExactOracleMismatch),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Predicate::ALL.iter().map(|p| p.name()).collect();
                format!(
                    "unknown predicate `{s}`; expected one of: {}",
                    names.join(", ")
                )
            })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MinimizeError {
    #[error("predicate {0} does not hold on the input graph")]
    PredicateFalse(Predicate),
}

/// Single deletions in the fixed trial order: vertices from highest label
/// down (only while more than [`MIN_VERTICES`] remain), then edges from the
/// lexicographically largest down.
fn single_deletions(g: &Graph) -> impl Iterator<Item = Graph> + '_ {
    let vertices = (g.n() > MIN_VERTICES)
        .then(|| (0..g.n()).rev().map(move |v| g.without_vertex(v)))
        .into_iter()
        .flatten();
    let edges = g
        .edges()
        .into_iter()
        .rev()
        .map(move |(u, v)| g.without_edge(u, v));
    vertices.chain(edges)
}

/// Applies the first predicate-preserving single deletion until none is
/// left. The result satisfies `predicate` and is 1-minimal.
pub fn minimize(g: &Graph, predicate: Predicate, cfg: &DiffConfig) -> Result<Graph, MinimizeError> {
    if !predicate.holds(g, cfg) {
        return Err(MinimizeError::PredicateFalse(predicate));
    }
    let mut current = g.clone();
    loop {
        let next = single_deletions(&current).find(|h| predicate.holds(h, cfg));
        match next {
            Some(smaller) => current = smaller,
            None => return Ok(current),
        }
    }
}

/// Whether `predicate` holds on `g` and on none of its single deletions.
pub fn is_one_minimal(g: &Graph, predicate: Predicate, cfg: &DiffConfig) -> bool {
    predicate.holds(g, cfg) && single_deletions(g).all(|h| !predicate.holds(&h, cfg))
}
