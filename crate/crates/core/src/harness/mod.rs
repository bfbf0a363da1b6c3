//! Differential harness: the oracle, the exact layered decider and the
//! state-set decider run on the same instance, and every disagreement
//! between them is recorded as data rather than raised as an error.

mod minimize;
mod report;
mod scaling;
mod sweep;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::graph::{Circuit, Graph, Vertex};
use crate::layered::{exact_decide, BudgetKind, ExactBudget, ExactError, LayeredStats};
use crate::levels::LevelSets;
use crate::oracle::{
    oracle_has_circuit_within, oracle_level_sets, OracleError, DEFAULT_ORACLE_CAP,
};
use crate::par::Parallelism;
use crate::stateset::{fuzzy_decide, Extraction, FuzzyConfig, FuzzyError, FuzzyStats};

pub use minimize::{is_one_minimal, minimize, MinimizeError, Predicate, MIN_VERTICES};
pub use report::{
    Disagreements, Instance, PerN, SweepParams, SweepReport, TimingAggregate, Totals,
};
pub use scaling::{
    bench, fit_scaling, BenchError, BenchPoint, BenchReport, ScalingError, ScalingFit,
};
pub use sweep::{campaign_random, sweep_exhaustive, trial_seed, SweepError, DEFAULT_SWEEP_CAP};

pub const SCHEMA_VERSION: &str = "hamlab-report/1";

pub const DEFAULT_EXACT_MAX_N: usize = 10;
pub const DEFAULT_ORACLE_MAX_STEPS: u64 = 50_000_000;
pub const ENV_ORACLE_MAX_STEPS: &str = "HAMLAB_ORACLE_MAX_STEPS";

/// Everything a diff run depends on besides the instance. Echoed into
/// every report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffConfig {
    pub exact_budget: ExactBudget,
    /// Above this vertex count the exact decider is skipped.
    pub exact_max_n: usize,
    /// Recursive-step cap for the oracle's circuit search; `None` is
    /// unbounded.
    pub oracle_max_steps: Option<u64>,
    /// Above this vertex count oracle level sets are not computed.
    pub level_cap: usize,
    #[serde(with = "fuzzy_secs")]
    pub fuzzy: FuzzyConfig,
    /// Whether wall-clock timings go into reports. Off by default so that
    /// reports are byte-identical across runs.
    pub record_timings: bool,
    /// Instance-level fan-out for sweeps and campaigns.
    pub instances: Parallelism,
}

mod fuzzy_secs {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::time::Duration;

    use crate::par::Parallelism;
    use crate::stateset::FuzzyConfig;

    #[derive(Serialize, Deserialize)]
    struct Repr {
        max_time: f64,
        par: Parallelism,
    }

    pub fn serialize<S: Serializer>(c: &FuzzyConfig, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            max_time: c.max_time.as_secs_f64(),
            par: c.par,
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<FuzzyConfig, D::Error> {
        let r = Repr::deserialize(d)?;
        Ok(FuzzyConfig {
            max_time: Duration::from_secs_f64(r.max_time),
            par: r.par,
        })
    }
}

impl Default for DiffConfig {
    fn default() -> Self {
        DiffConfig {
            exact_budget: ExactBudget::default(),
            exact_max_n: DEFAULT_EXACT_MAX_N,
            oracle_max_steps: Some(DEFAULT_ORACLE_MAX_STEPS),
            level_cap: DEFAULT_ORACLE_CAP,
            fuzzy: FuzzyConfig {
                par: Parallelism::Sequential,
                ..FuzzyConfig::default()
            },
            record_timings: false,
            instances: Parallelism::default(),
        }
    }
}

impl DiffConfig {
    /// Defaults with the budget environment variables applied.
    pub fn from_env() -> Result<Self, String> {
        let mut cfg = DiffConfig {
            exact_budget: ExactBudget::from_env()?,
            ..DiffConfig::default()
        };
        if let Ok(s) = std::env::var(ENV_ORACLE_MAX_STEPS) {
            let steps: u64 = s
                .trim()
                .parse()
                .map_err(|_| format!("{ENV_ORACLE_MAX_STEPS}=`{s}` is not an integer"))?;
            cfg.oracle_max_steps = (steps > 0).then_some(steps);
        }
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleVerdict {
    Yes,
    No,
    /// Step budget ran out.
    Unknown,
}

impl OracleVerdict {
    pub fn known(self) -> Option<bool> {
        match self {
            OracleVerdict::Yes => Some(true),
            OracleVerdict::No => Some(false),
            OracleVerdict::Unknown => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub verdict: OracleVerdict,
    pub witness: Option<Circuit>,
    pub level_sets: Option<LevelSets>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Complete,
    BudgetExhausted,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactResult {
    pub status: RunStatus,
    pub has_circuit: Option<bool>,
    pub level_sets: Option<LevelSets>,
    pub witness: Option<Circuit>,
    pub budget_kind: Option<BudgetKind>,
    pub stats: Option<LayeredStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzyResult {
    pub status: RunStatus,
    pub nonempty: Option<bool>,
    pub level_sets: Option<LevelSets>,
    pub candidate: Option<Circuit>,
    pub candidate_verified: bool,
    pub extraction: Option<Extraction>,
    pub within_size_bounds: Option<bool>,
    pub stats: Option<FuzzyStats>,
}

/// Pairwise comparisons; `None` when either side has no verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Agreement {
    pub oracle_exact: Option<bool>,
    pub oracle_fuzzy: Option<bool>,
    pub exact_fuzzy: Option<bool>,
    pub levelsets_containment: Option<bool>,
    pub levelsets_equality: Option<bool>,
    pub exact_levelsets_match_oracle: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub oracle_secs: f64,
    pub exact_secs: f64,
    pub fuzzy_secs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DisagreementKind {
    FuzzyPositiveOracleNegative,
    FuzzyNegativeOraclePositive,
    ExtractionFailure,
    ContainmentViolation,
    ExactOracleMismatch,
    ExactLevelsetMismatch,
    InvalidWitness,
    SizeBoundViolation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiffReport {
    pub schema_version: String,
    pub graph: Graph,
    pub start: Vertex,
    /// Budgets and caps the run used.
    pub config: DiffConfig,
    pub oracle: OracleResult,
    pub exact: ExactResult,
    pub fuzzy: FuzzyResult,
    pub agreement: Agreement,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<Timings>,
}

impl DiffReport {
    fn oracle_answer(&self) -> Option<bool> {
        self.oracle.verdict.known()
    }

    /// Comparison flags derived from the embedded results.
    pub fn compute_agreement(&self) -> Agreement {
        let both = |a: Option<bool>, b: Option<bool>| Some(a? == b?);
        let exact_levels = self.exact.level_sets.as_ref();
        let fuzzy_levels = self.fuzzy.level_sets.as_ref();
        let oracle_levels = self.oracle.level_sets.as_ref();
        Agreement {
            oracle_exact: both(self.oracle_answer(), self.exact.has_circuit),
            oracle_fuzzy: both(self.oracle_answer(), self.fuzzy.nonempty),
            exact_fuzzy: both(self.exact.has_circuit, self.fuzzy.nonempty),
            levelsets_containment: exact_levels
                .zip(fuzzy_levels)
                .map(|(e, f)| f.contains_levelwise(e)),
            levelsets_equality: exact_levels.zip(fuzzy_levels).map(|(e, f)| e == f),
            exact_levelsets_match_oracle: exact_levels.zip(oracle_levels).map(|(e, o)| e == o),
        }
    }

    /// Every disagreement this report exhibits, in a fixed order.
    pub fn disagreements(&self) -> Vec<DisagreementKind> {
        use DisagreementKind::*;
        let mut out = Vec::new();
        let oracle = self.oracle_answer();
        match (self.fuzzy.nonempty, oracle) {
            (Some(true), Some(false)) => out.push(FuzzyPositiveOracleNegative),
            (Some(false), Some(true)) => out.push(FuzzyNegativeOraclePositive),
            _ => {}
        }
        if self.fuzzy.extraction == Some(Extraction::Failed) {
            out.push(ExtractionFailure);
        }
        if self.agreement.levelsets_containment == Some(false) {
            out.push(ContainmentViolation);
        }
        if self.agreement.oracle_exact == Some(false) {
            out.push(ExactOracleMismatch);
        }
        if self.agreement.exact_levelsets_match_oracle == Some(false) {
            out.push(ExactLevelsetMismatch);
        }
        if self.check_witnesses().is_err() {
            out.push(InvalidWitness);
        }
        if self.fuzzy.within_size_bounds == Some(false) {
            out.push(SizeBoundViolation);
        }
        out
    }

    fn check_witnesses(&self) -> Result<(), String> {
        let checks = [
            ("oracle witness", self.oracle.witness.as_ref()),
            ("exact witness", self.exact.witness.as_ref()),
            ("fuzzy candidate", self.fuzzy.candidate.as_ref()),
        ];
        for (what, c) in checks {
            if let Some(c) = c {
                c.validate(&self.graph)
                    .map_err(|e| format!("{what} {c} is invalid: {e}"))?;
            }
        }
        Ok(())
    }

    /// Report invariants: stored flags match flags recomputed from the
    /// embedded verdicts, and every embedded circuit re-validates.
    pub fn validate(&self) -> Result<(), String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!("unknown schema version {}", self.schema_version));
        }
        let recomputed = self.compute_agreement();
        if recomputed != self.agreement {
            return Err(format!(
                "stored agreement {:?} differs from recomputed {:?}",
                self.agreement, recomputed
            ));
        }
        if self.fuzzy.candidate_verified != self.fuzzy.candidate.is_some() {
            return Err("candidate_verified does not match candidate presence".into());
        }
        self.check_witnesses()
    }
}

/// Runs all three deciders on `g` from `start`.
pub fn diff_run(g: &Graph, start: Vertex, cfg: &DiffConfig) -> DiffReport {
    assert!(start < g.n().max(1), "start {start} out of range");
    let n = g.n();

    let t = Instant::now();
    let oracle = match oracle_has_circuit_within(g, start, cfg.oracle_max_steps) {
        Ok(w) => OracleResult {
            verdict: if w.is_some() {
                OracleVerdict::Yes
            } else {
                OracleVerdict::No
            },
            witness: w,
            level_sets: None,
        },
        Err(OracleError::StepBudget(_)) | Err(OracleError::CapExceeded { .. }) => OracleResult {
            verdict: OracleVerdict::Unknown,
            witness: None,
            level_sets: None,
        },
    };
    let oracle = OracleResult {
        level_sets: oracle_level_sets(g, start, cfg.level_cap).ok(),
        ..oracle
    };
    let oracle_secs = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let exact = if n > cfg.exact_max_n {
        ExactResult {
            status: RunStatus::Skipped,
            has_circuit: None,
            level_sets: None,
            witness: None,
            budget_kind: None,
            stats: None,
        }
    } else {
        match exact_decide(g, start, cfg.exact_budget, cfg.fuzzy.par) {
            Ok(d) => ExactResult {
                status: RunStatus::Complete,
                has_circuit: Some(d.has_circuit),
                level_sets: Some(d.level_sets),
                witness: d.witness,
                budget_kind: None,
                stats: Some(d.stats),
            },
            Err(ExactError::BudgetExhausted { kind, stats }) => ExactResult {
                status: RunStatus::BudgetExhausted,
                has_circuit: None,
                level_sets: None,
                witness: None,
                budget_kind: Some(kind),
                stats: Some(stats),
            },
            Err(e) => panic!("exact decider rejected a valid instance: {e}"),
        }
    };
    let exact_secs = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let fuzzy = match fuzzy_decide(g, start, cfg.fuzzy) {
        Ok(d) => FuzzyResult {
            status: RunStatus::Complete,
            nonempty: Some(d.nonempty),
            level_sets: Some(d.level_sets),
            candidate: d.candidate,
            candidate_verified: d.candidate_verified,
            extraction: Some(d.extraction),
            within_size_bounds: Some(d.within_size_bounds),
            stats: Some(d.stats),
        },
        Err(FuzzyError::TimeCap { .. }) => FuzzyResult {
            status: RunStatus::BudgetExhausted,
            nonempty: None,
            level_sets: None,
            candidate: None,
            candidate_verified: false,
            extraction: None,
            within_size_bounds: None,
            stats: None,
        },
        Err(e) => panic!("state-set decider rejected a valid instance: {e}"),
    };
    let fuzzy_secs = t.elapsed().as_secs_f64();

    let mut report = DiffReport {
        schema_version: SCHEMA_VERSION.to_string(),
        graph: g.clone(),
        start,
        config: *cfg,
        oracle,
        exact,
        fuzzy,
        agreement: Agreement::default(),
        timings: cfg.record_timings.then_some(Timings {
            oracle_secs,
            exact_secs,
            fuzzy_secs,
        }),
    };
    // wall time lives in `timings`; keep the structural stats reproducible
    if let Some(s) = report.exact.stats.as_mut() {
        s.elapsed = Duration::ZERO;
    }
    if let Some(s) = report.fuzzy.stats.as_mut() {
        s.elapsed = Duration::ZERO;
    }
    report.agreement = report.compute_agreement();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named_graph;

    fn run(name: &str) -> DiffReport {
        diff_run(&named_graph(name).unwrap(), 0, &DiffConfig::default())
    }

    #[test]
    fn k3_all_agree() {
        let r = run("k3");
        assert_eq!(r.oracle.verdict, OracleVerdict::Yes);
        assert_eq!(r.exact.has_circuit, Some(true));
        assert_eq!(r.fuzzy.nonempty, Some(true));
        assert_eq!(r.agreement.levelsets_containment, Some(true));
        assert_eq!(r.agreement.levelsets_equality, Some(true));
        assert!(r.disagreements().is_empty());
        r.validate().unwrap();
    }

    #[test]
    fn p3_all_agree_no() {
        let r = run("p3");
        assert_eq!(r.oracle.verdict, OracleVerdict::No);
        assert_eq!(r.exact.has_circuit, Some(false));
        assert_eq!(r.fuzzy.nonempty, Some(false));
        assert!(r.disagreements().is_empty());
    }

    #[test]
    fn tampered_report_fails_validation() {
        let mut r = run("k4");
        r.agreement.oracle_fuzzy = Some(false);
        assert!(r.validate().is_err());
        let mut r = run("k4");
        r.exact.witness = Some(Circuit(vec![0, 1, 1, 2]));
        assert!(r.validate().is_err());
    }

    #[test]
    fn exact_is_skipped_above_its_range() {
        let cfg = DiffConfig {
            exact_max_n: 3,
            ..DiffConfig::default()
        };
        let r = diff_run(&named_graph("k4").unwrap(), 0, &cfg);
        assert_eq!(r.exact.status, RunStatus::Skipped);
        assert_eq!(r.agreement.oracle_exact, None);
    }

    #[test]
    fn exact_budget_is_a_report_state() {
        let cfg = DiffConfig {
            exact_budget: ExactBudget {
                max_nodes: 10,
                ..ExactBudget::default()
            },
            ..DiffConfig::default()
        };
        let r = diff_run(&named_graph("k5").unwrap(), 0, &cfg);
        assert_eq!(r.exact.status, RunStatus::BudgetExhausted);
        assert_eq!(r.exact.budget_kind, Some(BudgetKind::Nodes));
        r.validate().unwrap();
    }

    #[test]
    fn json_round_trip() {
        let r = run("c5");
        let json = serde_json::to_string_pretty(&r).unwrap();
        let back: DiffReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        back.validate().unwrap();
    }
}
