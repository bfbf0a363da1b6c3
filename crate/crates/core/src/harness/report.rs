use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{
    diff_run, Agreement, DiffConfig, DiffReport, DisagreementKind, OracleVerdict, RunStatus,
    SCHEMA_VERSION,
};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SweepParams {
    Exhaustive {
        max_n: usize,
        connected_only: bool,
    },
    Random {
        n: usize,
        p: f64,
        trials: usize,
        seed: u64,
    },
}

/// A replayable instance attached to a disagreement list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub id: String,
    /// Generator seed for random instances.
    pub seed: Option<u64>,
    pub graph: Graph,
    pub start: Vertex,
    pub agreement: Agreement,
    pub kinds: Vec<DisagreementKind>,
}

impl Instance {
    fn from_report(id: String, seed: Option<u64>, r: &DiffReport) -> Self {
        Instance {
            id,
            seed,
            graph: r.graph.clone(),
            start: r.start,
            agreement: r.agreement,
            kinds: r.disagreements(),
        }
    }

    /// Re-runs the instance and checks that it reproduces the recorded
    /// flags.
    pub fn replay(&self, cfg: &DiffConfig) -> Result<DiffReport, String> {
        let r = diff_run(&self.graph, self.start, cfg);
        if r.agreement != self.agreement || r.disagreements() != self.kinds {
            return Err(format!(
                "instance {} replayed as {:?} / {:?}, recorded {:?} / {:?}",
                self.id,
                r.agreement,
                r.disagreements(),
                self.agreement,
                self.kinds
            ));
        }
        Ok(r)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Totals {
    pub graphs_tested: u64,
    pub oracle_yes: u64,
    pub oracle_no: u64,
    pub oracle_unknown: u64,
    pub exact_complete: u64,
    pub exact_budget_exhausted: u64,
    pub exact_skipped: u64,
    pub fuzzy_positive: u64,
    pub fuzzy_negative: u64,
    pub fuzzy_time_capped: u64,
    /// Instances where fuzzy and exact level sets were both available.
    pub levelsets_compared: u64,
    pub levelsets_equal: u64,
    pub exact_witnesses_checked: u64,
    pub fuzzy_candidates_verified: u64,
    pub invalid_circuits: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct TimingAggregate {
    pub oracle_mean_secs: f64,
    pub oracle_max_secs: f64,
    pub exact_mean_secs: f64,
    pub exact_max_secs: f64,
    pub fuzzy_mean_secs: f64,
    pub fuzzy_max_secs: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PerN {
    pub n: usize,
    pub graphs: u64,
    pub oracle_yes: u64,
    pub oracle_no: u64,
    pub oracle_unknown: u64,
    /// Sum of undirected circuit counts, when every instance was countable.
    pub circuit_total: Option<u64>,
    pub fuzzy_positive: u64,
    pub fuzzy_positive_oracle_negative: u64,
    pub extraction_failures: u64,
    pub levelsets_compared: u64,
    pub levelsets_equal: u64,
    pub max_exact_nodes: usize,
    pub max_fuzzy_nodes: usize,
    pub max_fuzzy_transitions: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing: Option<TimingAggregate>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Disagreements {
    pub fuzzy_positive_oracle_negative: Vec<Instance>,
    pub fuzzy_negative_oracle_positive: Vec<Instance>,
    pub extraction_failures: Vec<Instance>,
    pub containment_violations: Vec<Instance>,
    pub exact_oracle_mismatches: Vec<Instance>,
    pub exact_levelset_mismatches: Vec<Instance>,
    pub invalid_witnesses: Vec<Instance>,
    pub size_bound_violations: Vec<Instance>,
}

impl Disagreements {
    pub fn lists(&self) -> [(DisagreementKind, &Vec<Instance>); 8] {
        use DisagreementKind::*;
        [
            (
                FuzzyPositiveOracleNegative,
                &self.fuzzy_positive_oracle_negative,
            ),
            (
                FuzzyNegativeOraclePositive,
                &self.fuzzy_negative_oracle_positive,
            ),
            (ExtractionFailure, &self.extraction_failures),
            (ContainmentViolation, &self.containment_violations),
            (ExactOracleMismatch, &self.exact_oracle_mismatches),
            (ExactLevelsetMismatch, &self.exact_levelset_mismatches),
            (InvalidWitness, &self.invalid_witnesses),
            (SizeBoundViolation, &self.size_bound_violations),
        ]
    }

    fn list_mut(&mut self, kind: DisagreementKind) -> &mut Vec<Instance> {
        use DisagreementKind::*;
        match kind {
            FuzzyPositiveOracleNegative => &mut self.fuzzy_positive_oracle_negative,
            FuzzyNegativeOraclePositive => &mut self.fuzzy_negative_oracle_positive,
            ExtractionFailure => &mut self.extraction_failures,
            ContainmentViolation => &mut self.containment_violations,
            ExactOracleMismatch => &mut self.exact_oracle_mismatches,
            ExactLevelsetMismatch => &mut self.exact_levelset_mismatches,
            InvalidWitness => &mut self.invalid_witnesses,
            SizeBoundViolation => &mut self.size_bound_violations,
        }
    }

    pub fn total(&self) -> usize {
        self.lists().iter().map(|(_, l)| l.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: String,
    pub params: SweepParams,
    pub config: DiffConfig,
    pub totals: Totals,
    pub per_n: Vec<PerN>,
    pub disagreements: Disagreements,
}

/// One swept instance on its way into a report.
pub(crate) struct Entry {
    pub id: String,
    pub seed: Option<u64>,
    pub report: DiffReport,
    pub circuits: Option<u64>,
}

#[derive(Default)]
struct TimingSums {
    count: u64,
    sums: [f64; 3],
    maxes: [f64; 3],
}

impl SweepReport {
    pub(crate) fn aggregate(params: SweepParams, config: DiffConfig, entries: Vec<Entry>) -> Self {
        let mut totals = Totals::default();
        let mut per_n: BTreeMap<usize, PerN> = BTreeMap::new();
        let mut circuit_known: BTreeMap<usize, bool> = BTreeMap::new();
        let mut timing: BTreeMap<usize, TimingSums> = BTreeMap::new();
        let mut disagreements = Disagreements::default();

        for Entry {
            id,
            seed,
            report: r,
            circuits,
        } in entries
        {
            let n = r.graph.n();
            let row = per_n.entry(n).or_insert_with(|| PerN {
                n,
                ..PerN::default()
            });
            totals.graphs_tested += 1;
            row.graphs += 1;
            match r.oracle.verdict {
                OracleVerdict::Yes => {
                    totals.oracle_yes += 1;
                    row.oracle_yes += 1;
                }
                OracleVerdict::No => {
                    totals.oracle_no += 1;
                    row.oracle_no += 1;
                }
                OracleVerdict::Unknown => {
                    totals.oracle_unknown += 1;
                    row.oracle_unknown += 1;
                }
            }
            let known = circuit_known.entry(n).or_insert(true);
            *known &= circuits.is_some();
            *row.circuit_total.get_or_insert(0) += circuits.unwrap_or(0);

            match r.exact.status {
                RunStatus::Complete => totals.exact_complete += 1,
                RunStatus::BudgetExhausted => totals.exact_budget_exhausted += 1,
                RunStatus::Skipped => totals.exact_skipped += 1,
            }
            if let Some(stats) = &r.exact.stats {
                row.max_exact_nodes = row.max_exact_nodes.max(stats.total_nodes());
            }
            match r.fuzzy.nonempty {
                Some(true) => {
                    totals.fuzzy_positive += 1;
                    row.fuzzy_positive += 1;
                }
                Some(false) => totals.fuzzy_negative += 1,
                None => totals.fuzzy_time_capped += 1,
            }
            if let Some(stats) = &r.fuzzy.stats {
                row.max_fuzzy_nodes = row.max_fuzzy_nodes.max(stats.total_nodes());
                row.max_fuzzy_transitions =
                    row.max_fuzzy_transitions.max(stats.total_transitions());
            }
            if let Some(eq) = r.agreement.levelsets_equality {
                totals.levelsets_compared += 1;
                row.levelsets_compared += 1;
                if eq {
                    totals.levelsets_equal += 1;
                    row.levelsets_equal += 1;
                }
            }
            if r.exact.witness.is_some() {
                totals.exact_witnesses_checked += 1;
            }
            if r.fuzzy.candidate_verified {
                totals.fuzzy_candidates_verified += 1;
            }

            let kinds = r.disagreements();
            if kinds.contains(&DisagreementKind::InvalidWitness) {
                totals.invalid_circuits += 1;
            }
            if kinds.contains(&DisagreementKind::FuzzyPositiveOracleNegative) {
                row.fuzzy_positive_oracle_negative += 1;
            }
            if kinds.contains(&DisagreementKind::ExtractionFailure) {
                row.extraction_failures += 1;
            }
            if !kinds.is_empty() {
                let inst = Instance::from_report(id, seed, &r);
                for &k in &kinds {
                    disagreements.list_mut(k).push(inst.clone());
                }
            }

            if let Some(t) = r.timings {
                let acc = timing.entry(n).or_default();
                acc.count += 1;
                for (k, secs) in [t.oracle_secs, t.exact_secs, t.fuzzy_secs]
                    .into_iter()
                    .enumerate()
                {
                    acc.sums[k] += secs;
                    acc.maxes[k] = acc.maxes[k].max(secs);
                }
            }
        }

        for (n, row) in per_n.iter_mut() {
            if !circuit_known[n] {
                row.circuit_total = None;
            }
            if let Some(acc) = timing.get(n) {
                let mean = |k: usize| acc.sums[k] / acc.count as f64;
                row.timing = Some(TimingAggregate {
                    oracle_mean_secs: mean(0),
                    oracle_max_secs: acc.maxes[0],
                    exact_mean_secs: mean(1),
                    exact_max_secs: acc.maxes[1],
                    fuzzy_mean_secs: mean(2),
                    fuzzy_max_secs: acc.maxes[2],
                });
            }
        }

        SweepReport {
            schema_version: SCHEMA_VERSION.to_string(),
            params,
            config,
            totals,
            per_n: per_n.into_values().collect(),
            disagreements,
        }
    }

    pub fn has_disagreements(&self) -> bool {
        !self.disagreements.is_empty()
    }

    /// Totals add up, and every listed instance carries the kind of the
    /// list it sits in.
    pub fn validate(&self) -> Result<(), String> {
        let t = &self.totals;
        if t.graphs_tested != t.oracle_yes + t.oracle_no + t.oracle_unknown {
            return Err("oracle verdict counts do not sum to graphs_tested".into());
        }
        if t.graphs_tested != t.exact_complete + t.exact_budget_exhausted + t.exact_skipped {
            return Err("exact status counts do not sum to graphs_tested".into());
        }
        if t.graphs_tested != t.fuzzy_positive + t.fuzzy_negative + t.fuzzy_time_capped {
            return Err("fuzzy verdict counts do not sum to graphs_tested".into());
        }
        let per_n_sum: u64 = self.per_n.iter().map(|r| r.graphs).sum();
        if per_n_sum != t.graphs_tested {
            return Err("per-n graph counts do not sum to graphs_tested".into());
        }
        for row in &self.per_n {
            if row.graphs != row.oracle_yes + row.oracle_no + row.oracle_unknown {
                return Err(format!("per-n row {} does not add up", row.n));
            }
        }
        for (kind, list) in self.disagreements.lists() {
            for inst in list {
                if !inst.kinds.contains(&kind) {
                    return Err(format!(
                        "instance {} listed under {kind:?} without it",
                        inst.id
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One header line plus one row per vertex count.
    pub fn csv_summary(&self) -> String {
        let mut s = String::from(
            "n,graphs,oracle_yes,oracle_no,oracle_unknown,fuzzy_positive,\
             fuzzy_positive_oracle_negative,extraction_failures,levelsets_compared,levelsets_equal\n",
        );
        for r in &self.per_n {
            writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{}",
                r.n,
                r.graphs,
                r.oracle_yes,
                r.oracle_no,
                r.oracle_unknown,
                r.fuzzy_positive,
                r.fuzzy_positive_oracle_negative,
                r.extraction_failures,
                r.levelsets_compared,
                r.levelsets_equal
            )
            .unwrap();
        }
        s
    }
}
