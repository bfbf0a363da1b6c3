use thiserror::Error;

use super::report::{Entry, SweepParams, SweepReport};
use super::{diff_run, DiffConfig};
use crate::graph::{enumerate_all_graphs, generate_erdos_renyi, GraphError};
use crate::oracle::oracle_count_circuits;
use crate::par::map_range;

/// Largest `max_n` an exhaustive sweep runs without `allow_large`.
pub const DEFAULT_SWEEP_CAP: usize = 6;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("exhaustive sweep up to n={max_n} refused; the default cap is {cap}, pass the override to go further")]
    CapRefused { max_n: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Diff-runs every labelled graph on `3..=max_n` vertices from start 0,
/// optionally restricted to connected graphs. Instances are ordered by `n`,
/// then by edge mask.
pub fn sweep_exhaustive(
    max_n: usize,
    connected_only: bool,
    allow_large: bool,
    cfg: &DiffConfig,
) -> Result<SweepReport, SweepError> {
    if max_n < 3 {
        return Err(SweepError::InvalidParameter(format!(
            "max_n must be at least 3, got {max_n}"
        )));
    }
    if max_n > DEFAULT_SWEEP_CAP && !allow_large {
        return Err(SweepError::CapRefused {
            max_n,
            cap: DEFAULT_SWEEP_CAP,
        });
    }
    let mut entries = Vec::new();
    for n in 3..=max_n {
        let all = enumerate_all_graphs(n, max_n)?;
        let total = all.total() as usize;
        let batch = map_range(cfg.instances, 0..total, |mask| {
            let g = all.graph_for_mask(mask as u64);
            if connected_only && !g.is_connected() {
                return None;
            }
            let circuits = oracle_count_circuits(&g, cfg.level_cap).ok();
            Some(Entry {
                id: format!("n{n}/mask{mask}"),
                seed: None,
                report: diff_run(&g, 0, cfg),
                circuits,
            })
        });
        entries.extend(batch.into_iter().flatten());
    }
    Ok(SweepReport::aggregate(
        SweepParams::Exhaustive {
            max_n,
            connected_only,
        },
        *cfg,
        entries,
    ))
}

/// Seed of trial `t` in a campaign seeded with `seed`:
/// `seed + t * 0x9E3779B97F4A7C15` (wrapping).
pub fn trial_seed(seed: u64, t: usize) -> u64 {
    seed.wrapping_add((t as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Diff-runs `trials` Erdős–Rényi graphs `G(n, p)` seeded by
/// [`trial_seed`], from start 0.
pub fn campaign_random(
    n: usize,
    p: f64,
    trials: usize,
    seed: u64,
    cfg: &DiffConfig,
) -> Result<SweepReport, SweepError> {
    if trials == 0 {
        return Err(SweepError::InvalidParameter(
            "trials must be at least 1".into(),
        ));
    }
    // surface parameter errors before fanning out
    generate_erdos_renyi(n, p, seed)?;
    let entries = map_range(cfg.instances, 0..trials, |t| {
        let s = trial_seed(seed, t);
        let g = generate_erdos_renyi(n, p, s).expect("parameters checked");
        Entry {
            id: format!("trial{t}"),
            seed: Some(s),
            circuits: oracle_count_circuits(&g, cfg.level_cap).ok(),
            report: diff_run(&g, 0, cfg),
        }
    });
    Ok(SweepReport::aggregate(
        SweepParams::Random { n, p, trials, seed },
        *cfg,
        entries,
    ))
}
