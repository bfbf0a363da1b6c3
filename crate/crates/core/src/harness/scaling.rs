//! Empirical growth-rate estimation for the state-set decider.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::trial_seed;
use crate::graph::{generate_erdos_renyi, GraphError};
use crate::stateset::{fuzzy_decide, FuzzyConfig, FuzzyError};

#[derive(Debug, Error, PartialEq)]
pub enum ScalingError {
    #[error("need samples at 4 or more distinct n, got {0}")]
    TooFewSizes(usize),
    #[error("sample ({n}, {secs}) is not positive and finite")]
    NonPositive { n: f64, secs: f64 },
}

/// Least-squares line through `(ln n, ln seconds)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub exponent: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual_rms: f64,
    pub r_squared: f64,
    pub samples: usize,
}

pub fn fit_scaling(samples: &[(f64, f64)]) -> Result<ScalingFit, ScalingError> {
    for &(n, secs) in samples {
        if !(n.is_finite() && secs.is_finite() && n > 0.0 && secs > 0.0) {
            return Err(ScalingError::NonPositive { n, secs });
        }
    }
    let distinct: BTreeSet<u64> = samples.iter().map(|&(n, _)| n.to_bits()).collect();
    if distinct.len() < 4 {
        return Err(ScalingError::TooFewSizes(distinct.len()));
    }
    let pts: Vec<(f64, f64)> = samples.iter().map(|&(n, t)| (n.ln(), t.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let ssr: f64 = pts
        .iter()
        .map(|p| (p.1 - intercept - exponent * p.0).powi(2))
        .sum();
    Ok(ScalingFit {
        exponent,
        intercept,
        residual_rms: (ssr / k).sqrt(),
        r_squared: if syy > 0.0 { 1.0 - ssr / syy } else { 1.0 },
        samples: pts.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchPoint {
    pub n: usize,
    pub trials: usize,
    pub median_secs: f64,
    pub mean_secs: f64,
    pub max_secs: f64,
    pub fuzzy_positive: usize,
    pub max_nodes: usize,
    pub max_transitions: usize,
    pub size_bounds_held: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub schema_version: String,
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
    pub points: Vec<BenchPoint>,
    /// Fit over per-trial `(n, seconds)` samples; absent when fewer than
    /// four sizes were run.
    pub fit: Option<ScalingFit>,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
}

/// Times [`fuzzy_decide`] on `trials` graphs `G(n, p)` per size, seeded
/// like a random campaign, and fits the growth exponent.
pub fn bench(
    n_list: &[usize],
    p: f64,
    trials: usize,
    seed: u64,
    cfg: FuzzyConfig,
) -> Result<BenchReport, BenchError> {
    let mut points = Vec::new();
    let mut samples = Vec::new();
    for &n in n_list {
        let mut secs = Vec::with_capacity(trials);
        let mut point = BenchPoint {
            n,
            trials,
            median_secs: 0.0,
            mean_secs: 0.0,
            max_secs: 0.0,
            fuzzy_positive: 0,
            max_nodes: 0,
            max_transitions: 0,
            size_bounds_held: true,
        };
        for t in 0..trials {
            let g = generate_erdos_renyi(n, p, trial_seed(seed, t))?;
            let started = Instant::now();
            let d = fuzzy_decide(&g, 0, cfg)?;
            let s = started.elapsed().as_secs_f64().max(1e-9);
            secs.push(s);
            samples.push((n as f64, s));
            point.fuzzy_positive += usize::from(d.nonempty);
            point.max_nodes = point.max_nodes.max(d.stats.total_nodes());
            point.max_transitions = point.max_transitions.max(d.stats.total_transitions());
            point.size_bounds_held &= d.within_size_bounds;
        }
        if !secs.is_empty() {
            secs.sort_by(f64::total_cmp);
            point.median_secs = secs[secs.len() / 2];
            point.mean_secs = secs.iter().sum::<f64>() / secs.len() as f64;
            point.max_secs = *secs.last().unwrap();
        }
        points.push(point);
    }
    Ok(BenchReport {
        schema_version: super::SCHEMA_VERSION.to_string(),
        p,
        trials,
        seed,
        points,
        fit: fit_scaling(&samples).ok(),
    })
}
