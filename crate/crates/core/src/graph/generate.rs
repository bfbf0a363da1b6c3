//! Seeded random instance generators.
//!
//! Both generators draw from `ChaCha8Rng::seed_from_u64(seed)` and visit
//! vertex pairs `(u, v)`, `u < v`, in lexicographic order, taking one
//! `f64` sample in `[0, 1)` per considered pair and keeping the pair when
//! the sample is below the probability. ChaCha8 output is specified
//! bit-for-bit, so a given `(n, p, seed)` yields the same graph everywhere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError};

fn check_probability(p: f64) -> Result<(), GraphError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GraphError::InvalidParameter(format!(
            "probability must lie in [0, 1], got {p}"
        )))
    }
}

/// G(n, p) with independent edges.
pub fn generate_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameter("n must be at least 1".into()));
    }
    check_probability(p)?;
    let mut g = Graph::empty(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// The cycle `0-1-...-(n-1)-0` plus each remaining pair with probability
/// `extra_p`. Hamiltonian by construction. Cycle pairs consume no samples.
pub fn generate_planted_cycle(n: usize, extra_p: f64, seed: u64) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter(format!(
            "planted cycle needs n >= 3, got {n}"
        )));
    }
    check_probability(extra_p)?;
    let mut g = Graph::cycle(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for u in 0..n {
        for v in u + 1..n {
            let on_cycle = v == u + 1 || (u == 0 && v == n - 1);
            if !on_cycle && rng.gen::<f64>() < extra_p {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}
