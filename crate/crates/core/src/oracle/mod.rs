//! Brute-force ground truth.
//!
//! Everything here is plain recursive backtracking over simple paths with a
//! visited bitmask, neighbours tried in ascending label order. None of it is
//! shared with the layered or state-set deciders. [`held_karp`] is a second,
//! structurally different cross-check.

pub mod held_karp;

use thiserror::Error;

use crate::graph::{Circuit, Graph, Vertex};
use crate::levels::LevelSets;
use crate::vertex_set::VertexSet;

/// Default vertex cap for the enumerating queries.
pub const DEFAULT_ORACLE_CAP: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the oracle cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("oracle search gave up after {0} steps")]
    StepBudget(u64),
}

/// First Hamiltonian circuit from `start` in lexicographic next-vertex
/// order, or `None`. Graphs with fewer than 3 vertices have no circuit.
pub fn oracle_has_circuit(g: &Graph, start: Vertex) -> Option<Circuit> {
    oracle_has_circuit_within(g, start, None).expect("unbounded search cannot exhaust")
}

/// [`oracle_has_circuit`] with an optional cap on recursive steps.
pub fn oracle_has_circuit_within(
    g: &Graph,
    start: Vertex,
    max_steps: Option<u64>,
) -> Result<Option<Circuit>, OracleError> {
    assert!(start < g.n(), "start {start} out of range");
    if g.n() < 3 {
        return Ok(None);
    }
    let mut search = CircuitSearch {
        g,
        start,
        path: vec![start],
        steps: 0,
        max_steps,
    };
    let found = search.extend(VertexSet::singleton(start))?;
    Ok(found.then_some(Circuit(search.path)))
}

struct CircuitSearch<'a> {
    g: &'a Graph,
    start: Vertex,
    path: Vec<Vertex>,
    steps: u64,
    max_steps: Option<u64>,
}

impl CircuitSearch<'_> {
    fn extend(&mut self, visited: VertexSet) -> Result<bool, OracleError> {
        self.steps += 1;
        if let Some(max) = self.max_steps {
            if self.steps > max {
                return Err(OracleError::StepBudget(max));
            }
        }
        let last = *self.path.last().unwrap();
        if self.path.len() == self.g.n() {
            return Ok(self.g.has_edge(last, self.start));
        }
        for next in self.g.neighbors(last).difference(visited) {
            self.path.push(next);
            if self.extend(visited.with(next))? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}

/// Number of undirected Hamiltonian cycles, each counted once.
///
/// Cycles are anchored at vertex 0 and a cycle `0, a, ..., b` is counted
/// only when `a < b`, which removes rotations and the reflection.
pub fn oracle_count_circuits(g: &Graph, cap: usize) -> Result<u64, OracleError> {
    let n = g.n();
    if n > cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    if n < 3 {
        return Ok(0);
    }
    fn walk(g: &Graph, path: &mut Vec<Vertex>, visited: VertexSet, count: &mut u64) {
        let last = *path.last().unwrap();
        if path.len() == g.n() {
            if g.has_edge(last, 0) && path[1] < last {
                *count += 1;
            }
            return;
        }
        for next in g.neighbors(last).difference(visited) {
            path.push(next);
            walk(g, path, visited.with(next), count);
            path.pop();
        }
    }
    let mut count = 0;
    walk(g, &mut vec![0], VertexSet::singleton(0), &mut count);
    Ok(count)
}

/// Level `i` holds `v` iff some simple path of exactly `i` edges runs from
/// `start` to `v`. Levels `0..n` are returned (`n` entries).
pub fn oracle_level_sets(g: &Graph, start: Vertex, cap: usize) -> Result<LevelSets, OracleError> {
    let n = g.n();
    if n > cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    assert!(start < n, "start {start} out of range");
    fn walk(g: &Graph, last: Vertex, depth: usize, visited: VertexSet, levels: &mut [VertexSet]) {
        levels[depth].insert(last);
        for next in g.neighbors(last).difference(visited) {
            walk(g, next, depth + 1, visited.with(next), levels);
        }
    }
    let mut levels = vec![VertexSet::EMPTY; n];
    walk(g, start, 0, VertexSet::singleton(start), &mut levels);
    Ok(LevelSets(levels))
}

/// Whether a simple path of exactly `len` edges from `start` to `u` exists
/// that never visits `v`. Every such path visits `start` and `u`, so either
/// of those as `v` gives `false`.
pub fn oracle_avoidance(g: &Graph, start: Vertex, u: Vertex, len: usize, v: Vertex) -> bool {
    if v == start || v == u {
        return false;
    }
    fn walk(g: &Graph, last: Vertex, left: usize, target: Vertex, visited: VertexSet) -> bool {
        if left == 0 {
            return last == target;
        }
        g.neighbors(last)
            .difference(visited)
            .into_iter()
            .any(|next| walk(g, next, left - 1, target, visited.with(next)))
    }
    let mut blocked = VertexSet::singleton(start);
    if v < g.n() {
        blocked.insert(v);
    }
    walk(g, start, len, u, blocked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_all_graphs, named_graph};

    fn named(name: &str) -> Graph {
        named_graph(name).unwrap()
    }

    #[test]
    fn witness_examples() {
        assert_eq!(
            oracle_has_circuit(&named("k3"), 0),
            Some(Circuit(vec![0, 1, 2]))
        );
        assert_eq!(oracle_has_circuit(&named("p3"), 0), None);
        assert_eq!(oracle_has_circuit(&named("petersen"), 0), None);
        let c = oracle_has_circuit(&named("cube"), 0).unwrap();
        c.validate(&named("cube")).unwrap();
    }

    #[test]
    fn tiny_graphs_have_no_circuit() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(oracle_has_circuit(&k2, 0), None);
        assert_eq!(oracle_count_circuits(&k2, 10), Ok(0));
    }

    #[test]
    fn step_budget_is_reported() {
        let g = named("petersen");
        assert_eq!(
            oracle_has_circuit_within(&g, 0, Some(5)),
            Err(OracleError::StepBudget(5))
        );
    }

    #[test]
    fn circuit_counts() {
        assert_eq!(oracle_count_circuits(&named("k3"), 10), Ok(1));
        assert_eq!(oracle_count_circuits(&named("k4"), 10), Ok(3));
        assert_eq!(oracle_count_circuits(&named("c6"), 10), Ok(1));
        assert_eq!(oracle_count_circuits(&named("petersen"), 10), Ok(0));
        // (n-1)!/2 for complete graphs
        assert_eq!(oracle_count_circuits(&named("k6"), 10), Ok(60));
        assert_eq!(
            oracle_count_circuits(&Graph::complete(11).unwrap(), 10),
            Err(OracleError::CapExceeded { n: 11, cap: 10 })
        );
    }

    /// Independent count: every permutation of `1..n` after vertex 0, kept
    /// if it closes into a cycle, divided by the 2 orientations.
    fn count_by_permutations(g: &Graph) -> u64 {
        fn permute(rest: &mut Vec<usize>, k: usize, g: &Graph, count: &mut u64) {
            if k == rest.len() {
                let mut seq = vec![0];
                seq.extend_from_slice(rest);
                if crate::graph::validate_circuit(g, &seq).is_ok() {
                    *count += 1;
                }
                return;
            }
            for i in k..rest.len() {
                rest.swap(k, i);
                permute(rest, k + 1, g, count);
                rest.swap(k, i);
            }
        }
        if g.n() < 3 {
            return 0;
        }
        let mut rest: Vec<usize> = (1..g.n()).collect();
        let mut count = 0;
        permute(&mut rest, 0, g, &mut count);
        count / 2
    }

    #[test]
    fn count_matches_permutation_enumeration() {
        for n in 3..=5 {
            for g in enumerate_all_graphs(n, 6).unwrap() {
                assert_eq!(
                    oracle_count_circuits(&g, 10).unwrap(),
                    count_by_permutations(&g)
                );
            }
        }
    }

    #[test]
    fn level_set_examples() {
        let k3 = oracle_level_sets(&named("k3"), 0, 10).unwrap();
        assert_eq!(
            k3.0,
            vec![
                VertexSet::singleton(0),
                [1, 2].into_iter().collect(),
                [1, 2].into_iter().collect(),
            ]
        );
        let p3 = oracle_level_sets(&named("p3"), 0, 10).unwrap();
        assert_eq!(
            p3.0,
            vec![
                VertexSet::singleton(0),
                VertexSet::singleton(1),
                VertexSet::singleton(2)
            ]
        );
        let star = oracle_level_sets(&named("star"), 0, 10).unwrap();
        assert_eq!(
            star.0,
            vec![
                VertexSet::singleton(0),
                [1, 2, 3].into_iter().collect(),
                VertexSet::EMPTY,
                VertexSet::EMPTY,
            ]
        );
    }

    #[test]
    fn avoidance_examples() {
        assert!(oracle_avoidance(&named("k3"), 0, 1, 1, 2));
        assert!(!oracle_avoidance(&named("p3"), 0, 2, 2, 1));
        assert!(oracle_avoidance(&named("k4"), 0, 3, 2, 1));
        assert!(!oracle_avoidance(&named("k4"), 0, 3, 2, 0));
        assert!(!oracle_avoidance(&named("k4"), 0, 3, 2, 3));
    }

    #[test]
    fn circuit_presence_matches_count_up_to_five() {
        for n in 1..=5 {
            for g in enumerate_all_graphs(n, 6).unwrap() {
                let found = oracle_has_circuit(&g, 0);
                if let Some(c) = &found {
                    c.validate(&g).unwrap();
                }
                assert_eq!(found.is_some(), oracle_count_circuits(&g, 10).unwrap() > 0);
            }
        }
    }

    #[test]
    fn avoidance_implies_level_membership() {
        for g in enumerate_all_graphs(5, 6).unwrap().step_by(7) {
            let levels = oracle_level_sets(&g, 0, 10).unwrap();
            for u in 0..5 {
                for i in 0..5 {
                    for v in 0..5 {
                        if oracle_avoidance(&g, 0, u, i, v) {
                            assert!(levels.level(i).contains(u));
                        }
                    }
                }
            }
            if oracle_has_circuit(&g, 0).is_some() {
                assert!(!levels.level(4).is_empty());
            }
        }
    }
}
