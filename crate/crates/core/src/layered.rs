//! Exact layered decider.
//!
//! A [`LayeredDag`] stores every simple path that leaves the start vertex as
//! a prefix tree split into levels: a node at level `i` is one stored path of
//! `i` edges, its *meaning* is the graph vertex the path ends at, and its
//! *tag* is its creation index. Level `i + 1` is grown from level `i` by
//! asking, for every node `u` and every neighbour `v` of `u`'s meaning,
//! whether `v` is *necessary* for `u`: cut out the ancestor sub-DAG of `u`,
//! delete every node meaning `v`, drop whatever no longer lies on a
//! root-to-`u` path, and see if anything is left. `v` extends `u` only when
//! something is.
//!
//! The start vertex never reappears inside the DAG; closing the circuit is a
//! plain adjacency test against level `n - 1`. The structure is exponential,
//! so construction runs under an [`ExactBudget`].

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Circuit, Graph, Vertex};
use crate::levels::LevelSets;
use crate::par::{map_slice, Parallelism};
use crate::vertex_set::VertexSet;

pub type Tag = u32;

pub const DEFAULT_MAX_NODES: usize = 10_000_000;
pub const DEFAULT_MAX_TIME: Duration = Duration::from_secs(60);

pub const ENV_MAX_NODES: &str = "HAMLAB_EXACT_MAX_NODES";
pub const ENV_MAX_SECS: &str = "HAMLAB_EXACT_MAX_SECS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactBudget {
    pub max_nodes: usize,
    #[serde(with = "secs")]
    pub max_time: Duration,
}

mod secs {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)?))
    }
}

impl Default for ExactBudget {
    fn default() -> Self {
        ExactBudget {
            max_nodes: DEFAULT_MAX_NODES,
            max_time: DEFAULT_MAX_TIME,
        }
    }
}

impl ExactBudget {
    /// Defaults, overridden by `HAMLAB_EXACT_MAX_NODES` and
    /// `HAMLAB_EXACT_MAX_SECS` when set.
    pub fn from_env() -> Result<Self, String> {
        let mut b = ExactBudget::default();
        if let Ok(s) = std::env::var(ENV_MAX_NODES) {
            b.max_nodes = s
                .trim()
                .parse()
                .map_err(|_| format!("{ENV_MAX_NODES}=`{s}` is not an integer"))?;
        }
        if let Ok(s) = std::env::var(ENV_MAX_SECS) {
            let secs: f64 = s
                .trim()
                .parse()
                .map_err(|_| format!("{ENV_MAX_SECS}=`{s}` is not a number"))?;
            if !(secs.is_finite() && secs > 0.0) {
                return Err(format!("{ENV_MAX_SECS} must be positive"));
            }
            b.max_time = Duration::from_secs_f64(secs);
        }
        Ok(b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetKind {
    Nodes,
    Time,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExactError {
    #[error("exact construction exhausted its {kind:?} budget at level {}", stats.nodes_per_level.len())]
    BudgetExhausted {
        kind: BudgetKind,
        stats: LayeredStats,
    },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("start vertex {start} out of range for {n} vertices")]
    StartOutOfRange { start: Vertex, n: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LayeredStats {
    pub nodes_per_level: Vec<usize>,
    /// Arcs entering each level; entry 0 is always 0.
    pub arcs_per_level: Vec<usize>,
    pub necessary_queries: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl LayeredStats {
    pub fn total_nodes(&self) -> usize {
        self.nodes_per_level.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayeredNode {
    pub level: u32,
    pub meaning: u32,
    pub parent: Option<Tag>,
}

#[derive(Debug, Clone)]
pub struct LayeredDag {
    n: usize,
    start: Vertex,
    nodes: Vec<LayeredNode>,
    /// Level `i` is `nodes[level_starts[i]..level_starts[i + 1]]`.
    level_starts: Vec<usize>,
    necessary_queries: u64,
}

impl LayeredDag {
    /// Level 0 only: the single start node with tag 0.
    pub fn new(g: &Graph, start: Vertex) -> Result<Self, ExactError> {
        if g.n() == 0 {
            return Err(ExactError::EmptyGraph);
        }
        if start >= g.n() {
            return Err(ExactError::StartOutOfRange { start, n: g.n() });
        }
        Ok(LayeredDag {
            n: g.n(),
            start,
            nodes: vec![LayeredNode {
                level: 0,
                meaning: start as u32,
                parent: None,
            }],
            level_starts: vec![0, 1],
            necessary_queries: 0,
        })
    }

    pub fn start(&self) -> Vertex {
        self.start
    }

    /// Vertex count of the graph the structure was built for.
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> Tag {
        0
    }

    /// Number of levels built so far, counting level 0.
    pub fn depth(&self) -> usize {
        self.level_starts.len() - 1
    }

    pub fn node(&self, tag: Tag) -> &LayeredNode {
        &self.nodes[tag as usize]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn level(&self, i: usize) -> impl Iterator<Item = Tag> + '_ {
        let range = self.level_starts[i]..self.level_starts[i + 1];
        range.map(|t| t as Tag)
    }

    pub fn level_len(&self, i: usize) -> usize {
        self.level_starts[i + 1] - self.level_starts[i]
    }

    pub fn parents(&self, tag: Tag) -> impl Iterator<Item = Tag> + '_ {
        self.nodes[tag as usize].parent.into_iter()
    }

    /// `(parent, child)` pairs.
    pub fn arcs(&self) -> impl Iterator<Item = (Tag, Tag)> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(t, node)| node.parent.map(|p| (p, t as Tag)))
    }

    /// Meanings along the root path to `tag`, root first.
    pub fn path_to(&self, tag: Tag) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.node(tag).level as usize + 1);
        let mut cur = Some(tag);
        while let Some(t) = cur {
            out.push(self.node(t).meaning as usize);
            cur = self.node(t).parent;
        }
        out.reverse();
        out
    }

    /// Distinct meanings present at each level.
    pub fn level_sets(&self) -> LevelSets {
        LevelSets(
            (0..self.depth())
                .map(|i| {
                    self.level(i)
                        .map(|t| self.node(t).meaning as usize)
                        .collect()
                })
                .collect(),
        )
    }

    pub fn stats(&self) -> LayeredStats {
        let nodes_per_level: Vec<usize> = (0..self.depth()).map(|i| self.level_len(i)).collect();
        let mut arcs_per_level = nodes_per_level.clone();
        arcs_per_level[0] = 0;
        LayeredStats {
            nodes_per_level,
            arcs_per_level,
            necessary_queries: self.necessary_queries,
            elapsed: Duration::ZERO,
        }
    }

    /// One line per node: `level tag meaning parents`, parents
    /// comma-separated or `-` for the root.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (t, node) in self.nodes.iter().enumerate() {
            let parents = match node.parent {
                Some(p) => p.to_string(),
                None => "-".to_string(),
            };
            writeln!(s, "{} {} {} {}", node.level, t, node.meaning, parents).unwrap();
        }
        s
    }
}

/// Whether `v` is necessary for node `u`: after cutting out the ancestor
/// sub-DAG of `u`, deleting every node that means `v`, and dropping nodes
/// that no longer sit on a root-to-`u` path, nothing remains.
pub fn exact_necessary(dag: &LayeredDag, u: Tag, v: Vertex) -> bool {
    // ancestor sub-DAG of u, in root-first order
    let mut sub: Vec<Tag> = Vec::with_capacity(dag.node(u).level as usize + 1);
    let mut stack = vec![u];
    while let Some(t) = stack.pop() {
        if !sub.contains(&t) {
            sub.push(t);
            stack.extend(dag.parents(t));
        }
    }
    sub.sort_unstable();

    let kept: Vec<bool> = sub
        .iter()
        .map(|&t| dag.node(t).meaning as usize != v)
        .collect();
    let idx = |t: Tag| sub.binary_search(&t).ok();

    // forward from the root through kept nodes
    let mut from_root = vec![false; sub.len()];
    for (k, &t) in sub.iter().enumerate() {
        if !kept[k] {
            continue;
        }
        from_root[k] = if t == dag.root() {
            true
        } else {
            dag.parents(t).filter_map(idx).any(|p| from_root[p])
        };
    }
    // backward from u through nodes reachable from the root
    let mut to_u = vec![false; sub.len()];
    let Some(u_idx) = idx(u) else { return true };
    to_u[u_idx] = from_root[u_idx];
    for k in (0..sub.len()).rev() {
        if !to_u[k] {
            continue;
        }
        for p in dag.parents(sub[k]).filter_map(idx) {
            if from_root[p] {
                to_u[p] = true;
            }
        }
    }
    !to_u.iter().any(|&alive| alive)
}

struct Deadline {
    started: Instant,
    budget: ExactBudget,
}

impl Deadline {
    fn check(&self, dag: &LayeredDag, extra_nodes: usize) -> Result<(), ExactError> {
        let kind = if dag.node_count() + extra_nodes > self.budget.max_nodes {
            BudgetKind::Nodes
        } else if self.started.elapsed() > self.budget.max_time {
            BudgetKind::Time
        } else {
            return Ok(());
        };
        let mut stats = dag.stats();
        stats.elapsed = self.started.elapsed();
        Err(ExactError::BudgetExhausted { kind, stats })
    }
}

/// Adds level `i + 1` to a DAG whose levels `0..=i` are complete. Children
/// get consecutive tags ordered by parent tag, then by meaning.
pub fn exact_extend_level(
    mut dag: LayeredDag,
    g: &Graph,
    budget: ExactBudget,
    par: Parallelism,
) -> Result<LayeredDag, ExactError> {
    let deadline = Deadline {
        started: Instant::now(),
        budget,
    };
    extend(&mut dag, g, &deadline, par)?;
    Ok(dag)
}

fn extend(
    dag: &mut LayeredDag,
    g: &Graph,
    deadline: &Deadline,
    par: Parallelism,
) -> Result<(), ExactError> {
    let i = dag.depth() - 1;
    let frontier: Vec<Tag> = dag.level(i).collect();
    let start = dag.start;
    let view: &LayeredDag = dag;
    let children: Vec<(Vec<Vertex>, u64)> = map_slice(par, &frontier, |&u| {
        let meaning = view.node(u).meaning as usize;
        let candidates = g.neighbors(meaning).without(start);
        let admissible = candidates
            .iter()
            .filter(|&v| !exact_necessary(view, u, v))
            .collect();
        (admissible, candidates.len() as u64)
    });

    let added: usize = children.iter().map(|(c, _)| c.len()).sum();
    deadline.check(dag, added)?;
    for (&u, (kids, queries)) in frontier.iter().zip(children) {
        dag.necessary_queries += queries;
        for v in kids {
            dag.nodes.push(LayeredNode {
                level: (i + 1) as u32,
                meaning: v as u32,
                parent: Some(u),
            });
        }
    }
    dag.level_starts.push(dag.nodes.len());
    Ok(())
}

/// Builds levels `0..n` (paths of `0..n-1` edges).
pub fn exact_build(
    g: &Graph,
    start: Vertex,
    budget: ExactBudget,
    par: Parallelism,
) -> Result<LayeredDag, ExactError> {
    let deadline = Deadline {
        started: Instant::now(),
        budget,
    };
    let mut dag = LayeredDag::new(g, start)?;
    while dag.depth() < g.n() {
        extend(&mut dag, g, &deadline, par)?;
    }
    Ok(dag)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    pub has_circuit: bool,
    pub level_sets: LevelSets,
    pub witness: Option<Circuit>,
    pub stats: LayeredStats,
}

/// Builds the full DAG and accepts iff some level `n - 1` node's meaning is
/// adjacent to the start. The witness is the root path of the first such
/// node in tag order.
pub fn exact_decide(
    g: &Graph,
    start: Vertex,
    budget: ExactBudget,
    par: Parallelism,
) -> Result<Decision, ExactError> {
    let started = Instant::now();
    let dag = exact_build(g, start, budget, par)?;
    Ok(decide_from(&dag, g, started.elapsed()))
}

pub fn decide_from(dag: &LayeredDag, g: &Graph, elapsed: Duration) -> Decision {
    let n = g.n();
    let closing = g.neighbors(dag.start());
    let accepting = if n >= 3 && dag.depth() == n {
        dag.level(n - 1)
            .find(|&t| closing.contains(dag.node(t).meaning as usize))
    } else {
        None
    };
    let witness = accepting.map(|t| Circuit(dag.path_to(t)));
    let mut stats = dag.stats();
    stats.elapsed = elapsed;
    Decision {
        has_circuit: witness.is_some(),
        level_sets: dag.level_sets(),
        witness,
        stats,
    }
}

/// Meanings on the root path of `tag`, as a set.
pub fn path_meanings(dag: &LayeredDag, tag: Tag) -> VertexSet {
    dag.path_to(tag).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named_graph;
    use crate::oracle::{oracle_avoidance, oracle_level_sets};

    fn build(name: &str) -> (Graph, LayeredDag) {
        let g = named_graph(name).unwrap();
        let dag = exact_build(&g, 0, ExactBudget::default(), Parallelism::Sequential).unwrap();
        (g, dag)
    }

    fn meanings(dag: &LayeredDag, i: usize) -> Vec<usize> {
        dag.level(i).map(|t| dag.node(t).meaning as usize).collect()
    }

    #[test]
    fn k3_levels() {
        let (_, dag) = build("k3");
        assert_eq!(dag.stats().nodes_per_level, vec![1, 2, 2]);
        assert_eq!(meanings(&dag, 1), vec![1, 2]);
        assert_eq!(meanings(&dag, 2), vec![2, 1]);
    }

    #[test]
    fn p3_levels() {
        let (_, dag) = build("p3");
        assert_eq!(dag.stats().nodes_per_level, vec![1, 1, 1]);
    }

    #[test]
    fn k4_level_three_holds_all_orderings() {
        let (_, dag) = build("k4");
        assert_eq!(dag.level_len(3), 6);
        let mut paths: Vec<Vec<usize>> = dag.level(3).map(|t| dag.path_to(t)).collect();
        paths.sort();
        assert_eq!(
            paths,
            vec![
                vec![0, 1, 2, 3],
                vec![0, 1, 3, 2],
                vec![0, 2, 1, 3],
                vec![0, 2, 3, 1],
                vec![0, 3, 1, 2],
                vec![0, 3, 2, 1],
            ]
        );
    }

    #[test]
    fn single_level_extension() {
        let g = named_graph("star").unwrap();
        let dag = LayeredDag::new(&g, 0).unwrap();
        let dag =
            exact_extend_level(dag, &g, ExactBudget::default(), Parallelism::Sequential).unwrap();
        assert_eq!(meanings(&dag, 1), vec![1, 2, 3]);
        let dag =
            exact_extend_level(dag, &g, ExactBudget::default(), Parallelism::Sequential).unwrap();
        assert_eq!(dag.level_len(2), 0);

        let (_, p3) = build("p3");
        assert_eq!(meanings(&p3, 2), vec![2]);
    }

    #[test]
    fn necessary_examples() {
        let (_, k3) = build("k3");
        let node1 = k3.level(1).next().unwrap();
        assert!(!exact_necessary(&k3, node1, 2));

        let (_, p3) = build("p3");
        let end = p3.level(2).next().unwrap();
        assert!(exact_necessary(&p3, end, 1));
    }

    #[test]
    fn necessary_matches_stored_path_and_oracle() {
        let (g, dag) = build("k4");
        for i in 0..4 {
            for u in dag.level(i) {
                let on_path = path_meanings(&dag, u);
                for v in 1..4 {
                    assert_eq!(exact_necessary(&dag, u, v), on_path.contains(v));
                }
            }
            // some stored node avoids v iff the oracle finds an avoiding path
            for m in 0..4 {
                for v in 1..4 {
                    if v == m {
                        continue;
                    }
                    let any = dag
                        .level(i)
                        .filter(|&u| dag.node(u).meaning as usize == m)
                        .any(|u| !exact_necessary(&dag, u, v));
                    assert_eq!(any, oracle_avoidance(&g, 0, m, i, v), "m={m} i={i} v={v}");
                }
            }
        }
    }

    #[test]
    fn decisions_on_named_graphs() {
        let run = |name: &str| {
            let g = named_graph(name).unwrap();
            exact_decide(&g, 0, ExactBudget::default(), Parallelism::Sequential).unwrap()
        };
        let k3 = run("k3");
        assert!(k3.has_circuit);
        assert_eq!(k3.witness, Some(Circuit(vec![0, 1, 2])));
        assert!(!run("p3").has_circuit);
        let petersen = run("petersen");
        assert!(!petersen.has_circuit);
        assert_eq!(
            petersen.level_sets,
            oracle_level_sets(&named_graph("petersen").unwrap(), 0, 10).unwrap()
        );
        assert!(!run("star").has_circuit);
        assert!(!run("k2_3").has_circuit);
        let cube = run("cube");
        cube.witness
            .unwrap()
            .validate(&named_graph("cube").unwrap())
            .unwrap();
    }

    #[test]
    fn two_vertices_never_close() {
        let g = Graph::complete(2).unwrap();
        let d = exact_decide(&g, 0, ExactBudget::default(), Parallelism::Sequential).unwrap();
        assert!(!d.has_circuit);
        assert_eq!(d.stats.nodes_per_level, vec![1, 1]);
    }

    #[test]
    fn node_budget_is_clean() {
        let g = named_graph("k9").unwrap();
        let budget = ExactBudget {
            max_nodes: 1000,
            max_time: DEFAULT_MAX_TIME,
        };
        match exact_build(&g, 0, budget, Parallelism::Sequential) {
            Err(ExactError::BudgetExhausted { kind, stats }) => {
                assert_eq!(kind, BudgetKind::Nodes);
                assert!(stats.total_nodes() <= 1000);
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn time_budget_is_clean() {
        let g = named_graph("k9").unwrap();
        let budget = ExactBudget {
            max_nodes: DEFAULT_MAX_NODES,
            max_time: Duration::ZERO,
        };
        assert!(matches!(
            exact_build(&g, 0, budget, Parallelism::Sequential),
            Err(ExactError::BudgetExhausted {
                kind: BudgetKind::Time,
                ..
            })
        ));
    }

    #[test]
    fn rejects_bad_input() {
        let g = Graph::empty(0).unwrap();
        assert_eq!(LayeredDag::new(&g, 0).unwrap_err(), ExactError::EmptyGraph);
        let g = Graph::complete(3).unwrap();
        assert!(matches!(
            LayeredDag::new(&g, 3),
            Err(ExactError::StartOutOfRange { .. })
        ));
    }

    #[test]
    fn dump_format() {
        let (_, dag) = build("p3");
        assert_eq!(dag.dump(), "0 0 0 -\n1 1 1 0\n2 2 2 1\n");
    }

    #[test]
    fn parallel_build_is_identical() {
        let g = named_graph("k6").unwrap();
        let a = exact_build(&g, 0, ExactBudget::default(), Parallelism::Sequential).unwrap();
        let b = exact_build(&g, 0, ExactBudget::default(), Parallelism::Parallel).unwrap();
        assert_eq!(a.dump(), b.dump());
    }
}
