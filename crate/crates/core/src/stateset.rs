//! State-set ("fuzzy") decider.
//!
//! Where the layered DAG keeps one node per stored path, a [`StateSetDag`]
//! keeps at most one node per `(level, meaning)` key: every layered node that
//! would mean `v` at level `i` is merged into the single state set `(i, v)`.
//! Two support indices ride along:
//!
//! * `rel(q)`: the keys lying on some root path to `q` (its ancestors and
//!   itself), built as the union of the contributors' `rel` on extension;
//! * `relrel(p)`: the transitions lying on some root path through `p`.
//!   These are exactly the transitions whose target is in `rel(p)` plus
//!   those whose source is `p` or a descendant of `p`, so each node stores
//!   its descendant keys and [`RelRel`] is a view over both key sets.
//!
//! The admissibility query for extending node `u` by meaning `v` works on a
//! private view of the ancestor sub-structure `rel(u)`: delete the state sets
//! meaning `v`, cascade-delete `relrel(deleted) \ ∪ relrel(p')` over the
//! surviving `p'` (with `relrel` bound to root-to-`u` paths of the pruned
//! view), then test whether a root-to-`u` path survives. The shared
//! structure is never modified by a query.
//!
//! The result over-approximates the exact level sets. Whether it is exact is
//! what the differential harness measures.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{validate_circuit, Circuit, Graph, Vertex};
use crate::levels::LevelSets;
use crate::par::{map_slice, Parallelism};
use crate::vertex_set::VertexSet;

pub const DEFAULT_FUZZY_MAX_TIME: Duration = Duration::from_secs(300);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StateKey {
    pub level: usize,
    pub meaning: Vertex,
}

impl StateKey {
    pub fn new(level: usize, meaning: Vertex) -> Self {
        StateKey { level, meaning }
    }
}

/// Transition from `(level, from)` to `(level + 1, to)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transition {
    pub level: usize,
    pub from: Vertex,
    pub to: Vertex,
}

#[derive(Debug, Clone)]
pub struct StateNode {
    /// Meanings at the previous level with a transition into this node.
    pub preds: VertexSet,
    /// Meanings at the next level this node has a transition to.
    pub succs: VertexSet,
    /// `rel[j]`: meanings of level-`j` keys on some root path to this node.
    pub rel: Vec<VertexSet>,
    /// `desc[j]`: meanings of level-`j` keys reachable from this node.
    pub desc: Vec<VertexSet>,
}

#[derive(Debug, Clone)]
struct StateLevel {
    present: VertexSet,
    nodes: Vec<Option<StateNode>>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FuzzyError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("start vertex {start} out of range for {n} vertices")]
    StartOutOfRange { start: Vertex, n: usize },
    #[error("state-set construction exceeded its safety time cap at level {level}")]
    TimeCap { level: usize },
}

#[derive(Debug, Clone)]
pub struct StateSetDag {
    n: usize,
    start: Vertex,
    levels: Vec<StateLevel>,
    avoidance_queries: u64,
}

/// Transitions on some root path through a node.
pub struct RelRel<'a> {
    dag: &'a StateSetDag,
    key: StateKey,
}

impl RelRel<'_> {
    pub fn contains(&self, t: Transition) -> bool {
        if !self.dag.has_transition(t) {
            return false;
        }
        let node = self.dag.node(self.key).expect("relrel of a present node");
        let into_ancestor = t.level < self.key.level && node.rel[t.level + 1].contains(t.to);
        let from_descendant = (t.level == self.key.level && t.from == self.key.meaning)
            || (t.level > self.key.level && node.desc[t.level].contains(t.from));
        into_ancestor || from_descendant
    }

    pub fn iter(&self) -> impl Iterator<Item = Transition> + '_ {
        self.dag.transitions().filter(move |&t| self.contains(t))
    }

    /// Counted from in/out degrees; the two halves are disjoint because
    /// they sit on opposite sides of the node's level.
    pub fn len(&self) -> usize {
        let node = self.dag.node(self.key).expect("relrel of a present node");
        let before: usize = (1..=self.key.level)
            .flat_map(|j| node.rel[j].iter().map(move |b| (j, b)))
            .map(|(j, b)| self.dag.node(StateKey::new(j, b)).unwrap().preds.len())
            .sum();
        let after: usize = (self.key.level..self.dag.depth())
            .flat_map(|j| {
                let at = if j == self.key.level {
                    VertexSet::singleton(self.key.meaning)
                } else {
                    node.desc[j]
                };
                at.iter().map(move |a| (j, a))
            })
            .map(|(j, a)| self.dag.node(StateKey::new(j, a)).unwrap().succs.len())
            .sum();
        before + after
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl StateSetDag {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn start(&self) -> Vertex {
        self.start
    }

    pub fn root(&self) -> StateKey {
        StateKey::new(0, self.start)
    }

    /// Levels built so far, counting level 0.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn level_meanings(&self, i: usize) -> VertexSet {
        self.levels.get(i).map(|l| l.present).unwrap_or_default()
    }

    pub fn node(&self, key: StateKey) -> Option<&StateNode> {
        self.levels.get(key.level)?.nodes.get(key.meaning)?.as_ref()
    }

    pub fn contains(&self, key: StateKey) -> bool {
        self.node(key).is_some()
    }

    pub fn has_transition(&self, t: Transition) -> bool {
        self.node(StateKey::new(t.level, t.from))
            .is_some_and(|n| n.succs.contains(t.to))
    }

    pub fn keys(&self) -> impl Iterator<Item = StateKey> + '_ {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(i, l)| l.present.iter().map(move |m| StateKey::new(i, m)))
    }

    /// All transitions in (level, from, to) order.
    pub fn transitions(&self) -> impl Iterator<Item = Transition> + '_ {
        self.keys().flat_map(move |k| {
            let succs = self.node(k).unwrap().succs;
            succs.iter().map(move |to| Transition {
                level: k.level,
                from: k.meaning,
                to,
            })
        })
    }

    pub fn node_count(&self) -> usize {
        self.levels.iter().map(|l| l.present.len()).sum()
    }

    pub fn transition_count(&self) -> usize {
        self.keys().map(|k| self.node(k).unwrap().succs.len()).sum()
    }

    /// `rel(key)` as a sorted key list.
    pub fn rel(&self, key: StateKey) -> Vec<StateKey> {
        let node = self.node(key).expect("rel of a present node");
        node.rel
            .iter()
            .enumerate()
            .flat_map(|(j, s)| s.iter().map(move |m| StateKey::new(j, m)))
            .collect()
    }

    pub fn relrel(&self, key: StateKey) -> RelRel<'_> {
        assert!(self.contains(key), "relrel of a missing node {key:?}");
        RelRel { dag: self, key }
    }

    pub fn level_sets(&self) -> LevelSets {
        LevelSets(self.levels.iter().map(|l| l.present).collect())
    }

    pub fn stats(&self) -> FuzzyStats {
        FuzzyStats {
            nodes_per_level: self.levels.iter().map(|l| l.present.len()).collect(),
            transitions_per_level: self
                .levels
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    if i == 0 {
                        0
                    } else {
                        l.present
                            .iter()
                            .map(|m| self.node(StateKey::new(i, m)).unwrap().preds.len())
                            .sum()
                    }
                })
                .collect(),
            avoidance_queries: self.avoidance_queries,
            elapsed: Duration::ZERO,
        }
    }

    /// `nodes <= n(n+1)` and `transitions <= n^3`.
    pub fn within_size_bounds(&self) -> bool {
        let n = self.n;
        self.node_count() <= n * (n + 1) && self.transition_count() <= n * n * n
    }

    /// One line per node: `level meaning in_transitions |rel| |relrel|`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for k in self.keys() {
            let node = self.node(k).unwrap();
            let rel: usize = node.rel.iter().map(|r| r.len()).sum();
            writeln!(
                s,
                "{} {} {} {} {}",
                k.level,
                k.meaning,
                node.preds.len(),
                rel,
                self.relrel(k).len()
            )
            .unwrap();
        }
        s
    }
}

/// Level 0 only: the start state set.
pub fn fuzzy_init(g: &Graph, start: Vertex) -> Result<StateSetDag, FuzzyError> {
    let n = g.n();
    if n == 0 {
        return Err(FuzzyError::EmptyGraph);
    }
    if start >= n {
        return Err(FuzzyError::StartOutOfRange { start, n });
    }
    let mut nodes = vec![None; n];
    nodes[start] = Some(StateNode {
        preds: VertexSet::EMPTY,
        succs: VertexSet::EMPTY,
        rel: vec![VertexSet::singleton(start)],
        desc: vec![VertexSet::EMPTY; n],
    });
    Ok(StateSetDag {
        n,
        start,
        levels: vec![StateLevel {
            present: VertexSet::singleton(start),
            nodes,
        }],
        avoidance_queries: 0,
    })
}

/// Bookkeeping from one admissibility query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AvoidanceOutcome {
    pub survived: bool,
    pub view_nodes: usize,
    pub view_transitions: usize,
    pub deleted_nodes: usize,
    /// Transitions removed because an endpoint was deleted.
    pub removed_with_nodes: usize,
    /// Further transitions removed by the cascade rule alone.
    pub cascaded: usize,
}

/// Whether a root-to-`u` path survives once the state sets meaning `v` are
/// deleted from `u`'s ancestor view and the cascade rule has run.
pub fn fuzzy_avoidance(dag: &StateSetDag, u: StateKey, v: Vertex) -> bool {
    avoidance_outcome(dag, u, v).survived
}

/// [`fuzzy_avoidance`] with per-step counts.
pub fn avoidance_outcome(dag: &StateSetDag, u: StateKey, v: Vertex) -> AvoidanceOutcome {
    ViewCache::new(dag, u).outcome(dag, u, v)
}

/// Successors of every node in `rel(u)`, restricted to `rel(u)`, shared by
/// all queries on the same `u`.
struct ViewCache {
    out: Vec<Vec<VertexSet>>,
    view_nodes: usize,
    view_transitions: usize,
}

impl ViewCache {
    fn new(dag: &StateSetDag, u: StateKey) -> Self {
        let view = &dag.node(u).expect("avoidance query on a missing node").rel;
        let mut out = vec![vec![VertexSet::EMPTY; dag.n]; u.level];
        let mut view_transitions = 0;
        for (j, row) in out.iter_mut().enumerate() {
            for a in view[j] {
                let s = dag
                    .node(StateKey::new(j, a))
                    .unwrap()
                    .succs
                    .intersection(view[j + 1]);
                view_transitions += s.len();
                row[a] = s;
            }
        }
        ViewCache {
            out,
            view_nodes: view.iter().map(|s| s.len()).sum(),
            view_transitions,
        }
    }

    fn outcome(&self, dag: &StateSetDag, u: StateKey, v: Vertex) -> AvoidanceOutcome {
        let i = u.level;
        let view = &dag.node(u).unwrap().rel;
        let mut out = AvoidanceOutcome {
            view_nodes: self.view_nodes,
            view_transitions: self.view_transitions,
            ..Default::default()
        };
        let succ = |j: usize, a: Vertex| self.out[j][a];

        if v == dag.start || v == u.meaning {
            out.deleted_nodes = usize::from(v == u.meaning);
            return out;
        }

        // step 2: delete the state sets meaning v
        let kept: Vec<VertexSet> = view
            .iter()
            .enumerate()
            .map(|(j, s)| if j == 0 { *s } else { s.without(v) })
            .collect();
        out.deleted_nodes = (1..=i).filter(|&j| view[j].contains(v)).count();

        // relrel(d), d deleted, bound to root-to-u paths of the full view:
        // transitions on a view path that touches v before or after them
        let mut touched_before = vec![VertexSet::EMPTY; i + 1];
        for j in 0..i {
            let mut reach = VertexSet::EMPTY;
            for a in touched_before[j] {
                reach = reach.union(succ(j, a));
            }
            touched_before[j + 1] = view[j + 1].intersection(reach.with(v));
        }
        let mut touched_after = vec![VertexSet::EMPTY; i + 1];
        for j in (0..i).rev() {
            touched_after[j] = view[j]
                .iter()
                .filter(|&a| a == v || !succ(j, a).intersection(touched_after[j + 1]).is_empty())
                .collect();
        }

        // relrel(p'), p' surviving, bound to root-to-u paths of the pruned view
        let mut fwd = vec![VertexSet::EMPTY; i + 1];
        fwd[0] = VertexSet::singleton(dag.start);
        for j in 0..i {
            let mut reach = VertexSet::EMPTY;
            for a in fwd[j] {
                reach = reach.union(succ(j, a));
            }
            fwd[j + 1] = kept[j + 1].intersection(reach);
        }
        let mut bwd = vec![VertexSet::EMPTY; i + 1];
        bwd[i] = VertexSet::singleton(u.meaning);
        for j in (0..i).rev() {
            bwd[j] = kept[j]
                .iter()
                .filter(|&a| !succ(j, a).intersection(bwd[j + 1]).is_empty())
                .collect();
        }

        // step 3 and the survival test over what is left
        let mut alive = VertexSet::singleton(dag.start);
        for j in 0..i {
            let mut reach = VertexSet::EMPTY;
            for a in view[j] {
                let all = succ(j, a);
                let with_node = if a == v {
                    all
                } else {
                    all.intersection(VertexSet::singleton(v))
                };
                let through_deleted = if touched_before[j].contains(a) {
                    all
                } else {
                    all.intersection(touched_after[j + 1])
                };
                let supported = if fwd[j].contains(a) {
                    all.intersection(bwd[j + 1])
                } else {
                    VertexSet::EMPTY
                };
                let cascade = through_deleted.difference(supported);
                out.removed_with_nodes += with_node.len();
                out.cascaded += cascade.difference(with_node).len();
                if alive.contains(a) {
                    reach = reach.union(all.difference(with_node).difference(cascade));
                }
            }
            alive = reach;
        }
        out.survived = alive.contains(u.meaning);
        out
    }
}

/// Adds level `i + 1`: one state set per meaning `v != start` admitted by at
/// least one level-`i` node, with a transition from every admitting node.
pub fn fuzzy_extend_level(dag: &mut StateSetDag, g: &Graph, par: Parallelism) {
    let i = dag.depth() - 1;
    let start = dag.start;
    let frontier: Vec<Vertex> = dag.level_meanings(i).to_vec();
    let view: &StateSetDag = dag;
    let admitted: Vec<(VertexSet, u64)> = map_slice(par, &frontier, |&m| {
        let key = StateKey::new(i, m);
        let candidates = g.neighbors(m).without(start);
        let cache = ViewCache::new(view, key);
        let ok = candidates
            .iter()
            .filter(|&v| cache.outcome(view, key, v).survived)
            .collect();
        (ok, candidates.len() as u64)
    });

    let n = dag.n;
    let mut level = StateLevel {
        present: VertexSet::EMPTY,
        nodes: vec![None; n],
    };
    for (&m, &(ok, queries)) in frontier.iter().zip(&admitted) {
        dag.avoidance_queries += queries;
        for v in ok {
            level.present.insert(v);
            let slot = level.nodes[v].get_or_insert_with(|| StateNode {
                preds: VertexSet::EMPTY,
                succs: VertexSet::EMPTY,
                rel: vec![VertexSet::EMPTY; i + 2],
                desc: vec![VertexSet::EMPTY; n],
            });
            slot.preds.insert(m);
            let contributor = dag.levels[i].nodes[m].as_ref().unwrap();
            for (j, r) in contributor.rel.iter().enumerate() {
                slot.rel[j] = slot.rel[j].union(*r);
            }
        }
        dag.levels[i].nodes[m].as_mut().unwrap().succs = ok;
    }
    for v in level.present {
        let node = level.nodes[v].as_mut().unwrap();
        node.rel[i + 1].insert(v);
        // every ancestor now reaches (i+1, v)
        for (j, ancestors) in node.rel[..=i].iter().enumerate() {
            for a in *ancestors {
                dag.levels[j].nodes[a].as_mut().unwrap().desc[i + 1].insert(v);
            }
        }
    }
    dag.levels.push(level);
}

/// Walks transitions backwards from `accepting`, preferring the smallest
/// unused meaning, backtracking at most `10 n^2` times. Returns the circuit
/// only if it passes [`validate_circuit`].
pub fn fuzzy_extract_candidate(
    dag: &StateSetDag,
    g: &Graph,
    accepting: StateKey,
) -> Option<Circuit> {
    let n = dag.n;
    if n < 3 || accepting.level != n - 1 || !dag.contains(accepting) {
        return None;
    }
    let cap = 10 * n * n;
    let mut reversals = 0usize;
    // (key, remaining predecessor choices)
    let mut stack: Vec<(StateKey, VertexSet)> = Vec::with_capacity(n);
    let mut used = VertexSet::singleton(accepting.meaning);
    let first_choices = dag.node(accepting).unwrap().preds;
    stack.push((accepting, first_choices));
    loop {
        let (key, choices) = stack.last_mut()?;
        if key.level == 0 {
            break;
        }
        let level = key.level - 1;
        let allowed = if level == 0 {
            choices.intersection(VertexSet::singleton(dag.start))
        } else {
            choices.difference(used).without(dag.start)
        };
        match allowed.first() {
            Some(m) => {
                choices.remove(m);
                let next = StateKey::new(level, m);
                used.insert(m);
                let preds = dag.node(next).unwrap().preds;
                stack.push((next, preds));
            }
            None => {
                let (dead, _) = stack.pop().unwrap();
                used.remove(dead.meaning);
                reversals += 1;
                if reversals > cap || stack.is_empty() {
                    return None;
                }
            }
        }
    }
    let seq: Vec<Vertex> = stack.iter().rev().map(|(k, _)| k.meaning).collect();
    validate_circuit(g, &seq).ok().map(|_| Circuit(seq))
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FuzzyStats {
    pub nodes_per_level: Vec<usize>,
    pub transitions_per_level: Vec<usize>,
    pub avoidance_queries: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl FuzzyStats {
    pub fn total_nodes(&self) -> usize {
        self.nodes_per_level.iter().sum()
    }

    pub fn total_transitions(&self) -> usize {
        self.transitions_per_level.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extraction {
    /// Fuzzy data empty at the final level; nothing to extract.
    NotAttempted,
    Verified,
    Failed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyDecision {
    pub nonempty: bool,
    pub level_sets: LevelSets,
    pub candidate: Option<Circuit>,
    pub candidate_verified: bool,
    pub extraction: Extraction,
    pub within_size_bounds: bool,
    pub stats: FuzzyStats,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzyConfig {
    pub max_time: Duration,
    pub par: Parallelism,
}

impl Default for FuzzyConfig {
    fn default() -> Self {
        FuzzyConfig {
            max_time: DEFAULT_FUZZY_MAX_TIME,
            par: Parallelism::default(),
        }
    }
}

/// Builds levels `0..n`.
pub fn fuzzy_build(g: &Graph, start: Vertex, cfg: FuzzyConfig) -> Result<StateSetDag, FuzzyError> {
    let started = Instant::now();
    let mut dag = fuzzy_init(g, start)?;
    while dag.depth() < g.n() {
        if started.elapsed() > cfg.max_time {
            return Err(FuzzyError::TimeCap { level: dag.depth() });
        }
        fuzzy_extend_level(&mut dag, g, cfg.par);
    }
    Ok(dag)
}

/// Accepts iff some level `n - 1` state set's meaning is adjacent to the
/// start; then tries extraction from each accepting node in ascending
/// meaning order.
pub fn fuzzy_decide(
    g: &Graph,
    start: Vertex,
    cfg: FuzzyConfig,
) -> Result<FuzzyDecision, FuzzyError> {
    let started = Instant::now();
    let dag = fuzzy_build(g, start, cfg)?;
    let n = g.n();
    let accepting = if n >= 3 {
        dag.level_meanings(n - 1).intersection(g.neighbors(start))
    } else {
        VertexSet::EMPTY
    };
    let nonempty = !accepting.is_empty();
    let candidate = accepting
        .iter()
        .find_map(|m| fuzzy_extract_candidate(&dag, g, StateKey::new(n - 1, m)))
        .map(Circuit::canonical);
    let extraction = match (nonempty, &candidate) {
        (false, _) => Extraction::NotAttempted,
        (true, Some(_)) => Extraction::Verified,
        (true, None) => Extraction::Failed,
    };
    let mut stats = dag.stats();
    stats.elapsed = started.elapsed();
    Ok(FuzzyDecision {
        nonempty,
        level_sets: dag.level_sets(),
        candidate_verified: candidate.is_some(),
        candidate,
        extraction,
        within_size_bounds: dag.within_size_bounds(),
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named_graph;

    fn build(name: &str) -> (Graph, StateSetDag) {
        let g = named_graph(name).unwrap();
        let dag = fuzzy_build(&g, 0, FuzzyConfig::default()).unwrap();
        (g, dag)
    }

    fn key(level: usize, meaning: usize) -> StateKey {
        StateKey::new(level, meaning)
    }

    #[test]
    fn init_shape() {
        for name in ["k3", "p3", "petersen"] {
            let g = named_graph(name).unwrap();
            let dag = fuzzy_init(&g, 0).unwrap();
            assert_eq!(dag.node_count(), 1);
            assert_eq!(dag.rel(key(0, 0)), vec![key(0, 0)]);
            assert!(dag.relrel(key(0, 0)).is_empty());
        }
        assert_eq!(
            fuzzy_init(&Graph::empty(0).unwrap(), 0).unwrap_err(),
            FuzzyError::EmptyGraph
        );
    }

    #[test]
    fn avoidance_examples() {
        let (_, k3) = build("k3");
        assert!(fuzzy_avoidance(&k3, key(1, 1), 2));
        let (_, p3) = build("p3");
        assert!(!fuzzy_avoidance(&p3, key(2, 2), 1));
        let (_, k4) = build("k4");
        assert!(fuzzy_avoidance(&k4, key(2, 3), 1));
    }

    #[test]
    fn extension_examples() {
        let (_, k3) = build("k3");
        assert_eq!(k3.level_meanings(2).to_vec(), vec![1, 2]);
        assert_eq!(k3.node(key(2, 1)).unwrap().preds.to_vec(), vec![2]);
        assert_eq!(k3.node(key(2, 2)).unwrap().preds.to_vec(), vec![1]);

        let (_, p3) = build("p3");
        assert_eq!(p3.level_meanings(2).to_vec(), vec![2]);

        let (_, star) = build("star");
        assert!(star.level_meanings(2).is_empty());
    }

    #[test]
    fn rel_and_relrel_on_k3() {
        let (_, k3) = build("k3");
        assert_eq!(k3.rel(key(2, 1)), vec![key(0, 0), key(1, 2), key(2, 1)]);
        let through: Vec<Transition> = k3.relrel(key(1, 1)).iter().collect();
        assert_eq!(
            through,
            vec![
                Transition {
                    level: 0,
                    from: 0,
                    to: 1
                },
                Transition {
                    level: 1,
                    from: 1,
                    to: 2
                },
            ]
        );
        assert_eq!(k3.relrel(key(1, 1)).len(), 2);
        assert_eq!(k3.relrel(key(0, 0)).len(), 4);
    }

    #[test]
    fn decisions() {
        let k3 = fuzzy_decide(&named_graph("k3").unwrap(), 0, FuzzyConfig::default()).unwrap();
        assert!(k3.nonempty);
        assert_eq!(k3.candidate, Some(Circuit(vec![0, 1, 2])));
        assert!(k3.candidate_verified);
        let p3 = fuzzy_decide(&named_graph("p3").unwrap(), 0, FuzzyConfig::default()).unwrap();
        assert!(!p3.nonempty);
        assert_eq!(p3.extraction, Extraction::NotAttempted);
    }

    #[test]
    fn c6_extraction() {
        let (g, dag) = build("c6");
        let accepting: Vec<usize> = dag.level_meanings(5).intersection(g.neighbors(0)).to_vec();
        assert_eq!(accepting, vec![1, 5]);
        let c = fuzzy_extract_candidate(&dag, &g, key(5, 5)).unwrap();
        assert_eq!(c, Circuit(vec![0, 1, 2, 3, 4, 5]));
        let d = fuzzy_decide(&g, 0, FuzzyConfig::default()).unwrap();
        assert_eq!(d.candidate, Some(Circuit(vec![0, 1, 2, 3, 4, 5])));
    }

    #[test]
    fn extraction_rejects_non_accepting() {
        let (g, dag) = build("k4");
        assert_eq!(fuzzy_extract_candidate(&dag, &g, key(2, 1)), None);
    }

    #[test]
    fn size_bounds_and_dump() {
        let (_, dag) = build("petersen");
        assert!(dag.within_size_bounds());
        let (_, p3) = build("p3");
        assert_eq!(p3.dump(), "0 0 0 1 2\n1 1 1 2 2\n2 2 1 3 2\n");
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = named_graph("petersen").unwrap();
        let seq = FuzzyConfig {
            par: Parallelism::Sequential,
            ..Default::default()
        };
        let par = FuzzyConfig {
            par: Parallelism::Parallel,
            ..Default::default()
        };
        let a = fuzzy_build(&g, 0, seq).unwrap();
        let b = fuzzy_build(&g, 0, par).unwrap();
        assert_eq!(a.dump(), b.dump());
    }

    #[test]
    fn time_cap() {
        let g = named_graph("petersen").unwrap();
        let cfg = FuzzyConfig {
            max_time: Duration::ZERO,
            par: Parallelism::Sequential,
        };
        assert!(matches!(
            fuzzy_build(&g, 0, cfg),
            Err(FuzzyError::TimeCap { .. })
        ));
    }
}
