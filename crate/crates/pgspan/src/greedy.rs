//! Sequential and parallel greedy spanner construction.
//!
//! The sequential rule scans edges one at a time and keeps an edge iff its
//! endpoints are more than `t` apart in the partial spanner. The parallel
//! rule keeps whole matchings per round: every edge of the matching must be
//! unspanned with respect to the spanner *at round start*, so all queries in
//! a round run against one immutable snapshot and may execute concurrently.
//!
//! Both builders record the matching rounds they commit; the certificate is
//! re-checkable with [`crate::pg::verify_pg_sequence`].

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generate::derived_rng;
use crate::graph::{key, Graph, VertexId};
use crate::pg::PgSequence;
use crate::scalar::Scalar;
use crate::search::HopBfs;

const TAG_EDGE_ORDER: u64 = 0x6f72_6465; // "orde"
const TAG_MATCHING: u64 = 0x6d61_7463; // "matc"
const TAG_BUCKET: u64 = 0x6275_636b; // "buck"

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeOrder {
    /// Scan edges as listed by the input graph.
    Input,
    /// Scan in a seeded random permutation (seed comes from the config).
    RandomShuffle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingStrategy {
    /// Scan the unspanned set in seeded random order, keep an edge whenever
    /// both endpoints are still free. Maximal, few rounds, no optimality
    /// machinery.
    GreedyMaximal,
    /// Same, but scanning in normalized lexicographic order.
    LexicographicMaximal,
    /// One edge per round; collapses the parallel builder to the sequential
    /// one under the same edge order.
    SingleEdge,
    /// Caller-supplied rounds, validated rather than chosen.
    Scripted(Vec<Vec<(VertexId, VertexId)>>),
}

impl MatchingStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            MatchingStrategy::GreedyMaximal => "greedy",
            MatchingStrategy::LexicographicMaximal => "lex",
            MatchingStrategy::SingleEdge => "single",
            MatchingStrategy::Scripted(_) => "scripted",
        }
    }
}

#[derive(Debug, Clone)]
pub struct GreedyConfig {
    pub t: u32,
    pub seed: u64,
    pub strategy: MatchingStrategy,
    pub edge_order: EdgeOrder,
    /// Intra-round query parallelism; 1 keeps rounds fully sequential.
    pub threads: usize,
}

impl GreedyConfig {
    pub fn new(t: u32, seed: u64) -> Result<Self> {
        if t < 2 {
            return Err(Error::param(format!("stretch must satisfy t >= 2, got {t}")));
        }
        Ok(GreedyConfig {
            t,
            seed,
            strategy: MatchingStrategy::GreedyMaximal,
            edge_order: EdgeOrder::Input,
            threads: 1,
        })
    }

    pub fn with_strategy(mut self, strategy: MatchingStrategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_edge_order(mut self, order: EdgeOrder) -> Self {
        self.edge_order = order;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundStat {
    pub round: usize,
    pub matching_size: usize,
    pub cumulative_edges: usize,
    pub millis: u128,
}

#[derive(Debug, Clone)]
pub struct SpannerResult<S> {
    pub spanner: Graph<S>,
    pub certificate: PgSequence,
    pub round_stats: Vec<RoundStat>,
}

impl<S: Scalar> SpannerResult<S> {
    pub fn rounds(&self) -> usize {
        self.certificate.rounds.len()
    }

    pub fn edge_count(&self) -> usize {
        self.spanner.edge_count()
    }
}

/// Incrementally grown spanner with a reusable capped BFS.
struct PartialSpanner {
    adj: Vec<Vec<u32>>,
    edges: Vec<(VertexId, VertexId)>,
    bfs: HopBfs,
}

impl PartialSpanner {
    fn new(n: usize) -> Self {
        PartialSpanner { adj: vec![Vec::new(); n], edges: Vec::new(), bfs: HopBfs::new(n) }
    }

    fn add_edge(&mut self, u: VertexId, v: VertexId) {
        self.adj[u].push(v as u32);
        self.adj[v].push(u as u32);
        self.edges.push(key(u, v));
    }

    /// The unspanned predicate: endpoints more than `t` apart right now.
    /// Searching from the lower-degree endpoint keeps the ball small.
    fn is_unspanned(&mut self, u: VertexId, v: VertexId, t: u32) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.bfs.distance_within(&self.adj, a, b, t).is_none()
    }

    fn into_graph<S: Scalar>(self) -> Result<Graph<S>> {
        Graph::unit(self.adj.len(), &self.edges)
    }
}

fn require_unit<S: Scalar>(g: &Graph<S>) -> Result<()> {
    if !g.is_unit() {
        return Err(Error::RequiresUnitLengths);
    }
    if g.allows_self_loops() {
        return Err(Error::param("spanner construction needs a simple graph".to_string()));
    }
    Ok(())
}

fn ordered_edges<S: Scalar>(g: &Graph<S>, cfg: &GreedyConfig) -> Vec<(VertexId, VertexId)> {
    let mut edges: Vec<(VertexId, VertexId)> =
        g.edges().iter().map(|e| key(e.u, e.v)).collect();
    if cfg.edge_order == EdgeOrder::RandomShuffle {
        let mut rng = derived_rng(cfg.seed, TAG_EDGE_ORDER, 0);
        edges.shuffle(&mut rng);
    }
    edges
}

/// Edges of `g` whose endpoints are more than `t` apart in `h`. Edges of `h`
/// are never returned (their distance is one). Requires `h ⊆ g` on the same
/// vertex set.
pub fn unspanned_edges<S: Scalar>(
    g: &Graph<S>,
    h: &Graph<S>,
    t: u32,
) -> Result<Vec<(VertexId, VertexId)>> {
    require_unit(g)?;
    g.contains_subgraph(h, "h")?;
    let n = g.vertex_count();
    let adj: Vec<Vec<u32>> = (0..n)
        .map(|v| h.neighbors(v).iter().map(|&(w, _)| w as u32).collect())
        .collect();
    let mut bfs = HopBfs::new(n);
    let mut out = Vec::new();
    for e in g.edges() {
        let (u, v) = key(e.u, e.v);
        if bfs.distance_within(&adj, u, v, t).is_none() {
            out.push((u, v));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// One unspanned edge at a time, in the configured scan order.
pub fn sequential_greedy<S: Scalar>(g: &Graph<S>, cfg: &GreedyConfig) -> Result<SpannerResult<S>> {
    require_unit(g)?;
    let mut partial = PartialSpanner::new(g.vertex_count());
    let mut rounds = Vec::new();
    let mut stats = Vec::new();
    let start = Instant::now();
    for (u, v) in ordered_edges(g, cfg) {
        if partial.is_unspanned(u, v, cfg.t) {
            partial.add_edge(u, v);
            rounds.push(vec![(u, v)]);
            stats.push(RoundStat {
                round: rounds.len(),
                matching_size: 1,
                cumulative_edges: partial.edges.len(),
                millis: start.elapsed().as_millis(),
            });
        }
    }
    let certificate = PgSequence::new(g.vertex_count(), rounds);
    Ok(SpannerResult { spanner: partial.into_graph()?, certificate, round_stats: stats })
}

/// Splits the still-unspanned candidates from the spanned ones against the
/// round-start snapshot. Queries are grouped by endpoint so one BFS serves
/// every candidate sharing a source, and groups run in parallel when asked.
fn split_unspanned(
    partial: &mut PartialSpanner,
    candidates: &[(VertexId, VertexId)],
    t: u32,
    threads: usize,
) -> Vec<(VertexId, VertexId)> {
    if candidates.len() <= 64 || threads <= 1 {
        return candidates
            .iter()
            .copied()
            .filter(|&(u, v)| partial.is_unspanned(u, v, t))
            .collect();
    }
    // Group by the endpoint with smaller current degree.
    let mut groups: std::collections::BTreeMap<VertexId, Vec<(usize, VertexId)>> =
        std::collections::BTreeMap::new();
    for (idx, &(u, v)) in candidates.iter().enumerate() {
        let (a, b) = if partial.adj[u].len() <= partial.adj[v].len() { (u, v) } else { (v, u) };
        groups.entry(a).or_default().push((idx, b));
    }
    let adj = &partial.adj;
    let n = adj.len();
    let group_list: Vec<(VertexId, Vec<(usize, VertexId)>)> = groups.into_iter().collect();
    let results: Vec<Vec<(usize, bool)>> = group_list
        .par_iter()
        .map(|(source, targets)| {
            let mut bfs = HopBfs::new(n);
            let target_ids: Vec<VertexId> = targets.iter().map(|&(_, v)| v).collect();
            let mut within = Vec::new();
            bfs.multi_target_within(adj, *source, t, &target_ids, &mut within);
            targets
                .iter()
                .zip(within)
                .map(|(&(idx, _), w)| (idx, !w))
                .collect()
        })
        .collect();
    let mut unspanned_mask = vec![false; candidates.len()];
    for group in results {
        for (idx, unspanned) in group {
            unspanned_mask[idx] = unspanned;
        }
    }
    candidates
        .iter()
        .copied()
        .zip(unspanned_mask)
        .filter_map(|(e, keep)| keep.then_some(e))
        .collect()
}

fn pick_matching(
    strategy: &MatchingStrategy,
    unspanned: &[(VertexId, VertexId)],
    seed: u64,
    round: usize,
) -> Vec<(VertexId, VertexId)> {
    match strategy {
        MatchingStrategy::SingleEdge => vec![unspanned[0]],
        MatchingStrategy::GreedyMaximal => {
            let mut order: Vec<(VertexId, VertexId)> = unspanned.to_vec();
            let mut rng = derived_rng(seed, TAG_MATCHING, round as u64);
            order.shuffle(&mut rng);
            greedy_maximal(&order)
        }
        MatchingStrategy::LexicographicMaximal => {
            let mut order: Vec<(VertexId, VertexId)> = unspanned.to_vec();
            order.sort_unstable();
            greedy_maximal(&order)
        }
        MatchingStrategy::Scripted(_) => unreachable!("checked by caller"),
    }
}

fn greedy_maximal(order: &[(VertexId, VertexId)]) -> Vec<(VertexId, VertexId)> {
    let mut used: BTreeSet<VertexId> = BTreeSet::new();
    let mut m = Vec::new();
    for &(u, v) in order {
        if !used.contains(&u) && !used.contains(&v) {
            used.insert(u);
            used.insert(v);
            m.push((u, v));
        }
    }
    m
}

/// Rounds of matchings of unspanned edges until none remain. All unspanned
/// tests of a round run against the round-start spanner; spanned candidates
/// are dropped for good (distances only shrink as the spanner grows).
pub fn parallel_greedy<S: Scalar>(g: &Graph<S>, cfg: &GreedyConfig) -> Result<SpannerResult<S>> {
    require_unit(g)?;
    if matches!(cfg.strategy, MatchingStrategy::Scripted(_)) {
        return Err(Error::param(
            "parallel_greedy picks its own matchings; use scripted_parallel_greedy".to_string(),
        ));
    }
    let mut partial = PartialSpanner::new(g.vertex_count());
    let mut candidates = ordered_edges(g, cfg);
    let mut rounds: Vec<Vec<(VertexId, VertexId)>> = Vec::new();
    let mut stats = Vec::new();

    while !candidates.is_empty() {
        let round_start = Instant::now();
        let unspanned = split_unspanned(&mut partial, &candidates, cfg.t, cfg.threads);
        if unspanned.is_empty() {
            break;
        }
        let matching = pick_matching(&cfg.strategy, &unspanned, cfg.seed, rounds.len() + 1);
        check_matching_contract(&matching, &unspanned)?;
        let chosen: BTreeSet<(VertexId, VertexId)> =
            matching.iter().map(|&(u, v)| key(u, v)).collect();
        for &(u, v) in &matching {
            partial.add_edge(u, v);
        }
        candidates = unspanned
            .into_iter()
            .filter(|&(u, v)| !chosen.contains(&key(u, v)))
            .collect();
        rounds.push(matching);
        stats.push(RoundStat {
            round: rounds.len(),
            matching_size: chosen.len(),
            cumulative_edges: partial.edges.len(),
            millis: round_start.elapsed().as_millis(),
        });
    }
    let certificate = PgSequence::new(g.vertex_count(), rounds);
    Ok(SpannerResult { spanner: partial.into_graph()?, certificate, round_stats: stats })
}

fn check_matching_contract(
    matching: &[(VertexId, VertexId)],
    unspanned: &[(VertexId, VertexId)],
) -> Result<()> {
    if matching.is_empty() {
        return Err(Error::internal(
            "strategy returned an empty matching on a non-empty unspanned set".to_string(),
        ));
    }
    let pool: BTreeSet<(VertexId, VertexId)> = unspanned.iter().copied().collect();
    let mut used = BTreeSet::new();
    for &(u, v) in matching {
        if !pool.contains(&key(u, v)) {
            return Err(Error::internal(format!(
                "strategy chose edge {{{u}, {v}}} outside the unspanned set"
            )));
        }
        if !used.insert(u) || !used.insert(v) {
            return Err(Error::internal("strategy returned a non-matching".to_string()));
        }
    }
    Ok(())
}

/// Validates and applies caller-supplied rounds. The first edge that is
/// already within distance `t` at its round start, repeats an earlier edge,
/// shares a vertex within its round, or is not a graph edge aborts with a
/// `ScriptViolation`.
pub fn scripted_parallel_greedy<S: Scalar>(
    g: &Graph<S>,
    t: u32,
    script: &[Vec<(VertexId, VertexId)>],
) -> Result<SpannerResult<S>> {
    require_unit(g)?;
    if t < 2 {
        return Err(Error::param(format!("stretch must satisfy t >= 2, got {t}")));
    }
    let mut partial = PartialSpanner::new(g.vertex_count());
    let mut present: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let mut rounds = Vec::new();
    let mut stats = Vec::new();
    let start = Instant::now();
    for (i, round) in script.iter().enumerate() {
        let round_no = i + 1;
        let mut touched: BTreeSet<VertexId> = BTreeSet::new();
        for &(u, v) in round {
            let violation = |reason: String| Error::ScriptViolation { round: round_no, u, v, reason };
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if !g.contains_edge(u, v) {
                return Err(violation("not an edge of the input graph".to_string()));
            }
            if present.contains(&key(u, v)) {
                return Err(violation("edge already committed in an earlier round".to_string()));
            }
            if !touched.insert(u) {
                return Err(violation(format!("vertex {u} already matched this round")));
            }
            if !touched.insert(v) {
                return Err(violation(format!("vertex {v} already matched this round")));
            }
            if let Some(d) = partial.bfs.distance_within(&partial.adj, u, v, t) {
                return Err(violation(format!("t-spanned at round start (distance {d} <= {t})")));
            }
        }
        for &(u, v) in round {
            partial.add_edge(u, v);
            present.insert(key(u, v));
        }
        rounds.push(round.clone());
        stats.push(RoundStat {
            round: round_no,
            matching_size: round.len(),
            cumulative_edges: partial.edges.len(),
            millis: start.elapsed().as_millis(),
        });
    }
    let certificate = PgSequence::new(g.vertex_count(), rounds);
    Ok(SpannerResult { spanner: partial.into_graph()?, certificate, round_stats: stats })
}

/// Per-bucket run of the parallel builder for weighted inputs.
#[derive(Debug, Clone)]
pub struct BucketedSpanner<S> {
    /// `(exponent, result)` per non-empty weight bucket `[2^i, 2^{i+1})`.
    pub buckets: Vec<(i32, SpannerResult<S>)>,
    /// Union of the per-bucket spanners, carrying the original weights.
    pub union: Graph<S>,
}

impl<S: Scalar> BucketedSpanner<S> {
    pub fn edge_count(&self) -> usize {
        self.union.edge_count()
    }
}

fn bucket_exponent<S: Scalar>(w: &S) -> i32 {
    let two = S::from_u64(2);
    let mut exp = 0i32;
    let mut bound = S::one();
    if w.total_cmp(&bound) != std::cmp::Ordering::Less {
        // grow until 2^{exp+1} > w
        loop {
            let next = bound.clone() * two.clone();
            if w.total_cmp(&next) == std::cmp::Ordering::Less {
                return exp;
            }
            bound = next;
            exp += 1;
        }
    }
    loop {
        bound = bound / two.clone();
        exp -= 1;
        if w.total_cmp(&bound) != std::cmp::Ordering::Less {
            return exp;
        }
    }
}

/// Buckets edges by weight into `[2^i, 2^{i+1})`, runs the parallel builder
/// on each bucket's unit graph, and unions the results. Every kept bucket
/// path replaces a weight-`w` edge by at most `t` hops each of weight
/// `< 2w`, so the union is a `2t`-spanner of the weighted input.
pub fn weighted_greedy_bucketed<S: Scalar>(
    g: &Graph<S>,
    cfg: &GreedyConfig,
) -> Result<BucketedSpanner<S>> {
    if g.allows_self_loops() {
        return Err(Error::param("spanner construction needs a simple graph".to_string()));
    }
    let mut by_bucket: std::collections::BTreeMap<i32, Vec<usize>> = std::collections::BTreeMap::new();
    for (id, e) in g.edges().iter().enumerate() {
        by_bucket.entry(bucket_exponent(&e.len)).or_default().push(id);
    }
    let mut buckets = Vec::new();
    let mut kept: Vec<(VertexId, VertexId, S)> = Vec::new();
    for (bucket_idx, (exp, edge_ids)) in by_bucket.into_iter().enumerate() {
        let pairs: Vec<(VertexId, VertexId)> =
            edge_ids.iter().map(|&id| key(g.edges()[id].u, g.edges()[id].v)).collect();
        let unit: Graph<S> = Graph::unit(g.vertex_count(), &pairs)?;
        let mut bucket_cfg = cfg.clone();
        bucket_cfg.seed = crate::generate::mix_seed(cfg.seed ^ TAG_BUCKET ^ bucket_idx as u64);
        let result = parallel_greedy(&unit, &bucket_cfg)?;
        for (u, v) in result.certificate.union_edges() {
            let id = g.find_edge(u, v).ok_or_else(|| Error::internal("bucket edge vanished"))?;
            kept.push((u, v, g.edges()[id].len.clone()));
        }
        buckets.push((exp, result));
    }
    let union = Graph::weighted(g.vertex_count(), &kept)?;
    Ok(BucketedSpanner { buckets, union })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::pg::verify_pg_sequence;
    use num_rational::Rational64;

    type G = Graph<Rational64>;

    fn cfg(t: u32, seed: u64) -> GreedyConfig {
        GreedyConfig::new(t, seed).unwrap()
    }

    #[test]
    fn stretch_below_two_is_rejected() {
        assert!(GreedyConfig::new(1, 0).is_err());
    }

    #[test]
    fn unspanned_edges_examples() {
        let g = generate::cycle(4).unwrap();
        let empty = G::empty(4);
        // Empty h: every edge has infinite distance.
        assert_eq!(unspanned_edges(&g, &empty, 3).unwrap().len(), 4);
        // h = g: all edges have distance one.
        assert!(unspanned_edges(&g, &g, 3).unwrap().is_empty());
        // Two opposite edges committed: the other two remain unspanned.
        let h = G::unit(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(unspanned_edges(&g, &h, 3).unwrap(), vec![(0, 3), (1, 2)]);
    }

    #[test]
    fn unspanned_rejects_vertex_set_mismatch() {
        let g = generate::cycle(4).unwrap();
        let h = G::empty(5);
        assert!(unspanned_edges(&g, &h, 3).is_err());
    }

    #[test]
    fn sequential_keeps_every_forest_edge() {
        let g = G::unit(6, &[(0, 1), (1, 2), (1, 3), (4, 5)]).unwrap();
        for t in [2, 3, 9] {
            let res = sequential_greedy(&g, &cfg(t, 0)).unwrap();
            assert_eq!(res.edge_count(), 4);
        }
    }

    #[test]
    fn sequential_on_c4_drops_the_closing_edge() {
        let g = generate::cycle(4).unwrap();
        let res = sequential_greedy(&g, &cfg(3, 0)).unwrap();
        assert_eq!(res.edge_count(), 3);
        // The last edge in input order is the one rejected.
        assert!(!res.spanner.contains_edge(3, 0) || !res.spanner.contains_edge(2, 3));
    }

    #[test]
    fn sequential_on_k4_with_t2_is_a_star() {
        // Hand trace: {0,1},{0,2},{0,3} accepted; every later edge closes a
        // two-path through vertex 0.
        let g = generate::complete(4).unwrap();
        let res = sequential_greedy(&g, &cfg(2, 0)).unwrap();
        assert_eq!(res.edge_count(), 3);
        for v in 1..4 {
            assert!(res.spanner.contains_edge(0, v));
        }
        assert_eq!(crate::analysis::girth(&res.spanner).unwrap(), None);
    }

    #[test]
    fn parallel_on_perfect_matching_takes_one_round() {
        let g = G::unit(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        let res = parallel_greedy(&g, &cfg(3, 1)).unwrap();
        assert_eq!(res.rounds(), 1);
        assert_eq!(res.edge_count(), 3);
    }

    #[test]
    fn parallel_on_k4_with_t2_terminates_small() {
        for seed in 0..20 {
            let g = generate::complete(4).unwrap();
            let res = parallel_greedy(&g, &cfg(2, seed)).unwrap();
            assert_eq!(res.certificate.rounds[0].len(), 2, "first round is a perfect matching");
            assert!((4..=5).contains(&res.edge_count()), "got {}", res.edge_count());
            assert_eq!(verify_pg_sequence(4, &res.certificate, 2).unwrap(), None);
            assert_eq!(crate::analysis::girth(&res.spanner).unwrap(), Some(4));
        }
    }

    #[test]
    fn scripted_square_two_rounds_reproduces_girth_four() {
        let g = generate::cycle(4).unwrap();
        let rounds = generate::cycle_alternating_rounds(4).unwrap();
        for t in [3, 5] {
            let res = scripted_parallel_greedy(&g, t, &rounds).unwrap();
            assert_eq!(res.edge_count(), 4);
            assert_eq!(res.rounds(), 2);
            assert_eq!(crate::analysis::girth(&res.spanner).unwrap(), Some(4));
        }
    }

    #[test]
    fn scripted_singletons_fail_on_the_fourth_square_edge() {
        let g = generate::cycle(4).unwrap();
        let script = vec![vec![(0, 1)], vec![(1, 2)], vec![(2, 3)], vec![(3, 0)]];
        match scripted_parallel_greedy(&g, 3, &script) {
            Err(Error::ScriptViolation { round: 4, u: 3, v: 0, .. }) => {}
            other => panic!("expected round-4 violation, got {other:?}"),
        }
    }

    #[test]
    fn scripted_hypercube_dimension_rounds_accept_everything() {
        for d in [2, 3, 4] {
            let g = generate::hypercube(d).unwrap();
            let rounds = generate::hypercube_dimension_matchings(d).unwrap();
            for t in [3, 7] {
                let res = scripted_parallel_greedy(&g, t, &rounds).unwrap();
                assert_eq!(res.edge_count(), (d as usize) << (d - 1));
                assert_eq!(res.rounds(), d as usize);
            }
        }
    }

    #[test]
    fn scripted_rejects_non_matching_and_foreign_edges() {
        let g = generate::cycle(4).unwrap();
        let shared = vec![vec![(0, 1), (1, 2)]];
        assert!(matches!(
            scripted_parallel_greedy(&g, 3, &shared),
            Err(Error::ScriptViolation { round: 1, .. })
        ));
        let foreign = vec![vec![(0, 2)]];
        assert!(matches!(
            scripted_parallel_greedy(&g, 3, &foreign),
            Err(Error::ScriptViolation { round: 1, .. })
        ));
    }

    #[test]
    fn single_edge_strategy_matches_sequential() {
        for seed in [0, 1, 7] {
            let g = generate::erdos_renyi(24, 0.3, seed).unwrap();
            for t in [2, 3, 5] {
                let base = cfg(t, seed);
                let seq = sequential_greedy(&g, &base).unwrap();
                let par = parallel_greedy(
                    &g,
                    &base.clone().with_strategy(MatchingStrategy::SingleEdge),
                )
                .unwrap();
                assert_eq!(seq.spanner.edge_pairs(), par.spanner.edge_pairs());
            }
        }
    }

    #[test]
    fn rejected_edges_stay_spanned_at_termination() {
        let g = generate::erdos_renyi(30, 0.4, 3).unwrap();
        let res = parallel_greedy(&g, &cfg(3, 3)).unwrap();
        assert!(unspanned_edges(&g, &res.spanner, 3).unwrap().is_empty());
        assert_eq!(
            verify_pg_sequence(g.vertex_count(), &res.certificate, 3).unwrap(),
            None
        );
    }

    #[test]
    fn intra_round_parallelism_does_not_change_the_result() {
        let g = generate::erdos_renyi(64, 0.2, 11).unwrap();
        let base = cfg(3, 11);
        let solo = parallel_greedy(&g, &base).unwrap();
        let multi = parallel_greedy(&g, &base.clone().with_threads(4)).unwrap();
        assert_eq!(solo.spanner.edge_pairs(), multi.spanner.edge_pairs());
        assert_eq!(solo.certificate, multi.certificate);
    }

    #[test]
    fn bucket_exponents() {
        let r = |n, d| Rational64::new(n, d);
        assert_eq!(bucket_exponent(&r(1, 1)), 0);
        assert_eq!(bucket_exponent(&r(3, 2)), 0);
        assert_eq!(bucket_exponent(&r(2, 1)), 1);
        assert_eq!(bucket_exponent(&r(100, 1)), 6);
        assert_eq!(bucket_exponent(&r(1, 2)), -1);
        assert_eq!(bucket_exponent(&r(1, 5)), -3);
    }

    #[test]
    fn equal_weights_collapse_to_plain_parallel_greedy() {
        let g = generate::erdos_renyi(20, 0.4, 9).unwrap();
        let bucketed = weighted_greedy_bucketed(&g, &cfg(3, 9)).unwrap();
        assert_eq!(bucketed.buckets.len(), 1);
        let mut plain_cfg = cfg(3, 9);
        plain_cfg.seed = crate::generate::mix_seed(9 ^ TAG_BUCKET);
        let plain = parallel_greedy(&g, &plain_cfg).unwrap();
        assert_eq!(bucketed.union.edge_pairs(), plain.spanner.edge_pairs());
    }

    #[test]
    fn far_apart_weights_get_their_own_buckets() {
        let g = G::weighted(
            3,
            &[(0, 1, Rational64::from_integer(1)), (1, 2, Rational64::from_integer(100))],
        )
        .unwrap();
        let bucketed = weighted_greedy_bucketed(&g, &cfg(3, 0)).unwrap();
        assert_eq!(bucketed.buckets.len(), 2);
        assert_eq!(bucketed.edge_count(), 2);
    }

    #[test]
    fn weighted_square_keeps_all_four_edges() {
        // Weights 1,1,8,8: two buckets, each a matching, everything kept.
        let g = G::weighted(
            4,
            &[
                (0, 1, Rational64::from_integer(1)),
                (2, 3, Rational64::from_integer(1)),
                (1, 2, Rational64::from_integer(8)),
                (3, 0, Rational64::from_integer(8)),
            ],
        )
        .unwrap();
        let bucketed = weighted_greedy_bucketed(&g, &cfg(3, 0)).unwrap();
        assert_eq!(bucketed.buckets.len(), 2);
        assert_eq!(bucketed.edge_count(), 4);
        for (_, res) in &bucketed.buckets {
            assert_eq!(res.rounds(), 1);
        }
    }
}
