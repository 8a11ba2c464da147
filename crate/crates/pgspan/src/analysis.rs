//! Structural verification: stretch certification, girth, degeneracy,
//! exact arboricity, and minimum-degree subgraph extraction.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::maxflow::{Dinic, INF};
use crate::scalar::Scalar;
use crate::search::bounded_bfs;

/// Outcome of the per-edge stretch check. Checking every input edge suffices
/// for all vertex pairs: any shortest path subdivides into edges, each
/// replaced by an `<= t`-times-longer detour.
#[derive(Debug, Clone, PartialEq)]
pub enum SpannerCheck<S> {
    /// Maximum over input edges of `d_h(u, v) / len(u, v)`.
    Valid { max_stretch: S },
    /// Some edge stretches beyond `t`; the witness edge is reported.
    Invalid { edge: (VertexId, VertexId) },
}

impl<S> SpannerCheck<S> {
    pub fn is_valid(&self) -> bool {
        matches!(self, SpannerCheck::Valid { .. })
    }

    pub fn max_stretch(&self) -> Option<&S> {
        match self {
            SpannerCheck::Valid { max_stretch } => Some(max_stretch),
            SpannerCheck::Invalid { .. } => None,
        }
    }
}

/// Certifies `h` as a `t`-spanner of `g` by checking every edge of `g`,
/// batched one bounded search per vertex. Requires `h ⊆ g` on the same
/// vertex set.
pub fn verify_spanner<S: Scalar>(g: &Graph<S>, h: &Graph<S>, t: u32) -> Result<SpannerCheck<S>> {
    g.contains_subgraph(h, "spanner")?;
    let t_scalar = S::from_u64(t as u64);
    let mut max_stretch = S::one();
    let mut any_edge = false;
    for u in 0..g.vertex_count() {
        // Cap at t times the longest incident edge; everything relevant from
        // u is within that radius.
        let mut cap = S::zero();
        for &(_, eid) in g.neighbors(u) {
            let scaled = t_scalar.clone() * g.edges()[eid].len.clone();
            cap = cap.max_s(scaled);
        }
        if cap.total_cmp(&S::zero()) == std::cmp::Ordering::Equal {
            continue;
        }
        let dists = bounded_bfs(h, u, cap)?;
        for &(v, eid) in g.neighbors(u) {
            if v < u {
                continue;
            }
            any_edge = true;
            let len = g.edges()[eid].len.clone();
            let allowed = t_scalar.clone() * len.clone();
            match dists.distance(v) {
                Some(d) if d.total_cmp(&allowed) != std::cmp::Ordering::Greater => {
                    let stretch = d.clone() / len;
                    max_stretch = max_stretch.max_s(stretch);
                }
                _ => return Ok(SpannerCheck::Invalid { edge: (u, v) }),
            }
        }
    }
    if !any_edge {
        max_stretch = S::one();
    }
    Ok(SpannerCheck::Valid { max_stretch })
}

/// Exact girth (number of edges on a shortest cycle), `None` for forests.
/// One truncated BFS per root; a non-tree edge seen at depths `d_u`, `d_w`
/// closes a walk of length `d_u + d_w + 1` through the root, and the minimum
/// over roots is exact for unweighted graphs.
pub fn girth<S: Scalar>(g: &Graph<S>) -> Result<Option<u64>> {
    if !g.is_unit() {
        return Err(Error::RequiresUnitLengths);
    }
    if g.allows_self_loops() {
        return Err(Error::param("girth is defined on simple graphs".to_string()));
    }
    let n = g.vertex_count();
    let mut best: Option<u64> = None;
    let mut dist = vec![u32::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    let mut touched: Vec<VertexId> = Vec::new();
    for root in 0..n {
        for &v in &touched {
            dist[v] = u32::MAX;
            parent_edge[v] = usize::MAX;
        }
        touched.clear();
        queue.clear();
        dist[root] = 0;
        touched.push(root);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            // No shorter cycle can close through deeper vertices.
            if let Some(b) = best {
                if 2 * dist[u] as u64 + 1 >= b {
                    continue;
                }
            }
            for &(w, eid) in g.neighbors(u) {
                if eid == parent_edge[u] {
                    continue;
                }
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent_edge[w] = eid;
                    touched.push(w);
                    queue.push_back(w);
                } else {
                    let cycle = dist[u] as u64 + dist[w] as u64 + 1;
                    best = Some(best.map_or(cycle, |b: u64| b.min(cycle)));
                }
            }
        }
    }
    Ok(best)
}

/// Min-degree peeling. Returns the degeneracy (largest minimum degree seen
/// while peeling) and the elimination order; ties break to the lowest id.
pub fn degeneracy<S: Scalar>(g: &Graph<S>) -> (u32, Vec<VertexId>) {
    let n = g.vertex_count();
    if n == 0 {
        return (0, Vec::new());
    }
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut buckets: Vec<std::collections::BTreeSet<VertexId>> = vec![Default::default(); n.max(1)];
    for v in 0..n {
        buckets[deg[v].min(n - 1)].insert(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut k = 0u32;
    let mut cursor = 0usize;
    for _ in 0..n {
        while buckets[cursor].is_empty() {
            cursor += 1;
        }
        let v = *buckets[cursor].iter().next().unwrap();
        buckets[cursor].remove(&v);
        removed[v] = true;
        k = k.max(deg[v] as u32);
        order.push(v);
        for &(w, _) in g.neighbors(v) {
            if w == v || removed[w] {
                continue;
            }
            let old = deg[w].min(n - 1);
            buckets[old].remove(&w);
            deg[w] -= 1;
            let new = deg[w].min(n - 1);
            buckets[new].insert(w);
            if new < cursor {
                cursor = new;
            }
        }
    }
    (k, order)
}

/// Maximal vertex set whose induced subgraph has minimum degree at least
/// `threshold`; the peeling order does not matter, the result is the
/// `ceil(threshold)`-core. Comparisons are exact rationals, half-integer
/// thresholds included.
pub fn min_degree_subgraph<S: Scalar>(g: &Graph<S>, threshold: Rational64) -> Vec<VertexId> {
    let n = g.vertex_count();
    let mut deg: Vec<i64> = (0..n).map(|v| g.degree(v) as i64).collect();
    let mut removed = vec![false; n];
    let below = |d: i64| Rational64::from_integer(d) < threshold;
    let mut stack: Vec<VertexId> = (0..n).filter(|&v| below(deg[v])).collect();
    while let Some(v) = stack.pop() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        for &(w, _) in g.neighbors(v) {
            if w == v || removed[w] {
                continue;
            }
            deg[w] -= 1;
            if below(deg[w]) {
                stack.push(w);
            }
        }
    }
    (0..n).filter(|&v| !removed[v]).collect()
}

/// Arboricity bounds; `exact` is present when the Nash-Williams optimum was
/// computed within budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arboricity {
    pub lower: u32,
    pub upper: u32,
    pub exact: Option<u32>,
}

#[derive(Debug, Clone, Copy)]
pub struct ArboricityBudget {
    /// Largest vertex count for which the exact flow computation runs.
    pub max_n: usize,
}

impl Default for ArboricityBudget {
    fn default() -> Self {
        ArboricityBudget { max_n: 256 }
    }
}

/// Is there a vertex set `U` with `|E(U)| > k (|U| - 1)`? Tested by anchoring
/// each candidate root `r` inside `U` (its sink arc is omitted) and running
/// the standard density network: source -> edge nodes (cap 1), edge nodes ->
/// endpoints (infinite), vertices -> sink (cap k). Flow below `m` exposes a
/// violating set.
fn density_violation<S: Scalar>(g: &Graph<S>, k: i64) -> bool {
    let n = g.vertex_count();
    let m = g.edge_count();
    let source = 0;
    let sink = 1;
    let edge_base = 2;
    let vertex_base = 2 + m;
    for r in 0..n {
        if g.degree(r) == 0 {
            continue;
        }
        let mut flow = Dinic::new(2 + m + n);
        for (id, e) in g.edges().iter().enumerate() {
            flow.add_edge(source, edge_base + id, 1);
            flow.add_edge(edge_base + id, vertex_base + e.u, INF);
            if e.v != e.u {
                flow.add_edge(edge_base + id, vertex_base + e.v, INF);
            }
        }
        for v in 0..n {
            if v != r {
                flow.add_edge(vertex_base + v, sink, k);
            }
        }
        if flow.max_flow(source, sink) < m as i64 {
            return true;
        }
    }
    false
}

/// Arboricity via Nash-Williams: the smallest `k` with
/// `|E(U)| <= k (|U| - 1)` for every `U`, found by binary search over the
/// flow test above. Outside the budget only the degeneracy sandwich
/// `ceil((d+1)/2) <= alpha <= d` is reported.
pub fn arboricity<S: Scalar>(g: &Graph<S>, budget: ArboricityBudget) -> Arboricity {
    if g.edge_count() == 0 {
        return Arboricity { lower: 0, upper: 0, exact: Some(0) };
    }
    let (degen, _) = degeneracy(g);
    // d <= 2*alpha - 1 gives alpha >= (d + 1) / 2.
    let lower = (degen + 1).div_ceil(2).max(1);
    if g.vertex_count() > budget.max_n {
        return Arboricity { lower, upper: degen, exact: None };
    }
    let mut lo = lower as i64;
    let mut hi = degen.max(1) as i64;
    while lo < hi {
        let mid = (lo + hi) / 2;
        if density_violation(g, mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    Arboricity { lower, upper: degen, exact: Some(lo as u32) }
}

/// The non-empty induced subgraph with minimum degree at least `alpha / 2`
/// promised by the arboricity bound.
#[derive(Debug, Clone)]
pub struct HighMinDegree<S> {
    pub graph: Graph<S>,
    /// New vertex id -> original id.
    pub back_map: Vec<VertexId>,
    pub threshold: Rational64,
    pub arboricity: Arboricity,
}

/// Computes arboricity (exact within budget, else its lower bound) and peels
/// to the `alpha / 2`-core. The core is maximal, so it contains the subgraph
/// the density argument promises; emptiness would contradict it.
pub fn high_min_degree_from_arboricity<S: Scalar>(
    g: &Graph<S>,
    budget: ArboricityBudget,
) -> Result<HighMinDegree<S>> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let arb = arboricity(g, budget);
    let alpha = arb.exact.unwrap_or(arb.lower);
    let threshold = Rational64::new(alpha as i64, 2);
    let keep = min_degree_subgraph(g, threshold);
    if keep.is_empty() {
        return Err(Error::internal(format!(
            "alpha/2-core empty with alpha = {alpha}; contradicts the density bound"
        )));
    }
    let (graph, back_map) = g.induced_subgraph(&keep)?;
    Ok(HighMinDegree { graph, back_map, threshold, arboricity: arb })
}

/// Summary of one construction, ready for the report CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct SpannerReport {
    pub n: usize,
    pub m_input: usize,
    pub m_spanner: usize,
    pub t: u32,
    pub max_edge_stretch: Option<Rational64>,
    pub girth: Option<u64>,
    pub degeneracy: u32,
    pub arboricity_lower: u32,
    pub arboricity_exact: Option<u32>,
    pub rounds: usize,
}

impl SpannerReport {
    /// `arboricity_lower <= arboricity_exact <= degeneracy` whenever exact is
    /// present, and validity means stretch within `t`.
    pub fn internally_consistent(&self) -> bool {
        let sandwich = match self.arboricity_exact {
            Some(a) => self.arboricity_lower <= a && a <= self.degeneracy.max(1),
            None => self.arboricity_lower <= self.degeneracy.max(1),
        };
        let stretch_ok = match &self.max_edge_stretch {
            Some(s) => *s <= Rational64::from_integer(self.t as i64),
            None => true,
        };
        sandwich && stretch_ok
    }
}

pub fn build_report(
    g: &Graph<Rational64>,
    spanner: &Graph<Rational64>,
    certificate_rounds: usize,
    t: u32,
    budget: ArboricityBudget,
) -> Result<SpannerReport> {
    let check = verify_spanner(g, spanner, t)?;
    let arb = arboricity(spanner, budget);
    let (degen, _) = degeneracy(spanner);
    Ok(SpannerReport {
        n: g.vertex_count(),
        m_input: g.edge_count(),
        m_spanner: spanner.edge_count(),
        t,
        max_edge_stretch: check.max_stretch().cloned(),
        girth: girth(spanner)?,
        degeneracy: degen,
        arboricity_lower: arb.lower,
        arboricity_exact: arb.exact,
        rounds: certificate_rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    type G = Graph<Rational64>;

    fn r(x: i64) -> Rational64 {
        Rational64::from_integer(x)
    }

    #[test]
    fn spanner_check_identity_has_stretch_one() {
        let g = generate::cycle(4).unwrap();
        match verify_spanner(&g, &g, 3).unwrap() {
            SpannerCheck::Valid { max_stretch } => assert_eq!(max_stretch, r(1)),
            _ => panic!("identity is always valid"),
        }
    }

    #[test]
    fn spanner_check_path_inside_square() {
        let g = generate::cycle(4).unwrap();
        let h = G::unit(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        match verify_spanner(&g, &h, 3).unwrap() {
            SpannerCheck::Valid { max_stretch } => assert_eq!(max_stretch, r(3)),
            _ => panic!("three-edge path is a 3-spanner of C4"),
        }
    }

    #[test]
    fn spanner_check_detects_disconnection() {
        let g = generate::cycle(4).unwrap();
        let h = G::unit(4, &[(0, 1), (2, 3)]).unwrap();
        match verify_spanner(&g, &h, 3).unwrap() {
            SpannerCheck::Invalid { edge } => assert!(edge == (1, 2) || edge == (0, 3)),
            _ => panic!("opposite edges cannot 3-span the square"),
        }
    }

    #[test]
    fn spanner_check_requires_subgraph() {
        let g = generate::cycle(4).unwrap();
        let h = G::unit(4, &[(0, 2)]).unwrap();
        assert!(verify_spanner(&g, &h, 3).is_err());
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&generate::cycle(4).unwrap()).unwrap(), Some(4));
        let forest = G::unit(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(girth(&forest).unwrap(), None);
        assert_eq!(girth(&generate::petersen().unwrap()).unwrap(), Some(5));
        assert_eq!(girth(&generate::complete(4).unwrap()).unwrap(), Some(3));
        assert_eq!(girth(&generate::hypercube(3).unwrap()).unwrap(), Some(4));
    }

    #[test]
    fn girth_agrees_with_edge_removal_oracle() {
        for seed in 0..30 {
            let g = generate::erdos_renyi(10, 0.35, seed).unwrap();
            assert_eq!(
                girth(&g).unwrap(),
                crate::oracle::girth_exhaustive(&g),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn degeneracy_examples() {
        let tree = G::unit(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(degeneracy(&tree).0, 1);
        assert_eq!(degeneracy(&generate::complete(4).unwrap()).0, 3);
        // Peeling trace on Q3: every removal sees degree 3 first.
        let q3 = generate::hypercube(3).unwrap();
        assert_eq!(degeneracy(&q3).0, 3);
        assert_eq!(crate::oracle::degeneracy_trace(&q3), 3);
    }

    #[test]
    fn degeneracy_order_starts_at_lowest_id_min_degree() {
        let star = G::unit(4, &[(3, 0), (3, 1), (3, 2)]).unwrap();
        let (k, order) = degeneracy(&star);
        assert_eq!(k, 1);
        assert_eq!(order[0], 0);
    }

    #[test]
    fn arboricity_examples() {
        let tree = G::unit(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(arboricity(&tree, Default::default()).exact, Some(1));
        assert_eq!(arboricity(&generate::complete(4).unwrap(), Default::default()).exact, Some(2));
        // Q3: densest set is the whole cube, ceil(12/7) = 2.
        let q3 = generate::hypercube(3).unwrap();
        let a = arboricity(&q3, Default::default());
        assert_eq!(a.exact, Some(2));
        assert_eq!(a.exact, crate::oracle::arboricity_exhaustive(&q3));
    }

    #[test]
    fn arboricity_budget_falls_back_to_bounds() {
        let g = generate::complete(6).unwrap();
        let a = arboricity(&g, ArboricityBudget { max_n: 3 });
        assert_eq!(a.exact, None);
        assert_eq!(a.upper, 5);
        assert!(a.lower >= 3);
    }

    #[test]
    fn min_degree_subgraph_examples() {
        let k4 = generate::complete(4).unwrap();
        assert_eq!(min_degree_subgraph(&k4, r(2)), vec![0, 1, 2, 3]);

        let star = G::unit(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert!(min_degree_subgraph(&star, r(2)).is_empty());

        // Triangle plus pendant: average degree 2, threshold rho/2 = 1 keeps
        // the whole graph.
        let g = G::unit(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let rho_half = g.average_degree() / r(2);
        assert_eq!(rho_half, r(1));
        assert_eq!(min_degree_subgraph(&g, rho_half), vec![0, 1, 2, 3]);
    }

    #[test]
    fn half_integer_thresholds_are_exact() {
        // Path 0-1-2: threshold 3/2 peels everything; threshold 1/2 keeps it.
        let g = G::unit(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(min_degree_subgraph(&g, Rational64::new(3, 2)).is_empty());
        assert_eq!(min_degree_subgraph(&g, Rational64::new(1, 2)), vec![0, 1, 2]);
    }

    #[test]
    fn high_min_degree_examples() {
        let k4 = generate::complete(4).unwrap();
        let res = high_min_degree_from_arboricity(&k4, Default::default()).unwrap();
        assert_eq!(res.graph.vertex_count(), 4);
        assert_eq!(res.arboricity.exact, Some(2));

        let tree = G::unit(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let res = high_min_degree_from_arboricity(&tree, Default::default()).unwrap();
        assert!(!res.back_map.is_empty());

        let q3 = generate::hypercube(3).unwrap();
        let res = high_min_degree_from_arboricity(&q3, Default::default()).unwrap();
        assert_eq!(res.graph.vertex_count(), 8, "Q3 itself has min degree 3 >= 1");
    }

    #[test]
    fn report_consistency_on_a_build() {
        let g = generate::erdos_renyi(24, 0.3, 5).unwrap();
        let cfg = crate::greedy::GreedyConfig::new(3, 5).unwrap();
        let res = crate::greedy::parallel_greedy(&g, &cfg).unwrap();
        let report =
            build_report(&g, &res.spanner, res.rounds(), 3, Default::default()).unwrap();
        assert!(report.internally_consistent());
        assert!(report.max_edge_stretch.is_some());
    }
}
