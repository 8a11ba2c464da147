//! Brute-force reference implementations.
//!
//! Deliberately naive and deliberately independent of the production code
//! paths: the test suites compare the fast implementations against these on
//! small instances. They are exported (not test-gated) so downstream
//! verification suites can use them too.

use num_rational::Rational64;

use crate::graph::{Graph, VertexId};
use crate::scalar::Scalar;

/// All-pairs hop distances by repeated scanning (Bellman-Ford style), no
/// shared machinery with the BFS module.
pub fn all_pairs_hops<S: Scalar>(g: &Graph<S>) -> Vec<Vec<Option<u64>>> {
    let n = g.vertex_count();
    let mut dist: Vec<Vec<Option<u64>>> = vec![vec![None; n]; n];
    for (s, row) in dist.iter_mut().enumerate() {
        row[s] = Some(0);
        let mut changed = true;
        while changed {
            changed = false;
            for e in g.edges() {
                if e.u == e.v {
                    continue;
                }
                for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                    if let Some(da) = row[a] {
                        if row[b].map_or(true, |db| db > da + 1) {
                            row[b] = Some(da + 1);
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    dist
}

/// All-pairs shortest path lengths by Floyd-Warshall over exact scalars.
pub fn all_pairs_lengths<S: Scalar>(g: &Graph<S>) -> Vec<Vec<Option<S>>> {
    let n = g.vertex_count();
    let mut dist: Vec<Vec<Option<S>>> = vec![vec![None; n]; n];
    for v in 0..n {
        dist[v][v] = Some(S::zero());
    }
    for e in g.edges() {
        if e.u == e.v {
            continue;
        }
        let better = match &dist[e.u][e.v] {
            Some(d) => e.len.total_cmp(d) == std::cmp::Ordering::Less,
            None => true,
        };
        if better {
            dist[e.u][e.v] = Some(e.len.clone());
            dist[e.v][e.u] = Some(e.len.clone());
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let (Some(ik), Some(kj)) = (dist[i][k].clone(), dist[k][j].clone()) else {
                    continue;
                };
                let via = ik + kj;
                let better = match &dist[i][j] {
                    Some(d) => via.total_cmp(d) == std::cmp::Ordering::Less,
                    None => true,
                };
                if better {
                    dist[i][j] = Some(via);
                }
            }
        }
    }
    dist
}

/// Girth by edge removal: every shortest cycle through `{u, v}` is that edge
/// plus a shortest `u`-`v` path avoiding it.
pub fn girth_exhaustive<S: Scalar>(g: &Graph<S>) -> Option<u64> {
    let mut best: Option<u64> = None;
    let pairs: Vec<(VertexId, VertexId)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    for (skip, &(u, v)) in pairs.iter().enumerate() {
        let remaining: Vec<(VertexId, VertexId)> = pairs
            .iter()
            .enumerate()
            .filter_map(|(i, &e)| (i != skip).then_some(e))
            .collect();
        let reduced: Graph<Rational64> = Graph::unit(g.vertex_count(), &remaining).unwrap();
        if let Some(d) = all_pairs_hops(&reduced)[u][v] {
            let cycle = d + 1;
            best = Some(best.map_or(cycle, |b| b.min(cycle)));
        }
    }
    best
}

/// Degeneracy by repeated full scans for the minimum-degree vertex.
pub fn degeneracy_trace<S: Scalar>(g: &Graph<S>) -> u32 {
    let n = g.vertex_count();
    let mut deg: Vec<i64> = (0..n).map(|v| g.degree(v) as i64).collect();
    let mut alive = vec![true; n];
    let mut k = 0i64;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap();
        k = k.max(deg[v]);
        alive[v] = false;
        for &(w, _) in g.neighbors(v) {
            if w != v && alive[w] {
                deg[w] -= 1;
            }
        }
    }
    k as u32
}

/// Exact Nash-Williams maximization over every vertex subset of size at
/// least two: `max ceil(|E(U)| / (|U| - 1))`. Exponential; callers keep
/// `n <= 12` or so.
pub fn arboricity_exhaustive<S: Scalar>(g: &Graph<S>) -> Option<u32> {
    let n = g.vertex_count();
    assert!(n <= 20, "exhaustive arboricity is capped at n = 20");
    if g.edge_count() == 0 {
        return Some(0);
    }
    let edge_masks: Vec<u32> = g
        .edges()
        .iter()
        .map(|e| (1u32 << e.u) | (1u32 << e.v))
        .collect();
    let mut best = 0u64;
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as u64;
        if size < 2 {
            continue;
        }
        let edges = edge_masks.iter().filter(|&&em| em & mask == em).count() as u64;
        best = best.max(edges.div_ceil(size - 1));
    }
    Some(best as u32)
}

/// Demand mass separated by a cut, evaluated against Floyd-Warshall
/// distances rather than bounded searches.
pub fn separated_exhaustive<S: Scalar, V: Scalar>(
    g: &Graph<S>,
    cut: &crate::cuts::MovingCut,
    demand: &crate::cuts::Demand<V>,
    h: u64,
) -> V {
    let reduced = crate::cuts::minus_cut(g, cut).unwrap();
    let dist = all_pairs_lengths(&reduced);
    let cap = S::from_u64(h);
    let mut total = V::zero();
    for (&(u, v), val) in demand.iter() {
        let beyond = match &dist[u][v] {
            Some(d) => d.total_cmp(&cap) == std::cmp::Ordering::Greater,
            None => true,
        };
        if beyond {
            total = total + val.clone();
        }
    }
    total
}

/// Optimum of the separated-demand polytope (out/in loads capped by degree)
/// via the exact simplex; the flow implementation must match this.
pub fn max_separated_unit_demand_lp<S: Scalar>(
    g: &Graph<S>,
    pairs: &[(VertexId, VertexId)],
) -> num_rational::BigRational {
    use num_traits::One;
    let n = g.vertex_count();
    let mut lp = crate::lp::SimplexProblem::new(pairs.len());
    for (i, _) in pairs.iter().enumerate() {
        lp.set_objective(i, num_rational::BigRational::one());
    }
    for v in 0..n {
        let deg = num_rational::BigRational::from_integer((g.degree(v) as i64).into());
        let out: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(_, &(u, _))| u == v)
            .map(|(i, _)| (i, num_rational::BigRational::one()))
            .collect();
        if !out.is_empty() {
            lp.add_le_constraint(out, deg.clone()).unwrap();
        }
        let inc: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(_, &(_, w))| w == v)
            .map(|(i, _)| (i, num_rational::BigRational::one()))
            .collect();
        if !inc.is_empty() {
            lp.add_le_constraint(inc, deg).unwrap();
        }
    }
    match lp.maximize().unwrap() {
        crate::lp::LpResult::Optimal { value, .. } => value,
        crate::lp::LpResult::Unbounded => unreachable!("loads are capped"),
    }
}

/// Exact maximum concurrent flow over enumerated `<= t`-hop paths: the
/// largest `lambda` such that every pair routes `lambda` times its demand
/// under the congestion cap. The routing solver's decision is checked
/// against this value.
pub fn max_concurrent_flow_lp<S: Scalar>(
    g: &Graph<S>,
    pairs: &[((VertexId, VertexId), Rational64)],
    t: u32,
    congestion_cap: Rational64,
    path_budget: usize,
) -> crate::error::Result<num_rational::BigRational> {
    use num_traits::One;
    let mut pair_paths = Vec::with_capacity(pairs.len());
    for &((u, v), _) in pairs {
        pair_paths.push(crate::paths::enumerate_paths(g, u, v, t, path_budget)?);
    }
    if pair_paths.iter().any(|p| p.is_empty()) {
        return Ok(num_rational::BigRational::from_integer(0.into()));
    }
    // Variables: all paths, then lambda last.
    let offsets: Vec<usize> = pair_paths
        .iter()
        .scan(0usize, |acc, p| {
            let o = *acc;
            *acc += p.len();
            Some(o)
        })
        .collect();
    let num_paths: usize = pair_paths.iter().map(|p| p.len()).sum();
    let lambda = num_paths;
    let mut lp = crate::lp::SimplexProblem::new(num_paths + 1);
    lp.set_objective(lambda, num_rational::BigRational::one());

    // lambda * demand_i - sum(paths_i) <= 0
    for (i, &(_, demand)) in pairs.iter().enumerate() {
        let mut row: Vec<(usize, num_rational::BigRational)> = pair_paths[i]
            .iter()
            .enumerate()
            .map(|(j, _)| (offsets[i] + j, -num_rational::BigRational::one()))
            .collect();
        row.push((lambda, crate::scalar::big(demand)));
        lp.add_le_constraint(row, num_rational::BigRational::from_integer(0.into()))?;
    }
    // congestion per undirected edge
    let mut per_edge: std::collections::BTreeMap<(VertexId, VertexId), Vec<(usize, num_rational::BigRational)>> =
        Default::default();
    for (i, paths) in pair_paths.iter().enumerate() {
        for (j, path) in paths.iter().enumerate() {
            for w in path.windows(2) {
                per_edge
                    .entry(crate::graph::key(w[0], w[1]))
                    .or_default()
                    .push((offsets[i] + j, num_rational::BigRational::one()));
            }
        }
    }
    for (_, row) in per_edge {
        lp.add_le_constraint(row, crate::scalar::big(congestion_cap))?;
    }
    match lp.maximize()? {
        crate::lp::LpResult::Optimal { value, .. } => Ok(value),
        crate::lp::LpResult::Unbounded => Err(crate::error::Error::internal(
            "concurrent flow value is bounded by capacities",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn oracle_distances_match_on_a_square() {
        let g = generate::cycle(4).unwrap();
        let hops = all_pairs_hops(&g);
        assert_eq!(hops[0][2], Some(2));
        assert_eq!(hops[0][1], Some(1));
        let lens = all_pairs_lengths(&g);
        assert_eq!(lens[0][2], Some(Rational64::from_integer(2)));
    }

    #[test]
    fn oracle_girth_on_known_graphs() {
        assert_eq!(girth_exhaustive(&generate::petersen().unwrap()), Some(5));
        assert_eq!(girth_exhaustive(&generate::complete(5).unwrap()), Some(3));
        let forest: Graph<Rational64> = Graph::unit(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(girth_exhaustive(&forest), None);
    }

    #[test]
    fn oracle_arboricity_on_known_graphs() {
        assert_eq!(arboricity_exhaustive(&generate::complete(4).unwrap()), Some(2));
        let tree: Graph<Rational64> = Graph::unit(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(arboricity_exhaustive(&tree), Some(1));
    }

    #[test]
    fn lp_separated_demand_matches_hand_counts() {
        let g = generate::complete(3).unwrap();
        // Both orientations of one pair, degrees 2: optimum 4.
        let pairs = vec![(0, 1), (1, 0)];
        let v = max_separated_unit_demand_lp(&g, &pairs);
        assert_eq!(v, num_rational::BigRational::from_integer(4.into()));
    }

    #[test]
    fn lp_concurrent_flow_on_a_square() {
        let g = generate::cycle(4).unwrap();
        // Opposite matching at delta 1, cap 1/2, t about the cycle: every
        // routing loads four edges with total 2 * 3 path-edges at best;
        // the LP optimum is 1/2 of the demand.
        let pairs = vec![((0usize, 1usize), Rational64::from_integer(1)), ((2, 3), Rational64::from_integer(1))];
        let lam = max_concurrent_flow_lp(&g, &pairs, 3, Rational64::new(1, 2), 10_000).unwrap();
        assert!(lam < num_rational::BigRational::from_integer(1.into()));
        let lam_full = max_concurrent_flow_lp(&g, &pairs, 3, Rational64::from_integer(1), 10_000).unwrap();
        assert_eq!(lam_full, num_rational::BigRational::from_integer(1.into()));
    }
}
