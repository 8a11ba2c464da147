//! Approximate matching-demand routing with an exact feasibility recheck.
//!
//! The solver decides whether the demand that puts `delta` on every matched
//! pair can be routed along paths of at most `t` hops with congestion at most
//! `cap`. Candidate paths are enumerated exhaustively (toy scale), then a
//! multiplicative-weights / shortest-path loop in floating point finds a
//! near-optimal concurrent flow. The verdict, however, is never floating
//! point: the candidate flow is converted to exact rationals, capped, and
//! accepted only if every pair still routes at least `(1 - eps) * delta`
//! under congestion at most `cap` exactly.

use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use crate::cuts::Flow;
use crate::error::{Error, Result};
use crate::graph::{key, Graph, VertexId};
use crate::paths;
use crate::pg::PgSequence;
use crate::scalar::{big, big_from_f64, Scalar};

/// Iteration safety factor: the phase loop is capped at
/// `ITER_CONST * ln(paths + edges) / eps'^2` full phases, a constant factor
/// above the phase count the weight-scaling argument needs.
pub const ITER_CONST: f64 = 8.0;

#[derive(Debug, Clone)]
pub struct RouteParams {
    pub delta: Rational64,
    pub t: u32,
    pub congestion_cap: Rational64,
    pub eps: f64,
    pub path_budget: usize,
}

impl RouteParams {
    pub fn new(delta: Rational64, t: u32, congestion_cap: Rational64) -> Self {
        RouteParams {
            delta,
            t,
            congestion_cap,
            eps: 0.05,
            path_budget: paths::DEFAULT_PATH_BUDGET,
        }
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn with_path_budget(mut self, budget: usize) -> Self {
        self.path_budget = budget;
        self
    }
}

#[derive(Debug, Clone)]
pub enum RouteOutcome {
    /// Explicit flow; exact congestion/dilation/demand re-verified.
    Feasible(Flow<BigRational>),
    Infeasible,
}

impl RouteOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, RouteOutcome::Feasible(_))
    }

    pub fn flow(&self) -> Option<&Flow<BigRational>> {
        match self {
            RouteOutcome::Feasible(f) => Some(f),
            RouteOutcome::Infeasible => None,
        }
    }
}

/// Routes `delta` per matched pair. The matching must consist of edges of
/// `g`, pairwise vertex-disjoint.
pub fn route_matching<S: Scalar>(
    g: &Graph<S>,
    matching: &[(VertexId, VertexId)],
    params: &RouteParams,
) -> Result<RouteOutcome> {
    let mut used = std::collections::BTreeSet::new();
    for &(u, v) in matching {
        if !g.contains_edge(u, v) {
            return Err(Error::MissingEdge { u, v });
        }
        if !used.insert(u) || !used.insert(v) {
            return Err(Error::param(format!(
                "matching shares vertex between edges at {{{u}, {v}}}"
            )));
        }
    }
    let pairs: Vec<((VertexId, VertexId), Rational64)> =
        matching.iter().map(|&e| (e, params.delta)).collect();
    route_pairs(g, &pairs, params.t, params.congestion_cap, params.eps, params.path_budget)
}

/// General engine: per-pair demands, shared hop bound and congestion cap.
pub fn route_pairs<S: Scalar>(
    g: &Graph<S>,
    pairs: &[((VertexId, VertexId), Rational64)],
    t: u32,
    congestion_cap: Rational64,
    eps: f64,
    path_budget: usize,
) -> Result<RouteOutcome> {
    if pairs.is_empty() {
        return Ok(RouteOutcome::Feasible(Flow::new()));
    }
    for &(_, d) in pairs {
        if !d.is_positive() {
            return Err(Error::param("pair demands must be positive".to_string()));
        }
    }
    if !(0.0 < eps && eps < 0.5) {
        return Err(Error::param(format!("eps must lie in (0, 1/2), got {eps}")));
    }
    if !congestion_cap.is_positive() {
        return Ok(RouteOutcome::Infeasible);
    }

    // Candidate paths per pair; a pair with none is unroutable outright.
    let mut pair_paths: Vec<Vec<Vec<VertexId>>> = Vec::with_capacity(pairs.len());
    for &((u, v), _) in pairs {
        let ps = paths::enumerate_paths(g, u, v, t, path_budget)?;
        if ps.is_empty() {
            return Ok(RouteOutcome::Infeasible);
        }
        pair_paths.push(ps);
    }

    let approx = mwu_concurrent_flow(g, pairs, &pair_paths, congestion_cap, eps);
    exact_recheck(g, pairs, &pair_paths, approx, congestion_cap, eps)
}

/// Edge index map for the float phase: normalized endpoint pair -> slot.
fn edge_slots<S: Scalar>(g: &Graph<S>) -> std::collections::BTreeMap<(VertexId, VertexId), usize> {
    g.edges()
        .iter()
        .enumerate()
        .map(|(i, e)| (key(e.u, e.v), i))
        .collect()
}

/// Multiplicative-weights concurrent flow on the enumerated paths
/// (Garg-Konemann with Fleischer's phase ordering). Returns per-(pair, path)
/// raw flow values and the scale they are to be divided by.
fn mwu_concurrent_flow<S: Scalar>(
    g: &Graph<S>,
    pairs: &[((VertexId, VertexId), Rational64)],
    pair_paths: &[Vec<Vec<VertexId>>],
    congestion_cap: Rational64,
    eps: f64,
) -> (Vec<Vec<f64>>, f64) {
    let slots = edge_slots(g);
    let m = g.edge_count().max(1);
    let cap = congestion_cap.to_f64_lossy();
    let eps_inner = eps / 3.0;

    let path_edges: Vec<Vec<Vec<usize>>> = pair_paths
        .iter()
        .map(|ps| {
            ps.iter()
                .map(|p| p.windows(2).map(|w| slots[&key(w[0], w[1])]).collect())
                .collect()
        })
        .collect();

    let delta0 = ((m as f64) / (1.0 - eps_inner))
        .powf(-1.0 / eps_inner)
        .max(1e-300);
    let scale = (1.0 / delta0).ln() / (1.0 + eps_inner).ln();
    let mut weight = vec![delta0 / cap; g.edge_count()];
    let mut flows: Vec<Vec<f64>> = pair_paths.iter().map(|ps| vec![0.0; ps.len()]).collect();

    let total_paths: usize = pair_paths.iter().map(|p| p.len()).sum();
    let max_phases = (ITER_CONST * ((total_paths + m) as f64).ln() / (eps_inner * eps_inner))
        .ceil() as usize;

    let dual = |w: &[f64]| -> f64 { w.iter().sum::<f64>() * cap };
    let mut phases = 0usize;
    'outer: while dual(&weight) < 1.0 {
        for (i, &(_, demand)) in pairs.iter().enumerate() {
            let mut remaining = demand.to_f64_lossy();
            while remaining > 0.0 {
                if dual(&weight) >= 1.0 {
                    break 'outer;
                }
                // cheapest candidate path under current weights
                let (best, _) = path_edges[i]
                    .iter()
                    .enumerate()
                    .map(|(j, es)| (j, es.iter().map(|&e| weight[e]).sum::<f64>()))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("non-empty path list");
                let amount = remaining.min(cap);
                flows[i][best] += amount;
                for &e in &path_edges[i][best] {
                    weight[e] *= 1.0 + eps_inner * amount / cap;
                }
                remaining -= amount;
            }
        }
        phases += 1;
        // Enough full phases to certify feasibility; no need to keep packing.
        if phases as f64 >= scale * (1.0 + eps) {
            break;
        }
        if phases >= max_phases {
            break;
        }
    }
    (flows, scale)
}

/// Converts the float flow to exact rationals, caps each pair at its demand,
/// rescales under the congestion cap, and accepts only if every pair still
/// routes `(1 - eps)` of its demand.
fn exact_recheck<S: Scalar>(
    g: &Graph<S>,
    pairs: &[((VertexId, VertexId), Rational64)],
    pair_paths: &[Vec<Vec<VertexId>>],
    (raw_flows, scale): (Vec<Vec<f64>>, f64),
    congestion_cap: Rational64,
    eps: f64,
) -> Result<RouteOutcome> {
    let scale = big_from_f64(scale)
        .filter(|s| s.is_positive())
        .ok_or_else(|| Error::internal("invalid flow scale"))?;
    let cap = big(congestion_cap);
    let eps_exact = big_from_f64(eps).ok_or_else(|| Error::internal("invalid eps"))?;

    // Scaled exact per-path values.
    let mut values: Vec<Vec<BigRational>> = raw_flows
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| {
                    big_from_f64(x.max(0.0))
                        .unwrap_or_else(BigRational::zero)
                        / scale.clone()
                })
                .collect()
        })
        .collect();

    // Cap each pair at exactly its demand.
    for (i, &(_, demand)) in pairs.iter().enumerate() {
        let routed: BigRational = values[i].iter().cloned().sum();
        let demand = big(demand);
        if routed > demand && routed.is_positive() {
            let factor = demand / routed;
            for v in values[i].iter_mut() {
                *v = v.clone() * factor.clone();
            }
        }
    }

    // Enforce the congestion cap exactly.
    let build_flow = |values: &[Vec<BigRational>]| -> Result<Flow<BigRational>> {
        let mut flow = Flow::new();
        for (i, row) in values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.is_positive() {
                    flow.add_path(pair_paths[i][j].clone(), v.clone())?;
                }
            }
        }
        Ok(flow)
    };
    let mut flow = build_flow(&values)?;
    let congestion = flow.max_congestion();
    if congestion > cap && congestion.is_positive() {
        let factor = cap.clone() / congestion;
        for row in values.iter_mut() {
            for v in row.iter_mut() {
                *v = v.clone() * factor.clone();
            }
        }
        flow = build_flow(&values)?;
    }

    // Exact acceptance: every pair keeps (1 - eps) of its demand.
    let routed = flow.routed_demand(g.vertex_count())?;
    for &((u, v), demand) in pairs {
        let need = (BigRational::one() - eps_exact.clone()) * big(demand);
        if routed.value(u, v) < need {
            return Ok(RouteOutcome::Infeasible);
        }
    }
    debug_assert!(flow.max_congestion() <= cap);
    debug_assert!(flow.is_valid_in(g));
    Ok(RouteOutcome::Feasible(flow))
}

/// Routes the last round of a certificate at demand `delta_prime` with
/// dilation `t` and congestion `delta_prime / 2`, then hunts the returned
/// flow for a path that avoids the matching entirely. On a valid
/// certificate no such flow can exist (the counting argument forces an
/// avoiding path, whose existence contradicts the final round); finding a
/// witness therefore flags an invalid certificate.
pub fn pg_contradiction_probe<S: Scalar>(
    g: &Graph<S>,
    seq: &PgSequence,
    t: u32,
    delta_prime: Rational64,
    eps: f64,
) -> Result<Option<Vec<VertexId>>> {
    let Some(last) = seq.rounds.last() else {
        return Ok(None);
    };
    if last.is_empty() {
        return Ok(None);
    }
    let params = RouteParams::new(delta_prime, t, delta_prime / Rational64::from_integer(2))
        .with_eps(eps);
    match route_matching(g, last, &params)? {
        RouteOutcome::Infeasible => Ok(None),
        RouteOutcome::Feasible(flow) => {
            let matched: std::collections::BTreeSet<(VertexId, VertexId)> =
                last.iter().map(|&(u, v)| key(u, v)).collect();
            for (path, _) in flow.paths() {
                let avoids = path.windows(2).all(|w| !matched.contains(&key(w[0], w[1])));
                if avoids {
                    return Ok(Some(path.clone()));
                }
            }
            Err(Error::internal(
                "feasible matching routing at congestion delta'/2 must contain an avoiding path",
            ))
        }
    }
}
