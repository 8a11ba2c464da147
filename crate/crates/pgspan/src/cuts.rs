//! Moving cuts, demands and flows at toy scale.
//!
//! Everything here is exact: cut values live on the grid `{0, 1/h, ..., 1}`,
//! demands and flows carry scalar values, and the sparsity computations
//! reduce to integral max-flow. Floating point never enters this module.

use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, GraphBuilder, VertexId};
use crate::maxflow::{Dinic, INF};
use crate::scalar::Scalar;
use crate::search::bounded_bfs;

/// Fractional edge cut with values `k/h`, stored by numerator. Edges absent
/// from the map have value zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MovingCut {
    h: u64,
    numerators: BTreeMap<usize, u64>,
}

impl MovingCut {
    pub fn new(h: u64) -> Result<Self> {
        if h == 0 {
            return Err(Error::param("moving cut needs h >= 1".to_string()));
        }
        Ok(MovingCut { h, numerators: BTreeMap::new() })
    }

    /// Pure cut (value 1) on the given edge ids.
    pub fn pure_on(h: u64, edges: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut cut = MovingCut::new(h)?;
        for e in edges {
            cut.set_numerator(e, h)?;
        }
        Ok(cut)
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    /// Sets `C(e) = numerator / h`. A zero numerator clears the entry.
    pub fn set_numerator(&mut self, edge: usize, numerator: u64) -> Result<()> {
        if numerator > self.h {
            return Err(Error::param(format!(
                "cut numerator {numerator} exceeds denominator h = {}",
                self.h
            )));
        }
        if numerator == 0 {
            self.numerators.remove(&edge);
        } else {
            self.numerators.insert(edge, numerator);
        }
        Ok(())
    }

    pub fn numerator(&self, edge: usize) -> u64 {
        self.numerators.get(&edge).copied().unwrap_or(0)
    }

    /// `C(e)` as an exact rational.
    pub fn value(&self, edge: usize) -> Rational64 {
        Rational64::new(self.numerator(edge) as i64, self.h as i64)
    }

    /// Support: edges with non-zero value, ascending.
    pub fn support(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.numerators.iter().map(|(&e, &k)| (e, k))
    }

    pub fn support_len(&self) -> usize {
        self.numerators.len()
    }

    /// `|C| = sum of C(e)`, exactly.
    pub fn size(&self) -> Rational64 {
        let total: i64 = self.numerators.values().map(|&k| k as i64).sum();
        Rational64::new(total, self.h as i64)
    }

    /// All values in {0, 1}.
    pub fn is_pure(&self) -> bool {
        self.numerators.values().all(|&k| k == self.h)
    }

    fn check_edges<S: Scalar>(&self, g: &Graph<S>) -> Result<()> {
        for (&e, _) in &self.numerators {
            if e >= g.edge_count() {
                return Err(Error::InvalidEdgeId { edge: e, edge_count: g.edge_count() });
            }
        }
        Ok(())
    }

    /// Per-vertex cut mass `C(v) = sum of C(e) over incident edges`.
    pub fn vertex_value<S: Scalar>(&self, g: &Graph<S>, v: VertexId) -> Result<Rational64> {
        g.check_vertex(v)?;
        self.check_edges(g)?;
        let mut total = Rational64::zero();
        for &(_, eid) in g.neighbors(v) {
            total += self.value(eid);
        }
        Ok(total)
    }
}

/// How `apply_cut` realizes `G - C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutMode {
    /// Increase each edge length by `h * C(e)`.
    Augment,
    /// Delete the support edges; requires a pure cut.
    DeleteSupport,
}

/// Applies a moving cut to the graph. `Augment` adds `h * C(e)` (an integer)
/// to each edge length; `DeleteSupport` removes the support of a pure cut.
pub fn apply_cut<S: Scalar>(g: &Graph<S>, cut: &MovingCut, mode: CutMode) -> Result<Graph<S>> {
    cut.check_edges(g)?;
    match mode {
        CutMode::Augment => {
            let mut b = GraphBuilder::new(g.vertex_count());
            if g.allows_self_loops() {
                b = b.allow_self_loops();
            }
            for (id, Edge { u, v, len }) in g.edges().iter().enumerate() {
                let extra = S::from_u64(cut.numerator(id));
                b.add_edge(*u, *v, len.clone() + extra);
            }
            b.build()
        }
        CutMode::DeleteSupport => {
            if !cut.is_pure() {
                return Err(Error::param(
                    "delete-support mode requires a pure cut".to_string(),
                ));
            }
            let mut b = GraphBuilder::new(g.vertex_count());
            if g.allows_self_loops() {
                b = b.allow_self_loops();
            }
            for (id, Edge { u, v, len }) in g.edges().iter().enumerate() {
                if cut.numerator(id) == 0 {
                    b.add_edge(*u, *v, len.clone());
                }
            }
            b.build()
        }
    }
}

/// `G - C` with the definitional semantics: pure cuts delete their support,
/// fractional cuts lengthen edges.
pub fn minus_cut<S: Scalar>(g: &Graph<S>, cut: &MovingCut) -> Result<Graph<S>> {
    let mode = if cut.is_pure() { CutMode::DeleteSupport } else { CutMode::Augment };
    apply_cut(g, cut, mode)
}

/// Sparse demand on ordered vertex pairs with cached per-vertex loads.
#[derive(Debug, Clone, PartialEq)]
pub struct Demand<V> {
    n: usize,
    entries: BTreeMap<(VertexId, VertexId), V>,
    out_load: Vec<V>,
    in_load: Vec<V>,
}

impl<V: Scalar> Demand<V> {
    pub fn new(n: usize) -> Self {
        Demand {
            n,
            entries: BTreeMap::new(),
            out_load: vec![V::zero(); n],
            in_load: vec![V::zero(); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Adds `value` to `D(u, v)`. Negative or zero additions are rejected;
    /// demands are non-negative by definition.
    pub fn add(&mut self, u: VertexId, v: VertexId, value: V) -> Result<()> {
        if u >= self.n {
            return Err(Error::InvalidVertex { vertex: u, vertex_count: self.n });
        }
        if v >= self.n {
            return Err(Error::InvalidVertex { vertex: v, vertex_count: self.n });
        }
        if !value.is_positive_s() {
            return Err(Error::param("demand values must be positive".to_string()));
        }
        self.out_load[u] = self.out_load[u].clone() + value.clone();
        self.in_load[v] = self.in_load[v].clone() + value.clone();
        self.entries
            .entry((u, v))
            .and_modify(|x| *x = x.clone() + value.clone())
            .or_insert(value);
        Ok(())
    }

    pub fn value(&self, u: VertexId, v: VertexId) -> V {
        self.entries.get(&(u, v)).cloned().unwrap_or_else(V::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(VertexId, VertexId), &V)> {
        self.entries.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn pair_count(&self) -> usize {
        self.entries.len()
    }

    /// `|D|`: total demand mass.
    pub fn size(&self) -> V {
        self.entries
            .values()
            .fold(V::zero(), |acc, v| acc + v.clone())
    }

    pub fn out_load(&self, v: VertexId) -> V {
        self.out_load[v].clone()
    }

    pub fn in_load(&self, v: VertexId) -> V {
        self.in_load[v].clone()
    }

    /// `load(D)(v) = max(in, out)`.
    pub fn load(&self, v: VertexId) -> V {
        self.out_load[v].clone().max_s(self.in_load[v].clone())
    }

    /// Recomputes the load caches from the entries; true when they agree.
    pub fn loads_consistent(&self) -> bool {
        let mut out = vec![V::zero(); self.n];
        let mut inl = vec![V::zero(); self.n];
        for (&(u, v), val) in &self.entries {
            out[u] = out[u].clone() + val.clone();
            inl[v] = inl[v].clone() + val.clone();
        }
        out == self.out_load && inl == self.in_load
    }

    /// Unit in `g`: every vertex load is at most its degree.
    pub fn is_unit_in<S: Scalar>(&self, g: &Graph<S>) -> bool {
        (0..self.n).all(|v| {
            self.load(v).total_cmp(&V::from_u64(g.degree(v) as u64)) != std::cmp::Ordering::Greater
        })
    }

    /// `h`-length in `g`: positive only on pairs within distance `h`.
    pub fn is_h_length_in<S: Scalar>(&self, g: &Graph<S>, h: u64) -> Result<bool> {
        let dist = pair_distances(g, self)?;
        Ok(self
            .entries
            .keys()
            .all(|k| matches!(dist.get(k), Some(Some(d)) if d.total_cmp(&S::from_u64(h)) != std::cmp::Ordering::Greater)))
    }
}

/// Distances (capped at "reachable") for every demand pair, via one bounded
/// search per distinct source. The cap is the sum of all edge lengths, i.e.
/// effectively unbounded.
fn pair_distances<S: Scalar, V: Scalar>(
    g: &Graph<S>,
    demand: &Demand<V>,
) -> Result<BTreeMap<(VertexId, VertexId), Option<S>>> {
    let diameter_cap = g
        .edges()
        .iter()
        .fold(S::one(), |acc, e| acc + e.len.clone());
    let mut out = BTreeMap::new();
    let mut last: Option<(VertexId, crate::search::DistanceResult<S>)> = None;
    for (&(u, v), _) in demand.iter() {
        let need_new = match &last {
            Some((s, _)) => *s != u,
            None => true,
        };
        if need_new {
            last = Some((u, bounded_bfs(g, u, diameter_cap.clone())?));
        }
        let (_, res) = last.as_ref().unwrap();
        out.insert((u, v), res.distance(v).cloned());
    }
    Ok(out)
}

/// Demand mass separated by `C` at scale `h`: the sum of `D(u, v)` over pairs
/// whose distance in `G - C` exceeds `h`.
pub fn separated<S: Scalar, V: Scalar>(
    g: &Graph<S>,
    cut: &MovingCut,
    demand: &Demand<V>,
    h: u64,
) -> Result<V> {
    if demand.vertex_count() != g.vertex_count() {
        return Err(Error::VertexSetMismatch { expected: g.vertex_count(), got: demand.vertex_count() });
    }
    let cut_graph = minus_cut(g, cut)?;
    let cap = S::from_u64(h);
    let mut total = V::zero();
    let mut last: Option<(VertexId, crate::search::DistanceResult<S>)> = None;
    for (&(u, v), val) in demand.iter() {
        let need_new = match &last {
            Some((s, _)) => *s != u,
            None => true,
        };
        if need_new {
            last = Some((u, bounded_bfs(&cut_graph, u, cap.clone())?));
        }
        let (_, res) = last.as_ref().unwrap();
        if res.distance(v).is_none() {
            total = total + val.clone();
        }
    }
    Ok(total)
}

/// Sparsity of `C` with respect to one demand: `|C| / sep_h(C, D)`.
/// `Undefined` when nothing is separated (the definition requires
/// positive separation).
#[derive(Debug, Clone, PartialEq)]
pub enum SparsityWrtDemand<V> {
    Finite(V),
    Undefined,
}

pub fn sparsity_wrt_demand<S: Scalar, V: Scalar>(
    g: &Graph<S>,
    cut: &MovingCut,
    demand: &Demand<V>,
    h: u64,
) -> Result<SparsityWrtDemand<V>> {
    let sep = separated(g, cut, demand, h)?;
    if !sep.is_positive_s() {
        return Ok(SparsityWrtDemand::Undefined);
    }
    let size = cut.size();
    Ok(SparsityWrtDemand::Finite(
        V::from_ratio(*size.numer(), *size.denom()) / sep,
    ))
}

/// `(h, s)`-length sparsity of an `hs`-length cut: `|C|` over the maximum
/// `hs`-separated mass achievable by a unit `h`-length demand.
/// `Expanding` when no unit `h`-length demand is separated at all.
#[derive(Debug, Clone, PartialEq)]
pub enum CutSparsity {
    Finite { sparsity: Rational64, max_separated: u64 },
    Expanding,
}

/// Ordered pairs `(u, v)`, `u != v`, with `d_g(u, v) <= h` and
/// `d_{g-C}(u, v) > h*s`: exactly the pairs a unit `h`-length demand can
/// place separated mass on.
pub fn separable_pairs<S: Scalar>(
    g: &Graph<S>,
    cut: &MovingCut,
    h: u64,
    s: u64,
) -> Result<Vec<(VertexId, VertexId)>> {
    let cut_graph = minus_cut(g, cut)?;
    let near_cap = S::from_u64(h);
    let far_cap = S::from_u64(h * s);
    let mut pairs = Vec::new();
    for u in 0..g.vertex_count() {
        let near = bounded_bfs(g, u, near_cap.clone())?;
        let far = bounded_bfs(&cut_graph, u, far_cap.clone())?;
        for (v, _) in near.iter() {
            if v != u && far.distance(v).is_none() {
                pairs.push((u, v));
            }
        }
    }
    Ok(pairs)
}

/// The inner maximization solved exactly: the separated-pair demand polytope
/// (out/in loads capped by degree) is a transportation polytope with integer
/// bounds, so the maximum is an integral max-flow.
pub fn max_separated_unit_demand<S: Scalar>(
    g: &Graph<S>,
    pairs: &[(VertexId, VertexId)],
) -> u64 {
    if pairs.is_empty() {
        return 0;
    }
    let n = g.vertex_count();
    // source, sink, out-nodes, in-nodes
    let source = 0;
    let sink = 1;
    let out_base = 2;
    let in_base = 2 + n;
    let mut flow = Dinic::new(2 + 2 * n);
    for v in 0..n {
        let deg = g.degree(v) as i64;
        if deg > 0 {
            flow.add_edge(source, out_base + v, deg);
            flow.add_edge(in_base + v, sink, deg);
        }
    }
    for &(u, v) in pairs {
        flow.add_edge(out_base + u, in_base + v, INF);
    }
    flow.max_flow(source, sink) as u64
}

pub fn cut_sparsity<S: Scalar>(
    g: &Graph<S>,
    cut: &MovingCut,
    h: u64,
    s: u64,
) -> Result<CutSparsity> {
    if h == 0 || s == 0 {
        return Err(Error::param("cut sparsity needs h >= 1 and s >= 1".to_string()));
    }
    if cut.h() != h * s {
        return Err(Error::param(format!(
            "cut grid denominator {} does not match h*s = {}",
            cut.h(),
            h * s
        )));
    }
    let pairs = separable_pairs(g, cut, h, s)?;
    let max_sep = max_separated_unit_demand(g, &pairs);
    if max_sep == 0 {
        return Ok(CutSparsity::Expanding);
    }
    Ok(CutSparsity::Finite {
        sparsity: cut.size() / Rational64::from_u64(max_sep),
        max_separated: max_sep,
    })
}

/// Number of self-loops `ceil(C(v) * ell)` the linkedness construction adds
/// at each vertex. Fractional counts are rounded up, which only makes the
/// linked graph harder to expand.
pub fn self_loop_degrees<S: Scalar>(
    g: &Graph<S>,
    cut: &MovingCut,
    ell: u64,
) -> Result<BTreeMap<VertexId, u64>> {
    cut.check_edges(g)?;
    let mut out = BTreeMap::new();
    for v in 0..g.vertex_count() {
        let cv = cut.vertex_value(g, v)?;
        let scaled = cv * Rational64::from_u64(ell);
        let loops = scaled.ceil().to_integer() as u64;
        if loops > 0 {
            out.insert(v, loops);
        }
    }
    Ok(out)
}

/// `G + L`: the graph with the linkedness self-loops added.
pub fn add_self_loops<S: Scalar>(
    g: &Graph<S>,
    cut: &MovingCut,
    ell: u64,
) -> Result<Graph<S>> {
    let loops = self_loop_degrees(g, cut, ell)?;
    let pairs: Vec<(VertexId, u64)> = loops.into_iter().collect();
    g.with_self_loops(&pairs)
}

/// Flow as an explicit list of positive-valued simple paths.
#[derive(Debug, Clone, PartialEq)]
pub struct Flow<V> {
    paths: Vec<(Vec<VertexId>, V)>,
}

impl<V: Scalar> Flow<V> {
    pub fn new() -> Self {
        Flow { paths: Vec::new() }
    }

    pub fn add_path(&mut self, path: Vec<VertexId>, value: V) -> Result<()> {
        if path.len() < 2 {
            return Err(Error::param("flow paths need at least two vertices".to_string()));
        }
        if !value.is_positive_s() {
            return Err(Error::param("flow values must be positive".to_string()));
        }
        self.paths.push((path, value));
        Ok(())
    }

    pub fn paths(&self) -> &[(Vec<VertexId>, V)] {
        &self.paths
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Congestion per undirected edge, keyed by normalized endpoints.
    pub fn congestion_map(&self) -> BTreeMap<(VertexId, VertexId), V> {
        let mut map: BTreeMap<(VertexId, VertexId), V> = BTreeMap::new();
        for (path, value) in &self.paths {
            for w in path.windows(2) {
                let e = crate::graph::key(w[0], w[1]);
                map.entry(e)
                    .and_modify(|x| *x = x.clone() + value.clone())
                    .or_insert_with(|| value.clone());
            }
        }
        map
    }

    pub fn max_congestion(&self) -> V {
        self.congestion_map()
            .into_values()
            .fold(V::zero(), |acc, v| acc.max_s(v))
    }

    /// Maximum number of edges on any flow-path (unit-length dilation).
    pub fn dilation_hops(&self) -> usize {
        self.paths.iter().map(|(p, _)| p.len() - 1).max().unwrap_or(0)
    }

    /// The demand this flow routes: endpoints of each flow-path.
    pub fn routed_demand(&self, n: usize) -> Result<Demand<V>> {
        let mut d = Demand::new(n);
        for (path, value) in &self.paths {
            d.add(path[0], *path.last().unwrap(), value.clone())?;
        }
        Ok(d)
    }

    /// Checks that every consecutive pair is an edge of `g` and every path is
    /// simple.
    pub fn is_valid_in<S: Scalar>(&self, g: &Graph<S>) -> bool {
        self.paths.iter().all(|(path, _)| {
            let mut seen = std::collections::BTreeSet::new();
            path.iter().all(|&v| seen.insert(v))
                && path.windows(2).all(|w| g.contains_edge(w[0], w[1]))
        })
    }
}

impl<V: Scalar> Default for Flow<V> {
    fn default() -> Self {
        Self::new()
    }
}

/// Parameter bundle for the routing experiments: `h`, `s`, sparsity target
/// `phi`, linkedness `ell`, degree thresholds `delta` and `delta_prime`, and
/// cut slack `kappa`. The two universal constants are configuration knobs;
/// the formulas below fill the fields the way the analysis ties them
/// together (natural logarithms).
#[derive(Debug, Clone, PartialEq)]
pub struct LcParams {
    pub h: u64,
    pub s: u64,
    pub t: u64,
    pub phi: f64,
    pub ell: f64,
    pub delta: f64,
    pub delta_prime: f64,
    pub kappa: f64,
    pub theta_flow: f64,
    pub theta_decomp: f64,
}

impl LcParams {
    /// Populates every field from `n` and `t` with `h = 1`, `s = t`.
    pub fn from_route_lemma(n: usize, t: u64, theta_flow: f64, theta_decomp: f64) -> Result<Self> {
        if t < 2 || n < 2 {
            return Err(Error::param("parameter derivation needs t >= 2 and n >= 2".to_string()));
        }
        let nf = n as f64;
        let tf = t as f64;
        let phi = 1.0 / (2.0 * tf * nf.powf(theta_decomp / tf) * nf.ln());
        let delta = 4.0 * theta_flow * tf * nf.ln() / (phi * phi);
        let delta_prime = phi / (2.0 * tf) * delta;
        let ell = 1.0 / (100.0 * phi * nf.ln());
        let kappa = tf * nf.powf(theta_decomp / tf) * nf.ln();
        Ok(LcParams {
            h: 1,
            s: t,
            t,
            phi,
            ell,
            delta,
            delta_prime,
            kappa,
            theta_flow,
            theta_decomp,
        })
    }

    /// Relative check that the populated fields satisfy the defining
    /// relations.
    pub fn relations_hold(&self, tol: f64) -> bool {
        let rel = |a: f64, b: f64| (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300);
        rel(self.delta_prime, self.phi / (2.0 * self.t as f64) * self.delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    type G = Graph<Rational64>;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn path3() -> G {
        G::unit(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn zero_cut_leaves_graph_unchanged() {
        let g = path3();
        let cut = MovingCut::new(2).unwrap();
        let out = apply_cut(&g, &cut, CutMode::Augment).unwrap();
        assert_eq!(out.edges(), g.edges());
        assert!(cut.is_pure(), "empty support counts as pure");
        assert_eq!(cut.size(), Rational64::zero());
    }

    #[test]
    fn pure_cut_deletes_and_disconnects() {
        let g = path3();
        let cut = MovingCut::pure_on(2, [0]).unwrap();
        let out = minus_cut(&g, &cut).unwrap();
        assert_eq!(out.edge_count(), 1);
        assert_eq!(
            crate::search::distance_within(&out, 0, 2, r(100, 1)).unwrap(),
            crate::search::Dist::Beyond
        );
    }

    #[test]
    fn half_cut_lengthens_the_edge() {
        let g = path3();
        let mut cut = MovingCut::new(2).unwrap();
        cut.set_numerator(0, 1).unwrap(); // C({0,1}) = 1/2, h*C = 1
        let out = apply_cut(&g, &cut, CutMode::Augment).unwrap();
        assert_eq!(out.edges()[0].len, r(2, 1));
        assert_eq!(
            crate::search::distance_within(&out, 0, 2, r(10, 1)).unwrap(),
            crate::search::Dist::Within(r(3, 1))
        );
    }

    #[test]
    fn numerator_beyond_h_is_rejected() {
        let mut cut = MovingCut::new(2).unwrap();
        assert!(cut.set_numerator(0, 3).is_err());
    }

    #[test]
    fn separated_counts_only_beyond_h_pairs() {
        let g = path3();
        // C = 0 and demand on a pair at distance 2 <= h: nothing separated.
        let mut d = Demand::new(3);
        d.add(0, 2, Rational64::one()).unwrap();
        let zero_cut = MovingCut::new(2).unwrap();
        assert_eq!(separated(&g, &zero_cut, &d, 2).unwrap(), Rational64::zero());
        // Deleting {0,1} separates the pair entirely.
        let cut = MovingCut::pure_on(2, [0]).unwrap();
        assert_eq!(separated(&g, &cut, &d, 2).unwrap(), Rational64::one());
    }

    #[test]
    fn sparsity_wrt_demand_examples() {
        let g = path3();
        let mut d = Demand::new(3);
        d.add(0, 2, Rational64::one()).unwrap();
        let cut = MovingCut::pure_on(2, [0]).unwrap();
        // |C| = 1, sep = 1 -> 1.
        match sparsity_wrt_demand(&g, &cut, &d, 2).unwrap() {
            SparsityWrtDemand::Finite(v) => assert_eq!(v, Rational64::one()),
            SparsityWrtDemand::Undefined => panic!("expected finite sparsity"),
        }
        // sep = 2 under doubled demand -> 1/2.
        let mut d2 = Demand::new(3);
        d2.add(0, 2, Rational64::one()).unwrap();
        d2.add(2, 0, Rational64::one()).unwrap();
        match sparsity_wrt_demand(&g, &cut, &d2, 2).unwrap() {
            SparsityWrtDemand::Finite(v) => assert_eq!(v, r(1, 2)),
            SparsityWrtDemand::Undefined => panic!("expected finite sparsity"),
        }
        // Zero cut separates nothing: undefined.
        let zero_cut = MovingCut::new(2).unwrap();
        assert_eq!(
            sparsity_wrt_demand(&g, &zero_cut, &d, 2).unwrap(),
            SparsityWrtDemand::Undefined
        );
    }

    #[test]
    fn cut_sparsity_single_edge() {
        // Degree caps in- and out-load separately, so the unit demand may
        // put one unit on each orientation of the lone pair.
        let g = G::unit(2, &[(0, 1)]).unwrap();
        let cut = MovingCut::pure_on(1, [0]).unwrap();
        match cut_sparsity(&g, &cut, 1, 1).unwrap() {
            CutSparsity::Finite { sparsity, max_separated } => {
                assert_eq!(max_separated, 2);
                assert_eq!(sparsity, r(1, 2));
            }
            CutSparsity::Expanding => panic!("cut separates the only pair"),
        }
    }

    #[test]
    fn empty_cut_is_expanding() {
        let g = path3();
        let cut = MovingCut::new(2).unwrap();
        assert_eq!(cut_sparsity(&g, &cut, 2, 1).unwrap(), CutSparsity::Expanding);
    }

    #[test]
    fn self_loop_counts() {
        let g = path3();
        let zero = MovingCut::new(2).unwrap();
        assert!(self_loop_degrees(&g, &zero, 3).unwrap().is_empty());

        // Pure on edge {0,1}: C(0) = C(1) = 1, times ell = 3.
        let pure = MovingCut::pure_on(2, [0]).unwrap();
        let loops = self_loop_degrees(&g, &pure, 3).unwrap();
        assert_eq!(loops.get(&0), Some(&3));
        assert_eq!(loops.get(&1), Some(&3));
        assert_eq!(loops.get(&2), None);

        // Two half-value edges at vertex 1: C(1) = 1, times ell = 4.
        let mut half = MovingCut::new(2).unwrap();
        half.set_numerator(0, 1).unwrap();
        half.set_numerator(1, 1).unwrap();
        let loops = self_loop_degrees(&g, &half, 4).unwrap();
        assert_eq!(loops.get(&1), Some(&4));
        assert_eq!(loops.get(&0), Some(&2));
        let aug = add_self_loops(&g, &half, 4).unwrap();
        assert_eq!(aug.degree(1), 2 + 4);
    }

    #[test]
    fn fractional_loop_counts_round_up() {
        let g = path3();
        let mut cut = MovingCut::new(2).unwrap();
        cut.set_numerator(0, 1).unwrap(); // C(0) = 1/2
        let loops = self_loop_degrees(&g, &cut, 3).unwrap(); // 3/2 -> 2
        assert_eq!(loops.get(&0), Some(&2));
    }

    #[test]
    fn demand_load_caches_stay_consistent() {
        let mut d: Demand<Rational64> = Demand::new(4);
        d.add(0, 1, r(1, 2)).unwrap();
        d.add(0, 2, r(1, 3)).unwrap();
        d.add(2, 0, Rational64::one()).unwrap();
        assert!(d.loads_consistent());
        assert_eq!(d.out_load(0), r(5, 6));
        assert_eq!(d.in_load(0), Rational64::one());
        assert_eq!(d.load(0), Rational64::one());
        assert_eq!(d.size(), r(11, 6));
    }

    #[test]
    fn flow_accounting() {
        let g = G::unit(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let mut f: Flow<Rational64> = Flow::new();
        f.add_path(vec![0, 1, 2], r(1, 2)).unwrap();
        f.add_path(vec![0, 3, 2], r(1, 2)).unwrap();
        f.add_path(vec![0, 1], r(1, 4)).unwrap();
        assert!(f.is_valid_in(&g));
        assert_eq!(f.max_congestion(), r(3, 4));
        assert_eq!(f.dilation_hops(), 2);
        let d = f.routed_demand(4).unwrap();
        assert_eq!(d.value(0, 2), Rational64::one());
        assert_eq!(d.value(0, 1), r(1, 4));
    }

    #[test]
    fn cut_size_additive_over_disjoint_supports() {
        let mut a = MovingCut::new(4).unwrap();
        a.set_numerator(0, 1).unwrap();
        a.set_numerator(1, 4).unwrap();
        let mut b = MovingCut::new(4).unwrap();
        b.set_numerator(2, 2).unwrap();
        let mut union = MovingCut::new(4).unwrap();
        for (e, k) in a.support().chain(b.support()) {
            union.set_numerator(e, k).unwrap();
        }
        assert_eq!(union.size(), a.size() + b.size());
    }

    #[test]
    fn route_lemma_parameters_satisfy_relations() {
        let p = LcParams::from_route_lemma(64, 4, 1.0, 1.0).unwrap();
        assert!(p.relations_hold(1e-12));
        assert!(p.phi > 0.0 && p.phi < 1.0);
        assert!(p.delta_prime < p.delta);
    }
}
