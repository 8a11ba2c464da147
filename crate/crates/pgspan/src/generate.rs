//! Graph family generators. All randomness flows from an explicit seed
//! through a counter-based derivation, so identical specs give identical
//! edge lists on every platform.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub type RatGraph = Graph<Rational64>;

/// SplitMix64 step; used to mix a base seed with per-purpose tags.
pub fn mix_seed(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic stream derived from `(seed, tag, counter)`.
pub fn derived_rng(seed: u64, tag: u64, counter: u64) -> ChaCha8Rng {
    let s = mix_seed(seed ^ mix_seed(tag ^ mix_seed(counter)));
    ChaCha8Rng::seed_from_u64(s)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    ErdosRenyi { n: usize, p: f64 },
    Hypercube { d: u32 },
    Cycle { n: usize },
    Complete { n: usize },
    Grid { rows: usize, cols: usize },
    Petersen,
    FromFile { path: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        GeneratorSpec { family, seed }
    }

    pub fn build(&self) -> Result<RatGraph> {
        match &self.family {
            Family::ErdosRenyi { n, p } => erdos_renyi(*n, *p, self.seed),
            Family::Hypercube { d } => hypercube(*d),
            Family::Cycle { n } => cycle(*n),
            Family::Complete { n } => complete(*n),
            Family::Grid { rows, cols } => grid(*rows, *cols),
            Family::Petersen => petersen(),
            Family::FromFile { path } => crate::io::read_graph_path(path),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::ErdosRenyi { n, p } => write!(f, "er:{n}:{p}"),
            Family::Hypercube { d } => write!(f, "hypercube:{d}"),
            Family::Cycle { n } => write!(f, "cycle:{n}"),
            Family::Complete { n } => write!(f, "complete:{n}"),
            Family::Grid { rows, cols } => write!(f, "grid:{rows}:{cols}"),
            Family::Petersen => write!(f, "petersen"),
            Family::FromFile { path } => write!(f, "file:{path}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `er:<n>:<p>`, `hypercube:<d>`, `cycle:<n>`, `complete:<n>`,
    /// `grid:<r>:<c>`, `petersen`, `file:<path>`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::param(format!("unrecognized generator spec '{s}'"));
        match parts.as_slice() {
            ["er", n, p] => Ok(Family::ErdosRenyi {
                n: n.parse().map_err(|_| bad())?,
                p: p.parse().map_err(|_| bad())?,
            }),
            ["hypercube", d] => Ok(Family::Hypercube { d: d.parse().map_err(|_| bad())? }),
            ["cycle", n] => Ok(Family::Cycle { n: n.parse().map_err(|_| bad())? }),
            ["complete", n] => Ok(Family::Complete { n: n.parse().map_err(|_| bad())? }),
            ["grid", r, c] => Ok(Family::Grid {
                rows: r.parse().map_err(|_| bad())?,
                cols: c.parse().map_err(|_| bad())?,
            }),
            ["petersen"] => Ok(Family::Petersen),
            ["file", rest @ ..] => Ok(Family::FromFile { path: rest.join(":") }),
            _ => Err(bad()),
        }
    }
}

/// Seeded per-pair Bernoulli sampling; quadratic in `n` but exactly
/// reproducible, which is what the experiments need at desk scale.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<RatGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("edge probability {p} outside [0, 1]")));
    }
    if n > (1 << 14) {
        return Err(Error::param(format!("er generator capped at n = 2^14, got {n}")));
    }
    let mut rng = derived_rng(seed, 0x4552, 0); // "ER"
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::unit(n, &edges)
}

pub fn cycle(n: usize) -> Result<RatGraph> {
    if n < 3 {
        return Err(Error::param(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::unit(n, &edges)
}

pub fn complete(n: usize) -> Result<RatGraph> {
    if n < 1 {
        return Err(Error::param("complete graph needs n >= 1".to_string()));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::unit(n, &edges)
}

pub fn grid(rows: usize, cols: usize) -> Result<RatGraph> {
    if rows == 0 || cols == 0 {
        return Err(Error::param("grid needs positive dimensions".to_string()));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::unit(rows * cols, &edges)
}

/// Hypercube `Q_d`: vertices are d-bit strings, edges join strings at
/// Hamming distance one.
pub fn hypercube(d: u32) -> Result<RatGraph> {
    if d == 0 || d > 16 {
        return Err(Error::param(format!("hypercube dimension must be in 1..=16, got {d}")));
    }
    let n = 1usize << d;
    let mut edges = Vec::new();
    for u in 0..n {
        for bit in 0..d {
            let v = u ^ (1 << bit);
            if u < v {
                edges.push((u, v));
            }
        }
    }
    Graph::unit(n, &edges)
}

/// The d dimension matchings of `Q_d`, each a perfect matching; their union
/// is the full edge set.
pub fn hypercube_dimension_matchings(d: u32) -> Result<Vec<Vec<(VertexId, VertexId)>>> {
    if d == 0 || d > 16 {
        return Err(Error::param(format!("hypercube dimension must be in 1..=16, got {d}")));
    }
    let n = 1usize << d;
    let mut rounds = Vec::with_capacity(d as usize);
    for bit in 0..d {
        let mut m = Vec::with_capacity(n / 2);
        for u in 0..n {
            if u & (1 << bit) == 0 {
                m.push((u, u | (1 << bit)));
            }
        }
        rounds.push(m);
    }
    Ok(rounds)
}

/// Two alternating matchings covering an even cycle; round one is the even
/// edges, round two the odds. On `C4` this is exactly the two-round
/// girth-four construction.
pub fn cycle_alternating_rounds(n: usize) -> Result<Vec<Vec<(VertexId, VertexId)>>> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::param(format!("alternating rounds need an even cycle with n >= 4, got {n}")));
    }
    let mut first = Vec::new();
    let mut second = Vec::new();
    for i in 0..n {
        let e = (i, (i + 1) % n);
        if i % 2 == 0 {
            first.push(e);
        } else {
            second.push(e);
        }
    }
    Ok(vec![first, second])
}

/// Random unit demand supported on pairs within distance `h`: pairs are
/// sampled in seeded order and assigned the largest integer value the
/// remaining degree budgets allow (capped at 2).
pub fn random_unit_h_length_demand(
    g: &RatGraph,
    h: u64,
    seed: u64,
) -> Result<crate::cuts::Demand<Rational64>> {
    use rand::seq::SliceRandom;
    let mut demand = crate::cuts::Demand::new(g.vertex_count());
    let mut close_pairs = Vec::new();
    for u in 0..g.vertex_count() {
        let ball = crate::search::bounded_bfs(g, u, Rational64::from_integer(h as i64))?;
        for (v, _) in ball.iter() {
            if v != u {
                close_pairs.push((u, v));
            }
        }
    }
    let mut rng = derived_rng(seed, 0x6465_6d64, 0); // "demd"
    close_pairs.shuffle(&mut rng);
    let mut out_left: Vec<i64> = (0..g.vertex_count()).map(|v| g.degree(v) as i64).collect();
    let mut in_left = out_left.clone();
    for (u, v) in close_pairs {
        let amount = out_left[u].min(in_left[v]).min(2);
        if amount > 0 && rng.gen::<bool>() {
            out_left[u] -= amount;
            in_left[v] -= amount;
            demand.add(u, v, Rational64::from_integer(amount))?;
        }
    }
    Ok(demand)
}

pub fn petersen() -> Result<RatGraph> {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5)); // outer 5-cycle
        edges.push((i, i + 5)); // spokes
        edges.push((i + 5, (i + 2) % 5 + 5)); // inner pentagram
    }
    Graph::unit(10, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle4_matches_hand_built_square() {
        let g = cycle(4).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
            assert!(g.contains_edge(u, v));
        }
    }

    #[test]
    fn hypercube3_has_three_perfect_matchings() {
        let g = hypercube(3).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 12);
        let rounds = hypercube_dimension_matchings(3).unwrap();
        assert_eq!(rounds.len(), 3);
        let mut union = std::collections::BTreeSet::new();
        for m in &rounds {
            assert_eq!(m.len(), 4);
            let mut touched = std::collections::BTreeSet::new();
            for &(u, v) in m {
                assert!(touched.insert(u) && touched.insert(v), "not a matching");
                assert!(g.contains_edge(u, v));
                union.insert(crate::graph::key(u, v));
            }
            assert_eq!(touched.len(), 8, "not perfect");
        }
        assert_eq!(union.len(), 12, "matchings must cover E(Q_d)");
    }

    #[test]
    fn er_with_p_zero_is_empty() {
        let g = erdos_renyi(100, 0.0, 7).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn er_is_deterministic_under_seed() {
        let a = erdos_renyi(40, 0.3, 42).unwrap();
        let b = erdos_renyi(40, 0.3, 42).unwrap();
        let c = erdos_renyi(40, 0.3, 43).unwrap();
        assert_eq!(a.edge_pairs(), b.edge_pairs());
        assert_ne!(a.edge_pairs(), c.edge_pairs());
    }

    #[test]
    fn petersen_outer_cycle_is_c5() {
        let g = petersen().unwrap();
        assert_eq!(g.edge_count(), 15);
        let (outer, _) = g.induced_subgraph(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(outer.edge_count(), 5);
        for v in 0..5 {
            assert_eq!(outer.degree(v), 2);
        }
    }

    #[test]
    fn family_specs_round_trip_through_strings() {
        for s in ["er:10:0.5", "hypercube:3", "cycle:8", "complete:5", "grid:2:3", "petersen"] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("triangle:3".parse::<Family>().is_err());
    }
}
