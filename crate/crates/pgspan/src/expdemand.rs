//! The exponential demand: edge-pair weights decaying exponentially with
//! edge-to-edge distance, row-normalized and lifted to vertices.
//!
//! Weight `w(e, e') = n^(-d(e, e') / (sh/2))` for pairs within distance
//! `sh/2`, zero beyond. Edge-to-edge distance counts adjacent edges as one
//! apart (`d(e, e) = 0`; in general the endpoint distance plus half of each
//! edge's own length). All arithmetic is exact in the radical field the
//! exponents generate, so row sums equal one identically, not approximately.

use num_rational::{Ratio, Rational64};
use num_traits::{One, Signed, Zero};

use crate::cuts::Demand;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::radical::{Radical, RadicalCtx};
use crate::scalar::Scalar;

pub type RatGraph = Graph<Rational64>;

#[derive(Debug, Clone)]
pub struct ExponentialDemand {
    pub h: u64,
    pub s: u64,
    /// `w(e, e')`, dense by edge id.
    pub weights: Vec<Vec<Radical>>,
    /// `D(e, e') = w(e, e') / w(e)`; each row sums to exactly one.
    pub edge_demand: Vec<Vec<Radical>>,
    /// Quarter-split lift: each `D(e, e')` spreads equally over the four
    /// endpoint combinations, keeping per-vertex loads within degrees.
    pub vertex_demand: Demand<Radical>,
}

/// Distance between edges: zero for the same edge, otherwise the smallest
/// endpoint distance plus the average of the two edge lengths (one hop for
/// unit edges).
pub fn edge_distance(
    dist: &[Vec<Option<Rational64>>],
    edges: &[crate::graph::Edge<Rational64>],
    a: usize,
    b: usize,
) -> Option<Rational64> {
    if a == b {
        return Some(Rational64::zero());
    }
    let (ea, eb) = (&edges[a], &edges[b]);
    let mut best: Option<Rational64> = None;
    for x in [ea.u, ea.v] {
        for y in [eb.u, eb.v] {
            if let Some(d) = &dist[x][y] {
                best = Some(match best {
                    Some(b) if b <= *d => b,
                    _ => *d,
                });
            }
        }
    }
    best.map(|d| d + (ea.len + eb.len) / Rational64::from_integer(2))
}

pub fn exponential_demand(g: &RatGraph, h: u64, s: u64) -> Result<ExponentialDemand> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if h == 0 || s == 0 || s * h < 2 {
        return Err(Error::param(format!("exponential demand needs s*h >= 2, got s={s}, h={h}")));
    }
    let n = g.vertex_count() as u64;
    let m = g.edge_count();
    let q = Rational64::new((s * h) as i64, 2);
    let dist = crate::oracle::all_pairs_lengths(g);

    // Exponents d/q for all in-range pairs; their denominators fix the field.
    let mut exponents: Vec<Vec<Option<Ratio<u64>>>> = vec![vec![None; m]; m];
    let mut denoms = vec![1u64];
    for a in 0..m {
        for b in 0..m {
            let Some(d) = edge_distance(&dist, g.edges(), a, b) else {
                continue;
            };
            if d > q {
                continue;
            }
            let p = d / q;
            debug_assert!(!p.is_negative());
            let p = Ratio::new(*p.numer() as u64, *p.denom() as u64);
            denoms.push(*p.denom());
            exponents[a][b] = Some(p);
        }
    }
    let ctx = RadicalCtx::for_exponents(n, denoms)?;

    let weights: Vec<Vec<Radical>> = exponents
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| match p {
                    Some(p) => ctx.power_of(n, *p),
                    None => Ok(Radical::zero()),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut edge_demand = Vec::with_capacity(m);
    for row in &weights {
        let total = row.iter().fold(Radical::zero(), |acc, w| acc + w.clone());
        // The diagonal weight is one, so the row total is never zero.
        let inv_total = total.inv();
        edge_demand.push(
            row.iter()
                .map(|w| w.clone() * inv_total.clone())
                .collect::<Vec<_>>(),
        );
    }

    let quarter = Radical::from_ratio(1, 4);
    let mut vertex_demand = Demand::new(g.vertex_count());
    for (a, row) in edge_demand.iter().enumerate() {
        for (b, value) in row.iter().enumerate() {
            if value.is_zero() {
                continue;
            }
            let share = value.clone() * quarter.clone();
            let ea = &g.edges()[a];
            let eb = &g.edges()[b];
            for x in [ea.u, ea.v] {
                for y in [eb.u, eb.v] {
                    vertex_demand.add(x, y, share.clone())?;
                }
            }
        }
    }

    Ok(ExponentialDemand { h, s, weights, edge_demand, vertex_demand })
}

impl ExponentialDemand {
    /// Recomputed row sums of the edge demand; all must be exactly one.
    pub fn row_sums(&self) -> Vec<Radical> {
        self.edge_demand
            .iter()
            .map(|row| row.iter().fold(Radical::zero(), |acc, v| acc + v.clone()))
            .collect()
    }

    pub fn rows_sum_to_one(&self) -> bool {
        self.row_sums().iter().all(|s| *s == Radical::one())
    }

    /// The lifted demand must be unit in `g`.
    pub fn lift_is_unit(&self, g: &RatGraph) -> bool {
        self.vertex_demand.is_unit_in(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn single_edge_routes_everything_to_itself() {
        let g = RatGraph::unit(2, &[(0, 1)]).unwrap();
        let ed = exponential_demand(&g, 1, 2).unwrap();
        assert_eq!(ed.edge_demand[0][0], Radical::one());
        assert!(ed.rows_sum_to_one());
        // One unit spread over the four endpoint combinations.
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(
                    ed.vertex_demand.value(x, y),
                    Radical::from_rational(q(1, 4))
                );
            }
        }
        assert!(ed.lift_is_unit(&g));
    }

    #[test]
    fn disconnected_edges_keep_their_demand_local() {
        let g = RatGraph::unit(4, &[(0, 1), (2, 3)]).unwrap();
        let ed = exponential_demand(&g, 1, 4).unwrap();
        assert_eq!(ed.weights[0][1], Radical::zero());
        assert_eq!(ed.weights[1][0], Radical::zero());
        assert_eq!(ed.edge_demand[0][0], Radical::one());
        assert_eq!(ed.edge_demand[1][1], Radical::one());
        assert!(ed.rows_sum_to_one());
        assert!(ed.lift_is_unit(&g));
    }

    #[test]
    fn two_edge_path_weight_is_n_to_minus_half() {
        // h=1, s=4: q = 2, adjacent edges at distance 1, n = 3.
        let g = RatGraph::unit(3, &[(0, 1), (1, 2)]).unwrap();
        let ed = exponential_demand(&g, 1, 4).unwrap();
        let ctx = RadicalCtx::for_exponents(3, [2]).unwrap();
        let expected = ctx.power_of(3, Ratio::new(1, 2)).unwrap();
        assert_eq!(ed.weights[0][1], expected);
        assert_eq!(ed.weights[1][0], expected);
        assert_eq!(ed.weights[0][0], Radical::one());
        // D(e0, e1) = w / (1 + w) with w = 3^(-1/2); check against the
        // closed form via exact field arithmetic.
        let w = expected.clone();
        let d01 = w.clone() / (Radical::one() + w.clone());
        assert_eq!(ed.edge_demand[0][1], d01);
        assert!(ed.rows_sum_to_one());
        assert!(ed.lift_is_unit(&g));
    }

    #[test]
    fn beyond_range_pairs_get_zero_weight() {
        // Path of 5 edges, h=1, s=2 -> q = 1: only adjacent edges interact.
        let g = RatGraph::unit(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let ed = exponential_demand(&g, 1, 2).unwrap();
        assert_ne!(ed.weights[0][1], Radical::zero());
        assert_eq!(ed.weights[0][2], Radical::zero());
        assert!(ed.rows_sum_to_one());
        assert!(ed.lift_is_unit(&g));
    }

    #[test]
    fn random_graphs_normalize_and_lift_unit() {
        for seed in 0..12 {
            let g = generate::erdos_renyi(7, 0.45, seed).unwrap();
            if g.edge_count() == 0 {
                continue;
            }
            for (h, s) in [(1, 2), (1, 4), (2, 2)] {
                let ed = exponential_demand(&g, h, s).unwrap();
                assert!(ed.rows_sum_to_one(), "seed {seed} h {h} s {s}");
                assert!(ed.lift_is_unit(&g), "seed {seed} h {h} s {s}");
                assert!(ed.vertex_demand.loads_consistent());
            }
        }
    }

    #[test]
    fn empty_graph_is_an_input_error() {
        let g = RatGraph::empty(3);
        assert!(matches!(exponential_demand(&g, 1, 2), Err(Error::EmptyGraph)));
    }
}
