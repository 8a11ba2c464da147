//! Matching-round certificates.
//!
//! A graph built by rounds of matchings, where every edge of a round has
//! prefix-graph distance greater than `t`, is certified by the ordered list
//! of those rounds. Both greedy builders emit such a sequence, and
//! [`verify_pg_sequence`] re-checks it from scratch.

use std::collections::BTreeSet;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::graph::{key, Graph, VertexId};
use crate::search::HopBfs;

/// Ordered rounds of edges. Rounds are stored with normalized endpoint pairs
/// (`u < v`, sorted within a round); the sequence as a whole certifies the
/// union graph when [`verify_pg_sequence`] accepts it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PgSequence {
    pub vertex_count: usize,
    pub rounds: Vec<Vec<(VertexId, VertexId)>>,
}

impl PgSequence {
    pub fn new(vertex_count: usize, rounds: Vec<Vec<(VertexId, VertexId)>>) -> Self {
        let rounds = rounds
            .into_iter()
            .map(|mut r| {
                for e in &mut r {
                    *e = key(e.0, e.1);
                }
                r.sort_unstable();
                r
            })
            .collect();
        PgSequence { vertex_count, rounds }
    }

    /// All edges across rounds, in round order.
    pub fn union_edges(&self) -> Vec<(VertexId, VertexId)> {
        self.rounds.iter().flatten().copied().collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rounds.iter().map(|r| r.len()).sum()
    }

    /// The union graph on `vertex_count` vertices with unit lengths.
    pub fn union_graph(&self) -> Result<Graph<Rational64>> {
        Graph::unit(self.vertex_count, &self.union_edges())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PgViolationReason {
    /// Two edges of the round share a vertex.
    NotMatching { shared: VertexId },
    /// The edge's endpoints are within distance `t` in the prefix graph.
    PrefixDistanceAtMost { t: u32, distance: u32 },
    /// The edge already appeared in an earlier round.
    DuplicateEdge,
}

impl std::fmt::Display for PgViolationReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PgViolationReason::NotMatching { shared } => {
                write!(f, "round is not a matching (vertex {shared} shared)")
            }
            PgViolationReason::PrefixDistanceAtMost { t, distance } => {
                write!(f, "prefix-graph distance {distance} <= t = {t}")
            }
            PgViolationReason::DuplicateEdge => write!(f, "edge repeated across rounds"),
        }
    }
}

/// First failure found while checking a sequence, in round-major, edge-minor
/// order. Re-running the cited check reproduces the reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PgViolation {
    pub round: usize,
    pub edge: (VertexId, VertexId),
    pub reason: PgViolationReason,
}

impl std::fmt::Display for PgViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "round {}, edge {{{}, {}}}: {}", self.round, self.edge.0, self.edge.1, self.reason)
    }
}

/// Checks that every round is a matching and every edge has prefix-graph
/// distance `> t` (against the union of all earlier rounds). Returns the
/// first violation, or `None` when the sequence is valid.
///
/// Rounds are indexed from 1 in violations, matching the certificate file
/// format.
pub fn verify_pg_sequence(n: usize, seq: &PgSequence, t: u32) -> Result<Option<PgViolation>> {
    if t < 2 {
        return Err(Error::param(format!("pg sequences require t >= 2, got {t}")));
    }
    for round in &seq.rounds {
        for &(u, v) in round {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::InvalidVertex { vertex: w, vertex_count: n });
                }
            }
        }
    }

    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut present: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let mut bfs = HopBfs::new(n);

    for (i, round) in seq.rounds.iter().enumerate() {
        let round_no = i + 1;
        let mut touched: BTreeSet<VertexId> = BTreeSet::new();
        for &(u, v) in round {
            let e = key(u, v);
            if u == v {
                return Ok(Some(PgViolation {
                    round: round_no,
                    edge: e,
                    reason: PgViolationReason::NotMatching { shared: u },
                }));
            }
            if present.contains(&e) {
                return Ok(Some(PgViolation {
                    round: round_no,
                    edge: e,
                    reason: PgViolationReason::DuplicateEdge,
                }));
            }
            for w in [e.0, e.1] {
                if !touched.insert(w) {
                    return Ok(Some(PgViolation {
                        round: round_no,
                        edge: e,
                        reason: PgViolationReason::NotMatching { shared: w },
                    }));
                }
            }
            // Distance in the prefix graph, i.e. before this round's union.
            if let Some(d) = bfs.distance_within(&adj, e.0, e.1, t) {
                return Ok(Some(PgViolation {
                    round: round_no,
                    edge: e,
                    reason: PgViolationReason::PrefixDistanceAtMost { t, distance: d },
                }));
            }
        }
        for &(u, v) in round {
            let e = key(u, v);
            present.insert(e);
            adj[e.0].push(e.1 as u32);
            adj[e.1].push(e.0 as u32);
        }
    }
    Ok(None)
}

/// Intersects every round with `keep`. Prefix distances only grow under
/// restriction, so the result of restricting a valid sequence is valid at
/// the same `t`. Empty rounds are kept to preserve round indices.
pub fn restrict_pg_sequence(
    seq: &PgSequence,
    keep: &BTreeSet<(VertexId, VertexId)>,
) -> PgSequence {
    let rounds = seq
        .rounds
        .iter()
        .map(|round| {
            round
                .iter()
                .copied()
                .filter(|&(u, v)| keep.contains(&key(u, v)))
                .collect()
        })
        .collect();
    PgSequence { vertex_count: seq.vertex_count, rounds }
}
