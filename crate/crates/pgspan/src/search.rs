//! Bounded shortest-path queries.
//!
//! Unit-length graphs take a plain BFS; general positive rational lengths go
//! through a truncated Dijkstra. Either way the search never explores beyond
//! the cap, which is all the spanner algorithms need: the predicate is always
//! `d > t`, not the exact distance past it.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::collections::VecDeque;

use crate::error::Result;
use crate::graph::{Graph, VertexId};
use crate::scalar::Scalar;

/// Distances from one source, restricted to the ball of radius `cap`.
/// Vertices outside the ball are absent.
#[derive(Debug, Clone)]
pub struct DistanceResult<S> {
    pub source: VertexId,
    pub cap: S,
    dists: Vec<Option<S>>,
}

impl<S: Scalar> DistanceResult<S> {
    pub fn distance(&self, v: VertexId) -> Option<&S> {
        self.dists.get(v).and_then(|d| d.as_ref())
    }

    pub fn reached_count(&self) -> usize {
        self.dists.iter().filter(|d| d.is_some()).count()
    }

    /// `(vertex, distance)` pairs in vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &S)> {
        self.dists
            .iter()
            .enumerate()
            .filter_map(|(v, d)| d.as_ref().map(|d| (v, d)))
    }

    pub fn max_distance(&self) -> Option<&S> {
        self.iter().map(|(_, d)| d).max_by(|a, b| a.total_cmp(b))
    }
}

/// Outcome of a capped point-to-point query. `Beyond` means the distance
/// exceeds the cap; the endpoints may or may not be connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dist<S> {
    Within(S),
    Beyond,
}

impl<S: Scalar> Dist<S> {
    pub fn is_within(&self) -> bool {
        matches!(self, Dist::Within(_))
    }

    pub fn value(&self) -> Option<&S> {
        match self {
            Dist::Within(d) => Some(d),
            Dist::Beyond => None,
        }
    }
}

struct HeapEntry<S> {
    dist: S,
    vertex: VertexId,
}

impl<S: Scalar> PartialEq for HeapEntry<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<S: Scalar> Eq for HeapEntry<S> {}
impl<S: Scalar> PartialOrd for HeapEntry<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<S: Scalar> Ord for HeapEntry<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed on distance: BinaryHeap is a max-heap.
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

/// Distances from `source` out to radius `cap` (inclusive).
pub fn bounded_bfs<S: Scalar>(g: &Graph<S>, source: VertexId, cap: S) -> Result<DistanceResult<S>> {
    g.check_vertex(source)?;
    let mut dists: Vec<Option<S>> = vec![None; g.vertex_count()];
    if cap.total_cmp(&S::zero()) == Ordering::Less {
        return Ok(DistanceResult { source, cap, dists });
    }
    if g.is_unit() {
        let mut queue = VecDeque::new();
        dists[source] = Some(S::zero());
        queue.push_back((source, 0u64));
        while let Some((u, du)) = queue.pop_front() {
            let next = S::from_u64(du + 1);
            if next.total_cmp(&cap) == Ordering::Greater {
                continue;
            }
            for &(w, _) in g.neighbors(u) {
                if dists[w].is_none() {
                    dists[w] = Some(next.clone());
                    queue.push_back((w, du + 1));
                }
            }
        }
    } else {
        let mut heap = BinaryHeap::new();
        heap.push(HeapEntry { dist: S::zero(), vertex: source });
        while let Some(HeapEntry { dist, vertex }) = heap.pop() {
            if dists[vertex].is_some() {
                continue;
            }
            dists[vertex] = Some(dist.clone());
            for &(w, eid) in g.neighbors(vertex) {
                if w == vertex || dists[w].is_some() {
                    continue;
                }
                let nd = dist.clone() + g.edges()[eid].len.clone();
                if nd.total_cmp(&cap) != Ordering::Greater {
                    heap.push(HeapEntry { dist: nd, vertex: w });
                }
            }
        }
    }
    Ok(DistanceResult { source, cap, dists })
}

/// `d_g(u, v)` if it is at most `cap`, else [`Dist::Beyond`].
pub fn distance_within<S: Scalar>(
    g: &Graph<S>,
    u: VertexId,
    v: VertexId,
    cap: S,
) -> Result<Dist<S>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Ok(if cap.total_cmp(&S::zero()) == Ordering::Less {
            Dist::Beyond
        } else {
            Dist::Within(S::zero())
        });
    }
    let res = bounded_bfs(g, u, cap)?;
    Ok(match res.distance(v) {
        Some(d) => Dist::Within(d.clone()),
        None => Dist::Beyond,
    })
}

/// Reusable hop-count BFS over plain adjacency lists. The spanner builders
/// run millions of capped queries against a growing subgraph; epoch stamping
/// avoids clearing the distance array between queries.
#[derive(Debug, Clone)]
pub struct HopBfs {
    dist: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
    queue: VecDeque<u32>,
}

impl HopBfs {
    pub fn new(n: usize) -> Self {
        HopBfs { dist: vec![0; n], stamp: vec![0; n], epoch: 0, queue: VecDeque::new() }
    }

    /// Hop distance from `u` to `v` in `adj`, or `None` if it exceeds `cap`.
    pub fn distance_within(&mut self, adj: &[Vec<u32>], u: VertexId, v: VertexId, cap: u32) -> Option<u32> {
        if u == v {
            return Some(0);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        self.queue.clear();
        self.stamp[u] = epoch;
        self.dist[u] = 0;
        self.queue.push_back(u as u32);
        while let Some(x) = self.queue.pop_front() {
            let x = x as usize;
            let dx = self.dist[x];
            if dx >= cap {
                continue;
            }
            for &w in &adj[x] {
                let w = w as usize;
                if self.stamp[w] == epoch {
                    continue;
                }
                if w == v {
                    return Some(dx + 1);
                }
                self.stamp[w] = epoch;
                self.dist[w] = dx + 1;
                self.queue.push_back(w as u32);
            }
        }
        None
    }

    /// Runs a full BFS from `u` capped at `cap` and returns, for each vertex
    /// in `targets`, whether it lies within the cap. Cheaper than separate
    /// point queries when many targets share a source.
    pub fn multi_target_within(
        &mut self,
        adj: &[Vec<u32>],
        u: VertexId,
        cap: u32,
        targets: &[VertexId],
        within: &mut Vec<bool>,
    ) {
        within.clear();
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        self.queue.clear();
        self.stamp[u] = epoch;
        self.dist[u] = 0;
        self.queue.push_back(u as u32);
        while let Some(x) = self.queue.pop_front() {
            let x = x as usize;
            let dx = self.dist[x];
            if dx >= cap {
                continue;
            }
            for &w in &adj[x] {
                let w = w as usize;
                if self.stamp[w] != epoch {
                    self.stamp[w] = epoch;
                    self.dist[w] = dx + 1;
                    self.queue.push_back(w as u32);
                }
            }
        }
        for &t in targets {
            within.push(self.stamp[t] == epoch);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use num_rational::Rational64;

    type G = Graph<Rational64>;

    fn r(x: i64) -> Rational64 {
        Rational64::from_u64(x as u64)
    }

    #[test]
    fn ball_of_radius_one_on_a_path() {
        // path 0-1-2, source 0 (spec's 1-2-3 relabelled to 0-based)
        let g = G::unit(3, &[(0, 1), (1, 2)]).unwrap();
        let res = bounded_bfs(&g, 0, r(1)).unwrap();
        assert_eq!(res.distance(0), Some(&r(0)));
        assert_eq!(res.distance(1), Some(&r(1)));
        assert_eq!(res.distance(2), None);
        assert_eq!(res.reached_count(), 2);
    }

    #[test]
    fn c4_is_covered_at_radius_two() {
        let g = G::unit(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        for s in 0..4 {
            let res = bounded_bfs(&g, s, r(2)).unwrap();
            assert_eq!(res.reached_count(), 4);
            assert_eq!(res.max_distance(), Some(&r(2)));
        }
    }

    #[test]
    fn q3_ball_of_radius_two_misses_the_antipode() {
        let g = generate::hypercube(3).unwrap();
        // Oracle: brute-force all-pairs BFS on Q3.
        let all = bounded_bfs(&g, 0, r(10)).unwrap();
        let expected: usize = (0..8).filter(|&v| *all.distance(v).unwrap() <= r(2)).count();
        assert_eq!(expected, 7);
        let res = bounded_bfs(&g, 0, r(2)).unwrap();
        assert_eq!(res.reached_count(), 7);
        assert_eq!(res.distance(7), None);
    }

    #[test]
    fn invalid_source_is_an_input_error() {
        let g = G::unit(2, &[(0, 1)]).unwrap();
        assert!(bounded_bfs(&g, 9, r(1)).is_err());
    }

    #[test]
    fn distance_within_empty_graph_is_beyond() {
        let g = G::empty(4);
        assert_eq!(distance_within(&g, 0, 3, r(5)).unwrap(), Dist::Beyond);
    }

    #[test]
    fn distance_within_single_edge() {
        let g = G::unit(2, &[(0, 1)]).unwrap();
        assert_eq!(distance_within(&g, 0, 1, r(1)).unwrap(), Dist::Within(r(1)));
    }

    #[test]
    fn distance_within_three_edge_path() {
        let g = G::unit(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(distance_within(&g, 0, 3, r(3)).unwrap(), Dist::Within(r(3)));
        assert_eq!(distance_within(&g, 0, 3, r(2)).unwrap(), Dist::Beyond);
    }

    #[test]
    fn weighted_search_respects_rational_lengths() {
        let half = Rational64::from_ratio(1, 2);
        let g = G::weighted(3, &[(0, 1, half), (1, 2, half), (0, 2, r(2))]).unwrap();
        assert_eq!(distance_within(&g, 0, 2, r(1)).unwrap(), Dist::Within(r(1)));
        let res = bounded_bfs(&g, 0, half).unwrap();
        assert_eq!(res.reached_count(), 2);
    }

    #[test]
    fn hop_bfs_matches_bounded_bfs() {
        let g = generate::hypercube(4).unwrap();
        let adj: Vec<Vec<u32>> = (0..g.vertex_count())
            .map(|v| g.neighbors(v).iter().map(|&(w, _)| w as u32).collect())
            .collect();
        let mut bfs = HopBfs::new(g.vertex_count());
        for u in 0..g.vertex_count() {
            let reference = bounded_bfs(&g, u, r(3)).unwrap();
            for v in 0..g.vertex_count() {
                let expect = reference.distance(v).cloned();
                let got = bfs.distance_within(&adj, u, v, 3).map(|d| r(d as i64));
                assert_eq!(expect, got, "pair ({u}, {v})");
            }
        }
    }
}
