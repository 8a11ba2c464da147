//! Immutable undirected graphs with unit or positive rational edge lengths.
//!
//! Vertices are dense ids `0..n`. Construction validates simplicity; after
//! that the graph is read-only and safe to query from many threads at once.
//! Self-loops are only permitted on cut-augmented graphs (see
//! [`GraphBuilder::allow_self_loops`]) where they carry degree but never lie
//! on a shortest path.

use std::collections::BTreeSet;


use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq)]
pub struct Edge<S> {
    pub u: VertexId,
    pub v: VertexId,
    pub len: S,
}

impl<S> Edge<S> {
    /// The endpoint opposite to `w`; `w` must be an endpoint.
    pub fn other(&self, w: VertexId) -> VertexId {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }
}

#[derive(Debug, Clone)]
pub struct Graph<S> {
    n: usize,
    edges: Vec<Edge<S>>,
    /// Per-vertex incident edges as `(neighbor, edge id)`, sorted for
    /// deterministic iteration. A self-loop appears once, as `(v, id)`.
    adj: Vec<Vec<(VertexId, EdgeId)>>,
    allows_self_loops: bool,
    unit: bool,
}

/// Staged construction; used by parsers, generators and cut augmentation.
#[derive(Debug, Clone)]
pub struct GraphBuilder<S> {
    n: usize,
    edges: Vec<Edge<S>>,
    allow_self_loops: bool,
}

impl<S: Scalar> GraphBuilder<S> {
    pub fn new(n: usize) -> Self {
        GraphBuilder { n, edges: Vec::new(), allow_self_loops: false }
    }

    /// Permit self-loops (with multiplicity). Only cut-augmented graphs use
    /// this; loops count toward degree but never shorten a path.
    pub fn allow_self_loops(mut self) -> Self {
        self.allow_self_loops = true;
        self
    }

    pub fn add_unit_edge(&mut self, u: VertexId, v: VertexId) -> &mut Self {
        self.add_edge(u, v, S::one())
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, len: S) -> &mut Self {
        self.edges.push(Edge { u, v, len });
        self
    }

    pub fn build(self) -> Result<Graph<S>> {
        Graph::from_parts(self.n, self.edges, self.allow_self_loops)
    }
}

impl<S: Scalar> Graph<S> {
    /// Simple graph with unit lengths.
    pub fn unit(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let es = edges
            .iter()
            .map(|&(u, v)| Edge { u, v, len: S::one() })
            .collect();
        Self::from_parts(n, es, false)
    }

    /// Simple graph with explicit positive lengths.
    pub fn weighted(n: usize, edges: &[(VertexId, VertexId, S)]) -> Result<Self> {
        let es = edges
            .iter()
            .map(|(u, v, l)| Edge { u: *u, v: *v, len: l.clone() })
            .collect();
        Self::from_parts(n, es, false)
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n], allows_self_loops: false, unit: true }
    }

    fn from_parts(n: usize, edges: Vec<Edge<S>>, allow_self_loops: bool) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for e in &edges {
            for w in [e.u, e.v] {
                if w >= n {
                    return Err(Error::InvalidVertex { vertex: w, vertex_count: n });
                }
            }
            if e.u == e.v && !allow_self_loops {
                return Err(Error::SelfLoop { v: e.u });
            }
            if !e.len.is_positive_s() {
                return Err(Error::NonPositiveLength { u: e.u, v: e.v });
            }
            // Loops may repeat (multiplicity encodes linkedness); ordinary
            // edges must be unique.
            if e.u != e.v && !seen.insert(key(e.u, e.v)) {
                return Err(Error::DuplicateEdge { u: e.u, v: e.v });
            }
        }
        let unit = edges.iter().all(|e| e.len.is_one());
        let mut adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, id));
            if e.u != e.v {
                adj[e.v].push((e.u, id));
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj, allows_self_loops: allow_self_loops, unit })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge<S>> {
        self.edges.get(id).ok_or(Error::InvalidEdgeId { edge: id, edge_count: self.edges.len() })
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.n
    }

    /// Incident `(neighbor, edge id)` pairs, sorted by neighbor.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v]
    }

    /// Degree counts each incident edge once; a self-loop contributes one.
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn allows_self_loops(&self) -> bool {
        self.allows_self_loops
    }

    /// True when every edge has length exactly one.
    pub fn is_unit(&self) -> bool {
        self.unit
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, vertex_count: self.n })
        }
    }

    /// Edge id of `{u, v}` if present.
    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let list = &self.adj[u];
        let start = list.partition_point(|&(w, _)| w < v);
        list[start..]
            .iter()
            .take_while(|&&(w, _)| w == v)
            .map(|&(_, id)| id)
            .next()
    }

    pub fn contains_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && v < self.n && self.find_edge(u, v).is_some()
    }

    /// Normalized `{min, max}` endpoint pairs of all non-loop edges.
    pub fn edge_pairs(&self) -> BTreeSet<(VertexId, VertexId)> {
        self.edges
            .iter()
            .filter(|e| e.u != e.v)
            .map(|e| key(e.u, e.v))
            .collect()
    }

    /// Checks that `self` contains every edge of `h` (by endpoints) and that
    /// the vertex sets agree. Used to validate `h ⊆ g` preconditions.
    pub fn contains_subgraph(&self, h: &Graph<S>, name: &'static str) -> Result<()> {
        if self.n != h.n {
            return Err(Error::VertexSetMismatch { expected: self.n, got: h.n });
        }
        for e in &h.edges {
            if !self.contains_edge(e.u, e.v) {
                return Err(Error::NotSubgraph(name, e.u, e.v));
            }
        }
        Ok(())
    }

    /// Induced subgraph on `keep`. Vertex ids are remapped to `0..keep.len()`
    /// in sorted order; the returned vector maps new ids back to old ones.
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> Result<(Graph<S>, Vec<VertexId>)> {
        let mut sorted: Vec<VertexId> = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in sorted.iter().enumerate() {
            self.check_vertex(v)?;
            new_id[v] = i;
        }
        let mut edges = Vec::new();
        for e in &self.edges {
            if new_id[e.u] != usize::MAX && new_id[e.v] != usize::MAX {
                edges.push(Edge { u: new_id[e.u], v: new_id[e.v], len: e.len.clone() });
            }
        }
        let g = Graph::from_parts(sorted.len(), edges, self.allows_self_loops)?;
        Ok((g, sorted))
    }

    /// Connected components as a partition of the vertex set. Components are
    /// identified by their smallest vertex and listed in that order.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut parts = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = parts.len();
            comp[s] = id;
            stack.push(s);
            let mut members = vec![s];
            while let Some(u) = stack.pop() {
                for &(w, _) in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            parts.push(members);
        }
        parts
    }

    /// Average degree `2m / n` as a scalar (loops count once).
    pub fn average_degree(&self) -> S {
        if self.n == 0 {
            return S::zero();
        }
        let incidences: u64 = (0..self.n).map(|v| self.degree(v) as u64).sum();
        S::from_u64(incidences) / S::from_u64(self.n as u64)
    }

    /// New graph with extra self-loops (`loops[v]` copies at `v`). Lengths of
    /// the loops are unit; they only matter through degrees.
    pub fn with_self_loops(&self, loops: &[(VertexId, u64)]) -> Result<Graph<S>> {
        let mut edges = self.edges.clone();
        for &(v, k) in loops {
            self.check_vertex(v)?;
            for _ in 0..k {
                edges.push(Edge { u: v, v, len: S::one() });
            }
        }
        Graph::from_parts(self.n, edges, true)
    }
}

/// Normalized endpoint pair, smaller id first.
pub fn key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}
