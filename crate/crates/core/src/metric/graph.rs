use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{ChordError, Result};

/// Index of a vertex in its [`MetricGraph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Index of an edge in its [`MetricGraph`]. Edge order is declaration order,
/// and every "lowest edge first" tie-break in the crate uses it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeData {
    pub name: String,
    /// Vertex at parameter `t = 0`.
    pub tail: VertexId,
    /// Vertex at parameter `t = 1`.
    pub head: VertexId,
}

impl EdgeData {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// A connected multigraph whose edges are copies of the unit interval.
///
/// Loops and parallel edges are allowed. Edge `e` is parametrised by
/// `t in [0, 1]`, running from `tail(e)` to `head(e)`.
#[derive(Clone, Debug)]
pub struct MetricGraph {
    vertex_names: Vec<String>,
    edges: Vec<EdgeData>,
    /// Per vertex: incident edges, a loop listed twice.
    incidence: Vec<Vec<EdgeId>>,
    /// All-pairs hop counts between vertices.
    hops: Vec<Vec<u32>>,
}

impl PartialEq for MetricGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_names == other.vertex_names && self.edges == other.edges
    }
}

impl Eq for MetricGraph {}

impl MetricGraph {
    /// Builds a graph from named vertices and `(edge name, tail, head)` triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertex_names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, v) in vertex_names.iter().enumerate() {
            if index.insert(v.clone(), VertexId(i)).is_some() {
                return Err(ChordError::Parse(format!("duplicate vertex {v:?}")));
            }
        }
        let mut names = HashMap::new();
        let mut data = Vec::new();
        for (name, a, b) in edges {
            let lookup = |v: &str| {
                index
                    .get(v)
                    .copied()
                    .ok_or_else(|| ChordError::Parse(format!("edge {name:?} uses undeclared vertex {v:?}")))
            };
            let tail = lookup(&a)?;
            let head = lookup(&b)?;
            if names.insert(name.clone(), data.len()).is_some() {
                return Err(ChordError::Parse(format!("duplicate edge id {name:?}")));
            }
            data.push(EdgeData { name, tail, head });
        }
        Self::from_parts(vertex_names, data)
    }

    /// Convenience constructor: vertices are taken in order of first appearance.
    pub fn from_edges(edges: &[(&str, &str, &str)]) -> Result<Self> {
        let mut vertices: Vec<String> = Vec::new();
        for (_, a, b) in edges {
            for v in [a, b] {
                if !vertices.iter().any(|x| x == v) {
                    vertices.push(v.to_string());
                }
            }
        }
        Self::new(
            vertices,
            edges
                .iter()
                .map(|(e, a, b)| (e.to_string(), a.to_string(), b.to_string())),
        )
    }

    fn from_parts(vertex_names: Vec<String>, edges: Vec<EdgeData>) -> Result<Self> {
        if edges.is_empty() {
            return Err(ChordError::precondition("a metric graph needs at least one edge"));
        }
        let n = vertex_names.len();
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            incidence[e.tail.0].push(EdgeId(i));
            incidence[e.head.0].push(EdgeId(i));
        }
        let mut g = MetricGraph {
            vertex_names,
            edges,
            incidence,
            hops: Vec::new(),
        };
        g.hops = (0..n).map(|s| g.bfs(VertexId(s))).collect();
        if g.hops[0].iter().any(|&d| d == u32::MAX) {
            return Err(ChordError::precondition("graph is not connected"));
        }
        Ok(g)
    }

    fn bfs(&self, s: VertexId) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_names.len()];
        dist[s.0] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.incidence[v.0] {
                let w = self.opposite(e, v);
                if dist[w.0] == u32::MAX {
                    dist[w.0] = dist[v.0] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_names.len()).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn edge(&self, e: EdgeId) -> &EdgeData {
        &self.edges[e.0]
    }

    pub fn tail(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].tail
    }

    pub fn head(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].head
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name).map(EdgeId)
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|v| v == name).map(VertexId)
    }

    /// The endpoint of `e` that is not `v` (for a loop, `v` itself).
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let d = &self.edges[e.0];
        if d.tail == v {
            d.head
        } else {
            d.tail
        }
    }

    /// Incident edges of `v`; a loop appears twice.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v.0]
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v.0].len()
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Connected with every degree even.
    pub fn is_euler(&self) -> bool {
        self.vertices().all(|v| self.degree(v) % 2 == 0)
    }

    /// Number of edges on a shortest vertex-to-vertex route.
    pub fn hops(&self, u: VertexId, v: VertexId) -> u32 {
        self.hops[u.0][v.0]
    }

    /// A shortest vertex route from `u` to `v` as `(edge, forward)` steps,
    /// preferring the lowest edge at every step.
    pub fn vertex_route(&self, u: VertexId, v: VertexId) -> Vec<(EdgeId, bool)> {
        let mut route = Vec::new();
        let mut at = u;
        while at != v {
            let need = self.hops(at, v) - 1;
            let step = self.incidence[at.0]
                .iter()
                .copied()
                .filter(|&e| !self.edges[e.0].is_loop())
                .find(|&e| self.hops(self.opposite(e, at), v) == need)
                .expect("hop table is consistent");
            route.push((step, self.tail(step) == at));
            at = self.opposite(step, at);
        }
        route
    }

    // A few small graphs used throughout tests and examples.

    /// One edge `a` from `u` to `v`: the unit interval.
    pub fn interval() -> Self {
        Self::from_edges(&[("a", "u", "v")]).unwrap()
    }

    /// A single loop `a` at `w`: a circle of length one.
    pub fn single_loop() -> Self {
        Self::from_edges(&[("a", "w", "w")]).unwrap()
    }

    /// Cycle `a: x->y`, `b: y->z`, `c: z->x`.
    pub fn triangle() -> Self {
        Self::from_edges(&[("a", "x", "y"), ("b", "y", "z"), ("c", "z", "x")]).unwrap()
    }

    /// Three parallel edges `a`, `b`, `c` from `u` to `v`.
    pub fn theta() -> Self {
        Self::from_edges(&[("a", "u", "v"), ("b", "u", "v"), ("c", "u", "v")]).unwrap()
    }

    /// Two loops `a`, `b` at a single vertex `w`.
    pub fn figure_eight() -> Self {
        Self::from_edges(&[("a", "w", "w"), ("b", "w", "w")]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_disconnected_and_bad_ids() {
        assert!(MetricGraph::from_edges(&[("a", "u", "v"), ("b", "x", "y")]).is_err());
        assert!(MetricGraph::from_edges(&[("a", "u", "v"), ("a", "v", "u")]).is_err());
        assert!(MetricGraph::from_edges(&[]).is_err());
        let err = MetricGraph::new(
            ["u"],
            [("a".to_string(), "u".to_string(), "v".to_string())],
        );
        assert!(err.is_err());
        let isolated = MetricGraph::new(
            ["u", "v", "z"],
            [("a".to_string(), "u".to_string(), "v".to_string())],
        );
        assert!(isolated.is_err());
    }

    #[test]
    fn degrees_count_loops_twice() {
        let g = MetricGraph::figure_eight();
        assert_eq!(g.degree(VertexId(0)), 4);
        assert!(g.is_euler());
        let t = MetricGraph::theta();
        assert_eq!(t.min_degree(), 3);
        assert!(!t.is_euler());
        assert_eq!(MetricGraph::interval().min_degree(), 1);
    }

    #[test]
    fn routes_follow_hop_counts() {
        let g = MetricGraph::from_edges(&[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"), ("d", "1", "4")]).unwrap();
        let route = g.vertex_route(VertexId(0), VertexId(2));
        assert_eq!(route.len(), 2);
        assert_eq!(route[0], (EdgeId(0), true));
        assert_eq!(g.hops(VertexId(1), VertexId(3)), 2);
    }
}
