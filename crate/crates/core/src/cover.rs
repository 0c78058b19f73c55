//! Closed edge walks, semi-simple paths, double covers by semi-simple closed
//! paths and Euler circuits.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{ChordError, Result};
use crate::metric::{EdgeId, MetricGraph, VertexId};

/// An edge traversed from tail to head (`forward`) or back.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Traversal {
    pub edge: EdgeId,
    pub forward: bool,
}

impl Traversal {
    pub fn new(edge: EdgeId, forward: bool) -> Self {
        Traversal { edge, forward }
    }

    /// The traversal of `e` that leaves `v`.
    pub fn leaving(g: &MetricGraph, e: EdgeId, v: VertexId) -> Self {
        Traversal::new(e, g.tail(e) == v)
    }

    pub fn start(&self, g: &MetricGraph) -> VertexId {
        if self.forward {
            g.tail(self.edge)
        } else {
            g.head(self.edge)
        }
    }

    pub fn end(&self, g: &MetricGraph) -> VertexId {
        if self.forward {
            g.head(self.edge)
        } else {
            g.tail(self.edge)
        }
    }

    pub fn reversed(&self) -> Self {
        Traversal::new(self.edge, !self.forward)
    }
}

/// Reverses a walk.
pub fn reverse_walk(walk: &[Traversal]) -> Vec<Traversal> {
    walk.iter().rev().map(Traversal::reversed).collect()
}

/// A nonempty closed walk. Its start is a presentation detail: rotations
/// describe the same closed path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedPath {
    steps: Vec<Traversal>,
}

impl ClosedPath {
    pub fn new(g: &MetricGraph, steps: Vec<Traversal>) -> Result<Self> {
        if steps.is_empty() {
            return Err(ChordError::precondition("a closed path needs at least one edge"));
        }
        if let Some(bad) = steps.iter().find(|t| t.edge.0 >= g.edge_count()) {
            return Err(ChordError::precondition(format!("unknown edge {}", bad.edge)));
        }
        let n = steps.len();
        for i in 0..n {
            if steps[i].end(g) != steps[(i + 1) % n].start(g) {
                return Err(ChordError::precondition(format!(
                    "walk breaks after step {} ({})",
                    i + 1,
                    g.edge_name(steps[i].edge)
                )));
            }
        }
        Ok(ClosedPath { steps })
    }

    pub fn steps(&self) -> &[Traversal] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.steps.iter().map(|t| t.edge)
    }

    pub fn start(&self, g: &MetricGraph) -> VertexId {
        self.steps[0].start(g)
    }

    pub fn reversed(&self) -> Self {
        ClosedPath { steps: reverse_walk(&self.steps) }
    }

    /// How often `e` is traversed.
    pub fn multiplicity(&self, e: EdgeId) -> usize {
        self.steps.iter().filter(|t| t.edge == e).count()
    }

    /// No two cyclically consecutive steps use the same edge, and no edge is
    /// used more than twice. A path of a single step has no consecutive pair.
    pub fn is_semi_simple(&self) -> bool {
        let n = self.steps.len();
        let no_repeat = n == 1 || (0..n).all(|i| self.steps[i].edge != self.steps[(i + 1) % n].edge);
        no_repeat && self.edges().all(|e| self.multiplicity(e) <= 2)
    }

    /// Same cycle started at the first step leaving `v`.
    fn rotated_to(&self, g: &MetricGraph, v: VertexId) -> Option<Vec<Traversal>> {
        let i = self.steps.iter().position(|t| t.start(g) == v)?;
        let mut out = self.steps[i..].to_vec();
        out.extend_from_slice(&self.steps[..i]);
        Some(out)
    }

    fn visits(&self, g: &MetricGraph, v: VertexId) -> bool {
        self.steps.iter().any(|t| t.start(g) == v)
    }
}

impl fmt::Display for ClosedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", if t.forward { "" } else { "-" }, t.edge)?;
        }
        Ok(())
    }
}

/// Semi-simple closed paths covering every edge exactly twice in total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCover {
    paths: Vec<ClosedPath>,
}

impl DoubleCover {
    pub fn new(g: &MetricGraph, paths: Vec<ClosedPath>) -> Result<Self> {
        if !verify_double_cover(g, &paths) {
            return Err(ChordError::precondition("not a double cover by semi-simple closed paths"));
        }
        Ok(DoubleCover { paths })
    }

    pub fn paths(&self) -> &[ClosedPath] {
        &self.paths
    }

    pub fn into_paths(self) -> Vec<ClosedPath> {
        self.paths
    }
}

fn edge_counts(g: &MetricGraph, paths: &[ClosedPath]) -> Vec<usize> {
    let mut count = vec![0; g.edge_count()];
    for e in paths.iter().flat_map(ClosedPath::edges) {
        count[e.0] += 1;
    }
    count
}

/// Every path is semi-simple and every edge is used exactly twice overall.
pub fn verify_double_cover(g: &MetricGraph, paths: &[ClosedPath]) -> bool {
    paths.iter().all(ClosedPath::is_semi_simple) && edge_counts(g, paths).iter().all(|&c| c == 2)
}

/// A simple cycle through the lowest edge of `live` that lies on one: a loop,
/// or an edge closed up by a shortest route between its ends.
fn find_cycle(g: &MetricGraph, live: &[bool]) -> Option<Vec<Traversal>> {
    for e in g.edges().filter(|e| live[e.0]) {
        if g.edge(e).is_loop() {
            return Some(vec![Traversal::new(e, true)]);
        }
        if let Some(back) = route_avoiding(g, live, e, g.head(e), g.tail(e)) {
            let mut cycle = vec![Traversal::new(e, true)];
            cycle.extend(back);
            return Some(cycle);
        }
    }
    None
}

/// Shortest walk from `from` to `to` over `live` edges other than `skip`,
/// preferring lower edges.
fn route_avoiding(
    g: &MetricGraph,
    live: &[bool],
    skip: EdgeId,
    from: VertexId,
    to: VertexId,
) -> Option<Vec<Traversal>> {
    let mut prev: Vec<Option<Traversal>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[from.0] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut walk = Vec::new();
            let mut at = to;
            while at != from {
                let t = prev[at.0].expect("visited vertices have a predecessor");
                walk.push(t);
                at = t.start(g);
            }
            walk.reverse();
            return Some(walk);
        }
        for &e in g.incident(v) {
            if e == skip || !live[e.0] || g.edge(e).is_loop() {
                continue;
            }
            let w = g.opposite(e, v);
            if !seen[w.0] {
                seen[w.0] = true;
                prev[w.0] = Some(Traversal::leaving(g, e, v));
                queue.push_back(w);
            }
        }
    }
    None
}

/// Maximal path in a forest of `live` edges through the lowest live edge,
/// extended greedily (lowest edge first) at both ends.
fn maximal_forest_path(g: &MetricGraph, live: &[bool]) -> Option<Vec<Traversal>> {
    let first = g.edges().find(|e| live[e.0])?;
    let mut used = vec![false; g.edge_count()];
    used[first.0] = true;
    let extend = |from: VertexId, used: &mut Vec<bool>| {
        let mut walk = Vec::new();
        let mut at = from;
        while let Some(&e) = g.incident(at).iter().find(|e| live[e.0] && !used[e.0]) {
            used[e.0] = true;
            let t = Traversal::leaving(g, e, at);
            at = t.end(g);
            walk.push(t);
        }
        walk
    };
    let ahead = extend(g.head(first), &mut used);
    let behind = extend(g.tail(first), &mut used);
    let mut path = reverse_walk(&behind);
    path.push(Traversal::new(first, true));
    path.extend(ahead);
    Some(path)
}

fn residual_degree(g: &MetricGraph, live: &[bool], v: VertexId) -> usize {
    g.incident(v).iter().filter(|e| live[e.0]).count()
}

/// Builds a double cover by semi-simple closed paths of a connected graph
/// with no vertex of degree below 2.
pub fn compute_double_cover(g: &MetricGraph) -> Result<DoubleCover> {
    build_cover(g, false)
}

/// As [`compute_double_cover`], re-validating the partial cover and the
/// extracted forest paths after every step.
pub fn compute_double_cover_checked(g: &MetricGraph) -> Result<DoubleCover> {
    build_cover(g, true)
}

fn build_cover(g: &MetricGraph, check: bool) -> Result<DoubleCover> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) < 2) {
        return Err(ChordError::precondition(format!(
            "vertex {} has degree {}; every degree must be at least 2",
            g.vertex_name(v),
            g.degree(v)
        )));
    }
    let mut live = vec![true; g.edge_count()];
    let mut paths: Vec<Vec<Traversal>> = Vec::new();
    while live.iter().any(|&l| l) {
        if let Some(cycle) = find_cycle(g, &live) {
            for t in &cycle {
                live[t.edge.0] = false;
            }
            paths.push(cycle.clone());
            paths.push(cycle);
        } else {
            let alpha = maximal_forest_path(g, &live).expect("residual is nonempty");
            let u = alpha[0].start(g);
            let v = alpha[alpha.len() - 1].end(g);
            if check {
                for w in [u, v] {
                    if residual_degree(g, &live, w) != 1 {
                        return Err(ChordError::internal("forest path end is not a residual leaf"));
                    }
                }
            }
            let closed: Vec<ClosedPath> = paths
                .iter()
                .map(|p| ClosedPath { steps: p.clone() })
                .collect();
            let host = |w: VertexId| {
                closed.iter().position(|p| p.visits(g, w)).ok_or_else(|| {
                    ChordError::internal(format!(
                        "forest path end {} is not on the covered part",
                        g.vertex_name(w)
                    ))
                })
            };
            let (gi, hi) = (host(u)?, host(v)?);
            let back = reverse_walk(&alpha);
            let beta = if gi != hi {
                let mut beta = closed[gi].rotated_to(g, u).expect("host visits u");
                beta.extend_from_slice(&alpha);
                beta.extend(closed[hi].rotated_to(g, v).expect("host visits v"));
                beta.extend_from_slice(&back);
                beta
            } else {
                let gamma = closed[gi].rotated_to(g, u).expect("host visits u");
                let j = (1..gamma.len())
                    .find(|&j| gamma[j].start(g) == v)
                    .ok_or_else(|| ChordError::internal("host does not reach v"))?;
                let mut beta = gamma[..j].to_vec();
                beta.extend_from_slice(&back);
                beta.extend(reverse_walk(&gamma[j..]));
                beta.extend_from_slice(&back);
                beta
            };
            let (keep, drop) = (gi.min(hi), gi.max(hi));
            paths[keep] = beta;
            if gi != hi {
                paths.remove(drop);
            }
            for t in &alpha {
                live[t.edge.0] = false;
            }
        }
        if check {
            check_partial(g, &paths, &live)?;
        }
    }
    let paths = paths
        .into_iter()
        .map(|p| ClosedPath::new(g, p))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| ChordError::internal(format!("cover produced a broken walk: {e}")))?;
    DoubleCover::new(g, paths).map_err(|_| ChordError::internal("cover failed verification"))
}

/// The paths double-cover exactly the edges already removed from the residual.
fn check_partial(g: &MetricGraph, paths: &[Vec<Traversal>], live: &[bool]) -> Result<()> {
    let closed = paths
        .iter()
        .map(|p| ClosedPath::new(g, p.clone()))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| ChordError::internal(format!("partial cover has a broken walk: {e}")))?;
    if !closed.iter().all(ClosedPath::is_semi_simple) {
        return Err(ChordError::internal("partial cover has a path that is not semi-simple"));
    }
    let counts = edge_counts(g, &closed);
    if g.edges().any(|e| counts[e.0] != if live[e.0] { 0 } else { 2 }) {
        return Err(ChordError::internal("partial cover has the wrong multiplicities"));
    }
    Ok(())
}

/// A circuit through every edge exactly once, starting with the lowest edge
/// and always leaving by the lowest unused edge.
pub fn euler_circuit(g: &MetricGraph) -> Result<ClosedPath> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) % 2 == 1) {
        return Err(ChordError::precondition(format!(
            "vertex {} has odd degree {}; no Euler circuit",
            g.vertex_name(v),
            g.degree(v)
        )));
    }
    let mut used = vec![false; g.edge_count()];
    let start = g.tail(EdgeId(0));
    let mut stack: Vec<(VertexId, Option<Traversal>)> = vec![(start, None)];
    let mut circuit = Vec::new();
    while let Some(&(v, arrived)) = stack.last() {
        if let Some(&e) = g.incident(v).iter().find(|e| !used[e.0]) {
            used[e.0] = true;
            let t = Traversal::leaving(g, e, v);
            stack.push((t.end(g), Some(t)));
        } else {
            stack.pop();
            circuit.extend(arrived);
        }
    }
    circuit.reverse();
    ClosedPath::new(g, circuit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walk(g: &MetricGraph, text: &str) -> ClosedPath {
        let steps = text
            .split_whitespace()
            .map(|s| {
                let (name, fwd) = match s.strip_prefix('-') {
                    Some(n) => (n, false),
                    None => (s, true),
                };
                Traversal::new(g.edge_by_name(name).unwrap(), fwd)
            })
            .collect();
        ClosedPath::new(g, steps).unwrap()
    }

    fn show(g: &MetricGraph, p: &ClosedPath) -> String {
        p.steps()
            .iter()
            .map(|t| format!("{}{}", if t.forward { "" } else { "-" }, g.edge_name(t.edge)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    #[test]
    fn semi_simplicity() {
        let tri = MetricGraph::triangle();
        assert!(walk(&tri, "a b c").is_semi_simple());
        let lp = MetricGraph::single_loop();
        assert!(!walk(&lp, "a a").is_semi_simple());
        assert!(walk(&lp, "a").is_semi_simple());
        let eight = MetricGraph::figure_eight();
        assert!(walk(&eight, "a b").is_semi_simple());
        assert!(!walk(&eight, "a b a b a").is_semi_simple());
        let theta = MetricGraph::theta();
        assert!(!walk(&theta, "a -b a -b a -b").is_semi_simple());
    }

    #[test]
    fn broken_walks_are_rejected() {
        let tri = MetricGraph::triangle();
        let a = tri.edge_by_name("a").unwrap();
        let b = tri.edge_by_name("b").unwrap();
        assert!(ClosedPath::new(&tri, vec![Traversal::new(a, true), Traversal::new(b, true)]).is_err());
        assert!(ClosedPath::new(&tri, vec![]).is_err());
    }

    #[test]
    fn verification() {
        let tri = MetricGraph::triangle();
        assert!(verify_double_cover(&tri, &[walk(&tri, "a b c"), walk(&tri, "a b c")]));
        assert!(!verify_double_cover(&tri, &[walk(&tri, "a b c")]));
        let th = MetricGraph::theta();
        let cover = [walk(&th, "a -b"), walk(&th, "b -c"), walk(&th, "c -a")];
        assert!(verify_double_cover(&th, &cover));
    }

    #[test]
    fn constructed_covers() {
        let tri = MetricGraph::triangle();
        let c = compute_double_cover_checked(&tri).unwrap();
        let shown: Vec<_> = c.paths().iter().map(|p| show(&tri, p)).collect();
        assert_eq!(shown, ["a b c", "a b c"]);

        let th = MetricGraph::theta();
        let c = compute_double_cover_checked(&th).unwrap();
        let shown: Vec<_> = c.paths().iter().map(|p| show(&th, p)).collect();
        assert_eq!(shown, ["a -c b -c", "a -b"]);

        let eight = MetricGraph::figure_eight();
        let c = compute_double_cover_checked(&eight).unwrap();
        let shown: Vec<_> = c.paths().iter().map(|p| show(&eight, p)).collect();
        assert_eq!(shown, ["a", "a", "b", "b"]);
    }

    #[test]
    fn cover_needs_min_degree_two() {
        let err = compute_double_cover(&MetricGraph::interval()).unwrap_err();
        assert!(matches!(err, ChordError::Precondition(_)));
    }

    #[test]
    fn bridges_are_spliced_in() {
        let dumbbell = MetricGraph::from_edges(&[("a", "u", "u"), ("b", "u", "v"), ("c", "v", "v")]).unwrap();
        let c = compute_double_cover_checked(&dumbbell).unwrap();
        assert!(verify_double_cover(&dumbbell, c.paths()));
        let chain = MetricGraph::from_edges(&[
            ("a", "x", "x"),
            ("b", "x", "y"),
            ("c", "y", "z"),
            ("d", "z", "z"),
            ("e", "y", "y"),
        ])
        .unwrap();
        let c = compute_double_cover_checked(&chain).unwrap();
        assert!(verify_double_cover(&chain, c.paths()));
    }

    #[test]
    fn euler_circuits() {
        let tri = MetricGraph::triangle();
        assert_eq!(show(&tri, &euler_circuit(&tri).unwrap()), "a b c");
        let eight = MetricGraph::figure_eight();
        assert_eq!(show(&eight, &euler_circuit(&eight).unwrap()), "a b");
        assert!(matches!(euler_circuit(&MetricGraph::theta()), Err(ChordError::Precondition(_))));
        let bowtie = MetricGraph::from_edges(&[
            ("a", "x", "y"),
            ("b", "y", "z"),
            ("c", "z", "x"),
            ("d", "x", "p"),
            ("e", "p", "q"),
            ("f", "q", "x"),
        ])
        .unwrap();
        let c = euler_circuit(&bowtie).unwrap();
        assert_eq!(c.len(), 6);
        assert!(bowtie.edges().all(|e| c.multiplicity(e) == 1));
        let doubled = [c.clone(), c.reversed()];
        assert!(verify_double_cover(&bowtie, &doubled));
    }
}
