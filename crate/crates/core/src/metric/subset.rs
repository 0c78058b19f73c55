use std::collections::{BTreeMap, BTreeSet};
use std::ops::Deref;

use num_traits::{One, Zero};

use super::graph::{EdgeId, MetricGraph, VertexId};
use super::point::GraphPoint;
use crate::error::{ChordError, Result};
use crate::rational::{self, Rational};

/// Closed segment `[lo, hi]` of one edge, `0 <= lo <= hi <= 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSegment {
    pub edge: EdgeId,
    pub lo: Rational,
    pub hi: Rational,
}

impl EdgeSegment {
    pub fn new(edge: EdgeId, lo: Rational, hi: Rational) -> Self {
        EdgeSegment { edge, lo, hi }
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// Direction in which a tip travels along its edge parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    /// Increasing `t`.
    Up,
    /// Decreasing `t`.
    Down,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
        }
    }

    pub fn step(self, t: &Rational, dt: &Rational) -> Rational {
        match self {
            Dir::Up => t + dt,
            Dir::Down => t - dt,
        }
    }
}

/// A closed subset of a metric graph made of finitely many segments.
///
/// Canonical form: per edge, sorted pairwise-disjoint segments; a segment
/// reaching `t = 0` or `t = 1` puts the matching vertex into `verts`;
/// degenerate segments at edge endpoints are stored as vertices only.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClosedSet {
    segs: BTreeMap<EdgeId, Vec<(Rational, Rational)>>,
    verts: BTreeSet<VertexId>,
}

impl ClosedSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn point(g: &MetricGraph, p: &GraphPoint) -> Self {
        let mut s = Self::empty();
        match p {
            GraphPoint::Vertex(v) => {
                s.verts.insert(*v);
            }
            GraphPoint::Interior { edge, t } => {
                s.segs.insert(*edge, vec![(t.clone(), t.clone())]);
            }
        }
        s.canonicalize(g);
        s
    }

    pub fn from_segments<I>(g: &MetricGraph, segments: I) -> Result<Self>
    where
        I: IntoIterator<Item = EdgeSegment>,
    {
        let mut s = Self::empty();
        for seg in segments {
            if seg.edge.0 >= g.edge_count() {
                return Err(ChordError::Parse(format!("unknown edge {}", seg.edge)));
            }
            if seg.lo < Rational::zero() || seg.hi > Rational::one() || seg.lo > seg.hi {
                return Err(ChordError::precondition(format!(
                    "segment [{}, {}] is not inside [0, 1]",
                    seg.lo, seg.hi
                )));
            }
            s.segs.entry(seg.edge).or_default().push((seg.lo, seg.hi));
        }
        s.canonicalize(g);
        Ok(s)
    }

    pub fn segment(g: &MetricGraph, e: EdgeId, lo: Rational, hi: Rational) -> Result<Self> {
        Self::from_segments(g, [EdgeSegment::new(e, lo, hi)])
    }

    pub fn whole_edge(g: &MetricGraph, e: EdgeId) -> Self {
        Self::segment(g, e, Rational::zero(), Rational::one()).expect("unit segment")
    }

    pub fn whole_graph(g: &MetricGraph) -> Self {
        let mut s = Self::empty();
        for e in g.edges() {
            s.segs.insert(e, vec![(Rational::zero(), Rational::one())]);
        }
        s.canonicalize(g);
        s
    }

    fn canonicalize(&mut self, g: &MetricGraph) {
        let mut out = BTreeMap::new();
        for (&e, list) in self.segs.iter_mut() {
            list.sort();
            let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(list.len());
            for (lo, hi) in list.drain(..) {
                match merged.last_mut() {
                    Some(last) if lo <= last.1 => {
                        if hi > last.1 {
                            last.1 = hi;
                        }
                    }
                    _ => merged.push((lo, hi)),
                }
            }
            let mut kept = Vec::with_capacity(merged.len());
            for (lo, hi) in merged {
                if lo.is_zero() {
                    self.verts.insert(g.tail(e));
                }
                if hi.is_one() {
                    self.verts.insert(g.head(e));
                }
                let at_end = lo == hi && (lo.is_zero() || lo.is_one());
                if !at_end {
                    kept.push((lo, hi));
                }
            }
            if !kept.is_empty() {
                out.insert(e, kept);
            }
        }
        self.segs = out;
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty() && self.verts.is_empty()
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.verts
    }

    pub fn segments_on(&self, e: EdgeId) -> &[(Rational, Rational)] {
        self.segs.get(&e).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn segments(&self) -> impl Iterator<Item = EdgeSegment> + '_ {
        self.segs.iter().flat_map(|(&e, list)| {
            list.iter()
                .map(move |(lo, hi)| EdgeSegment::new(e, lo.clone(), hi.clone()))
        })
    }

    pub fn edges_touched(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.segs.keys().copied()
    }

    /// Total length.
    pub fn measure(&self) -> Rational {
        self.segs
            .values()
            .flatten()
            .fold(Rational::zero(), |acc, (lo, hi)| acc + (hi - lo))
    }

    pub fn contains_point(&self, p: &GraphPoint) -> bool {
        match p {
            GraphPoint::Vertex(v) => self.verts.contains(v),
            GraphPoint::Interior { edge, t } => self
                .segments_on(*edge)
                .iter()
                .any(|(lo, hi)| lo <= t && t <= hi),
        }
    }

    pub fn union(&self, g: &MetricGraph, other: &ClosedSet) -> ClosedSet {
        let mut s = self.clone();
        for (&e, list) in &other.segs {
            s.segs.entry(e).or_default().extend(list.iter().cloned());
        }
        s.verts.extend(other.verts.iter().copied());
        s.canonicalize(g);
        s
    }

    pub fn intersection(&self, g: &MetricGraph, other: &ClosedSet) -> ClosedSet {
        let mut s = ClosedSet::empty();
        for (&e, mine) in &self.segs {
            let Some(theirs) = other.segs.get(&e) else {
                continue;
            };
            let mut out = Vec::new();
            for (a, b) in mine {
                for (c, d) in theirs {
                    let lo = rational::max(a, c);
                    let hi = rational::min(b, d);
                    if lo <= hi {
                        out.push((lo, hi));
                    }
                }
            }
            if !out.is_empty() {
                s.segs.insert(e, out);
            }
        }
        s.verts = self.verts.intersection(&other.verts).copied().collect();
        s.canonicalize(g);
        s
    }

    pub fn intersects(&self, g: &MetricGraph, other: &ClosedSet) -> bool {
        !self.intersection(g, other).is_empty()
    }

    pub fn is_subset_of(&self, g: &MetricGraph, other: &ClosedSet) -> bool {
        &self.intersection(g, other) == self
    }

    /// Connected components, each as its own closed set.
    pub fn components(&self, g: &MetricGraph) -> Vec<ClosedSet> {
        // Nodes: vertices first, then segments in canonical order.
        let verts: Vec<VertexId> = self.verts.iter().copied().collect();
        let segs: Vec<EdgeSegment> = self.segments().collect();
        let vpos = |v: VertexId| verts.binary_search(&v).ok();
        let mut dsu = Dsu::new(verts.len() + segs.len());
        for (i, s) in segs.iter().enumerate() {
            let node = verts.len() + i;
            if s.lo.is_zero() {
                if let Some(j) = vpos(g.tail(s.edge)) {
                    dsu.union(node, j);
                }
            }
            if s.hi.is_one() {
                if let Some(j) = vpos(g.head(s.edge)) {
                    dsu.union(node, j);
                }
            }
        }
        let mut groups: BTreeMap<usize, ClosedSet> = BTreeMap::new();
        for (j, v) in verts.iter().enumerate() {
            groups.entry(dsu.find(j)).or_default().verts.insert(*v);
        }
        for (i, s) in segs.into_iter().enumerate() {
            let root = dsu.find(verts.len() + i);
            groups
                .entry(root)
                .or_default()
                .segs
                .entry(s.edge)
                .or_default()
                .push((s.lo, s.hi));
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self, g: &MetricGraph) -> bool {
        self.components(g).len() <= 1
    }

    /// Segment endpoints and vertices: the points through which a path can leave.
    pub fn boundary_points(&self, g: &MetricGraph) -> BTreeSet<GraphPoint> {
        let mut pts: BTreeSet<GraphPoint> = self.verts.iter().map(|&v| GraphPoint::Vertex(v)).collect();
        for s in self.segments() {
            pts.insert(GraphPoint::on_edge_unchecked(g, s.edge, s.lo.clone()));
            pts.insert(GraphPoint::on_edge_unchecked(g, s.edge, s.hi));
        }
        pts
    }

    /// Smallest point of the set in the canonical point order.
    pub fn first_point(&self, g: &MetricGraph) -> Option<GraphPoint> {
        self.boundary_points(g).into_iter().next()
    }

    /// Adds the segment swept by a tip at `t` moving `dt` in direction `dir`.
    pub fn grow(&self, g: &MetricGraph, e: EdgeId, t: &Rational, dir: Dir, dt: &Rational) -> Result<ClosedSet> {
        let end = dir.step(t, dt);
        let (lo, hi) = if end >= *t { (t.clone(), end) } else { (end, t.clone()) };
        let seg = ClosedSet::segment(g, e, lo, hi)?;
        Ok(self.union(g, &seg))
    }

    /// Closure of the set minus the half-open stretch swept by a tip at `t`
    /// moving `dt` in direction `dir` (the start point `t` is removed, the
    /// end point kept).
    pub fn shrink(&self, g: &MetricGraph, e: EdgeId, t: &Rational, dir: Dir, dt: &Rational) -> Result<ClosedSet> {
        let end = dir.step(t, dt);
        if end < Rational::zero() || end > Rational::one() {
            return Err(ChordError::precondition(format!(
                "shrink from {t} by {dt} leaves edge {e}"
            )));
        }
        let (a, b) = if end >= *t { (t.clone(), end) } else { (end, t.clone()) };
        let mut s = self.clone();
        if let Some(list) = s.segs.get_mut(&e) {
            let mut out = Vec::new();
            for (lo, hi) in list.drain(..) {
                // Remove the interval between a and b, closed on the side of t.
                match dir {
                    Dir::Up => {
                        // remove [a, b)
                        if lo < a {
                            out.push((lo.clone(), rational::min(&hi, &a)));
                        }
                        if hi >= b {
                            out.push((rational::max(&lo, &b), hi));
                        }
                    }
                    Dir::Down => {
                        // remove (a, b]
                        if lo <= a {
                            out.push((lo.clone(), rational::min(&hi, &a)));
                        }
                        if hi > b {
                            out.push((rational::max(&lo, &b), hi));
                        }
                    }
                }
            }
            *list = out;
        }
        // The start point is removed; canonicalisation restores a vertex
        // exactly when a remaining segment still reaches it (closure).
        if t.is_zero() {
            s.verts.remove(&g.tail(e));
        } else if t.is_one() {
            s.verts.remove(&g.head(e));
        }
        s.canonicalize(g);
        Ok(s)
    }
}

/// A nonempty, closed, connected subset: an element of the subset space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConnSubset(ClosedSet);

impl ConnSubset {
    pub fn new(g: &MetricGraph, set: ClosedSet) -> Result<Self> {
        if set.is_empty() {
            return Err(ChordError::precondition("subset is empty"));
        }
        if !set.is_connected(g) {
            return Err(ChordError::precondition("subset is not connected"));
        }
        Ok(ConnSubset(set))
    }

    pub fn from_segments<I>(g: &MetricGraph, segments: I) -> Result<Self>
    where
        I: IntoIterator<Item = EdgeSegment>,
    {
        Self::new(g, ClosedSet::from_segments(g, segments)?)
    }

    pub fn segment(g: &MetricGraph, e: EdgeId, lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(g, ClosedSet::segment(g, e, lo, hi)?)
    }

    pub fn point(g: &MetricGraph, p: &GraphPoint) -> Self {
        ConnSubset(ClosedSet::point(g, p))
    }

    pub fn whole_graph(g: &MetricGraph) -> Self {
        ConnSubset(ClosedSet::whole_graph(g))
    }

    pub fn whole_edge(g: &MetricGraph, e: EdgeId) -> Self {
        ConnSubset(ClosedSet::whole_edge(g, e))
    }

    pub(crate) fn new_unchecked(set: ClosedSet) -> Self {
        ConnSubset(set)
    }

    pub fn as_set(&self) -> &ClosedSet {
        &self.0
    }

    pub fn into_set(self) -> ClosedSet {
        self.0
    }
}

impl Deref for ConnSubset {
    type Target = ClosedSet;

    fn deref(&self) -> &ClosedSet {
        &self.0
    }
}

/// `true` iff the union of `segments` is connected once edge endpoints are
/// identified with their vertices.
pub fn is_connected(g: &MetricGraph, segments: &[EdgeSegment]) -> Result<bool> {
    Ok(ClosedSet::from_segments(g, segments.iter().cloned())?.is_connected(g))
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
