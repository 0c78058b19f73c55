use num_traits::Zero;

use super::graph::MetricGraph;
use super::point::{GraphPoint, Piece};
use super::subset::{ClosedSet, ConnSubset, EdgeSegment};
use crate::error::{ChordError, Result};
use crate::rational::{self, Rational};

/// A shortest route between two points, as directed edge pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Geodesic {
    pub from: GraphPoint,
    pub to: GraphPoint,
    pub length: Rational,
    pub pieces: Vec<Piece>,
}

/// Geodesic distance between two points.
pub fn point_distance(g: &MetricGraph, p: &GraphPoint, q: &GraphPoint) -> Rational {
    geodesic(g, p, q).length
}

/// A shortest route from `p` to `q`. Among equal-length routes the direct
/// within-edge route wins, then exits in (tail, head) order.
pub fn geodesic(g: &MetricGraph, p: &GraphPoint, q: &GraphPoint) -> Geodesic {
    if p == q {
        return Geodesic {
            from: p.clone(),
            to: q.clone(),
            length: Rational::zero(),
            pieces: Vec::new(),
        };
    }
    let mut best: Option<(Rational, Vec<Piece>)> = None;
    let mut offer = |len: Rational, pieces: Vec<Piece>| {
        if best.as_ref().is_none_or(|(b, _)| len < *b) {
            best = Some((len, pieces));
        }
    };
    if let (
        GraphPoint::Interior { edge: e1, t: t1 },
        GraphPoint::Interior { edge: e2, t: t2 },
    ) = (p, q)
    {
        if e1 == e2 {
            offer(
                rational::abs(&(t1 - t2)),
                vec![Piece::new(*e1, t1.clone(), t2.clone())],
            );
        }
    }
    for out in p.exits(g) {
        for inn in q.exits(g) {
            let hops = g.hops(out.vertex, inn.vertex);
            let len = &out.cost + Rational::from_integer(hops.into()) + &inn.cost;
            let mut pieces = Vec::new();
            if let Some(pc) = &out.piece {
                pieces.push(pc.clone());
            }
            for (e, fwd) in g.vertex_route(out.vertex, inn.vertex) {
                pieces.push(Piece::whole(e, fwd));
            }
            if let Some(pc) = &inn.piece {
                pieces.push(pc.reversed());
            }
            offer(len, pieces);
        }
    }
    let (length, pieces) = best.expect("graph is connected");
    Geodesic {
        from: p.clone(),
        to: q.clone(),
        length,
        pieces,
    }
}

/// Infimum of point distances between two nonempty closed sets, with a
/// witnessing geodesic (empty when the sets meet).
pub fn set_geodesic(g: &MetricGraph, a: &ClosedSet, b: &ClosedSet) -> Result<Geodesic> {
    if a.is_empty() || b.is_empty() {
        return Err(ChordError::precondition("distance to an empty set"));
    }
    let meet = a.intersection(g, b);
    if let Some(p) = meet.first_point(g) {
        return Ok(Geodesic {
            from: p.clone(),
            to: p,
            length: Rational::zero(),
            pieces: Vec::new(),
        });
    }
    let bp = b.boundary_points(g);
    let mut best: Option<Geodesic> = None;
    for p in a.boundary_points(g) {
        for q in &bp {
            let geo = geodesic(g, &p, q);
            if best.as_ref().is_none_or(|b| geo.length < b.length) {
                best = Some(geo);
            }
        }
    }
    Ok(best.expect("both sets have boundary points"))
}

pub fn set_distance(g: &MetricGraph, a: &ClosedSet, b: &ClosedSet) -> Result<Rational> {
    Ok(set_geodesic(g, a, b)?.length)
}

/// The length measure of a subset.
pub fn measure(u: &ClosedSet) -> Rational {
    u.measure()
}

/// Smallest closed connected set containing both: the union, plus one
/// geodesic when the sets are disjoint.
pub fn hull(g: &MetricGraph, a: &ConnSubset, b: &ConnSubset) -> Result<ConnSubset> {
    let geo = set_geodesic(g, a, b)?;
    let mut u = a.union(g, b);
    if !geo.pieces.is_empty() {
        let path = ClosedSet::from_segments(
            g,
            geo.pieces.iter().map(|pc| {
                let (lo, hi) = if pc.forward() {
                    (pc.from.clone(), pc.to.clone())
                } else {
                    (pc.to.clone(), pc.from.clone())
                };
                EdgeSegment::new(pc.edge, lo, hi)
            }),
        )?;
        u = u.union(g, &path);
    }
    ConnSubset::new(g, u).map_err(|e| ChordError::internal(format!("hull not connected: {e}")))
}

/// `mu(A hull B) - mu(A meet B)`: the metric on all closed connected subsets.
pub fn metric_d(g: &MetricGraph, a: &ConnSubset, b: &ConnSubset) -> Result<Rational> {
    let h = hull(g, a, b)?;
    Ok(h.measure() - a.intersection(g, b).measure())
}

/// `2r - 2 mu(A meet B)`, defined on subsets of common measure `r`. Differs
/// from [`metric_d`] on disjoint pairs by their separating distance.
pub fn metric_d_xr(g: &MetricGraph, a: &ConnSubset, b: &ConnSubset, r: &Rational) -> Result<Rational> {
    if a.measure() != *r || b.measure() != *r {
        return Err(ChordError::precondition(format!(
            "both subsets must have measure {r} (got {} and {})",
            a.measure(),
            b.measure()
        )));
    }
    let two = Rational::from_integer(2.into());
    Ok(&two * r - &two * a.intersection(g, b).measure())
}
