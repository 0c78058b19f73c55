use num_traits::{One, Signed, Zero};

use crate::cover::{compute_double_cover, euler_circuit, ClosedPath, Traversal};
use crate::error::{ChordError, Result};
use crate::homotopy::{connect_in_xr, find_zero_along};
use crate::interval::find_arc_chord_circle;
use crate::metric::{ConnSubset, EdgeSegment, GraphPoint, MetricGraph, VertexId};
use crate::rational::{self, Rational};
use crate::step::{integral_graph, integral_path, integral_subset, Step1d, StepFunction};

/// A solution together with the data that certifies how it was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordSolution {
    pub subset: ConnSubset,
    pub measure: Rational,
    pub integral: Rational,
    /// Closed paths the solution was cut from (a double cover or an Euler
    /// circuit); empty when no path was needed.
    pub cover: Vec<ClosedPath>,
    /// Time along the connecting curve at which the integral vanished, when a
    /// curve was needed.
    pub schedule_time: Option<Rational>,
}

impl ChordSolution {
    fn new(subset: ConnSubset, f: &StepFunction, cover: Vec<ClosedPath>, schedule_time: Option<Rational>) -> Self {
        ChordSolution {
            measure: subset.measure(),
            integral: integral_subset(f, &subset),
            subset,
            cover,
            schedule_time,
        }
    }
}

/// `f` pulled back along a walk: a step function on `[0, len]`, one unit per
/// traversal, reversed on backward traversals.
pub fn lift_to_circle(f: &StepFunction, walk: &[Traversal]) -> Result<Step1d> {
    let parts: Vec<Step1d> = walk
        .iter()
        .map(|t| {
            let h = f.on_edge(t.edge);
            if t.forward {
                h.clone()
            } else {
                h.reversed()
            }
        })
        .collect();
    Step1d::concat(&parts)
}

/// Image in `g` of the arc `[x, x + w]` of the circle traced by a closed walk
/// (`0 <= x < len`, `0 <= w <= len`).
pub fn walk_window(g: &MetricGraph, walk: &[Traversal], x: &Rational, w: &Rational) -> Result<ConnSubset> {
    let len = Rational::from_integer(walk.len().into());
    let end = x + w;
    let ranges = if end > len {
        vec![(x.clone(), len.clone()), (Rational::zero(), &end - &len)]
    } else {
        vec![(x.clone(), end)]
    };
    let mut segs = Vec::new();
    for (a, b) in &ranges {
        for (k, t) in walk.iter().enumerate() {
            let k0 = Rational::from_integer(k.into());
            let k1 = &k0 + Rational::one();
            let lo = rational::max(a, &k0) - &k0;
            let hi = rational::min(b, &k1) - &k0;
            if lo > hi || (lo == hi && w.is_positive()) {
                continue;
            }
            segs.push(if t.forward {
                EdgeSegment::new(t.edge, lo, hi)
            } else {
                EdgeSegment::new(t.edge, Rational::one() - hi, Rational::one() - lo)
            });
        }
    }
    ConnSubset::from_segments(g, segs)
}

/// A connected set of measure `r <= 1` cut from the semi-simple closed path
/// `c`, whose integral is `(r / n) * int_c f` for a path of `n` edges.
pub fn arc_on_semi_simple(g: &MetricGraph, c: &ClosedPath, f: &StepFunction, r: &Rational) -> Result<ConnSubset> {
    if !c.is_semi_simple() {
        return Err(ChordError::precondition("the path is not semi-simple"));
    }
    if r.is_negative() || *r > Rational::one() {
        return Err(ChordError::precondition("window length must lie in [0, 1]"));
    }
    if r.is_zero() {
        return Ok(ConnSubset::point(g, &GraphPoint::Vertex(c.start(g))));
    }
    let n = Rational::from_integer(c.len().into());
    let target = r / &n * integral_path(f, c.edges());
    let h = lift_to_circle(f, c.steps())?;
    let x = find_arc_chord_circle(&h, r, &target)?;
    let a = walk_window(g, c.steps(), &x, r)?;
    if a.measure() != *r {
        return Err(ChordError::internal("window on a semi-simple path overlaps itself"));
    }
    if integral_subset(f, &a) != target {
        return Err(ChordError::internal("window integral differs from its mean value"));
    }
    Ok(a)
}

fn require_zero_mean(f: &StepFunction, g: &MetricGraph) -> Result<()> {
    if f.edge_count() != g.edge_count() {
        return Err(ChordError::precondition("function and graph have different edge counts"));
    }
    if !integral_graph(f).is_zero() {
        return Err(ChordError::precondition(format!(
            "the integral of f over the graph must be 0, got {}",
            rational::format_rational(&integral_graph(f))
        )));
    }
    Ok(())
}

fn a_point(g: &MetricGraph) -> ConnSubset {
    ConnSubset::point(g, &GraphPoint::Vertex(VertexId(0)))
}

/// A closed connected set of measure `r in [0, 1]` on which `f` integrates to
/// zero, for a graph without vertices of degree below 2 and `f` of mean 0.
///
/// Cuts a window of length `r` from every path of a double cover. Their
/// integrals have the signs of the path integrals, which sum to twice the
/// integral of `f`, so one window vanishes or two have opposite signs; in the
/// latter case the zero is found along a curve joining them.
pub fn graph_chord_solve(g: &MetricGraph, f: &StepFunction, r: &Rational) -> Result<ChordSolution> {
    require_zero_mean(f, g)?;
    if r.is_negative() || *r > Rational::one() {
        return Err(ChordError::precondition("r must lie in [0, 1]"));
    }
    if r.is_zero() {
        return Ok(ChordSolution::new(a_point(g), f, Vec::new(), None));
    }
    let cover = compute_double_cover(g)?.into_paths();
    let mut windows = Vec::with_capacity(cover.len());
    for c in &cover {
        let a = arc_on_semi_simple(g, c, f, r)?;
        let v = integral_subset(f, &a);
        if rational::sign(&v) != rational::sign(&integral_path(f, c.edges())) {
            return Err(ChordError::internal("window integral and path integral differ in sign"));
        }
        windows.push((a, v));
    }
    if let Some((a, _)) = windows.iter().find(|(_, v)| v.is_zero()) {
        return Ok(ChordSolution::new(a.clone(), f, cover, None));
    }
    let pair = (0..windows.len()).find_map(|i| {
        (i + 1..windows.len())
            .find(|&j| windows[i].1.is_positive() != windows[j].1.is_positive())
            .map(|j| (i, j))
    });
    let (i, j) = pair.ok_or_else(|| ChordError::internal("all window integrals share one sign"))?;
    let schedule = connect_in_xr(g, &windows[i].0, &windows[j].0, r)?;
    let (s, u) = find_zero_along(g, f, &schedule)?;
    let sol = ChordSolution::new(u, f, cover, Some(s));
    if !sol.integral.is_zero() || sol.measure != *r {
        return Err(ChordError::internal("curve zero does not satisfy the postconditions"));
    }
    Ok(sol)
}

/// A closed connected set of measure `r in [0, |E|]` on which `f` integrates
/// to zero, for an Euler graph: a window of an Euler circuit.
pub fn euler_chord_solve(g: &MetricGraph, f: &StepFunction, r: &Rational) -> Result<ChordSolution> {
    require_zero_mean(f, g)?;
    let edges = Rational::from_integer(g.edge_count().into());
    if r.is_negative() || *r > edges {
        return Err(ChordError::precondition("r must lie in [0, |E|]"));
    }
    let circuit = euler_circuit(g)?;
    if r.is_zero() {
        return Ok(ChordSolution::new(a_point(g), f, vec![circuit], None));
    }
    let h = lift_to_circle(f, circuit.steps())?;
    let x = find_arc_chord_circle(&h, r, &Rational::zero())?;
    let u = walk_window(g, circuit.steps(), &x, r)?;
    let sol = ChordSolution::new(u, f, vec![circuit], None);
    if !sol.integral.is_zero() || sol.measure != *r {
        return Err(ChordError::internal("circuit window does not satisfy the postconditions"));
    }
    Ok(sol)
}
