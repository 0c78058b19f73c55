use num_traits::Zero;

use super::{MoveSchedule, Tip, TipMove};
use crate::error::{ChordError, Result};
use crate::metric::{ClosedSet, ConnSubset, Dir, GraphPoint, MetricGraph};
use crate::rational::Rational;

/// Shrink moves taking `c` down to the single point `x` at unit speed.
///
/// Repeatedly peels a segment from one of its ends, in edge order, as long as
/// the remainder stays connected and keeps `x`; a segment holding `x` is only
/// peeled as far as `x`.
pub fn retraction_schedule(g: &MetricGraph, c: &ConnSubset, x: &GraphPoint) -> Result<MoveSchedule> {
    if !c.contains_point(x) {
        return Err(ChordError::precondition("the retraction point is not in the set"));
    }
    let target = ClosedSet::point(g, x);
    let mut set = c.as_set().clone();
    let mut moves = Vec::new();
    while set != target {
        let (mv, next) = peel(g, &set, x).ok_or_else(|| {
            ChordError::internal("no segment end can be peeled while staying connected")
        })?;
        moves.push(mv);
        set = next;
    }
    MoveSchedule::new(g, c.clone(), moves)
}

fn peel(g: &MetricGraph, set: &ClosedSet, x: &GraphPoint) -> Option<(TipMove, ClosedSet)> {
    let two = Rational::from_integer(2.into());
    for seg in set.segments() {
        if seg.lo == seg.hi {
            continue;
        }
        // Where x sits on this segment, if it does.
        let stop = match x {
            GraphPoint::Interior { edge, t } if *edge == seg.edge && seg.lo <= *t && *t <= seg.hi => {
                Some(t.clone())
            }
            GraphPoint::Vertex(v) if seg.hi == Rational::from_integer(1.into()) && g.head(seg.edge) == *v => {
                Some(seg.hi.clone())
            }
            GraphPoint::Vertex(v) if seg.lo.is_zero() && g.tail(seg.edge) == *v => Some(seg.lo.clone()),
            _ => None,
        };
        for (tip, far) in [
            (Tip::new(seg.edge, seg.hi.clone(), Dir::Down), &seg.lo),
            (Tip::new(seg.edge, seg.lo.clone(), Dir::Up), &seg.hi),
        ] {
            // Never sweep across x.
            let end = stop.as_ref().unwrap_or(far);
            let dt = if tip.dir == Dir::Down { &tip.t - end } else { end - &tip.t };
            if dt.is_zero() {
                continue;
            }
            let ok = |s: &Rational| {
                set.shrink(g, tip.edge, &tip.t, tip.dir, s)
                    .ok()
                    .filter(|r| r.is_connected(g) && r.contains_point(x))
            };
            if ok(&(&dt / &two)).is_none() {
                continue;
            }
            if let Some(next) = ok(&dt) {
                return Some((TipMove::Shrink { tip, dt }, next));
            }
        }
    }
    None
}
