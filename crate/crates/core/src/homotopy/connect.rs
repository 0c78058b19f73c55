use num_traits::Zero;

use super::{initial_run, retraction_schedule, MoveSchedule, Tip, TipMove};
use crate::error::{ChordError, Result};
use crate::metric::{set_geodesic, ClosedSet, ConnSubset, Dir, GraphPoint, MetricGraph, Piece};
use crate::rational::{self, Rational};

/// A measure-preserving curve from `a` to `b`, both of measure `r` with
/// `0 < r < |E|`.
///
/// While the sets are disjoint, the set creeps along a shortest route towards
/// `b`, growing at the front and retracting onto the route's start at the
/// back (then shrinking the route's tail once the original set is used up).
/// Once the sets share a point `x`, the curve runs the retraction of the
/// current set onto `x` against the reversed retraction of `b` onto `x`,
/// pairing a shrink with a grow wherever both happen outside the other
/// process's set, and letting either process advance for free where it only
/// moves through points the other still holds.
pub fn connect_in_xr(g: &MetricGraph, a: &ConnSubset, b: &ConnSubset, r: &Rational) -> Result<MoveSchedule> {
    let edges = Rational::from_integer(g.edge_count().into());
    if *r <= Rational::zero() || *r >= edges {
        return Err(ChordError::precondition("r must lie strictly between 0 and |E|"));
    }
    if a.measure() != *r || b.measure() != *r {
        return Err(ChordError::precondition("both sets must have measure r"));
    }
    if a == b {
        return Ok(MoveSchedule::stationary(a.clone()));
    }
    let (approach, x) = if a.intersects(g, b) {
        let x = a.intersection(g, b).first_point(g).expect("sets meet");
        (MoveSchedule::stationary(a.clone()), x)
    } else {
        approach(g, a, b)?
    };
    let exchange = exchange(g, &approach.end(), b, &x)?;
    let schedule = approach.then(exchange)?;
    if schedule.end() != *b {
        return Err(ChordError::internal("curve does not end at the target set"));
    }
    Ok(schedule)
}

/// Cursor into a sequence of directed pieces, tracking the distance covered.
struct RouteCursor<'a> {
    pieces: &'a [Piece],
    index: usize,
    offset: Rational,
}

impl<'a> RouteCursor<'a> {
    fn new(pieces: &'a [Piece]) -> Self {
        RouteCursor { pieces, index: 0, offset: Rational::zero() }
    }

    /// The tip at the cursor and how far it can run before the piece ends.
    fn tip(&self) -> (Tip, Rational) {
        let p = &self.pieces[self.index];
        let dir = if p.forward() { Dir::Up } else { Dir::Down };
        (Tip::new(p.edge, p.at(&self.offset), dir), p.length() - &self.offset)
    }

    fn advance(&mut self, d: &Rational) {
        self.offset += d;
        if self.offset == self.pieces[self.index].length() {
            self.index += 1;
            self.offset = Rational::zero();
        }
    }
}

/// Cursor into the moves of a schedule of single-tip moves.
struct MoveCursor {
    moves: Vec<TipMove>,
    index: usize,
    offset: Rational,
}

impl MoveCursor {
    fn new(moves: Vec<TipMove>) -> Self {
        MoveCursor { moves, index: 0, offset: Rational::zero() }
    }

    fn done(&self) -> bool {
        self.index == self.moves.len()
    }

    fn tip(&self) -> (Tip, Rational) {
        let (tip, dt) = match &self.moves[self.index] {
            TipMove::Grow { tip, dt } | TipMove::Shrink { tip, dt } => (tip, dt),
            TipMove::Pair { .. } => unreachable!("cursor runs over single-tip moves"),
        };
        (tip.advanced(&self.offset), dt - &self.offset)
    }

    fn advance(&mut self, d: &Rational) {
        self.offset += d;
        if self.offset == *self.moves[self.index].dt() {
            self.index += 1;
            self.offset = Rational::zero();
        }
    }
}

/// From disjoint `a` to a set of the same measure meeting `b`; returns the
/// curve and a common point of its end set and `b`.
fn approach(g: &MetricGraph, a: &ConnSubset, b: &ConnSubset) -> Result<(MoveSchedule, GraphPoint)> {
    let geo = set_geodesic(g, a, b)?;
    let pieces: Vec<Piece> = geo.pieces.into_iter().filter(|p| !p.length().is_zero()).collect();
    let mut front = RouteCursor::new(&pieces);
    let mut back = RouteCursor::new(&pieces);
    let mut retract = MoveCursor::new(retraction_schedule(g, a, &geo.from)?.moves().to_vec());
    let mut moves = Vec::new();
    let mut covered = Rational::zero();
    while covered < geo.length {
        let (grow, room) = front.tip();
        let (shrink, left) = if retract.done() { back.tip() } else { retract.tip() };
        let dt = rational::min(&room, &left);
        front.advance(&dt);
        if retract.done() {
            back.advance(&dt);
        } else {
            retract.advance(&dt);
        }
        covered += &dt;
        moves.push(TipMove::Pair { grow, shrink, dt });
    }
    Ok((MoveSchedule::new(g, a.clone(), moves)?, geo.to))
}

/// From `c` to `b`, both containing `x` and of equal measure.
fn exchange(g: &MetricGraph, c: &ConnSubset, b: &ConnSubset, x: &GraphPoint) -> Result<MoveSchedule> {
    let mut eta = MoveCursor::new(retraction_schedule(g, c, x)?.moves().to_vec());
    let nu_moves = retraction_schedule(g, b, x)?
        .moves()
        .iter()
        .rev()
        .map(|m| match m {
            TipMove::Shrink { tip, dt } => TipMove::Grow {
                tip: Tip::new(tip.edge, tip.dir.step(&tip.t, dt), tip.dir.flip()),
                dt: dt.clone(),
            },
            _ => unreachable!("retractions only shrink"),
        })
        .collect();
    let mut nu = MoveCursor::new(nu_moves);
    let mut eta_set = c.as_set().clone();
    let mut nu_set = ClosedSet::point(g, x);
    let mut set = c.as_set().clone();
    let mut moves = Vec::new();
    while !(eta.done() && nu.done()) {
        let grow = (!nu.done()).then(|| {
            let (tip, rem) = nu.tip();
            let run = initial_run(&eta_set, tip.edge, &tip.t, tip.dir, &rem);
            (tip, run)
        });
        let shrink = (!eta.done()).then(|| {
            let (tip, rem) = eta.tip();
            let run = initial_run(&nu_set, tip.edge, &tip.t, tip.dir, &rem);
            (tip, run)
        });
        match (grow, shrink) {
            (Some((tip, (true, d))), _) => {
                nu_set = nu_set.grow(g, tip.edge, &tip.t, tip.dir, &d)?;
                nu.advance(&d);
            }
            (_, Some((tip, (true, d)))) => {
                eta_set = eta_set.shrink(g, tip.edge, &tip.t, tip.dir, &d)?;
                eta.advance(&d);
            }
            (Some((gt, (false, dg))), Some((st, (false, ds)))) => {
                let dt = rational::min(&dg, &ds);
                nu_set = nu_set.grow(g, gt.edge, &gt.t, gt.dir, &dt)?;
                eta_set = eta_set.shrink(g, st.edge, &st.t, st.dir, &dt)?;
                nu.advance(&dt);
                eta.advance(&dt);
                let mv = TipMove::Pair { grow: gt, shrink: st, dt: dt.clone() };
                set = mv.apply(g, &set, &dt)?;
                if cfg!(debug_assertions) && set != eta_set.union(g, &nu_set) {
                    return Err(ChordError::internal("exchange lost track of the current set"));
                }
                moves.push(mv);
            }
            _ => {
                return Err(ChordError::internal(
                    "exchange stalled: one process is finished and the other moves outside it",
                ))
            }
        }
    }
    MoveSchedule::new(g, c.clone(), moves)
}
