//! Curves in the space of closed connected subsets, encoded as schedules of
//! constant-speed tip moves, and exact root finding of `I_f` along them.

mod connect;
mod retract;

pub use connect::connect_in_xr;
pub use retract::retraction_schedule;

use num_traits::{Signed, Zero};

use crate::error::{ChordError, Result};
use crate::metric::{ClosedSet, ConnSubset, Dir, EdgeId, MetricGraph};
use crate::rational::{self, Rational};
use crate::step::{integral_subset, EdgeIntegrand};

/// A moving end of a subset: position `t` on `edge`, travelling in `dir`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tip {
    pub edge: EdgeId,
    pub t: Rational,
    pub dir: Dir,
}

impl Tip {
    pub fn new(edge: EdgeId, t: Rational, dir: Dir) -> Self {
        Tip { edge, t, dir }
    }

    /// Where the tip is after travelling `s`.
    pub fn advanced(&self, s: &Rational) -> Tip {
        Tip::new(self.edge, self.dir.step(&self.t, s), self.dir)
    }

    fn stays_on_edge(&self, dt: &Rational) -> bool {
        let end = self.dir.step(&self.t, dt);
        end >= Rational::zero() && end <= rational::one()
    }

    /// Times in `(0, dt)` at which the tip passes one of `points`.
    fn crossings(&self, dt: &Rational, points: &[Rational]) -> Vec<Rational> {
        points
            .iter()
            .map(|b| match self.dir {
                Dir::Up => b - &self.t,
                Dir::Down => &self.t - b,
            })
            .filter(|s| *s > Rational::zero() && s < dt)
            .collect()
    }
}

/// One constant-speed step of a curve of subsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TipMove {
    /// Adds the stretch swept by the tip.
    Grow { tip: Tip, dt: Rational },
    /// Removes the stretch swept by the tip (closure of the remainder).
    Shrink { tip: Tip, dt: Rational },
    /// Both at once at equal speed; the measure stays constant.
    Pair { grow: Tip, shrink: Tip, dt: Rational },
}

impl TipMove {
    pub fn dt(&self) -> &Rational {
        match self {
            TipMove::Grow { dt, .. } | TipMove::Shrink { dt, .. } | TipMove::Pair { dt, .. } => dt,
        }
    }

    fn tips(&self) -> Vec<&Tip> {
        match self {
            TipMove::Grow { tip, .. } | TipMove::Shrink { tip, .. } => vec![tip],
            TipMove::Pair { grow, shrink, .. } => vec![grow, shrink],
        }
    }

    /// Measure change per unit time.
    fn rate(&self) -> i64 {
        match self {
            TipMove::Grow { .. } => 1,
            TipMove::Shrink { .. } => -1,
            TipMove::Pair { .. } => 0,
        }
    }

    /// The set after running this move for time `s` from `set`.
    pub fn apply(&self, g: &MetricGraph, set: &ClosedSet, s: &Rational) -> Result<ClosedSet> {
        if s.is_zero() {
            return Ok(set.clone());
        }
        match self {
            TipMove::Grow { tip, .. } => set.grow(g, tip.edge, &tip.t, tip.dir, s),
            TipMove::Shrink { tip, .. } => set.shrink(g, tip.edge, &tip.t, tip.dir, s),
            TipMove::Pair { grow, shrink, .. } => set
                .grow(g, grow.edge, &grow.t, grow.dir, s)?
                .shrink(g, shrink.edge, &shrink.t, shrink.dir, s),
        }
    }

    /// The same motion cut at the interior times `cuts` (sorted).
    fn split(&self, cuts: &[Rational]) -> Vec<TipMove> {
        let mut out = Vec::new();
        let mut done = Rational::zero();
        for c in cuts.iter().chain(std::iter::once(self.dt())) {
            let len = c - &done;
            if len.is_zero() {
                continue;
            }
            out.push(match self {
                TipMove::Grow { tip, .. } => TipMove::Grow { tip: tip.advanced(&done), dt: len },
                TipMove::Shrink { tip, .. } => TipMove::Shrink { tip: tip.advanced(&done), dt: len },
                TipMove::Pair { grow, shrink, .. } => TipMove::Pair {
                    grow: grow.advanced(&done),
                    shrink: shrink.advanced(&done),
                    dt: len,
                },
            });
            done = c.clone();
        }
        out
    }
}

/// A curve of closed connected subsets: a start set and the moves run one
/// after another. The set at the end of every move is cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveSchedule {
    start: ConnSubset,
    moves: Vec<TipMove>,
    ends: Vec<ClosedSet>,
    times: Vec<Rational>,
}

impl MoveSchedule {
    /// Validates that every move keeps its tips on their edges, changes the
    /// measure at its nominal rate and ends on a connected set.
    pub fn new(g: &MetricGraph, start: ConnSubset, moves: Vec<TipMove>) -> Result<Self> {
        let mut ends = Vec::with_capacity(moves.len());
        let mut times = Vec::with_capacity(moves.len());
        let mut set = start.as_set().clone();
        let mut clock = Rational::zero();
        for (i, m) in moves.iter().enumerate() {
            let dt = m.dt();
            if !dt.is_positive() {
                return Err(ChordError::precondition(format!("move {i} has no duration")));
            }
            if !m.tips().iter().all(|t| t.stays_on_edge(dt)) {
                return Err(ChordError::precondition(format!("move {i} runs off its edge")));
            }
            let next = m.apply(g, &set, dt)?;
            let expect = set.measure() + dt * Rational::from_integer(m.rate().into());
            if next.measure() != expect {
                return Err(ChordError::precondition(format!(
                    "move {i} changes the measure by the wrong amount"
                )));
            }
            if !next.is_connected(g) {
                return Err(ChordError::precondition(format!("move {i} disconnects the set")));
            }
            clock += dt;
            times.push(clock.clone());
            ends.push(next.clone());
            set = next;
        }
        Ok(MoveSchedule { start, moves, ends, times })
    }

    /// A schedule without moves.
    pub fn stationary(start: ConnSubset) -> Self {
        MoveSchedule { start, moves: Vec::new(), ends: Vec::new(), times: Vec::new() }
    }

    pub fn start(&self) -> &ConnSubset {
        &self.start
    }

    pub fn moves(&self) -> &[TipMove] {
        &self.moves
    }

    pub fn total(&self) -> Rational {
        self.times.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Time at which each move ends.
    pub fn move_ends(&self) -> &[Rational] {
        &self.times
    }

    pub fn end(&self) -> ConnSubset {
        match self.ends.last() {
            Some(s) => ConnSubset::new_unchecked(s.clone()),
            None => self.start.clone(),
        }
    }

    /// The set at time `s`.
    pub fn apply_prefix(&self, g: &MetricGraph, s: &Rational) -> Result<ConnSubset> {
        if s.is_negative() || *s > self.total() {
            return Err(ChordError::precondition(format!(
                "time {} outside [0, {}]",
                rational::format_rational(s),
                rational::format_rational(&self.total())
            )));
        }
        let i = self.times.partition_point(|t| t < s);
        if i == self.moves.len() {
            return Ok(self.end());
        }
        let (before, began) = if i == 0 {
            (self.start.as_set(), Rational::zero())
        } else {
            (&self.ends[i - 1], self.times[i - 1].clone())
        };
        let set = self.moves[i].apply(g, before, &(s - began))?;
        Ok(ConnSubset::new_unchecked(set))
    }

    /// The same curve with every move cut wherever a tip passes one of the
    /// breakpoints of `f`, so that `I_f` is linear on each move.
    pub fn split_for<F: EdgeIntegrand + ?Sized>(&self, g: &MetricGraph, f: &F) -> Result<Self> {
        let mut moves = Vec::new();
        for m in &self.moves {
            let mut cuts: Vec<Rational> = m
                .tips()
                .iter()
                .flat_map(|t| t.crossings(m.dt(), f.breakpoints_on_edge(t.edge)))
                .collect();
            cuts.sort();
            cuts.dedup();
            moves.extend(m.split(&cuts));
        }
        if moves.len() == self.moves.len() {
            return Ok(self.clone());
        }
        MoveSchedule::new(g, self.start.clone(), moves)
    }

    /// Concatenates two schedules; `next` must start where `self` ends.
    pub fn then(mut self, next: MoveSchedule) -> Result<Self> {
        if self.end() != next.start {
            return Err(ChordError::internal("schedules do not meet"));
        }
        let offset = self.total();
        self.moves.extend(next.moves);
        self.ends.extend(next.ends);
        self.times.extend(next.times.into_iter().map(|t| t + &offset));
        Ok(self)
    }
}

/// The earliest time `s` at which `I_f` vanishes along the schedule, and the
/// set there. `I_f` must change sign (or vanish) between start and end.
pub fn find_zero_along<F>(g: &MetricGraph, f: &F, schedule: &MoveSchedule) -> Result<(Rational, ConnSubset)>
where
    F: EdgeIntegrand + ?Sized,
{
    let sched = schedule.split_for(g, f)?;
    let mut prev_t = Rational::zero();
    let mut prev_v = integral_subset(f, sched.start());
    if prev_v.is_zero() {
        return Ok((prev_t, sched.start().clone()));
    }
    for (end_t, set) in sched.times.iter().zip(&sched.ends) {
        let v = integral_subset(f, set);
        if v.is_zero() || v.is_negative() != prev_v.is_negative() {
            let s = &prev_t + (end_t - &prev_t) * (-&prev_v) / (&v - &prev_v);
            let u = sched.apply_prefix(g, &s)?;
            if !integral_subset(f, &u).is_zero() {
                return Err(ChordError::internal("integral is not linear along a split move"));
            }
            return Ok((s, u));
        }
        prev_t = end_t.clone();
        prev_v = v;
    }
    Err(ChordError::precondition("the integral does not change sign along the schedule"))
}

/// Length of the initial run of the stretch swept from `t` in `dir` (at most
/// `cap`) that lies inside `set`, or outside it when the flag is false.
fn initial_run(set: &ClosedSet, e: EdgeId, t: &Rational, dir: Dir, cap: &Rational) -> (bool, Rational) {
    let segs = set.segments_on(e);
    match dir {
        Dir::Up => {
            if let Some((_, hi)) = segs.iter().find(|(lo, hi)| lo <= t && t < hi) {
                return (true, rational::min(&(hi - t), cap));
            }
            let next = segs.iter().map(|(lo, _)| lo).find(|lo| *lo > t);
            (false, next.map_or(cap.clone(), |lo| rational::min(&(lo - t), cap)))
        }
        Dir::Down => {
            if let Some((lo, _)) = segs.iter().find(|(lo, hi)| lo < t && t <= hi) {
                return (true, rational::min(&(t - lo), cap));
            }
            let prev = segs.iter().rev().map(|(_, hi)| hi).find(|hi| *hi < t);
            (false, prev.map_or(cap.clone(), |hi| rational::min(&(t - hi), cap)))
        }
    }
}
