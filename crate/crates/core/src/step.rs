//! Exact rational step functions on intervals and on metric graphs, and the
//! integration functionals over subsets and edge walks.

use num_traits::{Signed, Zero};

use crate::error::{ChordError, Result};
use crate::metric::{ClosedSet, EdgeId, MetricGraph};
use crate::rational::{self, Rational};

/// Piecewise-constant function on `[0, len]`.
///
/// `breaks = [0 = b0 < b1 < ... < bm = len]`, and `values[i]` holds on
/// `[b_i, b_{i+1})` (the last piece is closed). Values at breakpoints never
/// matter for integrals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step1d {
    breaks: Vec<Rational>,
    values: Vec<Rational>,
}

impl Step1d {
    pub fn new(breaks: Vec<Rational>, values: Vec<Rational>) -> Result<Self> {
        if breaks.len() < 2 || values.len() + 1 != breaks.len() {
            return Err(ChordError::precondition(
                "a step function needs m+1 breakpoints for m values",
            ));
        }
        if !breaks[0].is_zero() {
            return Err(ChordError::precondition("breakpoints must start at 0"));
        }
        if breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ChordError::precondition("breakpoints must strictly increase"));
        }
        Ok(Step1d { breaks, values }.merged())
    }

    /// Builds from `(from, to, value)` pieces that tile `[0, len]` in order.
    pub fn from_pieces(pieces: &[(Rational, Rational, Rational)]) -> Result<Self> {
        let Some(first) = pieces.first() else {
            return Err(ChordError::precondition("no pieces"));
        };
        let mut breaks = vec![first.0.clone()];
        let mut values = Vec::new();
        for (from, to, v) in pieces {
            if breaks.last() != Some(from) {
                return Err(ChordError::precondition(format!(
                    "pieces are not contiguous at {from}"
                )));
            }
            breaks.push(to.clone());
            values.push(v.clone());
        }
        Self::new(breaks, values)
    }

    pub fn constant(len: Rational, value: Rational) -> Self {
        Step1d {
            breaks: vec![Rational::zero(), len],
            values: vec![value],
        }
    }

    /// `value` on `[lo, hi)` and zero elsewhere on `[0, len]`.
    pub fn indicator(len: Rational, lo: Rational, hi: Rational, value: Rational) -> Result<Self> {
        let mut breaks = vec![Rational::zero()];
        let mut values = Vec::new();
        if lo > Rational::zero() {
            breaks.push(lo.clone());
            values.push(Rational::zero());
        }
        breaks.push(hi.clone());
        values.push(value);
        if hi < len {
            breaks.push(len);
            values.push(Rational::zero());
        }
        Self::new(breaks, values)
    }

    /// Drops breakpoints between equal values.
    fn merged(self) -> Self {
        let mut breaks = vec![self.breaks[0].clone()];
        let mut values: Vec<Rational> = Vec::new();
        for (i, v) in self.values.into_iter().enumerate() {
            if values.last() == Some(&v) {
                *breaks.last_mut().unwrap() = self.breaks[i + 1].clone();
            } else {
                values.push(v);
                breaks.push(self.breaks[i + 1].clone());
            }
        }
        Step1d { breaks, values }
    }

    pub fn len(&self) -> &Rational {
        self.breaks.last().unwrap()
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breaks
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn pieces(&self) -> impl Iterator<Item = (&Rational, &Rational, &Rational)> {
        self.breaks
            .windows(2)
            .zip(&self.values)
            .map(|(w, v)| (&w[0], &w[1], v))
    }

    /// Value on the piece containing `x` (right-continuous; last piece closed).
    pub fn value_at(&self, x: &Rational) -> &Rational {
        let i = self.breaks[1..].partition_point(|b| b <= x);
        &self.values[i.min(self.values.len() - 1)]
    }

    pub fn max_abs(&self) -> Rational {
        self.values
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn integral(&self) -> Rational {
        self.pieces()
            .fold(Rational::zero(), |acc, (a, b, v)| acc + (b - a) * v)
    }

    /// `int_lo^hi f`, with `0 <= lo <= hi <= len`.
    pub fn integral_over(&self, lo: &Rational, hi: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (a, b, v) in self.pieces() {
            if b <= lo {
                continue;
            }
            if a >= hi {
                break;
            }
            let l = rational::max(a, lo);
            let h = rational::min(b, hi);
            acc += (h - l) * v;
        }
        acc
    }

    /// `F(x) = int_0^x f` for `x` in `[0, len]`.
    pub fn primitive(&self, x: &Rational) -> Rational {
        self.integral_over(&Rational::zero(), x)
    }

    /// `x -> f(len - x)`.
    pub fn reversed(&self) -> Self {
        let len = self.len().clone();
        let breaks = self.breaks.iter().rev().map(|b| &len - b).collect();
        let values = self.values.iter().rev().cloned().collect();
        Step1d { breaks, values }
    }

    /// Places the functions end to end.
    pub fn concat<'a, I: IntoIterator<Item = &'a Step1d>>(parts: I) -> Result<Self> {
        let mut breaks = vec![Rational::zero()];
        let mut values = Vec::new();
        for p in parts {
            let off = breaks.last().unwrap().clone();
            for (_, b, v) in p.pieces() {
                breaks.push(&off + b);
                values.push(v.clone());
            }
        }
        Self::new(breaks, values)
    }

    /// `alpha * self + beta * other` on a common refinement.
    pub fn combine(&self, alpha: &Rational, other: &Step1d, beta: &Rational) -> Result<Self> {
        if self.len() != other.len() {
            return Err(ChordError::precondition("step functions on different domains"));
        }
        let mut breaks: Vec<Rational> = self.breaks.iter().chain(&other.breaks).cloned().collect();
        breaks.sort();
        breaks.dedup();
        let values = breaks
            .windows(2)
            .map(|w| alpha * self.value_at(&w[0]) + beta * other.value_at(&w[0]))
            .collect();
        Self::new(breaks, values)
    }
}

/// Anything that can be integrated exactly over edge segments.
pub trait EdgeIntegrand {
    /// `int_lo^hi` along edge `e`.
    fn integral_on_edge(&self, e: EdgeId, lo: &Rational, hi: &Rational) -> Rational;
    /// Points of edge `e` where the integrand may change behaviour.
    fn breakpoints_on_edge(&self, e: EdgeId) -> &[Rational];
}

/// A step function on every edge of a metric graph, in the edge's own
/// parameter `t in [0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFunction {
    per_edge: Vec<Step1d>,
}

impl StepFunction {
    pub fn new(g: &MetricGraph, per_edge: Vec<Step1d>) -> Result<Self> {
        if per_edge.len() != g.edge_count() {
            return Err(ChordError::precondition(format!(
                "step function defines {} edges, graph has {}",
                per_edge.len(),
                g.edge_count()
            )));
        }
        if per_edge.iter().any(|s| *s.len() != rational::one()) {
            return Err(ChordError::precondition("every edge function must live on [0, 1]"));
        }
        Ok(StepFunction { per_edge })
    }

    /// One constant value per edge.
    pub fn per_edge_constant(g: &MetricGraph, values: &[Rational]) -> Result<Self> {
        Self::new(
            g,
            values
                .iter()
                .map(|v| Step1d::constant(rational::one(), v.clone()))
                .collect(),
        )
    }

    pub fn zero(g: &MetricGraph) -> Self {
        StepFunction {
            per_edge: (0..g.edge_count())
                .map(|_| Step1d::constant(rational::one(), Rational::zero()))
                .collect(),
        }
    }

    pub fn on_edge(&self, e: EdgeId) -> &Step1d {
        &self.per_edge[e.0]
    }

    pub fn edge_count(&self) -> usize {
        self.per_edge.len()
    }

    /// Largest absolute value over all pieces.
    pub fn max_abs(&self) -> Rational {
        self.per_edge
            .iter()
            .map(Step1d::max_abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn combine(&self, alpha: &Rational, other: &StepFunction, beta: &Rational) -> Result<Self> {
        let per_edge = self
            .per_edge
            .iter()
            .zip(&other.per_edge)
            .map(|(a, b)| a.combine(alpha, b, beta))
            .collect::<Result<_>>()?;
        Ok(StepFunction { per_edge })
    }
}

impl EdgeIntegrand for StepFunction {
    fn integral_on_edge(&self, e: EdgeId, lo: &Rational, hi: &Rational) -> Rational {
        self.per_edge[e.0].integral_over(lo, hi)
    }

    fn breakpoints_on_edge(&self, e: EdgeId) -> &[Rational] {
        self.per_edge[e.0].breakpoints()
    }
}

/// `int_G f`.
pub fn integral_graph(f: &StepFunction) -> Rational {
    f.per_edge.iter().map(Step1d::integral).sum()
}

/// `I_f(U) = int_U f`.
pub fn integral_subset<F: EdgeIntegrand + ?Sized>(f: &F, u: &ClosedSet) -> Rational {
    u.segments()
        .map(|s| f.integral_on_edge(s.edge, &s.lo, &s.hi))
        .sum()
}

/// Sum of whole-edge integrals along a walk, with multiplicity.
pub fn integral_path<F, I>(f: &F, edges: I) -> Rational
where
    F: EdgeIntegrand + ?Sized,
    I: IntoIterator<Item = EdgeId>,
{
    edges
        .into_iter()
        .map(|e| f.integral_on_edge(e, &rational::zero(), &rational::one()))
        .sum()
}
