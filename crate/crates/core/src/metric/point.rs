use num_traits::{One, Zero};

use super::graph::{EdgeId, MetricGraph, VertexId};
use crate::error::{ChordError, Result};
use crate::rational::Rational;

/// A point of a metric graph.
///
/// Edge endpoints are always stored as [`GraphPoint::Vertex`], so two
/// descriptions of the same point compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphPoint {
    Vertex(VertexId),
    /// Interior point, `0 < t < 1`.
    Interior { edge: EdgeId, t: Rational },
}

impl GraphPoint {
    /// The point at parameter `t` of edge `e`.
    pub fn on_edge(g: &MetricGraph, e: EdgeId, t: Rational) -> Result<Self> {
        if t < Rational::zero() || t > Rational::one() {
            return Err(ChordError::precondition(format!(
                "edge parameter {t} outside [0, 1]"
            )));
        }
        Ok(Self::on_edge_unchecked(g, e, t))
    }

    pub(crate) fn on_edge_unchecked(g: &MetricGraph, e: EdgeId, t: Rational) -> Self {
        if t.is_zero() {
            GraphPoint::Vertex(g.tail(e))
        } else if t.is_one() {
            GraphPoint::Vertex(g.head(e))
        } else {
            GraphPoint::Interior { edge: e, t }
        }
    }

    pub fn vertex(&self) -> Option<VertexId> {
        match self {
            GraphPoint::Vertex(v) => Some(*v),
            GraphPoint::Interior { .. } => None,
        }
    }

    /// Ways to leave the point to reach a vertex: `(vertex, cost, edge, from, to)`.
    pub(crate) fn exits(&self, g: &MetricGraph) -> Vec<Exit> {
        match self {
            GraphPoint::Vertex(v) => vec![Exit {
                vertex: *v,
                cost: Rational::zero(),
                piece: None,
            }],
            GraphPoint::Interior { edge, t } => vec![
                Exit {
                    vertex: g.tail(*edge),
                    cost: t.clone(),
                    piece: Some(Piece::new(*edge, t.clone(), Rational::zero())),
                },
                Exit {
                    vertex: g.head(*edge),
                    cost: Rational::one() - t,
                    piece: Some(Piece::new(*edge, t.clone(), Rational::one())),
                },
            ],
        }
    }
}

pub(crate) struct Exit {
    pub vertex: VertexId,
    pub cost: Rational,
    pub piece: Option<Piece>,
}

/// A directed stretch of one edge, from parameter `from` to parameter `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub edge: EdgeId,
    pub from: Rational,
    pub to: Rational,
}

impl Piece {
    pub fn new(edge: EdgeId, from: Rational, to: Rational) -> Self {
        Piece { edge, from, to }
    }

    pub fn whole(edge: EdgeId, forward: bool) -> Self {
        if forward {
            Piece::new(edge, Rational::zero(), Rational::one())
        } else {
            Piece::new(edge, Rational::one(), Rational::zero())
        }
    }

    pub fn length(&self) -> Rational {
        if self.to >= self.from {
            &self.to - &self.from
        } else {
            &self.from - &self.to
        }
    }

    pub fn forward(&self) -> bool {
        self.to >= self.from
    }

    pub fn reversed(&self) -> Self {
        Piece::new(self.edge, self.to.clone(), self.from.clone())
    }

    /// Parameter reached after travelling `s` along the piece.
    pub fn at(&self, s: &Rational) -> Rational {
        if self.forward() {
            &self.from + s
        } else {
            &self.from - s
        }
    }
}
