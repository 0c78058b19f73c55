//! Metric graphs: unit-interval edges, points, closed connected subsets,
//! geodesic distance and the subset metric.

mod distance;
mod graph;
mod point;
mod subset;

pub use distance::{geodesic, hull, measure, metric_d, metric_d_xr, point_distance, set_distance, set_geodesic, Geodesic};
pub use graph::{EdgeData, EdgeId, MetricGraph, VertexId};
pub use point::{GraphPoint, Piece};
pub use subset::{is_connected, ClosedSet, ConnSubset, Dir, EdgeSegment};

#[cfg(test)]
mod tests;
