//! Partition certificates: families of equal-measure connected subsets that
//! cover almost every point of the graph the same number of times.

use num_traits::Zero;

use crate::chords::walk_window;
use crate::cover::{compute_double_cover, euler_circuit};
use crate::error::{ChordError, Result};
use crate::metric::{ConnSubset, MetricGraph};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionCertificate {
    pub subsets: Vec<ConnSubset>,
    pub r: Rational,
    pub n: u32,
}

/// True when every subset has measure `r` and, away from finitely many
/// points, every point of `g` lies in exactly `n` subsets.
pub fn verify_partition(g: &MetricGraph, cert: &PartitionCertificate) -> bool {
    if cert.n == 0 || cert.subsets.iter().any(|u| u.measure() != cert.r || !u.is_connected(g)) {
        return false;
    }
    g.edges().all(|e| {
        let mut cuts = vec![Rational::zero(), rational::one()];
        for u in &cert.subsets {
            for (lo, hi) in u.segments_on(e) {
                cuts.push(lo.clone());
                cuts.push(hi.clone());
            }
        }
        cuts.sort();
        cuts.dedup();
        cuts.windows(2).all(|w| {
            let covering = cert
                .subsets
                .iter()
                .filter(|u| u.segments_on(e).iter().any(|(lo, hi)| *lo <= w[0] && w[1] <= *hi))
                .count();
            covering == cert.n as usize
        })
    })
}

/// Arcs of length `1/k` cut from the paths of a double cover: every point is
/// covered twice.
pub fn construct_partition_1k(g: &MetricGraph, k: u32) -> Result<PartitionCertificate> {
    if k == 0 {
        return Err(ChordError::precondition("k must be a positive integer"));
    }
    let r = rational::q(1, k as i64);
    let mut subsets = Vec::new();
    for path in compute_double_cover(g)?.paths() {
        for i in 0..path.len() as i64 * k as i64 {
            subsets.push(walk_window(g, path.steps(), &(&r * Rational::from_integer(i.into())), &r)?);
        }
    }
    Ok(PartitionCertificate { subsets, r, n: 2 })
}

/// `k` arcs of equal length cut from an Euler circuit: every point is covered
/// once.
pub fn construct_partition_euler(g: &MetricGraph, k: u32) -> Result<PartitionCertificate> {
    if k == 0 {
        return Err(ChordError::precondition("k must be a positive integer"));
    }
    let circuit = euler_circuit(g)?;
    let r = Rational::from_integer(circuit.len().into()) / Rational::from_integer(k.into());
    let subsets = (0..k)
        .map(|i| walk_window(g, circuit.steps(), &(&r * Rational::from_integer(i.into())), &r))
        .collect::<Result<_>>()?;
    Ok(PartitionCertificate { subsets, r, n: 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::EdgeId;
    use crate::rational::{int, q};

    fn seg(g: &MetricGraph, lo: Rational, hi: Rational) -> ConnSubset {
        ConnSubset::segment(g, EdgeId(0), lo, hi).unwrap()
    }

    #[test]
    fn verification() {
        let g = MetricGraph::interval();
        let thirds = PartitionCertificate {
            subsets: vec![seg(&g, int(0), q(1, 3)), seg(&g, q(1, 3), q(2, 3)), seg(&g, q(2, 3), int(1))],
            r: q(1, 3),
            n: 1,
        };
        assert!(verify_partition(&g, &thirds));
        let half = PartitionCertificate { subsets: vec![seg(&g, int(0), q(1, 2))], r: q(1, 2), n: 1 };
        assert!(!verify_partition(&g, &half));
        let th = MetricGraph::theta();
        let edges = PartitionCertificate {
            subsets: th.edges().map(|e| ConnSubset::whole_edge(&th, e)).collect(),
            r: int(1),
            n: 1,
        };
        assert!(verify_partition(&th, &edges));
        let wrong_r = PartitionCertificate { r: q(1, 2), ..edges };
        assert!(!verify_partition(&th, &wrong_r));
    }

    #[test]
    fn reciprocal_families() {
        for (g, k, count) in [
            (MetricGraph::triangle(), 2, 12),
            (MetricGraph::figure_eight(), 1, 4),
            (MetricGraph::theta(), 3, 18),
        ] {
            let cert = construct_partition_1k(&g, k).unwrap();
            assert_eq!((cert.subsets.len(), cert.n), (count, 2));
            assert!(verify_partition(&g, &cert));
        }
    }

    #[test]
    fn euler_families() {
        for (g, k, r) in [
            (MetricGraph::figure_eight(), 4, q(1, 2)),
            (MetricGraph::triangle(), 1, int(3)),
            (MetricGraph::triangle(), 3, int(1)),
        ] {
            let cert = construct_partition_euler(&g, k).unwrap();
            assert_eq!((cert.subsets.len(), cert.r.clone(), cert.n), (k as usize, r, 1));
            assert!(verify_partition(&g, &cert));
        }
        assert!(construct_partition_euler(&MetricGraph::theta(), 2).is_err());
    }
}
