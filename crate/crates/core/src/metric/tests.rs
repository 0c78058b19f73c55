use std::collections::{BinaryHeap, HashMap};
use std::cmp::Reverse;

use proptest::prelude::*;

use super::*;
use crate::rational::{int, q, Rational};

fn seg(g: &MetricGraph, e: &str, lo: Rational, hi: Rational) -> EdgeSegment {
    EdgeSegment::new(g.edge_by_name(e).unwrap(), lo, hi)
}

fn conn(g: &MetricGraph, segs: &[(&str, Rational, Rational)]) -> ConnSubset {
    ConnSubset::from_segments(g, segs.iter().map(|(e, lo, hi)| seg(g, e, lo.clone(), hi.clone()))).unwrap()
}

fn pt(g: &MetricGraph, e: &str, t: Rational) -> GraphPoint {
    GraphPoint::on_edge(g, g.edge_by_name(e).unwrap(), t).unwrap()
}

#[test]
fn measure_examples() {
    let g = MetricGraph::interval();
    assert_eq!(ConnSubset::whole_graph(&g).measure(), int(1));
    assert_eq!(ConnSubset::point(&g, &pt(&g, "a", q(1, 3))).measure(), int(0));
    let t = MetricGraph::theta();
    let u = conn(&t, &[("a", q(0, 1), q(1, 2)), ("b", q(0, 1), q(1, 4))]);
    assert_eq!(u.measure(), q(3, 4));
}

#[test]
fn connectivity_examples() {
    let g = MetricGraph::interval();
    assert!(is_connected(&g, &[seg(&g, "a", q(0, 1), q(1, 2))]).unwrap());
    let split = [seg(&g, "a", q(0, 1), q(1, 4)), seg(&g, "a", q(3, 4), q(1, 1))];
    assert!(!is_connected(&g, &split).unwrap());
    let l = MetricGraph::single_loop();
    let around = [seg(&l, "a", q(0, 1), q(1, 4)), seg(&l, "a", q(3, 4), q(1, 1))];
    assert!(is_connected(&l, &around).unwrap());
}

#[test]
fn endpoints_canonicalise_to_vertices() {
    let g = MetricGraph::theta();
    let a0 = pt(&g, "a", q(0, 1));
    let b0 = pt(&g, "b", q(0, 1));
    assert_eq!(a0, b0);
    let s1 = ClosedSet::segment(&g, g.edge_by_name("a").unwrap(), q(0, 1), q(0, 1)).unwrap();
    let s2 = ClosedSet::point(&g, &b0);
    assert_eq!(s1, s2);
}

#[test]
fn point_distance_examples() {
    let g = MetricGraph::interval();
    assert_eq!(point_distance(&g, &pt(&g, "a", q(1, 4)), &pt(&g, "a", q(3, 4))), q(1, 2));
    let t = MetricGraph::theta();
    assert_eq!(point_distance(&t, &pt(&t, "a", q(1, 2)), &pt(&t, "b", q(1, 2))), int(1));
    let l = MetricGraph::single_loop();
    assert_eq!(point_distance(&l, &pt(&l, "a", q(1, 8)), &pt(&l, "a", q(7, 8))), q(1, 4));
}

#[test]
fn hull_examples() {
    let g = MetricGraph::interval();
    let a = conn(&g, &[("a", q(0, 1), q(1, 4))]);
    assert_eq!(hull(&g, &a, &a).unwrap(), a);
    let b = conn(&g, &[("a", q(3, 4), q(1, 1))]);
    assert_eq!(hull(&g, &a, &b).unwrap(), ConnSubset::whole_graph(&g));
    let t = MetricGraph::theta();
    let ea = ConnSubset::whole_edge(&t, EdgeId(0));
    let eb = ConnSubset::whole_edge(&t, EdgeId(1));
    let h = hull(&t, &ea, &eb).unwrap();
    assert_eq!(h.as_set(), &ea.union(&t, &eb));
}

#[test]
fn metric_examples() {
    let g = MetricGraph::interval();
    let a = conn(&g, &[("a", q(0, 1), q(1, 2))]);
    let b = conn(&g, &[("a", q(1, 2), q(1, 1))]);
    assert_eq!(metric_d(&g, &a, &a).unwrap(), int(0));
    assert_eq!(metric_d(&g, &a, &b).unwrap(), int(1));
    let t = MetricGraph::theta();
    let ea = ConnSubset::whole_edge(&t, EdgeId(0));
    let eb = ConnSubset::whole_edge(&t, EdgeId(1));
    assert_eq!(metric_d(&t, &ea, &eb).unwrap(), int(2));
}

#[test]
fn the_two_metrics_disagree_on_disjoint_sets() {
    let g = MetricGraph::interval();
    let a = conn(&g, &[("a", q(0, 1), q(1, 4))]);
    let b = conn(&g, &[("a", q(3, 4), q(1, 1))]);
    let half = conn(&g, &[("a", q(0, 1), q(1, 2))]);
    assert_eq!(metric_d_xr(&g, &half, &half, &q(1, 2)).unwrap(), int(0));
    assert_eq!(metric_d_xr(&g, &a, &b, &q(1, 4)).unwrap(), q(1, 2));
    assert_eq!(metric_d(&g, &a, &b).unwrap(), int(1));
    assert!(metric_d_xr(&g, &a, &half, &q(1, 4)).is_err());
}

#[test]
fn shrink_and_grow_respect_closure() {
    let g = MetricGraph::theta();
    let a = g.edge_by_name("a").unwrap();
    let whole = ClosedSet::whole_edge(&g, a);
    // Peeling from the tail vertex drops it.
    let s = whole.shrink(&g, a, &q(0, 1), Dir::Up, &q(1, 4)).unwrap();
    assert_eq!(s, ClosedSet::segment(&g, a, q(1, 4), q(1, 1)).unwrap());
    assert!(!s.vertices().contains(&g.tail(a)));
    // Cutting into the middle of a segment keeps the start point.
    let s = whole.shrink(&g, a, &q(1, 2), Dir::Down, &q(1, 4)).unwrap();
    assert_eq!(s.measure(), q(3, 4));
    assert_eq!(s.components(&g).len(), 2);
    // A vertex shared with another edge survives.
    let two = whole.union(&g, &ClosedSet::segment(&g, EdgeId(1), q(0, 1), q(1, 2)).unwrap());
    let s = two.shrink(&g, a, &q(0, 1), Dir::Up, &q(1, 1)).unwrap();
    assert!(s.vertices().contains(&g.tail(a)));
    assert_eq!(s.measure(), q(1, 2));
    let grown = s.grow(&g, a, &q(1, 1), Dir::Down, &q(1, 3)).unwrap();
    assert_eq!(grown.measure(), q(5, 6));
}

/// Dijkstra on the graph with each edge split into 64 unit cells.
fn grid_distance(g: &MetricGraph, p: (usize, u32), r: (usize, u32)) -> Rational {
    const N: u32 = 64;
    // Node ids: vertices by index, interior grid points by (edge, k).
    #[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
    enum Node {
        V(usize),
        I(usize, u32),
    }
    let node = |e: usize, k: u32| -> Node {
        let ed = g.edge(EdgeId(e));
        if k == 0 {
            Node::V(ed.tail.0)
        } else if k == N {
            Node::V(ed.head.0)
        } else {
            Node::I(e, k)
        }
    };
    let mut adj: HashMap<Node, Vec<Node>> = HashMap::new();
    for e in 0..g.edge_count() {
        for k in 0..N {
            let (x, y) = (node(e, k), node(e, k + 1));
            adj.entry(x).or_default().push(y);
            adj.entry(y).or_default().push(x);
        }
    }
    let src = node(p.0, p.1);
    let dst = node(r.0, r.1);
    let mut dist: HashMap<Node, u32> = HashMap::from([(src, 0)]);
    let mut heap = BinaryHeap::from([Reverse((0u32, src))]);
    while let Some(Reverse((d, v))) = heap.pop() {
        if v == dst {
            return q(d as i64, N as i64);
        }
        if dist.get(&v).is_some_and(|&b| b < d) {
            continue;
        }
        for &w in &adj[&v] {
            let nd = d + 1;
            if dist.get(&w).is_none_or(|&b| nd < b) {
                dist.insert(w, nd);
                heap.push(Reverse((nd, w)));
            }
        }
    }
    unreachable!("graph is connected")
}

fn small_graph() -> impl Strategy<Value = MetricGraph> {
    (1usize..5, proptest::collection::vec((0usize..5, 0usize..5), 1..7)).prop_filter_map(
        "connected",
        |(n, pairs)| {
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let edges = pairs
                .iter()
                .enumerate()
                .map(|(i, (a, b))| (format!("e{i}"), names[a % n].clone(), names[b % n].clone()));
            MetricGraph::new(names.clone(), edges).ok()
        },
    )
}

proptest! {
    #[test]
    fn point_distance_matches_grid_dijkstra(
        g in small_graph(),
        e1 in 0usize..8, k1 in 0u32..=64, e2 in 0usize..8, k2 in 0u32..=64,
    ) {
        let (e1, e2) = (e1 % g.edge_count(), e2 % g.edge_count());
        let p = GraphPoint::on_edge(&g, EdgeId(e1), q(k1 as i64, 64)).unwrap();
        let r = GraphPoint::on_edge(&g, EdgeId(e2), q(k2 as i64, 64)).unwrap();
        prop_assert_eq!(point_distance(&g, &p, &r), grid_distance(&g, (e1, k1), (e2, k2)));
    }

    #[test]
    fn canonicalisation_is_idempotent(
        g in small_graph(),
        raw in proptest::collection::vec((0usize..8, 0i64..=12, 0i64..=12), 1..6),
    ) {
        let segs: Vec<EdgeSegment> = raw.iter().map(|&(e, a, b)| {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            EdgeSegment::new(EdgeId(e % g.edge_count()), q(lo, 12), q(hi, 12))
        }).collect();
        let once = ClosedSet::from_segments(&g, segs).unwrap();
        let twice = ClosedSet::from_segments(&g, once.segments()).unwrap();
        // Isolated vertices are not segments; add them back before comparing.
        let twice = once.vertices().iter().fold(twice, |acc, &v| acc.union(&g, &ClosedSet::point(&g, &GraphPoint::Vertex(v))));
        prop_assert_eq!(once, twice);
    }
}
