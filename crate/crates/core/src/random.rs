//! Seeded random instances: graphs, connected subsets and step functions.
//! All coordinates are multiples of `1/grain` so instances stay small.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::metric::{ClosedSet, ConnSubset, Dir, EdgeId, GraphPoint, MetricGraph};
use crate::rational::{q, Rational};
use crate::step::{integral_graph, Step1d, StepFunction};

fn build(vertices: usize, edges: &[(usize, usize)]) -> MetricGraph {
    let names: Vec<String> = (0..vertices).map(|i| format!("v{i}")).collect();
    let list = edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| (format!("e{i}"), names[u].clone(), names[v].clone()));
    MetricGraph::new(names.clone(), list).expect("generated graphs are connected")
}

/// A connected multigraph (loops and parallel edges allowed) with every
/// degree at least 2 and between 1 and `max_edges` edges.
pub fn random_min_degree2_graph<R: Rng>(rng: &mut R, max_edges: usize) -> MetricGraph {
    assert!(max_edges >= 1);
    loop {
        let n = rng.gen_range(1..=max_edges.min(6));
        let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let extra = rng.gen_range(0..=max_edges.saturating_sub(edges.len()));
        for _ in 0..extra {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            edges.push((u, v));
            degree[u] += 1;
            degree[v] += 1;
        }
        while let Some(u) = (0..n).find(|&u| degree[u] < 2) {
            let v = rng.gen_range(0..n);
            edges.push((u, v));
            degree[u] += 1;
            degree[v] += 1;
        }
        if edges.len() <= max_edges {
            edges.shuffle(rng);
            return build(n, &edges);
        }
    }
}

/// A connected graph with all degrees even, traced by a random closed walk of
/// at most `max_edges` steps.
pub fn random_euler_graph<R: Rng>(rng: &mut R, max_edges: usize) -> MetricGraph {
    let m = rng.gen_range(1..=max_edges);
    let pool = rng.gen_range(1..=m.min(6));
    let mut walk: Vec<usize> = (0..m).map(|_| rng.gen_range(0..pool)).collect();
    walk[0] = 0;
    let mut ids: Vec<usize> = Vec::new();
    for &v in &walk {
        if !ids.contains(&v) {
            ids.push(v);
        }
    }
    let idx = |v: usize| ids.iter().position(|&w| w == v).unwrap();
    let edges: Vec<(usize, usize)> = (0..m).map(|i| (idx(walk[i]), idx(walk[(i + 1) % m]))).collect();
    build(ids.len(), &edges)
}

pub fn random_point<R: Rng>(rng: &mut R, g: &MetricGraph, grain: i64) -> GraphPoint {
    let e = EdgeId(rng.gen_range(0..g.edge_count()));
    GraphPoint::on_edge(g, e, q(rng.gen_range(0..=grain), grain)).expect("in range")
}

/// A random closed connected subset of measure exactly `r` (a multiple of
/// `1/grain`, at most `|E|`), grown outwards from a random grid point.
pub fn random_conn_subset<R: Rng>(rng: &mut R, g: &MetricGraph, r: &Rational, grain: i64) -> ConnSubset {
    let start = random_point(rng, g, grain);
    let mut set = ClosedSet::point(g, &start);
    let one = Rational::from_integer(1.into());
    while set.measure() < *r {
        let mut tips = Vec::new();
        for v in set.vertices().iter().copied() {
            for &e in g.incident(v) {
                if g.tail(e) == v {
                    tips.push((e, Rational::zero(), Dir::Up));
                }
                if g.head(e) == v {
                    tips.push((e, one.clone(), Dir::Down));
                }
            }
        }
        for s in set.segments() {
            if !s.lo.is_zero() {
                tips.push((s.edge, s.lo.clone(), Dir::Down));
            }
            if s.hi != one {
                tips.push((s.edge, s.hi.clone(), Dir::Up));
            }
        }
        let free: Vec<(EdgeId, Rational, Dir, Rational)> = tips
            .into_iter()
            .filter_map(|(e, t, dir)| {
                let cap = match dir {
                    Dir::Up => &one - &t,
                    Dir::Down => t.clone(),
                };
                let room = outside_run(&set, e, &t, dir, &cap);
                (room > Rational::zero()).then_some((e, t, dir, room))
            })
            .collect();
        let (e, t, dir, room) = free.choose(rng).expect("a set below full measure can grow").clone();
        let want = q(rng.gen_range(1..=grain), grain);
        let mut step = if want < room { want } else { room };
        let missing = r - set.measure();
        if missing < step {
            step = missing;
        }
        set = set.grow(g, e, &t, dir, &step).expect("step stays on the edge");
    }
    ConnSubset::new(g, set).expect("growth keeps the set connected")
}

/// Length of the stretch from `t` in `dir` (up to `cap`) that lies outside `set`.
fn outside_run(set: &ClosedSet, e: EdgeId, t: &Rational, dir: Dir, cap: &Rational) -> Rational {
    let segs = set.segments_on(e);
    let blocked = match dir {
        Dir::Up => segs.iter().any(|(lo, hi)| lo <= t && t < hi),
        Dir::Down => segs.iter().any(|(lo, hi)| lo < t && t <= hi),
    };
    if blocked {
        return Rational::zero();
    }
    let gap = match dir {
        Dir::Up => segs.iter().map(|(lo, _)| lo - t).filter(|d| *d > Rational::zero()).min(),
        Dir::Down => segs.iter().map(|(_, hi)| t - hi).filter(|d| *d > Rational::zero()).min(),
    };
    match gap {
        Some(d) if d < *cap => d,
        _ => cap.clone(),
    }
}

/// Step function on `[0, 1]` with up to `max_pieces` pieces, breakpoints on
/// the `1/grain` grid and integer values in `[-range, range]`.
pub fn random_step<R: Rng>(rng: &mut R, max_pieces: usize, grain: i64, range: i64) -> Step1d {
    let mut cuts: Vec<i64> = (0..rng.gen_range(0..max_pieces)).map(|_| rng.gen_range(1..grain)).collect();
    cuts.sort_unstable();
    cuts.dedup();
    let mut breaks = vec![Rational::zero()];
    breaks.extend(cuts.iter().map(|&c| q(c, grain)));
    breaks.push(q(1, 1));
    let values = (1..breaks.len()).map(|_| q(rng.gen_range(-range..=range), 1)).collect();
    Step1d::new(breaks, values).expect("breakpoints increase")
}

/// Random step function on `[0, 1]` with integral exactly 1.
pub fn random_unit_step<R: Rng>(rng: &mut R, max_pieces: usize, grain: i64, range: i64) -> Step1d {
    let f = random_step(rng, max_pieces, grain, range);
    let shift = Step1d::constant(q(1, 1), q(1, 1) - f.integral());
    f.combine(&q(1, 1), &shift, &q(1, 1)).expect("same domain")
}

/// Random step function on `g` with integral exactly 0.
pub fn random_zero_mean<R: Rng>(rng: &mut R, g: &MetricGraph, max_pieces: usize, grain: i64, range: i64) -> StepFunction {
    let per_edge = (0..g.edge_count()).map(|_| random_step(rng, max_pieces, grain, range)).collect();
    let f = StepFunction::new(g, per_edge).expect("one function per edge");
    let mean = integral_graph(&f) / Rational::from_integer(g.edge_count().into());
    let shift = StepFunction::per_edge_constant(g, &vec![mean; g.edge_count()]).expect("one value per edge");
    f.combine(&q(1, 1), &shift, &q(-1, 1)).expect("same graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_meet_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let g = random_min_degree2_graph(&mut rng, 8);
            assert!(g.min_degree() >= 2 && g.edge_count() <= 8);
            let e = random_euler_graph(&mut rng, 10);
            assert!(e.is_euler() && e.edge_count() <= 10);
            let r = q(rng.gen_range(0..=12 * g.edge_count() as i64), 12);
            let u = random_conn_subset(&mut rng, &g, &r, 12);
            assert_eq!(u.measure(), r);
            assert_eq!(integral_graph(&random_zero_mean(&mut rng, &g, 4, 12, 5)), Rational::zero());
            assert_eq!(random_unit_step(&mut rng, 5, 12, 5).integral(), q(1, 1));
        }
    }
}
