//! Oracles shared by the integration tests. They use only the graph's shape
//! and the raw pieces of step functions, never the solvers under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use chord_core::metric::{ClosedSet, EdgeId, MetricGraph};
use chord_core::rational::{int, q, Rational};
use chord_core::step::StepFunction;

/// Edge lists `(u, v)` with `u <= v`, sorted.
pub type Shape = Vec<(usize, usize)>;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut next = p.clone();
            next.insert(pos, n - 1);
            out.push(next);
        }
    }
    out
}

fn canonical(shape: &Shape, perms: &[Vec<usize>]) -> Shape {
    perms
        .iter()
        .map(|p| {
            let mut s: Shape = shape
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (p[u], p[v]);
                    (a.min(b), a.max(b))
                })
                .collect();
            s.sort_unstable();
            s
        })
        .min()
        .expect("at least one permutation")
}

fn shape_connected(n: usize, shape: &Shape) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(u, v) in shape {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (0..n).all(|x| find(&mut parent, x) == root)
}

/// All connected multigraphs (loops and parallel edges allowed) with at most
/// `max_edges` edges and every vertex of degree at least 2, one per
/// isomorphism class.
pub fn multigraphs_min_degree2(max_edges: usize) -> Vec<MetricGraph> {
    let mut out = Vec::new();
    for n in 1..=max_edges {
        let perms = permutations(n);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
        let mut seen = BTreeSet::new();
        for m in n..=max_edges {
            let mut pick = Vec::with_capacity(m);
            multisets(pairs.len(), m, 0, &mut pick, &mut |pick| {
                let shape: Shape = pick.iter().map(|&i| pairs[i]).collect();
                let mut deg = vec![0usize; n];
                for &(u, v) in &shape {
                    deg[u] += 1;
                    deg[v] += 1;
                }
                if deg.iter().all(|&d| d >= 2) && shape_connected(n, &shape) {
                    seen.insert(canonical(&shape, &perms));
                }
            });
        }
        out.extend(seen.into_iter().map(|s| shape_to_graph(n, &s)));
    }
    out
}

/// Nondecreasing index sequences of length `m` below `n`.
fn multisets(n: usize, m: usize, from: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if cur.len() == m {
        visit(cur);
        return;
    }
    for i in from..n {
        cur.push(i);
        multisets(n, m, i, cur, visit);
        cur.pop();
    }
}

pub fn shape_to_graph(n: usize, shape: &Shape) -> MetricGraph {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    MetricGraph::new(
        names.clone(),
        shape.iter().enumerate().map(|(i, &(u, v))| (format!("e{i}"), names[u].clone(), names[v].clone())),
    )
    .expect("enumerated graphs are valid")
}

/// Integral of `f` over `[lo, hi]` of edge `e`, summed piece by piece.
pub fn edge_integral(f: &StepFunction, e: EdgeId, lo: &Rational, hi: &Rational) -> Rational {
    let mut total = int(0);
    for (a, b, v) in f.on_edge(e).pieces() {
        let from = if a > lo { a } else { lo };
        let to = if b < hi { b } else { hi };
        if from < to {
            total += v * (to - from);
        }
    }
    total
}

/// Integral of `f` over a closed set, from its segments.
pub fn set_integral(f: &StepFunction, s: &ClosedSet) -> Rational {
    s.segments().map(|seg| edge_integral(f, seg.edge, &seg.lo, &seg.hi)).sum()
}

/// Connectivity of a union of segments, by union-find over segments and
/// vertices.
pub fn segments_connected(g: &MetricGraph, s: &ClosedSet) -> bool {
    let segs: Vec<_> = s.segments().collect();
    let nv = g.vertex_count();
    let total = segs.len() + nv;
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let join = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (x, y) = (find(p, a), find(p, b));
        p[x] = y;
    };
    for (i, seg) in segs.iter().enumerate() {
        if seg.lo == int(0) {
            join(&mut parent, i, segs.len() + g.tail(seg.edge).0);
        }
        if seg.hi == int(1) {
            join(&mut parent, i, segs.len() + g.head(seg.edge).0);
        }
    }
    let mut members: Vec<usize> = (0..segs.len()).collect();
    members.extend(s.vertices().iter().map(|v| segs.len() + v.0));
    if members.is_empty() {
        return false;
    }
    let root = find(&mut parent, members[0]);
    members.iter().all(|&m| find(&mut parent, m) == root)
}

/// Cell `i` of edge `e` is `[i/grain, (i+1)/grain]`.
pub type Cell = (usize, usize);

/// Every connected union of exactly `k` grid cells on which `f` integrates
/// to zero, up to `budget` connected sets examined. `None` when the budget
/// runs out.
pub fn grid_zero_sets(g: &MetricGraph, f: &StepFunction, grain: usize, k: usize, budget: usize) -> Option<Vec<BTreeSet<Cell>>> {
    let cells: Vec<Cell> = g.edges().flat_map(|e| (0..grain).map(move |i| (e.0, i))).collect();
    let index: BTreeMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut at_vertex: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in g.edges() {
        at_vertex.entry(g.tail(e).0).or_default().push(index[&(e.0, 0)]);
        at_vertex.entry(g.head(e).0).or_default().push(index[&(e.0, grain - 1)]);
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cells.len()];
    for (i, &(e, c)) in cells.iter().enumerate() {
        if c + 1 < grain {
            let j = index[&(e, c + 1)];
            adj[i].insert(j);
            adj[j].insert(i);
        }
    }
    for list in at_vertex.values() {
        for &a in list {
            for &b in list {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
    }
    let weight: Vec<Rational> = cells
        .iter()
        .map(|&(e, c)| edge_integral(f, EdgeId(e), &q(c as i64, grain as i64), &q(c as i64 + 1, grain as i64)))
        .collect();

    let mut found = Vec::new();
    let mut examined = 0usize;
    // Connected k-sets, each produced once with its smallest cell as root.
    for root in 0..cells.len() {
        let mut stack = vec![(vec![root], adj[root].iter().copied().filter(|&x| x > root).collect::<BTreeSet<_>>())];
        while let Some((set, ext)) = stack.pop() {
            if set.len() == k {
                examined += 1;
                if examined > budget {
                    return None;
                }
                if set.iter().map(|&i| &weight[i]).sum::<Rational>() == int(0) {
                    found.push(set.iter().map(|&i| cells[i]).collect());
                }
                continue;
            }
            let mut ext = ext;
            while let Some(&w) = ext.iter().next() {
                ext.remove(&w);
                let mut next_ext = ext.clone();
                for &u in &adj[w] {
                    if u > root && !set.contains(&u) && !set.iter().any(|&s| adj[s].contains(&u)) {
                        next_ext.insert(u);
                    }
                }
                let mut next = set.clone();
                next.push(w);
                stack.push((next, next_ext));
            }
        }
    }
    Some(found)
}

/// The cell set of `s` when all its endpoints lie on the grid.
pub fn cells_of(s: &ClosedSet, grain: usize) -> Option<BTreeSet<Cell>> {
    let mut out = BTreeSet::new();
    let scale = Rational::from_integer((grain as i64).into());
    for seg in s.segments() {
        let (lo, hi) = (&seg.lo * &scale, &seg.hi * &scale);
        if !lo.is_integer() || !hi.is_integer() {
            return None;
        }
        let (lo, hi) = (lo.to_integer(), hi.to_integer());
        let mut c = lo.clone();
        while c < hi {
            out.insert((seg.edge.0, c.to_string().parse::<usize>().ok()?));
            c += 1;
        }
    }
    Some(out)
}
