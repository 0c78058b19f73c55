use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::solve::{euler_chord_solve, graph_chord_solve};
use crate::error::Result;
use crate::metric::{ConnSubset, EdgeId, EdgeSegment, MetricGraph};
use crate::random::random_zero_mean;
use crate::rational::{self, Rational};
use crate::step::{EdgeIntegrand, StepFunction};

/// How membership of `r` in the chord set was probed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvidenceMethod {
    /// Euler circuit windows; always succeeds on Euler graphs.
    Euler,
    /// Double cover plus curve; always succeeds for `r <= 1` without leaves.
    DoubleCover,
    /// Exhaustive search over unions of grid cells.
    Grid,
}

/// Outcome of a batch of random trials. Failures are evidence, never proof,
/// that `r` lies outside the chord set: grid search only sees grid-aligned sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvidenceReport {
    #[serde(with = "rational::serde_str")]
    pub r: Rational,
    pub method: EvidenceMethod,
    pub trials: usize,
    pub successes: usize,
    pub failures: usize,
    /// Grid searches that hit the enumeration budget.
    pub inconclusive: usize,
    /// Trial indices that failed.
    pub failed_trials: Vec<usize>,
}

/// Result of an exhaustive grid search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridOutcome {
    Found(ConnSubset),
    NotFound,
    /// `r` is not a multiple of the cell size.
    OffGrid,
    BudgetExceeded,
}

/// Searches connected unions of grid cells (each edge cut into `grain` equal
/// cells) of total measure `r` for one with zero integral. Enumerates at most
/// `budget` candidate sets.
pub fn grid_search<F: EdgeIntegrand + ?Sized>(
    g: &MetricGraph,
    f: &F,
    r: &Rational,
    grain: usize,
    budget: usize,
) -> GridOutcome {
    let cells_per = Rational::from_integer(grain.into());
    let k = r * &cells_per;
    if !k.is_integer() {
        return GridOutcome::OffGrid;
    }
    let k: usize = match k.to_integer().try_into() {
        Ok(k) => k,
        Err(_) => return GridOutcome::OffGrid,
    };
    let ncells = grain * g.edge_count();
    if k == 0 {
        return GridOutcome::Found(ConnSubset::point(g, &crate::metric::GraphPoint::Vertex(crate::metric::VertexId(0))));
    }
    if k > ncells {
        return GridOutcome::NotFound;
    }
    let cell = |c: usize| {
        let e = EdgeId(c / grain);
        let i = (c % grain) as i64;
        let lo = rational::q(i, grain as i64);
        let hi = rational::q(i + 1, grain as i64);
        (e, lo, hi)
    };
    let weights: Vec<Rational> = (0..ncells)
        .map(|c| {
            let (e, lo, hi) = cell(c);
            f.integral_on_edge(e, &lo, &hi)
        })
        .collect();
    // Two cells touch when they share an edge point or a vertex.
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncells];
    let ends = |c: usize| {
        let e = EdgeId(c / grain);
        let i = c % grain;
        let tail = (i == 0).then(|| g.tail(e));
        let head = (i + 1 == grain).then(|| g.head(e));
        (tail, head)
    };
    for a in 0..ncells {
        for b in a + 1..ncells {
            let same_edge = a / grain == b / grain && b - a == 1;
            let (ta, ha) = ends(a);
            let (tb, hb) = ends(b);
            let share = [ta, ha]
                .iter()
                .flatten()
                .any(|v| [tb, hb].iter().flatten().any(|w| w == v));
            if same_edge || share {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    let mut search = Esu { adj: &adj, weights: &weights, k, budget, seen: 0, found: None };
    for v in 0..ncells {
        let ext: Vec<usize> = adj[v].iter().copied().filter(|&u| u > v).collect();
        let mut sub = vec![v];
        if search.extend(&mut sub, ext, v) {
            break;
        }
    }
    if let Some(cells) = search.found {
        let segs = cells.into_iter().map(|c| {
            let (e, lo, hi) = cell(c);
            EdgeSegment::new(e, lo, hi)
        });
        return GridOutcome::Found(ConnSubset::from_segments(g, segs).expect("adjacent cells connect"));
    }
    if search.seen >= budget {
        GridOutcome::BudgetExceeded
    } else {
        GridOutcome::NotFound
    }
}

/// Enumeration of connected `k`-subsets, each exactly once (the ESU scheme:
/// subsets are rooted at their smallest cell and extended only through
/// exclusive neighbours).
struct Esu<'a> {
    adj: &'a [BTreeSet<usize>],
    weights: &'a [Rational],
    k: usize,
    budget: usize,
    seen: usize,
    found: Option<Vec<usize>>,
}

impl Esu<'_> {
    /// Returns true to stop the search.
    fn extend(&mut self, sub: &mut Vec<usize>, mut ext: Vec<usize>, root: usize) -> bool {
        if sub.len() == self.k {
            self.seen += 1;
            let total: Rational = sub.iter().map(|&c| &self.weights[c]).sum();
            if total.is_zero() {
                self.found = Some(sub.clone());
                return true;
            }
            return self.seen >= self.budget;
        }
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            for &u in &self.adj[w] {
                if u > root
                    && !sub.contains(&u)
                    && !next.contains(&u)
                    && !sub.iter().any(|&s| self.adj[s].contains(&u))
                {
                    next.push(u);
                }
            }
            sub.push(w);
            let stop = self.extend(sub, next, root);
            sub.pop();
            if stop {
                return true;
            }
        }
        false
    }
}

/// Runs `trials` random zero-mean step functions against the strongest
/// available method for `(g, r)`: an Euler window, the double-cover solver,
/// or otherwise a grid search with `grain` cells per edge.
pub fn chord_membership_evidence(
    g: &MetricGraph,
    r: &Rational,
    trials: usize,
    seed: u64,
    grain: usize,
) -> Result<EvidenceReport> {
    let edges = Rational::from_integer(g.edge_count().into());
    let method = if g.is_euler() && *r <= edges && *r >= Rational::zero() {
        EvidenceMethod::Euler
    } else if g.min_degree() >= 2 && *r <= Rational::one() && *r >= Rational::zero() {
        EvidenceMethod::DoubleCover
    } else {
        EvidenceMethod::Grid
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = EvidenceReport {
        r: r.clone(),
        method,
        trials,
        successes: 0,
        failures: 0,
        inconclusive: 0,
        failed_trials: Vec::new(),
    };
    for trial in 0..trials {
        let f: StepFunction = random_zero_mean(&mut rng, g, 3, grain as i64, 4);
        let ok = match method {
            EvidenceMethod::Euler => Some(euler_chord_solve(g, &f, r).is_ok()),
            EvidenceMethod::DoubleCover => Some(graph_chord_solve(g, &f, r).is_ok()),
            EvidenceMethod::Grid => match grid_search(g, &f, r, grain, 200_000) {
                GridOutcome::Found(_) => Some(true),
                GridOutcome::NotFound => Some(false),
                GridOutcome::OffGrid | GridOutcome::BudgetExceeded => None,
            },
        };
        match ok {
            Some(true) => report.successes += 1,
            Some(false) => {
                report.failures += 1;
                report.failed_trials.push(trial);
            }
            None => report.inconclusive += 1,
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};
    use crate::step::{integral_subset, Step1d};

    #[test]
    fn guaranteed_regimes_always_succeed() {
        let eight = MetricGraph::figure_eight();
        for r in [int(0), q(3, 4), int(2)] {
            let rep = chord_membership_evidence(&eight, &r, 10, 1, 12).unwrap();
            assert_eq!((rep.method, rep.successes), (EvidenceMethod::Euler, 10));
        }
        let theta = MetricGraph::theta();
        let rep = chord_membership_evidence(&theta, &q(1, 2), 10, 2, 12).unwrap();
        assert_eq!((rep.method, rep.successes), (EvidenceMethod::DoubleCover, 10));
    }

    #[test]
    fn interval_reports_without_claims() {
        let g = MetricGraph::interval();
        let rep = chord_membership_evidence(&g, &q(2, 3), 20, 3, 12).unwrap();
        assert_eq!(rep.method, EvidenceMethod::Grid);
        assert_eq!(rep.successes + rep.failures + rep.inconclusive, 20);
        assert_eq!(rep.failures, rep.failed_trials.len());
    }

    #[test]
    fn grid_search_finds_aligned_solutions() {
        let g = MetricGraph::interval();
        let f = StepFunction::new(&g, vec![Step1d::new(vec![int(0), q(1, 2), int(1)], vec![int(1), int(-1)]).unwrap()])
            .unwrap();
        match grid_search(&g, &f, &q(1, 2), 4, 1000) {
            GridOutcome::Found(u) => {
                assert_eq!(u.measure(), q(1, 2));
                assert_eq!(integral_subset(&f, &u), int(0));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(grid_search(&g, &f, &q(1, 3), 4, 1000), GridOutcome::OffGrid);
        let one = StepFunction::per_edge_constant(&g, &[int(1)]).unwrap();
        assert_eq!(grid_search(&g, &one, &q(1, 2), 4, 1000), GridOutcome::NotFound);
    }

    #[test]
    fn grid_enumeration_counts_connected_sets() {
        // On a path of n cells there are n - k + 1 connected k-sets.
        let mut adj = vec![BTreeSet::new(); 6];
        for i in 0..5 {
            adj[i].insert(i + 1);
            adj[i + 1].insert(i);
        }
        let w = vec![int(1); 6];
        let mut esu = Esu { adj: &adj, weights: &w, k: 3, budget: usize::MAX, seen: 0, found: None };
        for v in 0..6 {
            let ext: Vec<usize> = adj[v].iter().copied().filter(|&u| u > v).collect();
            esu.extend(&mut vec![v], ext, v);
        }
        assert_eq!(esu.seen, 4);
    }
}
