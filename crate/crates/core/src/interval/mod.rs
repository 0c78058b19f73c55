//! Chords on the interval and the circle, horizontal chords of planar
//! curves, chords of periodic functions and necklace splitting.
//!
//! Every solver returns the lexicographically smallest exact solution.

mod necklace;
pub mod plane;

pub use necklace::{necklace_split, parse_pearls, window_black_counts, NecklaceSplit, Pearl};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ChordError, Result};
use crate::rational::{self, floor_int, Rational};
use crate::step::Step1d;
use plane::{first_root, knots_in, lexmin, rect_rows, Row};

/// Closed interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "rational::serde_str")]
    pub lo: Rational,
    #[serde(with = "rational::serde_str")]
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        Interval { lo, hi }
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// An interval on which two functions share the integral `value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommonChord {
    pub interval: Interval,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
}

fn require_unit(f: &Step1d, name: &str) -> Result<()> {
    if *f.len() != Rational::one() {
        return Err(ChordError::precondition(format!("{name} must live on [0, 1]")));
    }
    if f.integral() != Rational::one() {
        return Err(ChordError::precondition(format!(
            "{name} must integrate to 1, got {}",
            rational::format_rational(&f.integral())
        )));
    }
    Ok(())
}

/// `int_x^{x+w} f`.
pub fn window_integral(f: &Step1d, x: &Rational, w: &Rational) -> Rational {
    f.integral_over(x, &(x + w))
}

/// `sum_{i<k} int_{i/k}^{(i+1)/k} f`, which telescopes to `int_0^1 f`.
pub fn window_sum(f: &Step1d, k: u32) -> Rational {
    let w = rational::q(1, k as i64);
    (0..k)
        .map(|i| window_integral(f, &(&w * Rational::from_integer(i.into())), &w))
        .sum()
}

fn positive_k(k: u32) -> Result<Rational> {
    if k == 0 {
        return Err(ChordError::precondition("k must be a positive integer"));
    }
    Ok(rational::q(1, k as i64))
}

/// Smallest `x` with `int_x^{x+1/k} f = 1/k`, for `f` on `[0, 1]` with
/// integral 1.
pub fn find_fixed_window(f: &Step1d, k: u32) -> Result<Interval> {
    require_unit(f, "f")?;
    let w = positive_k(k)?;
    let end = Rational::one() - &w;
    let cand = f
        .breakpoints()
        .iter()
        .flat_map(|b| [b.clone(), b - &w])
        .collect();
    let knots = knots_in(cand, &Rational::zero(), &end);
    let x = first_root(&knots, |x| window_integral(f, x, &w) - &w)
        .ok_or_else(|| ChordError::internal("no window of the required size found"))?;
    let hi = &x + &w;
    Ok(Interval::new(x, hi))
}

/// Two step functions on a common grid: primitive values at grid points and
/// the constant value on each cell.
struct Grid {
    xs: Vec<Rational>,
    prim: [Vec<Rational>; 2],
    vals: [Vec<Rational>; 2],
}

impl Grid {
    fn new(f: &Step1d, g: &Step1d) -> Self {
        let mut xs: Vec<Rational> = f.breakpoints().iter().chain(g.breakpoints()).cloned().collect();
        xs.sort();
        xs.dedup();
        let cells = &xs[..xs.len() - 1];
        let prim = [f, g].map(|h| xs.iter().map(|x| h.primitive(x)).collect());
        let vals = [f, g].map(|h| cells.iter().map(|x| h.value_at(x).clone()).collect());
        Grid { xs, prim, vals }
    }


    /// Rows of `P_h(y) - P_h(x) = target` on cell pair `(i, j)`.
    fn rows(&self, i: usize, j: usize, target: &Rational) -> [Row; 2] {
        [0, 1].map(|h| {
            let (vi, vj) = (&self.vals[h][i], &self.vals[h][j]);
            let c = target - &self.prim[h][j] + vj * &self.xs[j] + &self.prim[h][i] - vi * &self.xs[i];
            Row::new(-vi.clone(), vj.clone(), c)
        })
    }
}

/// Lex-min `(x, y)` with `x <= y` over the cell pairs `(i, j)`, `i <= j`, of a
/// grid, where `rows(i, j)` gives the linear equations valid on that pair and
/// `extra` any further `<=` constraints.
fn scan_cells<F>(xs: &[Rational], rows: F, extra: &[Row]) -> Option<(Rational, Rational)>
where
    F: Fn(usize, usize) -> Vec<Row>,
{
    let n = xs.len() - 1;
    let mut best: Option<(Rational, Rational)> = None;
    for i in 0..n {
        if best.as_ref().is_some_and(|b| xs[i] > b.0) {
            break;
        }
        for j in i..n {
            let mut ineqs = rect_rows(&xs[i], &xs[i + 1], &xs[j], &xs[j + 1]);
            ineqs.push(Row::new(rational::one(), -rational::one(), Rational::zero()));
            ineqs.extend(extra.iter().cloned());
            if let Some(p) = lexmin(&rows(i, j), &ineqs) {
                if best.as_ref().is_none_or(|b| p < *b) {
                    best = Some(p);
                }
            }
        }
    }
    best
}

/// An interval `J` of `[0, 1]` with `int_J f = int_J g` equal to `r`, or
/// failing that to `1 - r`. Prefers `r`, then the lexicographically smallest
/// `(lo, hi)`.
pub fn find_common_chord(f: &Step1d, g: &Step1d, r: &Rational) -> Result<CommonChord> {
    require_unit(f, "f")?;
    require_unit(g, "g")?;
    if *r < Rational::zero() || *r > Rational::one() {
        return Err(ChordError::precondition("r must lie in [0, 1]"));
    }
    let grid = Grid::new(f, g);
    for value in [r.clone(), Rational::one() - r] {
        if let Some((lo, hi)) = scan_cells(&grid.xs, |i, j| grid.rows(i, j, &value).to_vec(), &[]) {
            return Ok(CommonChord { interval: Interval::new(lo, hi), value });
        }
    }
    Err(ChordError::internal(format!(
        "no common chord of value {} or its complement",
        rational::format_rational(r)
    )))
}

/// A common chord of value exactly `1/k`.
pub fn find_common_chord_k(f: &Step1d, g: &Step1d, k: u32) -> Result<Interval> {
    let w = positive_k(k)?;
    let chord = find_common_chord(f, g, &w)?;
    if chord.value != w {
        return Err(ChordError::internal(format!("no common chord of value 1/{k}")));
    }
    Ok(chord.interval)
}

/// Primitive of `f` extended periodically with drift: `P(x + L) = P(x) + I`.
fn periodic_primitive(f: &Step1d, x: &Rational) -> Rational {
    let len = f.len();
    let turns = Rational::from_integer(floor_int(&(x / len)));
    &turns * f.integral() + f.primitive(&(x - &turns * len))
}

fn reduce_mod(x: &Rational, len: &Rational) -> Rational {
    x - Rational::from_integer(floor_int(&(x / len))) * len
}

/// Smallest `x in [0, L)` such that the arc `[x, x + w]` of the circle of
/// circumference `L = f.len()` carries integral `c`, where `c` must equal the
/// mean value `(w / L) * int f`.
pub fn find_arc_chord_circle(f: &Step1d, w: &Rational, c: &Rational) -> Result<Rational> {
    let len = f.len().clone();
    if *w < Rational::zero() || *w > len {
        return Err(ChordError::precondition("arc length must lie in [0, L]"));
    }
    if c * &len != w * f.integral() {
        return Err(ChordError::precondition(
            "target must be the mean value (w / L) times the total integral",
        ));
    }
    let cand = f
        .breakpoints()
        .iter()
        .flat_map(|b| [b.clone(), reduce_mod(&(b - w), &len)])
        .collect();
    let knots = knots_in(cand, &Rational::zero(), &len);
    let x = first_root(&knots, |x| {
        periodic_primitive(f, &(x + w)) - periodic_primitive(f, x) - c
    })
    .ok_or_else(|| ChordError::internal("no arc with the mean integral found"))?;
    Ok(if x == len { Rational::zero() } else { x })
}

/// An arc `[x, x + len]` of the circle of circumference `L = f.len()` on
/// which both `f` and `g` integrate to `r`, for `f`, `g` with integral 1.
/// Returns the lexicographically smallest `(x, x + len)` with `x in [0, L)`.
pub fn find_common_arc_circle(f: &Step1d, g: &Step1d, r: &Rational) -> Result<Interval> {
    let len = f.len().clone();
    if *g.len() != len {
        return Err(ChordError::precondition("f and g must live on the same circle"));
    }
    if f.integral() != Rational::one() || g.integral() != Rational::one() {
        return Err(ChordError::precondition("f and g must integrate to 1"));
    }
    if *r < Rational::zero() || *r > Rational::one() {
        return Err(ChordError::precondition("r must lie in [0, 1]"));
    }
    let f2 = Step1d::concat([f, f])?;
    let g2 = Step1d::concat([g, g])?;
    let grid = Grid::new(&f2, &g2);
    let extra = [
        Row::new(rational::one(), Rational::zero(), len.clone()),
        Row::new(-rational::one(), rational::one(), len.clone()),
    ];
    let (lo, hi) = scan_cells(&grid.xs, |i, j| grid.rows(i, j, r).to_vec(), &extra)
        .ok_or_else(|| ChordError::internal("no common arc found"))?;
    Ok(Interval::new(lo, hi))
}

/// Curve parameters of a horizontal chord.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveChord {
    #[serde(with = "rational::serde_str")]
    pub s: Rational,
    #[serde(with = "rational::serde_str")]
    pub t: Rational,
}

/// Point of the polyline at parameter `u in [0, m]`, where the `i`-th
/// segment is traversed for `u in [i, i + 1]`.
pub fn polyline_at(points: &[(Rational, Rational)], u: &Rational) -> (Rational, Rational) {
    let m = points.len() - 1;
    if m == 0 {
        return points[0].clone();
    }
    let i = floor_int(u)
        .try_into()
        .map(|i: usize| i.min(m - 1))
        .unwrap_or(0);
    let s = u - Rational::from_integer(i.into());
    let (p, q) = (&points[i], &points[i + 1]);
    (&p.0 + &s * (&q.0 - &p.0), &p.1 + &s * (&q.1 - &p.1))
}

/// Parameters `s < t` with `gamma(t) - gamma(s) = (B - A) / k` on the
/// polyline from `A` to `B`. When `A = B` the whole curve is returned.
pub fn horizontal_chord(points: &[(Rational, Rational)], k: u32) -> Result<CurveChord> {
    let w = positive_k(k)?;
    let (Some(a), Some(b)) = (points.first(), points.last()) else {
        return Err(ChordError::precondition("polyline must be nonempty"));
    };
    let m = points.len() - 1;
    let delta = ((&b.0 - &a.0) * &w, (&b.1 - &a.1) * &w);
    if delta.0.is_zero() && delta.1.is_zero() {
        return Ok(CurveChord { s: Rational::zero(), t: Rational::from_integer(m.into()) });
    }
    let xs: Vec<Rational> = (0..=m).map(|i| Rational::from_integer(i.into())).collect();
    let dir = |i: usize| (&points[i + 1].0 - &points[i].0, &points[i + 1].1 - &points[i].1);
    let rows = |i: usize, j: usize| {
        let (di, dj) = (dir(i), dir(j));
        let (pi, pj) = (&points[i], &points[j]);
        let (fi, fj) = (&xs[i], &xs[j]);
        vec![
            Row::new(-di.0.clone(), dj.0.clone(), &delta.0 - &pj.0 + &dj.0 * fj + &pi.0 - &di.0 * fi),
            Row::new(-di.1.clone(), dj.1.clone(), &delta.1 - &pj.1 + &dj.1 * fj + &pi.1 - &di.1 * fi),
        ]
    };
    let (s, t) = scan_cells(&xs, rows, &[])
        .ok_or_else(|| ChordError::internal("no horizontal chord found"))?;
    Ok(CurveChord { s, t })
}

/// Continuous piecewise-linear function with period 1, given by its knots on
/// `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicPl {
    knots: Vec<(Rational, Rational)>,
}

impl PeriodicPl {
    pub fn new(knots: Vec<(Rational, Rational)>) -> Result<Self> {
        let ok = knots.len() >= 2
            && knots[0].0.is_zero()
            && knots.last().unwrap().0.is_one()
            && knots[0].1 == knots.last().unwrap().1
            && knots.windows(2).all(|w| w[0].0 < w[1].0);
        if !ok {
            return Err(ChordError::precondition(
                "knots must increase from 0 to 1 with equal end values",
            ));
        }
        Ok(PeriodicPl { knots })
    }

    /// The triangle wave `x -> dist(x, Z)`.
    pub fn triangle_wave() -> Self {
        PeriodicPl {
            knots: vec![
                (rational::zero(), rational::zero()),
                (rational::q(1, 2), rational::q(1, 2)),
                (rational::one(), rational::zero()),
            ],
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let x = reduce_mod(x, &rational::one());
        let i = self.knots.partition_point(|k| k.0 <= x).clamp(1, self.knots.len() - 1);
        let (p, q) = (&self.knots[i - 1], &self.knots[i]);
        &p.1 + (&q.1 - &p.1) * (&x - &p.0) / (&q.0 - &p.0)
    }
}

/// Smallest `x in [0, 1)` with `F(x + t) = F(x)`.
pub fn chord_of_periodic(f: &PeriodicPl, t: &Rational) -> Result<Rational> {
    let one = rational::one();
    let cand = f
        .knots
        .iter()
        .flat_map(|k| [k.0.clone(), reduce_mod(&(&k.0 - t), &one)])
        .collect();
    let knots = knots_in(cand, &Rational::zero(), &one);
    let x = first_root(&knots, |x| f.eval(&(x + t)) - f.eval(x))
        .ok_or_else(|| ChordError::internal("periodic function without the requested chord"))?;
    Ok(if x == one { Rational::zero() } else { x })
}
