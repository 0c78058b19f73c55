//! Exact piecewise-linear root finding and lexicographic minimization over
//! small linear systems in the plane.

use num_traits::Zero;

use crate::rational::Rational;

/// Linear form `a*x + b*y` compared against `c`.
#[derive(Clone, Debug)]
pub struct Row {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Row {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        Row { a, b, c }
    }

    fn value(&self, x: &Rational, y: &Rational) -> Rational {
        &self.a * x + &self.b * y
    }

    fn is_trivial(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// Rectangle constraints `x0 <= x <= x1`, `y0 <= y <= y1` as `<=` rows.
pub fn rect_rows(x0: &Rational, x1: &Rational, y0: &Rational, y1: &Rational) -> Vec<Row> {
    let one = || Rational::from_integer(1.into());
    let zero = Rational::zero;
    vec![
        Row::new(-one(), zero(), -x0.clone()),
        Row::new(one(), zero(), x1.clone()),
        Row::new(zero(), -one(), -y0.clone()),
        Row::new(zero(), one(), y1.clone()),
    ]
}

fn feasible(ineqs: &[Row], x: &Rational, y: &Rational) -> bool {
    ineqs.iter().all(|r| r.value(x, y) <= r.c)
}

fn solve2(r1: &Row, r2: &Row) -> Option<(Rational, Rational)> {
    let det = &r1.a * &r2.b - &r1.b * &r2.a;
    if det.is_zero() {
        return None;
    }
    let x = (&r1.c * &r2.b - &r1.b * &r2.c) / &det;
    let y = (&r1.a * &r2.c - &r1.c * &r2.a) / &det;
    Some((x, y))
}

/// Lexicographically smallest `(x, y)` with every `eqs` row holding with
/// equality and every `ineqs` row as `<=`. The inequality region must be
/// bounded whenever it is feasible.
pub fn lexmin(eqs: &[Row], ineqs: &[Row]) -> Option<(Rational, Rational)> {
    let mut live: Vec<&Row> = Vec::new();
    for r in eqs {
        if r.is_trivial() {
            if !r.c.is_zero() {
                return None;
            }
        } else {
            live.push(r);
        }
    }
    let Some(first) = live.first().copied() else {
        return lexmin_polygon(ineqs);
    };
    if let Some(other) = live[1..].iter().find(|r| solve2(first, r).is_some()) {
        let (x, y) = solve2(first, other)?;
        let ok = live.iter().all(|r| r.value(&x, &y) == r.c) && feasible(ineqs, &x, &y);
        return ok.then_some((x, y));
    }
    // All rows are parallel to `first`; they must describe the same line.
    let (px, py) = if first.b.is_zero() {
        (&first.c / &first.a, Rational::zero())
    } else {
        (Rational::zero(), &first.c / &first.b)
    };
    if live.iter().any(|r| r.value(&px, &py) != r.c) {
        return None;
    }
    lexmin_on_line(first, ineqs)
}

/// Lex-min over the line `a x + b y = c` subject to `ineqs`.
fn lexmin_on_line(line: &Row, ineqs: &[Row]) -> Option<(Rational, Rational)> {
    if line.b.is_zero() {
        let x = &line.c / &line.a;
        let (lo, _) = bounds(ineqs.iter().map(|r| (r.b.clone(), &r.c - &r.a * &x)))?;
        return Some((x, lo?));
    }
    // y = (c - a x) / b, so a row reads (α - β a / b) x <= γ - β c / b.
    let slope = -&line.a / &line.b;
    let icpt = &line.c / &line.b;
    let (lo, _) = bounds(
        ineqs
            .iter()
            .map(|r| (&r.a + &r.b * &slope, &r.c - &r.b * &icpt)),
    )?;
    let x = lo?;
    let y = &slope * &x + &icpt;
    Some((x, y))
}

/// Feasible interval of `{ t : k t <= m }` for all `(k, m)`.
/// Outer `None` means infeasible; inner `None` means unbounded on that side.
#[allow(clippy::type_complexity)]
fn bounds<I>(rows: I) -> Option<(Option<Rational>, Option<Rational>)>
where
    I: Iterator<Item = (Rational, Rational)>,
{
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for (k, m) in rows {
        if k.is_zero() {
            if m < Rational::zero() {
                return None;
            }
            continue;
        }
        let t = &m / &k;
        if k > Rational::zero() {
            if hi.as_ref().is_none_or(|h| t < *h) {
                hi = Some(t);
            }
        } else if lo.as_ref().is_none_or(|l| t > *l) {
            lo = Some(t);
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return None;
        }
    }
    Some((lo, hi))
}

fn lexmin_polygon(ineqs: &[Row]) -> Option<(Rational, Rational)> {
    let mut best: Option<(Rational, Rational)> = None;
    for (i, r1) in ineqs.iter().enumerate() {
        for r2 in &ineqs[i + 1..] {
            if let Some(p) = solve2(r1, r2) {
                if feasible(ineqs, &p.0, &p.1) && best.as_ref().is_none_or(|b| p < *b) {
                    best = Some(p);
                }
            }
        }
    }
    best
}

/// Smallest root of a continuous function that is linear between
/// consecutive `knots` (sorted, deduplicated), evaluated exactly by `f`.
pub fn first_root<F>(knots: &[Rational], f: F) -> Option<Rational>
where
    F: Fn(&Rational) -> Rational,
{
    let mut prev: Option<(&Rational, Rational)> = None;
    for x in knots {
        let y = f(x);
        if y.is_zero() {
            return Some(x.clone());
        }
        if let Some((px, py)) = &prev {
            if (*py < Rational::zero()) != (y < Rational::zero()) {
                return Some(*px - py * (x - *px) / (&y - py));
            }
        }
        prev = Some((x, y));
    }
    None
}

/// Sorts, deduplicates and clips candidate knots to `[lo, hi]`, always
/// including both ends.
pub fn knots_in(mut xs: Vec<Rational>, lo: &Rational, hi: &Rational) -> Vec<Rational> {
    xs.retain(|x| x >= lo && x <= hi);
    xs.push(lo.clone());
    xs.push(hi.clone());
    xs.sort();
    xs.dedup();
    xs
}
