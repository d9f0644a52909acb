//! Bessel-side machinery for the unit disk.
//!
//! The radial transform of the unit-disk indicator is `J1(2 pi rho)/rho`
//! (up to normalization), so its zero set consists of circles of radii
//! `r_n = j_{1,n}/(2 pi)`. Those radii are asymptotically the arithmetic
//! progression `A + B n` with `B = 1/2`, which the affine fit measures. Two
//! frequencies are disk-orthogonal exactly when their distance is one of the
//! `r_n`; orthogonal-set search reduces to exact circle-circle geometry
//! because once two points are fixed, any further point lies on a finite
//! intersection set.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geom::{FrequencySet, Point2};
use crate::{Error, Result};

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = std::f64::consts::TAU;

/// `J1(x)`: compensated power series up to `|x| = 12`, Hankel asymptotic
/// expansion with adaptive truncation beyond.
pub fn bessel_j1(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let ax = x.abs();
    let v = if ax <= 12.0 { j1_series(ax) } else { j1_asymptotic(ax) };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

/// Power series `sum_k (-1)^k (x/2)^{2k+1} / (k! (k+1)!)` in double-double
/// arithmetic: near `x = 12` the terms reach ~4.5e3 while the sum is O(1),
/// so plain f64 would lose ~4 digits to cancellation.
fn j1_series(x: f64) -> f64 {
    let half = 0.5 * x;
    let q = dd::Dd::from(half) * dd::Dd::from(half);
    let mut term = dd::Dd::from(half);
    let mut sum = term;
    let mut k = 1.0f64;
    loop {
        term = term * q;
        term = term.div_f64(-k * (k + 1.0));
        sum = sum + term;
        if term.hi.abs() < 1e-22 * sum.hi.abs().max(1e-3) || k > 60.0 {
            break;
        }
        k += 1.0;
    }
    sum.hi
}

/// Hankel expansion `sqrt(2/(pi x)) (P cos w - Q sin w)`, `w = x - 3 pi/4`,
/// truncated at the smallest term.
fn j1_asymptotic(x: f64) -> f64 {
    let mu = 4.0; // 4 nu^2 for nu = 1
    let w = x - 2.356_194_490_192_345; // 3 pi / 4
    let mut p = 1.0;
    let mut q = 0.0;
    let mut u = 1.0;
    let mut prev = f64::INFINITY;
    for m in 1..40u32 {
        let m_f = m as f64;
        u *= (mu - (2.0 * m_f - 1.0).powi(2)) / (m_f * 8.0 * x);
        if u.abs() >= prev {
            break; // divergence onset: stop at the smallest term
        }
        prev = u.abs();
        let signed = if (m >> 1) & 1 == 1 { -u } else { u };
        if m % 2 == 1 {
            q += signed;
        } else {
            p += signed;
        }
        if u.abs() < 1e-19 {
            break;
        }
    }
    (2.0 / (PI * x)).sqrt() * (w.cos() * p - w.sin() * q)
}

/// Radial profile of the unit-disk transform at radius `rho > 0`.
pub fn disk_ft_radial(rho: f64) -> f64 {
    bessel_j1(TAU * rho) / rho
}

/// Ordered zeros of `J1` and the corresponding disk zero radii, with the
/// affine fit `r_n ~ A + B n` over the tail half of the table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BesselZeroTable {
    /// `j_{1,n}`, strictly increasing, 1-indexed conceptually.
    pub zeros: Vec<f64>,
    /// `r_n = j_{1,n} / (2 pi)`.
    pub radii: Vec<f64>,
    pub fitted_a: f64,
    pub fitted_b: f64,
}

/// First `count` positive zeros of `J1` by McMahon initial guesses refined
/// with safeguarded Newton; fit computed from the last half of the table.
pub fn zero_table(count: usize) -> Result<BesselZeroTable> {
    if count == 0 {
        return Err(Error::InvalidParameter("zero count must be >= 1".into()));
    }
    let mut zeros = Vec::with_capacity(count);
    for n in 1..=count {
        zeros.push(refine_zero(mcmahon_guess(n as f64)));
    }
    let radii: Vec<f64> = zeros.iter().map(|z| z / TAU).collect();
    let (fitted_a, fitted_b) = affine_fit_tail(&radii);
    Ok(BesselZeroTable {
        zeros,
        radii,
        fitted_a,
        fitted_b,
    })
}

/// McMahon expansion for `j_{1,n}`: `beta - 3/(8 beta) + 12/(8 beta)^3`,
/// `beta = (n + 1/4) pi`.
fn mcmahon_guess(n: f64) -> f64 {
    let beta = (n + 0.25) * PI;
    let e = 8.0 * beta;
    beta - 3.0 / e + 12.0 / (e * e * e)
}

/// Clamped Newton from the McMahon guess; the guesses land within ~2e-4 of
/// the zero and `|J1'| = |J0|` is bounded away from 0 there, so convergence
/// is quadratic. `J1' = J0 - J1/x`.
fn refine_zero(guess: f64) -> f64 {
    let mut x = guess;
    for _ in 0..30 {
        let f = bessel_j1(x);
        if f == 0.0 {
            return x;
        }
        let step = (f / j1_prime(x)).clamp(-0.5, 0.5);
        x -= step;
        if step.abs() < 1e-15 * x {
            break;
        }
    }
    x
}

fn j1_prime(x: f64) -> f64 {
    bessel_j0(x) - bessel_j1(x) / x
}

/// `J0`, same two-regime scheme; used only to drive Newton on `J1` zeros.
fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= 12.0 {
        let q = dd::Dd::from(0.5 * ax) * dd::Dd::from(0.5 * ax);
        let mut term = dd::Dd::from(1.0);
        let mut sum = term;
        let mut k = 1.0f64;
        loop {
            term = term * q;
            term = term.div_f64(-k * k);
            sum = sum + term;
            if term.hi.abs() < 1e-22 || k > 60.0 {
                break;
            }
            k += 1.0;
        }
        sum.hi
    } else {
        let mu = 0.0;
        let w = ax - std::f64::consts::FRAC_PI_4;
        let mut p = 1.0;
        let mut q = 0.0;
        let mut u = 1.0;
        let mut prev = f64::INFINITY;
        for m in 1..40u32 {
            let m_f = m as f64;
            u *= (mu - (2.0 * m_f - 1.0).powi(2)) / (m_f * 8.0 * ax);
            if u.abs() >= prev {
                break;
            }
            prev = u.abs();
            let signed = if (m >> 1) & 1 == 1 { -u } else { u };
            if m % 2 == 1 {
                q += signed;
            } else {
                p += signed;
            }
            if u.abs() < 1e-19 {
                break;
            }
        }
        (2.0 / (PI * ax)).sqrt() * (w.cos() * p - w.sin() * q)
    }
}

/// Least-squares line through `(n, radii[n-1])` over the last half.
fn affine_fit_tail(radii: &[f64]) -> (f64, f64) {
    let n = radii.len();
    let lo = n / 2;
    let m = (n - lo) as f64;
    if n - lo < 2 {
        // degenerate table: slope from consecutive gap or flat
        return if n >= 2 {
            let b = radii[n - 1] - radii[n - 2];
            (radii[n - 1] - b * n as f64, b)
        } else {
            (radii[0] - 0.5, 0.5)
        };
    }
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (i, &r) in radii.iter().enumerate().skip(lo) {
        let x = (i + 1) as f64;
        sx += x;
        sy += r;
        sxx += x * x;
        sxy += x * r;
    }
    let b = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    let a = (sy - b * sx) / m;
    (a, b)
}

impl BesselZeroTable {
    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// `r_n`, 1-indexed as in the asymptotic formula.
    pub fn radius(&self, n: usize) -> f64 {
        self.radii[n - 1]
    }

    /// Grow the table until the largest radius exceeds `dist` by one gap.
    pub fn ensure_covers(&mut self, dist: f64) {
        while *self.radii.last().expect("nonempty") < dist + 0.6 {
            let n = self.zeros.len() + 1;
            let z = refine_zero(mcmahon_guess(n as f64));
            self.zeros.push(z);
            self.radii.push(z / TAU);
        }
        let (a, b) = affine_fit_tail(&self.radii);
        self.fitted_a = a;
        self.fitted_b = b;
    }

    /// Whether `dist` equals some tabled radius within `tol`. The table must
    /// already cover `dist` (see [`Self::ensure_covers`]).
    pub fn is_zero_radius(&self, dist: f64, tol: f64) -> bool {
        self.nearest_radius_error(dist) < tol
    }

    /// Distance from `dist` to the nearest tabled radius.
    pub fn nearest_radius_error(&self, dist: f64) -> f64 {
        match self
            .radii
            .binary_search_by(|r| r.partial_cmp(&dist).expect("finite"))
        {
            Ok(_) => 0.0,
            Err(pos) => {
                let mut best = f64::INFINITY;
                if pos < self.radii.len() {
                    best = best.min((self.radii[pos] - dist).abs());
                }
                if pos > 0 {
                    best = best.min((self.radii[pos - 1] - dist).abs());
                }
                best
            }
        }
    }

    /// Disk-orthogonality of two distinct frequency points.
    pub fn orthogonal(&self, p: Point2, q: Point2, tol: f64) -> Result<bool> {
        if p == q {
            return Err(Error::DegeneratePair);
        }
        Ok(self.is_zero_radius(p.dist(&q), tol))
    }
}

/// Search strategy for [`orth_search`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStrategy {
    /// Exhaustive branch-and-bound over circle-intersection candidates;
    /// complete because all pairwise distances must be zero radii.
    Exact,
    /// Seed `{0}`, repeatedly accept the nearest compatible candidate.
    Greedy,
}

/// A maximal pairwise-disk-orthogonal set in the closed ball of radius `R`
/// about the origin, always containing the origin.
///
/// After fixing the origin, a rotation puts the second point on the
/// positive x-axis and a reflection puts the third in the upper half plane;
/// any further point is an intersection of distance circles around the
/// first two points, so the candidate set at each node is finite and the
/// exact search is complete.
pub fn orth_search(
    r: f64,
    strategy: SearchStrategy,
    table: &mut BesselZeroTable,
    tol: f64,
) -> Result<FrequencySet> {
    if r <= 0.0 || !r.is_finite() {
        return Err(Error::InvalidParameter("search radius must be positive".into()));
    }
    table.ensure_covers(2.0 * r);
    let points = match strategy {
        SearchStrategy::Exact => exact_search(r, table, tol),
        SearchStrategy::Greedy => greedy_search(r, table, tol),
    };
    let set = FrequencySet::new(points)?;
    verify_orthogonal_set(&set, table, tol)?;
    Ok(set)
}

/// Independent post-hoc pass: every pairwise distance must match a radius.
pub fn verify_orthogonal_set(
    set: &FrequencySet,
    table: &BesselZeroTable,
    tol: f64,
) -> Result<()> {
    let pts = set.points();
    for (i, p) in pts.iter().enumerate() {
        for (j, q) in pts.iter().enumerate().take(i) {
            let d = p.dist(q);
            if !table.is_zero_radius(d, tol) {
                return Err(Error::NonOrthogonalSet(j, i, d));
            }
        }
    }
    Ok(())
}

fn admissible_radii(table: &BesselZeroTable, max: f64) -> Vec<f64> {
    table
        .radii
        .iter()
        .copied()
        .take_while(|&r| r <= max)
        .collect()
}

/// Intersection points of circles `|x - p| = ra`, `|x - q| = rb`.
fn circle_intersections(p: Point2, ra: f64, q: Point2, rb: f64) -> Vec<Point2> {
    let d = p.dist(&q);
    if d == 0.0 || d > ra + rb || d < (ra - rb).abs() {
        return Vec::new();
    }
    let along = (d * d + ra * ra - rb * rb) / (2.0 * d);
    let h2 = ra * ra - along * along;
    let ex = Point2::new((q.x - p.x) / d, (q.y - p.y) / d);
    let base = Point2::new(p.x + along * ex.x, p.y + along * ex.y);
    if h2 <= 0.0 {
        return vec![base];
    }
    let h = h2.sqrt();
    vec![
        Point2::new(base.x - h * ex.y, base.y + h * ex.x),
        Point2::new(base.x + h * ex.y, base.y - h * ex.x),
    ]
}

fn compatible(cand: Point2, chosen: &[Point2], table: &BesselZeroTable, tol: f64) -> bool {
    chosen.iter().all(|p| {
        let d = cand.dist(p);
        d > tol && table.is_zero_radius(d, tol)
    })
}

fn exact_search(r: f64, table: &BesselZeroTable, tol: f64) -> Vec<Point2> {
    let origin = Point2::new(0.0, 0.0);
    let mut best = vec![origin];
    // second point on the positive x-axis at each admissible radius
    for &r1 in &admissible_radii(table, r) {
        let mut chosen = vec![origin, Point2::new(r1, 0.0)];
        extend_exact(r, table, tol, &mut chosen, &mut best, true);
    }
    best
}

fn extend_exact(
    r: f64,
    table: &BesselZeroTable,
    tol: f64,
    chosen: &mut Vec<Point2>,
    best: &mut Vec<Point2>,
    upper_half_only: bool,
) {
    if chosen.len() > best.len() {
        *best = chosen.clone();
    }
    // candidates: intersections of admissible circles around the first two
    // points (they pin any further point up to finitely many choices)
    let (p, q) = (chosen[0], chosen[1]);
    let radii = admissible_radii(table, r);
    for &ra in &radii {
        for &rb in &admissible_radii(table, p.dist(&q) + ra) {
            for cand in circle_intersections(p, ra, q, rb) {
                if upper_half_only && cand.y < 0.0 {
                    continue;
                }
                if cand.norm() > r + tol {
                    continue;
                }
                if !compatible(cand, chosen, table, tol) {
                    continue;
                }
                chosen.push(cand);
                extend_exact(r, table, tol, chosen, best, false);
                chosen.pop();
            }
        }
    }
}

fn greedy_search(r: f64, table: &BesselZeroTable, tol: f64) -> Vec<Point2> {
    let origin = Point2::new(0.0, 0.0);
    let mut chosen = vec![origin];
    // first companion: nearest admissible radius on the positive x-axis
    match admissible_radii(table, r).first() {
        Some(&r1) => chosen.push(Point2::new(r1, 0.0)),
        None => return chosen,
    }
    loop {
        let radii = admissible_radii(table, 2.0 * r);
        // candidate pool: all pairwise circle intersections, in parallel
        // over anchor pairs; accept the nearest compatible point
        let pairs: Vec<(usize, usize)> = (0..chosen.len())
            .flat_map(|i| (0..i).map(move |j| (j, i)))
            .collect();
        let best = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (p, q) = (chosen[i], chosen[j]);
                let mut local: Option<Point2> = None;
                for &ra in &radii {
                    if ra > p.norm() + r + tol {
                        break;
                    }
                    for &rb in &radii {
                        if (ra - rb).abs() > p.dist(&q) || rb > q.norm() + r + tol {
                            continue;
                        }
                        for cand in circle_intersections(p, ra, q, rb) {
                            if cand.norm() > r + tol {
                                continue;
                            }
                            if !compatible(cand, &chosen, table, tol) {
                                continue;
                            }
                            let better = match local {
                                None => true,
                                Some(b) => {
                                    let (cn, bn) = (cand.norm(), b.norm());
                                    cn < bn - 1e-12
                                        || ((cn - bn).abs() <= 1e-12
                                            && (cand.x, cand.y) < (b.x, b.y))
                                }
                            };
                            if better {
                                local = Some(cand);
                            }
                        }
                    }
                }
                local
            })
            .reduce(
                || None,
                |a, b| match (a, b) {
                    (None, x) => x,
                    (x, None) => x,
                    (Some(p), Some(q)) => {
                        let (pn, qn) = (p.norm(), q.norm());
                        if qn < pn - 1e-12 || ((qn - pn).abs() <= 1e-12 && (q.x, q.y) < (p.x, p.y))
                        {
                            Some(q)
                        } else {
                            Some(p)
                        }
                    }
                },
            );
        match best {
            Some(p) => chosen.push(p),
            None => break,
        }
    }
    chosen
}

/// Interval structure of realized distances in an orthogonal set: every
/// pairwise distance sits in one of the `(d - 2 eps, d + 2 eps)` windows
/// with `eps = min(B, C)/10`, so consecutive windows past `r_5` leave gaps
/// of length at least `B - 4 eps` up to the o(1) margin.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GapReport {
    pub epsilon: f64,
    pub fitted_b: f64,
    pub min_pairwise: f64,
    pub diameter: f64,
    /// Distinct realized distances, ascending.
    pub realized: Vec<f64>,
    /// `(d - 2 eps, d + 2 eps)` windows clipped to `[0, diameter]`.
    pub intervals: Vec<(f64, f64)>,
    /// Complementary gaps within `[0, diameter]`.
    pub gaps: Vec<(f64, f64)>,
    /// Smallest qualifying gap length (between consecutive realized
    /// distances beyond `r_5`), if any qualify.
    pub min_qualifying_gap: Option<f64>,
    pub threshold: f64,
    pub pass: bool,
}

/// Build the distance-gap demonstration for a pairwise-orthogonal set.
///
/// Errors when some pair is not orthogonal. PASS requires every gap between
/// consecutive realized distances beyond `r_5` to have length at least
/// `B - 4 eps - margin`.
pub fn distance_gap_demo(
    set: &FrequencySet,
    table: &mut BesselZeroTable,
    tol: f64,
    margin: f64,
) -> Result<GapReport> {
    if set.len() < 2 {
        return Err(Error::InvalidParameter(
            "need at least two points for the gap demo".into(),
        ));
    }
    // cover the diameter and guarantee r_5 is tabled
    table.ensure_covers(set.diameter().max(3.0) + 1.0);
    verify_orthogonal_set(set, table, tol)?;

    let b = table.fitted_b;
    let c = set.min_distance().expect(">= 2 points");
    let epsilon = 0.1 * b.min(c);
    let diameter = set.diameter();

    let mut realized: Vec<f64> = Vec::new();
    let pts = set.points();
    for (i, p) in pts.iter().enumerate() {
        for q in pts.iter().take(i) {
            realized.push(p.dist(q));
        }
    }
    realized.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    realized.dedup_by(|a, b| (*a - *b).abs() < 2.0 * tol);

    let intervals: Vec<(f64, f64)> = realized
        .iter()
        .map(|&d| ((d - 2.0 * epsilon).max(0.0), (d + 2.0 * epsilon).min(diameter)))
        .collect();
    let mut gaps = Vec::new();
    let mut cursor = 0.0f64;
    for &(lo, hi) in &intervals {
        if lo > cursor {
            gaps.push((cursor, lo));
        }
        cursor = cursor.max(hi);
    }
    if cursor < diameter {
        gaps.push((cursor, diameter));
    }

    let r5 = table.radius(5);
    let threshold = b - 4.0 * epsilon - margin;
    let mut min_qualifying: Option<f64> = None;
    for w in realized.windows(2) {
        if w[0] > r5 {
            let gap = (w[1] - 2.0 * epsilon) - (w[0] + 2.0 * epsilon);
            min_qualifying = Some(match min_qualifying {
                None => gap,
                Some(g) => g.min(gap),
            });
        }
    }
    let pass = min_qualifying.map(|g| g >= threshold).unwrap_or(true);
    Ok(GapReport {
        epsilon,
        fitted_b: b,
        min_pairwise: c,
        diameter,
        realized,
        intervals,
        gaps,
        min_qualifying_gap: min_qualifying,
        threshold,
        pass,
    })
}

/// Double-double helpers for the compensated Bessel series.
mod dd {
    /// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
    #[derive(Clone, Copy, Debug)]
    pub struct Dd {
        pub hi: f64,
        pub lo: f64,
    }

    impl From<f64> for Dd {
        fn from(x: f64) -> Self {
            Dd { hi: x, lo: 0.0 }
        }
    }

    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let v = s - a;
        (s, (a - (s - v)) + (b - v))
    }

    fn two_prod(a: f64, b: f64) -> (f64, f64) {
        let p = a * b;
        (p, f64::mul_add(a, b, -p))
    }

    impl std::ops::Add for Dd {
        type Output = Dd;
        fn add(self, rhs: Dd) -> Dd {
            let (s, e) = two_sum(self.hi, rhs.hi);
            let e = e + self.lo + rhs.lo;
            let (hi, lo) = two_sum(s, e);
            Dd { hi, lo }
        }
    }

    impl std::ops::Mul for Dd {
        type Output = Dd;
        fn mul(self, rhs: Dd) -> Dd {
            let (p, e) = two_prod(self.hi, rhs.hi);
            let e = e + self.hi * rhs.lo + self.lo * rhs.hi;
            let (hi, lo) = two_sum(p, e);
            Dd { hi, lo }
        }
    }

    impl Dd {
        pub fn div_f64(self, d: f64) -> Dd {
            let q1 = self.hi / d;
            let (p, e) = two_prod(q1, d);
            let r = (self.hi - p - e + self.lo) / d;
            let (hi, lo) = two_sum(q1, r);
            Dd { hi, lo }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // frozen high-precision references for J1 (30-digit evaluation,
    // rounded to f64)
    const J1_REFS: &[(f64, f64)] = &[
        (0.5, 0.2422684576748739),
        (1.0, 0.4400505857449335),
        (2.0, 0.5767248077568734),
        (4.0, -0.06604332802354913),
        (8.0, 0.23463634685391463),
        (10.0, 0.04347274616886144),
        (11.2, -0.20385314586470035),
        (12.0, -0.2234471044906276),
        (12.5, -0.16548380461475973),
        (16.0, 0.09039717566130419),
        (20.0, 0.06683312417585005),
        (50.0, -0.09751182812517514),
        (100.0, -0.07714535201411216),
    ];

    #[test]
    fn j1_matches_references() {
        // the Hankel expansion has an accuracy floor of ~1e-12 just past
        // the crossover; everywhere else the error sits at a few ulps
        for &(x, want) in J1_REFS {
            let got = bessel_j1(x);
            let tol = if (12.0..14.0).contains(&x) { 1e-12 } else { 1e-13 };
            assert!((got - want).abs() < tol, "x = {x}: {got} vs {want}");
        }
    }

    #[test]
    fn j1_odd_and_zero_at_origin() {
        assert_eq!(bessel_j1(0.0), 0.0);
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..1000 {
            // xorshift for a spread of test points
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let x = (state % 40_000) as f64 / 1000.0 + 0.001;
            assert_eq!(bessel_j1(-x), -bessel_j1(x));
        }
    }

    #[test]
    fn crossover_agreement() {
        // series and asymptotic agree at the switch point
        for &x in &[12.0, 12.0001, 12.25, 12.5] {
            let d = (j1_series(x) - j1_asymptotic(x)).abs();
            assert!(d < 1e-12, "x = {x}: {d}");
        }
    }

    #[test]
    fn first_zero_anchor() {
        // Newton on our own series; published value used as sanity anchor
        let t = zero_table(1).unwrap();
        assert!((t.zeros[0] - 3.8317059702075123).abs() < 1e-9);
        assert!(bessel_j1(t.zeros[0]).abs() < 1e-13);
    }

    #[test]
    fn zero_table_asymptotics() {
        let t = zero_table(120).unwrap();
        for w in t.zeros.windows(2) {
            assert!(w[1] > w[0]);
        }
        for &z in &t.zeros {
            assert!(bessel_j1(z).abs() < 1e-12);
        }
        // gaps approach pi
        for (i, w) in t.zeros.windows(2).enumerate() {
            if i >= 49 {
                assert!((w[1] - w[0] - PI).abs() < 1e-3);
            }
        }
        // fit: B ~ 1/2, A ~ 1/8
        assert!((t.fitted_b - 0.5).abs() < 1e-3, "B = {}", t.fitted_b);
        assert!((t.fitted_a - 0.125).abs() < 5e-3, "A = {}", t.fitted_a);
        // residuals past n = 50
        for (i, &r) in t.radii.iter().enumerate() {
            let n = (i + 1) as f64;
            if i >= 49 {
                assert!((r - (t.fitted_a + t.fitted_b * n)).abs() < 1e-3);
            }
        }
        // radial transform vanishes on the zero circles
        for n in 1..=20 {
            assert!(disk_ft_radial(t.radius(n)).abs() < 1e-9);
        }
    }

    #[test]
    fn orthogonality_queries() {
        let mut t = zero_table(10).unwrap();
        t.ensure_covers(3.0);
        let r1 = t.radius(1);
        assert!((r1 - 0.609834945633252).abs() < 1e-12);
        let p = Point2::new(0.0, 0.0);
        assert!(t.orthogonal(p, Point2::new(r1, 0.0), 1e-9).unwrap());
        assert!(!t.orthogonal(p, Point2::new(0.5, 0.0), 1e-9).unwrap());
        assert!(matches!(t.orthogonal(p, p, 1e-9), Err(Error::DegeneratePair)));
    }

    #[test]
    fn exact_search_small_ball_is_singleton() {
        // r_1 > 0.5, so nothing can pair with the origin inside R = 0.5
        let mut t = zero_table(16).unwrap();
        let s = orth_search(0.5, SearchStrategy::Exact, &mut t, 1e-9).unwrap();
        assert_eq!(s.len(), 1);
        // grid cross-check: no grid point in the ball is orthogonal to 0
        let r1 = t.radius(1);
        let mut found = false;
        let steps = 101;
        for i in 0..steps {
            for j in 0..steps {
                let x = -0.5 + i as f64 / 100.0;
                let y = -0.5 + j as f64 / 100.0;
                let p = Point2::new(x, y);
                if p.norm() <= 0.5 && (p.norm() - r1).abs() < 1e-9 {
                    found = true;
                }
            }
        }
        assert!(!found);
    }

    #[test]
    fn exact_search_finds_equilateral_triple() {
        let mut t = zero_table(16).unwrap();
        let s = orth_search(0.7, SearchStrategy::Exact, &mut t, 1e-9).unwrap();
        assert_eq!(s.len(), 3);
        let r1 = t.radius(1);
        let p = s.points();
        assert!((p[1].x - r1).abs() < 1e-12 && p[1].y.abs() < 1e-12);
        assert!((p[2].x - r1 / 2.0).abs() < 1e-9);
        assert!((p[2].y - r1 * 3f64.sqrt() / 2.0).abs() < 1e-9);
        verify_orthogonal_set(&s, &t, 1e-9).unwrap();
    }

    #[test]
    fn greedy_search_saturates_at_three() {
        let mut t = zero_table(40).unwrap();
        let s = orth_search(5.0, SearchStrategy::Greedy, &mut t, 1e-9).unwrap();
        assert_eq!(s.len(), 3);
        verify_orthogonal_set(&s, &t, 1e-9).unwrap();
    }

    #[test]
    fn collinear_sum_of_radii_rejected() {
        // {0, r1 e1, (r1+r2) e1} requires r1 + r2 to be a zero radius,
        // which it is not
        let mut t = zero_table(20).unwrap();
        let r1 = t.radius(1);
        let r2 = t.radius(2);
        let set = FrequencySet::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(r1, 0.0),
            Point2::new(r1 + r2, 0.0),
        ])
        .unwrap();
        match distance_gap_demo(&set, &mut t, 1e-9, 0.01) {
            Err(Error::NonOrthogonalSet(_, _, d)) => {
                assert!((d - (r1 + r2)).abs() < 1e-12);
            }
            other => panic!("expected non-orthogonal error, got {other:?}"),
        }
    }

    #[test]
    fn gap_demo_equilateral_single_distance() {
        let mut t = zero_table(20).unwrap();
        let r1 = t.radius(1);
        let set = FrequencySet::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(r1, 0.0),
            Point2::new(r1 / 2.0, r1 * 3f64.sqrt() / 2.0),
        ])
        .unwrap();
        let rep = distance_gap_demo(&set, &mut t, 1e-9, 0.01).unwrap();
        assert_eq!(rep.realized.len(), 1);
        assert!(rep.pass); // no qualifying pair of consecutive distances
        assert!(rep.min_qualifying_gap.is_none());
        assert_eq!(rep.gaps.len(), 1); // [0, r1 - 2 eps)
    }

    #[test]
    fn gap_demo_isoceles_large_distances() {
        // triangle with sides (r8, r8, r9): two realized distances past r5
        let mut t = zero_table(40).unwrap();
        let r8 = t.radius(8);
        let r9 = t.radius(9);
        let apex = circle_intersections(
            Point2::new(0.0, 0.0),
            r8,
            Point2::new(r8, 0.0),
            r9,
        )
        .into_iter()
        .find(|p| p.y > 0.0)
        .unwrap();
        let set = FrequencySet::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(r8, 0.0),
            apex,
        ])
        .unwrap();
        let rep = distance_gap_demo(&set, &mut t, 1e-9, 0.01).unwrap();
        assert_eq!(rep.realized.len(), 2);
        let g = rep.min_qualifying_gap.unwrap();
        assert!(rep.pass, "gap {g} vs threshold {}", rep.threshold);
        assert!((g - (r9 - r8 - 4.0 * rep.epsilon)).abs() < 1e-12);
    }
}
