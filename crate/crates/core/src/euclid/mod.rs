//! Planar Fourier analysis of the standard triangle and related domains.
//!
//! The closed form used everywhere comes from writing the transform as a
//! second divided difference of the exponential: with `E(u)` the transform
//! of the unit interval,
//!
//! `T^(xi, eta) = (E(eta) - E(xi)) / (2 pi i (xi - eta))`,
//!
//! which is symmetric in `(xi, eta)` and makes the three removable lines
//! `xi = 0`, `eta = 0`, `xi = eta` explicit: near the diagonal the quotient
//! is evaluated by an odd-order series in derivatives of `D(z) = (e^z-1)/z`.
//! Zeros land exactly on `{(m,n) integer: m != 0, n != 0, m != n}`.

pub mod kernels;
pub mod lattice;
pub mod polygon;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use lattice::{lattice_parseval_check, Domain, FundamentalDomainCheck, Lattice, ParsevalReport};
pub use polygon::Polygon;

use crate::{Error, Result};
use kernels::{d_derivative, unit_interval_ft};

/// Default switchover to the diagonal series (see `ToleranceConfig`).
const DIAGONAL_SERIES_THRESHOLD: f64 = 3e-3;

/// Transform of the triangle with vertices (0,0), (1,0), (0,1).
///
/// Exact at the removable lines: `(0,0)` gives the area 1/2, integer points
/// of the zero set give exactly 0.
pub fn triangle_ft(xi: f64, eta: f64) -> Complex64 {
    if (xi - eta).abs() >= DIAGONAL_SERIES_THRESHOLD {
        let num = unit_interval_ft(eta) - unit_interval_ft(xi);
        num / Complex64::new(0.0, 2.0 * std::f64::consts::PI * (xi - eta))
    } else {
        // divided difference along the segment [a, b], a = -2 pi i xi,
        // b = -2 pi i eta: D'(mid) + h^2/6 D'''(mid) + h^4/120 D^(5)(mid)
        let mid = Complex64::new(0.0, -std::f64::consts::PI * (xi + eta));
        let h = Complex64::new(0.0, -std::f64::consts::PI * (xi - eta));
        let h2 = h * h;
        d_derivative(1, mid)
            + h2 / 6.0 * d_derivative(3, mid)
            + h2 * h2 / 120.0 * d_derivative(5, mid)
    }
}

/// Membership in the triangle's zero set `Z = {(m,n): m != 0, n != 0, m != n}`.
pub fn triangle_zero_predicate(m: i64, n: i64) -> bool {
    m != 0 && n != 0 && m != n
}

/// Transform of the measure `mu = delta_0 - 1_[0,1]`: `mu^ = 1 - E`.
pub fn mu_ft(xi: f64) -> Complex64 {
    Complex64::new(1.0, 0.0) - unit_interval_ft(xi)
}

/// Transform of the roof projection `g` (1 at 0, 0 at 1, linear between):
/// `g^(xi) = mu^(xi) / (2 pi i xi)`, with the limit 1/2 at 0.
///
/// Coincides with `triangle_ft(xi, 0)` by construction.
pub fn projection_ft(xi: f64) -> Complex64 {
    triangle_ft(xi, 0.0)
}

/// Grid scan of `|T^|` over the strip `K <= |xi| <= 10K`, `|eta| < eps`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StripScanReport {
    pub k: f64,
    pub eps: f64,
    pub step_xi: f64,
    pub step_eta: f64,
    pub grid_points: u64,
    pub min_modulus: f64,
    pub argmin_xi: f64,
    pub argmin_eta: f64,
    /// PASS iff the minimum modulus stays above the configured floor.
    pub pass: bool,
}

/// Evaluate `|triangle_ft|` on the strip grid and report the minimum.
///
/// PASS when the minimum exceeds `min_floor` (default 1e-6), certifying the
/// grid sees no zero in the strip.
pub fn zero_free_strip_scan(
    k: f64,
    eps: f64,
    step_xi: f64,
    step_eta: f64,
    min_floor: f64,
) -> Result<StripScanReport> {
    if k <= 0.0 || eps <= 0.0 {
        return Err(Error::InvalidParameter("K and eps must be positive".into()));
    }
    if step_xi <= 0.0 || step_eta <= 0.0 || step_xi > eps / 4.0 || step_eta > eps / 4.0 {
        return Err(Error::InvalidParameter(format!(
            "grid steps must be positive and at most eps/4 = {}",
            eps / 4.0
        )));
    }
    // integer-indexed grid so that e.g. eta = 1.0 is hit exactly when it
    // belongs to the lattice of steps
    let xi_lo = (k / step_xi).ceil() as i64;
    let xi_hi = (10.0 * k / step_xi).floor() as i64;
    let eta_bound = ((eps - f64::EPSILON) / step_eta).floor() as i64;
    let eta_values: Vec<f64> = (-eta_bound..=eta_bound)
        .map(|j| j as f64 * step_eta)
        .collect();

    struct Best {
        min: f64,
        at: (f64, f64),
        count: u64,
    }
    let best = (xi_lo..=xi_hi)
        .into_par_iter()
        .flat_map(|i| [i, -i].into_par_iter())
        .map(|i| {
            let xi = i as f64 * step_xi;
            let mut local = Best {
                min: f64::INFINITY,
                at: (xi, 0.0),
                count: 0,
            };
            for &eta in &eta_values {
                let m = triangle_ft(xi, eta).norm();
                local.count += 1;
                if m < local.min {
                    local.min = m;
                    local.at = (xi, eta);
                }
            }
            local
        })
        .reduce(
            || Best {
                min: f64::INFINITY,
                at: (0.0, 0.0),
                count: 0,
            },
            |a, b| Best {
                min: a.min.min(b.min),
                at: if b.min < a.min { b.at } else { a.at },
                count: a.count + b.count,
            },
        );
    Ok(StripScanReport {
        k,
        eps,
        step_xi,
        step_eta,
        grid_points: best.count,
        min_modulus: best.min,
        argmin_xi: best.at.0,
        argmin_eta: best.at.1,
        pass: best.min > min_floor,
    })
}

/// Central-difference gradient of the triangle transform.
pub fn triangle_ft_gradient_fd(xi: f64, eta: f64, h: f64) -> (Complex64, Complex64) {
    let gx = (triangle_ft(xi + h, eta) - triangle_ft(xi - h, eta)) / (2.0 * h);
    let gy = (triangle_ft(xi, eta + h) - triangle_ft(xi, eta - h)) / (2.0 * h);
    (gx, gy)
}

/// Empirical instance of the gradient decay bound `|grad T^| <= C/|zeta|`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradientBoundReport {
    pub calibration_samples: u32,
    pub test_samples: u32,
    pub fd_step: f64,
    /// Max of `|grad| * |zeta|` over the calibration sample.
    pub c_calibrated: f64,
    /// Max over the disjoint test sample.
    pub test_max: f64,
    pub slack: f64,
    pub pass: bool,
}

/// Calibrate `C = max |grad T^| |zeta|` on one random sample of the annulus
/// `1 <= |zeta| <= 100` and assert the bound (with slack) on a disjoint one.
pub fn gradient_bound_check(
    calibration_samples: u32,
    test_samples: u32,
    seed: u64,
    fd_step: f64,
    slack: f64,
) -> GradientBoundReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |n: u32, rng: &mut ChaCha8Rng| -> Vec<(f64, f64)> {
        (0..n)
            .map(|_| {
                let r = rng.gen_range(1.0..=100.0);
                let th = rng.gen_range(0.0..std::f64::consts::TAU);
                (r * th.cos(), r * th.sin())
            })
            .collect()
    };
    let calib = draw(calibration_samples, &mut rng);
    let test = draw(test_samples, &mut rng);
    let product = |pts: &[(f64, f64)]| -> f64 {
        pts.par_iter()
            .map(|&(x, y)| {
                let (gx, gy) = triangle_ft_gradient_fd(x, y, fd_step);
                (gx.norm_sqr() + gy.norm_sqr()).sqrt() * x.hypot(y)
            })
            .reduce(|| 0.0, f64::max)
    };
    let c = product(&calib);
    let test_max = product(&test);
    GradientBoundReport {
        calibration_samples,
        test_samples,
        fd_step,
        c_calibrated: c,
        test_max,
        slack,
        pass: test_max <= slack * c,
    }
}
