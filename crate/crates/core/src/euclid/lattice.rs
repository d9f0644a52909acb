//! Planar lattices, dual lattices, and the truncated Parseval identity
//! `sum_{lambda in L*} |Omega^(t - lambda)|^2 = vol(Omega)^2` for a
//! fundamental domain `Omega` of `L`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::euclid::kernels::unit_interval_ft;
use crate::euclid::polygon::Polygon;
use crate::{Error, Result};

/// A full-rank planar lattice `L = B Z^2` (columns of `basis` generate).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Lattice {
    /// Row-major basis matrix; columns are the generators.
    pub basis: [[f64; 2]; 2],
}

impl Lattice {
    pub fn new(basis: [[f64; 2]; 2]) -> Result<Self> {
        let l = Lattice { basis };
        if l.det().abs() < 1e-12 || !l.det().is_finite() {
            return Err(Error::SingularBasis);
        }
        Ok(l)
    }

    pub fn integer() -> Self {
        Lattice {
            basis: [[1.0, 0.0], [0.0, 1.0]],
        }
    }

    pub fn det(&self) -> f64 {
        self.basis[0][0] * self.basis[1][1] - self.basis[0][1] * self.basis[1][0]
    }

    /// The dual lattice `L* = B^{-T} Z^2`.
    pub fn dual(&self) -> Lattice {
        let d = self.det();
        // inverse transpose of [[a,b],[c,d]] is 1/det [[d, -c],[-b, a]]
        let [[a, b], [c, dd]] = self.basis;
        Lattice {
            basis: [[dd / d, -c / d], [-b / d, a / d]],
        }
    }

    pub fn point(&self, k1: i64, k2: i64) -> (f64, f64) {
        (
            self.basis[0][0] * k1 as f64 + self.basis[0][1] * k2 as f64,
            self.basis[1][0] * k1 as f64 + self.basis[1][1] * k2 as f64,
        )
    }

    fn inverse_apply(&self, x: f64, y: f64) -> (f64, f64) {
        let d = self.det();
        let [[a, b], [c, dd]] = self.basis;
        ((dd * x - b * y) / d, (-c * x + a * y) / d)
    }

    fn frobenius(&self) -> f64 {
        self.basis
            .iter()
            .flatten()
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    }

    /// All lattice points in the closed ball of radius `rho`, ordered by
    /// integer coordinates (deterministic).
    pub fn points_in_ball(&self, rho: f64) -> Vec<(f64, f64)> {
        // |k| <= ||B^{-1}|| |lambda|; for 2x2 the inverse has Frobenius
        // norm ||B||_F / |det|
        let bound = (rho * self.frobenius() / self.det().abs()).ceil() as i64 + 1;
        let mut out = Vec::new();
        for k1 in -bound..=bound {
            for k2 in -bound..=bound {
                let (x, y) = self.point(k1, k2);
                if x.hypot(y) <= rho {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

/// A planar domain whose indicator transform we can evaluate: an axis
/// box `[0,w) x [0,h)` (separable closed form) or a rational polygon
/// (boundary integral).
#[derive(Clone, Debug)]
pub enum Domain {
    Box { width: f64, height: f64 },
    Polygon(Polygon),
}

impl Domain {
    pub fn unit_square() -> Self {
        Domain::Box {
            width: 1.0,
            height: 1.0,
        }
    }

    pub fn vol(&self) -> f64 {
        match self {
            Domain::Box { width, height } => width * height,
            Domain::Polygon(p) => p.area_f64(),
        }
    }

    pub fn ft(&self, xi: f64, eta: f64) -> Complex64 {
        match self {
            Domain::Box { width, height } => {
                width * height * unit_interval_ft(width * xi) * unit_interval_ft(height * eta)
            }
            Domain::Polygon(p) => p.ft(xi, eta),
        }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        match self {
            Domain::Box { width, height } => {
                (0.0..*width).contains(&x) && (0.0..*height).contains(&y)
            }
            Domain::Polygon(p) => p.contains(x, y),
        }
    }

    fn bounding_box(&self) -> (f64, f64, f64, f64) {
        match self {
            Domain::Box { width, height } => (0.0, 0.0, *width, *height),
            Domain::Polygon(p) => p.bounding_box(),
        }
    }
}

/// Result of the discretized-torus check that `Omega` is a fundamental
/// domain of `L`: every sample of the fundamental cell must be covered by
/// exactly one lattice translate of `Omega`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FundamentalDomainCheck {
    pub resolution: u32,
    pub samples: u64,
    pub ok: bool,
    /// A sample covered `bad_count` times (!= 1), when any.
    pub bad_point: Option<(f64, f64)>,
    pub bad_count: Option<u32>,
}

/// Sample the fundamental cell of `L` on an irrationally jittered grid and
/// count covering translates of `Omega` at every sample.
pub fn fundamental_domain_check(
    domain: &Domain,
    lattice: &Lattice,
    resolution: u32,
) -> FundamentalDomainCheck {
    // fixed irrational jitter keeps samples off translate boundaries
    const JX: f64 = 0.288_675_134_594_812_9; // 1/(2 sqrt 3)
    const JY: f64 = 0.211_324_865_405_187_1;
    let (bx0, by0, bx1, by1) = domain.bounding_box();
    let cell_diag = {
        let c1 = lattice.point(1, 0);
        let c2 = lattice.point(0, 1);
        c1.0.hypot(c1.1) + c2.0.hypot(c2.1)
    };
    let reach = (bx1 - bx0).hypot(by1 - by0) + cell_diag;
    let kmax = (reach * lattice.frobenius() / lattice.det().abs()).ceil() as i64 + 1;

    let res = resolution as i64;
    let rows: Vec<Option<((f64, f64), u32)>> = (0..res)
        .into_par_iter()
        .map(|i| {
            for j in 0..res {
                let u = (i as f64 + JX) / res as f64;
                let v = (j as f64 + JY) / res as f64;
                let x = lattice.basis[0][0] * u + lattice.basis[0][1] * v;
                let y = lattice.basis[1][0] * u + lattice.basis[1][1] * v;
                // center the candidate translates near x
                let (c1, c2) = lattice.inverse_apply(x - 0.5 * (bx0 + bx1), y - 0.5 * (by0 + by1));
                let (c1, c2) = (c1.round() as i64, c2.round() as i64);
                let mut count = 0u32;
                for k1 in (c1 - kmax)..=(c1 + kmax) {
                    for k2 in (c2 - kmax)..=(c2 + kmax) {
                        let (lx, ly) = lattice.point(k1, k2);
                        if domain.contains(x - lx, y - ly) {
                            count += 1;
                        }
                    }
                }
                if count != 1 {
                    return Some(((x, y), count));
                }
            }
            None
        })
        .collect();
    let bad = rows.into_iter().flatten().next();
    FundamentalDomainCheck {
        resolution,
        samples: (res * res) as u64,
        ok: bad.is_none(),
        bad_point: bad.map(|b| b.0),
        bad_count: bad.map(|b| b.1),
    }
}

/// Truncated Parseval sum report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParsevalReport {
    pub t: (f64, f64),
    pub truncation: f64,
    pub lattice_points: u64,
    pub fundamental_domain: FundamentalDomainCheck,
    /// `sum_{lambda in L* cap ball} |Omega^(t - lambda)|^2`; absent when the
    /// fundamental-domain pre-check fails.
    pub partial_sum: Option<f64>,
    pub expected: f64,
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

/// Verify the truncated Parseval identity for `Omega` against the dual of
/// `L` at offset `t`.
///
/// The pre-check first verifies on a discretized torus that `Omega` really
/// is a fundamental domain of `L`. The PASS tolerance defaults to the tail
/// schedule `tail_const / truncation`; an explicit tolerance overrides it.
pub fn lattice_parseval_check(
    domain: &Domain,
    lattice: &Lattice,
    t: (f64, f64),
    truncation: f64,
    resolution: u32,
    tail_const: f64,
    explicit_tolerance: Option<f64>,
) -> Result<ParsevalReport> {
    if truncation <= 0.0 || !truncation.is_finite() {
        return Err(Error::InvalidParameter("truncation must be positive".into()));
    }
    let fd = fundamental_domain_check(domain, lattice, resolution);
    let tolerance = explicit_tolerance.unwrap_or(tail_const / truncation);
    if !fd.ok {
        return Ok(ParsevalReport {
            t,
            truncation,
            lattice_points: 0,
            fundamental_domain: fd,
            partial_sum: None,
            expected: domain.vol() * domain.vol(),
            residual: None,
            tolerance,
            pass: false,
        });
    }
    let dual = lattice.dual();
    let points = dual.points_in_ball(truncation);
    let sum: f64 = points
        .par_iter()
        .map(|&(lx, ly)| domain.ft(t.0 - lx, t.1 - ly).norm_sqr())
        .sum();
    let expected = domain.vol() * domain.vol();
    let residual = (sum - expected).abs();
    Ok(ParsevalReport {
        t,
        truncation,
        lattice_points: points.len() as u64,
        fundamental_domain: fd,
        partial_sum: Some(sum),
        expected,
        residual: Some(residual),
        tolerance,
        pass: residual <= tolerance,
    })
}
