//! Planar frequency-point sets with counting and distance queries.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A point of the frequency plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// JSON wire form: `{"points":[[x,y],...]}`.
#[derive(Clone, Serialize, Deserialize)]
pub struct FrequencySetDescriptor {
    pub points: Vec<[f64; 2]>,
}

/// A finite set of frequency points, pairwise distinct.
#[derive(Clone, Debug)]
pub struct FrequencySet {
    points: Vec<Point2>,
    min_distance: Option<f64>,
}

impl FrequencySet {
    pub fn new(points: Vec<Point2>) -> Result<Self> {
        if points.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::InvalidParameter("non-finite frequency point".into()));
        }
        let mut min = f64::INFINITY;
        for (i, p) in points.iter().enumerate() {
            for q in &points[..i] {
                let d = p.dist(q);
                if d == 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "repeated frequency point ({}, {})",
                        p.x, p.y
                    )));
                }
                min = min.min(d);
            }
        }
        Ok(FrequencySet {
            points,
            min_distance: if min.is_finite() { Some(min) } else { None },
        })
    }

    pub fn from_descriptor(d: &FrequencySetDescriptor) -> Result<Self> {
        Self::new(d.points.iter().map(|&[x, y]| Point2::new(x, y)).collect())
    }

    pub fn descriptor(&self) -> FrequencySetDescriptor {
        FrequencySetDescriptor {
            points: self.points.iter().map(|p| [p.x, p.y]).collect(),
        }
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Smallest pairwise distance (`None` for fewer than two points).
    pub fn min_distance(&self) -> Option<f64> {
        self.min_distance
    }

    /// Largest pairwise distance (0 for fewer than two points).
    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[..i] {
                d = d.max(p.dist(q));
            }
        }
        d
    }

    /// Number of points in the closed ball of radius `r` about the origin.
    pub fn count_in_ball(&self, r: f64) -> usize {
        self.points.iter().filter(|p| p.norm() <= r).count()
    }

    /// Counting density `N(R) / (pi R^2)`.
    pub fn density(&self, r: f64) -> f64 {
        self.count_in_ball(r) as f64 / (std::f64::consts::PI * r * r)
    }

    /// The diagonal orthogonal family `{(-n, n)}` restricted to the closed
    /// ball of radius `r`.
    pub fn antidiagonal_within(r: f64) -> Self {
        let m = (r / std::f64::consts::SQRT_2).floor() as i64;
        let points = (-m..=m)
            .map(|n| Point2::new(-(n as f64), n as f64))
            .collect();
        FrequencySet::new(points).expect("distinct by construction")
    }

    /// All integer lattice points in the closed ball of radius `r`.
    pub fn integer_lattice_within(r: f64) -> Self {
        let m = r.floor() as i64;
        let mut points = Vec::new();
        for i in -m..=m {
            for j in -m..=m {
                if ((i * i + j * j) as f64) <= r * r {
                    points.push(Point2::new(i as f64, j as f64));
                }
            }
        }
        FrequencySet::new(points).expect("distinct by construction")
    }
}

/// Count and density of a point set in a growing ball.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DensityReport {
    pub radius: f64,
    pub count: usize,
    pub density: f64,
}

pub fn density_counter(set: &FrequencySet, radius: f64) -> Result<DensityReport> {
    if radius <= 0.0 || !radius.is_finite() {
        return Err(Error::InvalidParameter("radius must be positive".into()));
    }
    let count = set.count_in_ball(radius);
    Ok(DensityReport {
        radius,
        count,
        density: count as f64 / (std::f64::consts::PI * radius * radius),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antidiagonal_count_at_ten() {
        // |(-n, n)| = sqrt(2) |n| <= 10 iff |n| <= 7: 15 points
        let s = FrequencySet::antidiagonal_within(10.0);
        assert_eq!(s.len(), 15);
        let rep = density_counter(&s, 10.0).unwrap();
        assert_eq!(rep.count, 15);
        assert!((rep.density - 15.0 / (std::f64::consts::PI * 100.0)).abs() < 1e-15);
    }

    #[test]
    fn gauss_circle_at_ten() {
        // direct enumeration oracle: 317 integer points in the closed disk
        let s = FrequencySet::integer_lattice_within(10.0);
        assert_eq!(s.count_in_ball(10.0), 317);
        assert!((s.density(10.0) - 1.0).abs() < 0.01);
    }

    #[test]
    fn empty_set() {
        let s = FrequencySet::new(vec![]).unwrap();
        assert_eq!(s.count_in_ball(5.0), 0);
        assert_eq!(s.min_distance(), None);
    }

    #[test]
    fn duplicate_points_rejected() {
        let p = Point2::new(1.0, 2.0);
        assert!(FrequencySet::new(vec![p, p]).is_err());
    }
}
