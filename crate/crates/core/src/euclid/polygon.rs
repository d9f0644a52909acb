//! Simple polygons with rational vertices and the boundary-integral
//! transform obtained from the divergence theorem.
//!
//! For `zeta != 0` the transform of the indicator reduces to a sum of
//! closed-form edge integrals:
//!
//! `P^(zeta) = -1/(2 pi i |zeta|) sum_k (zeta_hat . nu_k) L_k
//!             exp(-2 pi i zeta . v_k) E(zeta . d_k)`
//!
//! with `v_k` the edge start, `d_k` the edge vector, `L_k` its length and
//! `nu_k` the outward unit normal. Validation (simplicity, orientation) is
//! exact integer arithmetic on a common-denominator grid.

use num_complex::Complex64;
use num_rational::Ratio;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::euclid::kernels::{phase, unit_interval_ft};
use crate::{Error, Result};

pub type Coord = Ratio<i64>;

/// A rational coordinate that deserializes from either an integer JSON
/// number or a `"p/q"` string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalCoord(pub Coord);

impl Serialize for RationalCoord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            s.serialize_i64(*self.0.numer())
        } else {
            s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
        }
    }
}

impl<'de> Deserialize<'de> for RationalCoord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => {
                if v.fract() == 0.0 && v.abs() <= 2f64.powi(53) {
                    Ok(RationalCoord(Coord::from_integer(v as i64)))
                } else {
                    Err(D::Error::custom(
                        "non-integer coordinates must be rational strings like \"1/2\"",
                    ))
                }
            }
            Raw::Str(s) => {
                let r: Coord = s
                    .trim()
                    .parse()
                    .map_err(|e| D::Error::custom(format!("bad rational '{s}': {e}")))?;
                Ok(RationalCoord(r))
            }
        }
    }
}

/// JSON wire form: `{"vertices":[[x,y],...]}`.
#[derive(Clone, Serialize, Deserialize)]
pub struct PolygonDescriptor {
    pub vertices: Vec<[RationalCoord; 2]>,
}

/// A simple, positively oriented (counter-clockwise) polygon.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<(Coord, Coord)>,
    verts_f64: Vec<(f64, f64)>,
}

impl Polygon {
    pub fn new(vertices: Vec<(Coord, Coord)>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon("need at least 3 vertices".into()));
        }
        let scaled = to_integer_grid(&vertices)?;
        validate_simple(&scaled)?;
        let area2 = shoelace_doubled(&scaled);
        if area2 == 0 {
            return Err(Error::InvalidPolygon("zero area".into()));
        }
        if area2 < 0 {
            return Err(Error::InvalidPolygon(
                "vertices must be counter-clockwise".into(),
            ));
        }
        let verts_f64 = vertices
            .iter()
            .map(|(x, y)| (ratio_to_f64(*x), ratio_to_f64(*y)))
            .collect();
        Ok(Polygon {
            vertices,
            verts_f64,
        })
    }

    pub fn from_descriptor(d: &PolygonDescriptor) -> Result<Self> {
        Self::new(
            d.vertices
                .iter()
                .map(|[x, y]| (x.0, y.0))
                .collect(),
        )
    }

    pub fn descriptor(&self) -> PolygonDescriptor {
        PolygonDescriptor {
            vertices: self
                .vertices
                .iter()
                .map(|&(x, y)| [RationalCoord(x), RationalCoord(y)])
                .collect(),
        }
    }

    /// Triangle with vertices (0,0), (1,0), (0,1).
    pub fn standard_triangle() -> Self {
        let z = Coord::from_integer(0);
        let o = Coord::from_integer(1);
        Polygon::new(vec![(z, z), (o, z), (z, o)]).expect("valid")
    }

    /// Unit square [0,1]^2.
    pub fn unit_square() -> Self {
        let z = Coord::from_integer(0);
        let o = Coord::from_integer(1);
        Polygon::new(vec![(z, z), (o, z), (o, o), (z, o)]).expect("valid")
    }

    pub fn vertices(&self) -> &[(Coord, Coord)] {
        &self.vertices
    }

    pub fn vertices_f64(&self) -> &[(f64, f64)] {
        &self.verts_f64
    }

    /// Exact rational area (shoelace).
    pub fn area(&self) -> Coord {
        let n = self.vertices.len();
        let mut acc = Coord::from_integer(0);
        for i in 0..n {
            let (x0, y0) = self.vertices[i];
            let (x1, y1) = self.vertices[(i + 1) % n];
            acc += x0 * y1 - x1 * y0;
        }
        acc / Coord::from_integer(2)
    }

    pub fn area_f64(&self) -> f64 {
        ratio_to_f64(self.area())
    }

    /// Boundary-integral transform; errors at the origin where the formula
    /// is singular (the value there is the area).
    pub fn ft_boundary(&self, xi: f64, eta: f64) -> Result<Complex64> {
        if xi == 0.0 && eta == 0.0 {
            return Err(Error::OriginFrequency);
        }
        let norm = xi.hypot(eta);
        let n = self.verts_f64.len();
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let (x0, y0) = self.verts_f64[k];
            let (x1, y1) = self.verts_f64[(k + 1) % n];
            let (dx, dy) = (x1 - x0, y1 - y0);
            // (zeta_hat . nu) L = (xi dy - eta dx) / |zeta| for CCW edges
            let weight = (xi * dy - eta * dx) / norm;
            if weight == 0.0 {
                continue;
            }
            sum += weight * phase(xi * x0 + eta * y0) * unit_interval_ft(xi * dx + eta * dy);
        }
        // -1/(2 pi i |zeta|) = i/(2 pi |zeta|)
        Ok(Complex64::new(0.0, 1.0 / (2.0 * std::f64::consts::PI * norm)) * sum)
    }

    /// Transform everywhere: boundary integral away from 0, area at 0.
    pub fn ft(&self, xi: f64, eta: f64) -> Complex64 {
        if xi == 0.0 && eta == 0.0 {
            Complex64::new(self.area_f64(), 0.0)
        } else {
            self.ft_boundary(xi, eta).expect("nonzero frequency")
        }
    }

    /// Bounding box in f64.
    pub fn bounding_box(&self) -> (f64, f64, f64, f64) {
        let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &(x, y) in &self.verts_f64 {
            b.0 = b.0.min(x);
            b.1 = b.1.min(y);
            b.2 = b.2.max(x);
            b.3 = b.3.max(y);
        }
        b
    }

    /// Crossing-number membership test. Points on the boundary are
    /// classified by the ray convention; torus sampling jitters past them.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        let n = self.verts_f64.len();
        let mut inside = false;
        for k in 0..n {
            let (x0, y0) = self.verts_f64[k];
            let (x1, y1) = self.verts_f64[(k + 1) % n];
            if (y0 > y) != (y1 > y) {
                let t = (y - y0) / (y1 - y0);
                if x < x0 + t * (x1 - x0) {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

fn ratio_to_f64(r: Coord) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Scale all vertices onto a common integer grid for exact predicates.
fn to_integer_grid(vertices: &[(Coord, Coord)]) -> Result<Vec<(i128, i128)>> {
    let mut lcm: i128 = 1;
    for &(x, y) in vertices {
        for d in [*x.denom() as i128, *y.denom() as i128] {
            lcm = num_integer::lcm(lcm, d);
            if lcm > 1 << 40 {
                return Err(Error::InvalidPolygon(
                    "vertex denominators too large for exact validation".into(),
                ));
            }
        }
    }
    vertices
        .iter()
        .map(|&(x, y)| {
            let sx = (*x.numer() as i128).checked_mul(lcm / *x.denom() as i128);
            let sy = (*y.numer() as i128).checked_mul(lcm / *y.denom() as i128);
            match (sx, sy) {
                (Some(a), Some(b)) if a.abs() < 1 << 62 && b.abs() < 1 << 62 => Ok((a, b)),
                _ => Err(Error::InvalidPolygon("vertex coordinates too large".into())),
            }
        })
        .collect()
}

fn cross(o: (i128, i128), a: (i128, i128), b: (i128, i128)) -> i128 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn shoelace_doubled(v: &[(i128, i128)]) -> i128 {
    let n = v.len();
    let mut acc = 0i128;
    for i in 0..n {
        let (x0, y0) = v[i];
        let (x1, y1) = v[(i + 1) % n];
        acc += x0 * y1 - x1 * y0;
    }
    acc
}

fn on_segment(p: (i128, i128), q: (i128, i128), r: (i128, i128)) -> bool {
    // r collinear with pq assumed; is r within the bounding box?
    r.0 >= p.0.min(q.0) && r.0 <= p.0.max(q.0) && r.1 >= p.1.min(q.1) && r.1 <= p.1.max(q.1)
}

fn segments_intersect(p1: (i128, i128), p2: (i128, i128), q1: (i128, i128), q2: (i128, i128)) -> bool {
    let d1 = cross(q1, q2, p1).signum();
    let d2 = cross(q1, q2, p2).signum();
    let d3 = cross(p1, p2, q1).signum();
    let d4 = cross(p1, p2, q2).signum();
    if d1 != d2 && d3 != d4 && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0 {
        return true;
    }
    (d1 == 0 && on_segment(q1, q2, p1))
        || (d2 == 0 && on_segment(q1, q2, p2))
        || (d3 == 0 && on_segment(p1, p2, q1))
        || (d4 == 0 && on_segment(p1, p2, q2))
}

fn validate_simple(v: &[(i128, i128)]) -> Result<()> {
    let n = v.len();
    for i in 0..n {
        if v[i] == v[(i + 1) % n] {
            return Err(Error::InvalidPolygon(format!("zero-length edge at vertex {i}")));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let (a1, a2) = (v[i], v[(i + 1) % n]);
            let (b1, b2) = (v[j], v[(j + 1) % n]);
            let adjacent = (i + 1) % n == j || (j + 1) % n == i;
            if adjacent {
                // shared endpoint; forbid doubling back over the same ray
                let (shared, pa, pb) = if (i + 1) % n == j {
                    (v[j], v[i], v[(j + 1) % n])
                } else {
                    (v[i], v[j], v[(i + 1) % n])
                };
                if cross(shared, pa, pb) == 0 {
                    let dot = (pa.0 - shared.0) * (pb.0 - shared.0)
                        + (pa.1 - shared.1) * (pb.1 - shared.1);
                    if dot > 0 {
                        return Err(Error::InvalidPolygon(format!(
                            "edges {i} and {j} overlap"
                        )));
                    }
                }
            } else if segments_intersect(a1, a2, b1, b2) {
                return Err(Error::InvalidPolygon(format!(
                    "edges {i} and {j} intersect"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid::triangle_ft;

    fn r(n: i64) -> Coord {
        Coord::from_integer(n)
    }

    #[test]
    fn validation() {
        // CW rejected
        assert!(Polygon::new(vec![(r(0), r(0)), (r(0), r(1)), (r(1), r(0))]).is_err());
        // self-intersecting bowtie rejected
        assert!(Polygon::new(vec![
            (r(0), r(0)),
            (r(1), r(1)),
            (r(1), r(0)),
            (r(0), r(1))
        ])
        .is_err());
        // repeated vertex rejected
        assert!(Polygon::new(vec![(r(0), r(0)), (r(0), r(0)), (r(1), r(0))]).is_err());
        // triangle accepted, area exact
        let t = Polygon::standard_triangle();
        assert_eq!(t.area(), Ratio::new(1, 2));
    }

    #[test]
    fn rational_vertices_parse() {
        let json = r#"{"vertices":[[0,0],["3/2",0],[0,"3/2"]]}"#;
        let d: PolygonDescriptor = serde_json::from_str(json).unwrap();
        let p = Polygon::from_descriptor(&d).unwrap();
        assert_eq!(p.area(), Ratio::new(9, 8));
        // non-integer plain numbers are rejected
        assert!(serde_json::from_str::<PolygonDescriptor>(
            r#"{"vertices":[[0.5,0],[1,0],[0,1]]}"#
        )
        .is_err());
    }

    #[test]
    fn boundary_matches_closed_form_on_triangle() {
        let t = Polygon::standard_triangle();
        for &(xi, eta) in &[
            (1.0, 2.0),
            (0.5, 0.0),
            (0.0, 0.5),
            (3.3, -4.4),
            (0.1, 0.05),
            (60.0, 33.3),
        ] {
            let b = t.ft_boundary(xi, eta).unwrap();
            let c = triangle_ft(xi, eta);
            assert!((b - c).norm() < 1e-10, "({xi},{eta}): {}", (b - c).norm());
        }
    }

    #[test]
    fn boundary_exact_zero_on_zero_set() {
        let t = Polygon::standard_triangle();
        assert_eq!(t.ft_boundary(1.0, 2.0).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(t.ft_boundary(-3.0, 5.0).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn square_separable_oracle() {
        // product of interval transforms; vanishes at (m, n), m != 0
        let s = Polygon::unit_square();
        for &(xi, eta) in &[(1.0, 0.0), (2.0, 3.0), (5.0, 0.25), (-7.0, 1.5)] {
            let b = s.ft_boundary(xi, eta).unwrap();
            let sep = unit_interval_ft(xi) * unit_interval_ft(eta);
            assert!((b - sep).norm() < 1e-10, "({xi},{eta})");
        }
        assert!(s.ft_boundary(3.0, 7.0).unwrap().norm() < 1e-15);
    }

    #[test]
    fn origin_is_an_error() {
        let t = Polygon::standard_triangle();
        match t.ft_boundary(0.0, 0.0) {
            Err(Error::OriginFrequency) => {}
            other => panic!("expected origin error, got {other:?}"),
        }
        assert_eq!(t.ft(0.0, 0.0), Complex64::new(0.5, 0.0));
    }

    #[test]
    fn containment() {
        let t = Polygon::standard_triangle();
        assert!(t.contains(0.2, 0.2));
        assert!(!t.contains(0.7, 0.7));
        assert!(!t.contains(-0.1, 0.5));
    }
}
