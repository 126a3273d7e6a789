//! Newton polygons of integer polynomials at a prime.
//!
//! The polygon is the lower convex hull of the points `(k, v_p(c_k))` over
//! the nonzero coefficients. Points on the interior of a hull segment are not
//! vertices, so consecutive edges always have strictly increasing slopes.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exactmath::{is_prime, vp_nonzero};
use crate::poly::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NewtonError {
    #[error("the zero polynomial has no Newton polygon")]
    ZeroPolynomial,
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("polygon has a single vertex and no edges")]
    NoEdges,
    #[error("edge indices {i}..{j} invalid for degree {degree}")]
    BadIndices { i: usize, j: usize, degree: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Point {
    pub k: usize,
    pub v: i64,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub prime: BigInt,
    /// Finite points `(k, v_p(c_k))`, increasing in `k`.
    pub points: Vec<Point>,
    /// Lower hull vertices, increasing in `k`.
    pub vertices: Vec<Point>,
}

/// A hull segment between consecutive vertices `(i, v_i)` and `(j, v_j)`:
/// run `a = j − i`, signed rise `b = v_j − v_i`, slope `b/a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NewtonEdge {
    pub i: usize,
    pub j: usize,
    pub vi: i64,
    pub vj: i64,
    pub a: i64,
    pub b: i64,
}

impl NewtonEdge {
    fn between(l: Point, r: Point) -> Self {
        NewtonEdge {
            i: l.k,
            j: r.k,
            vi: l.v,
            vj: r.v,
            a: (r.k - l.k) as i64,
            b: r.v - l.v,
        }
    }

    pub fn slope(&self) -> Ratio<i64> {
        Ratio::new(self.b, self.a)
    }

    pub fn height(&self) -> u64 {
        self.b.unsigned_abs()
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b) == 1
    }
}

impl fmt::Display for NewtonEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})-({},{}) a={} b={}",
            self.i, self.vi, self.j, self.vj, self.a, self.b
        )
    }
}

/// The five hypotheses of the Eisenstein-type edge criterion for an index
/// pair `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeConditions {
    /// `c_i` and `c_j` are nonzero.
    pub nonzero_endpoints: bool,
    /// `v_p(c_i) ≠ v_p(c_j)`.
    pub not_horizontal: bool,
    /// `gcd(a, b) = 1`.
    pub coprime_run_rise: bool,
    /// `p ∤ b`.
    pub prime_does_not_divide_rise: bool,
    /// Every other point lies on or above the chord inside `[i, j]` and
    /// strictly above its extension outside.
    pub supporting_line: bool,
}

impl EdgeConditions {
    pub fn all_hold(&self) -> bool {
        self.nonzero_endpoints
            && self.not_horizontal
            && self.coprime_run_rise
            && self.prime_does_not_divide_rise
            && self.supporting_line
    }
}

fn cross(o: Point, a: Point, b: Point) -> i128 {
    (a.k as i128 - o.k as i128) * (b.v as i128 - o.v as i128)
        - (a.v as i128 - o.v as i128) * (b.k as i128 - o.k as i128)
}

fn valuations(f: &IntPolynomial, p: &BigInt) -> Vec<Option<i64>> {
    f.coeffs()
        .iter()
        .map(|c| (!c.is_zero()).then(|| vp_nonzero(c, p)))
        .collect()
}

impl NewtonPolygon {
    pub fn new(f: &IntPolynomial, p: &BigInt) -> Result<Self, NewtonError> {
        if f.is_zero() {
            return Err(NewtonError::ZeroPolynomial);
        }
        if !is_prime(p) {
            return Err(NewtonError::NotPrime(p.clone()));
        }
        let points: Vec<Point> = valuations(f, p)
            .into_iter()
            .enumerate()
            .filter_map(|(k, v)| v.map(|v| Point { k, v }))
            .collect();
        let mut hull: Vec<Point> = Vec::with_capacity(points.len());
        for &pt in &points {
            while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
                hull.pop();
            }
            hull.push(pt);
        }
        Ok(NewtonPolygon {
            prime: p.clone(),
            points,
            vertices: hull,
        })
    }

    /// Hull edges left to right; an error for single-vertex polygons.
    pub fn edges(&self) -> Result<Vec<NewtonEdge>, NewtonError> {
        if self.vertices.len() < 2 {
            return Err(NewtonError::NoEdges);
        }
        Ok(self
            .vertices
            .windows(2)
            .map(|w| NewtonEdge::between(w[0], w[1]))
            .collect())
    }

    /// Edges, empty when the polygon is a single vertex.
    pub fn edges_or_empty(&self) -> Vec<NewtonEdge> {
        self.edges().unwrap_or_default()
    }

    /// The polygon as an SVG drawing: all points, hull vertices, hull edges.
    pub fn to_svg(&self) -> String {
        const UNIT: i64 = 40;
        const PAD: i64 = 30;
        let max_k = self.points.iter().map(|p| p.k as i64).max().unwrap_or(0);
        let max_v = self.points.iter().map(|p| p.v).max().unwrap_or(0);
        let min_v = self.points.iter().map(|p| p.v).min().unwrap_or(0).min(0);
        let w = max_k * UNIT + 2 * PAD;
        let h = (max_v - min_v) * UNIT + 2 * PAD;
        let x = |k: usize| PAD + k as i64 * UNIT;
        let y = |v: i64| PAD + (max_v - v) * UNIT;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        for k in 0..=max_k as usize {
            let _ = writeln!(
                s,
                r##"  <line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="#ccc"/>"##,
                x(k),
                PAD,
                h - PAD
            );
        }
        for v in min_v..=max_v {
            let _ = writeln!(
                s,
                r#"  <line x1="{1}" y1="{0}" x2="{2}" y2="{0}" stroke="{3}"/>"#,
                y(v),
                PAD,
                w - PAD,
                if v == 0 { "#000" } else { "#ccc" }
            );
        }
        let path: Vec<String> = self
            .vertices
            .iter()
            .map(|p| format!("{},{}", x(p.k), y(p.v)))
            .collect();
        let _ = writeln!(
            s,
            r##"  <polyline points="{}" fill="none" stroke="#000" stroke-width="3"/>"##,
            path.join(" ")
        );
        for p in &self.points {
            let _ = writeln!(s, r#"  <circle cx="{}" cy="{}" r="5"/>"#, x(p.k), y(p.v));
        }
        let _ = writeln!(
            s,
            r#"  <text x="{}" y="{}" font-size="12">v_{}(c_k)</text>"#,
            4, 14, self.prime
        );
        s.push_str("</svg>\n");
        s
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} vertices:", self.prime)?;
        for v in &self.vertices {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

pub fn newton_polygon(f: &IntPolynomial, p: &BigInt) -> Result<NewtonPolygon, NewtonError> {
    NewtonPolygon::new(f, p)
}

/// Evaluates the edge hypotheses for indices `i < j` of `f` at `p`. The pair
/// need not be a hull edge.
pub fn check_edge_conditions(
    f: &IntPolynomial,
    p: &BigInt,
    i: usize,
    j: usize,
) -> Result<EdgeConditions, NewtonError> {
    let degree = f.degree().ok_or(NewtonError::ZeroPolynomial)?;
    if i >= j || j > degree {
        return Err(NewtonError::BadIndices { i, j, degree });
    }
    if !is_prime(p) {
        return Err(NewtonError::NotPrime(p.clone()));
    }
    let vals = valuations(f, p);
    let (Some(vi), Some(vj)) = (vals[i], vals[j]) else {
        return Ok(EdgeConditions {
            nonzero_endpoints: false,
            not_horizontal: false,
            coprime_run_rise: false,
            prime_does_not_divide_rise: false,
            supporting_line: false,
        });
    };
    let a = (j - i) as i64;
    let b = vj - vi;
    // a·(v_k − v_i) against b·(k − i), cleared of the slope denominator
    let supporting_line = vals.iter().enumerate().all(|(k, v)| {
        let Some(v) = *v else { return true };
        if k == i || k == j {
            return true;
        }
        let lhs = a as i128 * (v - vi) as i128;
        let rhs = b as i128 * (k as i128 - i as i128);
        if i < k && k < j {
            lhs >= rhs
        } else {
            lhs > rhs
        }
    });
    Ok(EdgeConditions {
        nonzero_endpoints: true,
        not_horizontal: b != 0,
        coprime_run_rise: a.gcd(&b) == 1,
        prime_does_not_divide_rise: !(BigInt::from(b) % p).is_zero(),
        supporting_line,
    })
}
