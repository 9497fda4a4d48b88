//! Newton polygons: lower convex hulls of integer point clouds, their
//! principal parts, λ-components and lattice-point counts.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{OmError, Result};
use crate::exactnum::BigRat;

/// A cloud point; `y = None` stands for an infinite ordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PPoint {
    pub x: i64,
    pub y: Option<i64>,
}

impl PPoint {
    pub fn finite(x: i64, y: i64) -> Self {
        PPoint { x, y: Some(y) }
    }

    pub fn infinite(x: i64) -> Self {
        PPoint { x, y: None }
    }
}

/// A side between two consecutive hull vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Side {
    pub start: (i64, i64),
    pub end: (i64, i64),
}

impl Side {
    pub fn slope(&self) -> BigRat {
        BigRat::new(
            BigInt::from(self.end.1 - self.start.1),
            BigInt::from(self.end.0 - self.start.0),
        )
    }

    /// `(h, e)` with `-slope = h/e` in lowest terms and `e > 0`.
    pub fn lambda(&self) -> (i64, i64) {
        let dx = self.end.0 - self.start.0;
        let dy = self.start.1 - self.end.1;
        let g = dx.gcd(&dy);
        (dy / g, dx / g)
    }

    pub fn length(&self) -> i64 {
        self.end.0 - self.start.0
    }

    /// Number of lattice segments, `length / e`.
    pub fn degree(&self) -> i64 {
        self.length() / self.lambda().1
    }
}

/// A lower convex polygon given by its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    vertices: Vec<(i64, i64)>,
}

impl NewtonPolygon {
    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    pub fn sides(&self) -> Vec<Side> {
        self.vertices.windows(2).map(|w| Side { start: w[0], end: w[1] }).collect()
    }

    /// Ordinate of the polygon above abscissa `x` (within its range).
    pub fn ordinate(&self, x: i64) -> BigRat {
        for s in self.sides() {
            if s.start.0 <= x && x <= s.end.0 {
                return BigRat::from_integer(BigInt::from(s.start.1))
                    + s.slope() * BigInt::from(x - s.start.0);
            }
        }
        let v = self.vertices[0];
        assert_eq!(v.0, x, "abscissa outside the polygon");
        BigRat::from_integer(BigInt::from(v.1))
    }
}

/// Lower convex hull of the finite points of a cloud.
pub fn lower_hull(points: &[PPoint]) -> Result<NewtonPolygon> {
    let mut pts: Vec<(i64, i64)> = points.iter().filter_map(|p| p.y.map(|y| (p.x, y))).collect();
    if pts.is_empty() {
        return Err(OmError::Precondition("hull of an empty cloud".into()));
    }
    pts.sort();
    pts.dedup_by_key(|p| p.0);
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // drop b unless the turn a -> b -> p is strictly convex
            let cross = (b.0 - a.0) as i128 * (p.1 - a.1) as i128
                - (b.1 - a.1) as i128 * (p.0 - a.0) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    Ok(NewtonPolygon { vertices: hull })
}

/// The sides of negative slope and the abscissa where they end.
pub fn principal_part(n: &NewtonPolygon) -> (Vec<Side>, i64) {
    let sides: Vec<Side> = n.sides().into_iter().take_while(|s| s.end.1 < s.start.1).collect();
    let len = sides.last().map_or(n.vertices[0].0, |s| s.end.0);
    (sides, len)
}

/// The principal polygon `N^-` as a polygon in its own right.
pub fn principal_polygon(n: &NewtonPolygon) -> NewtonPolygon {
    let (sides, _) = principal_part(n);
    let mut vertices = vec![n.vertices[0]];
    vertices.extend(sides.iter().map(|s| s.end));
    NewtonPolygon { vertices }
}

/// End abscissas of the λ-component for `λ = h/e` and its intercept
/// `min(y + λ x)`.
pub fn lambda_component_he(n: &NewtonPolygon, h: i64, e: i64) -> (i64, i64, BigRat) {
    let key = |v: &(i64, i64)| e as i128 * v.1 as i128 + h as i128 * v.0 as i128;
    let best = n.vertices.iter().map(key).min().expect("nonempty polygon");
    let on: Vec<i64> = n.vertices.iter().filter(|v| key(v) == best).map(|v| v.0).collect();
    (on[0], *on.last().unwrap(), BigRat::new(BigInt::from(best), BigInt::from(e)))
}

/// λ-component for a positive rational `λ`.
pub fn lambda_component(n: &NewtonPolygon, lambda: &BigRat) -> (i64, i64, BigRat) {
    let h: i64 = lambda.numer().try_into().expect("slope numerator fits i64");
    let e: i64 = lambda.denom().try_into().expect("slope denominator fits i64");
    lambda_component_he(n, h, e)
}

/// Integer points `(x, y)` with `x >= 1`, on or below the polygon and
/// strictly above the line of slope `-cut` through the last vertex.
pub fn lattice_points_under(n: &NewtonPolygon, cut: i64) -> u64 {
    let (last_x, last_y) = *n.vertices.last().unwrap();
    let mut count: i64 = 0;
    for s in n.sides() {
        let dx = s.end.0 - s.start.0;
        let dy = s.end.1 - s.start.1;
        for x in s.start.0.max(1)..s.end.0 {
            let num = s.start.1 as i128 * dx as i128 + dy as i128 * (x - s.start.0) as i128;
            let top = Integer::div_floor(&num, &(dx as i128)) as i64;
            count += (top - last_y - cut * (last_x - x)).max(0);
        }
    }
    count as u64
}
