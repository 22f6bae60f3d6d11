//! Planar primitives: points, circles, segments and the predicates the
//! discretization and waypoint search are built on.
//!
//! Every containment or intersection predicate takes its tolerance
//! explicitly; [`EPS`] is the crate-wide default in instance units.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default geometric tolerance, in instance units.
pub const EPS: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("circle radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("point coordinates must be finite")]
    NonFinite,
    #[error("circles are concentric with equal radii")]
    DegenerateCircles,
    #[error("direction is undefined: segment passes through the circle center")]
    DegenerateDirection,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist(&self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(&self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3-D cross product.
    pub fn cross(&self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    /// Counterclockwise perpendicular.
    pub fn perp(&self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn lerp(&self, other: Point, t: f64) -> Point {
        Point::new(self.x + t * (other.x - self.x), self.y + t * (other.y - self.y))
    }

    pub fn midpoint(&self, other: Point) -> Point {
        self.lerp(other, 0.5)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self, GeometryError> {
        if !center.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(GeometryError::InvalidRadius(radius));
        }
        Ok(Circle { center, radius })
    }

    pub fn contains(&self, p: Point, eps: f64) -> bool {
        point_in_circle(p, self, eps)
    }

    /// Boundary point at polar angle `theta` around the center.
    pub fn point_at(&self, theta: f64) -> Point {
        Point::new(
            self.center.x + self.radius * theta.cos(),
            self.center.y + self.radius * theta.sin(),
        )
    }

    /// Polar angle of `p` around the center, in `(-pi, pi]`.
    pub fn angle_of(&self, p: Point) -> f64 {
        (p.y - self.center.y).atan2(p.x - self.center.x)
    }
}

/// Boundary intersections of two circles: zero, one (tangency) or two points.
///
/// With two points, the first lies to the left of the directed line from
/// `a.center` to `b.center`.
pub fn circle_intersections(a: &Circle, b: &Circle, eps: f64) -> Result<Vec<Point>, GeometryError> {
    let delta = b.center - a.center;
    let d = delta.norm();
    if d <= eps {
        if (a.radius - b.radius).abs() <= eps {
            return Err(GeometryError::DegenerateCircles);
        }
        return Ok(Vec::new());
    }
    let outer = a.radius + b.radius;
    let inner = (a.radius - b.radius).abs();
    if d > outer + eps || d < inner - eps {
        return Ok(Vec::new());
    }
    let u = delta * (1.0 / d);
    // signed distance from a.center to the radical line along u
    let along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    if (d - outer).abs() <= eps || (d - inner).abs() <= eps {
        let along = along.clamp(-a.radius, a.radius);
        return Ok(vec![a.center + u * along]);
    }
    let h2 = a.radius * a.radius - along * along;
    if h2 <= 0.0 {
        return Ok(vec![a.center + u * along]);
    }
    let h = h2.sqrt();
    let foot = a.center + u * along;
    let n = u.perp();
    Ok(vec![foot + n * h, foot - n * h])
}

/// Closed-disk membership with tolerance.
pub fn point_in_circle(p: Point, c: &Circle, eps: f64) -> bool {
    p.dist(c.center) <= c.radius + eps
}

/// Parameter `t` in `[0, 1]` of the point on segment `a`-`b` closest to `p`.
pub fn project_parameter(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return 0.0;
    }
    ((p - a).dot(d) / len2).clamp(0.0, 1.0)
}

/// Closest point to `p` on the segment `a`-`b`; `a` when the segment is degenerate.
pub fn project_point_to_segment(p: Point, a: Point, b: Point) -> Point {
    a.lerp(b, project_parameter(p, a, b))
}

pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    p.dist(project_point_to_segment(p, a, b))
}

/// How a segment meets a circle.
///
/// `Crossing` and `Inside` complete the picture for segments with an
/// endpoint inside the disk; they have no boundary pair to report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentCircleRelation {
    Disjoint,
    Tangent(Point),
    /// Two boundary points, ordered along `a -> b`.
    Chord(Point, Point),
    /// Exactly one boundary crossing; one endpoint lies strictly inside.
    Crossing(Point),
    /// The whole segment lies strictly inside the disk.
    Inside,
}

pub fn segment_circle_relation(a: Point, b: Point, c: &Circle, eps: f64) -> SegmentCircleRelation {
    let d = b - a;
    let len = d.norm();
    if len <= eps {
        let r = a.dist(c.center);
        return if (r - c.radius).abs() <= eps {
            SegmentCircleRelation::Tangent(a)
        } else if r < c.radius {
            SegmentCircleRelation::Inside
        } else {
            SegmentCircleRelation::Disjoint
        };
    }
    let u = d * (1.0 / len);
    let s_foot = (c.center - a).dot(u);
    let foot = a + u * s_foot;
    let line_dist = foot.dist(c.center);
    let tol = eps;
    if line_dist > c.radius + eps {
        return SegmentCircleRelation::Disjoint;
    }
    if (line_dist - c.radius).abs() <= eps {
        return if s_foot >= -tol && s_foot <= len + tol {
            SegmentCircleRelation::Tangent(foot)
        } else {
            SegmentCircleRelation::Disjoint
        };
    }
    let h = (c.radius * c.radius - line_dist * line_dist).max(0.0).sqrt();
    let (s1, s2) = (s_foot - h, s_foot + h);
    let in1 = s1 >= -tol && s1 <= len + tol;
    let in2 = s2 >= -tol && s2 <= len + tol;
    match (in1, in2) {
        (true, true) => SegmentCircleRelation::Chord(a + u * s1, a + u * s2),
        (true, false) => SegmentCircleRelation::Crossing(a + u * s1),
        (false, true) => SegmentCircleRelation::Crossing(a + u * s2),
        (false, false) => {
            if s1 < 0.0 && s2 > len {
                SegmentCircleRelation::Inside
            } else {
                SegmentCircleRelation::Disjoint
            }
        }
    }
}

/// Parameter interval `[t0, t1]` within `[0, 1]` where the segment lies in the
/// closed disk, or `None` if it misses the disk.
pub fn segment_disk_interval(a: Point, b: Point, c: &Circle, eps: f64) -> Option<(f64, f64)> {
    let d = b - a;
    let len = d.norm();
    if len <= eps {
        return point_in_circle(a, c, eps).then_some((0.0, 1.0));
    }
    let u = d * (1.0 / len);
    let s_foot = (c.center - a).dot(u);
    let line_dist = (a + u * s_foot).dist(c.center);
    if line_dist > c.radius + eps {
        return None;
    }
    let h = (c.radius * c.radius - line_dist * line_dist).max(0.0).sqrt();
    let t0 = ((s_foot - h) / len).max(0.0);
    let t1 = ((s_foot + h) / len).min(1.0);
    (t0 <= t1 + eps / len).then_some((t0, t1.max(t0)))
}

/// Boundary point of `c` nearest to the segment `a`-`b`, for a segment that
/// does not meet the circle.
///
/// Fails with [`GeometryError::DegenerateDirection`] when the segment passes
/// through the center; callers fall back to `c.point_at(0.0)`.
pub fn closest_point_on_circle_to_segment(c: &Circle, a: Point, b: Point) -> Result<Point, GeometryError> {
    let q = project_point_to_segment(c.center, a, b);
    let dir = q - c.center;
    let len = dir.norm();
    if len <= EPS {
        return Err(GeometryError::DegenerateDirection);
    }
    Ok(c.center + dir * (c.radius / len))
}
