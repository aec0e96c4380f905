//! Exact rational geometry: segment scenes, grids, terrains, polygons and
//! interval models.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Result;

pub mod grid;
pub mod intervals;
pub mod polygon;
pub mod segments;
pub mod terrain;
pub mod violations;

pub use grid::{
    circular_order, clip, crossing_rule_violations, gamma_splitting, general_position, is_general_position,
    BoundarySide, ClipPiece, GridSpec, Role, Splitting,
};
pub use intervals::{interval_graph, minimize_representation, IntervalModel};
pub use polygon::{polygon_visibility, SimplePolygon};
pub use segments::{intersection_graph, Segment, SegmentScene};
pub use terrain::{terrain_visibility, Terrain};
pub use violations::{double_x_violations, first_double_x_violation, order_claim_violations};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q`, an integer or a finite decimal such as `-0.25`.
pub fn parse_q(tok: &str) -> Option<Q> {
    if let Some((n, d)) = tok.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        return (!d.is_zero()).then(|| Q::new(n, d));
    }
    if let Some((int, frac)) = tok.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let v = Q::new(n, d);
        return Some(if neg { -v } else { v });
    }
    tok.parse::<BigInt>().ok().map(Q::from_integer)
}

pub fn fmt_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point::new(q(x), q(y))
    }

    /// From decimal or fractional tokens; panics on malformed input.
    pub fn parse_pair(x: &str, y: &str) -> Self {
        Point::new(parse_q(x).expect("coordinate"), parse_q(y).expect("coordinate"))
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, s: &Q) -> Point {
        Point::new(&self.x * s, &self.y * s)
    }

    /// `self + s (o - self)`.
    pub fn lerp(&self, o: &Point, s: &Q) -> Point {
        self.add(&o.sub(self).scale(s))
    }
}

pub fn cross(a: &Point, b: &Point) -> Q {
    &a.x * &b.y - &a.y * &b.x
}

pub fn dot(a: &Point, b: &Point) -> Q {
    &a.x * &b.x + &a.y * &b.y
}

/// Sign of the turn `a -> b -> c`: `Greater` for counter-clockwise.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    cross(&b.sub(a), &c.sub(a)).cmp(&Q::zero())
}

/// `p` lies on the closed segment `ab`.
pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    orient(a, b, p) == Ordering::Equal
        && a.x.clone().min(b.x.clone()) <= p.x
        && p.x <= a.x.clone().max(b.x.clone())
        && a.y.clone().min(b.y.clone()) <= p.y
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Closed segments `ab` and `cd` share a point.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != Ordering::Equal && o2 != Ordering::Equal
        && o3 != Ordering::Equal && o4 != Ordering::Equal
    {
        return true;
    }
    on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

/// Interiors of `ab` and `cd` cross at a single point.
pub fn proper_crossing(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    o1 != Ordering::Equal
        && o2 != Ordering::Equal
        && o3 != Ordering::Equal
        && o4 != Ordering::Equal
        && o1 != o2
        && o3 != o4
}

/// Parameter `s` along `ab` of the intersection with the line through `cd`,
/// if the lines are not parallel.
pub fn line_param(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<Q> {
    let r = b.sub(a);
    let s = d.sub(c);
    let den = cross(&r, &s);
    if den.is_zero() {
        return None;
    }
    Some(cross(&c.sub(a), &s) / den)
}

/// The unique common point of two non-parallel intersecting segments.
pub fn crossing_point(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<Point> {
    if !segments_intersect(a, b, c, d) {
        return None;
    }
    line_param(a, b, c, d).map(|s| a.lerp(b, &s))
}

/// Twice the signed area.
pub fn signed_area2(pts: &[Point]) -> Q {
    let n = pts.len();
    (0..n).map(|i| cross(&pts[i], &pts[(i + 1) % n])).fold(Q::zero(), |a, b| a + b)
}

pub(crate) fn parse_coord(ln: usize, tok: &str) -> Result<Q> {
    parse_q(tok).ok_or_else(|| crate::error::parse_err(ln, format!("bad rational {tok:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_q("3/6"), Some(q_frac(1, 2)));
        assert_eq!(parse_q("-0.25"), Some(q_frac(-1, 4)));
        assert_eq!(parse_q("-0.3"), Some(q_frac(-3, 10)));
        assert_eq!(parse_q("7"), Some(q(7)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
        assert_eq!(fmt_q(&q_frac(-6, 4)), "-3/2");
    }

    #[test]
    fn predicates() {
        let p = |x, y| Point::int(x, y);
        assert!(segments_intersect(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)));
        assert!(proper_crossing(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)));
        assert!(segments_intersect(&p(0, 0), &p(2, 0), &p(2, 0), &p(3, 1)));
        assert!(!proper_crossing(&p(0, 0), &p(2, 0), &p(2, 0), &p(3, 1)));
        assert!(!segments_intersect(&p(0, 0), &p(1, 0), &p(0, 1), &p(1, 1)));
        assert!(segments_intersect(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)));
        assert_eq!(crossing_point(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)), Some(p(1, 1)));
        assert_eq!(signed_area2(&[p(0, 0), p(1, 0), p(0, 1)]), q(1));
    }
}
