use std::cmp::Ordering;

use num_traits::Zero;

use super::terrain::{parse_point_list, point_list_text};
use super::{cross, on_segment, proper_crossing, segments_intersect, signed_area2, Point};
use crate::error::{Error, Result};
use crate::graph::{check_label, Graph, VertexOrder};

/// A simple polygon stored counter-clockwise from its lexicographically
/// smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePolygon {
    pub points: Vec<Point>,
    pub labels: Vec<String>,
}

impl SimplePolygon {
    /// Vertices labelled `v1..vn` in the given order.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let labels = (1..=points.len()).map(|i| format!("v{i}")).collect();
        SimplePolygon::with_labels(points, labels)
    }

    pub fn with_labels(mut points: Vec<Point>, mut labels: Vec<String>) -> Result<Self> {
        if points.len() != labels.len() {
            return Err(Error::SizeMismatch(format!("{} points, {} labels", points.len(), labels.len())));
        }
        for l in &labels {
            check_label(l)?;
        }
        check_simple(&points)?;
        if signed_area2(&points) < Zero::zero() {
            points.reverse();
            labels.reverse();
        }
        let start = (0..points.len()).min_by(|&a, &b| points[a].cmp(&points[b])).expect("non-empty");
        points.rotate_left(start);
        labels.rotate_left(start);
        Ok(SimplePolygon { points, labels })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (_, rows) = parse_point_list(text, "polygon")?;
        let labels = rows.iter().enumerate().map(|(i, r)| r.0.clone().unwrap_or(format!("v{}", i + 1))).collect();
        SimplePolygon::with_labels(rows.into_iter().map(|r| r.1).collect(), labels)
    }

    pub fn to_text(&self) -> String {
        point_list_text("polygon", &self.labels, &self.points)
    }

    fn prev(&self, i: usize) -> &Point {
        &self.points[(i + self.len() - 1) % self.len()]
    }

    fn next(&self, i: usize) -> &Point {
        &self.points[(i + 1) % self.len()]
    }

    /// Direction `d` leaves vertex `i` into the closed interior.
    fn in_cone(&self, i: usize, d: &Point) -> bool {
        let w = &self.points[i];
        let (p, n) = (self.prev(i).sub(w), self.next(i).sub(w));
        let zero = Zero::zero();
        match cross(&n, &p).cmp(&zero) {
            Ordering::Greater => cross(&n, d) >= zero && cross(d, &p) >= zero,
            Ordering::Less => !(cross(&p, d) > zero && cross(d, &n) > zero),
            Ordering::Equal => cross(&n, d) >= zero,
        }
    }

    /// The closed segment between vertices `u` and `v` lies in the closed
    /// polygon.
    pub fn sees(&self, u: usize, v: usize) -> bool {
        let n = self.len();
        if u == v {
            return true;
        }
        let (a, b) = (&self.points[u], &self.points[v]);
        for e in 0..n {
            if proper_crossing(a, b, &self.points[e], &self.points[(e + 1) % n]) {
                return false;
            }
        }
        let d = b.sub(a);
        let back = a.sub(b);
        (0..n).all(|w| {
            if w == u {
                self.in_cone(w, &d)
            } else if w == v {
                self.in_cone(w, &back)
            } else if on_segment(a, b, &self.points[w]) {
                self.in_cone(w, &d) && self.in_cone(w, &back)
            } else {
                true
            }
        })
    }
}

fn check_simple(pts: &[Point]) -> Result<()> {
    let n = pts.len();
    if n < 3 {
        return Err(Error::InvalidScene("a polygon needs at least 3 vertices".into()));
    }
    if signed_area2(pts).is_zero() {
        return Err(Error::InvalidScene("polygon has zero area".into()));
    }
    for i in 0..n {
        for j in i + 1..n {
            if pts[i] == pts[j] {
                return Err(Error::InvalidScene(format!("vertices {} and {} coincide", i + 1, j + 1)));
            }
        }
    }
    for i in 0..n {
        let (a, b) = (&pts[i], &pts[(i + 1) % n]);
        for j in i + 1..n {
            let (c, d) = (&pts[j], &pts[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let bad = if j == i + 1 {
                on_segment(c, d, a) || on_segment(a, b, d)
            } else if adjacent {
                on_segment(c, d, b) || on_segment(a, b, c)
            } else {
                segments_intersect(a, b, c, d)
            };
            if bad {
                return Err(Error::InvalidScene(format!("edges {} and {} intersect", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// Visibility graph with the boundary order.
pub fn polygon_visibility(p: &SimplePolygon) -> (Graph, VertexOrder) {
    let n = p.len();
    let mut g = Graph::new(p.labels.clone()).expect("labels validated by the polygon");
    for u in 0..n {
        for v in u + 1..n {
            if p.sees(u, v) {
                g.add_edge(u, v).expect("u < v");
            }
        }
    }
    (g, VertexOrder::identity(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{line_param, q_frac, Q};
    use num_traits::One;

    /// Closed point-in-polygon by crossing number, boundary counted inside.
    fn contains(p: &SimplePolygon, x: &Point) -> bool {
        let n = p.len();
        let mut inside = false;
        for i in 0..n {
            let (a, b) = (&p.points[i], &p.points[(i + 1) % n]);
            if on_segment(a, b, x) {
                return true;
            }
            if (a.y > x.y) != (b.y > x.y) {
                let xi = &a.x + (&x.y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y);
                if x.x < xi {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Splits the sight segment at every boundary contact and tests the
    /// midpoints of the pieces.
    fn oracle_sees(p: &SimplePolygon, u: usize, v: usize) -> bool {
        let (a, b) = (&p.points[u], &p.points[v]);
        let n = p.len();
        let mut cuts = vec![Q::zero(), Q::one()];
        for e in 0..n {
            let (c, d) = (&p.points[e], &p.points[(e + 1) % n]);
            for w in [c, d] {
                if on_segment(a, b, w) {
                    let dir = b.sub(a);
                    let t = if dir.x.is_zero() { (&w.y - &a.y) / &dir.y } else { (&w.x - &a.x) / &dir.x };
                    cuts.push(t);
                }
            }
            if let Some(t) = line_param(a, b, c, d) {
                if segments_intersect(a, b, c, d) {
                    cuts.push(t);
                }
            }
        }
        cuts.sort();
        cuts.dedup();
        cuts.windows(2).all(|w| contains(p, &a.lerp(b, &((&w[0] + &w[1]) * q_frac(1, 2)))))
    }

    fn poly(pts: &[(i64, i64)]) -> SimplePolygon {
        SimplePolygon::new(pts.iter().map(|&(x, y)| Point::int(x, y)).collect()).unwrap()
    }

    fn check_against_oracle(p: &SimplePolygon) {
        let (g, _) = polygon_visibility(p);
        for u in 0..p.len() {
            for v in u + 1..p.len() {
                assert_eq!(g.adjacent(u, v), oracle_sees(p, u, v), "{} {}", p.labels[u], p.labels[v]);
            }
        }
    }

    #[test]
    fn convex_is_complete() {
        let p = poly(&[(0, 0), (4, 0), (5, 3), (2, 5), (-1, 2)]);
        assert_eq!(polygon_visibility(&p).0.edge_count(), 10);
    }

    #[test]
    fn normalization() {
        let p = poly(&[(0, 3), (3, 3), (3, 0), (0, 0)]);
        assert_eq!(p.points[0], Point::int(0, 0));
        assert_eq!(p.points[1], Point::int(3, 0));
        assert_eq!(p.labels[0], "v4");
        assert!(SimplePolygon::new(vec![Point::int(0, 0), Point::int(2, 2), Point::int(2, 0), Point::int(0, 2)]).is_err());
        assert!(SimplePolygon::new(vec![Point::int(0, 0), Point::int(1, 1), Point::int(2, 2)]).is_err());
        assert_eq!(SimplePolygon::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn comb_teeth_do_not_see_each_other() {
        // two teeth with tips at (1, 4) and (3, 4)
        let p = poly(&[(0, 0), (4, 0), (4, 4), (3, 4), (3, 1), (2, 1), (2, 4), (1, 4), (1, 1), (0, 1)]);
        let tip = |x, y| p.points.iter().position(|q| *q == Point::int(x, y)).unwrap();
        let (g, _) = polygon_visibility(&p);
        assert!(!g.adjacent(tip(1, 4), tip(3, 4)));
        assert!(!g.adjacent(tip(2, 4), tip(4, 4)));
        check_against_oracle(&p);
    }

    #[test]
    fn collinear_and_reflex_cases_match_the_oracle() {
        check_against_oracle(&poly(&[(0, 0), (2, 0), (4, 0), (4, 4), (2, 2), (0, 4)]));
        check_against_oracle(&poly(&[(0, 0), (6, 0), (6, 2), (4, 2), (4, 1), (2, 1), (2, 2), (0, 2)]));
        check_against_oracle(&poly(&[(0, 0), (3, 0), (3, 3), (2, 1), (1, 2), (0, 3)]));
        check_against_oracle(&poly(&[(0, 0), (4, 0), (4, 2), (3, 2), (2, 1), (1, 2), (0, 2)]));
    }

    #[test]
    fn random_star_polygons_match_the_oracle() {
        for seed in 0..15 {
            let p = crate::generators::random_polygon(12, seed).unwrap();
            check_against_oracle(&p);
        }
    }
}
