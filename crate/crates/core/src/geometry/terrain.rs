use std::cmp::Ordering;

use super::{fmt_q, orient, parse_coord, Point};
use crate::error::{parse_err, Error, Result};
use crate::graph::{check_label, content_lines, Graph, VertexOrder};

/// An x-monotone chain with labelled vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Terrain {
    pub points: Vec<Point>,
    pub labels: Vec<String>,
}

impl Terrain {
    /// Vertices labelled `p1..pn`.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let labels = (1..=points.len()).map(|i| format!("p{i}")).collect();
        Terrain::with_labels(points, labels)
    }

    pub fn with_labels(points: Vec<Point>, labels: Vec<String>) -> Result<Self> {
        if points.len() != labels.len() {
            return Err(Error::SizeMismatch(format!("{} points, {} labels", points.len(), labels.len())));
        }
        if let Some(w) = points.windows(2).position(|w| w[0].x >= w[1].x) {
            return Err(Error::InvalidScene(format!("terrain x-coordinates not increasing at vertex {}", w + 2)));
        }
        for l in &labels {
            check_label(l)?;
        }
        Ok(Terrain { points, labels })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `terrain <n>` then `x y` or `label x y` per line.
    pub fn parse(text: &str) -> Result<Self> {
        let (n, rows) = parse_point_list(text, "terrain")?;
        let labels = rows.iter().enumerate().map(|(i, r)| r.0.clone().unwrap_or(format!("p{}", i + 1))).collect();
        let points: Vec<Point> = rows.into_iter().map(|r| r.1).collect();
        debug_assert_eq!(points.len(), n);
        Terrain::with_labels(points, labels)
    }

    pub fn to_text(&self) -> String {
        point_list_text("terrain", &self.labels, &self.points)
    }

    /// Every vertex strictly between `i < j` is on or below the sight line.
    pub fn sees(&self, i: usize, j: usize) -> bool {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        (i + 1..j).all(|k| orient(&self.points[i], &self.points[j], &self.points[k]) != Ordering::Greater)
    }
}

pub(crate) type PointRow = (Option<String>, Point);

pub(crate) fn parse_point_list(text: &str, kind: &str) -> Result<(usize, Vec<PointRow>)> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty document"))?;
    let n: usize = header
        .strip_prefix(kind)
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| parse_err(ln, format!("expected \"{kind} <n>\"")))?;
    let mut rows = Vec::with_capacity(n);
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let (label, xy) = match toks.len() {
            2 => (None, &toks[..]),
            3 => (Some(toks[0].to_string()), &toks[1..]),
            _ => return Err(parse_err(ln, "expected \"x y\" or \"label x y\"")),
        };
        rows.push((label, Point::new(parse_coord(ln, xy[0])?, parse_coord(ln, xy[1])?)));
    }
    if rows.len() != n {
        return Err(parse_err(ln, format!("header announces {n} points, found {}", rows.len())));
    }
    Ok((n, rows))
}

pub(crate) fn point_list_text(kind: &str, labels: &[String], points: &[Point]) -> String {
    let mut out = format!("{kind} {}\n", points.len());
    for (l, p) in labels.iter().zip(points) {
        out += &format!("{l} {} {}\n", fmt_q(&p.x), fmt_q(&p.y));
    }
    out
}

/// Visibility graph with the left-to-right order.
pub fn terrain_visibility(t: &Terrain) -> (Graph, VertexOrder) {
    let n = t.len();
    let mut g = Graph::new(t.labels.clone()).expect("labels validated by the terrain");
    for i in 0..n {
        // sweep j rightwards keeping the steepest blocking vertex
        let mut best: Option<usize> = None;
        for j in i + 1..n {
            let visible = match best {
                None => true,
                Some(k) => orient(&t.points[i], &t.points[j], &t.points[k]) != Ordering::Greater,
            };
            if visible {
                g.add_edge(i, j).expect("i < j");
            }
            let steeper = match best {
                None => true,
                Some(k) => orient(&t.points[i], &t.points[k], &t.points[j]) != Ordering::Less,
            };
            if steeper {
                best = Some(j);
            }
        }
    }
    (g, VertexOrder::identity(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Q;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Clips each chain edge to the x-range of the sight segment and
    /// compares heights at the clipped ends.
    fn oracle_sees(t: &Terrain, i: usize, j: usize) -> bool {
        let (a, b) = (&t.points[i], &t.points[j]);
        let line_y = |x: &Q| &a.y + (&b.y - &a.y) * (x - &a.x) / (&b.x - &a.x);
        for e in 0..t.len() - 1 {
            let (p, r) = (&t.points[e], &t.points[e + 1]);
            let lo = p.x.clone().max(a.x.clone());
            let hi = r.x.clone().min(b.x.clone());
            if lo > hi {
                continue;
            }
            let chain_y = |x: &Q| &p.y + (&r.y - &p.y) * (x - &p.x) / (&r.x - &p.x);
            for x in [&lo, &hi] {
                if chain_y(x) - line_y(x) > Q::zero() {
                    return false;
                }
            }
        }
        true
    }

    fn random_terrain(rng: &mut ChaCha8Rng, n: usize) -> Terrain {
        let mut x = 0;
        let pts = (0..n)
            .map(|_| {
                x += rng.gen_range(1..4);
                Point::int(x, rng.gen_range(0..8))
            })
            .collect();
        Terrain::new(pts).unwrap()
    }

    #[test]
    fn small_terrains() {
        let t = Terrain::new(vec![Point::int(0, 0), Point::int(1, 1), Point::int(2, 2)]).unwrap();
        assert_eq!(terrain_visibility(&t).0.edge_count(), 3);
        let v = Terrain::new(vec![Point::int(0, 1), Point::int(1, 0), Point::int(2, 1)]).unwrap();
        assert!(terrain_visibility(&v).0.adjacent(0, 2));
        let peak = Terrain::new(vec![Point::int(0, 0), Point::int(1, 1), Point::int(2, 0)]).unwrap();
        assert!(!terrain_visibility(&peak).0.adjacent(0, 2));
        assert!(Terrain::new(vec![Point::int(0, 0), Point::int(0, 1)]).is_err());
        let parsed = Terrain::parse("terrain 2\n0 0\nfoo 1/2 3\n").unwrap();
        assert_eq!(parsed.labels, vec!["p1", "foo"]);
        assert_eq!(parsed.points[1].x, crate::geometry::q_frac(1, 2));
        assert_eq!(Terrain::parse(&parsed.to_text()).unwrap(), parsed);
    }

    #[test]
    fn random_terrains_match_the_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        for _ in 0..20 {
            let t = random_terrain(&mut rng, 20);
            let (g, _) = terrain_visibility(&t);
            for i in 0..20 {
                for j in i + 1..20 {
                    assert_eq!(g.adjacent(i, j), oracle_sees(&t, i, j), "{i} {j}");
                    assert_eq!(t.sees(i, j), oracle_sees(&t, i, j));
                }
            }
        }
    }
}
