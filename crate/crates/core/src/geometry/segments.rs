use std::collections::HashSet;

use super::{fmt_q, parse_coord, segments_intersect, Point};
use crate::error::{parse_err, Error, Result};
use crate::graph::{check_label, content_lines, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub id: String,
    pub p: Point,
    pub q: Point,
}

impl Segment {
    pub fn new(id: impl Into<String>, p: Point, q: Point) -> Result<Self> {
        let id = id.into();
        if p == q {
            return Err(Error::InvalidScene(format!("segment {id} is a point")));
        }
        Ok(Segment { id, p, q })
    }

    pub fn intersects(&self, o: &Segment) -> bool {
        segments_intersect(&self.p, &self.q, &o.p, &o.q)
    }

    pub fn is_horizontal(&self) -> bool {
        self.p.y == self.q.y
    }

    pub fn is_vertical(&self) -> bool {
        self.p.x == self.q.x
    }
}

/// Segments with a tie-breaking total order, given as ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentScene {
    pub segments: Vec<Segment>,
    /// `global_rank[i]` is the position of segment `i` in the tie-break order.
    pub global_rank: Vec<usize>,
}

impl SegmentScene {
    /// Scene whose tie-break order is the listing order.
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        let mut seen = HashSet::new();
        for s in &segments {
            check_label(&s.id)?;
            if !seen.insert(s.id.clone()) {
                return Err(Error::InvalidScene(format!("duplicate id {}", s.id)));
            }
        }
        let global_rank = (0..segments.len()).collect();
        Ok(SegmentScene { segments, global_rank })
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty document"))?;
        let n: usize = header
            .strip_prefix("segments")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| parse_err(ln, "expected \"segments <n>\""))?;
        let mut segs = Vec::with_capacity(n);
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 5 {
                return Err(parse_err(ln, "expected \"id x1 y1 x2 y2\""));
            }
            let c: Vec<_> = toks[1..].iter().map(|t| parse_coord(ln, t)).collect::<Result<_>>()?;
            let seg = Segment::new(toks[0], Point::new(c[0].clone(), c[1].clone()), Point::new(c[2].clone(), c[3].clone()))
                .map_err(|e| parse_err(ln, e.to_string()))?;
            segs.push(seg);
        }
        if segs.len() != n {
            return Err(parse_err(ln, format!("header announces {n} segments, found {}", segs.len())));
        }
        SegmentScene::new(segs)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("segments {}\n", self.len());
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by_key(|&i| self.global_rank[i]);
        for i in idx {
            let s = &self.segments[i];
            out += &format!("{} {} {} {} {}\n", s.id, fmt_q(&s.p.x), fmt_q(&s.p.y), fmt_q(&s.q.x), fmt_q(&s.q.y));
        }
        out
    }
}

/// Closed-segment intersection graph, labelled by segment ids.
pub fn intersection_graph(scene: &SegmentScene) -> Graph {
    let mut g = Graph::new(scene.segments.iter().map(|s| s.id.clone())).expect("ids validated by the scene");
    for (i, a) in scene.segments.iter().enumerate() {
        for (j, b) in scene.segments.iter().enumerate().skip(i + 1) {
            if a.intersects(b) {
                g.add_edge(i, j).expect("distinct segments");
            }
        }
    }
    g
}
