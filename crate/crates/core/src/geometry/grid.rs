use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::{line_param, segments_intersect, Point, SegmentScene, Q};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Square grid of cell size `t` with a line through `offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub t: Q,
    pub offset: Point,
}

pub type Cell = (i64, i64);

impl GridSpec {
    pub fn new(t: Q, offset: Point) -> Result<Self> {
        if t <= Q::zero() {
            return Err(Error::Precondition("grid cell size must be positive".into()));
        }
        Ok(GridSpec { t, offset })
    }

    pub fn unit() -> Self {
        GridSpec { t: super::q(1), offset: Point::int(0, 0) }
    }

    fn index(&self, v: &Q, o: &Q) -> Q {
        (v - o) / &self.t
    }

    pub fn on_vertical_line(&self, x: &Q) -> bool {
        self.index(x, &self.offset.x).is_integer()
    }

    pub fn on_horizontal_line(&self, y: &Q) -> bool {
        self.index(y, &self.offset.y).is_integer()
    }

    pub fn on_grid(&self, p: &Point) -> bool {
        self.on_vertical_line(&p.x) || self.on_horizontal_line(&p.y)
    }

    fn floor_index(&self, v: &Q, o: &Q) -> i64 {
        self.index(v, o).floor().to_integer().to_i64().expect("cell index fits in i64")
    }

    /// Cell containing `p` in its half-open lower-left closure.
    pub fn cell_of(&self, p: &Point) -> Cell {
        (self.floor_index(&p.x, &self.offset.x), self.floor_index(&p.y, &self.offset.y))
    }

    /// `(x0, x1, y0, y1)` of a cell.
    pub fn bounds(&self, (i, j): Cell) -> (Q, Q, Q, Q) {
        let x0 = &self.offset.x + &self.t * super::q(i);
        let y0 = &self.offset.y + &self.t * super::q(j);
        let x1 = &x0 + &self.t;
        let y1 = &y0 + &self.t;
        (x0, x1, y0, y1)
    }
}

fn critical_coordinates(scene: &SegmentScene) -> (BTreeSet<Q>, BTreeSet<Q>) {
    let mut xs = BTreeSet::new();
    let mut ys = BTreeSet::new();
    for s in &scene.segments {
        for p in [&s.p, &s.q] {
            xs.insert(p.x.clone());
            ys.insert(p.y.clone());
        }
    }
    for (i, a) in scene.segments.iter().enumerate() {
        for b in &scene.segments[i + 1..] {
            if let Some(c) = super::crossing_point(&a.p, &a.q, &b.p, &b.q) {
                xs.insert(c.x);
                ys.insert(c.y);
            }
        }
    }
    (xs, ys)
}

/// No segment endpoint or crossing point lies on a grid line.
pub fn is_general_position(scene: &SegmentScene, grid: &GridSpec) -> bool {
    let (xs, ys) = critical_coordinates(scene);
    xs.iter().all(|x| !grid.on_vertical_line(x)) && ys.iter().all(|y| !grid.on_horizontal_line(y))
}

/// Translates the grid diagonally by the first shift `i t / (2m + 1)`,
/// `i = 0..=2m`, that puts it in general position; `m` counts the distinct
/// critical coordinates.
pub fn general_position(scene: &SegmentScene, grid: &GridSpec) -> GridSpec {
    let (xs, ys) = critical_coordinates(scene);
    let m = (xs.len() + ys.len()) as i64;
    for i in 0..=2 * m {
        let d = &grid.t * super::q_frac(i, 2 * m + 1);
        let cand = GridSpec { t: grid.t.clone(), offset: Point::new(&grid.offset.x + &d, &grid.offset.y + &d) };
        if xs.iter().all(|x| !cand.on_vertical_line(x)) && ys.iter().all(|y| !cand.on_horizontal_line(y)) {
            return cand;
        }
    }
    unreachable!("each critical coordinate rules out at most one shift")
}

/// A positive-length piece of a segment inside one closed cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClipPiece {
    pub origin: usize,
    pub p: Point,
    pub q: Point,
}

impl ClipPiece {
    pub fn intersects(&self, o: &ClipPiece) -> bool {
        segments_intersect(&self.p, &self.q, &o.p, &o.q)
    }
}

/// Parameter range of `p + s (q - p)` inside the closed box.
fn clip_params(p: &Point, q: &Point, (x0, x1, y0, y1): &(Q, Q, Q, Q)) -> Option<(Q, Q)> {
    let mut lo = Q::zero();
    let mut hi = super::q(1);
    let d = q.sub(p);
    for (dv, pv, min, max) in [(&d.x, &p.x, x0, x1), (&d.y, &p.y, y0, y1)] {
        if dv.is_zero() {
            if pv < min || pv > max {
                return None;
            }
            continue;
        }
        let a = (min - pv) / dv;
        let b = (max - pv) / dv;
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        lo = lo.max(a);
        hi = hi.min(b);
    }
    (lo < hi).then_some((lo, hi))
}

/// The pieces of the scene inside one cell, in segment order.
pub fn clip(scene: &SegmentScene, grid: &GridSpec, cell: Cell) -> Vec<ClipPiece> {
    let b = grid.bounds(cell);
    scene
        .segments
        .iter()
        .enumerate()
        .filter_map(|(i, s)| {
            let (lo, hi) = clip_params(&s.p, &s.q, &b)?;
            Some(ClipPiece { origin: i, p: s.p.lerp(&s.q, &lo), q: s.p.lerp(&s.q, &hi) })
        })
        .collect()
}

/// All non-empty clips, keyed by cell.
pub fn clips(scene: &SegmentScene, grid: &GridSpec) -> BTreeMap<Cell, Vec<ClipPiece>> {
    let mut cells = BTreeSet::new();
    for s in &scene.segments {
        let (a, b) = (grid.cell_of(&s.p), grid.cell_of(&s.q));
        for i in a.0.min(b.0) - 1..=a.0.max(b.0) {
            for j in a.1.min(b.1) - 1..=a.1.max(b.1) {
                cells.insert((i, j));
            }
        }
    }
    cells
        .into_iter()
        .map(|c| (c, clip(scene, grid, c)))
        .filter(|(_, v)| !v.is_empty())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BoundarySide {
    L,
    B,
    R,
    T,
}

/// Position along the cell boundary, counter-clockwise from the top-left
/// corner, with the side it lies on.
pub fn perimeter_position(grid: &GridSpec, cell: Cell, p: &Point) -> Option<(Q, BoundarySide)> {
    let (x0, x1, y0, y1) = grid.bounds(cell);
    let t = &grid.t;
    let inside = x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1;
    if !inside {
        return None;
    }
    if p.x == x0 {
        Some((&y1 - &p.y, BoundarySide::L))
    } else if p.y == y0 {
        Some((t + (&p.x - &x0), BoundarySide::B))
    } else if p.x == x1 {
        Some((t * super::q(2) + (&p.y - &y0), BoundarySide::R))
    } else if p.y == y1 {
        Some((t * super::q(3) + (&x1 - &p.x), BoundarySide::T))
    } else {
        None
    }
}

/// First boundary contact of a piece.
pub fn first_contact(grid: &GridSpec, cell: Cell, piece: &ClipPiece) -> Option<(Q, BoundarySide)> {
    [&piece.p, &piece.q].into_iter().filter_map(|e| perimeter_position(grid, cell, e)).min()
}

/// Indices of `pieces` by first boundary contact, ties and contact-free
/// pieces ordered by the scene's global rank; contact-free pieces last.
pub fn circular_order(pieces: &[ClipPiece], grid: &GridSpec, cell: Cell, global_rank: &[usize]) -> Vec<usize> {
    let keys: Vec<(Option<Q>, usize)> = pieces
        .iter()
        .map(|pc| (first_contact(grid, cell, pc).map(|c| c.0), global_rank[pc.origin]))
        .collect();
    let mut idx: Vec<usize> = (0..pieces.len()).collect();
    idx.sort_by(|&a, &b| {
        let (pa, ra) = &keys[a];
        let (pb, rb) = &keys[b];
        match (pa, pb) {
            (Some(x), Some(y)) => x.cmp(y).then(ra.cmp(rb)),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => ra.cmp(rb),
        }
    });
    idx
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    S,
    D,
}

/// The 1-subdivided splitting graph of a scene along a grid.
#[derive(Debug, Clone)]
pub struct Splitting {
    pub graph: Graph,
    pub roles: Vec<Role>,
    /// Scene segment of each vertex.
    pub origin: Vec<usize>,
}

impl Splitting {
    /// Merges every vertex into its origin segment.
    pub fn contract_back(&self, scene: &SegmentScene) -> Graph {
        let mut g = Graph::new(scene.segments.iter().map(|s| s.id.clone())).expect("scene ids are valid");
        for (u, v) in self.graph.edges() {
            let (a, b) = (self.origin[u], self.origin[v]);
            if a != b {
                g.add_edge(a, b).expect("distinct origins");
            }
        }
        g
    }
}

/// Open-ended parameter interval of a sub-segment.
#[derive(Debug, Clone)]
struct Piece {
    lo: Q,
    lo_closed: bool,
    hi: Q,
    hi_closed: bool,
    vertex: usize,
}

impl Piece {
    fn contains(&self, s: &Q) -> bool {
        (if self.lo_closed { &self.lo <= s } else { &self.lo < s })
            && (if self.hi_closed { s <= &self.hi } else { s < &self.hi })
    }
}

pub(crate) fn grid_crossings(grid: &GridSpec, p: &Point, q: &Point) -> Vec<Q> {
    let mut out = BTreeSet::new();
    for (pv, qv, o) in [(&p.x, &q.x, &grid.offset.x), (&p.y, &q.y, &grid.offset.y)] {
        if pv == qv {
            continue;
        }
        let (lo, hi) = if pv < qv { (pv, qv) } else { (qv, pv) };
        let first = ((lo - o) / &grid.t).ceil().to_integer();
        let mut k = first;
        loop {
            let line = o + &grid.t * Q::from_integer(k.clone());
            if &line > hi {
                break;
            }
            if &line > lo && &line < hi {
                out.insert((&line - pv) / (qv - pv));
            }
            k.inc();
        }
    }
    out.into_iter().collect()
}

/// Subdivides every segment at its grid crossings: s-vertices for the
/// sub-segments, one degree-2 d-vertex per crossing, and edges between
/// intersecting sub-segments of different segments.
pub fn gamma_splitting(scene: &SegmentScene, grid: &GridSpec) -> Result<Splitting> {
    if !is_general_position(scene, grid) {
        return Err(Error::NotGeneralPosition("a critical point lies on a grid line".into()));
    }
    let mut labels = Vec::new();
    let mut roles = Vec::new();
    let mut origin = Vec::new();
    let mut edges = Vec::new();
    let mut pieces: Vec<Vec<Piece>> = Vec::with_capacity(scene.len());
    for (i, s) in scene.segments.iter().enumerate() {
        let cuts = grid_crossings(grid, &s.p, &s.q);
        if cuts.is_empty() {
            return Err(Error::NotHit(s.id.clone()));
        }
        let mut bounds = vec![Q::zero()];
        bounds.extend(cuts.iter().cloned());
        bounds.push(super::q(1));
        let mut ps = Vec::new();
        let mut push = |label: String, role: Role| {
            labels.push(label);
            roles.push(role);
            origin.push(i);
            labels.len() - 1
        };
        for k in 0..bounds.len() - 1 {
            let d = (k > 0).then(|| push(format!("{}_d{}", s.id, k), Role::D));
            let v = push(format!("{}_s{}", s.id, k + 1), Role::S);
            if let Some(d) = d {
                edges.push((ps.last().map(|p: &Piece| p.vertex).expect("previous piece"), d));
                edges.push((d, v));
            }
            ps.push(Piece {
                lo: bounds[k].clone(),
                lo_closed: k == 0,
                hi: bounds[k + 1].clone(),
                hi_closed: k + 2 == bounds.len(),
                vertex: v,
            });
        }
        pieces.push(ps);
    }
    for i in 0..scene.len() {
        for j in i + 1..scene.len() {
            let (a, b) = (&scene.segments[i], &scene.segments[j]);
            if !a.intersects(b) {
                continue;
            }
            match (line_param(&a.p, &a.q, &b.p, &b.q), line_param(&b.p, &b.q, &a.p, &a.q)) {
                (Some(sa), Some(sb)) => {
                    let pa = pieces[i].iter().find(|p| p.contains(&sa)).expect("parameter in [0, 1]");
                    let pb = pieces[j].iter().find(|p| p.contains(&sb)).expect("parameter in [0, 1]");
                    edges.push((pa.vertex, pb.vertex));
                }
                _ => {
                    for pa in &pieces[i] {
                        for pb in &pieces[j] {
                            if collinear_pieces_meet(a, pa, b, pb) {
                                edges.push((pa.vertex, pb.vertex));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut graph = Graph::new(labels)?;
    for (u, v) in edges {
        graph.add_edge(u, v)?;
    }
    Ok(Splitting { graph, roles, origin })
}

/// Overlap test for sub-segments of two collinear segments, honouring open
/// ends.
fn collinear_pieces_meet(a: &super::Segment, pa: &Piece, b: &super::Segment, pb: &Piece) -> bool {
    let coord = |s: &super::Segment, t: &Q| {
        let p = s.p.lerp(&s.q, t);
        if a.is_vertical() {
            p.y
        } else {
            p.x
        }
    };
    let interval = |s: &super::Segment, p: &Piece| {
        let (c0, c1) = (coord(s, &p.lo), coord(s, &p.hi));
        if c0 <= c1 {
            (c0, p.lo_closed, c1, p.hi_closed)
        } else {
            (c1, p.hi_closed, c0, p.lo_closed)
        }
    };
    let (alo, alc, ahi, ahc) = interval(a, pa);
    let (blo, blc, bhi, bhc) = interval(b, pb);
    let (lo, lo_closed) = if alo > blo { (alo, alc) } else if blo > alo { (blo, blc) } else { (alo, alc && blc) };
    let (hi, hi_closed) = if ahi < bhi { (ahi, ahc) } else if bhi < ahi { (bhi, bhc) } else { (ahi, ahc && bhc) };
    lo < hi || (lo == hi && lo_closed && hi_closed)
}

/// Within each clip, pieces rooted on the left side `a` before `b` and on
/// the bottom side `c` before `d` with `ac`, `bd` crossing but `bc` not.
/// Returns `(cell, [a, b, c, d])` as scene segment indices.
pub fn crossing_rule_violations(scene: &SegmentScene, grid: &GridSpec) -> Vec<(Cell, [usize; 4])> {
    let mut out = Vec::new();
    for (cell, pieces) in clips(scene, grid) {
        let order = circular_order(&pieces, grid, cell, &scene.global_rank);
        let rooted = |side| -> Vec<usize> {
            order
                .iter()
                .copied()
                .filter(|&i| first_contact(grid, cell, &pieces[i]).map(|c| c.1) == Some(side))
                .collect()
        };
        let ls = rooted(BoundarySide::L);
        let bs = rooted(BoundarySide::B);
        for (x, &a) in ls.iter().enumerate() {
            for &b in &ls[x + 1..] {
                for (y, &c) in bs.iter().enumerate() {
                    for &d in &bs[y + 1..] {
                        let meets = |u: usize, v: usize| pieces[u].intersects(&pieces[v]);
                        if meets(a, c) && meets(b, d) && !meets(b, c) {
                            out.push((cell, [a, b, c, d].map(|i| pieces[i].origin)));
                        }
                    }
                }
            }
        }
    }
    out
}
