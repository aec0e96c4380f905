//! Instance families: the B_n segment construction, subcubic encodings,
//! tree models of subdivided bicliques, the spike polygons, and seeded
//! random scenes.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{q, q_frac, IntervalModel, Point, Segment, SegmentScene, SimplePolygon, Terrain, Q};
use crate::contraction::ContractionSequence;
use crate::graph::Graph;
use crate::orders::TreeModel;

/// The 7-vertex example graph with a 2-sequence.
pub fn fig1_graph() -> Graph {
    Graph::parse(
        "graph 7\na b c d e f g\n\
         a b\na d\na f\nb c\nb d\nb e\nb f\nc e\nc f\nd e\nd g\ne g\nf g\n",
    )
    .expect("fixed graph parses")
}

/// Six merges of [`fig1_graph`] down to one vertex with red degree at most 2.
pub fn fig1_sequence() -> ContractionSequence {
    ContractionSequence::parse("e+f\na+d\nb+e.f\na.d+g\nb.e.f+c\na.d.g+b.c.e.f\n").expect("fixed sequence parses")
}

/// Interval model whose lex order holds a prepared division for `T_t`.
/// Row part `i` has `t^2` intervals `r{i}_{x}` starting at `10(i t^2 + x)` and
/// ending between the point intervals `aL{j}` and `aR{j}` of column part
/// `j = i + x mod t^2`; a point interval `s{i}_{x}` sits at each start.
pub fn staircase_intervals(t: usize) -> IntervalModel {
    let parts = t * t;
    let mut labels = Vec::new();
    let mut ivs = Vec::new();
    let col_l = |j: usize| 1000 * parts.max(1) as i64 + 10 * j as i64;
    for i in 0..parts {
        for x in 0..parts {
            let l = 10 * (i * parts + x) as i64;
            let j = (x + i) % parts;
            labels.push(format!("r{}_{}", i + 1, x + 1));
            ivs.push((l, col_l(j) + 1));
            labels.push(format!("s{}_{}", i + 1, x + 1));
            ivs.push((l, l));
        }
    }
    for j in 0..parts {
        labels.push(format!("aL{}", j + 1));
        ivs.push((col_l(j), col_l(j)));
        labels.push(format!("aR{}", j + 1));
        ivs.push((col_l(j) + 2, col_l(j) + 2));
    }
    IntervalModel::new(labels, ivs).expect("distinct labels")
}

/// A corridor `[0, 4 teeth] x [0, 2]` with `teeth` rectangular teeth of
/// width 2 and height 8 on top.
pub fn comb_polygon(teeth: usize) -> SimplePolygon {
    let teeth = teeth.max(1) as i64;
    let mut pts = vec![Point::int(0, 0), Point::int(4 * teeth, 0)];
    for i in (0..teeth).rev() {
        pts.push(Point::int(4 * i + 3, 2));
        pts.push(Point::int(4 * i + 3, 10));
        pts.push(Point::int(4 * i + 1, 10));
        pts.push(Point::int(4 * i + 1, 2));
    }
    SimplePolygon::new(pts).expect("comb is simple")
}

/// Rejection attempts for random polygons.
pub const POLYGON_ATTEMPTS: usize = 1000;

/// A bipartite graph with sides `a1..a{na}` and `b1..b{nb}`; edges are
/// `(i, j)` pairs of 0-based side indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub na: usize,
    pub nb: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(na: usize, nb: usize, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(i, j)) = edges.iter().find(|&&(i, j)| i >= na || j >= nb) {
            return Err(Error::OutOfBounds(format!("edge a{}-b{}", i + 1, j + 1)));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(BipartiteGraph { na, nb, edges })
    }

    /// From a graph whose labels start with `a` or `b`.
    pub fn from_graph(g: &Graph) -> Result<Self> {
        let side = |v: usize| g.label(v).chars().next();
        let a: Vec<usize> = (0..g.n()).filter(|&v| side(v) == Some('a')).collect();
        let b: Vec<usize> = (0..g.n()).filter(|&v| side(v) == Some('b')).collect();
        if a.len() + b.len() != g.n() {
            return Err(Error::Precondition("bipartite labels must start with a or b".into()));
        }
        let mut edges = Vec::new();
        for (u, v) in g.edges() {
            let (x, y) = match (side(u), side(v)) {
                (Some('a'), Some('b')) => (u, v),
                (Some('b'), Some('a')) => (v, u),
                _ => return Err(Error::Precondition(format!("edge {}-{} inside a side", g.label(u), g.label(v)))),
            };
            edges.push((a.iter().position(|&w| w == x).unwrap(), b.iter().position(|&w| w == y).unwrap()));
        }
        BipartiteGraph::new(a.len(), b.len(), edges)
    }

    pub fn to_graph(&self) -> Graph {
        let labels = (1..=self.na).map(|i| format!("a{i}")).chain((1..=self.nb).map(|j| format!("b{j}")));
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(i, j)| (i, self.na + j)).collect();
        Graph::from_edges(labels, &edges).expect("generated labels")
    }

    pub fn degree_a(&self, i: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == i).count()
    }

    pub fn degree_b(&self, j: usize) -> usize {
        self.edges.iter().filter(|e| e.1 == j).count()
    }

    pub fn max_degree(&self) -> usize {
        let da = (0..self.na).map(|i| self.degree_a(i));
        let db = (0..self.nb).map(|j| self.degree_b(j));
        da.chain(db).max().unwrap_or(0)
    }

    pub fn complete(n: usize) -> Self {
        BipartiteGraph::new(n, n, (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()).expect("in range")
    }
}

fn seg(id: String, p: Point, q: Point) -> Segment {
    Segment::new(id, p, q).expect("non-degenerate by construction")
}

/// Long segments for both sides plus one short crossing pair per edge.
fn biclique_scene(g: &BipartiteGraph) -> SegmentScene {
    let delta = q_frac(1, 5);
    let h = q_frac(1, 2);
    let mut segs = Vec::new();
    for i in 1..=g.na as i64 {
        segs.push(seg(format!("v{i}"), Point::new(q(i), h.clone()), Point::new(q(i), q(g.nb as i64) + &h)));
    }
    for j in 1..=g.nb as i64 {
        segs.push(seg(format!("h{j}"), Point::new(h.clone(), q(j)), Point::new(q(g.na as i64) + &h, q(j))));
    }
    for &(i, j) in &g.edges {
        let (x, y) = (q(i as i64 + 1), q(j as i64 + 1));
        let (i, j) = (i + 1, j + 1);
        segs.push(seg(
            format!("sv{i}_{j}"),
            Point::new(&x + &delta, &y - &delta),
            Point::new(&x + &delta, &y + &delta * q(3)),
        ));
        segs.push(seg(
            format!("sh{i}_{j}"),
            Point::new(&x - &delta, &y + &delta),
            Point::new(&x + &delta * q(3), &y + &delta),
        ));
    }
    SegmentScene::new(segs).expect("distinct generated ids")
}

/// The scene whose intersection graph is `B_n`.
pub fn gen_bn_segments(n: usize) -> SegmentScene {
    biclique_scene(&BipartiteGraph::complete(n))
}

/// The sub-scene of the `B_n` construction keeping only the short pairs of
/// edges of `g`.
pub fn gen_subcubic_encoding_segments(g: &BipartiteGraph) -> Result<SegmentScene> {
    if g.max_degree() > 3 {
        return Err(Error::Precondition("graph is not subcubic".into()));
    }
    Ok(biclique_scene(g))
}

/// Terrain with integer vertices, x gaps in `1..=3`.
pub fn random_terrain(n: usize, seed: u64) -> Result<Terrain> {
    if n == 0 {
        return Err(Error::Precondition("terrain needs a vertex".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = 0;
    let height = (n as i64).max(4);
    let pts = (0..n)
        .map(|_| {
            x += rng.gen_range(1..=3);
            Point::int(x, rng.gen_range(0..height))
        })
        .collect();
    Terrain::new(pts)
}

fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    let upper = |p: &Point| p.y > q(0) || (p.y == q(0) && p.x > q(0));
    match (upper(a), upper(b)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => crate::geometry::cross(b, a).cmp(&q(0)),
    }
}

/// Polygon through integer points sorted by angle around the origin,
/// resampled until simple.
pub fn random_polygon(n: usize, seed: u64) -> Result<SimplePolygon> {
    if n < 3 {
        return Err(Error::Precondition("a polygon needs at least 3 vertices".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = 4 * n as i64;
    for _ in 0..POLYGON_ATTEMPTS {
        let mut pts: Vec<Point> = Vec::with_capacity(n);
        while pts.len() < n {
            let p = Point::int(rng.gen_range(-r..=r), rng.gen_range(-r..=r));
            let same_ray = pts.iter().any(|o| {
                crate::geometry::cross(o, &p) == q(0) && crate::geometry::dot(o, &p) > q(0)
            });
            if p != Point::int(0, 0) && !same_ray {
                pts.push(p);
            }
        }
        pts.sort_by(angle_cmp);
        if let Ok(poly) = SimplePolygon::new(pts) {
            return Ok(poly);
        }
    }
    Err(Error::Construction(format!("no simple polygon after {POLYGON_ATTEMPTS} attempts")))
}

/// Intervals with left ends in `0..2n` and lengths in `0..=n/2`.
pub fn random_intervals(n: usize, seed: u64) -> Result<IntervalModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n64 = n as i64;
    IntervalModel::unlabelled(
        (0..n)
            .map(|_| {
                let l = rng.gen_range(0..(2 * n64).max(1));
                (l, l + rng.gen_range(0..=n64 / 2))
            })
            .collect(),
    )
}

/// Axis-parallel segments of length in `[1, ell]` on a quarter-integer
/// lattice.
pub fn random_axis_segments(n: usize, ell: u32, seed: u64) -> Result<SegmentScene> {
    if ell == 0 {
        return Err(Error::Precondition("length bound must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = 4 * ((n as f64).sqrt().ceil() as i64 + ell as i64);
    let mut segs = Vec::with_capacity(n);
    for k in 0..n {
        let x = q_frac(rng.gen_range(0..=side), 4);
        let y = q_frac(rng.gen_range(0..=side), 4);
        let len: Q = q(1) + q(ell as i64 - 1) * q_frac(rng.gen_range(0..=8), 8);
        let p = Point::new(x.clone(), y.clone());
        let end = if rng.gen_bool(0.5) { Point::new(x + len, y) } else { Point::new(x, y + len) };
        segs.push(seg(format!("s{}", k + 1), p, end));
    }
    SegmentScene::new(segs)
}

/// The tree model of the subdivided graph with the subdivision vertices
/// made a clique: nodes `a_i`, a centre `s` and `b_j`, arcs `a_i -> s ->
/// b_j`, trivial paths for `a{i}`, `b{j}` and a path `a_i -> b_j` for the
/// subdivision vertex `x{i}_{j}` of each edge. The model has several roots
/// whenever `na > 1`.
pub fn gen_pi_tree_model(g: &BipartiteGraph) -> TreeModel {
    let s = g.na;
    let b = |j: usize| g.na + 1 + j;
    let mut parents = vec![Vec::new(); g.na + 1 + g.nb];
    parents[s] = (0..g.na).collect();
    for j in 0..g.nb {
        parents[b(j)] = vec![s];
    }
    let mut labels = Vec::new();
    let mut paths = Vec::new();
    for i in 0..g.na {
        labels.push(format!("a{}", i + 1));
        paths.push((i, i));
    }
    for j in 0..g.nb {
        labels.push(format!("b{}", j + 1));
        paths.push((b(j), b(j)));
    }
    for &(i, j) in &g.edges {
        labels.push(format!("x{}_{}", i + 1, j + 1));
        paths.push((i, b(j)));
    }
    TreeModel::new(parents, labels, paths).expect("star model is a polytree")
}

/// A spike polygon and the graph its visibility graph must equal.
#[derive(Debug, Clone)]
pub struct PolygonFamily {
    pub polygon: SimplePolygon,
    pub spec: Graph,
}

/// Refinement rounds for the spike width in [`gen_polygon_family`].
pub const POLYGON_FAMILY_ROUNDS: usize = 24;

/// The target graph: per `a_i` the alternating path `d{i}_0 p{i}_0 d{i}_1
/// ...` with one `p` per neighbour, `p{i}_k` adjacent to the `q` of the
/// neighbour with the `k`-th largest index, and `D ∪ Q` a clique.
fn polygon_family_spec(g: &BipartiteGraph, nbrs: &[Vec<usize>]) -> Graph {
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut d_or_q = Vec::new();
    for (i, ns) in nbrs.iter().enumerate() {
        for k in 0..=ns.len() {
            let d = labels.len();
            labels.push(format!("d{}_{}", i + 1, k));
            d_or_q.push(d);
            if k > 0 {
                edges.push((d, d - 1));
            }
            if k < ns.len() {
                labels.push(format!("p{}_{}", i + 1, k));
                edges.push((d, d + 1));
            }
        }
    }
    let q0 = labels.len();
    for j in 0..g.nb {
        labels.push(format!("q{}", j + 1));
        d_or_q.push(q0 + j);
    }
    for (i, ns) in nbrs.iter().enumerate() {
        for (k, &j) in ns.iter().enumerate() {
            let p = labels.iter().position(|l| *l == format!("p{}_{}", i + 1, k)).expect("label exists");
            edges.push((p, q0 + j));
        }
    }
    for (x, &u) in d_or_q.iter().enumerate() {
        for &v in &d_or_q[x + 1..] {
            edges.push((u, v));
        }
    }
    Graph::from_edges(labels, &edges).expect("generated labels")
}

/// Builds the spike polygon of a bipartite subcubic graph: `D` vertices on a
/// shallow convex bowl, one downward spike per edge whose tip lies on the
/// ray from its target `q_j` through the spike's mouth, and `Q` on a dome
/// above. The spike width is halved until the visibility graph equals the
/// specification.
pub fn gen_polygon_family(g: &BipartiteGraph) -> Result<PolygonFamily> {
    if g.max_degree() > 3 {
        return Err(Error::Precondition("graph is not subcubic".into()));
    }
    if g.na == 0 || g.nb == 0 {
        return Err(Error::Precondition("both sides must be non-empty".into()));
    }
    let nbrs: Vec<Vec<usize>> = (0..g.na)
        .map(|i| {
            let mut ns: Vec<usize> = g.edges.iter().filter(|e| e.0 == i).map(|e| e.1).collect();
            ns.sort_unstable_by(|a, b| b.cmp(a));
            ns
        })
        .collect();
    let spec = polygon_family_spec(g, &nbrs);
    if spec.n() < 3 {
        return Err(Error::Precondition("fewer than three polygon vertices".into()));
    }
    let na = g.na as i64;
    let nb = g.nb as i64;
    let centre = q_frac(na + 1, 2);
    let bowl = |x: &Q| {
        let dx = x - &centre;
        &dx * &dx / q(16 * (na + 1))
    };
    let height = q(2 * (na + 1));
    let qpt = |j: i64| {
        let x = q_frac(j * (na + 1), nb + 1);
        let y = &height + q_frac(j * (nb + 1 - j), 4 * (nb + 1) * (nb + 1));
        Point::new(x, y)
    };
    let depth = q_frac(1, 2);
    let mut width = q_frac(1, 8);
    for _ in 0..POLYGON_FAMILY_ROUNDS {
        let mut points = Vec::new();
        let mut labels = Vec::new();
        for (i, ns) in nbrs.iter().enumerate() {
            let d = |k: usize| {
                let x = q(i as i64 + 1) + &width * q(k as i64);
                let y = bowl(&x);
                Point::new(x, y)
            };
            for k in 0..=ns.len() {
                points.push(d(k));
                labels.push(format!("d{}_{}", i + 1, k));
                if k < ns.len() {
                    let mouth = d(k).lerp(&d(k + 1), &q_frac(1, 2));
                    let target = qpt(ns[k] as i64 + 1);
                    let dir = mouth.sub(&target);
                    let lambda = &depth / (&target.y - &mouth.y);
                    points.push(mouth.add(&dir.scale(&lambda)));
                    labels.push(format!("p{}_{}", i + 1, k));
                }
            }
        }
        for j in (1..=nb).rev() {
            points.push(qpt(j));
            labels.push(format!("q{j}"));
        }
        if let Ok(polygon) = SimplePolygon::with_labels(points, labels) {
            let (vis, _) = crate::geometry::polygon_visibility(&polygon);
            if vis.same_as(&spec) {
                return Ok(PolygonFamily { polygon, spec });
            }
        }
        width = width / q(2);
    }
    Err(Error::Construction("spike polygon visibility never matched the specification".into()))
}

/// A random rooted tree on `nodes` nodes (a directed path when
/// `path_shaped`) with `vertices` paths, each from a random node up to a
/// random ancestor.
pub fn random_rooted_path_model(nodes: usize, vertices: usize, seed: u64, path_shaped: bool) -> TreeModel {
    let nodes = nodes.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parent: Vec<Option<usize>> = (0..nodes)
        .map(|x| match x {
            0 => None,
            _ if path_shaped => Some(x - 1),
            _ => Some(rng.gen_range(0..x)),
        })
        .collect();
    let paths = (0..vertices)
        .map(|_| {
            let low = rng.gen_range(0..nodes);
            let mut high = low;
            while let Some(p) = parent[high] {
                if rng.gen_bool(0.5) {
                    break;
                }
                high = p;
            }
            (high, low)
        })
        .collect();
    TreeModel::new(
        parent.iter().map(|p| p.iter().copied().collect()).collect(),
        (1..=vertices).map(|i| format!("v{i}")).collect(),
        paths,
    )
    .expect("paths follow parent pointers")
}
