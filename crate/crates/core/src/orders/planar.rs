use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{parse_err, Error, Result};
use crate::graph::{content_lines, Graph, VertexOrder};

/// A rotation system with a packing of pairwise vertex-disjoint faces.
#[derive(Debug, Clone)]
pub struct PlanarEmbedding {
    pub graph: Graph,
    /// Counter-clockwise neighbour order around each vertex.
    pub rotation: Vec<Vec<usize>>,
    /// Each cycle lists a face boundary counter-clockwise.
    pub facial: Vec<Vec<usize>>,
}

impl PlanarEmbedding {
    pub fn new(graph: Graph, rotation: Vec<Vec<usize>>, facial: Vec<Vec<usize>>) -> Result<Self> {
        let n = graph.n();
        if rotation.len() != n {
            return Err(Error::InvalidEmbedding(format!("{} rotations for {n} vertices", rotation.len())));
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            let nbrs: Vec<usize> = graph.neighbors(v).ones().collect();
            if sorted != nbrs {
                return Err(Error::InvalidEmbedding(format!("rotation of {} does not list its neighbours", graph.label(v))));
            }
        }
        let emb = PlanarEmbedding { graph, rotation, facial };
        emb.check_genus()?;
        let faces = emb.faces();
        let mut owner = vec![None; n];
        for (i, c) in emb.facial.iter().enumerate() {
            if c.len() < 3 {
                return Err(Error::InvalidEmbedding(format!("facial cycle {i} has fewer than 3 vertices")));
            }
            for &v in c {
                if v >= n || owner[v].replace(i).is_some() {
                    return Err(Error::InvalidEmbedding(format!("facial cycle {i} repeats or shares a vertex")));
                }
            }
            let is_face = faces.iter().any(|f| f.len() == c.len() && (0..f.len()).any(|s| (0..c.len()).all(|k| f[(s + k) % f.len()] == c[k])));
            if !is_face {
                return Err(Error::InvalidEmbedding(format!("facial cycle {i} is not a face")));
            }
        }
        Ok(emb)
    }

    fn next_dart(&self, u: usize, v: usize) -> (usize, usize) {
        let rot = &self.rotation[v];
        let i = rot.iter().position(|&w| w == u).expect("symmetric rotation");
        (v, rot[(i + rot.len() - 1) % rot.len()])
    }

    /// Vertex sequences of all faces, each traced with the face on the left.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen: HashMap<(usize, usize), bool> = HashMap::new();
        let mut faces = Vec::new();
        for u in 0..self.graph.n() {
            for &v in &self.rotation[u] {
                if seen.contains_key(&(u, v)) {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = (u, v);
                while seen.insert(d, true).is_none() {
                    face.push(d.0);
                    d = self.next_dart(d.0, d.1);
                }
                faces.push(face);
            }
        }
        faces
    }

    fn check_genus(&self) -> Result<()> {
        let n = self.graph.n();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = count;
            while let Some(x) = stack.pop() {
                for y in self.graph.neighbors(x).ones() {
                    if comp[y] == usize::MAX {
                        comp[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        let mut euler = vec![0i64; count];
        for v in 0..n {
            euler[comp[v]] += 1;
        }
        for (u, v) in self.graph.edges() {
            let _ = v;
            euler[comp[u]] -= 1;
        }
        for f in self.faces() {
            euler[comp[f[0]]] += 1;
        }
        for (c, e) in euler.iter().enumerate() {
            let single = (0..n).filter(|&v| comp[v] == c).count() == 1;
            if *e != 2 && !(single && *e == 1) {
                return Err(Error::InvalidEmbedding("rotation system is not planar".into()));
            }
        }
        Ok(())
    }

    /// Format: `embedding <n>`, then `rotation <v> <neighbours ccw>` per
    /// vertex and `facial <v1> <v2> ...` per packed face.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty document"))?;
        let n: usize = header
            .strip_prefix("embedding")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| parse_err(ln, "expected \"embedding <n>\""))?;
        let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
        let mut facial_rows = Vec::new();
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.first() {
                Some(&"rotation") if toks.len() >= 2 => rows.push((ln, toks[1..].to_vec())),
                Some(&"facial") => facial_rows.push((ln, toks[1..].to_vec())),
                _ => return Err(parse_err(ln, "expected a rotation or facial line")),
            }
        }
        if rows.len() != n {
            return Err(parse_err(ln, format!("header announces {n} vertices, found {} rotations", rows.len())));
        }
        let mut g = Graph::new(rows.iter().map(|(_, t)| t[0].to_string())).map_err(|e| parse_err(ln, e.to_string()))?;
        let mut rotation = Vec::new();
        for (ln, toks) in &rows {
            let v = g.index_of(toks[0])?;
            let rot = toks[1..].iter().map(|t| g.index_of(t).map_err(|e| parse_err(*ln, e.to_string()))).collect::<Result<Vec<_>>>()?;
            for &u in &rot {
                if u == v {
                    return Err(parse_err(*ln, "loop in rotation"));
                }
                g.add_edge(u, v)?;
            }
            rotation.push(rot);
        }
        let facial = facial_rows
            .iter()
            .map(|(ln, toks)| toks.iter().map(|t| g.index_of(t).map_err(|e| parse_err(*ln, e.to_string()))).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        PlanarEmbedding::new(g, rotation, facial)
    }

    pub fn to_text(&self) -> String {
        let g = &self.graph;
        let mut out = format!("embedding {}\n", g.n());
        for (v, rot) in self.rotation.iter().enumerate() {
            let names: Vec<&str> = std::iter::once(g.label(v)).chain(rot.iter().map(|&u| g.label(u))).collect();
            out += &format!("rotation {}\n", names.join(" "));
        }
        for c in &self.facial {
            let names: Vec<&str> = c.iter().map(|&u| g.label(u)).collect();
            out += &format!("facial {}\n", names.join(" "));
        }
        out
    }

    /// The `rows × cols` grid graph with vertex `(x, y)` labelled `g{x}_{y}`
    /// and the unit squares whose lower-left corners are listed packed.
    pub fn grid(rows: usize, cols: usize, squares: &[(usize, usize)]) -> Result<Self> {
        let id = |x: usize, y: usize| y * cols + x;
        let mut g = Graph::new((0..rows).flat_map(|y| (0..cols).map(move |x| format!("g{x}_{y}"))))?;
        let mut rotation = Vec::with_capacity(rows * cols);
        for y in 0..rows {
            for x in 0..cols {
                let mut rot = Vec::new();
                if x + 1 < cols {
                    rot.push(id(x + 1, y));
                }
                if y + 1 < rows {
                    rot.push(id(x, y + 1));
                }
                if x > 0 {
                    rot.push(id(x - 1, y));
                }
                if y > 0 {
                    rot.push(id(x, y - 1));
                }
                for &u in &rot {
                    g.add_edge(id(x, y), u)?;
                }
                rotation.push(rot);
            }
        }
        let facial = squares.iter().map(|&(x, y)| vec![id(x, y), id(x + 1, y), id(x + 1, y + 1), id(x, y + 1)]).collect();
        PlanarEmbedding::new(g, rotation, facial)
    }
}

/// The discovery order, its layers and the tagged spanning tree.
#[derive(Debug, Clone, Serialize)]
pub struct LayeredOrder {
    #[serde(skip)]
    pub order: VertexOrder,
    pub layer: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    /// Whether the tree edge to the parent is explored (not fast-track).
    pub explored: Vec<bool>,
}

impl LayeredOrder {
    pub fn layers(&self) -> Vec<Vec<usize>> {
        let p = self.layer.iter().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); p];
        for &v in self.order.perm() {
            out[self.layer[v]].push(v);
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    White,
    Gray,
    Black,
    Reserved(usize),
}

/// BFS-like discovery that enters each packed face through one vertex and
/// releases the rest of the face in counter-clockwise order once the
/// successor of that vertex is reached. Components are started in index
/// order after `root`, with layer numbers continuing upwards.
pub fn planar_facial_order(emb: &PlanarEmbedding, root: usize) -> Result<LayeredOrder> {
    let n = emb.graph.n();
    if n > 0 && root >= n {
        return Err(Error::OutOfBounds(format!("root {root}")));
    }
    let mut cycle_of: Vec<Option<(usize, usize)>> = vec![None; n];
    for (ci, c) in emb.facial.iter().enumerate() {
        for (k, &v) in c.iter().enumerate() {
            cycle_of[v] = Some((ci, k));
        }
    }
    let succ = |v: usize| cycle_of[v].map(|(ci, k)| emb.facial[ci][(k + 1) % emb.facial[ci].len()]);
    let mut mark = vec![Mark::White; n];
    let mut parent = vec![None; n];
    let mut explored = vec![false; n];
    let mut layer = vec![0; n];
    let mut perm = Vec::with_capacity(n);
    let mut base = 0;
    let starts: Vec<usize> = (root..n).chain(0..root).collect();
    for &r in &starts {
        if mark[r] != Mark::White {
            continue;
        }
        let discover = |u: usize, mark: &mut Vec<Mark>, perm: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
            mark[u] = Mark::Gray;
            perm.push(u);
            queue.push_back(u);
            if let Some((ci, _)) = cycle_of[u] {
                for &z in &emb.facial[ci] {
                    if z != u {
                        mark[z] = Mark::Reserved(u);
                    }
                }
            }
        };
        let mut queue = VecDeque::new();
        layer[r] = base;
        discover(r, &mut mark, &mut perm, &mut queue);
        while let Some(v) = queue.pop_front() {
            let rot = &emb.rotation[v];
            let start = parent[v].and_then(|p| rot.iter().position(|&w| w == p)).unwrap_or(0);
            for k in 0..rot.len() {
                let u = rot[(start + k) % rot.len()];
                match mark[u] {
                    Mark::White => {
                        parent[u] = Some(v);
                        explored[u] = true;
                        layer[u] = layer[v] + 1;
                        discover(u, &mut mark, &mut perm, &mut queue);
                    }
                    Mark::Reserved(w) if w == v && succ(v) == Some(u) => {
                        let (ci, kv) = cycle_of[v].expect("reserved vertices lie on a cycle");
                        let c = &emb.facial[ci];
                        for step in 1..c.len() {
                            let z = c[(kv + step) % c.len()];
                            parent[z] = Some(c[(kv + step - 1) % c.len()]);
                            explored[z] = step == 1;
                            layer[z] = layer[v] + 1;
                            mark[z] = Mark::Gray;
                            perm.push(z);
                            queue.push_back(z);
                        }
                    }
                    _ => {}
                }
            }
            mark[v] = Mark::Black;
        }
        base = perm.iter().map(|&v| layer[v]).max().map_or(0, |m| m + 1);
    }
    Ok(LayeredOrder { order: VertexOrder::new(perm)?, layer, parent, explored })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LayerReport {
    /// `(u, v)` with `u ≺ v` but `layer(u) > layer(v)`.
    pub monotone: Vec<(usize, usize)>,
    /// Edges joining layers at distance at least three.
    pub long_edges: Vec<(usize, usize)>,
    /// `(x, y, k)`: same-layer `x ≺ y` whose subtrees interleave in layer `k`.
    pub subtree: Vec<(usize, usize, usize)>,
    /// Indices of packed faces not listed counter-clockwise by the order.
    pub cycle_order: Vec<usize>,
}

impl LayerReport {
    pub fn is_clean(&self) -> bool {
        self.monotone.is_empty() && self.long_edges.is_empty() && self.subtree.is_empty() && self.cycle_order.is_empty()
    }
}

pub fn verify_layer_lemmas(lo: &LayeredOrder, emb: &PlanarEmbedding) -> LayerReport {
    let g = &emb.graph;
    let perm = lo.order.perm();
    let mut report = LayerReport::default();
    for w in perm.windows(2) {
        if lo.layer[w[0]] > lo.layer[w[1]] {
            report.monotone.push((w[0], w[1]));
        }
    }
    for (u, v) in g.edges() {
        if lo.layer[u].abs_diff(lo.layer[v]) >= 3 {
            report.long_edges.push((u, v));
        }
    }
    for (ci, c) in emb.facial.iter().enumerate() {
        let first = (0..c.len()).min_by_key(|&k| lo.order.position(c[k])).expect("non-empty cycle");
        let ok = (1..c.len()).all(|s| lo.order.position(c[(first + s - 1) % c.len()]) < lo.order.position(c[(first + s) % c.len()]));
        if !ok {
            report.cycle_order.push(ci);
        }
    }
    let n = g.n();
    let mut children = vec![Vec::new(); n];
    for v in 0..n {
        if let Some(p) = lo.parent[v] {
            children[p].push(v);
        }
    }
    let layers = lo.layers();
    let spans: Vec<HashMap<usize, (usize, usize)>> = (0..n)
        .map(|x| {
            let mut span: HashMap<usize, (usize, usize)> = HashMap::new();
            let mut stack: Vec<usize> = children[x].iter().copied().filter(|&c| lo.layer[c] > lo.layer[x]).collect();
            stack.push(x);
            while let Some(y) = stack.pop() {
                let p = lo.order.position(y);
                let e = span.entry(lo.layer[y]).or_insert((p, p));
                e.0 = e.0.min(p);
                e.1 = e.1.max(p);
                if y != x {
                    stack.extend(children[y].iter().copied());
                }
            }
            span
        })
        .collect();
    for layer in &layers {
        for (i, &x) in layer.iter().enumerate() {
            for &y in &layer[i + 1..] {
                for (k, sx) in &spans[x] {
                    if let Some(sy) = spans[y].get(k) {
                        if sx.1 >= sy.0 {
                            report.subtree.push((x, y, *k));
                        }
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> PlanarEmbedding {
        let mut g = Graph::with_prefix("v", n);
        let mut rotation = Vec::new();
        for i in 0..n {
            g.add_edge(i, (i + 1) % n).unwrap();
            rotation.push(vec![(i + 1) % n, (i + n - 1) % n]);
        }
        PlanarEmbedding::new(g, rotation, vec![(0..n).collect()]).unwrap()
    }

    #[test]
    fn cycle_order_is_its_traversal() {
        let emb = cycle(6);
        let lo = planar_facial_order(&emb, 2).unwrap();
        assert_eq!(lo.order.perm(), &[2, 3, 4, 5, 0, 1]);
        assert_eq!(lo.layer, vec![1, 1, 0, 1, 1, 1]);
        assert!(verify_layer_lemmas(&lo, &emb).is_clean());
    }

    #[test]
    fn first_successor_edge_is_explored_rest_fast_track() {
        let emb = cycle(5);
        let lo = planar_facial_order(&emb, 0).unwrap();
        assert_eq!(lo.explored, vec![false, true, false, false, false]);
        assert_eq!(lo.parent, vec![None, Some(0), Some(1), Some(2), Some(3)]);
    }

    #[test]
    fn tree_gives_bfs() {
        let mut g = Graph::with_prefix("v", 6);
        for (u, v) in [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)] {
            g.add_edge(u, v).unwrap();
        }
        let rotation = vec![vec![1, 2], vec![0, 3, 4], vec![0, 5], vec![1], vec![1], vec![2]];
        let emb = PlanarEmbedding::new(g, rotation, vec![]).unwrap();
        let lo = planar_facial_order(&emb, 0).unwrap();
        assert_eq!(lo.order.perm(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(lo.layer, vec![0, 1, 1, 2, 2, 2]);
        assert!(verify_layer_lemmas(&lo, &emb).is_clean());
    }

    #[test]
    fn grid_with_packed_squares() {
        let emb = PlanarEmbedding::grid(4, 4, &[(0, 0), (2, 0), (0, 2), (2, 2)]).unwrap();
        for root in 0..16 {
            let lo = planar_facial_order(&emb, root).unwrap();
            let rep = verify_layer_lemmas(&lo, &emb);
            assert!(rep.is_clean(), "root {root}: {rep:?}");
        }
    }

    #[test]
    fn relabelled_order_breaks_monotonicity() {
        let emb = PlanarEmbedding::grid(4, 4, &[(1, 1)]).unwrap();
        let mut lo = planar_facial_order(&emb, 0).unwrap();
        lo.order = lo.order.reversed();
        assert!(!verify_layer_lemmas(&lo, &emb).monotone.is_empty());
    }

    #[test]
    fn rejects_bad_embeddings() {
        let emb = PlanarEmbedding::grid(3, 3, &[]).unwrap();
        assert_eq!(emb.faces().len(), 5);
        let mut g = Graph::with_prefix("v", 4);
        for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            g.add_edge(u, v).unwrap();
        }
        let bad = vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]];
        assert!(PlanarEmbedding::new(g.clone(), bad, vec![]).is_err());
        let good = vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]];
        assert!(PlanarEmbedding::new(g.clone(), good.clone(), vec![]).is_ok());
        assert!(PlanarEmbedding::grid(3, 3, &[(0, 0), (1, 0)]).is_err());
        let emb = PlanarEmbedding::grid(3, 3, &[(0, 0)]).unwrap();
        assert!(PlanarEmbedding::parse(&emb.to_text()).unwrap().to_text() == emb.to_text());
    }

    #[test]
    fn single_layer_is_vacuous() {
        let emb = PlanarEmbedding::new(Graph::with_prefix("v", 1), vec![vec![]], vec![]).unwrap();
        let lo = planar_facial_order(&emb, 0).unwrap();
        assert!(verify_layer_lemmas(&lo, &emb).is_clean());
    }
}
