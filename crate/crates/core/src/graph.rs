//! Graphs, vertex orders, ordered 0/1 matrices and semi-induced patterns.

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{parse_err, Error, Result};

/// Finite simple graph over dense indices with a label table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<FixedBitSet>,
}

pub(crate) fn check_label(label: &str) -> Result<()> {
    if label.is_empty()
        || label.chars().any(|c| c.is_whitespace() || c == '#' || c == '.' || c == '+')
    {
        return Err(Error::InvalidModel(format!("bad vertex label {label:?}")));
    }
    Ok(())
}

impl Graph {
    /// Edgeless graph on the given labels.
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            check_label(l)?;
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidModel(format!("duplicate label {l}")));
            }
        }
        let n = labels.len();
        Ok(Graph { labels, index, adj: vec![FixedBitSet::with_capacity(n); n] })
    }

    /// Edgeless graph labelled `prefix0 .. prefix{n-1}`.
    pub fn with_prefix(prefix: &str, n: usize) -> Self {
        Graph::new((0..n).map(|i| format!("{prefix}{i}"))).expect("generated labels are valid")
    }

    pub fn from_edges<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        let mut g = Graph::new(labels)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::OutOfBounds(format!("edge ({u},{v}) in graph of order {n}")));
        }
        if u == v {
            return Err(Error::Loop(self.labels[u].clone()));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].set(v, false);
        self.adj[v].set(u, false);
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in self.adj[u].ones() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Subgraph induced by `vertices`, keeping labels; vertex `i` of the
    /// result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.iter().map(|&v| self.labels[v].clone()))
            .expect("labels of a valid graph");
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    g.add_edge(i, j).expect("distinct indices");
                }
            }
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.labels.iter().cloned()).expect("labels of a valid graph");
        for u in 0..self.n() {
            for v in u + 1..self.n() {
                if !self.adjacent(u, v) {
                    g.add_edge(u, v).expect("distinct indices");
                }
            }
        }
        g
    }

    /// Same vertex labels and same edge set (by label).
    pub fn same_as(&self, other: &Graph) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let map: Option<Vec<usize>> =
            self.labels.iter().map(|l| other.index.get(l).copied()).collect();
        let Some(map) = map else { return false };
        (0..self.n()).all(|u| {
            (0..self.n()).all(|v| self.adjacent(u, v) == other.adjacent(map[u], map[v]))
        })
    }

    /// Parses the `graph <n>` edge-list format.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty document"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 2 || toks[0] != "graph" {
            return Err(parse_err(ln, "expected header 'graph <n>'"));
        }
        let n: usize = toks[1].parse().map_err(|_| parse_err(ln, "bad vertex count"))?;
        let labels: Vec<String> = if n == 0 {
            Vec::new()
        } else {
            let (ln, l) = lines.next().ok_or_else(|| parse_err(ln + 1, "missing label line"))?;
            let labels: Vec<String> = l.split_whitespace().map(str::to_string).collect();
            if labels.len() != n {
                return Err(parse_err(ln, format!("expected {n} labels, found {}", labels.len())));
            }
            labels
        };
        let mut g = Graph::new(labels).map_err(|e| parse_err(ln, e.to_string()))?;
        for (ln, l) in lines {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(parse_err(ln, "expected 'u v'"));
            }
            let u = g.index_of(toks[0]).map_err(|e| parse_err(ln, e.to_string()))?;
            let v = g.index_of(toks[1]).map_err(|e| parse_err(ln, e.to_string()))?;
            if u == v {
                return Err(parse_err(ln, Error::Loop(toks[0].to_string()).to_string()));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("graph {}\n", self.n());
        if self.n() > 0 {
            s.push_str(&self.labels.join(" "));
            s.push('\n');
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{} {}", self.labels[u], self.labels[v]);
        }
        s
    }
}

/// Non-empty lines with `#` comments removed, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = match l.find('#') {
            Some(p) => &l[..p],
            None => l,
        };
        let l = l.trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// A total order on `0..n`: `perm[position] = vertex`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexOrder {
    perm: Vec<usize>,
    #[serde(skip)]
    pos: Vec<usize>,
}

impl VertexOrder {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in perm.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(Error::InvalidModel("order is not a permutation".into()));
            }
            pos[v] = i;
        }
        Ok(VertexOrder { perm, pos })
    }

    pub fn identity(n: usize) -> Self {
        VertexOrder { perm: (0..n).collect(), pos: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    pub fn vertex_at(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn precedes(&self, u: usize, v: usize) -> bool {
        self.pos[u] < self.pos[v]
    }

    pub fn reversed(&self) -> Self {
        let mut perm = self.perm.clone();
        perm.reverse();
        VertexOrder::new(perm).expect("reversal of a permutation")
    }

    /// `vs` sorted along this order.
    pub fn sort(&self, vs: &[usize]) -> Vec<usize> {
        let mut out = vs.to_vec();
        out.sort_by_key(|&v| self.pos[v]);
        out
    }

    /// Builds an order from labels listed one per whitespace-separated token.
    pub fn parse(g: &Graph, text: &str) -> Result<Self> {
        let mut perm = Vec::with_capacity(g.n());
        for (ln, l) in content_lines(text) {
            for tok in l.split_whitespace() {
                perm.push(g.index_of(tok).map_err(|e| parse_err(ln, e.to_string()))?);
            }
        }
        if perm.len() != g.n() {
            return Err(parse_err(0, format!("order lists {} of {} vertices", perm.len(), g.n())));
        }
        VertexOrder::new(perm)
    }

    pub fn to_text(&self, g: &Graph) -> String {
        let mut s = String::new();
        for &v in &self.perm {
            s.push_str(g.label(v));
            s.push('\n');
        }
        s
    }
}

/// Dense 0/1 matrix with bit-packed rows. Row `0` is the first row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FixedBitSet>,
}

impl OrderedMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        OrderedMatrix { rows, cols, data: vec![FixedBitSet::with_capacity(cols); rows] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = OrderedMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.data[r].insert(c);
                }
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::SizeMismatch("ragged matrix rows".into()));
        }
        Ok(OrderedMatrix::from_fn(rows.len(), cols, |r, c| rows[r][c] != 0))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].contains(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &FixedBitSet {
        &self.data[r]
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn transpose(&self) -> Self {
        OrderedMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn complement(&self) -> Self {
        OrderedMatrix::from_fn(self.rows, self.cols, |r, c| !self.get(r, c))
    }

    /// Rows and columns both reversed.
    pub fn rotate_half(&self) -> Self {
        OrderedMatrix::from_fn(self.rows, self.cols, |r, c| {
            self.get(self.rows - 1 - r, self.cols - 1 - c)
        })
    }

    /// Entries at the given row and column index lists.
    pub fn select(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        OrderedMatrix::from_fn(row_idx.len(), col_idx.len(), |r, c| {
            self.get(row_idx[r], col_idx[c])
        })
    }

    pub fn submatrix(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        OrderedMatrix::from_fn(rows.len(), cols.len(), |r, c| self.get(r0 + r, c0 + c))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty document"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "matrix" {
            return Err(parse_err(ln, "expected header 'matrix <rows> <cols>'"));
        }
        let rows: usize = toks[1].parse().map_err(|_| parse_err(ln, "bad row count"))?;
        let cols: usize = toks[2].parse().map_err(|_| parse_err(ln, "bad column count"))?;
        let mut m = OrderedMatrix::zeros(rows, cols);
        let mut r = 0;
        for (ln, l) in lines {
            if r == rows {
                return Err(parse_err(ln, "too many rows"));
            }
            let bits: Vec<char> = l.chars().filter(|c| !c.is_whitespace()).collect();
            if bits.len() != cols {
                return Err(parse_err(ln, format!("expected {cols} entries")));
            }
            for (c, ch) in bits.into_iter().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(r, c, true),
                    _ => return Err(parse_err(ln, format!("bad entry {ch:?}"))),
                }
            }
            r += 1;
        }
        if r != rows {
            return Err(parse_err(0, format!("expected {rows} rows, found {r}")));
        }
        Ok(m)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("matrix {} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                s.push(if self.get(r, c) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

/// `M[i][j] = 1` iff the vertices at positions `i` and `j` are adjacent.
pub fn adjacency_matrix(g: &Graph, ord: &VertexOrder) -> OrderedMatrix {
    OrderedMatrix::from_fn(g.n(), g.n(), |i, j| g.adjacent(ord.vertex_at(i), ord.vertex_at(j)))
}

/// Rows are `b` sorted along `ord`, columns are `a` sorted along `ord`.
pub fn biadjacency(g: &Graph, ord: &VertexOrder, a: &[usize], b: &[usize]) -> Result<OrderedMatrix> {
    ensure_disjoint(g, &[a, b])?;
    let cols = ord.sort(a);
    let rows = ord.sort(b);
    Ok(OrderedMatrix::from_fn(rows.len(), cols.len(), |r, c| g.adjacent(rows[r], cols[c])))
}

fn ensure_disjoint(g: &Graph, lists: &[&[usize]]) -> Result<()> {
    let mut seen = FixedBitSet::with_capacity(g.n());
    for list in lists {
        for &v in *list {
            if v >= g.n() {
                return Err(Error::OutOfBounds(format!("vertex {v}")));
            }
            if seen.put(v) {
                return Err(Error::Overlap(g.label(v).to_string()));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    Biclique,
    HalfGraph,
    Matching,
    AntiMatching,
    TransversalPair { ell: usize },
}

/// One of the fixed bipartite-like patterns of height `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BipPattern {
    pub kind: PatternKind,
    pub t: usize,
}

impl BipPattern {
    pub fn new(kind: PatternKind, t: usize) -> Self {
        BipPattern { kind, t }
    }

    pub fn biclique(t: usize) -> Self {
        BipPattern::new(PatternKind::Biclique, t)
    }

    pub fn half_graph(t: usize) -> Self {
        BipPattern::new(PatternKind::HalfGraph, t)
    }

    pub fn matching(t: usize) -> Self {
        BipPattern::new(PatternKind::Matching, t)
    }

    pub fn anti_matching(t: usize) -> Self {
        BipPattern::new(PatternKind::AntiMatching, t)
    }

    pub fn transversal(t: usize, ell: usize) -> Self {
        BipPattern::new(PatternKind::TransversalPair { ell }, t)
    }

    pub fn column_count(&self) -> usize {
        match self.kind {
            PatternKind::TransversalPair { ell } => ell + 3,
            _ => 2,
        }
    }

    pub fn column_size(&self) -> usize {
        match self.kind {
            PatternKind::TransversalPair { .. } => self.t * self.t,
            _ => self.t,
        }
    }

    /// Required adjacency between position `x` of column `c1` and position
    /// `y` of column `c2`; `None` when unconstrained.
    ///
    /// Transversal-pair columns are `A, B^0, .., B^ell, C`, each listed in
    /// lex order of `(i, j)`.
    pub fn required(&self, c1: usize, x: usize, c2: usize, y: usize) -> Option<bool> {
        if c1 == c2 {
            return None;
        }
        let (c1, x, c2, y) = if c1 < c2 { (c1, x, c2, y) } else { (c2, y, c1, x) };
        match self.kind {
            PatternKind::Biclique => Some(true),
            PatternKind::HalfGraph => Some(x <= y),
            PatternKind::Matching => Some(x == y),
            PatternKind::AntiMatching => Some(x != y),
            PatternKind::TransversalPair { ell } => {
                let t = self.t;
                let transpose = |z: usize| (z % t) * t + z / t;
                if c1 == 0 && c2 == 1 {
                    Some(x <= y)
                } else if c1 == ell + 1 && c2 == ell + 2 {
                    Some(transpose(x) <= transpose(y))
                } else if c1 >= 1 && c2 == c1 + 1 && c2 <= ell + 1 {
                    Some(x == y)
                } else {
                    None
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match self.kind {
            PatternKind::Biclique => format!("biclique {}", self.t),
            PatternKind::HalfGraph => format!("half_graph {}", self.t),
            PatternKind::Matching => format!("matching {}", self.t),
            PatternKind::AntiMatching => format!("anti_matching {}", self.t),
            PatternKind::TransversalPair { ell } => format!("transversal_pair {} {}", self.t, ell),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        let num = |i: usize| -> Result<usize> {
            toks.get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| parse_err(1, format!("bad pattern {text:?}")))
        };
        let p = match toks.first().copied() {
            Some("biclique") => BipPattern::biclique(num(1)?),
            Some("half_graph") => BipPattern::half_graph(num(1)?),
            Some("matching") => BipPattern::matching(num(1)?),
            Some("anti_matching") => BipPattern::anti_matching(num(1)?),
            Some("transversal_pair") => BipPattern::transversal(num(1)?, num(2)?),
            _ => return Err(parse_err(1, format!("unknown pattern {text:?}"))),
        };
        if p.t == 0 {
            return Err(parse_err(1, "pattern height must be positive"));
        }
        Ok(p)
    }
}

/// True iff the cross edges between the columns realize `p` exactly under the
/// given list orders; edges inside a column or between unconstrained column
/// pairs are ignored.
pub fn semi_induced_check(g: &Graph, columns: &[Vec<usize>], p: &BipPattern) -> Result<bool> {
    if columns.len() != p.column_count() {
        return Err(Error::SizeMismatch(format!(
            "{} needs {} columns, got {}",
            p.name(),
            p.column_count(),
            columns.len()
        )));
    }
    for col in columns {
        if col.len() != p.column_size() {
            return Err(Error::SizeMismatch(format!(
                "{} needs columns of size {}, got {}",
                p.name(),
                p.column_size(),
                col.len()
            )));
        }
    }
    let lists: Vec<&[usize]> = columns.iter().map(Vec::as_slice).collect();
    ensure_disjoint(g, &lists)?;
    for c1 in 0..columns.len() {
        for c2 in c1 + 1..columns.len() {
            for (x, &u) in columns[c1].iter().enumerate() {
                for (y, &v) in columns[c2].iter().enumerate() {
                    if let Some(want) = p.required(c1, x, c2, y) {
                        if g.adjacent(u, v) != want {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut g = Graph::with_prefix("v", n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    pub(crate) fn fig1() -> Graph {
        crate::generators::fig1_graph()
    }

    #[test]
    fn fig1_loads() {
        let g = fig1();
        assert_eq!(g.n(), 7);
        assert_eq!(g.edge_count(), 13);
        assert_eq!(g.degree(g.index_of("b").unwrap()), 5);
    }

    #[test]
    fn singleton_and_loop() {
        let g = Graph::parse("graph 1\nx\n").unwrap();
        assert_eq!((g.n(), g.edge_count()), (1, 0));
        assert!(matches!(Graph::parse("graph 1\na\na a\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn duplicate_edges_are_idempotent() {
        let g = Graph::parse("graph 2\na b\na b\nb a # again\n").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Graph::parse("graph 2\na b\n\na z\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        assert!(Graph::parse("graph 3\na b\n").is_err());
    }

    #[test]
    fn adjacency_matrix_examples() {
        let k2 = Graph::from_edges(["u", "v"], &[(0, 1)]).unwrap();
        let m = adjacency_matrix(&k2, &VertexOrder::identity(2));
        assert_eq!(m, OrderedMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap());
        let k1 = Graph::with_prefix("v", 1);
        assert_eq!(adjacency_matrix(&k1, &VertexOrder::identity(1)).count_ones(), 0);
        let g = fig1();
        let m = adjacency_matrix(&g, &VertexOrder::identity(7));
        assert_eq!(m.row(1).count_ones(..), 5);
        assert_eq!(m, m.transpose());
    }

    #[test]
    fn reversed_order_flips_about_antidiagonal() {
        let g = fig1();
        let ord = VertexOrder::new(vec![3, 0, 6, 2, 5, 1, 4]).unwrap();
        let m = adjacency_matrix(&g, &ord);
        let r = adjacency_matrix(&g, &ord.reversed());
        assert_eq!(r, m.rotate_half());
    }

    #[test]
    fn half_graph_check() {
        let mut g = Graph::with_prefix("v", 6);
        for i in 0..3 {
            for j in i..3 {
                g.add_edge(i, 3 + j).unwrap();
            }
        }
        let cols = vec![vec![0, 1, 2], vec![3, 4, 5]];
        assert!(semi_induced_check(&g, &cols, &BipPattern::half_graph(3)).unwrap());
        assert!(!semi_induced_check(&g, &cols, &BipPattern::matching(3)).unwrap());
        let overlap = vec![vec![0, 1, 2], vec![2, 4, 5]];
        assert!(matches!(
            semi_induced_check(&g, &overlap, &BipPattern::half_graph(3)),
            Err(Error::Overlap(_))
        ));
        assert!(matches!(
            semi_induced_check(&g, &cols, &BipPattern::half_graph(2)),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn complete_cross_edges_are_not_a_matching() {
        let g = Graph::from_edges(["a", "b", "c", "d"], &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let cols = vec![vec![0, 1], vec![2, 3]];
        assert!(!semi_induced_check(&g, &cols, &BipPattern::matching(2)).unwrap());
        assert!(semi_induced_check(&g, &cols, &BipPattern::biclique(2)).unwrap());
    }

    #[test]
    fn biadjacency_orders_rows_and_columns() {
        let g = fig1();
        let ord = VertexOrder::identity(7);
        let m = biadjacency(&g, &ord, &[2, 0], &[3, 1]).unwrap();
        // rows b, d; columns a, c
        assert_eq!(m, OrderedMatrix::from_rows(&[vec![1, 1], vec![1, 0]]).unwrap());
        assert_eq!(biadjacency(&g, &ord, &[], &[1]).unwrap().cols(), 0);
        assert!(biadjacency(&g, &ord, &[1], &[1]).is_err());
    }

    #[test]
    fn matrix_text_round_trip() {
        let m = OrderedMatrix::from_rows(&[vec![1, 0, 1], vec![0, 0, 1]]).unwrap();
        assert_eq!(OrderedMatrix::parse(&m.to_text()).unwrap(), m);
        assert!(OrderedMatrix::parse("matrix 1 2\n12\n").is_err());
    }

    #[test]
    fn transversal_rules() {
        let p = BipPattern::transversal(2, 1);
        // a_{1,2} (index 1) vs b0_{2,1} (index 2): (1,2) <=lex (2,1)
        assert_eq!(p.required(0, 1, 1, 2), Some(true));
        assert_eq!(p.required(0, 2, 1, 1), Some(false));
        assert_eq!(p.required(1, 3, 2, 3), Some(true));
        assert_eq!(p.required(1, 3, 2, 2), Some(false));
        // b1_{1,2} (index 1, transposed 2) vs c_{2,1} (index 2, transposed 1)
        assert_eq!(p.required(2, 1, 3, 2), Some(false));
        assert_eq!(p.required(2, 2, 3, 1), Some(true));
        assert_eq!(p.required(0, 0, 3, 0), None);
        assert_eq!(p.required(0, 0, 2, 0), None);
    }
}
