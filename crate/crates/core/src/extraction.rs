//! Turning dense matrix structure into verified witnesses: transversal pairs
//! in interval graphs, independent sets in polygon visibility graphs and
//! half-graphs in terrain visibility graphs.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::budget::{Budget, Meter};
use crate::error::{parse_err, Error, Result};
use crate::geometry::{interval_graph, minimize_representation, IntervalModel};
use crate::graph::{adjacency_matrix, content_lines, BipPattern, Graph, VertexOrder};
use crate::matrix::{sigma, PatternOccurrence, PatternSign};
use crate::orders::{increasing_chain, interval_lex_order, start_intervals};
use crate::structures::StructureWitness;

/// Two families of `t^2` parts with strictly increasing start intervals,
/// rows before columns, over a minimal interval model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreparedDivision {
    #[serde(skip)]
    pub model: IntervalModel,
    pub t: usize,
    pub rows: Vec<Vec<usize>>,
    pub cols: Vec<Vec<usize>>,
}

/// Which neighbouring column certified each `a` vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Neighbour {
    Right,
    Left,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransversalExtraction {
    pub witness: StructureWitness,
    /// Neighbour used for `a_{i,j}`, in lex order of `(i, j)`.
    pub neighbours: Vec<Neighbour>,
}

/// A zone has a row holding both a 1 and a 0.
fn zone_mixed(g: &Graph, rows: &[usize], cols: &[usize]) -> bool {
    rows.iter().any(|&b| {
        let ones = cols.iter().filter(|&&a| g.adjacent(b, a)).count();
        ones > 0 && ones < cols.len()
    })
}

/// Looks for a split of the lex order into a prefix and a suffix, and for
/// `t^2` row parts in the prefix and `t^2` column parts in the suffix whose
/// start intervals strictly increase and whose zones all hold a mixed row.
/// Column parts grow until they contain enough row transitions; row parts
/// grow until their transitions reach every column part.
pub fn interval_division_prepare(model: &IntervalModel, t: usize) -> Option<PreparedDivision> {
    if t == 0 {
        return None;
    }
    let model = minimize_representation(model);
    let g = interval_graph(&model);
    let ord = interval_lex_order(&model);
    let n = g.n();
    let parts = t * t;
    let left = |v: usize| model.intervals[v].0;
    for s in 1..n {
        let (prefix, suffix) = ord.perm().split_at(s);
        // prefix rows are 1s followed by 0s on the suffix
        let tau: Vec<usize> = prefix.iter().map(|&u| suffix.iter().take_while(|&&w| g.adjacent(u, w)).count()).collect();
        for need in parts..=prefix.len() {
            let Some(col_cuts) = cut_columns(suffix, &tau, need, parts, &left) else { break };
            let col_parts: Vec<Vec<usize>> = col_cuts.windows(2).map(|w| suffix[w[0]..w[1]].to_vec()).collect();
            let hit = |r: usize| {
                let x = tau[r];
                col_cuts.windows(2).position(|w| w[0] < x && x < w[1])
            };
            let mut row_parts: Vec<Vec<usize>> = Vec::new();
            let mut current: Vec<usize> = Vec::new();
            let mut covered = FixedBitSet::with_capacity(parts);
            for (r, &u) in prefix.iter().enumerate() {
                if covered.count_ones(..) == parts && current.last().map_or(true, |&p| left(p) < left(u)) {
                    row_parts.push(std::mem::take(&mut current));
                    covered.clear();
                }
                current.push(u);
                if let Some(j) = hit(r) {
                    covered.insert(j);
                }
            }
            if covered.count_ones(..) == parts {
                row_parts.push(current);
            } else if let Some(last) = row_parts.last_mut() {
                last.extend(current);
            }
            if row_parts.len() < parts {
                continue;
            }
            let extra: Vec<usize> = row_parts.drain(parts..).flatten().collect();
            row_parts[parts - 1].extend(extra);
            let prepared = PreparedDivision { model: model.clone(), t, rows: row_parts, cols: col_parts };
            if check_prepared(&g, &prepared).is_ok() {
                return Some(prepared);
            }
        }
    }
    None
}

/// Cut positions `0 = c_0 < ... < c_parts = len` such that each part holds
/// at least `need` strict-interior transitions and cuts fall where the left
/// endpoint changes. The final part absorbs the remainder.
fn cut_columns(suffix: &[usize], tau: &[usize], need: usize, parts: usize, left: &dyn Fn(usize) -> i64) -> Option<Vec<usize>> {
    let mut cuts = vec![0];
    let mut start = 0;
    for end in 1..=suffix.len() {
        if cuts.len() == parts {
            break;
        }
        let inside = tau.iter().filter(|&&x| start < x && x < end).count();
        let boundary = end == suffix.len() || left(suffix[end - 1]) < left(suffix[end]);
        if inside >= need && boundary && end < suffix.len() {
            cuts.push(end);
            start = end;
        }
    }
    if cuts.len() < parts {
        return None;
    }
    cuts.push(suffix.len());
    Some(cuts)
}

/// Checks strictly increasing start intervals, mixed zones and the two
/// monotonicity properties, naming the first failure.
pub fn check_prepared(g: &Graph, p: &PreparedDivision) -> Result<()> {
    let parts = p.t * p.t;
    if p.rows.len() != parts || p.cols.len() != parts {
        return Err(Error::Precondition(format!("need {parts} row and column parts")));
    }
    let rs = start_intervals(&p.model, &p.rows)?;
    let cs = start_intervals(&p.model, &p.cols)?;
    if increasing_chain(&rs).len() != parts || increasing_chain(&cs).len() != parts {
        return Err(Error::Precondition("start intervals are not strictly increasing".into()));
    }
    if rs[parts - 1].1 >= cs[0].0 {
        return Err(Error::Precondition("last row start interval passes the first column start".into()));
    }
    for (i, rows) in p.rows.iter().enumerate() {
        for (j, cols) in p.cols.iter().enumerate() {
            if !zone_mixed(g, rows, cols) {
                return Err(Error::Precondition(format!("zone ({}, {}) has no mixed row", i + 1, j + 1)));
            }
        }
    }
    for rows in &p.rows {
        for &b in rows {
            for k in 0..parts {
                for &a in &p.cols[k] {
                    let one = g.adjacent(b, a);
                    let later = if one { &p.cols[..k] } else { &p.cols[k + 1..] };
                    if later.iter().flatten().any(|&a2| g.adjacent(b, a2) != one) {
                        return Err(Error::Precondition(format!(
                            "row {} breaks monotonicity across column parts",
                            g.label(b)
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Builds `T_t` from a prepared division: `b_{i,j}` and `a_{i,j}` from the
/// zone of row part `(j-1)t+i` and column part `(i-1)t+j` at a 1 whose
/// neighbouring column holds a 0, and `c_{i,j}` with right endpoint between
/// `l(b_{i,j})` and the next chosen left endpoint.
pub fn interval_transversal_extract(p: &PreparedDivision) -> Result<TransversalExtraction> {
    let g = interval_graph(&p.model);
    check_prepared(&g, p)?;
    let t = p.t;
    let ord = interval_lex_order(&p.model);
    let mut a = vec![0; t * t];
    let mut b = vec![0; t * t];
    let mut neighbours = vec![Neighbour::Right; t * t];
    for i in 0..t {
        for j in 0..t {
            let rows = &p.rows[j * t + i];
            let cols = ord.sort(&p.cols[i * t + j]);
            let found = rows.iter().find_map(|&row| {
                (0..cols.len()).find_map(|x| {
                    if !g.adjacent(row, cols[x]) {
                        return None;
                    }
                    if x + 1 < cols.len() && !g.adjacent(row, cols[x + 1]) {
                        Some((row, cols[x], Neighbour::Right))
                    } else if x > 0 && !g.adjacent(row, cols[x - 1]) {
                        Some((row, cols[x], Neighbour::Left))
                    } else {
                        None
                    }
                })
            });
            let (row, col, nb) = found.ok_or_else(|| {
                Error::Precondition(format!("zone ({}, {}) has no 10 or 01 pair", j * t + i + 1, i * t + j + 1))
            })?;
            b[i * t + j] = row;
            a[i * t + j] = col;
            neighbours[i * t + j] = nb;
        }
    }
    let left = |v: usize| p.model.intervals[v].0;
    let right = |v: usize| p.model.intervals[v].1;
    let used: FixedBitSet = a.iter().chain(&b).copied().collect();
    let min_right = b.iter().map(|&v| right(v)).min().unwrap_or(i64::MAX);
    let mut c = vec![0; t * t];
    for (x, &bv) in b.iter().enumerate() {
        let next = b.iter().map(|&w| left(w)).filter(|&l| l > left(bv)).min();
        let pick = (0..g.n()).find(|&v| {
            !used.contains(v)
                && g.adjacent(v, bv)
                && left(bv) <= right(v)
                && next.map_or(left(v) <= min_right, |nl| right(v) < nl)
        });
        c[x] = pick.ok_or_else(|| {
            Error::Precondition(format!("no vertex ends between the left endpoint of {} and the next one", g.label(bv)))
        })?;
    }
    let witness = StructureWitness { pattern: BipPattern::transversal(t, 0), columns: vec![a, b, c] };
    if !witness.verify(&g) {
        return Err(Error::Construction("extracted triple is not a transversal pair".into()));
    }
    Ok(TransversalExtraction { witness, neighbours })
}

/// A set of pairwise non-adjacent vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependentSetWitness {
    pub vertices: Vec<usize>,
}

impl IndependentSetWitness {
    pub fn verify(&self, g: &Graph) -> bool {
        let mut seen = FixedBitSet::with_capacity(g.n());
        self.vertices.iter().all(|&v| v < g.n() && !seen.put(v))
            && self.vertices.iter().enumerate().all(|(i, &u)| self.vertices[i + 1..].iter().all(|&v| !g.adjacent(u, v)))
    }

    pub fn to_text(&self, g: &Graph) -> String {
        self.vertices.iter().map(|&v| g.label(v)).collect::<Vec<_>>().join(" ") + "\n"
    }

    /// `independent_set <size>` followed by the labels on one line.
    pub fn to_document(&self, g: &Graph) -> String {
        format!("independent_set {}\n{}", self.vertices.len(), self.to_text(g))
    }

    pub fn parse(g: &Graph, text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty document"))?;
        let size: usize = header
            .strip_prefix("independent_set")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| parse_err(ln, "expected \"independent_set <size>\""))?;
        let mut vertices = Vec::new();
        for (ln, l) in lines {
            for tok in l.split_whitespace() {
                vertices.push(g.index_of(tok).map_err(|e| parse_err(ln, e.to_string()))?);
            }
        }
        if vertices.len() != size {
            return Err(parse_err(ln, format!("header announces {size} vertices, found {}", vertices.len())));
        }
        Ok(IndependentSetWitness { vertices })
    }
}

/// Exact maximum independent set among `within`.
pub fn maximum_independent_set(g: &Graph, within: &[usize]) -> Vec<usize> {
    independent_set_search(g, within, usize::MAX, &Budget::unlimited()).expect("unlimited budget")
}

/// Branch and bound on a maximum-degree vertex. Stops as soon as a set of
/// size `stop_at` is found; otherwise the result is maximum.
pub fn independent_set_search(g: &Graph, within: &[usize], stop_at: usize, budget: &Budget) -> Result<Vec<usize>> {
    struct Search<'a> {
        g: &'a Graph,
        stop_at: usize,
        best: Vec<usize>,
        meter: Meter,
    }
    impl Search<'_> {
        fn go(&mut self, cand: &[usize], cur: &mut Vec<usize>) -> Result<()> {
            self.meter.tick()?;
            if self.best.len() >= self.stop_at || cur.len() + cand.len() <= self.best.len() {
                return Ok(());
            }
            let g = self.g;
            let deg = |v: usize| cand.iter().filter(|&&w| g.adjacent(v, w)).count();
            let Some(&pivot) = cand.iter().max_by_key(|&&v| deg(v)) else {
                self.best = cur.clone();
                return Ok(());
            };
            if deg(pivot) == 0 {
                self.best = cur.iter().chain(cand).copied().collect();
                return Ok(());
            }
            let take: Vec<usize> = cand.iter().copied().filter(|&w| w != pivot && !g.adjacent(pivot, w)).collect();
            cur.push(pivot);
            self.go(&take, cur)?;
            cur.pop();
            let skip: Vec<usize> = cand.iter().copied().filter(|&w| w != pivot).collect();
            self.go(&skip, cur)
        }
    }
    let mut search = Search { g, stop_at, best: Vec::new(), meter: budget.meter() };
    search.go(within, &mut Vec::new())?;
    let mut best = search.best;
    best.truncate(stop_at);
    best.sort_unstable();
    Ok(best)
}

/// Vertices of the diagonal pairs `(row r, column sigma(r))` of an
/// occurrence, as `(row vertex, column vertex)`.
fn occurrence_pairs(g: &Graph, ord: &VertexOrder, occ: &PatternOccurrence) -> Result<Vec<(usize, usize)>> {
    let m = adjacency_matrix(g, ord);
    if !occ.verify(&m) {
        return Err(Error::Precondition("occurrence does not match the ordered adjacency matrix".into()));
    }
    let k = occ.pattern.k;
    Ok((0..k * k).map(|r| (ord.vertex_at(occ.row_idx[r]), ord.vertex_at(occ.col_idx[sigma(k, r)]))).collect())
}

/// Maximum independent set among the `2k^2` diagonal vertices of the
/// occurrence.
pub fn polygon_independent_set_extract(g: &Graph, ord: &VertexOrder, occ: &PatternOccurrence) -> Result<IndependentSetWitness> {
    let pairs = occurrence_pairs(g, ord, occ)?;
    let within: Vec<usize> = pairs.iter().flat_map(|&(r, c)| [r, c]).collect();
    let w = IndependentSetWitness { vertices: maximum_independent_set(g, &within) };
    debug_assert!(w.verify(g));
    Ok(w)
}

/// The half-graph `H_{k^2}` on the diagonal pairs of an arrow occurrence.
pub fn terrain_halfgraph_extract(g: &Graph, ord: &VertexOrder, occ: &PatternOccurrence) -> Result<StructureWitness> {
    if !occ.pattern.s.is_arrow() {
        return Err(Error::Precondition(format!(
            "pattern sign {} cannot occur in a terrain visibility graph",
            occ.pattern.s.name()
        )));
    }
    let pairs = occurrence_pairs(g, ord, occ)?;
    let mut rows: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let mut cols: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    let row_deg = |u: usize| cols.iter().filter(|&&v| g.adjacent(u, v)).count();
    let mut keyed: Vec<(usize, usize)> = rows.iter().map(|&u| (row_deg(u), u)).collect();
    keyed.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    rows = keyed.into_iter().map(|x| x.1).collect();
    let col_deg = |v: usize| rows.iter().filter(|&&u| g.adjacent(u, v)).count();
    let mut keyed: Vec<(usize, usize)> = cols.iter().map(|&v| (col_deg(v), v)).collect();
    keyed.sort();
    cols = keyed.into_iter().map(|x| x.1).collect();
    let k = occ.pattern.k;
    let w = StructureWitness { pattern: BipPattern::half_graph(k * k), columns: vec![rows, cols] };
    if !w.verify(g) {
        return Err(Error::Construction("diagonal pairs do not form a half-graph".into()));
    }
    Ok(w)
}

/// Signs an occurrence in a polygon visibility graph may carry.
pub fn polygon_sign_allowed(s: PatternSign) -> bool {
    s != PatternSign::One
}
