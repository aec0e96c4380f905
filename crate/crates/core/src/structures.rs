//! Structural certificates: generators, exhaustive finders, and Ramsey and
//! monotone-subsequence searches.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::error::parse_err;
use crate::graph::{content_lines, semi_induced_check, BipPattern, Graph, OrderedMatrix, PatternKind};

/// Ordered vertex lists, one per column of the pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureWitness {
    pub pattern: BipPattern,
    pub columns: Vec<Vec<usize>>,
}

impl StructureWitness {
    pub fn verify(&self, g: &Graph) -> bool {
        semi_induced_check(g, &self.columns, &self.pattern).unwrap_or(false)
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.columns.iter().flatten().copied().collect()
    }

    /// One line per column of space-separated labels.
    pub fn to_text(&self, g: &Graph) -> String {
        self.columns
            .iter()
            .map(|c| c.iter().map(|&v| g.label(v)).collect::<Vec<_>>().join(" ") + "\n")
            .collect()
    }

    /// `witness <pattern>` followed by [`StructureWitness::to_text`].
    pub fn to_document(&self, g: &Graph) -> String {
        format!("witness {}\n{}", self.pattern.name(), self.to_text(g))
    }

    /// Reads [`StructureWitness::to_document`] output. Column sizes are not
    /// checked here; [`StructureWitness::verify`] does that.
    pub fn parse(g: &Graph, text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty document"))?;
        let name = header.strip_prefix("witness ").ok_or_else(|| parse_err(ln, "expected \"witness <pattern>\""))?;
        let pattern = BipPattern::parse(name).map_err(|_| parse_err(ln, format!("unknown pattern {name:?}")))?;
        let columns = lines
            .map(|(ln, l)| {
                l.split_whitespace().map(|tok| g.index_of(tok).map_err(|e| parse_err(ln, e.to_string()))).collect()
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        Ok(StructureWitness { pattern, columns })
    }
}

/// The pattern graph itself, with no edges beyond the required ones.
pub fn generate(p: &BipPattern) -> Result<(Graph, StructureWitness)> {
    if p.t == 0 {
        return Err(Error::Precondition("pattern height must be positive".into()));
    }
    let t = p.t;
    let size = p.column_size();
    let cols = p.column_count();
    let labels: Vec<String> = match p.kind {
        PatternKind::TransversalPair { ell } => (0..cols)
            .flat_map(|c| {
                (0..size).map(move |x| {
                    let (i, j) = (x / t + 1, x % t + 1);
                    match c {
                        0 => format!("a{i}_{j}"),
                        c if c == ell + 2 => format!("c{i}_{j}"),
                        c => format!("b{}_{i}_{j}", c - 1),
                    }
                })
            })
            .collect(),
        _ => ["a", "b"].iter().flat_map(|s| (1..=t).map(move |i| format!("{s}{i}"))).collect(),
    };
    let mut g = Graph::new(labels)?;
    let columns: Vec<Vec<usize>> = (0..cols).map(|c| (c * size..(c + 1) * size).collect()).collect();
    for c1 in 0..cols {
        for c2 in c1 + 1..cols {
            for x in 0..size {
                for y in 0..size {
                    if p.required(c1, x, c2, y) == Some(true) {
                        g.add_edge(columns[c1][x], columns[c2][y])?;
                    }
                }
            }
        }
    }
    Ok((g, StructureWitness { pattern: *p, columns }))
}

/// Exhaustive backtracking search for a semi-induced copy of `p`.
pub fn find_semi_induced(g: &Graph, p: &BipPattern, budget: &Budget) -> Result<Option<StructureWitness>> {
    if p.t == 0 {
        return Err(Error::Precondition("pattern height must be positive".into()));
    }
    let size = p.column_size();
    let cols = p.column_count();
    if size * cols > g.n() {
        return Ok(None);
    }
    // positions interleave the columns so constraints apply early
    let positions: Vec<(usize, usize)> = (0..size).flat_map(|x| (0..cols).map(move |c| (c, x))).collect();
    let mut search = SemiInduced {
        g,
        p,
        positions: &positions,
        assigned: vec![vec![usize::MAX; size]; cols],
        used: FixedBitSet::with_capacity(g.n()),
        meter: budget.meter(),
    };
    if search.extend(0)? {
        Ok(Some(StructureWitness { pattern: *p, columns: search.assigned }))
    } else {
        Ok(None)
    }
}

struct SemiInduced<'a> {
    g: &'a Graph,
    p: &'a BipPattern,
    positions: &'a [(usize, usize)],
    assigned: Vec<Vec<usize>>,
    used: FixedBitSet,
    meter: Meter,
}

impl SemiInduced<'_> {
    fn candidates(&self, c: usize, x: usize) -> FixedBitSet {
        let n = self.g.n();
        let mut cand = FixedBitSet::with_capacity(n);
        cand.insert_range(..);
        cand.difference_with(&self.used);
        for (c2, col) in self.assigned.iter().enumerate() {
            for (y, &v) in col.iter().enumerate() {
                if v == usize::MAX {
                    continue;
                }
                match self.p.required(c, x, c2, y) {
                    Some(true) => cand.intersect_with(self.g.neighbors(v)),
                    Some(false) => {
                        cand.difference_with(self.g.neighbors(v));
                        cand.set(v, false);
                    }
                    None => {}
                }
            }
        }
        // columns whose order is irrelevant are filled increasingly
        let unordered = match self.p.kind {
            PatternKind::Biclique => true,
            PatternKind::Matching | PatternKind::AntiMatching => c == 0,
            _ => false,
        };
        if unordered && x > 0 {
            let prev = self.assigned[c][x - 1];
            cand.set_range(..prev + 1, false);
        }
        if self.p.kind == PatternKind::Biclique && c == 1 && x == 0 {
            cand.set_range(..self.assigned[0][0] + 1, false);
        }
        cand
    }

    fn extend(&mut self, i: usize) -> Result<bool> {
        self.meter.tick()?;
        let Some(&(c, x)) = self.positions.get(i) else { return Ok(true) };
        let cand = self.candidates(c, x);
        for v in cand.ones() {
            self.assigned[c][x] = v;
            self.used.insert(v);
            if self.extend(i + 1)? {
                return Ok(true);
            }
            self.used.set(v, false);
        }
        self.assigned[c][x] = usize::MAX;
        Ok(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RamseyOutcome {
    Clique(Vec<usize>),
    IndependentSet(Vec<usize>),
    /// Neither target was reached; the largest of each kind.
    Neither { max_clique: Vec<usize>, max_independent: Vec<usize> },
}

fn max_clique_in(adj: &[FixedBitSet], target: usize) -> Vec<usize> {
    fn grow(adj: &[FixedBitSet], current: &mut Vec<usize>, cand: FixedBitSet, best: &mut Vec<usize>, target: usize) {
        if current.len() > best.len() {
            *best = current.clone();
        }
        if best.len() >= target || current.len() + cand.count_ones(..) <= best.len() {
            return;
        }
        for v in cand.ones() {
            let mut next = cand.clone();
            next.intersect_with(&adj[v]);
            next.set_range(..v + 1, false);
            current.push(v);
            grow(adj, current, next, best, target);
            current.pop();
            if best.len() >= target {
                return;
            }
        }
    }
    let n = adj.len();
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let mut best = Vec::new();
    grow(adj, &mut Vec::new(), all, &mut best, target);
    best
}

fn complement_adj(g: &Graph) -> Vec<FixedBitSet> {
    (0..g.n())
        .map(|v| {
            let mut s = g.neighbors(v).clone();
            s.toggle_range(..);
            s.set(v, false);
            s
        })
        .collect()
}

/// A clique of size `s` or an independent set of size `t`, found by
/// exhaustive search, cliques first.
pub fn ramsey_search(g: &Graph, s: usize, t: usize) -> RamseyOutcome {
    let adj: Vec<FixedBitSet> = (0..g.n()).map(|v| g.neighbors(v).clone()).collect();
    let clique = max_clique_in(&adj, s);
    if clique.len() >= s {
        return RamseyOutcome::Clique(clique[..s].to_vec());
    }
    let indep = max_clique_in(&complement_adj(g), t);
    if indep.len() >= t {
        return RamseyOutcome::IndependentSet(indep[..t].to_vec());
    }
    RamseyOutcome::Neither { max_clique: max_clique_in(&adj, usize::MAX), max_independent: indep }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonochromeBlock {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BipRamseyOutcome {
    Found(MonochromeBlock),
    /// The largest balanced all-1 and all-0 blocks.
    Neither { ones: MonochromeBlock, zeros: MonochromeBlock },
}

/// Row limit for the subset enumeration of [`bip_ramsey_search`].
pub const BIP_RAMSEY_LIMIT: usize = 24;

/// Largest `r x r` block with every entry equal to `value`, by enumerating
/// subsets of the shorter side.
fn largest_balanced(m: &OrderedMatrix, value: bool) -> MonochromeBlock {
    let transpose = m.rows() > m.cols();
    let work = if transpose { m.transpose() } else { m.clone() };
    let rows: Vec<FixedBitSet> = (0..work.rows())
        .map(|r| {
            let mut s = work.row(r).clone();
            if !value {
                s.toggle_range(..);
            }
            s
        })
        .collect();
    let mut all = FixedBitSet::with_capacity(work.cols());
    all.insert_range(..);
    let mut best = (Vec::new(), Vec::new());
    let mut chosen = Vec::new();
    grow_block(&rows, 0, &mut chosen, all, &mut best);
    let (r, c) = best;
    let (rows, cols) = if transpose { (c, r) } else { (r, c) };
    MonochromeBlock { rows, cols, value }
}

fn grow_block(
    rows: &[FixedBitSet],
    start: usize,
    chosen: &mut Vec<usize>,
    common: FixedBitSet,
    best: &mut (Vec<usize>, Vec<usize>),
) {
    let size = chosen.len().min(common.count_ones(..));
    if size > best.0.len() {
        *best = (chosen[..size].to_vec(), common.ones().take(size).collect());
    }
    if common.count_ones(..) <= best.0.len() || chosen.len() + (rows.len() - start) <= best.0.len() {
        return;
    }
    for r in start..rows.len() {
        let mut next = common.clone();
        next.intersect_with(&rows[r]);
        if next.count_ones(..) <= best.0.len() {
            continue;
        }
        chosen.push(r);
        grow_block(rows, r + 1, chosen, next, best);
        chosen.pop();
    }
}

/// An `s x s` all-1 block or a `t x t` all-0 block.
pub fn bip_ramsey_search(m: &OrderedMatrix, s: usize, t: usize) -> Result<BipRamseyOutcome> {
    if m.rows().min(m.cols()) > BIP_RAMSEY_LIMIT {
        return Err(Error::OverLimit { rows: m.rows(), cols: m.cols(), limit: BIP_RAMSEY_LIMIT });
    }
    let ones = largest_balanced(m, true);
    if ones.rows.len() >= s {
        return Ok(BipRamseyOutcome::Found(MonochromeBlock {
            rows: ones.rows[..s].to_vec(),
            cols: ones.cols[..s].to_vec(),
            value: true,
        }));
    }
    let zeros = largest_balanced(m, false);
    if zeros.rows.len() >= t {
        return Ok(BipRamseyOutcome::Found(MonochromeBlock {
            rows: zeros.rows[..t].to_vec(),
            cols: zeros.cols[..t].to_vec(),
            value: false,
        }));
    }
    Ok(BipRamseyOutcome::Neither { ones, zeros })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotone {
    NonDecreasing,
    NonIncreasing,
}

/// Indices of a longest non-decreasing or non-increasing subsequence; ties
/// go to non-decreasing.
pub fn longest_monotone<T: Ord>(seq: &[T]) -> (Vec<usize>, Monotone) {
    let best = |le: &dyn Fn(&T, &T) -> bool| -> Vec<usize> {
        let n = seq.len();
        let mut len = vec![1usize; n];
        let mut prev = vec![usize::MAX; n];
        for i in 0..n {
            for j in 0..i {
                if le(&seq[j], &seq[i]) && len[j] + 1 > len[i] {
                    len[i] = len[j] + 1;
                    prev[i] = j;
                }
            }
        }
        let Some(mut end) = (0..n).max_by_key(|&i| (len[i], std::cmp::Reverse(i))) else {
            return Vec::new();
        };
        let mut out = vec![end];
        while prev[end] != usize::MAX {
            end = prev[end];
            out.push(end);
        }
        out.reverse();
        out
    };
    let up = best(&|a, b| a <= b);
    let down = best(&|a, b| a >= b);
    if up.len() >= down.len() {
        (up, Monotone::NonDecreasing)
    } else {
        (down, Monotone::NonIncreasing)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn is_clique(g: &Graph, vs: &[usize], want: bool) -> bool {
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.adjacent(u, v) == want))
    }

    #[test]
    fn generated_patterns() {
        let (g, w) = generate(&BipPattern::half_graph(9)).unwrap();
        assert_eq!(g.edge_count(), 45);
        assert!(w.verify(&g));
        let (g, _) = generate(&BipPattern::matching(1)).unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 1));
        let (g, w) = generate(&BipPattern::transversal(2, 0)).unwrap();
        assert_eq!(g.n(), 12);
        assert!(w.verify(&g));
        let id = |s: &str| g.index_of(s).unwrap();
        assert!(g.adjacent(id("a1_2"), id("b0_2_1")));
        assert!(!g.adjacent(id("a2_1"), id("b0_1_2")));
        // (j, i) order between B and C
        assert!(g.adjacent(id("b0_2_1"), id("c1_2")));
        assert!(!g.adjacent(id("b0_1_2"), id("c2_1")));
        let (g, w) = generate(&BipPattern::transversal(2, 2)).unwrap();
        assert_eq!(w.columns.len(), 5);
        assert!(g.adjacent(g.index_of("b0_1_2").unwrap(), g.index_of("b1_1_2").unwrap()));
        assert!(!g.adjacent(g.index_of("b0_1_2").unwrap(), g.index_of("b1_2_1").unwrap()));
    }

    #[test]
    fn round_trip_small_patterns() {
        let mut ps = Vec::new();
        for t in 1..=3 {
            ps.extend([
                BipPattern::biclique(t),
                BipPattern::half_graph(t),
                BipPattern::matching(t),
                BipPattern::anti_matching(t),
            ]);
        }
        for t in 1..=2 {
            for ell in 0..=2 {
                ps.push(BipPattern::transversal(t, ell));
            }
        }
        for p in ps {
            let (g, _) = generate(&p).unwrap();
            let w = find_semi_induced(&g, &p, &Budget::unlimited()).unwrap().expect("round trip");
            assert!(w.verify(&g), "{}", p.name());
        }
    }

    #[test]
    fn planted_half_graph_is_found() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let n = 26;
        let mut g = Graph::with_prefix("v", n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.3) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let a: Vec<usize> = (0..5).map(|i| 3 * i + 1).collect();
        let b: Vec<usize> = (0..5).map(|i| 3 * i + 2).collect();
        for i in 0..5 {
            for j in 0..5 {
                if i <= j {
                    g.add_edge(a[i], b[j]).unwrap();
                } else {
                    g.remove_edge(a[i], b[j]);
                }
            }
        }
        let w = find_semi_induced(&g, &BipPattern::half_graph(5), &Budget::unlimited()).unwrap().unwrap();
        assert!(w.verify(&g));
    }

    #[test]
    fn edgeless_and_budget() {
        let g = Graph::with_prefix("v", 6);
        assert_eq!(find_semi_induced(&g, &BipPattern::biclique(1), &Budget::unlimited()).unwrap(), None);
        let (h, _) = generate(&BipPattern::half_graph(4)).unwrap();
        let r = find_semi_induced(&h, &BipPattern::half_graph(4), &Budget::nodes(2));
        assert_eq!(r, Err(Error::BudgetExhausted));
    }

    #[test]
    fn ramsey_examples() {
        let mut k6 = Graph::with_prefix("v", 6);
        for u in 0..6 {
            for v in u + 1..6 {
                k6.add_edge(u, v).unwrap();
            }
        }
        assert!(matches!(ramsey_search(&k6, 3, 3), RamseyOutcome::Clique(c) if c.len() == 3));
        let e6 = Graph::with_prefix("v", 6);
        assert!(matches!(ramsey_search(&e6, 3, 3), RamseyOutcome::IndependentSet(c) if c.len() == 3));
        let c5 = Graph::from_edges(["a", "b", "c", "d", "e"], &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        match ramsey_search(&c5, 3, 3) {
            RamseyOutcome::Neither { max_clique, max_independent } => {
                assert_eq!((max_clique.len(), max_independent.len()), (2, 2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ramsey_random_is_rechecked() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let mut g = Graph::with_prefix("v", 10);
            for u in 0..10 {
                for v in u + 1..10 {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            match ramsey_search(&g, 3, 4) {
                RamseyOutcome::Clique(c) => assert!(c.len() == 3 && is_clique(&g, &c, true)),
                RamseyOutcome::IndependentSet(c) => assert!(c.len() == 4 && is_clique(&g, &c, false)),
                RamseyOutcome::Neither { .. } => panic!("R(3,4) = 9"),
            }
        }
    }

    #[test]
    fn every_graph_on_six_vertices_has_a_triangle_or_independent_triple() {
        let pairs: Vec<(usize, usize)> = (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::from_edges((0..6).map(|i| format!("v{i}")), &edges).unwrap();
            assert!(!matches!(ramsey_search(&g, 3, 3), RamseyOutcome::Neither { .. }));
        }
    }

    fn brute_balanced(m: &OrderedMatrix, value: bool) -> usize {
        let mut best = 0;
        for mask in 0u32..(1 << m.rows()) {
            let rows: Vec<usize> = (0..m.rows()).filter(|r| mask >> r & 1 == 1).collect();
            let cols = (0..m.cols()).filter(|&c| rows.iter().all(|&r| m.get(r, c) == value)).count();
            best = best.max(rows.len().min(cols));
        }
        best
    }

    #[test]
    fn bip_ramsey_examples() {
        let ones = OrderedMatrix::from_fn(3, 3, |_, _| true);
        let r = bip_ramsey_search(&ones, 2, 2).unwrap();
        assert!(matches!(r, BipRamseyOutcome::Found(MonochromeBlock { value: true, .. })));
        let zeros = OrderedMatrix::zeros(3, 3);
        let r = bip_ramsey_search(&zeros, 2, 2).unwrap();
        assert!(matches!(r, BipRamseyOutcome::Found(MonochromeBlock { value: false, .. })));
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5 {
            let m = OrderedMatrix::from_fn(12, 12, |_, _| rng.gen_bool(0.5));
            let got = largest_balanced(&m, true);
            assert_eq!(got.rows.len(), brute_balanced(&m, true));
            assert!(got.rows.iter().all(|&r| got.cols.iter().all(|&c| m.get(r, c))));
            let got = largest_balanced(&m, false);
            assert_eq!(got.rows.len(), brute_balanced(&m, false));
        }
    }

    fn brute_monotone(seq: &[i64]) -> usize {
        let n = seq.len();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let sub: Vec<i64> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| seq[i]).collect();
            if sub.windows(2).all(|w| w[0] <= w[1]) || sub.windows(2).all(|w| w[0] >= w[1]) {
                best = best.max(sub.len());
            }
        }
        best
    }

    #[test]
    fn monotone_examples() {
        let (idx, dir) = longest_monotone(&[1, 2, 3, 4, 5]);
        assert_eq!((idx.len(), dir), (5, Monotone::NonDecreasing));
        let seq = [3, 1, 4, 1, 5];
        assert_eq!(longest_monotone(&seq).0.len(), brute_monotone(&seq));
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let n = rng.gen_range(0..=12);
            let seq: Vec<i64> = (0..n).map(|_| rng.gen_range(0..6)).collect();
            let (idx, dir) = longest_monotone(&seq);
            assert_eq!(idx.len(), brute_monotone(&seq));
            let ok = idx.windows(2).all(|w| match dir {
                Monotone::NonDecreasing => seq[w[0]] <= seq[w[1]],
                Monotone::NonIncreasing => seq[w[0]] >= seq[w[1]],
            });
            assert!(ok && idx.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
