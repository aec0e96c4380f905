//! Trigraphs, contraction sequences, exact twin-width and the dyadic
//! heuristic.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::budget::{Budget, Meter};
use crate::error::{parse_err, Error, Result};
use crate::graph::{content_lines, Graph, VertexOrder};

/// Largest graph handled by [`exact_twinwidth`] without an explicit budget.
pub const EXACT_DEFAULT_LIMIT: usize = 10;

/// A graph with black and red edges whose vertices are classes of original
/// vertices. Slot `i` starts as original vertex `i`; a merge keeps the
/// smaller slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trigraph {
    labels: Vec<String>,
    alive: FixedBitSet,
    members: Vec<FixedBitSet>,
    black: Vec<FixedBitSet>,
    red: Vec<FixedBitSet>,
}

impl Trigraph {
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let mut alive = FixedBitSet::with_capacity(n);
        alive.insert_range(..);
        Trigraph {
            labels: g.labels().to_vec(),
            alive,
            members: (0..n)
                .map(|v| {
                    let mut s = FixedBitSet::with_capacity(n);
                    s.insert(v);
                    s
                })
                .collect(),
            black: (0..n).map(|v| g.neighbors(v).clone()).collect(),
            red: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.alive.count_ones(..)
    }

    pub fn classes(&self) -> impl Iterator<Item = usize> + '_ {
        self.alive.ones()
    }

    pub fn members(&self, slot: usize) -> Vec<usize> {
        self.members[slot].ones().collect()
    }

    /// Dot-joined sorted labels of the class in `slot`.
    pub fn class_name(&self, slot: usize) -> String {
        let mut names: Vec<&str> = self.members[slot].ones().map(|v| self.labels[v].as_str()).collect();
        names.sort_unstable();
        names.join(".")
    }

    pub fn find_class(&self, name: &str) -> Option<usize> {
        self.classes().find(|&s| self.class_name(s) == name)
    }

    pub fn is_black(&self, u: usize, v: usize) -> bool {
        self.black[u].contains(v)
    }

    pub fn is_red(&self, u: usize, v: usize) -> bool {
        self.red[u].contains(v)
    }

    pub fn red_degree(&self, v: usize) -> usize {
        self.red[v].count_ones(..)
    }

    pub fn red_edges(&self) -> Vec<(usize, usize)> {
        self.classes().flat_map(|u| self.red[u].ones().filter(move |&v| u < v).map(move |v| (u, v))).collect()
    }

    pub fn max_red_degree(&self) -> usize {
        self.classes().map(|v| self.red_degree(v)).max().unwrap_or(0)
    }

    /// Black and red relations are disjoint, symmetric, irreflexive and
    /// confined to live classes, and the classes are disjoint.
    pub fn is_consistent(&self) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.labels.len());
        for u in self.classes() {
            if self.members[u].is_clear() || !seen.is_disjoint(&self.members[u]) {
                return false;
            }
            seen.union_with(&self.members[u]);
            if self.black[u].contains(u) || self.red[u].contains(u) || !self.black[u].is_disjoint(&self.red[u]) {
                return false;
            }
            let sym = |rel: &[FixedBitSet]| rel[u].ones().all(|v| self.alive.contains(v) && rel[v].contains(u));
            if !sym(&self.black) || !sym(&self.red) {
                return false;
            }
        }
        true
    }

    /// Merges classes `u` and `v` into the smaller slot.
    pub fn contract(&self, u: usize, v: usize) -> Result<Trigraph> {
        let mut t = self.clone();
        t.contract_in_place(u, v)?;
        Ok(t)
    }

    pub fn contract_in_place(&mut self, u: usize, v: usize) -> Result<usize> {
        if u == v || !self.alive.contains(u) || !self.alive.contains(v) {
            return Err(Error::InvalidSequence(format!("cannot merge slots {u} and {v}")));
        }
        let (w, x) = if u < v { (u, v) } else { (v, u) };
        let mut black = self.black[w].clone();
        black.intersect_with(&self.black[x]);
        let mut touched = self.black[w].clone();
        touched.union_with(&self.black[x]);
        touched.union_with(&self.red[w]);
        touched.union_with(&self.red[x]);
        touched.set(w, false);
        touched.set(x, false);
        black.set(w, false);
        black.set(x, false);
        let mut red = touched.clone();
        red.difference_with(&black);
        for z in touched.ones() {
            self.black[z].set(x, false);
            self.red[z].set(x, false);
            self.black[z].set(w, black.contains(z));
            self.red[z].set(w, red.contains(z));
        }
        self.black[w] = black;
        self.red[w] = red;
        self.black[x].clear();
        self.red[x].clear();
        let moved = self.members[x].clone();
        self.members[w].union_with(&moved);
        self.members[x].clear();
        self.alive.set(x, false);
        Ok(w)
    }

    /// Canonical key of the partition, which determines the trigraph.
    fn partition_key(&self) -> Vec<Vec<usize>> {
        let mut key: Vec<Vec<usize>> = self.classes().map(|s| self.members(s)).collect();
        key.sort_unstable();
        key
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ContractionSequence {
    /// Merges as pairs of class names.
    pub steps: Vec<(String, String)>,
}

impl ContractionSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for (ln, line) in content_lines(text) {
            let (u, v) = line
                .split_once('+')
                .ok_or_else(|| parse_err(ln, format!("expected u+v, got {line:?}")))?;
            let (u, v) = (u.trim(), v.trim());
            if u.is_empty() || v.is_empty() || v.contains('+') {
                return Err(parse_err(ln, format!("expected u+v, got {line:?}")));
            }
            steps.push((u.to_string(), v.to_string()));
        }
        Ok(ContractionSequence { steps })
    }

    pub fn to_text(&self) -> String {
        self.steps.iter().map(|(u, v)| format!("{u}+{v}\n")).collect()
    }

    /// Trigraphs after each step, starting with `g` itself.
    pub fn replay(&self, g: &Graph) -> Result<Vec<Trigraph>> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        self.walk(g, |t| out.push(t.clone()))?;
        Ok(out)
    }

    /// Applies the steps, calling `visit` on every trigraph including the
    /// first; returns the final one.
    pub fn walk(&self, g: &Graph, mut visit: impl FnMut(&Trigraph)) -> Result<Trigraph> {
        let mut t = Trigraph::from_graph(g);
        let mut names: HashMap<String, usize> = (0..g.n()).map(|v| (g.label(v).to_string(), v)).collect();
        visit(&t);
        for (i, (u, v)) in self.steps.iter().enumerate() {
            let find = |name: &str| {
                names
                    .get(name)
                    .copied()
                    .ok_or_else(|| Error::InvalidSequence(format!("step {}: no class {name}", i + 1)))
            };
            let (a, b) = (find(u)?, find(v)?);
            if a == b {
                return Err(Error::InvalidSequence(format!("step {}: {u} and {v} coincide", i + 1)));
            }
            names.remove(u);
            names.remove(v);
            let w = t.contract_in_place(a, b)?;
            names.insert(t.class_name(w), w);
            visit(&t);
        }
        Ok(t)
    }
}

/// The largest red degree over all trigraphs of a complete sequence.
pub fn verify_sequence(g: &Graph, s: &ContractionSequence) -> Result<usize> {
    let mut d = 0;
    let last = s.walk(g, |t| d = d.max(t.max_red_degree()))?;
    if last.vertex_count() > 1 {
        return Err(Error::InvalidSequence(format!(
            "sequence ends with {} vertices",
            last.vertex_count()
        )));
    }
    Ok(d)
}

/// Exact twin-width with a witnessing sequence. Without a finite budget the
/// graph may have at most [`EXACT_DEFAULT_LIMIT`] vertices.
pub fn exact_twinwidth(g: &Graph, budget: &Budget) -> Result<(usize, ContractionSequence)> {
    if budget.is_unlimited() && g.n() > EXACT_DEFAULT_LIMIT {
        return Err(Error::Precondition(format!(
            "{} vertices exceed the exact limit {EXACT_DEFAULT_LIMIT} without a budget",
            g.n()
        )));
    }
    let mut rank: Vec<usize> = (0..g.n()).collect();
    rank.sort_by(|&a, &b| g.label(a).cmp(g.label(b)));
    let mut order_key = vec![0; g.n()];
    for (i, &v) in rank.iter().enumerate() {
        order_key[v] = i;
    }
    let mut meter = budget.meter();
    let start = Trigraph::from_graph(&g.clone());
    for d in 0.. {
        let mut search = ExactSearch { d, order_key: &order_key, failed: HashSet::new(), meter: &mut meter };
        let mut path = Vec::new();
        if search.dfs(&start, &mut path)? {
            return Ok((d, ContractionSequence { steps: path }));
        }
    }
    unreachable!()
}

struct ExactSearch<'a> {
    d: usize,
    order_key: &'a [usize],
    failed: HashSet<Vec<Vec<usize>>>,
    meter: &'a mut Meter,
}

impl ExactSearch<'_> {
    fn dfs(&mut self, t: &Trigraph, path: &mut Vec<(String, String)>) -> Result<bool> {
        self.meter.tick()?;
        if t.vertex_count() <= 1 {
            return Ok(true);
        }
        let key = t.partition_key();
        if self.failed.contains(&key) {
            return Ok(false);
        }
        let mut classes: Vec<usize> = t.classes().collect();
        let min_key = |s: usize| t.members[s].ones().map(|v| self.order_key[v]).min().unwrap_or(usize::MAX);
        classes.sort_by_key(|&s| min_key(s));
        for (i, &u) in classes.iter().enumerate() {
            for &v in &classes[i + 1..] {
                let next = t.contract(u, v)?;
                if next.max_red_degree() > self.d {
                    continue;
                }
                path.push((t.class_name(u), t.class_name(v)));
                if self.dfs(&next, path)? {
                    return Ok(true);
                }
                path.pop();
            }
        }
        self.failed.insert(key);
        Ok(false)
    }
}

/// Merges neighbours along `ord` level by level until one class is left.
/// Returns the sequence and its witnessed red degree.
pub fn dyadic_contract(g: &Graph, ord: &VertexOrder) -> Result<(ContractionSequence, usize)> {
    if ord.len() != g.n() {
        return Err(Error::SizeMismatch(format!("order of {} for {} vertices", ord.len(), g.n())));
    }
    let mut t = Trigraph::from_graph(g);
    let mut level: Vec<usize> = ord.perm().to_vec();
    let mut steps = Vec::new();
    let mut d = 0;
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        for pair in level.chunks(2) {
            if let [u, v] = *pair {
                steps.push((t.class_name(u), t.class_name(v)));
                next.push(t.contract_in_place(u, v)?);
                d = d.max(t.max_red_degree());
            } else {
                next.push(pair[0]);
            }
        }
        level = next;
    }
    Ok((ContractionSequence { steps }, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::fig1;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use crate::generators::fig1_sequence;

    /// Red degree of the trigraph defined by a partition, computed from
    /// homogeneity of class pairs.
    fn partition_red_degree(g: &Graph, parts: &[Vec<usize>]) -> usize {
        let mut best = 0;
        for (i, x) in parts.iter().enumerate() {
            let mut deg = 0;
            for (j, y) in parts.iter().enumerate() {
                if i == j {
                    continue;
                }
                let edges = x.iter().flat_map(|&a| y.iter().map(move |&b| (a, b)));
                let count = edges.clone().filter(|&(a, b)| g.adjacent(a, b)).count();
                if count > 0 && count < x.len() * y.len() {
                    deg += 1;
                }
            }
            best = best.max(deg);
        }
        best
    }

    fn brute_twinwidth(g: &Graph, parts: Vec<Vec<usize>>) -> usize {
        let here = partition_red_degree(g, &parts);
        if parts.len() <= 1 {
            return here;
        }
        let mut best = usize::MAX;
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                let mut next: Vec<Vec<usize>> =
                    parts.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, p)| p.clone()).collect();
                next.push([parts[i].clone(), parts[j].clone()].concat());
                best = best.min(brute_twinwidth(g, next));
            }
        }
        here.max(best)
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        crate::graph::tests::random_graph(n, p, rng.gen())
    }

    #[test]
    fn fig1_first_step() {
        let g = fig1();
        let t = Trigraph::from_graph(&g);
        let (e, f) = (g.index_of("e").unwrap(), g.index_of("f").unwrap());
        let t = t.contract(e, f).unwrap();
        let w = t.find_class("e.f").unwrap();
        let mut reds: Vec<String> = t.red[w].ones().map(|z| t.class_name(z)).collect();
        reds.sort();
        assert_eq!(reds, vec!["a", "d"]);
        assert_eq!(t.red_degree(w), 2);
        assert_eq!(t.red_edges().len(), 2);
    }

    #[test]
    fn fig1_sequence_is_a_2_sequence() {
        let g = fig1();
        let s = fig1_sequence();
        assert_eq!(verify_sequence(&g, &s).unwrap(), 2);
        let states = s.replay(&g).unwrap();
        assert_eq!(states[3].max_red_degree(), 2);
        assert!(states.iter().all(Trigraph::is_consistent));
        assert_eq!(ContractionSequence::parse(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn twins_and_k2() {
        let g = Graph::from_edges(["a", "b", "c"], &[(0, 2), (1, 2)]).unwrap();
        let t = Trigraph::from_graph(&g).contract(0, 1).unwrap();
        assert_eq!(t.max_red_degree(), 0);
        let k2 = Graph::from_edges(["a", "b"], &[(0, 1)]).unwrap();
        let t = Trigraph::from_graph(&k2).contract(0, 1).unwrap();
        assert_eq!(t.vertex_count(), 1);
        assert!(t.black[0].is_clear() && t.red[0].is_clear());
        assert!(Trigraph::from_graph(&k2).contract(0, 0).is_err());
    }

    #[test]
    fn star_red_degree_matches_recount() {
        let g = Graph::from_edges(
            ["c", "l1", "l2", "l3", "l4", "l5"],
            &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)],
        )
        .unwrap();
        let t = Trigraph::from_graph(&g).contract(1, 2).unwrap().contract(0, 3).unwrap();
        let parts: Vec<Vec<usize>> = t.classes().map(|s| t.members(s)).collect();
        assert_eq!(t.max_red_degree(), partition_red_degree(&g, &parts));
    }

    #[test]
    fn verify_rejects_bad_sequences() {
        let g = fig1();
        assert!(verify_sequence(&g, &ContractionSequence::parse("e+f\n").unwrap()).is_err());
        assert!(verify_sequence(&g, &ContractionSequence::parse("e+z\n").unwrap()).is_err());
        assert!(verify_sequence(&g, &ContractionSequence::parse("e+f\ne.f+e.f\n").unwrap()).is_err());
        assert!(ContractionSequence::parse("e f\n").is_err());
        let k1 = Graph::with_prefix("v", 1);
        assert_eq!(verify_sequence(&k1, &ContractionSequence::default()).unwrap(), 0);
    }

    #[test]
    fn exact_small_examples() {
        let k1 = Graph::with_prefix("v", 1);
        assert_eq!(exact_twinwidth(&k1, &Budget::unlimited()).unwrap().0, 0);
        let p4 = Graph::from_edges(["a", "b", "c", "d"], &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let (d, s) = exact_twinwidth(&p4, &Budget::unlimited()).unwrap();
        assert_eq!(d, brute_twinwidth(&p4, (0..4).map(|v| vec![v]).collect()));
        assert_eq!(verify_sequence(&p4, &s).unwrap(), d);
        let g = fig1();
        let (d, s) = exact_twinwidth(&g, &Budget::unlimited()).unwrap();
        assert_eq!(d, 2);
        assert_eq!(verify_sequence(&g, &s).unwrap(), 2);
        assert_eq!(d, brute_twinwidth(&g, (0..7).map(|v| vec![v]).collect()));
    }

    #[test]
    fn exact_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=6 {
            for _ in 0..4 {
                let g = random_graph(&mut rng, n, 0.5);
                let (d, s) = exact_twinwidth(&g, &Budget::unlimited()).unwrap();
                assert_eq!(verify_sequence(&g, &s).unwrap(), d);
                assert_eq!(d, brute_twinwidth(&g, (0..n).map(|v| vec![v]).collect()));
            }
        }
    }

    #[test]
    fn exact_limits() {
        let g = Graph::with_prefix("v", 11);
        assert!(matches!(exact_twinwidth(&g, &Budget::unlimited()), Err(Error::Precondition(_))));
        assert_eq!(exact_twinwidth(&g, &Budget::nodes(1_000_000)).unwrap().0, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = random_graph(&mut rng, 10, 0.5);
        assert_eq!(exact_twinwidth(&h, &Budget::nodes(5)), Err(Error::BudgetExhausted));
    }

    #[test]
    fn dyadic_examples() {
        let k1 = Graph::with_prefix("v", 1);
        let (s, d) = dyadic_contract(&k1, &VertexOrder::identity(1)).unwrap();
        assert!(s.is_empty() && d == 0);
        let mut k8 = Graph::with_prefix("v", 8);
        for u in 0..8 {
            for v in u + 1..8 {
                k8.add_edge(u, v).unwrap();
            }
        }
        let ord = VertexOrder::new(vec![5, 2, 7, 0, 1, 6, 3, 4]).unwrap();
        let (s, d) = dyadic_contract(&k8, &ord).unwrap();
        assert_eq!(d, 0);
        assert_eq!(s.len(), 7);
        let g = fig1();
        let (s, d) = dyadic_contract(&g, &VertexOrder::identity(7)).unwrap();
        assert_eq!(verify_sequence(&g, &s).unwrap(), d);
    }
}
