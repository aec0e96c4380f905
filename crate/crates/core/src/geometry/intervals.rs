use crate::error::{parse_err, Error, Result};
use crate::graph::{check_label, content_lines, Graph};

/// Closed integer intervals `[l, r]`, one per labelled vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalModel {
    pub labels: Vec<String>,
    pub intervals: Vec<(i64, i64)>,
}

impl IntervalModel {
    pub fn new(labels: Vec<String>, intervals: Vec<(i64, i64)>) -> Result<Self> {
        if labels.len() != intervals.len() {
            return Err(Error::SizeMismatch(format!("{} labels, {} intervals", labels.len(), intervals.len())));
        }
        for (l, &(a, b)) in labels.iter().zip(&intervals) {
            check_label(l)?;
            if a > b {
                return Err(Error::InvalidModel(format!("interval of {l} has l > r")));
            }
        }
        let mut sorted = labels.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidModel("duplicate label".into()));
        }
        Ok(IntervalModel { labels, intervals })
    }

    /// Vertices labelled `v1..vn`.
    pub fn unlabelled(intervals: Vec<(i64, i64)>) -> Result<Self> {
        IntervalModel::new((1..=intervals.len()).map(|i| format!("v{i}")).collect(), intervals)
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty document"))?;
        let n: usize = header
            .strip_prefix("intervals")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| parse_err(ln, "expected \"intervals <n>\""))?;
        let mut labels = Vec::new();
        let mut ivs = Vec::new();
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |t: &str| t.parse::<i64>().map_err(|_| parse_err(ln, format!("bad endpoint {t:?}")));
            if toks.len() != 3 {
                return Err(parse_err(ln, "expected \"label l r\""));
            }
            let (l, r) = (num(toks[1])?, num(toks[2])?);
            if l > r {
                return Err(parse_err(ln, "interval with l > r"));
            }
            labels.push(toks[0].to_string());
            ivs.push((l, r));
        }
        if ivs.len() != n {
            return Err(parse_err(ln, format!("header announces {n} intervals, found {}", ivs.len())));
        }
        IntervalModel::new(labels, ivs)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("intervals {}\n", self.len());
        for (l, (a, b)) in self.labels.iter().zip(&self.intervals) {
            out += &format!("{l} {a} {b}\n");
        }
        out
    }

    pub fn intersects(&self, u: usize, v: usize) -> bool {
        let (a, b) = (self.intervals[u], self.intervals[v]);
        a.0 <= b.1 && b.0 <= a.1
    }

    /// For every pair of left endpoints `l_u < l_w` some right endpoint lies
    /// in `[l_u, l_w)`.
    pub fn has_separating_ends(&self) -> bool {
        let mut lefts: Vec<i64> = self.intervals.iter().map(|iv| iv.0).collect();
        lefts.sort_unstable();
        lefts.dedup();
        lefts.windows(2).all(|w| self.intervals.iter().any(|iv| w[0] <= iv.1 && iv.1 < w[1]))
    }
}

pub fn interval_graph(m: &IntervalModel) -> Graph {
    let mut g = Graph::new(m.labels.clone()).expect("labels validated by the model");
    let mut idx: Vec<usize> = (0..m.len()).collect();
    idx.sort_by_key(|&v| m.intervals[v]);
    for (x, &u) in idx.iter().enumerate() {
        for &v in &idx[x + 1..] {
            if m.intervals[v].0 > m.intervals[u].1 {
                break;
            }
            g.add_edge(u, v).expect("distinct vertices");
        }
    }
    g
}

/// Moves left endpoints rightwards while the graph is unchanged: to the next
/// larger left endpoint when no right endpoint lies before it, and for the
/// largest left endpoints up to the nearest right endpoint of the interval
/// or of a neighbour.
pub fn minimize_representation(m: &IntervalModel) -> IntervalModel {
    let mut ivs = m.intervals.clone();
    let n = ivs.len();
    loop {
        let mut changed = false;
        for u in 0..n {
            let lu = ivs[u].0;
            let next_left = ivs.iter().map(|iv| iv.0).filter(|&l| l > lu).min();
            let target = match next_left {
                Some(nl) => {
                    if ivs.iter().any(|iv| lu <= iv.1 && iv.1 < nl) {
                        continue;
                    }
                    nl
                }
                None => (0..n)
                    .filter(|&v| v != u && ivs[v].0 <= ivs[u].1 && ivs[u].0 <= ivs[v].1)
                    .map(|v| ivs[v].1)
                    .chain([ivs[u].1])
                    .min()
                    .expect("chain is non-empty"),
            };
            if target > lu {
                ivs[u].0 = target;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    IntervalModel { labels: m.labels.clone(), intervals: ivs }
}
