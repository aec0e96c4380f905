use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{parse_err, Error, Result};
use crate::graph::{check_label, content_lines, Graph, VertexOrder};

/// A directed path model: an oriented forest on `0..nodes` and, per graph
/// vertex, a directed path from `high` down to `low`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeModel {
    /// In-neighbours of each node. A rooted model has exactly one node with
    /// none and one in-neighbour everywhere else.
    pub parents: Vec<Vec<usize>>,
    pub labels: Vec<String>,
    /// `(high, low)` per vertex.
    pub paths: Vec<(usize, usize)>,
}

impl TreeModel {
    pub fn new(parents: Vec<Vec<usize>>, labels: Vec<String>, paths: Vec<(usize, usize)>) -> Result<Self> {
        let n = parents.len();
        if labels.len() != paths.len() {
            return Err(Error::SizeMismatch(format!("{} labels, {} paths", labels.len(), paths.len())));
        }
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            uf[x] = r;
            r
        }
        for (c, ps) in parents.iter().enumerate() {
            for &p in ps {
                if p >= n || p == c {
                    return Err(Error::InvalidModel(format!("bad parent {p} of node {c}")));
                }
                let (a, b) = (find(&mut uf, p), find(&mut uf, c));
                if a == b {
                    return Err(Error::InvalidModel("underlying graph has a cycle".into()));
                }
                uf[a] = b;
            }
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            check_label(l)?;
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidModel(format!("duplicate vertex {l}")));
            }
        }
        let tm = TreeModel { parents, labels, paths };
        for (v, &(h, l)) in tm.paths.iter().enumerate() {
            if h >= n || l >= n || tm.directed_path(h, l).is_none() {
                return Err(Error::InvalidModel(format!("no directed path from {h} to {l} for {}", tm.labels[v])));
            }
        }
        Ok(tm)
    }

    pub fn node_count(&self) -> usize {
        self.parents.len()
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.node_count()];
        for (c, ps) in self.parents.iter().enumerate() {
            for &p in ps {
                ch[p].push(c);
            }
        }
        ch
    }

    /// The unique root when the model is an out-tree.
    pub fn root(&self) -> Option<usize> {
        let roots: Vec<usize> = (0..self.node_count()).filter(|&x| self.parents[x].is_empty()).collect();
        let single_parent = self.parents.iter().all(|p| p.len() <= 1);
        (roots.len() == 1 && single_parent).then(|| roots[0])
    }

    pub fn is_rooted(&self) -> bool {
        self.root().is_some()
    }

    fn directed_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        if from == to {
            return Some(vec![from]);
        }
        for &p in &self.parents[to] {
            if let Some(mut path) = self.directed_path(from, p) {
                path.push(to);
                return Some(path);
            }
        }
        None
    }

    /// Nodes of the path of vertex `v`, from high to low.
    pub fn path_nodes(&self, v: usize) -> Vec<usize> {
        let (h, l) = self.paths[v];
        self.directed_path(h, l).expect("validated on construction")
    }

    /// `V_p` for every node: vertices whose path contains it.
    pub fn node_sets(&self) -> Vec<BTreeSet<usize>> {
        let mut sets = vec![BTreeSet::new(); self.node_count()];
        for v in 0..self.paths.len() {
            for x in self.path_nodes(v) {
                sets[x].insert(v);
            }
        }
        sets
    }

    /// The intersection graph of the paths.
    pub fn graph(&self) -> Graph {
        let mut g = Graph::new(self.labels.clone()).expect("labels validated");
        for set in self.node_sets() {
            let vs: Vec<usize> = set.into_iter().collect();
            for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    g.add_edge(u, v).expect("distinct vertices");
                }
            }
        }
        g
    }

    pub fn depths(&self) -> Result<Vec<usize>> {
        let root = self.root().ok_or_else(|| Error::InvalidModel("model is not rooted".into()))?;
        let ch = self.children();
        let mut depth = vec![0; self.node_count()];
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &c in &ch[x] {
                depth[c] = depth[x] + 1;
                stack.push(c);
            }
        }
        Ok(depth)
    }

    /// Format: `tree <nodes>`, a line of parents per node (`-` for none,
    /// comma separated when several), then `path <vertex> <high> <low>`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty document"))?;
        let n: usize = header
            .strip_prefix("tree")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| parse_err(ln, "expected \"tree <nodes>\""))?;
        let mut parents = Vec::new();
        if n > 0 {
            let (ln, line) = lines.next().ok_or_else(|| parse_err(ln + 1, "missing parent list"))?;
            for tok in line.split_whitespace() {
                if tok == "-" {
                    parents.push(Vec::new());
                    continue;
                }
                let ps = tok
                    .split(',')
                    .map(|p| p.parse::<usize>().map_err(|_| parse_err(ln, format!("bad parent {p:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                parents.push(ps);
            }
            if parents.len() != n {
                return Err(parse_err(ln, format!("expected {n} parents, found {}", parents.len())));
            }
        }
        let mut labels = Vec::new();
        let mut paths = Vec::new();
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 4 || toks[0] != "path" {
                return Err(parse_err(ln, "expected \"path <vertex> <high> <low>\""));
            }
            let node = |t: &str| t.parse::<usize>().map_err(|_| parse_err(ln, format!("bad node {t:?}")));
            labels.push(toks[1].to_string());
            paths.push((node(toks[2])?, node(toks[3])?));
        }
        TreeModel::new(parents, labels, paths)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("tree {}\n", self.node_count());
        if self.node_count() > 0 {
            let toks: Vec<String> = self
                .parents
                .iter()
                .map(|ps| {
                    if ps.is_empty() {
                        "-".to_string()
                    } else {
                        ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
                    }
                })
                .collect();
            out += &toks.join(" ");
            out.push('\n');
        }
        for (l, (h, lo)) in self.labels.iter().zip(&self.paths) {
            out += &format!("path {l} {h} {lo}\n");
        }
        out
    }

    /// Contracts tree edges whose endpoint vertex sets are nested until none
    /// remain. The represented graph is unchanged.
    pub fn minimize(&self) -> Result<TreeModel> {
        let root = self.root().ok_or_else(|| Error::InvalidModel("model is not rooted".into()))?;
        let mut parent: Vec<Option<usize>> = self.parents.iter().map(|p| p.first().copied()).collect();
        let mut alive = vec![true; self.node_count()];
        let mut paths = self.paths.clone();
        let mut tm = self.clone();
        loop {
            let sets = tm.node_sets();
            let nested = (0..tm.node_count()).find(|&c| {
                alive[c] && c != root && {
                    let p = parent[c].expect("non-root");
                    sets[c].is_subset(&sets[p]) || sets[p].is_subset(&sets[c])
                }
            });
            let Some(c) = nested else { break };
            let p = parent[c].expect("non-root");
            alive[c] = false;
            for q in parent.iter_mut() {
                if *q == Some(c) {
                    *q = Some(p);
                }
            }
            for (h, l) in paths.iter_mut() {
                if *h == c {
                    *h = p;
                }
                if *l == c {
                    *l = p;
                }
            }
            tm = TreeModel {
                parents: parent.iter().map(|q| q.iter().copied().collect()).collect(),
                labels: self.labels.clone(),
                paths: paths.clone(),
            };
        }
        let renumber: Vec<Option<usize>> = {
            let mut next = 0;
            alive
                .iter()
                .map(|&a| {
                    a.then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        };
        let parents = (0..self.node_count())
            .filter(|&x| alive[x])
            .map(|x| parent[x].map(|p| renumber[p].expect("alive parent")).into_iter().collect())
            .collect();
        let paths = paths.iter().map(|&(h, l)| (renumber[h].expect("alive"), renumber[l].expect("alive"))).collect();
        TreeModel::new(parents, self.labels.clone(), paths)
    }
}

/// Minimality witnesses of a non-root node: a vertex whose path starts at
/// the node, and a vertex whose path contains the parent but not the node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeWitness {
    pub node: usize,
    pub starts_here: Option<usize>,
    pub leaves_parent: Option<usize>,
}

impl NodeWitness {
    pub fn is_complete(&self) -> bool {
        self.starts_here.is_some() && self.leaves_parent.is_some()
    }
}

/// One entry per non-root node of a rooted model; an incomplete entry is a
/// minimality defect.
pub fn minimality_check(tm: &TreeModel) -> Result<Vec<NodeWitness>> {
    let root = tm.root().ok_or_else(|| Error::InvalidModel("model is not rooted".into()))?;
    let sets = tm.node_sets();
    Ok((0..tm.node_count())
        .filter(|&x| x != root)
        .map(|x| {
            let p = tm.parents[x][0];
            NodeWitness {
                node: x,
                starts_here: (0..tm.paths.len()).find(|&v| tm.paths[v].0 == x),
                leaves_parent: sets[p].iter().copied().find(|v| !sets[x].contains(v)),
            }
        })
        .collect())
}

pub fn is_minimal(tm: &TreeModel) -> Result<bool> {
    Ok(minimality_check(tm)?.iter().all(NodeWitness::is_complete))
}

/// Orders vertices by the post-order position of their low node, then by
/// the depth of their high node, then by label. Siblings are explored so
/// that the shallowest proper-ancestor high in the symmetric difference of
/// their subtrees comes first; node index breaks remaining ties.
pub fn rdp_lex_dfs_order(tm: &TreeModel, force: bool) -> Result<VertexOrder> {
    let root = tm.root().ok_or_else(|| Error::InvalidModel("model is not rooted".into()))?;
    if !force && !is_minimal(tm)? {
        return Err(Error::InvalidModel("model is not minimal".into()));
    }
    let depth = tm.depths()?;
    let max_depth = depth.iter().copied().max().unwrap_or(0);
    let mut key = vec![vec![false; max_depth + 1]; tm.node_count()];
    for v in 0..tm.paths.len() {
        let h = tm.paths[v].0;
        for &x in &tm.path_nodes(v)[1..] {
            key[x][depth[h]] = true;
        }
    }
    let mut ch = tm.children();
    for c in ch.iter_mut() {
        c.sort_by(|&x, &y| key[y].cmp(&key[x]).then(x.cmp(&y)));
    }
    let mut rank = vec![0; tm.node_count()];
    let mut next = 0;
    let mut stack = vec![(root, 0usize)];
    while let Some((x, i)) = stack.pop() {
        if i < ch[x].len() {
            stack.push((x, i + 1));
            stack.push((ch[x][i], 0));
        } else {
            rank[x] = next;
            next += 1;
        }
    }
    let mut perm: Vec<usize> = (0..tm.paths.len()).collect();
    perm.sort_by(|&u, &v| {
        let (hu, lu) = tm.paths[u];
        let (hv, lv) = tm.paths[v];
        (rank[lu], depth[hu]).cmp(&(rank[lv], depth[hv])).then_with(|| tm.labels[u].cmp(&tm.labels[v]))
    });
    VertexOrder::new(perm)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RdpReport {
    /// `(x, y, z)`: children `y`, `z` of `x` whose vertex groups interleave.
    pub obs1: Vec<(usize, usize, usize)>,
    /// `(u, v, w)` with `u ≺ v ≺ w` breaking the common-ancestor nesting.
    pub obs2: Vec<(usize, usize, usize)>,
}

impl RdpReport {
    pub fn is_clean(&self) -> bool {
        self.obs1.is_empty() && self.obs2.is_empty()
    }
}

/// Checks both no-zigzag properties of an order over all applicable triples.
pub fn verify_rdp_order(tm: &TreeModel, ord: &VertexOrder) -> Result<RdpReport> {
    let depth = tm.depths()?;
    let parent: Vec<Option<usize>> = tm.parents.iter().map(|p| p.first().copied()).collect();
    let is_anc = |a: usize, mut x: usize| {
        while depth[x] > depth[a] {
            x = parent[x].expect("non-root");
        }
        x == a
    };
    let lca = |mut a: usize, mut b: usize| {
        while a != b {
            if depth[a] >= depth[b] {
                a = parent[a].expect("non-root");
            } else {
                b = parent[b].expect("non-root");
            }
        }
        a
    };
    let mut report = RdpReport::default();
    let ch = tm.children();
    for (x, kids) in ch.iter().enumerate() {
        let spans: Vec<Option<(usize, usize)>> = kids
            .iter()
            .map(|&y| {
                let pos = (0..tm.paths.len()).filter(|&v| is_anc(y, tm.paths[v].1)).map(|v| ord.position(v));
                pos.clone().min().zip(pos.max())
            })
            .collect();
        for i in 0..kids.len() {
            for j in i + 1..kids.len() {
                if let (Some(a), Some(b)) = (spans[i], spans[j]) {
                    if !(a.1 < b.0 || b.1 < a.0) {
                        report.obs1.push((x, kids[i], kids[j]));
                    }
                }
            }
        }
    }
    let lows: Vec<usize> = ord.perm().iter().map(|&v| tm.paths[v].1).collect();
    let n = lows.len();
    for a in 0..n {
        for c in a + 2..n {
            let uw = lca(lows[a], lows[c]);
            for b in a + 1..c {
                if !is_anc(uw, lca(lows[b], lows[c])) || !is_anc(uw, lca(lows[a], lows[b])) {
                    report.obs2.push((ord.vertex_at(a), ord.vertex_at(b), ord.vertex_at(c)));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::random_rooted_path_model;
    use crate::geometry::{interval_graph, IntervalModel};
    use crate::orders::interval_lex_order;

    fn path_tree(nodes: usize, paths: &[(usize, usize)]) -> TreeModel {
        let parents = (0..nodes).map(|x| if x == 0 { vec![] } else { vec![x - 1] }).collect();
        let labels = (1..=paths.len()).map(|i| format!("v{i}")).collect();
        TreeModel::new(parents, labels, paths.to_vec()).unwrap()
    }

    #[test]
    fn parse_round_trip_and_graph() {
        let text = "tree 4\n- 0 0 1\npath x 0 3\npath y 2 2\npath z 1 3\n";
        let tm = TreeModel::parse(text).unwrap();
        assert_eq!(TreeModel::parse(&tm.to_text()).unwrap(), tm);
        let g = tm.graph();
        assert!(g.adjacent(0, 2) && !g.adjacent(0, 1) && !g.adjacent(1, 2));
        assert!(TreeModel::parse("tree 2\n- 0\npath x 1 0\n").is_err());
        assert!(TreeModel::parse("tree 2\n1 0\n").is_err());
    }

    #[test]
    fn multi_root_star_is_not_rooted() {
        let tm = TreeModel::parse("tree 3\n- 0,2 -\npath a 0 0\npath b 2 2\npath x 0 1\n").unwrap();
        assert!(!tm.is_rooted());
        assert!(rdp_lex_dfs_order(&tm, true).is_err());
        assert!(minimality_check(&tm).is_err());
    }

    #[test]
    fn planted_redundant_node_is_a_defect() {
        let tm = path_tree(3, &[(0, 2), (0, 0), (2, 2)]);
        let w = minimality_check(&tm).unwrap();
        assert!(!w[0].is_complete());
        assert!(rdp_lex_dfs_order(&tm, false).is_err());
        assert!(rdp_lex_dfs_order(&tm, true).is_ok());
        let m = tm.minimize().unwrap();
        assert!(is_minimal(&m).unwrap());
        assert!(m.graph().same_as(&tm.graph()));
    }

    #[test]
    fn single_node_tree_is_vacuous() {
        let tm = path_tree(1, &[(0, 0), (0, 0)]);
        assert!(minimality_check(&tm).unwrap().is_empty());
        assert_eq!(rdp_lex_dfs_order(&tm, false).unwrap().perm(), &[0, 1]);
    }

    #[test]
    fn path_tree_matches_interval_order() {
        for seed in 0..30u64 {
            let tm = random_rooted_path_model(12, 10, seed, true).minimize().unwrap();
            let depth = tm.depths().unwrap();
            let max = *depth.iter().max().unwrap() as i64;
            let ivs = tm.paths.iter().map(|&(h, l)| (max - depth[l] as i64, max - depth[h] as i64)).collect();
            let im = IntervalModel::new(tm.labels.clone(), ivs).unwrap();
            assert!(interval_graph(&im).same_as(&tm.graph()));
            let rdp = rdp_lex_dfs_order(&tm, false).unwrap();
            let mut expect: Vec<usize> = interval_lex_order(&im).perm().to_vec();
            expect.sort_by(|&u, &v| {
                let (a, b) = (im.intervals[u], im.intervals[v]);
                a.0.cmp(&b.0).then(b.1.cmp(&a.1)).then(im.labels[u].cmp(&im.labels[v]))
            });
            assert_eq!(rdp.perm(), &expect[..]);
        }
    }

    #[test]
    fn random_models_satisfy_observations() {
        for seed in 0..20u64 {
            let tm = random_rooted_path_model(20, 14, seed, false).minimize().unwrap();
            let w = minimality_check(&tm).unwrap();
            assert!(w.iter().all(NodeWitness::is_complete));
            let ord = rdp_lex_dfs_order(&tm, false).unwrap();
            assert!(verify_rdp_order(&tm, &ord).unwrap().is_clean(), "seed {seed}");
        }
    }

    #[test]
    fn reversed_order_is_flagged() {
        let mut flagged = 0;
        for seed in 0..20u64 {
            let tm = random_rooted_path_model(20, 14, seed, false).minimize().unwrap();
            let ord = rdp_lex_dfs_order(&tm, false).unwrap();
            let n = ord.len();
            let mut perm = ord.perm().to_vec();
            for i in (0..n).step_by(2) {
                if i + 1 < n {
                    perm.swap(i, (i * 7 + 3) % n);
                }
            }
            if !verify_rdp_order(&tm, &VertexOrder::new(perm).unwrap()).unwrap().is_clean() {
                flagged += 1;
            }
        }
        assert!(flagged > 0);
    }

    #[test]
    fn fewer_than_three_vertices_pass() {
        let tm = path_tree(2, &[(0, 1), (1, 1)]);
        assert!(verify_rdp_order(&tm, &VertexOrder::new(vec![1, 0]).unwrap()).unwrap().obs2.is_empty());
    }
}
