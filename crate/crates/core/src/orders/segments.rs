use std::collections::BTreeMap;

use crate::error::Result;
use crate::geometry::grid::{grid_crossings, perimeter_position, Cell};
use crate::geometry::{gamma_splitting, q, GridSpec, SegmentScene, Splitting, Q};
use crate::graph::VertexOrder;

/// A vertex order of the splitting graph together with its cell blocks.
#[derive(Debug, Clone)]
pub struct SegmentOrder {
    pub splitting: Splitting,
    pub order: VertexOrder,
    /// Block of each splitting vertex: `i * inner + j` for the cell in
    /// column `i`, row `j` of the bounding box.
    pub block: Vec<usize>,
    pub inner: usize,
    pub blocks: usize,
}

impl SegmentOrder {
    /// Edges whose blocks differ by something other than `0`, `1` or `inner`.
    pub fn off_diagonal_edges(&self) -> Vec<(usize, usize)> {
        self.splitting
            .graph
            .edges()
            .into_iter()
            .filter(|&(u, v)| {
                let d = self.block[u].abs_diff(self.block[v]);
                !(d == 0 || d == 1 || d == self.inner)
            })
            .collect()
    }

    /// Non-empty blocks, in order, as position ranges of `order`.
    pub fn block_ranges(&self) -> Vec<(usize, std::ops::Range<usize>)> {
        let mut out: Vec<(usize, std::ops::Range<usize>)> = Vec::new();
        for (pos, &v) in self.order.perm().iter().enumerate() {
            match out.last_mut() {
                Some((b, r)) if *b == self.block[v] => r.end = pos + 1,
                _ => out.push((self.block[v], pos..pos + 1)),
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
struct Contact {
    s: usize,
    d: usize,
}

/// Lists cells column by column, bottom to top; inside a cell walks the
/// boundary counter-clockwise and emits, per contact, the crossing's
/// d-vertex (if not yet listed) followed by the piece's s-vertex. Ties on the
/// boundary go to the scene's global rank.
pub fn segment_global_order(scene: &SegmentScene, grid: &GridSpec) -> Result<SegmentOrder> {
    let splitting = gamma_splitting(scene, grid)?;
    let g = &splitting.graph;
    let mut contacts: BTreeMap<Cell, Vec<(Q, usize, Contact)>> = BTreeMap::new();
    let mut loose: BTreeMap<Cell, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, s) in scene.segments.iter().enumerate() {
        let mut bounds = vec![q(0)];
        bounds.extend(grid_crossings(grid, &s.p, &s.q));
        bounds.push(q(1));
        let pieces = bounds.len() - 1;
        for k in 0..pieces {
            let sv = g.index_of(&format!("{}_s{}", s.id, k + 1))?;
            let (a, b) = (s.p.lerp(&s.q, &bounds[k]), s.p.lerp(&s.q, &bounds[k + 1]));
            let cell = grid.cell_of(&a.lerp(&b, &Q::new(1.into(), 2.into())));
            let mut touched = false;
            for (end, idx) in [(&a, k), (&b, k + 1)] {
                if idx == 0 || idx == pieces {
                    continue;
                }
                let d = g.index_of(&format!("{}_d{}", s.id, idx))?;
                let (pos, _) = perimeter_position(grid, cell, end).expect("crossing on the cell boundary");
                contacts.entry(cell).or_default().push((pos, scene.global_rank[i], Contact { s: sv, d }));
                touched = true;
            }
            if !touched {
                loose.entry(cell).or_default().push((scene.global_rank[i], sv));
            }
        }
    }
    let mut cells: Vec<Cell> = contacts.keys().chain(loose.keys()).copied().collect();
    cells.sort();
    cells.dedup();
    let (min_i, max_i) = cells.iter().map(|c| c.0).fold((i64::MAX, i64::MIN), |(a, b), x| (a.min(x), b.max(x)));
    let (min_j, max_j) = cells.iter().map(|c| c.1).fold((i64::MAX, i64::MIN), |(a, b), x| (a.min(x), b.max(x)));
    let inner = if cells.is_empty() { 1 } else { (max_j - min_j + 1) as usize };
    let outer = if cells.is_empty() { 0 } else { (max_i - min_i + 1) as usize };
    let block_of = |c: Cell| (c.0 - min_i) as usize * inner + (c.1 - min_j) as usize;
    let mut listed = vec![false; g.n()];
    let mut perm = Vec::with_capacity(g.n());
    let mut block = vec![0; g.n()];
    for &cell in &cells {
        let mut cs = contacts.remove(&cell).unwrap_or_default();
        cs.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut ls = loose.remove(&cell).unwrap_or_default();
        ls.sort();
        let items = cs.iter().flat_map(|(_, _, c)| [c.d, c.s]).chain(ls.into_iter().map(|(_, s)| s));
        for v in items {
            if !listed[v] {
                listed[v] = true;
                block[v] = block_of(cell);
                perm.push(v);
            }
        }
    }
    Ok(SegmentOrder { order: VertexOrder::new(perm)?, splitting, block, inner, blocks: outer * inner })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::random_axis_segments;
    use crate::geometry::{general_position, Point, Segment};

    fn seg(id: &str, a: (i64, i64, i64, i64), den: i64) -> Segment {
        let p = |x: i64, y: i64| Point::new(Q::new(x.into(), den.into()), Q::new(y.into(), den.into()));
        Segment::new(id, p(a.0, a.1), p(a.2, a.3)).unwrap()
    }

    #[test]
    fn single_segment_crossing_one_line() {
        let scene = SegmentScene::new(vec![seg("a", (1, 1, 3, 1), 2)]).unwrap();
        let so = segment_global_order(&scene, &GridSpec::unit()).unwrap();
        let labels: Vec<&str> = so.order.perm().iter().map(|&v| so.splitting.graph.label(v)).collect();
        assert_eq!(labels, ["a_d1", "a_s1", "a_s2"]);
        assert_eq!(so.block_ranges().len(), 2);
    }

    #[test]
    fn empty_scene_gives_empty_order() {
        let scene = SegmentScene::new(vec![]).unwrap();
        let so = segment_global_order(&scene, &GridSpec::unit()).unwrap();
        assert!(so.order.is_empty());
    }

    #[test]
    fn random_scenes_have_five_diagonal_support() {
        for seed in 0..20u64 {
            let scene = random_axis_segments(10, 2, seed).unwrap();
            let grid = general_position(&scene, &GridSpec::unit());
            let so = segment_global_order(&scene, &grid).unwrap();
            assert_eq!(so.order.len(), so.splitting.graph.n());
            assert!(so.off_diagonal_edges().is_empty(), "seed {seed}");
            let blocks: Vec<usize> = so.block_ranges().iter().map(|b| b.0).collect();
            assert!(blocks.windows(2).all(|w| w[0] < w[1]), "blocks contiguous and increasing");
        }
    }
}
