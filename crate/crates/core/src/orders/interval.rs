use crate::error::{Error, Result};
use crate::geometry::IntervalModel;
use crate::graph::VertexOrder;

/// Sorts vertices by left endpoint, then right endpoint, then label.
pub fn interval_lex_order(model: &IntervalModel) -> VertexOrder {
    let mut perm: Vec<usize> = (0..model.len()).collect();
    perm.sort_by(|&u, &v| {
        model.intervals[u].cmp(&model.intervals[v]).then_with(|| model.labels[u].cmp(&model.labels[v]))
    });
    VertexOrder::new(perm).expect("sorted permutation")
}

/// The smallest interval covering the left endpoints of each part.
pub fn start_intervals(model: &IntervalModel, parts: &[Vec<usize>]) -> Result<Vec<(i64, i64)>> {
    parts
        .iter()
        .enumerate()
        .map(|(i, part)| {
            let lefts = part.iter().map(|&v| model.intervals[v].0);
            match (lefts.clone().min(), lefts.max()) {
                (Some(lo), Some(hi)) => Ok((lo, hi)),
                _ => Err(Error::Precondition(format!("part {i} is empty"))),
            }
        })
        .collect()
}

/// Greedy maximal subsequence of intervals that are pairwise strictly
/// increasing (`r_a < l_b`), scanning left to right.
pub fn increasing_chain(starts: &[(i64, i64)]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for (i, s) in starts.iter().enumerate() {
        if out.last().map_or(true, |&j| starts[j].1 < s.0) {
            out.push(i);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(ivs: &[(i64, i64)]) -> IntervalModel {
        IntervalModel::unlabelled(ivs.to_vec()).unwrap()
    }

    #[test]
    fn sorts_by_left_then_right() {
        let m = model(&[(3, 4), (1, 5), (1, 2)]);
        assert_eq!(interval_lex_order(&m).perm(), &[2, 1, 0]);
    }

    #[test]
    fn identical_intervals_fall_back_to_labels() {
        let m = IntervalModel::new(vec!["b".into(), "a".into()], vec![(0, 1), (0, 1)]).unwrap();
        assert_eq!(interval_lex_order(&m).perm(), &[1, 0]);
    }

    #[test]
    fn start_intervals_cover_left_ends() {
        let m = model(&[(0, 3), (2, 2), (5, 9), (5, 6)]);
        assert_eq!(start_intervals(&m, &[vec![0], vec![0, 1], vec![2, 3]]).unwrap(), vec![(0, 0), (0, 2), (5, 5)]);
        assert!(start_intervals(&m, &[vec![]]).is_err());
    }

    #[test]
    fn shared_endpoint_is_reported_not_rejected() {
        let m = model(&[(0, 3), (2, 5), (2, 4), (6, 6)]);
        let s = start_intervals(&m, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(s, vec![(0, 2), (2, 6)]);
        assert_eq!(increasing_chain(&s), vec![0]);
    }

    #[test]
    fn chain_skips_overlaps() {
        assert_eq!(increasing_chain(&[(0, 1), (1, 2), (2, 3), (4, 4)]), vec![0, 2, 3]);
        assert!(increasing_chain(&[]).is_empty());
    }
}
