use crate::graph::{Graph, VertexOrder};

/// All `a < b < c < d` along `ord` with `ac` and `bd` edges but `ad` not.
pub fn order_claim_violations(g: &Graph, ord: &VertexOrder) -> Vec<[usize; 4]> {
    let n = ord.len();
    let at = |i: usize| ord.vertex_at(i);
    let mut out = Vec::new();
    for a in 0..n {
        for c in a + 2..n {
            if !g.adjacent(at(a), at(c)) {
                continue;
            }
            for d in c + 1..n {
                if g.adjacent(at(a), at(d)) {
                    continue;
                }
                for b in a + 1..c {
                    if g.adjacent(at(b), at(d)) {
                        out.push([at(a), at(b), at(c), at(d)]);
                    }
                }
            }
        }
    }
    out
}

fn double_x(g: &Graph, ord: &VertexOrder, limit: Option<usize>) -> Vec<[usize; 6]> {
    let n = ord.len();
    let at = |i: usize| ord.vertex_at(i);
    let mut out = Vec::new();
    for a in 1..n {
        for c in a + 2..n {
            if !g.adjacent(at(a), at(c)) {
                continue;
            }
            for d in c + 1..n {
                if g.adjacent(at(a), at(d)) {
                    continue;
                }
                for b in a + 1..c {
                    if !g.adjacent(at(b), at(d)) {
                        continue;
                    }
                    for b2 in 0..a {
                        if !g.adjacent(at(d), at(b2)) {
                            continue;
                        }
                        for c2 in d + 1..n {
                            if g.adjacent(at(a), at(c2)) {
                                out.push([b2, a, b, c, d, c2].map(at));
                                if limit.is_some_and(|l| out.len() >= l) {
                                    return out;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// All `b' < a < b < c < d < c'` along `ord` with `ac`, `bd`, `ac'`, `db'`
/// edges but `ad` not.
pub fn double_x_violations(g: &Graph, ord: &VertexOrder) -> Vec<[usize; 6]> {
    double_x(g, ord, None)
}

pub fn first_double_x_violation(g: &Graph, ord: &VertexOrder) -> Option<[usize; 6]> {
    double_x(g, ord, Some(1)).pop()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        // the 4-cycle a-b-c-d-a
        let c4 = Graph::from_edges(["a", "b", "c", "d"], &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(order_claim_violations(&c4, &VertexOrder::identity(4)).is_empty());
        let adversarial = VertexOrder::new(vec![0, 1, 3, 2]).unwrap();
        assert_eq!(order_claim_violations(&c4, &adversarial), vec![[0, 1, 3, 2]]);
        let tiny = Graph::from_edges(["a", "b", "c"], &[(0, 2)]).unwrap();
        assert!(order_claim_violations(&tiny, &VertexOrder::identity(3)).is_empty());
        assert!(double_x_violations(&Graph::with_prefix("v", 5), &VertexOrder::identity(5)).is_empty());
    }

    fn brute_order_claim(g: &Graph, n: usize) -> usize {
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if g.adjacent(a, c) && g.adjacent(b, d) && !g.adjacent(a, d) {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn planted_double_x_is_found() {
        // b' a b c d c'
        let edges = [(1, 3), (2, 4), (1, 5), (4, 0)];
        let g = Graph::from_edges(["bp", "a", "b", "c", "d", "cp"], &edges).unwrap();
        let ord = VertexOrder::identity(6);
        assert_eq!(double_x_violations(&g, &ord), vec![[0, 1, 2, 3, 4, 5]]);
        assert_eq!(first_double_x_violation(&g, &ord), Some([0, 1, 2, 3, 4, 5]));
        assert_eq!(order_claim_violations(&g, &ord).len(), brute_order_claim(&g, 6));
    }
}
