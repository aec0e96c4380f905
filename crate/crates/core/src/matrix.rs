//! Divisions, combinatorial cell rank, grid rank and universal patterns.

use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{parse_err, Error, Result};
use crate::graph::{content_lines, OrderedMatrix};

/// Default bound on rows and columns for exact grid rank.
pub const EXHAUSTIVE_LIMIT: usize = 16;

const _: () = assert!(usize::BITS == 64);

/// Partition of rows and columns into consecutive non-empty intervals,
/// stored as part sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Division {
    pub row_sizes: Vec<usize>,
    pub col_sizes: Vec<usize>,
}

fn sizes_to_ranges(sizes: &[usize]) -> Vec<Range<usize>> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let r = start..start + s;
            start += s;
            r
        })
        .collect()
}

fn ranges_to_sizes(parts: &[Range<usize>]) -> Vec<usize> {
    parts.iter().map(|r| r.len()).collect()
}

impl Division {
    pub fn from_parts(rows: &[Range<usize>], cols: &[Range<usize>]) -> Self {
        Division { row_sizes: ranges_to_sizes(rows), col_sizes: ranges_to_sizes(cols) }
    }

    /// Parts as equal as possible, larger parts first.
    pub fn regular(rows: usize, cols: usize, k: usize) -> Result<Self> {
        if k == 0 || k > rows || k > cols {
            return Err(Error::MalformedDivision(format!("no regular {k}-division of {rows}x{cols}")));
        }
        let split = |n: usize| (0..k).map(|i| n / k + usize::from(i < n % k)).collect();
        Ok(Division { row_sizes: split(rows), col_sizes: split(cols) })
    }

    pub fn row_parts(&self) -> Vec<Range<usize>> {
        sizes_to_ranges(&self.row_sizes)
    }

    pub fn col_parts(&self) -> Vec<Range<usize>> {
        sizes_to_ranges(&self.col_sizes)
    }

    pub fn validate(&self, m: &OrderedMatrix) -> Result<()> {
        let ok = |sizes: &[usize], n: usize| sizes.iter().all(|&s| s > 0) && sizes.iter().sum::<usize>() == n;
        if !ok(&self.row_sizes, m.rows()) || !ok(&self.col_sizes, m.cols()) {
            return Err(Error::MalformedDivision(format!(
                "parts {:?} / {:?} do not partition a {}x{} matrix",
                self.row_sizes,
                self.col_sizes,
                m.rows(),
                m.cols()
            )));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        Division { row_sizes: self.col_sizes.clone(), col_sizes: self.row_sizes.clone() }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = content_lines(text).collect();
        if lines.len() != 2 {
            return Err(parse_err(lines.first().map_or(1, |l| l.0), "expected two lines of part sizes"));
        }
        let parse_line = |(ln, l): (usize, &str)| -> Result<Vec<usize>> {
            l.split_whitespace()
                .map(|t| t.parse().map_err(|_| parse_err(ln, format!("bad part size {t:?}"))))
                .collect()
        };
        Ok(Division { row_sizes: parse_line(lines[0])?, col_sizes: parse_line(lines[1])? })
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        format!("{}\n{}\n", join(&self.row_sizes), join(&self.col_sizes))
    }
}

/// Bits `start..start+len` of a packed row, `len <= 64`.
fn extract(words: &[usize], start: usize, len: usize) -> u64 {
    if len == 0 {
        return 0;
    }
    let w = start / 64;
    let off = start % 64;
    let mut v = (words.get(w).copied().unwrap_or(0) as u64) >> off;
    if off > 0 && off + len > 64 {
        v |= (words.get(w + 1).copied().unwrap_or(0) as u64) << (64 - off);
    }
    if len < 64 {
        v &= (1u64 << len) - 1;
    }
    v
}

/// One or more same-shape 0/1 layers read as a matrix over the product
/// alphabet, with a transposed copy for column access.
struct Layers {
    rows: usize,
    cols: usize,
    by_row: Vec<OrderedMatrix>,
    by_col: Vec<OrderedMatrix>,
}

impl Layers {
    fn new(layers: &[&OrderedMatrix]) -> Self {
        let rows = layers[0].rows();
        let cols = layers[0].cols();
        Layers {
            rows,
            cols,
            by_row: layers.iter().map(|m| (*m).clone()).collect(),
            by_col: layers.iter().map(|m| m.transpose()).collect(),
        }
    }

    fn transposed(&self) -> Self {
        Layers {
            rows: self.cols,
            cols: self.rows,
            by_row: self.by_col.clone(),
            by_col: self.by_row.clone(),
        }
    }

    fn distinct(mats: &[OrderedMatrix], lines: Range<usize>, span: Range<usize>) -> usize {
        let len = span.len();
        if lines.is_empty() {
            return 0;
        }
        if mats.len() == 1 && len <= 64 {
            let mut keys: Vec<u64> =
                lines.map(|r| extract(mats[0].row(r).as_slice(), span.start, len)).collect();
            keys.sort_unstable();
            keys.dedup();
            return keys.len();
        }
        let mut keys: Vec<Vec<u64>> = lines
            .map(|r| {
                let mut key = Vec::new();
                for m in mats {
                    let words = m.row(r).as_slice();
                    let mut s = span.start;
                    while s < span.end {
                        let l = (span.end - s).min(64);
                        key.push(extract(words, s, l));
                        s += l;
                    }
                }
                key
            })
            .collect();
        keys.sort_unstable();
        keys.dedup();
        keys.len()
    }

    fn cell_rank(&self, rows: Range<usize>, cols: Range<usize>) -> usize {
        let dr = Self::distinct(&self.by_row, rows.clone(), cols.clone());
        let dc = Self::distinct(&self.by_col, cols, rows);
        dr.max(dc)
    }

    /// Shortest-first column parts making every cell against `row_parts`
    /// reach rank `k`; `None` if `k` parts cannot be formed.
    fn greedy_cols(&self, row_parts: &[Range<usize>], k: usize) -> Option<Vec<Range<usize>>> {
        let mut parts = Vec::with_capacity(k);
        let mut c0 = 0;
        for _ in 0..k - 1 {
            let mut end = c0 + 1;
            for rp in row_parts {
                while end <= self.cols && self.cell_rank(rp.clone(), c0..end) < k {
                    end += 1;
                }
                if end > self.cols {
                    return None;
                }
            }
            parts.push(c0..end);
            c0 = end;
        }
        if c0 >= self.cols {
            return None;
        }
        if row_parts.iter().any(|rp| self.cell_rank(rp.clone(), c0..self.cols) < k) {
            return None;
        }
        parts.push(c0..self.cols);
        Some(parts)
    }

    fn is_rank_k(&self, rows: &[Range<usize>], cols: &[Range<usize>], k: usize) -> bool {
        rows.len() == k
            && cols.len() == k
            && rows.iter().all(|r| cols.iter().all(|c| self.cell_rank(r.clone(), c.clone()) >= k))
    }

    /// Exact search for a rank-`k` division: row cuts are enumerated with
    /// prefix pruning, column parts are placed greedily.
    fn exact(&self, k: usize) -> Option<Division> {
        if k == 0 || k > self.rows || k > self.cols {
            return None;
        }
        if binom(self.rows - 1, k - 1) > binom(self.cols - 1, k - 1) {
            return self.transposed().exact(k).map(|d| d.transpose());
        }
        let mut row_parts = Vec::with_capacity(k);
        self.enumerate_rows(k, 0, &mut row_parts)
    }

    fn enumerate_rows(
        &self,
        k: usize,
        start: usize,
        row_parts: &mut Vec<Range<usize>>,
    ) -> Option<Division> {
        let remaining = k - row_parts.len();
        if remaining == 1 {
            row_parts.push(start..self.rows);
            let found = self.greedy_cols(row_parts, k);
            let result = found.map(|cols| Division::from_parts(row_parts, &cols));
            row_parts.pop();
            return result;
        }
        for end in start + 1..=self.rows - (remaining - 1) {
            row_parts.push(start..end);
            if self.greedy_cols(row_parts, k).is_some() {
                if let Some(d) = self.enumerate_rows(k, end, row_parts) {
                    return Some(d);
                }
            }
            row_parts.pop();
        }
        None
    }

    /// Alternating greedy refinement from regular starting divisions.
    fn heuristic(&self, k: usize) -> Option<Division> {
        if k == 0 || k > self.rows || k > self.cols {
            return None;
        }
        let regular = Division::regular(self.rows, self.cols, k).ok()?;
        for transpose in [false, true] {
            let layers = if transpose { self.transposed() } else { self.shallow() };
            let reg = if transpose { regular.transpose() } else { regular.clone() };
            let mut rows = reg.row_parts();
            for _ in 0..6 {
                let Some(cols) = layers.greedy_cols(&rows, k) else { break };
                if layers.is_rank_k(&rows, &cols, k) {
                    let d = Division::from_parts(&rows, &cols);
                    return Some(if transpose { d.transpose() } else { d });
                }
                let flipped = layers.transposed();
                let Some(new_rows) = flipped.greedy_cols(&cols, k) else { break };
                if new_rows == rows {
                    break;
                }
                rows = new_rows;
            }
        }
        None
    }

    fn shallow(&self) -> Self {
        Layers {
            rows: self.rows,
            cols: self.cols,
            by_row: self.by_row.clone(),
            by_col: self.by_col.clone(),
        }
    }

    fn grid_rank(&self) -> (usize, Option<Division>) {
        if self.rows == 0 || self.cols == 0 {
            return (0, None);
        }
        let mut best = (1, Division { row_sizes: vec![self.rows], col_sizes: vec![self.cols] });
        for k in 2..=self.rows.min(self.cols) {
            match self.exact(k) {
                Some(d) => best = (k, d),
                None => break,
            }
        }
        (best.0, Some(best.1))
    }
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Max of the number of distinct rows and distinct columns of a cell.
pub fn cell_rank(m: &OrderedMatrix, rows: Range<usize>, cols: Range<usize>) -> Result<usize> {
    if rows.start > rows.end || rows.end > m.rows() || cols.start > cols.end || cols.end > m.cols() {
        return Err(Error::OutOfBounds(format!(
            "cell {rows:?} x {cols:?} of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    Ok(Layers::new(&[m]).cell_rank(rows, cols))
}

pub fn is_rank_k_division(m: &OrderedMatrix, d: &Division, k: usize) -> Result<bool> {
    d.validate(m)?;
    Ok(Layers::new(&[m]).is_rank_k(&d.row_parts(), &d.col_parts(), k))
}

/// Exact grid rank with the default exhaustive limit.
pub fn grid_rank(m: &OrderedMatrix) -> Result<usize> {
    grid_rank_with_limit(m, EXHAUSTIVE_LIMIT).map(|(k, _)| k)
}

/// Exact grid rank together with a witnessing division (`None` for an
/// empty matrix, whose grid rank is 0).
pub fn grid_rank_with_limit(m: &OrderedMatrix, limit: usize) -> Result<(usize, Option<Division>)> {
    let limit = limit.min(64);
    if m.rows() > limit || m.cols() > limit {
        return Err(Error::OverLimit { rows: m.rows(), cols: m.cols(), limit });
    }
    Ok(Layers::new(&[m]).grid_rank())
}

/// A rank-`k` division if one is found. Exact up to the exhaustive limit,
/// greedy (and possibly incomplete) above it; always verified.
pub fn grid_rank_lower_bound(m: &OrderedMatrix, k: usize) -> Option<Division> {
    if k == 0 || k > m.rows() || k > m.cols() {
        return None;
    }
    if k == 1 {
        return Some(Division { row_sizes: vec![m.rows()], col_sizes: vec![m.cols()] });
    }
    let layers = Layers::new(&[m]);
    let found = if m.rows() <= EXHAUSTIVE_LIMIT && m.cols() <= EXHAUSTIVE_LIMIT {
        layers.exact(k)
    } else {
        layers.heuristic(k)
    };
    found.filter(|d| layers.is_rank_k(&d.row_parts(), &d.col_parts(), k))
}

/// `(gr(m1), gr(m2), gr(m1 x m2))` where the last matrix has entries in
/// the product alphabet.
pub fn union_grid_rank_check(m1: &OrderedMatrix, m2: &OrderedMatrix) -> Result<(usize, usize, usize)> {
    if m1.rows() != m2.rows() || m1.cols() != m2.cols() {
        return Err(Error::SizeMismatch(format!(
            "{}x{} vs {}x{}",
            m1.rows(),
            m1.cols(),
            m2.rows(),
            m2.cols()
        )));
    }
    let g1 = grid_rank(m1)?;
    let g2 = grid_rank(m2)?;
    let g3 = Layers::new(&[m1, m2]).grid_rank().0;
    Ok((g1, g2, g3))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternSign {
    Zero,
    One,
    Up,
    Down,
    Left,
    Right,
}

impl PatternSign {
    /// Fixed search order.
    pub const ALL: [PatternSign; 6] = [
        PatternSign::Zero,
        PatternSign::One,
        PatternSign::Up,
        PatternSign::Down,
        PatternSign::Left,
        PatternSign::Right,
    ];

    pub fn is_arrow(self) -> bool {
        !matches!(self, PatternSign::Zero | PatternSign::One)
    }

    pub fn name(self) -> &'static str {
        match self {
            PatternSign::Zero => "0",
            PatternSign::One => "1",
            PatternSign::Up => "up",
            PatternSign::Down => "down",
            PatternSign::Left => "left",
            PatternSign::Right => "right",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        PatternSign::ALL.into_iter().find(|p| p.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct UniversalPatternId {
    pub k: usize,
    pub s: PatternSign,
}

/// Row index of the single 1 of `M_k^0` in row `r` (rows counted from the
/// bottom, starting at 0). It is an involution.
pub fn sigma(k: usize, r: usize) -> usize {
    (r % k) * k + r / k
}

/// The `k^2 x k^2` matrix `M_k^s`. Row 0 is the bottom row.
pub fn universal_pattern(id: UniversalPatternId) -> OrderedMatrix {
    let k = id.k;
    let n = k * k;
    OrderedMatrix::from_fn(n, n, |r, c| {
        let base = c == sigma(k, r);
        match id.s {
            PatternSign::Zero => base,
            PatternSign::One => !base,
            PatternSign::Up => r >= sigma(k, c),
            PatternSign::Down => r <= sigma(k, c),
            PatternSign::Left => c <= sigma(k, r),
            PatternSign::Right => c >= sigma(k, r),
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Every selected column index is smaller than every selected row index.
    Above,
    /// Every selected row index is smaller than every selected column index.
    Below,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternOccurrence {
    pub pattern: UniversalPatternId,
    pub row_idx: Vec<usize>,
    pub col_idx: Vec<usize>,
    pub side: Side,
}

impl PatternOccurrence {
    /// Entrywise and off-diagonal re-check against `m`.
    pub fn verify(&self, m: &OrderedMatrix) -> bool {
        let n = self.pattern.k * self.pattern.k;
        let increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        if self.row_idx.len() != n || self.col_idx.len() != n {
            return false;
        }
        if !increasing(&self.row_idx) || !increasing(&self.col_idx) {
            return false;
        }
        if self.row_idx.last().is_some_and(|&r| r >= m.rows())
            || self.col_idx.last().is_some_and(|&c| c >= m.cols())
        {
            return false;
        }
        let separated = match self.side {
            Side::Above => self.col_idx.last() < self.row_idx.first(),
            Side::Below => self.row_idx.last() < self.col_idx.first(),
        };
        separated && m.select(&self.row_idx, &self.col_idx) == universal_pattern(self.pattern)
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        format!(
            "pattern k={} s={}\nside {}\nrows {}\ncols {}\n",
            self.pattern.k,
            self.pattern.s.name(),
            match self.side {
                Side::Above => "above",
                Side::Below => "below",
            },
            join(&self.row_idx),
            join(&self.col_idx)
        )
    }

    /// Reads [`PatternOccurrence::to_text`] output.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = content_lines(text).collect();
        if lines.len() != 4 {
            return Err(parse_err(lines.first().map_or(1, |l| l.0), "expected pattern, side, rows and cols lines"));
        }
        let (ln, head) = lines[0];
        let bad_head = || parse_err(ln, "expected \"pattern k=<k> s=<sign>\"");
        let mut toks = head.split_whitespace();
        if toks.next() != Some("pattern") {
            return Err(bad_head());
        }
        let k = toks.next().and_then(|t| t.strip_prefix("k=")).and_then(|t| t.parse().ok()).ok_or_else(bad_head)?;
        let s = toks.next().and_then(|t| t.strip_prefix("s=")).and_then(PatternSign::parse).ok_or_else(bad_head)?;
        let side = match lines[1].1.strip_prefix("side").map(str::trim) {
            Some("above") => Side::Above,
            Some("below") => Side::Below,
            _ => return Err(parse_err(lines[1].0, "expected \"side above|below\"")),
        };
        let indices = |(ln, l): (usize, &str), key: &str| -> Result<Vec<usize>> {
            let rest = l.strip_prefix(key).ok_or_else(|| parse_err(ln, format!("expected \"{key} ...\"")))?;
            rest.split_whitespace()
                .map(|t| t.parse().map_err(|_| parse_err(ln, format!("bad index {t:?}"))))
                .collect()
        };
        Ok(PatternOccurrence {
            pattern: UniversalPatternId { k, s },
            row_idx: indices(lines[2], "rows")?,
            col_idx: indices(lines[3], "cols")?,
            side,
        })
    }
}

/// Searches every sign in the fixed order; the first sign with an occurrence
/// wins. Signs are searched in parallel, each under its own copy of
/// `budget`.
pub fn find_universal_pattern(
    m: &OrderedMatrix,
    k: usize,
    side: Side,
    budget: &Budget,
) -> Result<Option<PatternOccurrence>> {
    let results: Vec<Result<Option<PatternOccurrence>>> = PatternSign::ALL
        .par_iter()
        .map(|&s| find_pattern(m, UniversalPatternId { k, s }, side, budget))
        .collect();
    let mut exhausted = false;
    for r in results {
        match r {
            Ok(Some(occ)) => return Ok(Some(occ)),
            Ok(None) => {}
            Err(Error::BudgetExhausted) => exhausted = true,
            Err(e) => return Err(e),
        }
    }
    if exhausted {
        Err(Error::BudgetExhausted)
    } else {
        Ok(None)
    }
}

/// Backtracking over column choices; rows are assigned as the leftmost
/// increasing system of representatives of the per-row candidate sets.
pub fn find_pattern(
    m: &OrderedMatrix,
    id: UniversalPatternId,
    side: Side,
    budget: &Budget,
) -> Result<Option<PatternOccurrence>> {
    if id.k == 0 {
        return Err(Error::Precondition("pattern side k must be positive".into()));
    }
    let p = universal_pattern(id);
    let n = p.rows();
    if 2 * n > m.rows().max(m.cols()) + m.rows().min(m.cols()) || n > m.rows() || n > m.cols() {
        return Ok(None);
    }
    let mt = m.transpose();
    let mut search = PatternSearch {
        m,
        mt: &mt,
        p: &p,
        n,
        side,
        meter: budget.meter(),
        cols: Vec::with_capacity(n),
    };
    let all_rows = {
        let mut s = fixedbitset::FixedBitSet::with_capacity(m.rows());
        s.insert_range(..);
        s
    };
    let cands = vec![all_rows; n];
    Ok(search.extend(&cands)?.map(|rows| PatternOccurrence {
        pattern: id,
        row_idx: rows,
        col_idx: search.cols.clone(),
        side,
    }))
}

struct PatternSearch<'a> {
    m: &'a OrderedMatrix,
    mt: &'a OrderedMatrix,
    p: &'a OrderedMatrix,
    n: usize,
    side: Side,
    meter: crate::budget::Meter,
    cols: Vec<usize>,
}

impl PatternSearch<'_> {
    /// Leftmost strictly increasing choice of rows from `cands`, each above
    /// `floor` (exclusive lower bound) and below `ceil`.
    fn assign_rows(
        cands: &[fixedbitset::FixedBitSet],
        floor: Option<usize>,
        ceil: usize,
    ) -> Option<Vec<usize>> {
        let mut next = floor.map_or(0, |f| f + 1);
        let mut out = Vec::with_capacity(cands.len());
        for c in cands {
            let r = c.ones().find(|&r| r >= next)?;
            if r >= ceil {
                return None;
            }
            out.push(r);
            next = r + 1;
        }
        Some(out)
    }

    fn bounds(&self, next_col: usize) -> (Option<usize>, usize) {
        let b = self.cols.len();
        match self.side {
            Side::Above => {
                let last = self.cols.last().copied().unwrap_or(0);
                let floor = last.max(next_col) + (self.n - b);
                (Some(floor.saturating_sub(1).max(last)), self.m.rows())
            }
            Side::Below => (None, self.cols.first().copied().unwrap_or(self.m.rows())),
        }
    }

    fn extend(&mut self, cands: &[fixedbitset::FixedBitSet]) -> Result<Option<Vec<usize>>> {
        self.meter.tick()?;
        let b = self.cols.len();
        if b == self.n {
            let (floor, ceil) = self.bounds(0);
            return Ok(Self::assign_rows(cands, floor, ceil));
        }
        let start = self.cols.last().map_or(0, |&c| c + 1);
        let end = self.m.cols() - (self.n - b - 1);
        for c in start..end {
            let mut next: Vec<fixedbitset::FixedBitSet> = Vec::with_capacity(self.n);
            let ones = self.mt.row(c);
            for (a, cand) in cands.iter().enumerate() {
                let mut s = cand.clone();
                if self.p.get(a, b) {
                    s.intersect_with(ones);
                } else {
                    s.difference_with(ones);
                }
                next.push(s);
            }
            self.cols.push(c);
            let (floor, ceil) = match self.side {
                Side::Above => (Some(c + (self.n - b - 1)), self.m.rows()),
                Side::Below => (None, self.cols[0]),
            };
            if Self::assign_rows(&next, floor, ceil).is_some() {
                if let Some(rows) = self.extend(&next)? {
                    return Ok(Some(rows));
                }
            }
            self.cols.pop();
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn naive_cell_rank(m: &OrderedMatrix, rows: Range<usize>, cols: Range<usize>) -> usize {
        let r: HashSet<Vec<bool>> =
            rows.clone().map(|i| cols.clone().map(|j| m.get(i, j)).collect()).collect();
        let c: HashSet<Vec<bool>> =
            cols.map(|j| rows.clone().map(|i| m.get(i, j)).collect()).collect();
        r.len().max(c.len())
    }

    fn random(rng: &mut ChaCha8Rng, r: usize, c: usize, p: f64) -> OrderedMatrix {
        OrderedMatrix::from_fn(r, c, |_, _| rng.gen_bool(p))
    }

    #[test]
    fn cell_rank_examples() {
        let z = OrderedMatrix::zeros(3, 3);
        assert_eq!(cell_rank(&z, 0..3, 0..3).unwrap(), 1);
        let id = OrderedMatrix::from_fn(2, 2, |r, c| r == c);
        assert_eq!(cell_rank(&id, 0..2, 0..2).unwrap(), 2);
        assert!(cell_rank(&id, 0..3, 0..2).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let m = random(&mut rng, 5, 5, 0.5);
            assert_eq!(cell_rank(&m, 0..5, 0..5).unwrap(), naive_cell_rank(&m, 0..5, 0..5));
            assert_eq!(cell_rank(&m, 1..4, 2..5).unwrap(), naive_cell_rank(&m, 1..4, 2..5));
        }
    }

    #[test]
    fn wide_cells_use_multiword_keys() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = random(&mut rng, 70, 150, 0.5);
        assert_eq!(cell_rank(&m, 3..70, 5..150).unwrap(), naive_cell_rank(&m, 3..70, 5..150));
        assert_eq!(cell_rank(&m, 0..70, 60..130).unwrap(), naive_cell_rank(&m, 0..70, 60..130));
    }

    #[test]
    fn rank_k_division_examples() {
        let m = OrderedMatrix::from_fn(3, 4, |r, c| (r + c) % 2 == 0);
        let triv = Division { row_sizes: vec![3], col_sizes: vec![4] };
        assert!(is_rank_k_division(&m, &triv, 1).unwrap());
        let id = OrderedMatrix::from_fn(4, 4, |r, c| r == c);
        let reg = Division::regular(4, 4, 2).unwrap();
        assert!(!is_rank_k_division(&id, &reg, 2).unwrap());
        let bad = Division { row_sizes: vec![2, 1], col_sizes: vec![4] };
        assert!(is_rank_k_division(&id, &bad, 1).is_err());
    }

    #[test]
    fn universal_pattern_natural_division_is_decided_by_cell_rank() {
        let p = universal_pattern(UniversalPatternId { k: 3, s: PatternSign::Zero });
        let d = Division::regular(9, 9, 3).unwrap();
        let expected = d.row_parts().iter().all(|r| {
            d.col_parts().iter().all(|c| naive_cell_rank(&p, r.clone(), c.clone()) >= 3)
        });
        assert_eq!(is_rank_k_division(&p, &d, 3).unwrap(), expected);
    }

    #[test]
    fn grid_rank_examples() {
        assert_eq!(grid_rank(&OrderedMatrix::zeros(5, 7)).unwrap(), 1);
        assert_eq!(grid_rank(&OrderedMatrix::zeros(0, 3)).unwrap(), 0);
        let id = OrderedMatrix::from_fn(8, 8, |r, c| r == c);
        assert_eq!(grid_rank(&id).unwrap(), 1);
        assert!(matches!(grid_rank(&OrderedMatrix::zeros(17, 2)), Err(Error::OverLimit { .. })));
    }

    #[test]
    fn lower_bound_examples() {
        assert!(grid_rank_lower_bound(&OrderedMatrix::zeros(6, 6), 2).is_none());
        let d = grid_rank_lower_bound(&OrderedMatrix::zeros(6, 6), 1).unwrap();
        assert_eq!(d.row_sizes, vec![6]);
        // 3x3 blocks of 10x10 random noise
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random(&mut rng, 30, 30, 0.5);
        let d = grid_rank_lower_bound(&m, 3).expect("planted blocks");
        assert!(is_rank_k_division(&m, &d, 3).unwrap());
    }

    #[test]
    fn union_examples() {
        let z = OrderedMatrix::zeros(4, 4);
        assert_eq!(union_grid_rank_check(&z, &z).unwrap(), (1, 1, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let a = random(&mut rng, 8, 8, 0.5);
            let b = random(&mut rng, 8, 8, 0.5);
            let (g1, g2, g3) = union_grid_rank_check(&a, &b).unwrap();
            assert!(g3 >= g1.max(g2));
            let (_, h2, h3) = union_grid_rank_check(&z.submatrix(0..4, 0..4), &b.submatrix(0..4, 0..4)).unwrap();
            assert_eq!(h2, h3);
        }
        assert!(union_grid_rank_check(&z, &OrderedMatrix::zeros(3, 4)).is_err());
    }

    #[test]
    fn universal_patterns_small() {
        let id = |k, s| UniversalPatternId { k, s };
        assert_eq!(
            universal_pattern(id(1, PatternSign::Zero)),
            OrderedMatrix::from_rows(&[vec![1]]).unwrap()
        );
        assert_eq!(
            universal_pattern(id(2, PatternSign::One)),
            universal_pattern(id(2, PatternSign::Zero)).complement()
        );
        // the 1 at position (i, j) of the (j, i)-cell
        let p = universal_pattern(id(3, PatternSign::Zero));
        for cr in 0..3 {
            for cc in 0..3 {
                for i in 0..3 {
                    for j in 0..3 {
                        let want = i == cc && j == cr;
                        assert_eq!(p.get(cr * 3 + i, cc * 3 + j), want);
                    }
                }
            }
        }
        assert_eq!(p.count_ones(), 9);
    }

    #[test]
    fn arrow_patterns_propagate_in_the_named_direction() {
        let k = 3;
        let z = universal_pattern(UniversalPatternId { k, s: PatternSign::Zero });
        let n = k * k;
        for s in [PatternSign::Up, PatternSign::Down, PatternSign::Left, PatternSign::Right] {
            let p = universal_pattern(UniversalPatternId { k, s });
            for r in 0..n {
                for c in 0..n {
                    let expect = z.get(r, c)
                        || match s {
                            PatternSign::Up => (0..r).any(|q| z.get(q, c)),
                            PatternSign::Down => (r + 1..n).any(|q| z.get(q, c)),
                            PatternSign::Left => (c + 1..n).any(|q| z.get(r, q)),
                            PatternSign::Right => (0..c).any(|q| z.get(r, q)),
                            _ => unreachable!(),
                        };
                    assert_eq!(p.get(r, c), expect, "{s:?} at ({r},{c})");
                }
            }
        }
    }

    fn plant(m: &mut OrderedMatrix, id: UniversalPatternId, rows: &[usize], cols: &[usize]) {
        let p = universal_pattern(id);
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                m.set(r, c, p.get(a, b));
            }
        }
    }

    #[test]
    fn planted_up_pattern_is_found() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut m = random(&mut rng, 20, 20, 0.5);
        let id = UniversalPatternId { k: 3, s: PatternSign::Up };
        let cols: Vec<usize> = (0..9).collect();
        let rows: Vec<usize> = (11..20).collect();
        plant(&mut m, id, &rows, &cols);
        let occ = find_pattern(&m, id, Side::Above, &Budget::unlimited()).unwrap().unwrap();
        assert!(occ.verify(&m));
        let any = find_universal_pattern(&m, 3, Side::Above, &Budget::unlimited()).unwrap().unwrap();
        assert!(any.verify(&m));
    }

    #[test]
    fn zero_matrix_has_no_patterns() {
        let z = OrderedMatrix::zeros(12, 12);
        for s in PatternSign::ALL {
            let found = find_pattern(&z, UniversalPatternId { k: 2, s }, Side::Above, &Budget::unlimited());
            assert_eq!(found.unwrap(), None);
        }
    }

    #[test]
    fn half_graph_matrix_has_no_pattern() {
        // a staircase has grid rank 1, so no M_2^s can occur
        let t = 16;
        let m = OrderedMatrix::from_fn(2 * t, 2 * t, |r, c| {
            let (lo, hi) = if r < c { (r, c) } else { (c, r) };
            lo < t && hi >= t && lo <= hi - t
        });
        for side in [Side::Above, Side::Below] {
            assert_eq!(find_universal_pattern(&m, 2, side, &Budget::unlimited()).unwrap(), None);
        }
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut m = random(&mut rng, 40, 40, 0.5);
        let id = UniversalPatternId { k: 3, s: PatternSign::Up };
        plant(&mut m, id, &(20..29).collect::<Vec<_>>(), &(5..14).collect::<Vec<_>>());
        let r = find_pattern(&m, id, Side::Above, &Budget::nodes(3));
        assert_eq!(r, Err(Error::BudgetExhausted));
        assert!(find_pattern(&m, id, Side::Above, &Budget::unlimited()).unwrap().is_some());
    }

    #[test]
    fn division_text_round_trip() {
        let d = Division { row_sizes: vec![2, 3], col_sizes: vec![1, 1, 3] };
        assert_eq!(Division::parse(&d.to_text()).unwrap(), d);
    }
}
