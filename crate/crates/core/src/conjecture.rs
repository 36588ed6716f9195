//! Closed-form predictions: first Betti numbers of I, generator bidegrees
//! of (J : I) from the syzygy-selection count, the conjectured resolution
//! shape, and the determinants built from diagonals of powers of X and Y.
//!
//! Nothing here verifies anything; these are the formulas to compare
//! computations and published tables against.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genmat::{for_each_subset, CommutatorSystem, GenericMatrix};
use crate::hilbert::{BettiEntry, GradedBettiTable};
use crate::polyring::{Field, Polynomial};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConjectureError {
    #[error("predictions need n ≥ 2 (got {0})")]
    TooSmall(u32),
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Parameters of the cheapest way to pick n syzygy bidegrees from the
/// triangular table whose row r holds (r,0), (r−1,1), …, (0,r).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionParams {
    pub n: u32,
    /// Number of full rows: the largest k with k(k+1)/2 ≤ n.
    pub k: u32,
    /// Cells left for row k: s = n − k(k+1)/2.
    pub s: u32,
    /// Each coordinate of the total bidegree of the k full rows.
    pub a: u32,
    pub d_min: u32,
    pub d_max: u32,
    pub count_min: u32,
    pub count_max: u32,
}

pub fn selection_params(n: u32) -> Result<SelectionParams, ConjectureError> {
    if n < 2 {
        return Err(ConjectureError::TooSmall(n));
    }
    let mut k = 0;
    while (k + 1) * (k + 2) / 2 <= n {
        k += 1;
    }
    let s = n - k * (k + 1) / 2;
    let a = k * (k * k - 1) / 6;
    let d_min = 2 * a + s * k;
    let d_max = n * (n - 1) / 2;
    let count_min = if s == 0 { 1 } else { s * (k - s + 1) + 1 };
    Ok(SelectionParams {
        n,
        k,
        s,
        a,
        d_min,
        d_max,
        count_min,
        count_max: d_max + 1,
    })
}

/// All total bidegrees (Σi, Σj) reachable by choosing n distinct cells from
/// rows 0..=max_row of the triangular table, always including (0,0).
///
/// Dynamic programming over (cells chosen, Σi, Σj); exact and fast enough
/// for n in the low dozens.
pub fn reachable_bidegrees(n: u32, max_row: u32) -> BTreeSet<(u32, u32)> {
    let n = n as usize;
    let cells: Vec<(usize, usize)> = (1..=max_row as usize)
        .flat_map(|r| (0..=r).map(move |j| (r - j, j)))
        .collect();
    let need = n.saturating_sub(1);
    // the n − 1 largest cells bound each coordinate sum
    let bound = (max_row as usize) * need + 1;
    let idx = |c: usize, a: usize, b: usize| (c * bound + a) * bound + b;
    let mut reach = vec![false; (need + 1) * bound * bound];
    reach[idx(0, 0, 0)] = true;
    for &(ci, cj) in &cells {
        for c in (0..need).rev() {
            for a in 0..bound - ci {
                for b in 0..bound - cj {
                    if reach[idx(c, a, b)] {
                        reach[idx(c + 1, a + ci, b + cj)] = true;
                    }
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for a in 0..bound {
        for b in 0..bound {
            if reach[idx(need, a, b)] {
                out.insert((a as u32, b as u32));
            }
        }
    }
    out
}

/// Predicted generator bidegrees of (J : I) beyond J, bucketed by total
/// degree d_min..=cutoff (default d_max). Cells are capped at row n − 1.
pub fn colon_bidegrees(
    n: u32,
    cutoff: Option<u32>,
) -> Result<BTreeMap<u32, Vec<(u32, u32)>>, ConjectureError> {
    let p = selection_params(n)?;
    let cutoff = cutoff.unwrap_or(p.d_max);
    let mut out: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
    for (a, b) in reachable_bidegrees(n, n - 1) {
        let d = a + b;
        if d >= p.d_min && d <= cutoff {
            out.entry(d).or_default().push((a, b));
        }
    }
    for v in out.values_mut() {
        // x-degree descending, as (r,t), (r−1,t+1), …
        v.sort_by(|x, y| y.cmp(x));
    }
    Ok(out)
}

/// Whether the bidegrees of one total degree form a run
/// (r,t), (r−1,t+1), …, (t,r)-style with no gaps.
pub fn is_contiguous_run(bidegrees: &[(u32, u32)]) -> bool {
    bidegrees
        .windows(2)
        .all(|w| w[0].0 == w[1].0 + 1 && w[0].1 + 1 == w[1].1)
}

/// Conjectured first Betti column of S/I (minimal generators in row 1):
/// 2 at row 1, C(n²−1, 2) + 3 at row 2, h + 1 at row h for 3 ≤ h ≤ n − 1.
/// Rows beyond n − 1 are zero, so for n = 2 only the two linear syzygies
/// remain.
pub fn first_betti_prediction(n: u32) -> Result<BTreeMap<u32, u64>, ConjectureError> {
    if n < 2 {
        return Err(ConjectureError::TooSmall(n));
    }
    let m = (n * n - 1) as u64;
    let mut col = BTreeMap::new();
    col.insert(1, 2);
    if n >= 3 {
        col.insert(2, binom(m, 2) + 3);
    }
    for h in 3..n {
        col.insert(h, h as u64 + 1);
    }
    Ok(col)
}

/// C(n²−1, 2) + C(n+1, 2) − 1, the conjectured column total (n ≥ 3).
pub fn first_betti_total(n: u32) -> u64 {
    let m = (n * n - 1) as u64;
    binom(m, 2) + binom(n as u64 + 1, 2) - 1
}

/// One cell of the conjectured resolution shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum ShapeCell {
    Count(u64),
    /// Products of earlier entries ("p").
    Product,
    /// Not predicted ("?").
    Unknown,
    /// Several rules claim this cell (rows coincide for small n).
    Overlap(Vec<ShapeCell>),
}

impl fmt::Display for ShapeCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeCell::Count(c) => write!(f, "{c}"),
            ShapeCell::Product => write!(f, "p"),
            ShapeCell::Unknown => write!(f, "?"),
            ShapeCell::Overlap(v) => {
                let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                write!(f, "{}", parts.join("|"))
            }
        }
    }
}

/// Skeleton of the conjectured Betti table of S/I, in Macaulay layout
/// (column = homological degree, row = internal degree − column). Absent
/// cells carry no prediction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionShape {
    pub n: u32,
    pub pd: u32,
    pub last_row: u32,
    pub cells: BTreeMap<(u32, u32), ShapeCell>,
}

impl ResolutionShape {
    fn claim(&mut self, col: u32, row: u32, cell: ShapeCell) {
        if col > self.pd {
            return;
        }
        match self.cells.get_mut(&(col, row)) {
            None => {
                self.cells.insert((col, row), cell);
            }
            Some(existing) if *existing == cell => {}
            Some(ShapeCell::Overlap(v)) => {
                if !v.contains(&cell) {
                    v.push(cell);
                }
            }
            Some(existing) => {
                let prev = existing.clone();
                *existing = ShapeCell::Overlap(vec![prev, cell]);
            }
        }
    }

    /// Cell at (column, row), if any rule claims it.
    pub fn get(&self, col: u32, row: u32) -> Option<&ShapeCell> {
        self.cells.get(&(col, row))
    }

    pub fn render(&self) -> String {
        let mut lines: Vec<Vec<String>> = Vec::new();
        for r in 0..=self.last_row {
            let mut line = vec![format!("{r}:")];
            for c in 0..=self.pd {
                line.push(self.get(c, r).map_or(".".into(), |x| x.to_string()));
            }
            lines.push(line);
        }
        let ncols = self.pd as usize + 2;
        let widths: Vec<usize> = (0..ncols)
            .map(|c| {
                lines
                    .iter()
                    .map(|l| l[c].chars().count())
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        let mut out = String::new();
        for l in &lines {
            let cells: Vec<String> = l
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s:>w$}"))
                .collect();
            out.push_str(cells.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// The conjectured Betti table shape of S/I for size n.
///
/// Rules, each applied where its row and column exist:
/// * row 0: 1 in column 0; row 1: n² − 1, 2;
/// * first Betti column as in [`first_betti_prediction`];
/// * staircase for rows 2 ≤ h ≤ n − 1: h(n² − 1) in column 2h − 1 and h + 1
///   in column 2h, with products ("p") between column 3 and the staircase;
/// * row n − 1: unknown ("?") from column 3 up to column pd − 2;
/// * row n(n−1)/2: (n(n−1)/2)(n² − 1) and n(n−1)/2 + 1 in the last two
///   columns;
/// * row M = n(n−1) − d_min: s(k − s + 1) + 1 in the last column.
///
/// When small n makes two rules land on one cell, the cell is an overlap.
pub fn resolution_shape(n: u32) -> Result<ResolutionShape, ConjectureError> {
    let p = selection_params(n)?;
    let pd = n * n - n;
    let m = (n * n - 1) as u64;
    let last_row = n * (n - 1) - p.d_min;
    let mut shape = ResolutionShape {
        n,
        pd,
        last_row: last_row + 1,
        cells: BTreeMap::new(),
    };
    shape.claim(0, 0, ShapeCell::Count(1));
    shape.claim(1, 1, ShapeCell::Count(m));
    for (row, c) in first_betti_prediction(n)? {
        shape.claim(2, row, ShapeCell::Count(c));
    }
    for h in 2..n {
        for col in 3..(2 * h - 1) {
            shape.claim(col, h, ShapeCell::Product);
        }
        shape.claim(2 * h - 1, h, ShapeCell::Count(h as u64 * m));
        shape.claim(2 * h, h, ShapeCell::Count(h as u64 + 1));
    }
    if n >= 3 {
        for col in 3..pd.saturating_sub(1) {
            shape.claim(col, n - 1, ShapeCell::Unknown);
        }
    }
    let half = n * (n - 1) / 2;
    shape.claim(pd - 1, half, ShapeCell::Count(half as u64 * m));
    shape.claim(pd, half, ShapeCell::Count(half as u64 + 1));
    shape.claim(pd, last_row, ShapeCell::Count(p.count_min as u64));
    Ok(shape)
}

/// Outcome of comparing one numeric prediction with a table entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeComparison {
    pub col: u32,
    pub row: u32,
    pub predicted: String,
    pub observed: String,
    pub agrees: bool,
}

/// Compares the numeric cells of `shape` (including overlaps, which agree
/// when the observed count is at least every numeric claim) with `table`.
pub fn compare_shape(shape: &ResolutionShape, table: &GradedBettiTable) -> Vec<ShapeComparison> {
    let mut out = Vec::new();
    for (&(col, row), cell) in &shape.cells {
        let observed = table.at(col, row);
        let obs_str = match &observed {
            BettiEntry::Count(c) => c.to_string(),
            BettiEntry::Unknown(s) => s.clone(),
        };
        let agrees = match (cell, &observed) {
            (ShapeCell::Count(c), BettiEntry::Count(o)) => c == o,
            (ShapeCell::Overlap(v), BettiEntry::Count(o)) => v.iter().all(|x| match x {
                ShapeCell::Count(c) => o >= c,
                _ => true,
            }),
            (ShapeCell::Count(_), BettiEntry::Unknown(_)) => true,
            _ => continue,
        };
        out.push(ShapeComparison {
            col,
            row,
            predicted: cell.to_string(),
            observed: obs_str,
            agrees,
        });
    }
    out
}

/// A column of a candidate determinant: the diagonal of E, X^a or Y^b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PowerColumn {
    Identity,
    X(u32),
    Y(u32),
}

impl PowerColumn {
    pub fn bidegree(self) -> (u32, u32) {
        match self {
            PowerColumn::Identity => (0, 0),
            PowerColumn::X(a) => (a, 0),
            PowerColumn::Y(b) => (0, b),
        }
    }
}

impl fmt::Display for PowerColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PowerColumn::Identity => write!(f, "1_d"),
            PowerColumn::X(1) => write!(f, "X_d"),
            PowerColumn::Y(1) => write!(f, "Y_d"),
            PowerColumn::X(a) => write!(f, "X^{a}_d"),
            PowerColumn::Y(b) => write!(f, "Y^{b}_d"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct KnutsonCandidate<E> {
    pub columns: Vec<PowerColumn>,
    pub bidegree: (u32, u32),
    pub determinant: Polynomial<E>,
}

/// Nonzero determinants det[1_d, C₂, …, C_n] with distinct columns taken
/// from the diagonals of X, …, X^max_power, Y, …, Y^max_power.
pub fn knutson_candidates<F: Field>(
    sys: &CommutatorSystem<F>,
    max_power: u32,
) -> Vec<KnutsonCandidate<F::Elem>> {
    let ops = sys.ops();
    let n = sys.n();
    let mut pool: Vec<(PowerColumn, Vec<Polynomial<F::Elem>>)> = Vec::new();
    let mut xp = ops.identity(n);
    let mut yp = ops.identity(n);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for e in 1..=max_power {
        xp = ops.mul(&xp, sys.x()).expect("square");
        yp = ops.mul(&yp, sys.y()).expect("square");
        xs.push((PowerColumn::X(e), ops.diagonal(&xp)));
        ys.push((PowerColumn::Y(e), ops.diagonal(&yp)));
    }
    pool.extend(xs);
    pool.extend(ys);
    let ones = ops.diagonal(&ops.identity(n));
    let mut out = Vec::new();
    if n == 1 {
        return out;
    }
    for_each_subset(pool.len(), n - 1, &mut |sel| {
        let mut cols = vec![ones.clone()];
        let mut tags = vec![PowerColumn::Identity];
        for &i in sel {
            cols.push(pool[i].1.clone());
            tags.push(pool[i].0);
        }
        let m = GenericMatrix::from_columns(&cols).expect("square");
        let det = ops.det(&m);
        if det.is_zero() {
            return;
        }
        let bidegree = tags.iter().fold((0, 0), |acc, c| {
            let b = c.bidegree();
            (acc.0 + b.0, acc.1 + b.1)
        });
        out.push(KnutsonCandidate {
            columns: tags,
            bidegree,
            determinant: det,
        });
    });
    out.sort_by_key(|c| (c.bidegree.0 + c.bidegree.1, std::cmp::Reverse(c.bidegree.0)));
    out
}

/// Whether some choice of (0,0) and n − 1 distinct pure columns (a,0),
/// (0,b) with a, b ≥ 1 has total bidegree `target`. p distinct positive
/// integers can sum to A iff A ≥ p(p+1)/2 (and A = 0 when p = 0).
pub fn knutson_bidegree_feasible(n: u32, target: (u32, u32)) -> bool {
    if n == 0 {
        return false;
    }
    let fits = |p: u32, total: u32| {
        if p == 0 {
            total == 0
        } else {
            total >= p * (p + 1) / 2
        }
    };
    (0..n).any(|p| fits(p, target.0) && fits(n - 1 - p, target.1))
}
