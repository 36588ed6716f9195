//! Hilbert series of monomial ideals, Betti tables, Euler-characteristic
//! constraints and the canonical-module splice.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::Monomial;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HilbertError {
    #[error("known entries contradict the Hilbert series in degree {degree}: {lhs} ≠ {rhs}")]
    Inconsistent { degree: u32, lhs: i64, rhs: i64 },
    #[error("monomials have {got} variables, expected {expected}")]
    Universe { got: usize, expected: usize },
}

/// `numerator(t) / (1 − t)^nvars`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub numerator: Vec<i64>,
    pub nvars: usize,
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.len() > 1 && p.last() == Some(&0) {
        p.pop();
    }
    if p.is_empty() {
        p.push(0);
    }
    p
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

/// `1 − t^d`.
fn one_minus_power(d: u32) -> Vec<i64> {
    let mut p = vec![0i64; d as usize + 1];
    p[0] += 1;
    p[d as usize] -= 1;
    p
}

impl HilbertSeries {
    pub fn new(numerator: Vec<i64>, nvars: usize) -> Self {
        HilbertSeries {
            numerator: trim(numerator),
            nvars,
        }
    }

    /// Coefficient of t^j in the numerator.
    pub fn coefficient(&self, j: u32) -> i64 {
        self.numerator.get(j as usize).copied().unwrap_or(0)
    }

    /// Numerator with every factor (1 − t) cancelled against the
    /// denominator: `(h, m)` with series = h / (1 − t)^m and h(1) ≠ 0.
    pub fn reduced(&self) -> (Vec<i64>, usize) {
        let mut h = self.numerator.clone();
        let mut m = self.nvars;
        while m > 0 && h.iter().sum::<i64>() == 0 && h.iter().any(|&c| c != 0) {
            // synthetic division by (1 − t): q_k = Σ_{i ≤ k} h_i
            let mut q = Vec::with_capacity(h.len() - 1);
            let mut acc = 0;
            for &c in &h[..h.len() - 1] {
                acc += c;
                q.push(acc);
            }
            h = trim(q);
            m -= 1;
        }
        (h, m)
    }

    /// Krull dimension of the quotient.
    pub fn dimension(&self) -> usize {
        if self.numerator.iter().all(|&c| c == 0) {
            return 0;
        }
        self.reduced().1
    }

    /// Degree (multiplicity) of the quotient.
    pub fn multiplicity(&self) -> i64 {
        self.reduced().0.iter().sum()
    }

    /// Hilbert function values dim_k (S/I)_d for d = 0..=upto.
    pub fn hilbert_function(&self, upto: u32) -> Vec<i64> {
        let len = upto as usize + 1;
        let mut series: Vec<i64> = (0..len).map(|d| self.coefficient(d as u32)).collect();
        for _ in 0..self.nvars {
            for d in 1..len {
                series[d] += series[d - 1];
            }
        }
        series
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "(")?;
        for (j, &c) in self.numerator.iter().enumerate() {
            if c == 0 && !(first && j + 1 == self.numerator.len()) {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            let a = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match j {
                0 => write!(f, "{a}")?,
                1 if a == 1 => write!(f, "t")?,
                1 => write!(f, "{a}t")?,
                _ if a == 1 => write!(f, "t^{j}")?,
                _ => write!(f, "{a}t^{j}")?,
            }
            first = false;
        }
        write!(f, ")/(1-t)^{}", self.nvars)
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn numerator_rec(gens: Vec<Monomial>, nvars: usize) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    // pivot on the variable occurring in the most generators
    let mut freq = vec![0usize; nvars];
    for m in &gens {
        for (v, _) in m.support() {
            freq[v] += 1;
        }
    }
    let (pivot, count) = freq
        .iter()
        .enumerate()
        .max_by_key(|&(v, &c)| (c, std::cmp::Reverse(v)))
        .map(|(v, &c)| (v, c))
        .expect("nonempty universe");
    if count <= 1 {
        // pairwise coprime generators: a complete intersection
        return gens.iter().fold(vec![1], |acc, m| {
            poly_mul(&acc, &one_minus_power(m.degree()))
        });
    }
    let x = Monomial::var(nvars, pivot, 1);
    // N(M) = N(M + (x)) + t · N(M : x)
    let mut plus: Vec<Monomial> = gens.iter().filter(|m| m.exp(pivot) == 0).cloned().collect();
    plus.push(x.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| m.div(&x).unwrap_or_else(|| m.clone()))
        .collect();
    let a = numerator_rec(minimalize(plus), nvars);
    let b = numerator_rec(minimalize(colon), nvars);
    let mut tb = vec![0i64];
    tb.extend(b);
    poly_add(&a, &tb)
}

/// Hilbert series of S / (lead) for a monomial ideal in `nvars` standard
/// graded variables.
pub fn hilbert_numerator(lead: &[Monomial], nvars: usize) -> Result<HilbertSeries, HilbertError> {
    for m in lead {
        if m.nvars() != nvars {
            return Err(HilbertError::Universe {
                got: m.nvars(),
                expected: nvars,
            });
        }
    }
    let num = numerator_rec(minimalize(lead.to_vec()), nvars);
    Ok(HilbertSeries::new(num, nvars))
}

/// A Betti table entry: a count or a named unknown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BettiEntry {
    Count(u64),
    Unknown(String),
}

/// β_{i,j} (homological degree i, internal degree j). Absent entries are 0.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedBettiTable {
    entries: BTreeMap<(u32, u32), BettiEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiCell {
    pub i: u32,
    pub j: u32,
    pub count: BettiEntry,
}

impl GradedBettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_cells(cells: &[BettiCell]) -> Self {
        let mut t = Self::new();
        for c in cells {
            t.set(c.i, c.j, c.count.clone());
        }
        t
    }

    pub fn cells(&self) -> Vec<BettiCell> {
        self.entries
            .iter()
            .map(|(&(i, j), e)| BettiCell {
                i,
                j,
                count: e.clone(),
            })
            .collect()
    }

    /// Zero counts are not stored.
    pub fn set(&mut self, i: u32, j: u32, e: BettiEntry) {
        if e == BettiEntry::Count(0) {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), e);
        }
    }

    pub fn set_count(&mut self, i: u32, j: u32, c: u64) {
        self.set(i, j, BettiEntry::Count(c));
    }

    pub fn get(&self, i: u32, j: u32) -> BettiEntry {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or(BettiEntry::Count(0))
    }

    /// Entry in Macaulay layout: column i, row r = j − i.
    pub fn at(&self, col: u32, row: u32) -> BettiEntry {
        self.get(col, col + row)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &BettiEntry)> {
        self.entries.iter().map(|(&(i, j), e)| (i, j, e))
    }

    pub fn max_homological(&self) -> Option<u32> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// Column total, and whether it is only a lower bound (unknowns present).
    pub fn total(&self, i: u32) -> (u64, bool) {
        let mut sum = 0;
        let mut lower = false;
        for (&(ii, _), e) in &self.entries {
            if ii == i {
                match e {
                    BettiEntry::Count(c) => sum += c,
                    BettiEntry::Unknown(_) => lower = true,
                }
            }
        }
        (sum, lower)
    }

    /// Macaulay-style rendering: `total:` line, then one line per row.
    pub fn render(&self) -> String {
        let Some(pd) = self.max_homological() else {
            return "total: 0\n".into();
        };
        let max_row = self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0);
        let min_row = self.entries.keys().map(|&(i, j)| j - i).min().unwrap_or(0);
        let mut lines: Vec<Vec<String>> = Vec::new();
        let mut header = vec!["total:".to_string()];
        for i in 0..=pd {
            let (s, lower) = self.total(i);
            header.push(if lower {
                format!("{s}+")
            } else {
                s.to_string()
            });
        }
        lines.push(header);
        for r in min_row..=max_row {
            let mut line = vec![format!("{r}:")];
            for i in 0..=pd {
                line.push(match self.at(i, r) {
                    BettiEntry::Count(0) => ".".into(),
                    BettiEntry::Count(c) => c.to_string(),
                    BettiEntry::Unknown(s) => s,
                });
            }
            lines.push(line);
        }
        let ncols = pd as usize + 2;
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

impl fmt::Display for GradedBettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Σᵢ (−1)ⁱ β_{i,j} = h_j for one internal degree j, with the unknowns moved
/// to the left: Σ sign·unknown = rhs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerConstraint {
    pub degree: u32,
    pub unknowns: Vec<(i64, String)>,
    pub rhs: i64,
}

impl fmt::Display for EulerConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (s, name)) in self.unknowns.iter().enumerate() {
            match (k, *s < 0) {
                (0, true) => write!(f, "-{name}")?,
                (0, false) => write!(f, "{name}")?,
                (_, true) => write!(f, " - {name}")?,
                (_, false) => write!(f, " + {name}")?,
            }
        }
        write!(f, " = {}", self.rhs)
    }
}

/// Checks every internal degree of `table` against `h`. Degrees without
/// unknowns must match exactly (otherwise an error); the remaining relations
/// among unknowns are returned.
pub fn euler_constraints(
    table: &GradedBettiTable,
    h: &HilbertSeries,
) -> Result<Vec<EulerConstraint>, HilbertError> {
    let max_j = table
        .iter()
        .map(|(_, j, _)| j)
        .max()
        .unwrap_or(0)
        .max(h.numerator.len().saturating_sub(1) as u32);
    let mut out = Vec::new();
    for j in 0..=max_j {
        let mut known = 0i64;
        let mut unknowns = Vec::new();
        for (i, jj, e) in table.iter() {
            if jj != j {
                continue;
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            match e {
                BettiEntry::Count(c) => known += sign * *c as i64,
                BettiEntry::Unknown(name) => unknowns.push((sign, name.clone())),
            }
        }
        let target = h.coefficient(j);
        if unknowns.is_empty() {
            if known != target {
                return Err(HilbertError::Inconsistent {
                    degree: j,
                    lhs: known,
                    rhs: target,
                });
            }
        } else {
            out.push(EulerConstraint {
                degree: j,
                unknowns,
                rhs: target - known,
            });
        }
    }
    Ok(out)
}

/// Tail of the resolution of S/I from the Betti table of the canonical
/// module: β_{codim−i, σ−j}(S/I) = β_{i,j}(ω).
pub fn splice_tail(canonical: &GradedBettiTable, codim: u32, sigma: u32) -> GradedBettiTable {
    let mut out = GradedBettiTable::new();
    for (i, j, e) in canonical.iter() {
        if i <= codim && j <= sigma {
            out.set(codim - i, sigma - j, e.clone());
        }
    }
    out
}

/// σ = 2(n² − n), the total degree of the regular sequence of n² − n quadrics.
pub fn splice_twist(n: u32) -> u32 {
    2 * (n * n - n)
}
