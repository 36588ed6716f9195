//! Monomials (dense exponent vectors) and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

type Exps = SmallVec<[u8; 24]>;

/// A power product over a fixed variable universe.
///
/// Exponents are stored densely, one byte per variable; the total degree is
/// cached. Equality and hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
        }
    }

    pub fn var(nvars: usize, index: usize, exp: u8) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[index] = exp;
        m.deg = exp as u32;
        m
    }

    pub fn from_exps(exps: &[u8]) -> Self {
        Monomial {
            deg: exps.iter().map(|&e| e as u32).sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn exps(&self) -> &[u8] {
        &self.exps
    }

    #[inline]
    pub fn exp(&self, index: usize) -> u8 {
        self.exps[index]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Sum of `weights[i] * exp_i`.
    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u32 * w)
            .sum()
    }

    /// Indices and exponents of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow (>255)"))
            .collect();
        Monomial {
            exps,
            deg: self.deg + other.deg,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
            deg: self.deg - other.deg,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.max(b))
            .collect();
        Monomial {
            deg: exps.iter().map(|&e| e as u32).sum(),
            exps,
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.min(b))
            .collect();
        Monomial {
            deg: exps.iter().map(|&e| e as u32).sum(),
            exps,
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Copy with the exponent of `index` replaced.
    pub fn with_exp(&self, index: usize, exp: u8) -> Monomial {
        let mut m = self.clone();
        m.deg = m.deg - m.exps[index] as u32 + exp as u32;
        m.exps[index] = exp;
        m
    }

    /// Monomial in a larger universe (new variables get exponent zero).
    pub fn extend(&self, nvars: usize) -> Monomial {
        debug_assert!(nvars >= self.nvars());
        let mut exps = self.exps.clone();
        exps.resize(nvars, 0);
        Monomial {
            exps,
            deg: self.deg,
        }
    }

    /// Drop trailing variables; they must have exponent zero.
    pub fn truncate(&self, nvars: usize) -> Option<Monomial> {
        if self.exps[nvars..].iter().any(|&e| e > 0) {
            return None;
        }
        Some(Monomial {
            exps: SmallVec::from_slice(&self.exps[..nvars]),
            deg: self.deg,
        })
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial{:?}", self.exps.as_slice())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("monomials live in different universes ({0} vs {1} variables)")]
    UniverseMismatch(usize, usize),
    #[error("order is defined on {0} variables but monomial has {1}")]
    OrderMismatch(usize, usize),
    #[error("priority sequence is not a permutation of 0..{0}")]
    BadPriority(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Grevlex,
    Lex,
    /// The first `front` variables of the priority sequence form a block that
    /// is compared first (grevlex inside), then the rest by grevlex.
    BlockElimination {
        front: usize,
    },
}

/// A monomial order together with its variable priority sequence
/// (highest variable first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
    #[serde(skip)]
    identity: bool,
}

impl MonomialOrder {
    pub fn grevlex(nvars: usize) -> Self {
        Self::build(OrderKind::Grevlex, (0..nvars).collect())
    }

    pub fn lex(nvars: usize) -> Self {
        Self::build(OrderKind::Lex, (0..nvars).collect())
    }

    /// Elimination order with the variables `front` dominating; the remaining
    /// variables keep their index order.
    pub fn block_elimination(nvars: usize, front: &[usize]) -> Self {
        let mut priority: Vec<usize> = front.to_vec();
        priority.extend((0..nvars).filter(|v| !front.contains(v)));
        Self::build(OrderKind::BlockElimination { front: front.len() }, priority)
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Result<Self, OrderError> {
        let n = priority.len();
        let mut seen = vec![false; n];
        for &v in &priority {
            if v >= n || seen[v] {
                return Err(OrderError::BadPriority(n));
            }
            seen[v] = true;
        }
        if let OrderKind::BlockElimination { front } = kind {
            if front > n {
                return Err(OrderError::BadPriority(n));
            }
        }
        Ok(Self::build(kind, priority))
    }

    fn build(kind: OrderKind, priority: Vec<usize>) -> Self {
        let identity = priority.iter().enumerate().all(|(i, &v)| i == v);
        MonomialOrder {
            kind,
            priority,
            identity,
        }
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    /// Variables of the leading block of an elimination order.
    pub fn front_block(&self) -> &[usize] {
        match self.kind {
            OrderKind::BlockElimination { front } => &self.priority[..front],
            _ => &[],
        }
    }

    /// Short human-readable name recorded in reports.
    pub fn describe(&self) -> String {
        match self.kind {
            OrderKind::Grevlex => "grevlex".into(),
            OrderKind::Lex => "lex".into(),
            OrderKind::BlockElimination { front } => {
                format!("block-elimination({front} front vars, grevlex blocks)")
            }
        }
    }

    /// Checked comparison.
    pub fn try_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, OrderError> {
        if a.nvars() != b.nvars() {
            return Err(OrderError::UniverseMismatch(a.nvars(), b.nvars()));
        }
        if a.nvars() != self.nvars() {
            return Err(OrderError::OrderMismatch(self.nvars(), a.nvars()));
        }
        Ok(self.compare(a, b))
    }

    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Grevlex => {
                if a.deg != b.deg {
                    return a.deg.cmp(&b.deg);
                }
                if self.identity {
                    revlex_tail(a.exps(), b.exps())
                } else {
                    self.revlex_block(a, b, &self.priority)
                }
            }
            OrderKind::Lex => {
                for &v in &self.priority {
                    let (x, y) = (a.exps[v], b.exps[v]);
                    if x != y {
                        return x.cmp(&y);
                    }
                }
                Ordering::Equal
            }
            OrderKind::BlockElimination { front } => {
                let (head, tail) = self.priority.split_at(front);
                let da: u32 = head.iter().map(|&v| a.exps[v] as u32).sum();
                let db: u32 = head.iter().map(|&v| b.exps[v] as u32).sum();
                if da != db {
                    return da.cmp(&db);
                }
                let o = self.revlex_block(a, b, head);
                if o != Ordering::Equal {
                    return o;
                }
                let (ra, rb) = (a.deg - da, b.deg - db);
                if ra != rb {
                    return ra.cmp(&rb);
                }
                self.revlex_block(a, b, tail)
            }
        }
    }

    #[inline]
    fn revlex_block(&self, a: &Monomial, b: &Monomial, vars: &[usize]) -> Ordering {
        for &v in vars.iter().rev() {
            let (x, y) = (a.exps[v], b.exps[v]);
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(&x);
            }
        }
        Ordering::Equal
    }
}

#[inline]
fn revlex_tail(a: &[u8], b: &[u8]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u8]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn grevlex_square_beats_mixed() {
        // x0^2 vs x0*x1 with x0 highest
        let o = MonomialOrder::grevlex(3);
        assert_eq!(o.compare(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        // classic grevlex vs lex distinction: x0*x2^2 < x1^3 under grevlex
        assert_eq!(o.compare(&m(&[1, 0, 2]), &m(&[0, 3, 0])), Ordering::Less);
        let l = MonomialOrder::lex(3);
        assert_eq!(l.compare(&m(&[1, 0, 2]), &m(&[0, 3, 0])), Ordering::Greater);
    }

    #[test]
    fn reflexive() {
        for o in [
            MonomialOrder::grevlex(3),
            MonomialOrder::lex(3),
            MonomialOrder::block_elimination(3, &[2]),
        ] {
            assert_eq!(o.compare(&m(&[1, 2, 3]), &m(&[1, 2, 3])), Ordering::Equal);
        }
    }

    #[test]
    fn elimination_block_dominates() {
        // t (index 2) vs x0^5
        let o = MonomialOrder::block_elimination(3, &[2]);
        assert_eq!(o.compare(&m(&[0, 0, 1]), &m(&[5, 0, 0])), Ordering::Greater);
        assert_eq!(o.front_block(), &[2]);
    }

    #[test]
    fn mismatched_universe_is_an_error() {
        let o = MonomialOrder::grevlex(2);
        assert!(o.try_compare(&m(&[1, 0]), &m(&[1, 0, 0])).is_err());
        assert!(o.try_compare(&m(&[1, 0, 0]), &m(&[1, 0, 0])).is_err());
        assert!(MonomialOrder::with_priority(OrderKind::Lex, vec![0, 0]).is_err());
    }

    #[test]
    fn divisibility_helpers() {
        let a = m(&[2, 1, 0]);
        let b = m(&[1, 1, 0]);
        assert!(b.divides(&a));
        assert_eq!(a.div(&b), Some(m(&[1, 0, 0])));
        assert_eq!(b.div(&a), None);
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[2, 3, 1]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 2, 1])));
        assert_eq!(a.with_exp(2, 4).degree(), 7);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u8..4, 4).prop_map(|e| Monomial::from_exps(&e))
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::grevlex(4),
            MonomialOrder::lex(4),
            MonomialOrder::block_elimination(4, &[3]),
            MonomialOrder::with_priority(OrderKind::Grevlex, vec![2, 0, 3, 1]).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn orders_are_total_multiplicative_well_orders(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            let one = Monomial::one(4);
            for o in orders() {
                let ab = o.compare(&a, &b);
                prop_assert_eq!(ab, o.compare(&b, &a).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                if ab == Ordering::Less && o.compare(&b, &c) == Ordering::Less {
                    prop_assert_eq!(o.compare(&a, &c), Ordering::Less);
                }
                prop_assert_eq!(o.compare(&a.mul(&c), &b.mul(&c)), ab);
                prop_assert_ne!(o.compare(&one, &a), Ordering::Greater);
            }
        }
    }
}
