//! Sparse multivariate polynomials over a [`Field`], and the ring that owns
//! their variable layout and monomial order.
//!
//! Variables are laid out as `x_1_1 .. x_n_n` (row-major), then
//! `y_1_1 .. y_n_n`, then any auxiliary variables. Terms are kept strictly
//! decreasing in the ring's order with no zero coefficients; the zero
//! polynomial is the empty term list.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::field::{Field, FieldError, FieldTag};
use super::monomial::{Monomial, MonomialOrder, OrderError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("rings differ: {0}")]
    RingMismatch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("polynomial is not bihomogeneous")]
    NotBihomogeneous,
    #[error("polynomial involves auxiliary variables")]
    AuxVariable,
}

/// Which block a variable belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VarId {
    /// `x_row_col`, 1-based.
    X(usize, usize),
    /// `y_row_col`, 1-based.
    Y(usize, usize),
    /// Auxiliary variable by position among the auxiliaries (0-based).
    Aux(usize),
}

/// An auxiliary variable (elimination variable or module component marker).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxVar {
    pub name: String,
    /// Weight used for weighted degrees (the x/y variables have weight 1).
    pub weight: u32,
}

impl AuxVar {
    pub fn new(name: impl Into<String>, weight: u32) -> Self {
        AuxVar {
            name: name.into(),
            weight,
        }
    }
}

/// Variable universe of a ring of size n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarLayout {
    n: usize,
    aux: Vec<AuxVar>,
    weights: Vec<u32>,
}

impl VarLayout {
    pub fn new(n: usize, aux: Vec<AuxVar>) -> Self {
        let mut weights = vec![1; 2 * n * n];
        weights.extend(aux.iter().map(|a| a.weight));
        VarLayout { n, aux, weights }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        2 * self.n * self.n + self.aux.len()
    }

    pub fn aux(&self) -> &[AuxVar] {
        &self.aux
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index(&self, v: VarId) -> usize {
        let n = self.n;
        match v {
            VarId::X(i, j) => {
                assert!(
                    (1..=n).contains(&i) && (1..=n).contains(&j),
                    "x_{i}_{j} out of range"
                );
                (i - 1) * n + (j - 1)
            }
            VarId::Y(i, j) => {
                assert!(
                    (1..=n).contains(&i) && (1..=n).contains(&j),
                    "y_{i}_{j} out of range"
                );
                n * n + (i - 1) * n + (j - 1)
            }
            VarId::Aux(k) => {
                assert!(k < self.aux.len(), "aux variable {k} out of range");
                2 * n * n + k
            }
        }
    }

    pub fn var_id(&self, index: usize) -> VarId {
        let nn = self.n * self.n;
        if index < nn {
            VarId::X(index / self.n + 1, index % self.n + 1)
        } else if index < 2 * nn {
            let k = index - nn;
            VarId::Y(k / self.n + 1, k % self.n + 1)
        } else {
            VarId::Aux(index - 2 * nn)
        }
    }

    pub fn name(&self, index: usize) -> String {
        match self.var_id(index) {
            VarId::X(i, j) => format!("x_{i}_{j}"),
            VarId::Y(i, j) => format!("y_{i}_{j}"),
            VarId::Aux(k) => self.aux[k].name.clone(),
        }
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        if let Some(k) = self.aux.iter().position(|a| a.name == name) {
            return Some(2 * self.n * self.n + k);
        }
        let mut parts = name.split('_');
        let block = parts.next()?;
        let i: usize = parts.next()?.parse().ok()?;
        let j: usize = parts.next()?.parse().ok()?;
        if parts.next().is_some() || !(1..=self.n).contains(&i) || !(1..=self.n).contains(&j) {
            return None;
        }
        match block {
            "x" => Some(self.index(VarId::X(i, j))),
            "y" => Some(self.index(VarId::Y(i, j))),
            _ => None,
        }
    }
}

/// One term: coefficient times monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct Term<E> {
    pub coeff: E,
    pub mon: Monomial,
}

/// A polynomial as a strictly decreasing list of terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<E> {
    terms: Vec<Term<E>>,
}

impl<E> Polynomial<E> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term<E>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<E>> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term<E>> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mon)
    }

    /// Maximal total degree of a term (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mon.degree()).max().unwrap_or(0)
    }

    /// Trusted constructor: terms must already be canonical.
    pub(crate) fn from_sorted_terms(terms: Vec<Term<E>>) -> Self {
        Polynomial { terms }
    }
}

/// Polynomial ring k[x, y, aux] with a fixed monomial order.
#[derive(Debug, Clone)]
pub struct PolyRing<F: Field> {
    field: F,
    layout: Arc<VarLayout>,
    order: Arc<MonomialOrder>,
}

impl<F: Field> PartialEq for PolyRing<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.layout == other.layout && self.order == other.order
    }
}

impl<F: Field> PolyRing<F> {
    /// Ring on the 2n² matrix entries with the default grevlex order
    /// (x_1_1 > … > x_n_n > y_1_1 > … > y_n_n).
    pub fn new(field: F, n: usize) -> Self {
        Self::with_aux(field, n, Vec::new())
    }

    /// Ring with auxiliary variables appended after the x/y block; order is
    /// grevlex on all variables.
    pub fn with_aux(field: F, n: usize, aux: Vec<AuxVar>) -> Self {
        let layout = VarLayout::new(n, aux);
        let order = MonomialOrder::grevlex(layout.nvars());
        PolyRing {
            field,
            layout: Arc::new(layout),
            order: Arc::new(order),
        }
    }

    /// Same variables and field, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Self, PolyError> {
        if order.nvars() != self.nvars() {
            return Err(OrderError::OrderMismatch(order.nvars(), self.nvars()).into());
        }
        Ok(PolyRing {
            field: self.field.clone(),
            layout: self.layout.clone(),
            order: Arc::new(order),
        })
    }

    /// Same field and n, with the given auxiliary variables and an order
    /// that eliminates all of them (aux block first).
    pub fn extend_with_aux(&self, aux: Vec<AuxVar>) -> Self {
        let layout = VarLayout::new(self.n(), aux);
        let front: Vec<usize> = (2 * self.n() * self.n()..layout.nvars()).collect();
        let order = MonomialOrder::block_elimination(layout.nvars(), &front);
        PolyRing {
            field: self.field.clone(),
            layout: Arc::new(layout),
            order: Arc::new(order),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn layout(&self) -> &VarLayout {
        &self.layout
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn n(&self) -> usize {
        self.layout.n()
    }

    pub fn nvars(&self) -> usize {
        self.layout.nvars()
    }

    pub fn weights(&self) -> &[u32] {
        self.layout.weights()
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    pub fn zero(&self) -> Polynomial<F::Elem> {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Polynomial<F::Elem> {
        self.term(c, Monomial::one(self.nvars()))
    }

    pub fn from_int(&self, v: i64) -> Polynomial<F::Elem> {
        self.constant(self.field.from_i64(v))
    }

    pub fn term(&self, c: F::Elem, mon: Monomial) -> Polynomial<F::Elem> {
        if self.field.is_zero(&c) {
            Polynomial::zero()
        } else {
            Polynomial::from_sorted_terms(vec![Term { coeff: c, mon }])
        }
    }

    pub fn var(&self, v: VarId) -> Polynomial<F::Elem> {
        self.var_index(self.layout.index(v))
    }

    pub fn var_index(&self, index: usize) -> Polynomial<F::Elem> {
        self.term(self.field.one(), Monomial::var(self.nvars(), index, 1))
    }

    pub fn x(&self, i: usize, j: usize) -> Polynomial<F::Elem> {
        self.var(VarId::X(i, j))
    }

    pub fn y(&self, i: usize, j: usize) -> Polynomial<F::Elem> {
        self.var(VarId::Y(i, j))
    }

    /// Canonical polynomial from arbitrary (coefficient, monomial) pairs:
    /// sorts, combines like terms, drops zeros.
    pub fn from_terms(&self, mut terms: Vec<Term<F::Elem>>) -> Polynomial<F::Elem> {
        terms.sort_by(|a, b| self.cmp(&b.mon, &a.mon));
        let mut out: Vec<Term<F::Elem>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mon == t.mon => {
                    last.coeff = self.field.add(&last.coeff, &t.coeff);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !self.field.is_zero(&t.coeff));
        Polynomial::from_sorted_terms(out)
    }

    /// `f + c * m * g` in one merge pass.
    pub fn add_scaled(
        &self,
        f: &Polynomial<F::Elem>,
        c: &F::Elem,
        m: &Monomial,
        g: &Polynomial<F::Elem>,
    ) -> Polynomial<F::Elem> {
        if self.field.is_zero(c) || g.is_zero() {
            return f.clone();
        }
        let fld = &self.field;
        let mut out = Vec::with_capacity(f.len() + g.len());
        let mut a = f.terms.iter().peekable();
        let mut b = g
            .terms
            .iter()
            .map(|t| (fld.mul(c, &t.coeff), t.mon.mul(m)))
            .peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => self.cmp(&x.mon, &y.1),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let (coeff, mon) = b.next().unwrap();
                    out.push(Term { coeff, mon });
                }
                Ordering::Equal => {
                    let x = a.next().unwrap();
                    let (coeff, _) = b.next().unwrap();
                    let s = fld.add(&x.coeff, &coeff);
                    if !fld.is_zero(&s) {
                        out.push(Term {
                            coeff: s,
                            mon: x.mon.clone(),
                        });
                    }
                }
            }
        }
        Polynomial::from_sorted_terms(out)
    }

    pub fn add(&self, f: &Polynomial<F::Elem>, g: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        self.add_scaled(f, &self.field.one(), &Monomial::one(self.nvars()), g)
    }

    pub fn sub(&self, f: &Polynomial<F::Elem>, g: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        let m1 = self.field.neg(&self.field.one());
        self.add_scaled(f, &m1, &Monomial::one(self.nvars()), g)
    }

    pub fn neg(&self, f: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        Polynomial::from_sorted_terms(
            f.terms
                .iter()
                .map(|t| Term {
                    coeff: self.field.neg(&t.coeff),
                    mon: t.mon.clone(),
                })
                .collect(),
        )
    }

    pub fn scale(&self, f: &Polynomial<F::Elem>, c: &F::Elem) -> Polynomial<F::Elem> {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial::from_sorted_terms(
            f.terms
                .iter()
                .map(|t| Term {
                    coeff: self.field.mul(c, &t.coeff),
                    mon: t.mon.clone(),
                })
                .collect(),
        )
    }

    /// `c * m * f`; order is preserved because monomial orders are
    /// multiplicative.
    pub fn mul_term(
        &self,
        f: &Polynomial<F::Elem>,
        c: &F::Elem,
        m: &Monomial,
    ) -> Polynomial<F::Elem> {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial::from_sorted_terms(
            f.terms
                .iter()
                .map(|t| Term {
                    coeff: self.field.mul(c, &t.coeff),
                    mon: t.mon.mul(m),
                })
                .collect(),
        )
    }

    pub fn mul(&self, f: &Polynomial<F::Elem>, g: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        if f.is_zero() || g.is_zero() {
            return Polynomial::zero();
        }
        let (small, big) = if f.len() <= g.len() { (f, g) } else { (g, f) };
        let mut terms = Vec::with_capacity(small.len() * big.len());
        for s in &small.terms {
            for b in &big.terms {
                terms.push(Term {
                    coeff: self.field.mul(&s.coeff, &b.coeff),
                    mon: s.mon.mul(&b.mon),
                });
            }
        }
        self.from_terms(terms)
    }

    pub fn pow(&self, f: &Polynomial<F::Elem>, e: u32) -> Polynomial<F::Elem> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn sum<'a, I>(&self, it: I) -> Polynomial<F::Elem>
    where
        I: IntoIterator<Item = &'a Polynomial<F::Elem>>,
    {
        let mut terms = Vec::new();
        for p in it {
            terms.extend(p.terms.iter().cloned());
        }
        self.from_terms(terms)
    }

    /// Divide by the leading coefficient.
    pub fn make_monic(&self, f: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        match f.lead() {
            None => Polynomial::zero(),
            Some(t) if self.field.is_one(&t.coeff) => f.clone(),
            Some(t) => {
                let inv = self
                    .field
                    .inv(&t.coeff)
                    .expect("nonzero leading coefficient");
                self.scale(f, &inv)
            }
        }
    }

    /// Exact quotient `f / g` when `g` divides `f`; `None` otherwise.
    pub fn exact_div(
        &self,
        f: &Polynomial<F::Elem>,
        g: &Polynomial<F::Elem>,
    ) -> Option<Polynomial<F::Elem>> {
        let (q, r) = self.reduce(f, std::slice::from_ref(g));
        if r.is_zero() {
            q.into_iter().next()
        } else {
            None
        }
    }

    /// Multivariate division of `f` by the list `divisors`.
    ///
    /// Returns `(quotients, remainder)` with `f = Σ qᵢ·gᵢ + r` and no term of
    /// `r` divisible by a leading monomial of a divisor. The first divisor (in
    /// list order) whose leading monomial divides the current term is used.
    pub fn reduce(
        &self,
        f: &Polynomial<F::Elem>,
        divisors: &[Polynomial<F::Elem>],
    ) -> (Vec<Polynomial<F::Elem>>, Polynomial<F::Elem>) {
        let fld = &self.field;
        let inv_lc: Vec<Option<F::Elem>> = divisors
            .iter()
            .map(|g| g.lead().and_then(|t| fld.inv(&t.coeff)))
            .collect();
        let mut quot: Vec<Vec<Term<F::Elem>>> = vec![Vec::new(); divisors.len()];
        let mut rem: Vec<Term<F::Elem>> = Vec::new();
        let mut p = f.clone();
        while let Some(lt) = p.terms.first().cloned() {
            let hit = divisors.iter().enumerate().find_map(|(i, g)| {
                let glt = g.lead()?;
                lt.mon.div(&glt.mon).map(|q| (i, q))
            });
            match hit {
                Some((i, qm)) => {
                    let c = fld.mul(&lt.coeff, inv_lc[i].as_ref().expect("nonzero divisor"));
                    p = self.add_scaled(&p, &fld.neg(&c), &qm, &divisors[i]);
                    quot[i].push(Term { coeff: c, mon: qm });
                }
                None => {
                    rem.push(lt);
                    p.terms.remove(0);
                }
            }
        }
        let quotients = quot.into_iter().map(|ts| self.from_terms(ts)).collect();
        (quotients, Polynomial::from_sorted_terms(rem))
    }

    /// (x-degree, y-degree) of a monomial, ignoring auxiliary variables.
    pub fn monomial_bidegree(&self, m: &Monomial) -> (u32, u32) {
        let nn = self.n() * self.n();
        let e = m.exps();
        let dx = e[..nn].iter().map(|&v| v as u32).sum();
        let dy = e[nn..2 * nn].iter().map(|&v| v as u32).sum();
        (dx, dy)
    }

    /// Common bidegree of all terms; zero polynomial reports `(0, 0)`.
    pub fn bidegree_of(&self, f: &Polynomial<F::Elem>) -> Result<(u32, u32), PolyError> {
        let nn2 = 2 * self.n() * self.n();
        let mut bd = None;
        for t in &f.terms {
            if t.mon.exps()[nn2..].iter().any(|&e| e > 0) {
                return Err(PolyError::AuxVariable);
            }
            let b = self.monomial_bidegree(&t.mon);
            match bd {
                None => bd = Some(b),
                Some(prev) if prev != b => return Err(PolyError::NotBihomogeneous),
                _ => {}
            }
        }
        Ok(bd.unwrap_or((0, 0)))
    }

    pub fn weighted_degree(&self, m: &Monomial) -> u32 {
        m.weighted_degree(self.weights())
    }

    /// `Some(d)` when every term has weighted degree `d`.
    pub fn homogeneous_degree(&self, f: &Polynomial<F::Elem>) -> Option<u32> {
        let mut it = f.terms.iter().map(|t| self.weighted_degree(&t.mon));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Move a polynomial from another ring over the same field and n. Aux
    /// variables are matched by position; extra aux variables in the target
    /// receive exponent zero.
    pub fn import(
        &self,
        src: &PolyRing<F>,
        f: &Polynomial<F::Elem>,
    ) -> Result<Polynomial<F::Elem>, PolyError> {
        if self.field.tag() != src.field.tag() {
            return Err(FieldError::Mismatch(self.field.tag(), src.field.tag()).into());
        }
        if self.n() != src.n() {
            return Err(PolyError::RingMismatch(format!(
                "n = {} vs n = {}",
                self.n(),
                src.n()
            )));
        }
        let nv = self.nvars();
        let mut terms = Vec::with_capacity(f.len());
        for t in &f.terms {
            let mon = if src.nvars() <= nv {
                t.mon.extend(nv)
            } else {
                t.mon.truncate(nv).ok_or_else(|| {
                    PolyError::RingMismatch("term uses a variable absent from the target".into())
                })?
            };
            terms.push(Term {
                coeff: t.coeff.clone(),
                mon,
            });
        }
        Ok(self.from_terms(terms))
    }

    /// Substitute polynomials (living in `target`) for every variable.
    pub fn substitute<G: Field>(
        &self,
        f: &Polynomial<F::Elem>,
        target: &PolyRing<G>,
        values: &[Polynomial<G::Elem>],
        coeff_map: impl Fn(&F::Elem) -> G::Elem,
    ) -> Polynomial<G::Elem> {
        assert_eq!(values.len(), self.nvars(), "one value per variable");
        let mut acc = target.zero();
        for t in &f.terms {
            let mut prod = target.constant(coeff_map(&t.coeff));
            for (i, e) in t.mon.support() {
                prod = target.mul(&prod, &target.pow(&values[i], e as u32));
            }
            acc = target.add(&acc, &prod);
        }
        acc
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .support()
            .map(|(i, e)| {
                let name = self.layout.name(i);
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        parts.join("*")
    }

    /// Text form: terms joined by ` + ` / ` - `, each `c*v^e*…` with the
    /// coefficient omitted when it is 1.
    pub fn format(&self, f: &Polynomial<F::Elem>) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let fld = &self.field;
        let mut out = String::new();
        for (k, t) in f.terms.iter().enumerate() {
            let neg = fld.is_negative(&t.coeff);
            let abs = if neg {
                fld.neg(&t.coeff)
            } else {
                t.coeff.clone()
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mon = self.format_monomial(&t.mon);
            if mon.is_empty() {
                out.push_str(&fld.format(&abs));
            } else if fld.is_one(&abs) {
                out.push_str(&mon);
            } else {
                out.push_str(&fld.format(&abs));
                out.push('*');
                out.push_str(&mon);
            }
        }
        out
    }

    /// Parse the text format produced by [`PolyRing::format`]; whitespace is
    /// ignored and coefficients may be integers or fractions `p/q`.
    pub fn parse(&self, s: &str) -> Result<Polynomial<F::Elem>, PolyError> {
        super::parse::parse_poly(self, s)
    }

    pub fn tag(&self) -> FieldTag {
        self.field.tag()
    }
}

/// Display adaptor pairing a polynomial with its ring.
pub struct Show<'a, F: Field>(pub &'a PolyRing<F>, pub &'a Polynomial<F::Elem>);

impl<F: Field> fmt::Display for Show<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format(self.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn q2() -> PolyRing<Rationals> {
        PolyRing::new(Rationals, 2)
    }

    #[test]
    fn layout_is_row_major_x_then_y() {
        let r = q2();
        let l = r.layout();
        assert_eq!(l.index(VarId::X(1, 2)), 1);
        assert_eq!(l.index(VarId::X(2, 1)), 2);
        assert_eq!(l.index(VarId::Y(1, 1)), 4);
        assert_eq!(l.name(7), "y_2_2");
        assert_eq!(l.lookup("x_2_1"), Some(2));
        assert_eq!(l.lookup("x_3_1"), None);
        assert_eq!(l.nvars(), 8);
    }

    #[test]
    fn arithmetic_examples() {
        let r = q2();
        let x = r.x(1, 1);
        let y = r.y(1, 1);
        let s = r.add(&x, &y);
        assert!(r.sub(&s, &s).is_zero());
        // scalars commute
        assert!(r.sub(&r.mul(&x, &y), &r.mul(&y, &x)).is_zero());
        let lhs = r.mul(&r.add(&x, &r.one()), &r.sub(&x, &r.one()));
        assert_eq!(r.format(&lhs), "x_1_1^2 - 1");
    }

    #[test]
    fn reduce_examples() {
        let r = q2();
        let x = r.x(1, 1);
        let y = r.y(1, 1);
        let g = r.add(&r.mul(&x, &y), &r.x(1, 2));
        let (q, rem) = r.reduce(&g, std::slice::from_ref(&g));
        assert!(rem.is_zero());
        assert_eq!(q[0], r.one());
        let (_, rem) = r.reduce(&r.mul(&x, &x), std::slice::from_ref(&x));
        assert!(rem.is_zero());
        let f = r.add(&r.mul(&x, &y), &r.one());
        let (q, rem) = r.reduce(&f, std::slice::from_ref(&x));
        assert_eq!(rem, r.one());
        assert_eq!(q[0], y);
    }

    #[test]
    fn bidegree_examples() {
        let r = q2();
        let f = r.sub(
            &r.mul(&r.x(1, 2), &r.y(2, 1)),
            &r.mul(&r.x(2, 1), &r.y(1, 2)),
        );
        assert_eq!(r.bidegree_of(&f).unwrap(), (1, 1));
        let g = r.add(&r.x(1, 1), &r.y(1, 1));
        assert!(matches!(
            r.bidegree_of(&g),
            Err(PolyError::NotBihomogeneous)
        ));
        let t = r.extend_with_aux(vec![AuxVar::new("t_1", 0)]);
        assert!(matches!(
            t.bidegree_of(&t.var(VarId::Aux(0))),
            Err(PolyError::AuxVariable)
        ));
    }

    #[test]
    fn import_checks_field() {
        let a = PolyRing::new(PrimeField::new(7).unwrap(), 2);
        let b = PolyRing::new(PrimeField::new(11).unwrap(), 2);
        assert!(a.import(&b, &b.x(1, 1)).is_err());
        let t = a.extend_with_aux(vec![AuxVar::new("t_1", 0)]);
        let f = t.import(&a, &a.x(2, 2)).unwrap();
        assert_eq!(t.format(&f), "x_2_2");
        assert!(a.import(&t, &t.var(VarId::Aux(0))).is_err());
    }

    #[test]
    fn exact_division() {
        let r = q2();
        let f = r.add(&r.x(1, 1), &r.y(2, 2));
        let g = r.sub(&r.x(1, 2), &r.one());
        let p = r.mul(&f, &g);
        assert_eq!(r.exact_div(&p, &g), Some(f.clone()));
        assert_eq!(r.exact_div(&r.add(&p, &r.one()), &g), None);
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial<u32>> {
        let ring = PolyRing::new(PrimeField::new(101).unwrap(), 2);
        proptest::collection::vec((0u32..101, proptest::collection::vec(0u8..3, 8)), 0..5).prop_map(
            move |ts| {
                ring.from_terms(
                    ts.into_iter()
                        .map(|(c, e)| Term {
                            coeff: c,
                            mon: Monomial::from_exps(&e),
                        })
                        .collect(),
                )
            },
        )
    }

    fn is_canonical(r: &PolyRing<PrimeField>, f: &Polynomial<u32>) -> bool {
        f.terms()
            .windows(2)
            .all(|w| r.cmp(&w[0].mon, &w[1].mon) == Ordering::Greater)
            && f.terms().iter().all(|t| t.coeff != 0)
    }

    proptest! {
        #[test]
        fn ring_axioms(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            let r = PolyRing::new(PrimeField::new(101).unwrap(), 2);
            let lhs = r.mul(&r.add(&f, &g), &h);
            let rhs = r.add(&r.mul(&f, &h), &r.mul(&g, &h));
            prop_assert!(is_canonical(&r, &lhs));
            prop_assert_eq!(&lhs, &rhs);
            prop_assert_eq!(r.mul(&f, &g), r.mul(&g, &f));
            prop_assert_eq!(r.mul(&r.mul(&f, &g), &h), r.mul(&f, &r.mul(&g, &h)));
        }

        #[test]
        fn remainder_is_fixed_point(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            let r = PolyRing::new(PrimeField::new(101).unwrap(), 2);
            let divs: Vec<_> = [g, h].into_iter().filter(|p| !p.is_zero()).collect();
            prop_assume!(!divs.is_empty());
            let (q, rem) = r.reduce(&f, &divs);
            // f = Σ q g + r
            let mut back = rem.clone();
            for (qi, gi) in q.iter().zip(&divs) {
                back = r.add(&back, &r.mul(qi, gi));
            }
            prop_assert_eq!(&back, &f);
            let (q2, rem2) = r.reduce(&rem, &divs);
            prop_assert!(q2.iter().all(|p| p.is_zero()));
            prop_assert_eq!(rem2, rem);
        }

        #[test]
        fn bidegree_is_additive(a in 0u32..3, b in 0u32..3, c in 0u32..3, d in 0u32..3) {
            let r = PolyRing::new(Rationals, 2);
            let f = r.mul(&r.pow(&r.x(1, 2), a), &r.pow(&r.y(2, 1), b));
            let f = r.add(&f, &r.mul(&r.pow(&r.x(2, 2), a), &r.pow(&r.y(1, 1), b)));
            let g = r.mul(&r.pow(&r.x(1, 1), c), &r.pow(&r.y(2, 2), d));
            let (fx, fy) = r.bidegree_of(&f).unwrap();
            let (gx, gy) = r.bidegree_of(&g).unwrap();
            prop_assert_eq!(r.bidegree_of(&r.mul(&f, &g)).unwrap(), (fx + gx, fy + gy));
        }
    }
}
