//! Buchberger's algorithm.
//!
//! Pairs are selected by sugar degree (for homogeneous input this is the
//! weighted degree of the lcm, i.e. the normal strategy), ties broken by
//! creation order. All pairs of the lowest pending degree are reduced as one
//! batch against a snapshot of the basis, optionally in parallel; the results
//! are then re-reduced and inserted sequentially in pair order, so the run is
//! identical for every thread count.
//!
//! Module elements are encoded as polynomials in which every term carries
//! exactly one *component variable*; pairs whose leading terms sit in
//! different components are never formed.

use std::ops::Range;
use std::time::Instant;

use crate::par;
use crate::polyring::{Field, Monomial, PolyRing, Polynomial, Term};

use super::{Budget, Exhaustion, GbError, GbStats};

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
    seq: u64,
}

#[derive(Debug, Clone)]
pub(crate) struct Elem<E> {
    pub terms: Vec<Term<E>>,
    pub lm: Monomial,
    pub mask: u64,
    pub sugar: u32,
    /// Still part of the (minimal) basis; inactive elements stay referenced by
    /// pending pairs only.
    pub active: bool,
}

pub(crate) fn divmask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.exps().iter().enumerate() {
        if e > 0 {
            mask |= 1 << (i % 64);
        }
    }
    mask
}

/// `a − c·q·b` for term slices sorted in the ring order.
pub(crate) fn merge_sub<F: Field>(
    ring: &PolyRing<F>,
    a: &[Term<F::Elem>],
    c: &F::Elem,
    q: &Monomial,
    b: &[Term<F::Elem>],
) -> Vec<Term<F::Elem>> {
    use std::cmp::Ordering;
    let fld = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bm: Option<Monomial> = b.first().map(|t| t.mon.mul(q));
    while i < a.len() || j < b.len() {
        let ord = match (i < a.len(), &bm) {
            (true, Some(m)) => ring.cmp(&a[i].mon, m),
            (true, None) => Ordering::Greater,
            (false, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let coeff = fld.neg(&fld.mul(c, &b[j].coeff));
                out.push(Term {
                    coeff,
                    mon: bm.take().expect("pending b term"),
                });
                j += 1;
                bm = b.get(j).map(|t| t.mon.mul(q));
            }
            Ordering::Equal => {
                let s = fld.sub(&a[i].coeff, &fld.mul(c, &b[j].coeff));
                if !fld.is_zero(&s) {
                    out.push(Term {
                        coeff: s,
                        mon: a[i].mon.clone(),
                    });
                }
                i += 1;
                j += 1;
                bm = b.get(j).map(|t| t.mon.mul(q));
            }
        }
    }
    out
}

/// Divisor lookup and reduction against a list of monic elements.
pub(crate) struct Reducer<'a, F: Field> {
    pub ring: &'a PolyRing<F>,
    pub elems: &'a [Elem<F::Elem>],
}

impl<F: Field> Reducer<'_, F> {
    #[inline]
    fn find_divisor(&self, m: &Monomial) -> Option<usize> {
        let mask = divmask(m);
        let deg = m.degree();
        self.elems.iter().position(|e| {
            e.active && e.mask & !mask == 0 && e.lm.degree() <= deg && e.lm.divides(m)
        })
    }

    /// Normal form; with `full == false` only the leading terms are reduced.
    pub fn normal_form(&self, work: Vec<Term<F::Elem>>, full: bool) -> Vec<Term<F::Elem>> {
        let mut acc = GeoBucket::new(self.ring, work);
        let mut out = Vec::new();
        while let Some(t) = acc.pop_lead() {
            match self.find_divisor(&t.mon) {
                Some(k) => {
                    let e = &self.elems[k];
                    let q = t.mon.div(&e.lm).expect("divisor");
                    acc.sub_scaled(&t.coeff, &q, &e.terms[1..]);
                }
                None => {
                    out.push(t);
                    if !full {
                        out.extend(acc.into_sorted());
                        return out;
                    }
                }
            }
        }
        out
    }
}

/// Sum of sorted term lists kept in buckets of geometrically growing size,
/// so that each reduction step costs about the length of the reducer rather
/// than of the whole remainder.
struct GeoBucket<'a, F: Field> {
    ring: &'a PolyRing<F>,
    /// (terms in decreasing order, index of the first live term)
    buckets: Vec<(Vec<Term<F::Elem>>, usize)>,
}

const BUCKET_BASE: usize = 8;

fn bucket_level(len: usize) -> usize {
    let mut level = 0;
    let mut cap = BUCKET_BASE;
    while cap < len {
        cap *= 4;
        level += 1;
    }
    level
}

impl<'a, F: Field> GeoBucket<'a, F> {
    fn new(ring: &'a PolyRing<F>, terms: Vec<Term<F::Elem>>) -> Self {
        let mut g = GeoBucket {
            ring,
            buckets: Vec::new(),
        };
        g.place(terms);
        g
    }

    fn place(&mut self, mut terms: Vec<Term<F::Elem>>) {
        let one = self.ring.field().one();
        let minus_one = self.ring.field().neg(&one);
        let unit = Monomial::one(self.ring.nvars());
        let mut level = bucket_level(terms.len());
        loop {
            if self.buckets.len() <= level {
                self.buckets.resize_with(level + 1, || (Vec::new(), 0));
            }
            let (b, start) = &mut self.buckets[level];
            if *start < b.len() {
                terms = merge_sub(self.ring, &b[*start..], &minus_one, &unit, &terms);
                b.clear();
                *start = 0;
                let next = bucket_level(terms.len());
                if next > level {
                    level = next;
                    continue;
                }
            }
            let (b, start) = &mut self.buckets[level];
            *b = terms;
            *start = 0;
            return;
        }
    }

    /// Adds −c·q·b.
    fn sub_scaled(&mut self, c: &F::Elem, q: &Monomial, b: &[Term<F::Elem>]) {
        if b.is_empty() {
            return;
        }
        let level = bucket_level(b.len());
        if self.buckets.len() <= level {
            self.buckets.resize_with(level + 1, || (Vec::new(), 0));
        }
        let (bucket, start) = &mut self.buckets[level];
        let merged = merge_sub(self.ring, &bucket[*start..], c, q, b);
        bucket.clear();
        *start = 0;
        if bucket_level(merged.len()) > level {
            self.place(merged);
        } else {
            self.buckets[level].0 = merged;
        }
    }

    fn pop_lead(&mut self) -> Option<Term<F::Elem>> {
        let fld = self.ring.field();
        loop {
            let mut best: Option<usize> = None;
            for (k, (b, start)) in self.buckets.iter().enumerate() {
                if *start >= b.len() {
                    continue;
                }
                best = match best {
                    None => Some(k),
                    Some(l) => {
                        let (bl, sl) = &self.buckets[l];
                        if self.ring.cmp(&b[*start].mon, &bl[*sl].mon).is_gt() {
                            Some(k)
                        } else {
                            Some(l)
                        }
                    }
                };
            }
            let k = best?;
            let (b, start) = &mut self.buckets[k];
            let mut lead = b[*start].clone();
            *start += 1;
            for l in 0..self.buckets.len() {
                if l == k {
                    continue;
                }
                let (b, start) = &mut self.buckets[l];
                if *start < b.len() && b[*start].mon == lead.mon {
                    lead.coeff = fld.add(&lead.coeff, &b[*start].coeff);
                    *start += 1;
                }
            }
            if !fld.is_zero(&lead.coeff) {
                return Some(lead);
            }
        }
    }

    fn into_sorted(mut self) -> Vec<Term<F::Elem>> {
        let one = self.ring.field().one();
        let minus_one = self.ring.field().neg(&one);
        let unit = Monomial::one(self.ring.nvars());
        let mut acc: Vec<Term<F::Elem>> = Vec::new();
        for (b, start) in self.buckets.drain(..) {
            if start < b.len() {
                acc = merge_sub(self.ring, &acc, &minus_one, &unit, &b[start..]);
            }
        }
        acc
    }
}

pub(crate) struct Engine<F: Field> {
    ring: PolyRing<F>,
    weights: Vec<u32>,
    components: Option<Range<usize>>,
    pub(crate) elems: Vec<Elem<F::Elem>>,
    pairs: Vec<Pair>,
    seq: u64,
    budget: Budget,
    started: Instant,
    pub(crate) stats: GbStats,
    homogeneous: bool,
}

impl<F: Field> Engine<F> {
    pub fn new(ring: &PolyRing<F>, components: Option<Range<usize>>, budget: Budget) -> Self {
        Engine {
            weights: ring.weights().to_vec(),
            ring: ring.clone(),
            components,
            elems: Vec::new(),
            pairs: Vec::new(),
            seq: 0,
            budget,
            started: Instant::now(),
            stats: GbStats::default(),
            homogeneous: true,
        }
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    fn wdeg(&self, m: &Monomial) -> u32 {
        m.weighted_degree(&self.weights)
    }

    fn component(&self, m: &Monomial) -> Option<usize> {
        let r = self.components.as_ref()?;
        r.clone().find(|&v| m.exp(v) > 0)
    }

    fn reducer(&self) -> Reducer<'_, F> {
        Reducer {
            ring: &self.ring,
            elems: &self.elems,
        }
    }

    /// Sugar of a polynomial: maximal weighted degree of its terms.
    fn sugar_of(&self, terms: &[Term<F::Elem>]) -> u32 {
        terms.iter().map(|t| self.wdeg(&t.mon)).max().unwrap_or(0)
    }

    fn make_monic(&self, mut terms: Vec<Term<F::Elem>>) -> Vec<Term<F::Elem>> {
        let fld = self.ring.field();
        if let Some(lead) = terms.first() {
            if !fld.is_one(&lead.coeff) {
                let inv = fld.inv(&lead.coeff).expect("nonzero lead");
                for t in &mut terms {
                    t.coeff = fld.mul(&inv, &t.coeff);
                }
            }
        }
        terms
    }

    /// Lowest sugar among pending pairs.
    pub fn next_degree(&self) -> Option<u32> {
        self.pairs.iter().map(|p| p.sugar).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    fn check_budget(&self) -> Result<(), GbError> {
        if let Some(max) = self.budget.max_spairs {
            if self.stats.spairs >= max {
                return Err(GbError::BudgetExhausted(self.stats.clone()));
            }
        }
        if let Some(secs) = self.budget.max_seconds {
            if self.started.elapsed().as_secs_f64() > secs {
                return Err(GbError::BudgetExhausted(self.stats.clone()));
            }
        }
        Ok(())
    }

    /// Reduces `p` against the current basis and inserts the remainder when
    /// nonzero. Returns whether something was inserted.
    pub fn add_generator(&mut self, p: &Polynomial<F::Elem>) -> bool {
        if p.is_zero() {
            return false;
        }
        let hom = self.ring.homogeneous_degree(p).is_some();
        self.homogeneous &= hom;
        let sugar = self.sugar_of(p.terms());
        let nf = self.reducer().normal_form(p.terms().to_vec(), true);
        if nf.is_empty() {
            return false;
        }
        self.insert(nf, sugar);
        true
    }

    fn spoly(&self, p: &Pair) -> Vec<Term<F::Elem>> {
        let (a, b) = (&self.elems[p.i], &self.elems[p.j]);
        let qa = p.lcm.div(&a.lm).expect("lcm");
        let qb = p.lcm.div(&b.lm).expect("lcm");
        let one = self.ring.field().one();
        let left: Vec<Term<F::Elem>> = a.terms[1..]
            .iter()
            .map(|t| Term {
                coeff: t.coeff.clone(),
                mon: t.mon.mul(&qa),
            })
            .collect();
        merge_sub(&self.ring, &left, &one, &qb, &b.terms[1..])
    }

    fn insert(&mut self, terms: Vec<Term<F::Elem>>, sugar: u32) {
        let terms = self.make_monic(terms);
        let lm = terms[0].mon.clone();
        let sugar = sugar.max(self.wdeg(&lm));
        let k = self.elems.len();
        let comp = self.component(&lm);
        self.elems.push(Elem {
            mask: divmask(&lm),
            lm: lm.clone(),
            terms,
            sugar,
            active: true,
        });
        self.update_pairs(k, &lm, comp);
        for (idx, e) in self.elems.iter_mut().enumerate() {
            if idx != k && e.active && lm.divides(&e.lm) {
                e.active = false;
            }
        }
    }

    /// Gebauer–Möller installation of the pairs created by element `k`.
    fn update_pairs(&mut self, k: usize, lm: &Monomial, comp: Option<usize>) {
        let mut cand: Vec<(usize, Monomial, bool)> = Vec::new();
        for (i, e) in self.elems[..k].iter().enumerate() {
            if !e.active {
                continue;
            }
            if self.components.is_some() && self.component(&e.lm) != comp {
                continue;
            }
            let lcm = e.lm.lcm(lm);
            let coprime = e.lm.is_coprime(lm);
            cand.push((i, lcm, coprime));
        }
        // criterion M / F: drop pairs whose lcm is a multiple of another
        // candidate's lcm (keeping one representative per lcm)
        let mut keep = vec![true; cand.len()];
        for a in 0..cand.len() {
            if cand[a].2 {
                continue;
            }
            for b in 0..cand.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cand[b].1.divides(&cand[a].1) && (cand[b].1 != cand[a].1 || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // product criterion: an lcm class containing a coprime pair is dropped
        let mut new_pairs = Vec::new();
        for (a, (i, lcm, coprime)) in cand.iter().enumerate() {
            if !keep[a] {
                continue;
            }
            let coprime_class = *coprime || cand.iter().any(|(_, l2, c2)| *c2 && l2 == lcm);
            if coprime_class {
                continue;
            }
            new_pairs.push((*i, lcm.clone()));
        }
        // chain criterion on the existing pairs
        let elems = &self.elems;
        self.pairs.retain(|p| {
            if !lm.divides(&p.lcm) {
                return true;
            }
            let l1 = elems[p.i].lm.lcm(lm);
            let l2 = elems[p.j].lm.lcm(lm);
            l1 == p.lcm || l2 == p.lcm
        });
        for (i, lcm) in new_pairs {
            let a = &self.elems[i];
            let b = &self.elems[k];
            let dl = self.wdeg(&lcm);
            let sugar = (a.sugar + dl - self.wdeg(&a.lm)).max(b.sugar + dl - self.wdeg(&b.lm));
            self.seq += 1;
            self.pairs.push(Pair {
                i,
                j: k,
                lcm,
                sugar,
                seq: self.seq,
            });
        }
    }

    /// Processes pairs until none remain or the next batch exceeds
    /// `degree_bound`. Returns `Ok(true)` when all pairs are done.
    pub fn run(&mut self, degree_bound: Option<u32>) -> Result<bool, GbError> {
        loop {
            let Some(d) = self.next_degree() else {
                return Ok(true);
            };
            if let Some(bound) = degree_bound {
                if d > bound {
                    return Ok(false);
                }
            }
            self.check_budget()?;
            self.step(d)?;
        }
    }

    fn step(&mut self, d: u32) -> Result<(), GbError> {
        let mut batch: Vec<Pair> = Vec::new();
        let mut rest = Vec::with_capacity(self.pairs.len());
        for p in self.pairs.drain(..) {
            if p.sugar == d {
                batch.push(p);
            } else {
                rest.push(p);
            }
        }
        self.pairs = rest;
        batch.sort_by_key(|p| p.seq);
        if let Some(max) = self.budget.max_spairs {
            let room = max.saturating_sub(self.stats.spairs) as usize;
            if batch.len() > room {
                let tail = batch.split_off(room.max(1).min(batch.len()));
                self.pairs.extend(tail);
            }
        }
        let spolys: Vec<Vec<Term<F::Elem>>> = batch.iter().map(|p| self.spoly(p)).collect();
        let reducer = self.reducer();
        let reduced: Vec<Vec<Term<F::Elem>>> =
            par::map(&spolys, |sp| reducer.normal_form(sp.clone(), true));
        for (p, r) in batch.iter().zip(reduced) {
            self.stats.spairs += 1;
            self.stats.max_degree = self.stats.max_degree.max(p.sugar);
            if r.is_empty() {
                self.stats.zero_reductions += 1;
                continue;
            }
            let r = self.reducer().normal_form(r, true);
            if r.is_empty() {
                self.stats.zero_reductions += 1;
                continue;
            }
            self.insert(r, p.sugar);
        }
        Ok(())
    }

    /// Whether the budget allows partial results instead of an error.
    pub fn partial_allowed(&self) -> bool {
        self.budget.on_exhaust == Exhaustion::ReturnPartial
    }

    pub fn elapsed(&self) -> f64 {
        self.started.elapsed().as_secs_f64()
    }

    /// Minimal, fully interreduced, monic basis sorted by decreasing leading
    /// monomial.
    pub fn reduced_basis(&self) -> Vec<Polynomial<F::Elem>> {
        let mut minimal: Vec<Elem<F::Elem>> = Vec::new();
        let mut active: Vec<&Elem<F::Elem>> = self.elems.iter().filter(|e| e.active).collect();
        active.sort_by(|a, b| self.ring.cmp(&a.lm, &b.lm));
        // ascending: an element survives if no smaller kept lm divides it
        for e in active {
            if minimal.iter().any(|m| m.lm.divides(&e.lm)) {
                continue;
            }
            minimal.push(e.clone());
        }
        let snapshot = minimal.clone();
        let tails: Vec<Vec<Term<F::Elem>>> = par::map_range(snapshot.len(), |k| {
            let others: Vec<Elem<F::Elem>> = snapshot
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let mut e = e.clone();
                    e.active = i != k;
                    e
                })
                .collect();
            let red = Reducer {
                ring: &self.ring,
                elems: &others,
            };
            let mut out = vec![snapshot[k].terms[0].clone()];
            out.extend(red.normal_form(snapshot[k].terms[1..].to_vec(), true));
            out
        });
        let mut polys: Vec<Polynomial<F::Elem>> = tails
            .into_iter()
            .map(|t| Polynomial::from_sorted_terms(self.make_monic(t)))
            .collect();
        polys.sort_by(|a, b| {
            self.ring.cmp(
                b.lead_monomial().expect("nonzero"),
                a.lead_monomial().expect("nonzero"),
            )
        });
        polys
    }

    /// Active elements as polynomials (not interreduced).
    pub fn current_basis(&self) -> Vec<Polynomial<F::Elem>> {
        self.elems
            .iter()
            .filter(|e| e.active)
            .map(|e| Polynomial::from_sorted_terms(e.terms.clone()))
            .collect()
    }
}
