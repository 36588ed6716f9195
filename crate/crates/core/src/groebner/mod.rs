//! Gröbner bases and the ideal operations built on them: membership,
//! elimination, intersection, colon ideals and minimal generating sets.

mod engine;

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::OnceLock;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{AuxVar, Field, Monomial, PolyError, PolyRing, Polynomial};

pub(crate) use engine::{divmask, merge_sub, Elem, Engine, Reducer};

/// What to do when a [`Budget`] runs out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Exhaustion {
    #[default]
    Fail,
    ReturnPartial,
}

/// Limits on a Buchberger run. `None` means unlimited.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct Budget {
    pub max_spairs: Option<u64>,
    pub max_seconds: Option<f64>,
    pub on_exhaust: Exhaustion,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn seconds(secs: f64) -> Self {
        Budget {
            max_seconds: Some(secs),
            ..Budget::default()
        }
    }

    pub fn spairs(max: u64) -> Self {
        Budget {
            max_spairs: Some(max),
            ..Budget::default()
        }
    }

    pub fn partial(mut self) -> Self {
        self.on_exhaust = Exhaustion::ReturnPartial;
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GbStats {
    pub spairs: u64,
    pub zero_reductions: u64,
    pub max_degree: u32,
    pub basis_size: usize,
    pub elapsed_secs: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GbError {
    #[error("budget exhausted after {} S-pairs ({:.2}s)", .0.spairs, .0.elapsed_secs)]
    BudgetExhausted(GbStats),
    #[error("the basis is partial; membership answers would be unreliable")]
    PartialBasis,
    #[error("basis is only complete up to degree {0}; query needs degree {1}")]
    BeyondTruncation(u32, u32),
    #[error("wrong monomial order: {0}")]
    WrongOrder(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status", content = "degree")]
pub enum GbStatus {
    Complete,
    /// Budget ran out; the elements generate the ideal but are not a basis.
    Partial,
    /// Homogeneous input, all pairs up to the given degree processed.
    Truncated(u32),
}

/// A (possibly partial) Gröbner basis. Complete bases are reduced: monic,
/// interreduced, sorted by decreasing leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis<F: Field> {
    ring: PolyRing<F>,
    elements: Vec<Polynomial<F::Elem>>,
    status: GbStatus,
    homogeneous: bool,
    stats: GbStats,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial<F::Elem>] {
        &self.elements
    }

    pub fn status(&self) -> GbStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == GbStatus::Complete
    }

    pub fn is_reduced(&self) -> bool {
        self.status != GbStatus::Partial
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter_map(|g| g.lead_monomial().cloned())
            .collect()
    }

    fn reducer_elems(&self) -> Vec<Elem<F::Elem>> {
        self.elements
            .iter()
            .map(|g| {
                let lm = g.lead_monomial().expect("nonzero basis element").clone();
                Elem {
                    mask: divmask(&lm),
                    sugar: 0,
                    lm,
                    terms: g.terms().to_vec(),
                    active: true,
                }
            })
            .collect()
    }

    /// Full normal form with respect to the elements (usable on partial
    /// bases, where it is merely *a* remainder).
    pub fn normal_form(&self, f: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        let elems = self.reducer_elems();
        let red = Reducer {
            ring: &self.ring,
            elems: &elems,
        };
        Polynomial::from_sorted_terms(red.normal_form(f.terms().to_vec(), true))
    }

    /// Ideal membership. Refuses partial bases, and truncated bases for
    /// queries above the truncation degree.
    pub fn contains(&self, f: &Polynomial<F::Elem>) -> Result<bool, GbError> {
        if f.is_zero() {
            return Ok(true);
        }
        match self.status {
            GbStatus::Partial => return Err(GbError::PartialBasis),
            GbStatus::Truncated(d) => {
                let deg = self.ring.homogeneous_degree(f);
                match deg {
                    Some(e) if e <= d && self.homogeneous => {}
                    Some(e) => return Err(GbError::BeyondTruncation(d, e)),
                    None => {
                        return Err(GbError::Unsupported(
                            "membership of an inhomogeneous polynomial in a truncated basis".into(),
                        ))
                    }
                }
            }
            GbStatus::Complete => {}
        }
        Ok(self.normal_form(f).is_zero())
    }

    /// Re-checks Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn satisfies_criterion(&self) -> bool {
        let elems = self.reducer_elems();
        let red = Reducer {
            ring: &self.ring,
            elems: &elems,
        };
        let one = self.ring.field().one();
        let idx: Vec<(usize, usize)> = (0..elems.len())
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .collect();
        crate::par::all(&idx, |&(i, j)| {
            let (a, b) = (&elems[i], &elems[j]);
            if a.lm.is_coprime(&b.lm) {
                return true;
            }
            let l = a.lm.lcm(&b.lm);
            let qa = l.div(&a.lm).expect("lcm");
            let qb = l.div(&b.lm).expect("lcm");
            let left: Vec<_> = a.terms[1..]
                .iter()
                .map(|t| crate::polyring::Term {
                    coeff: t.coeff.clone(),
                    mon: t.mon.mul(&qa),
                })
                .collect();
            let s = merge_sub(&self.ring, &left, &one, &qb, &b.terms[1..]);
            red.normal_form(s, true).is_empty()
        })
    }
}

fn finish<F: Field>(engine: &Engine<F>, status: GbStatus) -> GroebnerBasis<F> {
    let elements = if status == GbStatus::Partial {
        engine.current_basis()
    } else {
        engine.reduced_basis()
    };
    let mut stats = engine.stats.clone();
    stats.elapsed_secs = engine.elapsed();
    stats.basis_size = elements.len();
    GroebnerBasis {
        ring: engine.ring().clone(),
        elements,
        status,
        homogeneous: engine.is_homogeneous(),
        stats,
    }
}

fn run_engine<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Polynomial<F::Elem>],
    degree_bound: Option<u32>,
    budget: Budget,
) -> Result<GroebnerBasis<F>, GbError> {
    let mut engine = Engine::new(ring, None, budget);
    let mut sorted: Vec<&Polynomial<F::Elem>> = gens.iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by_key(|g| {
        g.terms()
            .iter()
            .map(|t| ring.weighted_degree(&t.mon))
            .max()
            .unwrap_or(0)
    });
    for g in sorted {
        engine.add_generator(g);
    }
    if degree_bound.is_some() && !engine.is_homogeneous() {
        return Err(GbError::Unsupported(
            "degree-truncated bases need homogeneous generators".into(),
        ));
    }
    match engine.run(degree_bound) {
        Ok(true) => Ok(finish(&engine, GbStatus::Complete)),
        Ok(false) => Ok(finish(
            &engine,
            GbStatus::Truncated(degree_bound.expect("bounded run")),
        )),
        Err(GbError::BudgetExhausted(_)) if engine.partial_allowed() => {
            Ok(finish(&engine, GbStatus::Partial))
        }
        Err(GbError::BudgetExhausted(mut s)) => {
            s.elapsed_secs = engine.elapsed();
            Err(GbError::BudgetExhausted(s))
        }
        Err(e) => Err(e),
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` in the ring's order.
pub fn buchberger<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Polynomial<F::Elem>],
    budget: Budget,
) -> Result<GroebnerBasis<F>, GbError> {
    run_engine(ring, gens, None, budget)
}

/// Basis of homogeneous `gens` valid for everything of degree ≤ `degree`.
pub fn buchberger_truncated<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Polynomial<F::Elem>],
    degree: u32,
    budget: Budget,
) -> Result<GroebnerBasis<F>, GbError> {
    run_engine(ring, gens, Some(degree), budget)
}

/// An ideal given by generators, with a lazily computed complete basis.
#[derive(Debug, Clone)]
pub struct Ideal<F: Field> {
    ring: PolyRing<F>,
    gens: Vec<Polynomial<F::Elem>>,
    gb: OnceLock<GroebnerBasis<F>>,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(ring: &PolyRing<F>, gens: Vec<Polynomial<F::Elem>>) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        }
    }

    fn with_basis(ring: &PolyRing<F>, gb: GroebnerBasis<F>) -> Self {
        let ideal = Ideal::new(ring, gb.elements.clone());
        let _ = ideal.gb.set(gb);
        ideal
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F::Elem>] {
        &self.gens
    }

    /// Complete reduced basis, computed once and cached. Partial results
    /// are returned but never cached.
    pub fn groebner(&self, budget: Budget) -> Result<GroebnerBasis<F>, GbError> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb.clone());
        }
        let gb = buchberger(&self.ring, &self.gens, budget)?;
        if gb.is_complete() {
            let _ = self.gb.set(gb.clone());
        }
        Ok(gb)
    }

    pub fn contains(&self, f: &Polynomial<F::Elem>, budget: Budget) -> Result<bool, GbError> {
        self.groebner(budget)?.contains(f)
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Ideal<F>, budget: Budget) -> Result<bool, GbError> {
        let gb = other.groebner(budget)?;
        for g in &self.gens {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens
            .iter()
            .all(|g| self.ring.homogeneous_degree(g).is_some())
    }
}

/// Elements of `gb` free of the variables in `front`. The basis must have
/// been computed in an elimination order whose leading block is `front`.
pub fn eliminate<F: Field>(gb: &GroebnerBasis<F>, front: &[usize]) -> Result<Ideal<F>, GbError> {
    if front.is_empty() {
        return Ok(Ideal::new(&gb.ring, gb.elements.clone()));
    }
    if !gb.is_complete() {
        return Err(GbError::PartialBasis);
    }
    let mut want = front.to_vec();
    let mut have = gb.ring.order().front_block().to_vec();
    want.sort_unstable();
    have.sort_unstable();
    if want != have {
        return Err(GbError::WrongOrder(format!(
            "need an elimination order with leading block {want:?}, basis uses {}",
            gb.ring.order().describe()
        )));
    }
    let kept: Vec<Polynomial<F::Elem>> = gb
        .elements
        .iter()
        .filter(|g| {
            g.terms()
                .iter()
                .all(|t| front.iter().all(|&v| t.mon.exp(v) == 0))
        })
        .cloned()
        .collect();
    Ok(Ideal::new(&gb.ring, kept))
}

/// `I1 ∩ I2` as the `t`-free part of `t·I1 + (1 − t)·I2`. The result carries
/// its (reduced) basis in the ring's order.
pub fn intersect<F: Field>(
    i1: &Ideal<F>,
    i2: &Ideal<F>,
    budget: Budget,
) -> Result<Ideal<F>, GbError> {
    let ring = &i1.ring;
    if i2.ring != *ring {
        return Err(
            PolyError::RingMismatch("intersecting ideals of different rings".into()).into(),
        );
    }
    if !ring.layout().aux().is_empty() {
        return Err(GbError::Unsupported(
            "intersection in a ring that already has auxiliary variables".into(),
        ));
    }
    if i1.gens.is_empty() || i2.gens.is_empty() {
        return Ok(Ideal::new(ring, Vec::new()));
    }
    let ext = ring.extend_with_aux(vec![AuxVar::new("t_1", 0)]);
    let tv = ext.nvars() - 1;
    let t = ext.var_index(tv);
    let one_minus_t = ext.sub(&ext.one(), &t);
    let mut gens = Vec::with_capacity(i1.gens.len() + i2.gens.len());
    for g in &i1.gens {
        gens.push(ext.mul(&t, &ext.import(ring, g)?));
    }
    for g in &i2.gens {
        gens.push(ext.mul(&one_minus_t, &ext.import(ring, g)?));
    }
    let gb = buchberger(&ext, &gens, budget)?;
    if !gb.is_complete() {
        return Err(GbError::PartialBasis);
    }
    let elim = eliminate(&gb, &[tv])?;
    let elements = elim
        .gens
        .iter()
        .map(|g| ring.import(&ext, g))
        .collect::<Result<Vec<_>, _>>()?;
    let stats = gb.stats.clone();
    let restricted = GroebnerBasis {
        ring: ring.clone(),
        elements,
        status: GbStatus::Complete,
        homogeneous: gb.homogeneous,
        stats,
    };
    Ok(Ideal::with_basis(ring, restricted))
}

/// `(J : f)` computed as `(J ∩ (f)) / f`.
pub fn principal_colon<F: Field>(
    j: &Ideal<F>,
    f: &Polynomial<F::Elem>,
    budget: Budget,
) -> Result<Ideal<F>, GbError> {
    let ring = &j.ring;
    if f.is_zero() || j.contains(f, budget)? {
        return Ok(Ideal::new(ring, vec![ring.one()]));
    }
    let inter = intersect(j, &Ideal::new(ring, vec![f.clone()]), budget)?;
    let quotients = inter
        .gens
        .iter()
        .map(|g| {
            ring.exact_div(g, f)
                .ok_or_else(|| GbError::Unsupported("intersection element not divisible".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(ring, quotients))
}

/// `(J : I) = ∩ (J : fᵢ)`. A generator of `I` lying in `J` plus the
/// generators already handled contributes nothing and is skipped.
pub fn colon<F: Field>(j: &Ideal<F>, i: &Ideal<F>, budget: Budget) -> Result<Ideal<F>, GbError> {
    let ring = &j.ring;
    let started = Instant::now();
    let remaining = |b: Budget| -> Budget {
        match b.max_seconds {
            Some(s) => Budget {
                max_seconds: Some((s - started.elapsed().as_secs_f64()).max(0.0)),
                ..b
            },
            None => b,
        }
    };
    let mut handled: Vec<Polynomial<F::Elem>> = j.gens.clone();
    let mut result: Option<Ideal<F>> = None;
    for f in &i.gens {
        let span = Ideal::new(ring, handled.clone());
        if span.contains(f, remaining(budget))? {
            continue;
        }
        handled.push(f.clone());
        let c = principal_colon(j, f, remaining(budget))?;
        result = Some(match result {
            None => c,
            Some(acc) => intersect(&acc, &c, remaining(budget))?,
        });
    }
    let result = match result {
        None => return Ok(Ideal::new(ring, vec![ring.one()])),
        Some(r) => r,
    };
    let gb = result.groebner(remaining(budget))?;
    Ok(Ideal::with_basis(ring, gb))
}

/// A minimal generator together with its degree.
#[derive(Debug, Clone)]
pub struct MinimalGenerator<E> {
    pub polynomial: Polynomial<E>,
    pub degree: u32,
}

/// Indices of the candidates kept by the degree-by-degree minimalization:
/// candidates are visited by weighted degree (`base` ones first within a
/// degree, otherwise in input order) and one is kept iff it does not lie in
/// the ideal or module spanned by everything visited before it. Base
/// candidates are always added but never reported.
pub(crate) fn select_minimal<F: Field>(
    ring: &PolyRing<F>,
    components: Option<Range<usize>>,
    candidates: &[(&Polynomial<F::Elem>, bool)],
    budget: Budget,
) -> Result<Vec<usize>, GbError> {
    let mut order = Vec::with_capacity(candidates.len());
    for (idx, (g, is_base)) in candidates.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let d = ring.homogeneous_degree(g).ok_or_else(|| {
            GbError::Unsupported("minimal generators need homogeneous input".into())
        })?;
        order.push((d, !is_base, idx));
    }
    order.sort();
    let mut engine = Engine::new(ring, components, budget);
    let mut kept = Vec::new();
    let mut current = None;
    for (d, not_base, idx) in order {
        if current != Some(d) {
            if let Err(e) = engine.run(Some(d)) {
                return Err(match e {
                    GbError::BudgetExhausted(mut s) => {
                        s.elapsed_secs = engine.elapsed();
                        GbError::BudgetExhausted(s)
                    }
                    other => other,
                });
            }
            current = Some(d);
        }
        if engine.add_generator(candidates[idx].0) && not_base {
            kept.push(idx);
        }
    }
    Ok(kept)
}

/// Minimal generators of the homogeneous ideal `base + (extra)` that are
/// taken from `extra`, given that `base` is already minimal.
pub fn minimal_generators_over<F: Field>(
    ring: &PolyRing<F>,
    base: &[Polynomial<F::Elem>],
    extra: &[Polynomial<F::Elem>],
    budget: Budget,
) -> Result<Vec<MinimalGenerator<F::Elem>>, GbError> {
    let cands: Vec<(&Polynomial<F::Elem>, bool)> = base
        .iter()
        .map(|g| (g, true))
        .chain(extra.iter().map(|g| (g, false)))
        .collect();
    let kept = select_minimal(ring, None, &cands, budget)?;
    Ok(kept
        .into_iter()
        .map(|i| MinimalGenerator {
            polynomial: cands[i].0.clone(),
            degree: ring.homogeneous_degree(cands[i].0).expect("homogeneous"),
        })
        .collect())
}

/// Minimal generating set of a homogeneous ideal.
pub fn minimal_generators<F: Field>(
    ideal: &Ideal<F>,
    budget: Budget,
) -> Result<Vec<MinimalGenerator<F::Elem>>, GbError> {
    minimal_generators_over(&ideal.ring, &[], &ideal.gens, budget)
}

/// Count of minimal generators per degree.
pub fn degree_counts<E>(gens: &[MinimalGenerator<E>]) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for g in gens {
        *out.entry(g.degree).or_insert(0) += 1;
    }
    out
}
