//! Trace syzygies: the correspondence between coefficient tuples
//! (a₁,…,a_{n²}) with Σ aₖfₖ = 0 and matrices A with tr(A·Z) = 0, Koszul
//! relations, and first syzygies of the minimal generators of I.
//!
//! Module elements live in an extended ring with one marker variable per
//! free-module basis vector (`e_0`, `e_1`, …). The markers form the leading
//! block of the order, which makes it position-over-term with `e_0` on top.

use std::collections::BTreeMap;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genmat::{CommutatorSystem, GenericMatrix, MatrixError};
use crate::groebner::{select_minimal, Budget, Engine, GbError, GbStats};
use crate::polyring::{AuxVar, Field, PolyRing, Polynomial, Term};
use crate::words::{Letter, Word, WordExpr};

type Poly<F> = Polynomial<<F as Field>::Elem>;
type Mat<F> = GenericMatrix<<F as Field>::Elem>;

#[derive(Debug, Error)]
pub enum SyzygyError {
    #[error("tuple has {got} entries, expected {expected}")]
    Length { got: usize, expected: usize },
    #[error("not a syzygy: Σ aₖfₖ ≠ 0")]
    NotSyzygy,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Groebner(#[from] GbError),
}

/// Coefficients (a₁,…,a_{n²}) paired with the column-major generators.
#[derive(Debug, Clone, PartialEq)]
pub struct SyzygyTuple<E> {
    pub a: Vec<Polynomial<E>>,
}

/// Evaluates a word at the system's X and Y (the empty word gives E).
pub fn eval_word<F: Field>(sys: &CommutatorSystem<F>, w: &Word) -> Mat<F> {
    let ops = sys.ops();
    let mut acc = ops.identity(sys.n());
    for l in w.letters() {
        let m = match l {
            Letter::X => sys.x(),
            Letter::Y => sys.y(),
        };
        acc = ops.mul(&acc, m).expect("square");
    }
    acc
}

pub fn eval_expr<F: Field>(sys: &CommutatorSystem<F>, e: &WordExpr) -> Mat<F> {
    let ops = sys.ops();
    let mut acc = ops.zero(sys.n());
    for (s, w) in e.terms() {
        let m = eval_word(sys, w);
        acc = if *s < 0 {
            ops.sub(&acc, &m)
        } else {
            ops.add(&acc, &m)
        }
        .expect("square");
    }
    acc
}

/// Reads A row-major: row i of A supplies a_{(i−1)n+1..in}, so that
/// Σ aₖfₖ = tr(A·Z).
pub fn tuple_from_matrix<F: Field>(
    sys: &CommutatorSystem<F>,
    a: &Mat<F>,
) -> Result<SyzygyTuple<F::Elem>, SyzygyError> {
    if a.size() != sys.n() {
        return Err(MatrixError::SizeMismatch(a.size(), sys.n()).into());
    }
    Ok(SyzygyTuple {
        a: a.entries().to_vec(),
    })
}

pub fn matrix_from_tuple<F: Field>(
    sys: &CommutatorSystem<F>,
    t: &SyzygyTuple<F::Elem>,
) -> Result<Mat<F>, SyzygyError> {
    let nn = sys.n() * sys.n();
    if t.a.len() != nn {
        return Err(SyzygyError::Length {
            got: t.a.len(),
            expected: nn,
        });
    }
    Ok(GenericMatrix::from_fn(sys.n(), |i, j| {
        t.a[i * sys.n() + j].clone()
    }))
}

/// Σ aₖgₖ for any list of generators.
pub fn pairing<F: Field>(ring: &PolyRing<F>, a: &[Poly<F>], gens: &[Poly<F>]) -> Poly<F> {
    let terms: Vec<Poly<F>> = a.iter().zip(gens).map(|(x, g)| ring.mul(x, g)).collect();
    ring.sum(terms.iter())
}

/// tr(A·Z) = 0.
pub fn is_trace_syzygy<F: Field>(sys: &CommutatorSystem<F>, a: &Mat<F>) -> bool {
    a.size() == sys.n()
        && sys
            .ops()
            .trace_of_product(a, sys.z())
            .map(|p| p.is_zero())
            .unwrap_or(false)
}

/// The C(n², 2) relations fᵢ·e_j − f_j·e_i, i < j.
pub fn koszul<F: Field>(sys: &CommutatorSystem<F>) -> Vec<SyzygyTuple<F::Elem>> {
    koszul_of(sys.ring(), sys.generators())
}

fn koszul_of<F: Field>(ring: &PolyRing<F>, gens: &[Poly<F>]) -> Vec<SyzygyTuple<F::Elem>> {
    let m = gens.len();
    let mut out = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            let mut a = vec![ring.zero(); m];
            a[i] = ring.neg(&gens[j]);
            a[j] = gens[i].clone();
            out.push(SyzygyTuple { a });
        }
    }
    out
}

/// Rewrites a syzygy of all n² generators as one of the n² − 1 minimal ones,
/// using f_{n²} = −Σ (other diagonal f's).
pub fn project_to_minimal<F: Field>(
    sys: &CommutatorSystem<F>,
    t: &SyzygyTuple<F::Elem>,
) -> Result<Vec<Poly<F>>, SyzygyError> {
    let ring = sys.ring();
    let nn = sys.n() * sys.n();
    if t.a.len() != nn {
        return Err(SyzygyError::Length {
            got: t.a.len(),
            expected: nn,
        });
    }
    let last = &t.a[nn - 1];
    let diag = sys.diagonal_indices();
    Ok((1..nn)
        .map(|k| {
            if diag.contains(&k) {
                ring.sub(&t.a[k - 1], last)
            } else {
                t.a[k - 1].clone()
            }
        })
        .collect())
}

/// Inverse direction: a syzygy of the minimal generators as an n²-tuple with
/// a_{n²} = 0.
pub fn lift_from_minimal<F: Field>(
    sys: &CommutatorSystem<F>,
    b: &[Poly<F>],
) -> SyzygyTuple<F::Elem> {
    let mut a = b.to_vec();
    a.push(sys.ring().zero());
    SyzygyTuple { a }
}

/// A free module S^rank (plus the extra slot `e_0`) encoded in a ring with
/// marker variables; slot k ≥ 1 carries degree shift `shifts[k-1]`.
#[derive(Debug, Clone)]
pub struct FreeModule<F: Field> {
    base: PolyRing<F>,
    ring: PolyRing<F>,
    rank: usize,
}

impl<F: Field> FreeModule<F> {
    pub fn new(base: &PolyRing<F>, shifts: &[u32]) -> Self {
        let mut aux = vec![AuxVar::new("e_0", 0)];
        aux.extend(
            shifts
                .iter()
                .enumerate()
                .map(|(k, &s)| AuxVar::new(format!("e_{}", k + 1), s)),
        );
        FreeModule {
            ring: base.extend_with_aux(aux),
            base: base.clone(),
            rank: shifts.len(),
        }
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn marker(&self, slot: usize) -> usize {
        self.base.nvars() + slot
    }

    /// Marker variables of slots 1..=rank.
    fn slots(&self) -> Range<usize> {
        self.marker(1)..self.marker(self.rank + 1)
    }

    fn all_slots(&self) -> Range<usize> {
        self.marker(0)..self.marker(self.rank + 1)
    }

    /// `head·e_0 + Σ v_k·e_k`.
    pub fn encode(&self, head: Option<&Poly<F>>, v: &[Poly<F>]) -> Poly<F> {
        let nv = self.ring.nvars();
        let mut terms = Vec::new();
        let mut push = |p: &Poly<F>, slot: usize| {
            for t in p.terms() {
                let mon = t.mon.extend(nv).with_exp(self.marker(slot), 1);
                terms.push(Term {
                    coeff: t.coeff.clone(),
                    mon,
                });
            }
        };
        if let Some(h) = head {
            push(h, 0);
        }
        for (k, p) in v.iter().enumerate() {
            push(p, k + 1);
        }
        self.ring.from_terms(terms)
    }

    /// Splits an encoded element into its e_0 part and slot vector.
    pub fn decode(&self, p: &Poly<F>) -> (Poly<F>, Vec<Poly<F>>) {
        let nb = self.base.nvars();
        let mut parts: Vec<Vec<Term<F::Elem>>> = vec![Vec::new(); self.rank + 1];
        for t in p.terms() {
            let slot = (0..=self.rank)
                .find(|&s| t.mon.exp(self.marker(s)) > 0)
                .expect("every module term carries a marker");
            parts[slot].push(Term {
                coeff: t.coeff.clone(),
                mon: t
                    .mon
                    .with_exp(self.marker(slot), 0)
                    .truncate(nb)
                    .expect("single marker per term"),
            });
        }
        let mut it = parts.into_iter().map(|ts| self.base.from_terms(ts));
        let head = it.next().expect("slot 0");
        (head, it.collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum SyzygyOrigin {
    /// gᵢ·e_j − g_j·e_i on the minimal generators (1-based).
    Koszul {
        i: usize,
        j: usize,
    },
    Computed,
}

#[derive(Debug, Clone)]
pub struct SyzygyGenerator<E> {
    /// Coefficients on the n² − 1 minimal generators.
    pub coefficients: Vec<Polynomial<E>>,
    /// Polynomial degree of the coefficients (internal degree minus 2).
    pub degree: u32,
    pub origin: SyzygyOrigin,
}

/// Minimal first syzygies up to a degree bound.
#[derive(Debug, Clone)]
pub struct FirstSyzygies<E> {
    pub generators: Vec<SyzygyGenerator<E>>,
    /// Minimal generator count per coefficient degree 1..=bound (zeros
    /// included).
    pub counts: BTreeMap<u32, usize>,
    pub degree_bound: u32,
    /// The budget ran out; counts cover only what was reached.
    pub partial: bool,
    pub stats: GbStats,
}

/// Minimal first syzygies of the n² − 1 minimal generators of I, up to
/// coefficient degree `degree_bound`.
///
/// A truncated basis of the module spanned by (gᵢ·e_0 + e_i) is computed in
/// position-over-term order; its elements without an e_0 part span the
/// syzygies. These, together with the Koszul relations (visited first within
/// their degree so that they are preferred), are then minimalized degree by
/// degree.
pub fn first_syzygies<F: Field>(
    sys: &CommutatorSystem<F>,
    degree_bound: u32,
    budget: Budget,
) -> Result<FirstSyzygies<F::Elem>, SyzygyError> {
    let ring = sys.ring();
    let gens = sys.minimal_generators();
    let m = gens.len();
    let mut counts: BTreeMap<u32, usize> = (1..=degree_bound).map(|d| (d, 0)).collect();
    if m == 0 {
        return Ok(FirstSyzygies {
            generators: Vec::new(),
            counts,
            degree_bound,
            partial: false,
            stats: GbStats::default(),
        });
    }
    let shifts = vec![2u32; m];
    let module = FreeModule::new(ring, &shifts);
    let mring = module.ring();
    let mut engine = Engine::new(mring, Some(module.all_slots()), budget);
    for (k, g) in gens.iter().enumerate() {
        let mut v = vec![ring.zero(); m];
        v[k] = ring.one();
        engine.add_generator(&module.encode(Some(g), &v));
    }
    let mut partial = false;
    match engine.run(Some(degree_bound + 2)) {
        Ok(_) => {}
        Err(GbError::BudgetExhausted(_)) if engine.partial_allowed() => partial = true,
        Err(e) => return Err(e.into()),
    }
    let mut stats = engine.stats.clone();
    stats.elapsed_secs = engine.elapsed();

    let e0 = module.marker(0);
    let syz: Vec<Poly<F>> = engine
        .current_basis()
        .into_iter()
        .filter(|p| p.terms().iter().all(|t| t.mon.exp(e0) == 0))
        .filter(|p| {
            mring
                .homogeneous_degree(p)
                .is_some_and(|d| d <= degree_bound + 2)
        })
        .collect();

    let mut kos: Vec<(Poly<F>, SyzygyOrigin)> = Vec::new();
    if degree_bound >= 2 {
        let mut idx = 0;
        let rel = koszul_of(ring, &gens);
        for i in 0..m {
            for j in i + 1..m {
                kos.push((
                    module.encode(None, &rel[idx].a),
                    SyzygyOrigin::Koszul { i: i + 1, j: j + 1 },
                ));
                idx += 1;
            }
        }
    }
    let mut cands: Vec<(&Poly<F>, bool)> = Vec::new();
    let mut origins = Vec::new();
    for (p, o) in &kos {
        cands.push((p, false));
        origins.push(*o);
    }
    for p in &syz {
        cands.push((p, false));
        origins.push(SyzygyOrigin::Computed);
    }
    // Koszul relations precede computed ones of the same degree
    let kept = select_minimal(mring, Some(module.slots()), &cands, Budget::unlimited())
        .map_err(SyzygyError::from)?;
    let mut generators = Vec::with_capacity(kept.len());
    for i in kept {
        let (_, v) = module.decode(cands[i].0);
        let degree = mring.homogeneous_degree(cands[i].0).expect("homogeneous") - 2;
        *counts.entry(degree).or_insert(0) += 1;
        generators.push(SyzygyGenerator {
            coefficients: v,
            degree,
            origin: origins[i],
        });
    }
    Ok(FirstSyzygies {
        generators,
        counts,
        degree_bound,
        partial,
        stats,
    })
}

/// Whether `t` lies in the submodule spanned by `gens` (all vectors of the
/// same length, entries in the base ring). Homogeneous input is handled with
/// a basis truncated at the degree of `t`.
pub fn module_membership<F: Field>(
    ring: &PolyRing<F>,
    t: &[Poly<F>],
    gens: &[Vec<Poly<F>>],
    budget: Budget,
) -> Result<bool, SyzygyError> {
    let rank = t.len();
    for g in gens {
        if g.len() != rank {
            return Err(SyzygyError::Length {
                got: g.len(),
                expected: rank,
            });
        }
    }
    if t.iter().all(|p| p.is_zero()) {
        return Ok(true);
    }
    let module = FreeModule::new(ring, &vec![0; rank]);
    let mring = module.ring();
    let target = module.encode(None, t);
    let mut engine = Engine::new(mring, Some(module.slots()), budget);
    let mut encoded: Vec<Poly<F>> = gens.iter().map(|g| module.encode(None, g)).collect();
    encoded.sort_by_key(|p| mring.homogeneous_degree(p).unwrap_or(u32::MAX));
    for g in &encoded {
        engine.add_generator(g);
    }
    let bound = if engine.is_homogeneous() {
        mring.homogeneous_degree(&target)
    } else {
        None
    };
    engine.run(bound)?;
    Ok(!engine.add_generator(&target))
}

/// Module membership of a syzygy of the n² generators in the span of
/// others, carried out on the minimal-generator projections.
pub fn syzygy_membership<F: Field>(
    sys: &CommutatorSystem<F>,
    t: &SyzygyTuple<F::Elem>,
    gens: &[SyzygyTuple<F::Elem>],
    budget: Budget,
) -> Result<bool, SyzygyError> {
    let ring = sys.ring();
    let check = |s: &SyzygyTuple<F::Elem>| -> Result<Vec<Poly<F>>, SyzygyError> {
        if !pairing(ring, &s.a, sys.generators()).is_zero() {
            return Err(SyzygyError::NotSyzygy);
        }
        project_to_minimal(sys, s)
    };
    let target = check(t)?;
    let span = gens.iter().map(check).collect::<Result<Vec<_>, _>>()?;
    module_membership(ring, &target, &span, budget)
}
