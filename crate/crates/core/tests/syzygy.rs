use std::collections::BTreeMap;

use commvar::fixtures::FixtureSet;
use commvar::genmat::{CommutatorSystem, GenericMatrix};
use commvar::groebner::Budget;
use commvar::hilbert::BettiEntry;
use commvar::syzygy::*;
use commvar::words::{candidates, WordExpr};
use commvar::{Field, Monomial, PrimeField, Rationals, Term};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sys(n: usize) -> CommutatorSystem<PrimeField> {
    CommutatorSystem::build(PrimeField::new(32003).unwrap(), n).unwrap()
}

fn tuple(s: &CommutatorSystem<PrimeField>, expr: &str) -> SyzygyTuple<u32> {
    let e: WordExpr = expr.parse().unwrap();
    tuple_from_matrix(s, &eval_expr(s, &e)).unwrap()
}

fn tuples(s: &CommutatorSystem<PrimeField>, exprs: &[&str]) -> Vec<SyzygyTuple<u32>> {
    exprs.iter().map(|e| tuple(s, e)).collect()
}

#[test]
fn identity_tuple_for_n2() {
    let s = CommutatorSystem::build(Rationals, 2).unwrap();
    let ring = s.ring();
    let e = tuple_from_matrix(&s, &s.ops().identity(2)).unwrap();
    let expect: Vec<_> = [1, 0, 0, 1].iter().map(|&c| ring.from_int(c)).collect();
    assert_eq!(e.a, expect);
    assert!(pairing(ring, &e.a, s.generators()).is_zero());

    let x = tuple_from_matrix(&s, s.x()).unwrap();
    assert!(pairing(ring, &x.a, s.generators()).is_zero());
}

#[test]
fn single_entry_pairs_with_transposed_position() {
    let s = CommutatorSystem::build(Rationals, 2).unwrap();
    let ring = s.ring();
    let mut a = s.ops().zero(2);
    a.set(0, 1, ring.one());
    let t = tuple_from_matrix(&s, &a).unwrap();
    assert_eq!(t.a[1], ring.one());
    assert_eq!(pairing(ring, &t.a, s.generators()), s.generators()[1]);
    assert_eq!(&s.generators()[1], s.z().get(1, 0));
}

fn random_matrix(s: &CommutatorSystem<PrimeField>, rng: &mut ChaCha8Rng) -> GenericMatrix<u32> {
    let ring = s.ring();
    let nv = ring.nvars();
    GenericMatrix::from_fn(s.n(), |_, _| {
        let terms = (0..rng.gen_range(0..4))
            .map(|_| {
                let mut exps = vec![0u8; nv];
                for _ in 0..rng.gen_range(0..3) {
                    exps[rng.gen_range(0..nv)] += 1;
                }
                Term {
                    coeff: ring.field().from_i64(rng.gen_range(-50..50)),
                    mon: Monomial::from_exps(&exps),
                }
            })
            .collect();
        ring.from_terms(terms)
    })
}

#[test]
fn pairing_equals_trace_against_commutator() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [2usize, 3] {
        let s = sys(n);
        for _ in 0..20 {
            let a = random_matrix(&s, &mut rng);
            let t = tuple_from_matrix(&s, &a).unwrap();
            let tr = s.ops().trace_of_product(&a, s.z()).unwrap();
            assert_eq!(pairing(s.ring(), &t.a, s.generators()), tr);
            assert_eq!(matrix_from_tuple(&s, &t).unwrap(), a);
        }
    }
}

#[test]
fn tuple_length_and_size_are_checked() {
    let s = sys(2);
    let bad = SyzygyTuple {
        a: vec![s.ring().zero(); 3],
    };
    assert!(matches!(
        matrix_from_tuple(&s, &bad),
        Err(SyzygyError::Length {
            got: 3,
            expected: 4
        })
    ));
    let big = s.ops().identity(3);
    assert!(tuple_from_matrix(&s, &big).is_err());
}

#[test]
fn trace_syzygy_examples() {
    let s = sys(3);
    let eval = |e: &str| eval_expr(&s, &e.parse().unwrap());
    assert!(is_trace_syzygy(&s, &eval("XY+YX")));
    assert!(!is_trace_syzygy(&s, &eval("XY")));
    for n in 1..=4 {
        let s = sys(n);
        assert!(is_trace_syzygy(&s, &s.ops().identity(n)));
    }
}

#[test]
fn candidate_rules_are_sound() {
    let cands = candidates(5);
    for n in [2usize, 3] {
        let s = sys(n);
        for c in &cands {
            assert!(is_trace_syzygy(&s, &eval_expr(&s, c)), "{c} at n = {n}");
        }
    }
}

#[test]
fn koszul_relations() {
    for (n, count) in [(2usize, 6usize), (3, 36)] {
        let s = sys(n);
        let k = koszul(&s);
        assert_eq!(k.len(), count);
        for t in &k {
            assert!(pairing(s.ring(), &t.a, s.generators()).is_zero());
        }
    }
}

fn counts(pairs: &[(u32, usize)]) -> BTreeMap<u32, usize> {
    pairs.iter().copied().collect()
}

#[test]
fn first_syzygies_small_cases() {
    let one = first_syzygies(&sys(1), 2, Budget::unlimited()).unwrap();
    assert!(one.generators.is_empty());
    assert_eq!(one.counts, counts(&[(1, 0), (2, 0)]));

    let two = first_syzygies(&sys(2), 2, Budget::unlimited()).unwrap();
    assert_eq!(two.counts, counts(&[(1, 2), (2, 0)]));
    assert!(!two.partial);

    let s = sys(3);
    let three = first_syzygies(&s, 2, Budget::unlimited()).unwrap();
    assert_eq!(three.counts, counts(&[(1, 2), (2, 31)]));
    let koszul = three
        .generators
        .iter()
        .filter(|g| matches!(g.origin, SyzygyOrigin::Koszul { .. }))
        .count();
    assert_eq!(koszul, 28);
    let gens = s.minimal_generators();
    for g in &three.generators {
        assert!(pairing(s.ring(), &g.coefficients, &gens).is_zero());
    }
}

#[test]
fn first_syzygy_counts_match_printed_displays() {
    let fx = FixtureSet::default();
    for n in [2u32, 3] {
        let table = fx.first_syzygies(n).unwrap().table();
        let got = first_syzygies(&sys(n as usize), n, Budget::unlimited()).unwrap();
        assert_eq!(table.get(0, 2), BettiEntry::Count(n as u64 * n as u64 - 1));
        for (&d, &c) in &got.counts {
            assert_eq!(
                table.get(1, 2 + d),
                BettiEntry::Count(c as u64),
                "n = {n}, degree {d}"
            );
        }
    }
}

#[test]
fn no_cubic_first_syzygies_for_n3() {
    let got = first_syzygies(&sys(3), 4, Budget::unlimited()).unwrap();
    assert_eq!(got.counts, counts(&[(1, 2), (2, 31), (3, 0), (4, 0)]));
}

#[test]
fn quadratic_syzygies_are_the_word_ones_modulo_koszul() {
    let s = sys(3);
    let computed: Vec<SyzygyTuple<u32>> = first_syzygies(&s, 2, Budget::unlimited())
        .unwrap()
        .generators
        .iter()
        .filter(|g| g.degree == 2 && g.origin == SyzygyOrigin::Computed)
        .map(|g| lift_from_minimal(&s, &g.coefficients))
        .collect();
    assert_eq!(computed.len(), 3);
    let low = tuples(&s, &["E", "X", "Y"]);
    let words = tuples(&s, &["X^2", "Y^2", "XY+YX"]);
    let kos = koszul(&s);
    let span = |extra: &[SyzygyTuple<u32>]| -> Vec<SyzygyTuple<u32>> {
        low.iter().chain(extra).chain(&kos).cloned().collect()
    };
    for t in &computed {
        assert!(syzygy_membership(&s, t, &span(&words), Budget::unlimited()).unwrap());
    }
    for t in &words {
        assert!(syzygy_membership(&s, t, &span(&computed), Budget::unlimited()).unwrap());
    }
    // the degree-2 words are not redundant
    for (k, t) in words.iter().enumerate() {
        let others: Vec<_> = words
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, w)| w.clone())
            .collect();
        assert!(!syzygy_membership(&s, t, &span(&others), Budget::unlimited()).unwrap());
    }
}

#[test]
fn cubic_words_reduce_to_lower_degrees_for_n3() {
    let s = sys(3);
    let mut gens = tuples(&s, &["E", "X", "Y", "X^2", "Y^2", "XY+YX"]);
    gens.extend(koszul(&s));
    for w in ["XYX", "YXY", "X^3", "Y^3"] {
        assert!(
            syzygy_membership(&s, &tuple(&s, w), &gens, Budget::unlimited()).unwrap(),
            "{w}"
        );
    }
}

#[test]
fn quadratic_words_reduce_for_n2() {
    let s = sys(2);
    let mut gens = tuples(&s, &["E", "X", "Y"]);
    gens.extend(koszul(&s));
    for w in ["X^2", "Y^2", "XY+YX"] {
        assert!(
            syzygy_membership(&s, &tuple(&s, w), &gens, Budget::unlimited()).unwrap(),
            "{w}"
        );
    }
    // but X is not generated by E alone plus Koszul
    let mut weak = tuples(&s, &["E"]);
    weak.extend(koszul(&s));
    assert!(!syzygy_membership(&s, &tuple(&s, "X"), &weak, Budget::unlimited()).unwrap());
}

#[test]
fn membership_edge_cases() {
    let s = sys(2);
    let x = tuple(&s, "X");
    assert!(syzygy_membership(&s, &x, std::slice::from_ref(&x), Budget::unlimited()).unwrap());
    let zero = SyzygyTuple {
        a: vec![s.ring().zero(); 4],
    };
    assert!(syzygy_membership(&s, &zero, &[], Budget::unlimited()).unwrap());
    let not = tuple(&s, "XY");
    assert!(matches!(
        syzygy_membership(&s, &not, &[x], Budget::unlimited()),
        Err(SyzygyError::NotSyzygy)
    ));
}

#[test]
fn free_module_round_trip() {
    let s = sys(2);
    let ring = s.ring();
    let module = FreeModule::new(ring, &[2, 2, 2]);
    assert_eq!(module.rank(), 3);
    let v = vec![
        ring.x(1, 1),
        ring.zero(),
        ring.mul(&ring.y(1, 2), &ring.x(2, 1)),
    ];
    let head = ring.y(2, 2);
    let (h, back) = module.decode(&module.encode(Some(&head), &v));
    assert_eq!(h, head);
    assert_eq!(back, v);
}
