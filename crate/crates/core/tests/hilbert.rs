use std::collections::BTreeSet;

use commvar::fixtures::FixtureSet;
use commvar::genmat::CommutatorSystem;
use commvar::groebner::{buchberger, colon, minimal_generators_over, Budget, Ideal};
use commvar::hilbert::*;
use commvar::{Monomial, PrimeField};
use proptest::prelude::*;

fn gf() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

/// Number of monomials of each degree ≤ `upto` divisible by none of `gens`.
fn standard_monomial_counts(gens: &[Monomial], nvars: usize, upto: u32) -> Vec<i64> {
    fn go(
        nvars: usize,
        at: usize,
        left: u32,
        cur: &mut Vec<u8>,
        gens: &[Monomial],
        count: &mut i64,
    ) {
        if at == nvars {
            if left == 0 {
                let m = Monomial::from_exps(cur);
                if !gens.iter().any(|g| g.divides(&m)) {
                    *count += 1;
                }
            }
            return;
        }
        for e in 0..=left {
            cur[at] = e as u8;
            go(nvars, at + 1, left - e, cur, gens, count);
        }
        cur[at] = 0;
    }
    (0..=upto)
        .map(|d| {
            let mut c = 0;
            go(nvars, 0, d, &mut vec![0; nvars], gens, &mut c);
            c
        })
        .collect()
}

fn mon(exps: &[u8]) -> Monomial {
    Monomial::from_exps(exps)
}

#[test]
fn numerator_examples() {
    assert_eq!(hilbert_numerator(&[], 3).unwrap().numerator, vec![1]);
    let h = hilbert_numerator(&[mon(&[1, 0, 0])], 3).unwrap();
    assert_eq!(h.numerator, vec![1, -1]);
    assert_eq!(h.dimension(), 2);
    assert_eq!(hilbert_numerator(&[], 4).unwrap().dimension(), 4);
    assert!(matches!(
        hilbert_numerator(&[mon(&[1, 0])], 3),
        Err(HilbertError::Universe {
            got: 2,
            expected: 3
        })
    ));
}

#[test]
fn non_minimal_input_is_accepted() {
    let a = hilbert_numerator(&[mon(&[1, 0]), mon(&[2, 1]), mon(&[0, 3])], 2).unwrap();
    let b = hilbert_numerator(&[mon(&[1, 0]), mon(&[0, 3])], 2).unwrap();
    assert_eq!(a, b);
    assert_eq!(b.dimension(), 0);
    assert_eq!(b.multiplicity(), 3);
}

fn monomial_ideal() -> impl Strategy<Value = (usize, Vec<Vec<u8>>)> {
    (1usize..=6).prop_flat_map(|nv| {
        (
            Just(nv),
            prop::collection::vec(prop::collection::vec(0u8..=3, nv), 0..6),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn numerator_matches_brute_force_count((nv, gens) in monomial_ideal()) {
        let gens: Vec<Monomial> = gens.iter().map(|e| Monomial::from_exps(e)).filter(|m| !m.is_one()).collect();
        let h = hilbert_numerator(&gens, nv).unwrap();
        prop_assert_eq!(h.hilbert_function(8), standard_monomial_counts(&gens, nv, 8));
    }

    #[test]
    fn numerator_does_not_depend_on_variable_order((nv, gens) in monomial_ideal(), shift in 0usize..6) {
        let gens: Vec<Monomial> = gens.iter().map(|e| Monomial::from_exps(e)).collect();
        let rotated: Vec<Monomial> = gens
            .iter()
            .map(|m| {
                let mut e = m.exps().to_vec();
                e.rotate_left(shift % nv);
                Monomial::from_exps(&e)
            })
            .collect();
        prop_assert_eq!(hilbert_numerator(&gens, nv).unwrap(), hilbert_numerator(&rotated, nv).unwrap());
    }
}

#[test]
fn complete_intersection_numerator_for_n3_matches_direct_count() {
    let s = CommutatorSystem::build(gf(), 3).unwrap();
    let gb = buchberger(s.ring(), &s.off_diagonal(), Budget::unlimited()).unwrap();
    let lead = gb.leading_monomials();
    let h = hilbert_numerator(&lead, s.ring().nvars()).unwrap();
    assert_eq!(
        h.numerator,
        vec![1, 0, -6, 0, 15, 0, -20, 0, 15, 0, -6, 0, 1]
    );
    assert_eq!(
        h.hilbert_function(6),
        standard_monomial_counts(&lead, 18, 6)
    );
}

#[test]
fn commutator_quotients_have_the_expected_dimension() {
    for n in [2usize, 3] {
        let s = CommutatorSystem::build(gf(), n).unwrap();
        let gb = buchberger(s.ring(), s.generators(), Budget::unlimited()).unwrap();
        let h = hilbert_numerator(&gb.leading_monomials(), s.ring().nvars()).unwrap();
        assert_eq!(h.dimension(), n * n + n);
        assert!(h.multiplicity() > 0);
        let (reduced, exp) = h.reduced();
        assert_eq!(exp, n * n + n);
        assert_eq!(reduced.iter().sum::<i64>(), h.multiplicity());
    }
}

#[test]
fn euler_constraint_for_n4_gives_c_minus_d() {
    let fx = FixtureSet::default();
    let table = fx.n4_conjectured().unwrap().table();
    let h = fx.n4_hilbert().unwrap().series();
    let cons = euler_constraints(&table, &h).unwrap();
    assert_eq!(cons.len(), 1);
    let c = &cons[0];
    assert_eq!(c.degree, 13);
    let terms: BTreeSet<(i64, String)> = c.unknowns.iter().cloned().collect();
    assert_eq!(
        terms,
        BTreeSet::from([(1, "c".to_string()), (-1, "d".to_string())])
    );
    assert_eq!(c.rhs, -2262);
}

#[test]
fn known_n4_entries_contradicting_the_series_are_reported() {
    let fx = FixtureSet::default();
    let mut table = fx.n4_conjectured().unwrap().table();
    table.set_count(2, 4, 107);
    let h = fx.n4_hilbert().unwrap().series();
    assert_eq!(
        euler_constraints(&table, &h),
        Err(HilbertError::Inconsistent {
            degree: 4,
            lhs: 107,
            rhs: 108
        })
    );
}

#[test]
fn n3_table_satisfies_every_euler_relation() {
    let s = CommutatorSystem::build(gf(), 3).unwrap();
    let gb = buchberger(s.ring(), s.generators(), Budget::unlimited()).unwrap();
    let h = hilbert_numerator(&gb.leading_monomials(), s.ring().nvars()).unwrap();
    let table = FixtureSet::default().resolution(3).unwrap().table();
    assert_eq!(euler_constraints(&table, &h).unwrap(), vec![]);
}

#[test]
fn trivial_table_against_trivial_series() {
    let mut t = GradedBettiTable::new();
    t.set_count(0, 0, 1);
    assert_eq!(
        euler_constraints(&t, &HilbertSeries::new(vec![1], 3)).unwrap(),
        vec![]
    );
}

#[test]
fn splice_from_computed_n3_canonical_generators() {
    let s = CommutatorSystem::build(gf(), 3).unwrap();
    let ring = s.ring();
    let j = Ideal::new(ring, s.off_diagonal());
    let c = colon(
        &j,
        &Ideal::new(ring, s.generators().to_vec()),
        Budget::unlimited(),
    )
    .unwrap();
    let extra =
        minimal_generators_over(ring, &s.off_diagonal(), c.generators(), Budget::unlimited())
            .unwrap();
    let mut omega = GradedBettiTable::new();
    for g in &extra {
        let prev = match omega.get(0, g.degree) {
            BettiEntry::Count(k) => k,
            BettiEntry::Unknown(_) => unreachable!(),
        };
        omega.set_count(0, g.degree, prev + 1);
    }
    assert_eq!(omega.get(0, 2), BettiEntry::Count(1));
    assert_eq!(omega.get(0, 3), BettiEntry::Count(4));

    let tail = splice_tail(&omega, 6, splice_twist(3));
    assert_eq!(splice_twist(3), 12);
    let printed = FixtureSet::default().resolution(3).unwrap().table();
    assert_eq!(tail.get(6, 10), BettiEntry::Count(1));
    assert_eq!(tail.get(6, 9), BettiEntry::Count(4));
    for (i, j, e) in tail.iter() {
        assert_eq!(printed.get(i, j), e.clone());
    }
}

#[test]
fn splice_reproduces_the_n4_tail_both_ways() {
    let fx = FixtureSet::default();
    let omega = fx.n4_canonical().unwrap().table();
    let conj = fx.n4_conjectured().unwrap().table();
    let tail = splice_tail(&omega, 12, splice_twist(4));
    assert_eq!(tail.get(12, 20), BettiEntry::Count(3));
    for (i, j, e) in tail.iter() {
        assert_eq!(&conj.get(i, j), e, "β_{i},{j}");
    }
    // every entry of the conjectured table in columns 9..=12 comes from ω
    for (i, j, e) in conj.iter() {
        if i >= 9 {
            assert_eq!(&tail.get(i, j), e, "β_{i},{j}");
        }
    }
}

#[test]
fn empty_splice() {
    assert!(splice_tail(&GradedBettiTable::new(), 6, 12).is_empty());
}

#[test]
fn fixture_totals_disagree_only_where_documented() {
    let fx = FixtureSet::default();
    let cols = |name: &str| -> Vec<u32> {
        fx.betti(name)
            .unwrap()
            .total_mismatches()
            .into_iter()
            .map(|(i, _, _)| i)
            .collect()
    };
    assert_eq!(cols("n4_conjectured_resolution.json"), vec![2, 6]);
    assert_eq!(cols("n4_canonical_module.json"), vec![2]);
    for clean in [
        "n2_first_syzygies.json",
        "n3_first_syzygies.json",
        "n3_resolution.json",
        "n4_partial_resolution.json",
        "n5_partial_resolution.json",
        "n6_partial_resolution.json",
    ] {
        assert_eq!(cols(clean), Vec::<u32>::new(), "{clean}");
    }
}

#[test]
fn macaulay_rendering() {
    let t = FixtureSet::default().resolution(3).unwrap().table();
    let expected = "\
total: 1 9 34 60 61 32 5
    0: 1 .  1  .  .  . .
    1: . 9  2  .  .  . .
    2: . . 31 32  3  . .
    3: . .  . 28 58 32 4
    4: . .  .  .  .  . 1
";
    assert_eq!(t.render(), expected);
    let conj = FixtureSet::default().n4_conjectured().unwrap().table();
    assert!(conj
        .render()
        .starts_with("total: 1 15 114 595 2127 4713 6902 4432+ 5710+ 3821 1170 200 14\n"));
}

#[test]
fn series_arithmetic() {
    // (1 − t)² / (1 − t)^3 = 1 / (1 − t): one-dimensional, multiplicity 1
    let h = HilbertSeries::new(vec![1, -2, 1], 3);
    assert_eq!(h.reduced(), (vec![1], 1));
    assert_eq!(h.dimension(), 1);
    assert_eq!(h.hilbert_function(4), vec![1, 1, 1, 1, 1]);
    assert_eq!(h.to_string(), "(1 - 2t + t^2)/(1-t)^3");
}
