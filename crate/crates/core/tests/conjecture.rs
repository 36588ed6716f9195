use std::collections::{BTreeMap, BTreeSet};

use commvar::conjecture::*;
use commvar::fixtures::FixtureSet;
use commvar::genmat::{for_each_subset, CommutatorSystem};
use commvar::groebner::{buchberger, colon, Budget, Ideal};
use commvar::hilbert::BettiEntry;
use commvar::syzygy::first_syzygies;
use commvar::PrimeField;

fn gf() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

#[test]
fn selection_parameters() {
    let p3 = selection_params(3).unwrap();
    assert_eq!(
        (p3.k, p3.s, p3.d_min, p3.d_max, p3.count_min, p3.count_max),
        (2, 0, 2, 3, 1, 4)
    );
    let p4 = selection_params(4).unwrap();
    assert_eq!(
        (p4.k, p4.s, p4.d_min, p4.d_max, p4.count_min, p4.count_max),
        (2, 1, 4, 6, 3, 7)
    );
    let p6 = selection_params(6).unwrap();
    assert_eq!((p6.k, p6.s, p6.d_min), (3, 0, 8));
    assert!(matches!(
        selection_params(1),
        Err(ConjectureError::TooSmall(1))
    ));
}

#[test]
fn parameter_invariants() {
    for n in 2..=40u32 {
        let p = selection_params(n).unwrap();
        assert!(
            p.k * (p.k + 1) / 2 <= n && n < (p.k + 1) * (p.k + 2) / 2,
            "k for n = {n}"
        );
        assert!(p.s <= p.k);
        assert_eq!(p.d_max, n * (n - 1) / 2);
        assert!(p.d_min <= p.d_max);
    }
}

#[test]
fn colon_bidegrees_for_small_n() {
    let got = colon_bidegrees(2, None).unwrap();
    assert_eq!(got, BTreeMap::from([(1, vec![(1, 0), (0, 1)])]));
    let got = colon_bidegrees(3, None).unwrap();
    assert_eq!(
        got,
        BTreeMap::from([(2, vec![(1, 1)]), (3, vec![(3, 0), (2, 1), (1, 2), (0, 3)])])
    );
    let got = colon_bidegrees(4, None).unwrap();
    assert_eq!(
        got,
        BTreeMap::from([
            (4, vec![(3, 1), (2, 2), (1, 3)]),
            (5, vec![(4, 1), (3, 2), (2, 3), (1, 4)]),
            (
                6,
                vec![(6, 0), (5, 1), (4, 2), (3, 3), (2, 4), (1, 5), (0, 6)]
            ),
        ])
    );
}

/// All total bidegrees of n distinct cells (i, j), i + j ≤ n − 1, one of
/// them (0,0), by listing subsets.
fn brute_force_bidegrees(n: u32) -> BTreeSet<(u32, u32)> {
    let cells: Vec<(u32, u32)> = (0..n)
        .flat_map(|r| (0..=r).map(move |i| (i, r - i)))
        .filter(|&c| c != (0, 0))
        .collect();
    let mut out = BTreeSet::new();
    for_each_subset(cells.len(), n as usize - 1, &mut |sel| {
        let (a, b) = sel
            .iter()
            .fold((0, 0), |acc, &k| (acc.0 + cells[k].0, acc.1 + cells[k].1));
        out.insert((a, b));
    });
    out
}

#[test]
fn enumerator_matches_subset_listing() {
    for n in 2..=7u32 {
        assert_eq!(
            reachable_bidegrees(n, n - 1),
            brute_force_bidegrees(n),
            "n = {n}"
        );
    }
}

#[test]
fn count_formulas_match_enumeration() {
    for n in 2..=12u32 {
        let p = selection_params(n).unwrap();
        let degs = colon_bidegrees(n, None).unwrap();
        assert_eq!(
            degs[&p.d_min].len() as u32,
            p.count_min,
            "count_min, n = {n}"
        );
        assert_eq!(
            degs[&p.d_max].len() as u32,
            p.d_max + 1,
            "count_max, n = {n}"
        );
        assert_eq!(p.count_max, p.d_max + 1);
        assert_eq!(*degs.keys().next().unwrap(), p.d_min);
        for (d, run) in &degs {
            assert!(is_contiguous_run(run), "n = {n}, degree {d}: {run:?}");
        }
    }
}

#[test]
fn cutoff_extends_the_degree_range() {
    let wide = colon_bidegrees(4, Some(8)).unwrap();
    assert_eq!(
        wide.keys().copied().collect::<Vec<_>>(),
        vec![4, 5, 6, 7, 8]
    );
    // cells stop at row n − 1 = 3, so nothing beyond 3 + 2 + 1 on one axis
    assert!(wide[&7].iter().all(|&(a, b)| a <= 6 && b <= 6));
}

#[test]
fn contiguity_detector() {
    assert!(is_contiguous_run(&[(3, 1), (2, 2), (1, 3)]));
    assert!(!is_contiguous_run(&[(3, 1), (1, 3)]));
    assert!(is_contiguous_run(&[]));
}

#[test]
fn first_betti_predictions() {
    assert_eq!(
        first_betti_prediction(3).unwrap(),
        BTreeMap::from([(1, 2), (2, 31)])
    );
    assert_eq!(
        first_betti_prediction(4).unwrap(),
        BTreeMap::from([(1, 2), (2, 108), (3, 4)])
    );
    assert_eq!(
        first_betti_prediction(5).unwrap(),
        BTreeMap::from([(1, 2), (2, 279), (3, 4), (4, 5)])
    );
    for n in 3..=10 {
        let total: u64 = first_betti_prediction(n).unwrap().values().sum();
        assert_eq!(total, first_betti_total(n), "n = {n}");
    }
    assert!(first_betti_prediction(1).is_err());
}

#[test]
fn first_betti_predictions_match_computed_counts() {
    for n in [2u32, 3] {
        let s = CommutatorSystem::build(gf(), n as usize).unwrap();
        let got = first_syzygies(&s, n, Budget::unlimited()).unwrap();
        let pred = first_betti_prediction(n).unwrap();
        for (&d, &c) in &got.counts {
            assert_eq!(
                pred.get(&d).copied().unwrap_or(0),
                c as u64,
                "n = {n}, degree {d}"
            );
        }
    }
}

#[test]
fn first_betti_predictions_match_printed_tables() {
    let fx = FixtureSet::default();
    for n in 4..=6u32 {
        let table = fx.resolution(n).unwrap();
        let pred = first_betti_prediction(n).unwrap();
        let mut compared = 0;
        for (&row, &count) in &pred {
            if let Some(e) = table.at(2, row) {
                assert_eq!(e, BettiEntry::Count(count), "n = {n}, row {row}");
                compared += 1;
            }
        }
        assert!(compared >= 3, "n = {n}");
    }
}

#[test]
fn shape_for_n3_against_the_full_table() {
    let shape = resolution_shape(3).unwrap();
    assert_eq!(shape.pd, 6);
    assert_eq!(shape.get(6, 3), Some(&ShapeCell::Count(4)));
    let table = FixtureSet::default().resolution(3).unwrap().minimal_table();
    let cmp = compare_shape(&shape, &table);
    let bad: Vec<_> = cmp.iter().filter(|c| !c.agrees).collect();
    // the single disagreement: 3·(n²−1) = 24 predicted where 32 is printed
    assert_eq!(bad.len(), 1);
    assert_eq!((bad[0].col, bad[0].row), (5, 3));
    assert_eq!(
        (bad[0].predicted.as_str(), bad[0].observed.as_str()),
        ("24", "32")
    );
}

#[test]
fn shape_staircase_matches_partial_tables() {
    let fx = FixtureSet::default();
    for n in 4..=6u32 {
        let shape = resolution_shape(n).unwrap();
        let fixture = fx.resolution(n).unwrap();
        let table = fixture.minimal_table();
        for c in compare_shape(&shape, &table) {
            if fixture.has_row(c.row) && c.observed != "0" {
                assert!(c.agrees, "n = {n}: {c:?}");
            }
        }
    }
    let s5 = resolution_shape(5).unwrap();
    assert_eq!(s5.get(3, 2), Some(&ShapeCell::Count(48)));
}

#[test]
fn shape_for_n2_is_degenerate() {
    let s = resolution_shape(2).unwrap();
    assert_eq!(s.pd, 2);
    assert_eq!(s.get(1, 1), Some(&ShapeCell::Count(3)));
    assert_eq!(s.get(2, 1), Some(&ShapeCell::Count(2)));
}

#[test]
fn knutson_feasibility() {
    assert!(!knutson_bidegree_feasible(4, (2, 2)));
    assert!(knutson_bidegree_feasible(3, (1, 1)));
    assert!(!knutson_bidegree_feasible(2, (1, 1)));
    assert!(knutson_bidegree_feasible(2, (1, 0)));
    // against direct listing of n − 1 distinct pure columns of degree ≤ 8
    let pool: Vec<(u32, u32)> = (1..=8)
        .map(|a| (a, 0))
        .chain((1..=8).map(|b| (0, b)))
        .collect();
    for n in 2..=5u32 {
        let mut reachable = BTreeSet::new();
        for_each_subset(pool.len(), n as usize - 1, &mut |sel| {
            reachable.insert(
                sel.iter()
                    .fold((0, 0), |acc, &k| (acc.0 + pool[k].0, acc.1 + pool[k].1)),
            );
        });
        for a in 0..=8 {
            for b in 0..=8 {
                assert_eq!(
                    knutson_bidegree_feasible(n, (a, b)),
                    reachable.contains(&(a, b)),
                    "n = {n}, ({a},{b})"
                );
            }
        }
    }
}

#[test]
fn knutson_candidates_n2() {
    let s = CommutatorSystem::build(gf(), 2).unwrap();
    let c = knutson_candidates(&s, 2);
    let degs: Vec<(u32, u32)> = c
        .iter()
        .filter(|k| k.bidegree.0 + k.bidegree.1 == 1)
        .map(|k| k.bidegree)
        .collect();
    assert_eq!(degs, vec![(1, 0), (0, 1)]);
    for k in &c {
        assert_eq!(k.columns[0], PowerColumn::Identity);
        assert!(!k.determinant.is_zero());
    }
}

#[test]
fn knutson_candidates_lie_in_the_n3_colon() {
    let s = CommutatorSystem::build(gf(), 3).unwrap();
    let ring = s.ring();
    let cands = knutson_candidates(&s, 2);
    assert!(cands.iter().any(|k| k.bidegree == (1, 1)
        && k.columns == vec![PowerColumn::Identity, PowerColumn::X(1), PowerColumn::Y(1)]));
    let j = Ideal::new(ring, s.off_diagonal());
    let c = colon(
        &j,
        &Ideal::new(ring, s.generators().to_vec()),
        Budget::unlimited(),
    )
    .unwrap();
    let gb = c.groebner(Budget::unlimited()).unwrap();
    let jgb = buchberger(ring, &s.off_diagonal(), Budget::unlimited()).unwrap();
    for k in cands.iter().filter(|k| k.bidegree.0 + k.bidegree.1 <= 3) {
        assert!(gb.contains(&k.determinant).unwrap(), "{:?}", k.columns);
        assert!(!jgb.contains(&k.determinant).unwrap(), "{:?}", k.columns);
    }
}
