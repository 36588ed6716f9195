//! One PASS/FAIL line per acceptance criterion, with wall-clock time
//! against the budget. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use commvar::fixtures::FixtureSet;
use commvar::genmat::CommutatorSystem;
use commvar::groebner::Budget;
use commvar::PrimeField;
use commvar_cli::checks::{self, Blocked, ColonData, Shared};
use commvar_cli::{CheckResult, Verdict};
use serde_json::json;

fn gf() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn sys(n: usize) -> CommutatorSystem<PrimeField> {
    CommutatorSystem::build(gf(), n).unwrap()
}

struct Criterion {
    number: u32,
    title: &'static str,
    budget: Duration,
}

fn report(
    c: &Criterion,
    elapsed: Duration,
    results: &[CheckResult],
    extra: &[(bool, String)],
) -> bool {
    let mut failures: Vec<String> = results
        .iter()
        .filter(|r| r.verdict != Verdict::Pass)
        .map(|r| format!("{} {}: {}", r.id, r.verdict.as_str(), r.summary))
        .collect();
    failures.extend(
        extra
            .iter()
            .filter(|(ok, _)| !ok)
            .map(|(_, why)| why.clone()),
    );
    let in_budget = elapsed <= c.budget;
    if !in_budget {
        failures.push(format!(
            "over budget ({:.2}s > {:.0}s)",
            elapsed.as_secs_f64(),
            c.budget.as_secs_f64()
        ));
    }
    let ok = failures.is_empty();
    println!(
        "criterion {:>2} {}  {:<44} {:>8.2}s / {:.0}s",
        c.number,
        if ok { "PASS" } else { "FAIL" },
        c.title,
        elapsed.as_secs_f64(),
        c.budget.as_secs_f64()
    );
    for f in &failures {
        println!("             {f}");
    }
    ok
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed())
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn main() -> ExitCode {
    let fx = FixtureSet::default();
    let budget = Budget::unlimited();
    let mut all = true;

    let c = Criterion {
        number: 1,
        title: "n=2 generators and first syzygies",
        budget: secs(5),
    };
    let ((r, _), t) = timed(|| checks::first_syzygy_counts(&sys(2), 4, &fx, budget));
    let exact = (
        r.data["minimal_generators"] == json!({"2": 3})
            && r.data["first_syzygies"] == json!({"1": 2, "2": 0, "3": 0, "4": 0}),
        format!(
            "counts {} / {}",
            r.data["minimal_generators"], r.data["first_syzygies"]
        ),
    );
    all &= report(&c, t, &[r], &[exact]);

    let c = Criterion {
        number: 2,
        title: "2x2 Cayley-Hamilton and trace identity",
        budget: secs(1),
    };
    let (r, t) = timed(checks::identities_2x2);
    all &= report(&c, t, &[r], &[]);

    let c = Criterion {
        number: 3,
        title: "candidates(5) are trace syzygies, n=2,3,4",
        budget: secs(60),
    };
    let (rs, t) = timed(|| {
        (2..=4)
            .map(|n| checks::trace_rules(n, 5))
            .collect::<Vec<_>>()
    });
    all &= report(&c, t, &rs, &[]);

    let c = Criterion {
        number: 4,
        title: "n=3 first syzygies and quadratic span",
        budget: secs(600),
    };
    let s3 = sys(3);
    let (rs, t) = timed(|| {
        let (r, syz) = checks::first_syzygy_counts(&s3, 4, &fx, budget);
        let span = checks::quadratic_span(&s3, syz.as_ref().map_err(Clone::clone), budget);
        vec![r, span]
    });
    let exact = (
        rs[0].data["first_syzygies"] == json!({"1": 2, "2": 31, "3": 0, "4": 0}),
        format!("counts {}", rs[0].data["first_syzygies"]),
    );
    all &= report(&c, t, &rs, &[exact]);

    let c = Criterion {
        number: 5,
        title: "n=3 colon ideal and determinants",
        budget: secs(900),
    };
    let ((rs, colon), t5) = timed(|| {
        let colon: Shared<ColonData<PrimeField>> =
            checks::compute_colon(&s3, budget).map_err(|e| Blocked::from(&e));
        let rs = vec![
            checks::colon_generators(&s3, colon.as_ref().map_err(Clone::clone)),
            checks::colon_determinants(&s3, colon.as_ref().map_err(Clone::clone), budget),
        ];
        (rs, colon)
    });
    all &= report(&c, t5, &rs, &[]);

    let c = Criterion {
        number: 6,
        title: "dim S/J = dim S/I = n^2+n, n=2,3",
        budget: secs(900),
    };
    let ((rs, bases3), t) = timed(|| {
        let s2 = sys(2);
        let b2 = checks::compute_bases(&s2, budget).map_err(|e| Blocked::from(&e));
        let b3 = checks::compute_bases(&s3, budget).map_err(|e| Blocked::from(&e));
        let rs = vec![
            checks::dimension(&s2, b2.as_ref().map_err(Clone::clone)),
            checks::dimension(&s3, b3.as_ref().map_err(Clone::clone)),
        ];
        (rs, b3)
    });
    all &= report(&c, t, &rs, &[]);

    let c = Criterion {
        number: 7,
        title: "cofactor identity with a repeated row",
        budget: secs(30),
    };
    let (r, t) = timed(|| checks::cofactor_identity(3));
    all &= report(&c, t, &[r], &[]);

    let c = Criterion {
        number: 8,
        title: "predictors against enumeration and tables",
        budget: secs(5),
    };
    let (r, t) = timed(|| checks::predictors(&fx));
    all &= report(&c, t, &[r], &[]);

    let c = Criterion {
        number: 9,
        title: "splice tail and Euler relations",
        budget: secs(5),
    };
    let (rs, t) = timed(|| {
        vec![
            checks::splice_euler_n4(&fx),
            checks::euler_n3(&s3, &fx, bases3.as_ref().map_err(Clone::clone)),
        ]
    });
    all &= report(&c, t, &rs, &[]);

    // shares the colon computed for criterion 5, so its budget is what is
    // left of that one
    let c = Criterion {
        number: 10,
        title: "Knutson bidegrees and n=3 membership",
        budget: secs(900).saturating_sub(t5),
    };
    let (rs, t) = timed(|| {
        vec![
            checks::knutson_feasibility(),
            checks::knutson_membership(&s3, colon.as_ref().map_err(Clone::clone)),
        ]
    });
    all &= report(&c, t, &rs, &[]);

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
