use std::path::PathBuf;

use commvar::conjecture::{
    colon_bidegrees, compare_shape, first_betti_prediction, first_betti_total,
    knutson_bidegree_feasible, resolution_shape, selection_params,
};
use commvar::fixtures::FixtureSet;
use commvar::genmat::{CommutatorSystem, MatrixError};
use commvar::groebner::{buchberger, buchberger_truncated, GbStatus};
use commvar::hilbert::hilbert_numerator;
use commvar::syzygy::{eval_expr, first_syzygies, is_trace_syzygy, tuple_from_matrix};
use commvar::words::candidates;
use commvar::{par, Field, FieldTag, MonomialOrder, PolyRing, PrimeField, Rationals};
use serde_json::json;
use thiserror::Error;

use crate::checks::{self, CheckError, Shared};
use crate::config::{Cli, Command, ConfigError, IdealName, OrderName, Prediction, RunConfig};
use crate::report::{CheckResult, Label, Report, ReportBuilder, Verdict};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

fn lift<T, E>(r: Result<T, E>) -> Result<T, CliError>
where
    CheckError: From<E>,
{
    r.map_err(|e| CliError::Check(CheckError::from(e)))
}

macro_rules! with_field {
    ($tag:expr, |$f:ident| $body:expr) => {
        match $tag {
            FieldTag::Rational => {
                let $f = Rationals;
                $body
            }
            FieldTag::Prime(p) => {
                let $f = PrimeField::new(p as u64).expect("validated when parsed");
                $body
            }
        }
    };
}

/// The commutator system for `n` in the configured monomial order.
pub fn system<F: Field>(
    field: F,
    n: usize,
    order: OrderName,
) -> Result<CommutatorSystem<F>, CliError> {
    let ring = PolyRing::new(field, n);
    let ring = match order {
        OrderName::Grevlex => ring,
        OrderName::Lex => lift(ring.with_order(MonomialOrder::lex(ring.nvars())))?,
    };
    Ok(CommutatorSystem::over(ring))
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli, argv: Vec<String>) -> Result<Report, CliError> {
    let cfg = RunConfig::from_options(&cli.options)?;
    let command = cli.command;
    par::with_threads(cfg.threads, || {
        let mut rb = ReportBuilder::new();
        match command {
            Command::Commutator => commutator(&cfg, &mut rb)?,
            Command::Candidates => list_candidates(&cfg, &mut rb),
            Command::Syzygies => syzygies(&cfg, &mut rb)?,
            Command::SyzygyCheck => syzygy_check(&cfg, &mut rb)?,
            Command::Groebner => groebner(&cfg, &mut rb)?,
            Command::Colon => colon(&cfg, &mut rb)?,
            Command::Hilbert => hilbert(&cfg, &mut rb)?,
            Command::CheckSplice => check_splice(&cfg, &mut rb)?,
            Command::Predict { what } => predict(&cfg, what, &mut rb)?,
            Command::Verify => verify_into(&cfg, &mut rb)?,
        }
        Ok(rb.finish(command.name(), argv, cfg.clone()))
    })
}

/// Runs every check available for the configured n.
pub fn run_verify_suite(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut rb = ReportBuilder::new();
    par::with_threads(cfg.threads, || verify_into(cfg, &mut rb))?;
    let mut argv = vec!["verify".to_string()];
    if let Some(n) = cfg.n {
        argv.extend(["-n".to_string(), n.to_string()]);
    }
    Ok(rb.finish("verify", argv, cfg.clone()))
}

fn verify_into(cfg: &RunConfig, rb: &mut ReportBuilder) -> Result<(), CliError> {
    let n = cfg.require_n("verify", 2)?;
    with_field!(cfg.field, |f| verify_with(f, n, cfg, rb))
}

const BEYOND_DESK: &str = "needs a Groebner basis of I or (J:I), not attempted for n >= 4";

fn verify_with<F: Field>(
    field: F,
    n: usize,
    cfg: &RunConfig,
    rb: &mut ReportBuilder,
) -> Result<(), CliError> {
    let fx = FixtureSet::new(&cfg.fixtures);
    let budget = cfg.budget();
    let bound = cfg.degree_bound.unwrap_or(4);
    let sys = system(field, n, cfg.order)?;

    if n == 2 {
        rb.run(checks::identities_2x2);
    }
    rb.run(|| checks::trace_rules(n, 5));
    if n <= 3 {
        let mut syz = None;
        rb.run(|| {
            let (r, s) = checks::first_syzygy_counts(&sys, bound, &fx, budget);
            syz = Some(s);
            r
        });
        let syz = syz.expect("set by the check");
        if n == 3 {
            rb.run(|| checks::quadratic_span(&sys, shared(&syz), budget));
        }
        let mut bases = None;
        rb.run(|| {
            let b = checks::compute_bases(&sys, budget).map_err(|e| checks::Blocked::from(&e));
            let r = checks::dimension(&sys, shared(&b));
            bases = Some(b);
            r
        });
        let bases = bases.expect("set by the check");
        let mut colon = None;
        rb.run(|| {
            let c = checks::compute_colon(&sys, budget).map_err(|e| checks::Blocked::from(&e));
            let r = checks::colon_generators(&sys, shared(&c));
            colon = Some(c);
            r
        });
        let colon = colon.expect("set by the check");
        if n == 3 {
            rb.run(|| checks::colon_determinants(&sys, shared(&colon), budget));
            rb.run(|| checks::cofactor_identity(3));
            rb.run(|| checks::euler_n3(&sys, &fx, shared(&bases)));
            rb.run(|| checks::splice_n3(&fx, shared(&colon)));
        }
        rb.run(|| checks::knutson_membership(&sys, shared(&colon)));
    } else {
        for id in ["first-syzygies", "dimension", "colon", "knutson-membership"] {
            rb.push(CheckResult::skipped(&format!("{id}-n{n}"), BEYOND_DESK));
        }
    }
    if n == 3 || n == 4 {
        rb.run(checks::knutson_feasibility);
    }
    if n == 4 {
        rb.run(|| checks::splice_euler_n4(&fx));
    }
    rb.run(|| checks::predictors(&fx));
    Ok(())
}

fn shared<T>(s: &Shared<T>) -> Shared<&T> {
    s.as_ref().map_err(Clone::clone)
}

fn commutator(cfg: &RunConfig, rb: &mut ReportBuilder) -> Result<(), CliError> {
    let n = cfg.require_n("commutator", 1)?;
    with_field!(cfg.field, |f| {
        let sys = system(f, n, cfg.order)?;
        let gens = sys.describe();
        let lines = gens
            .iter()
            .map(|g| {
                let mark = if g.diagonal { " (diagonal)" } else { "" };
                format!(
                    "f_{} = Z[{},{}]{mark}: {}",
                    g.index, g.row, g.col, g.polynomial
                )
            })
            .collect();
        rb.push(
            CheckResult::new(
                "commutator",
                Label::Result,
                Verdict::Pass,
                format!(
                    "{} entries of XY - YX; diagonal indices {:?}",
                    gens.len(),
                    sys.diagonal_indices()
                ),
            )
            .with_data(json!({
                "n": n,
                "order": sys.ring().order().describe(),
                "diagonal_indices": sys.diagonal_indices(),
                "generators": gens,
            }))
            .with_lines(lines),
        );
    });
    Ok(())
}

fn list_candidates(cfg: &RunConfig, rb: &mut ReportBuilder) {
    let cands = candidates(cfg.max_degree);
    let rows: Vec<_> = cands
        .iter()
        .map(|c| json!({ "expr": c.to_string(), "bidegree": c.bidegree(), "origin": c.origin() }))
        .collect();
    let lines = cands
        .iter()
        .map(|c| match c.bidegree() {
            Some((a, b)) => format!("({a},{b})  {c}"),
            None => format!("(-,-)  {c}"),
        })
        .collect();
    rb.push(
        CheckResult::new(
            "candidates",
            Label::Result,
            Verdict::Pass,
            format!(
                "{} candidate trace syzygies up to degree {}",
                cands.len(),
                cfg.max_degree
            ),
        )
        .with_data(json!({ "max_degree": cfg.max_degree, "candidates": rows }))
        .with_lines(lines),
    );
}

fn syzygies(cfg: &RunConfig, rb: &mut ReportBuilder) -> Result<(), CliError> {
    let n = cfg.require_n("syzygies", 1)?;
    let bound = cfg.degree_bound.unwrap_or(4);
    with_field!(cfg.field, |f| {
        let sys = system(f, n, cfg.order)?;
        rb.run(|| {
            checks::guarded("first-syzygies", || {
                let syz = first_syzygies(&sys, bound, cfg.budget().partial())?;
                let verdict = if syz.partial {
                    Verdict::Partial
                } else {
                    Verdict::Pass
                };
                let counts: Vec<String> =
                    syz.counts.iter().map(|(d, c)| format!("{d}:{c}")).collect();
                Ok(CheckResult::new(
                    "first-syzygies",
                    Label::Result,
                    verdict,
                    format!(
                        "minimal first syzygies by degree {{{}}}{}",
                        counts.join(", "),
                        if syz.partial { " (lower bounds)" } else { "" }
                    ),
                )
                .with_data(json!({
                    "degree_bound": bound,
                    "counts": syz.counts,
                    "partial": syz.partial,
                    "stats": checks::stats_json(&syz.stats),
                })))
            })
        });
        for c in candidates(bound as usize) {
            let id = format!("candidate {c}");
            rb.run(|| {
                let ok = is_trace_syzygy(&sys, &eval_expr(&sys, &c));
                CheckResult::new(
                    &id,
                    Label::Check,
                    Verdict::from_bool(ok),
                    if ok { "trace syzygy" } else { "not a syzygy" },
                )
                .with_data(json!({ "bidegree": c.bidegree() }))
            });
        }
    });
    Ok(())
}

fn syzygy_check(cfg: &RunConfig, rb: &mut ReportBuilder) -> Result<(), CliError> {
    let path = cfg.matrix.clone().ok_or(ConfigError::MissingMatrix)?;
    let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let rows = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .count();
    let n = cfg.n.unwrap_or(rows.max(1));
    with_field!(cfg.field, |f| {
        let sys = system(f, n, cfg.order)?;
        let a = lift(sys.ops().parse(&text))?;
        if a.size() != n {
            return Err(CheckError::Matrix(MatrixError::SizeMismatch(a.size(), n)).into());
        }
        let ok = is_trace_syzygy(&sys, &a);
        let tuple = lift(tuple_from_matrix(&sys, &a))?;
        let ring = sys.ring();
        rb.push(
            CheckResult::new(
                "syzygy-check",
                Label::Check,
                Verdict::from_bool(ok),
                if ok {
                    "tr(A(XY - YX)) = 0"
                } else {
                    "tr(A(XY - YX)) is nonzero"
                },
            )
            .with_data(json!({
                "n": n,
                "is_syzygy": ok,
                "tuple": tuple.a.iter().map(|p| ring.format(p)).collect::<Vec<_>>(),
            })),
        );
    });
    Ok(())
}

fn groebner(cfg: &RunConfig, rb: &mut ReportBuilder) -> Result<(), CliError> {
    let n = cfg.require_n("groebner", 1)?;
    with_field!(cfg.field, |f| {
        let sys = system(f, n, cfg.order)?;
        let gens = match cfg.ideal {
            IdealName::I => sys.generators().to_vec(),
            IdealName::J => sys.off_diagonal(),
        };
        let ring = sys.ring();
        let budget = cfg.budget().partial();
        rb.run(|| {
            checks::guarded("groebner", || {
                let gb = match cfg.degree_bound {
                    Some(d) => buchberger_truncated(ring, &gens, d, budget)?,
                    None => buchberger(ring, &gens, budget)?,
                };
                let (verdict, status) = match gb.status() {
                    GbStatus::Complete => (Verdict::Pass, "complete".to_string()),
                    GbStatus::Partial => {
                        (Verdict::Partial, "partial (budget exhausted)".to_string())
                    }
                    GbStatus::Truncated(d) => {
                        (Verdict::Partial, format!("complete up to degree {d}"))
                    }
                };
                Ok(CheckResult::new(
                    "groebner",
                    Label::Result,
                    verdict,
                    format!(
                        "{:?}: {} elements, {status}",
                        cfg.ideal,
                        gb.elements().len()
                    ),
                )
                .with_data(json!({
                    "ideal": cfg.ideal,
                    "order": ring.order().describe(),
                    "status": gb.status(),
                    "size": gb.elements().len(),
                    "stats": checks::stats_json(gb.stats()),
                    "elements": gb.elements().iter().map(|p| ring.format(p)).collect::<Vec<_>>(),
                })))
            })
        });
    });
    Ok(())
}

fn colon(cfg: &RunConfig, rb: &mut ReportBuilder) -> Result<(), CliError> {
    let n = cfg.require_n("colon", 2)?;
    with_field!(cfg.field, |f| {
        let sys = system(f, n, cfg.order)?;
        let ring = sys.ring();
        rb.run(|| {
            checks::guarded("colon", || {
                let c = checks::compute_colon(&sys, cfg.budget())?;
                let lines = c
                    .extra
                    .iter()
                    .zip(&c.bidegrees)
                    .map(|(g, (a, b))| format!("({a},{b})  {}", ring.format(&g.polynomial)))
                    .collect();
                Ok(CheckResult::new(
                    "colon",
                    Label::Result,
                    Verdict::Pass,
                    format!("(J:I) needs {} generators beyond J: {:?}", c.extra.len(), c.bidegrees),
                )
                .with_data(json!({
                    "bidegrees": c.bidegrees,
                    "generators": c.extra.iter().map(|g| ring.format(&g.polynomial)).collect::<Vec<_>>(),
                    "basis_size": c.gb.elements().len(),
                }))
                .with_lines(lines))
            })
        });
    });
    Ok(())
}

fn hilbert(cfg: &RunConfig, rb: &mut ReportBuilder) -> Result<(), CliError> {
    let n = cfg.require_n("hilbert", 1)?;
    with_field!(cfg.field, |f| {
        let sys = system(f, n, cfg.order)?;
        let gens = match cfg.ideal {
            IdealName::I => sys.generators().to_vec(),
            IdealName::J => sys.off_diagonal(),
        };
        rb.run(|| {
            checks::guarded("hilbert", || {
                let gb = buchberger(sys.ring(), &gens, cfg.budget())?;
                let h = hilbert_numerator(&gb.leading_monomials(), sys.ring().nvars())?;
                let (reduced, dim) = h.reduced();
                Ok(CheckResult::new(
                    "hilbert",
                    Label::Result,
                    Verdict::Pass,
                    format!(
                        "S/{:?}: dimension {}, multiplicity {}",
                        cfg.ideal,
                        h.dimension(),
                        h.multiplicity()
                    ),
                )
                .with_data(json!({
                    "ideal": cfg.ideal,
                    "nvars": h.nvars,
                    "numerator": h.numerator,
                    "reduced_numerator": reduced,
                    "dimension": dim,
                    "multiplicity": h.multiplicity(),
                }))
                .with_lines(vec![h.to_string()]))
            })
        });
    });
    Ok(())
}

fn check_splice(cfg: &RunConfig, rb: &mut ReportBuilder) -> Result<(), CliError> {
    let n = cfg.require_n("check-splice", 3)?;
    let fx = FixtureSet::new(&cfg.fixtures);
    match n {
        4 => {
            rb.run(|| checks::splice_euler_n4(&fx));
        }
        3 => with_field!(cfg.field, |f| {
            let sys = system(f, 3, cfg.order)?;
            let budget = cfg.budget();
            let bases = checks::compute_bases(&sys, budget).map_err(|e| checks::Blocked::from(&e));
            rb.run(|| checks::euler_n3(&sys, &fx, shared(&bases)));
            let colon = checks::compute_colon(&sys, budget).map_err(|e| checks::Blocked::from(&e));
            rb.run(|| checks::splice_n3(&fx, shared(&colon)));
        }),
        _ => {
            rb.push(CheckResult::skipped(
                "splice",
                format!("no canonical-module data for n = {n}"),
            ));
        }
    }
    Ok(())
}

fn predict(cfg: &RunConfig, what: Prediction, rb: &mut ReportBuilder) -> Result<(), CliError> {
    let n = cfg.require_n("predict", 2)? as u32;
    let conj =
        |id: &str, summary: String| CheckResult::new(id, Label::Conjecture, Verdict::Pass, summary);
    let r = match what {
        Prediction::Betti => {
            let p = lift(first_betti_prediction(n))?;
            let lines = p.iter().map(|(row, c)| format!("row {row}: {c}")).collect();
            conj(
                "betti",
                format!(
                    "first Betti numbers of I by row: {p:?} (total {})",
                    first_betti_total(n)
                ),
            )
            .with_data(json!({ "rows": p, "total": first_betti_total(n) }))
            .with_lines(lines)
        }
        Prediction::ColonDegrees => {
            let params = lift(selection_params(n))?;
            let degs = lift(colon_bidegrees(n, None))?;
            let lines = degs
                .iter()
                .map(|(d, v)| format!("degree {d}: {v:?}"))
                .collect();
            conj(
                "colon-degrees",
                format!(
                    "bidegrees of (J:I) generators beyond J, degrees {}..={}",
                    params.d_min, params.d_max
                ),
            )
            .with_data(json!({ "params": params, "bidegrees": degs }))
            .with_lines(lines)
        }
        Prediction::Shape => {
            let shape = lift(resolution_shape(n))?;
            let fx = FixtureSet::new(&cfg.fixtures);
            let disagreements: Vec<_> = match fx.resolution(n) {
                Ok(t) => compare_shape(&shape, &t.minimal_table())
                    .into_iter()
                    .filter(|c| !c.agrees)
                    .collect(),
                Err(_) => Vec::new(),
            };
            conj(
                "shape",
                format!(
                    "resolution skeleton, projective dimension {}; {} cells differ from the printed table",
                    shape.pd,
                    disagreements.len()
                ),
            )
            .with_data(json!({
                "pd": shape.pd,
                "cells": shape.cells.iter().map(|(&(c, r), v)| json!({ "col": c, "row": r, "cell": v })).collect::<Vec<_>>(),
                "disagreements": disagreements,
            }))
            .with_lines(shape.render().lines().map(str::to_string).collect())
        }
        Prediction::Knutson => {
            let degs = lift(colon_bidegrees(n, None))?;
            let all: Vec<(u32, u32)> = degs.into_values().flatten().collect();
            let (reach, miss): (Vec<_>, Vec<_>) = all
                .iter()
                .copied()
                .partition(|&b| knutson_bidegree_feasible(n, b));
            conj(
                "knutson",
                format!(
                    "{} of {} predicted colon bidegrees are reachable by Knutson determinants",
                    reach.len(),
                    all.len()
                ),
            )
            .with_data(json!({ "reachable": reach, "unreachable": miss }))
            .with_lines(vec![format!("unreachable: {miss:?}")])
        }
    };
    rb.push(r);
    Ok(())
}
