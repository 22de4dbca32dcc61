//! Acceptance criteria 1-9, one line each. Runs without the libtest harness
//! so the lines appear in the test log.
//!
//! Criterion 6 contains one identity that does not hold: on the quartic
//! model the swap `(q,p)` acts as `(t/y,t)` rather than `((y-t)/(y-1),t)`.
//! The criterion is reported as failing; the process exit status asserts
//! every other criterion and pins that exact deviation.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use pvi_algebra::arith::{RatFunc, UniPoly};
use pvi_algebra::catalog::expr::{parse_expr, Expr};
use pvi_algebra::catalog::{
    default_dir, parse_record_with, same_source, serialize_record, Catalog, ModelKind,
};
use pvi_algebra::checks::{
    folded_negation_checks, negation_check, quartic_symmetry_check, w1_typo_check,
    QuarticSymmetryReport,
};
use pvi_algebra::curve::model::plane_polynomial;
use pvi_algebra::curve::{
    analyze_plane_singularities, belyi_certify, build_model, degree_of_map, genus, verify_model,
    BelyiOptions,
};
use pvi_algebra::field::{adjoin_root, AdjoinKind, FieldElement, TowerPresentation};
use pvi_algebra::pipeline::{run_pipeline, seed_form_of, KNOWN_CHAINS};
use pvi_algebra::pvi::{pvi_residual, theta_equivalent_up_to_signs, ThetaParams};
use pvi_algebra::transforms::{folded_theta, MobiusSymmetry};
use std::process::ExitCode;
use std::time::Instant;

const PRECISION_BITS: usize = 200;
const TOLERANCE: f64 = 1e-30;
const PROPERTY_CASES: u32 = 100;
const RESIDUAL_BUDGET_SECS: u64 = 300;
const BELYI_BUDGET_SECS: u64 = 600;

const SHIPPED: [&str; 11] = [
    "seed-10", "seed-15", "seed-18", "sol-44", "sol-45", "sol-47", "sol-48", "sol-49", "sol-50",
    "sol-51", "sol-52",
];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn criterion_1(cat: &Catalog) -> Outcome {
    let start = Instant::now();
    let mut bad = vec![];
    for id in SHIPPED {
        let rec = cat.get(id).unwrap();
        match pvi_residual(&rec.solution) {
            Ok(r) if r.is_zero => {}
            Ok(_) => bad.push(format!("{id}: nonzero")),
            Err(e) => bad.push(format!("{id}: {e}")),
        }
    }
    let theta52 = cat.get("sol-52").unwrap().solution.theta == ThetaParams::over([1, 1, 1, 11], 12);
    let secs = start.elapsed().as_secs_f64();
    let ok = bad.is_empty() && theta52 && secs < RESIDUAL_BUDGET_SECS as f64;
    outcome(
        ok,
        format!(
            "11 records exactly zero, sol-52 at (1,1,1,11)/12, {secs:.2}s {}",
            bad.join("; ")
        ),
    )
}

fn criterion_2(cat: &Catalog) -> Outcome {
    let expected = [
        ("sol-44", 1),
        ("sol-45", 1),
        ("sol-50", 3),
        ("sol-51", 3),
        ("sol-47", 2),
        ("sol-48", 2),
        ("sol-49", 3),
        ("sol-52", 7),
    ];
    let mut got = vec![];
    let mut ok = true;
    for (id, g) in expected {
        let h = genus(cat.get(id).unwrap().tower()).genus;
        ok &= h == g;
        got.push(format!("{id}={h}"));
    }
    outcome(ok, got.join(" "))
}

fn criterion_3(cat: &Catalog) -> Outcome {
    let expected = [
        ("seed-10", 10),
        ("seed-15", 15),
        ("seed-18", 18),
        ("sol-45", 20),
        ("sol-44", 20),
        ("sol-51", 40),
        ("sol-50", 40),
        ("sol-47", 30),
        ("sol-48", 30),
        ("sol-49", 36),
        ("sol-52", 72),
    ];
    let mut got = vec![];
    let mut ok = true;
    for (id, d) in expected {
        let e = degree_of_map(&cat.get(id).unwrap().solution.t)
            .map(|x| x as i64)
            .unwrap_or(-1);
        ok &= e == d;
        got.push(format!("{id}={e}"));
    }
    outcome(ok, got.join(" "))
}

fn criterion_4(cat: &Catalog) -> Outcome {
    let printed = [
        ("sol-45", ThetaParams::over([0, 1, 0, 9], 10)),
        ("sol-44", ThetaParams::over([0, 3, 0, 7], 10)),
        ("sol-47", ThetaParams::over([2, 7, 2, 23], 30)),
        ("sol-48", ThetaParams::over([4, 1, 4, 29], 30)),
        ("sol-49", ThetaParams::over([0, 1, 0, 5], 6)),
        ("sol-51", ThetaParams::over([1, 1, 1, 19], 20)),
        ("sol-50", ThetaParams::over([3, 3, 3, 17], 20)),
    ];
    let mut ok = true;
    let mut notes = vec![];
    for chain in KNOWN_CHAINS {
        match run_pipeline(cat, chain) {
            Ok(report) => {
                for step in &report.steps {
                    let src = cat.get(&step.from).unwrap();
                    let (seed, _) = seed_form_of(src).unwrap();
                    let out = step
                        .identification
                        .symmetry
                        .apply_theta(&folded_theta(&seed.theta));
                    if let Some((_, want)) = printed.iter().find(|(id, _)| *id == step.to) {
                        let exact = &cat.get(&step.to).unwrap().solution.theta == want;
                        let equiv = theta_equivalent_up_to_signs(&out, want);
                        ok &= exact && equiv && step.degree_doubled;
                        if !(exact && equiv) {
                            notes.push(format!("{}: theta {}", step.to, out));
                        }
                    }
                }
                notes.push(chain.join(">"));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("{}: {e}", chain.join(">")));
            }
        }
    }
    outcome(ok, notes.join(", "))
}

fn criterion_5(cat: &Catalog) -> Outcome {
    let start = Instant::now();
    let opts = BelyiOptions {
        precision_bits: PRECISION_BITS,
        tolerance: TOLERANCE,
        escalations: 3,
    };
    let mut ok = true;
    let mut notes = vec![];
    for (id, rec) in &cat.records {
        let g = genus(rec.tower()).genus;
        let d = degree_of_map(&rec.solution.t).unwrap();
        match belyi_certify(&rec.solution.t, g, d, &opts) {
            Ok(c) => {
                let lhs = 2 * g as i64 - 2;
                let rhs = -2 * d as i64 + c.ramification_total as i64;
                let good = c.rh_consistent && lhs == rhs && c.max_deviation <= TOLERANCE;
                ok &= good;
                if id == "sol-52" || !good {
                    notes.push(format!(
                        "{id}: sum(e-1)={} dev={:.1e}",
                        c.ramification_total, c.max_deviation
                    ));
                }
            }
            Err(e) => {
                ok = false;
                notes.push(format!("{id}: {e}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < BELYI_BUDGET_SECS as f64;
    outcome(
        ok,
        format!(
            "{} records, {}, {secs:.2}s",
            cat.records.len(),
            notes.join("; ")
        ),
    )
}

/// Result of criterion 6 with the parts kept apart for the final verdict.
struct SymmetryParts {
    seeds: bool,
    sol45_presentation: bool,
    quartic: Vec<(String, QuarticSymmetryReport)>,
}

fn criterion_6(cat: &Catalog) -> (Outcome, SymmetryParts) {
    let mut seeds = true;
    for id in [
        "seed-10",
        "seed-10-sibling",
        "seed-15",
        "seed-15-sibling",
        "seed-18",
    ] {
        let c = negation_check(
            &cat.get(id).unwrap().solution,
            &["u"],
            MobiusSymmetry::OneMinus,
        )
        .unwrap();
        seeds &= c.holds;
    }
    // (v,w)-negation is (1/y,1/t) on the two-square-root presentation of sol-45,
    // which (y/(y-1), t/(t-1)) carries to the record
    let p =
        folded_negation_checks(cat.get("seed-10").unwrap(), cat.get("sol-45").unwrap()).unwrap();
    let sol45_presentation =
        p.rgt_negation.holds && p.relabels_to_record && p.record_negation.holds;
    let quartic: Vec<(String, QuarticSymmetryReport)> = ["sol-51", "sol-50"]
        .iter()
        .map(|id| {
            (
                id.to_string(),
                quartic_symmetry_check(cat.get(id).unwrap()).unwrap(),
            )
        })
        .collect();
    let mut notes = vec![
        format!(
            "u-negation (1-y,1-t): {}",
            if seeds { "ok" } else { "FAIL" }
        ),
        format!(
            "sol-45 (v,w)-negation (1/y,1/t): {}",
            if sol45_presentation { "ok" } else { "FAIL" }
        ),
    ];
    for (id, r) in &quartic {
        for c in &r.checks {
            let seen = if c.holds {
                "ok".to_string()
            } else {
                format!("FAIL, acts as {}", c.observed.join("|"))
            };
            notes.push(format!("{id} {}->{}: {seen}", c.action, c.expected));
        }
        notes.push(format!("{id} order {}", r.group_order));
    }
    let ok = seeds && sol45_presentation && quartic.iter().all(|(_, r)| r.passed);
    (
        outcome(ok, notes.join("; ")),
        SymmetryParts {
            seeds,
            sol45_presentation,
            quartic,
        },
    )
}

/// The documented deviation: only `(q,p)` fails, and it acts as `(t/y,t)`.
fn only_known_deviation(parts: &SymmetryParts) -> bool {
    parts.seeds
        && parts.sol45_presentation
        && parts.quartic.iter().all(|(_, r)| {
            r.curve_invariant
                && r.group_order == 8
                && r.checks.len() == 3
                && r.checks[0].holds
                && r.checks[1].holds
                && !r.checks[2].holds
                && r.checks[2].action == "(q,p)"
                && r.checks[2].observed == [MobiusSymmetry::FixT2.label()]
        })
}

fn criterion_7(cat: &Catalog) -> Outcome {
    let mut ok = true;
    let mut verified = 0;
    let mut notes = vec![];
    for (id, rec) in &cat.records {
        for block in &rec.source.models {
            let good = build_model(block, rec)
                .and_then(|m| verify_model(&m, rec))
                .map(|c| c.verified)
                .unwrap_or(false);
            ok &= good;
            if good {
                verified += 1;
            } else {
                notes.push(format!("{id}/{} FAIL", block.name));
            }
        }
    }
    let plane = |id: &str, name: &str| {
        let b = cat.get(id).unwrap().model(name).unwrap();
        debug_assert!(matches!(b.kind, ModelKind::Plane | ModelKind::Image));
        let (x, y) = b.plane.clone().unwrap();
        plane_polynomial(b.curve.as_ref().unwrap(), &x, &y).unwrap()
    };
    let q = analyze_plane_singularities(&plane("sol-51", "quartic"), PRECISION_BITS).unwrap();
    let o = analyze_plane_singularities(&plane("sol-52", "octic"), PRECISION_BITS).unwrap();
    let quartic_ok = q.points.is_empty() && q.implied_genus == Some(3);
    let octic_ok = o.nodes == 10
        && o.tacnodes == 2
        && o.others == 0
        && o.total_delta == 14
        && o.implied_genus == Some(7);
    ok &= quartic_ok && octic_ok;
    notes.push(format!("{verified} models verified"));
    notes.push(format!("quartic singular points {}", q.points.len()));
    notes.push(format!(
        "octic {} nodes {} tacnodes delta {} genus {:?}",
        o.nodes, o.tacnodes, o.total_delta, o.implied_genus
    ));
    outcome(ok, notes.join(", "))
}

fn criterion_8(cat: &Catalog) -> Outcome {
    let c = w1_typo_check(cat.get("sol-45").unwrap()).unwrap();
    outcome(
        c.corrected_holds && !c.literal_holds,
        format!(
            "{} holds={}, {} holds={}",
            c.corrected, c.corrected_holds, c.literal, c.literal_holds
        ),
    )
}

fn sample_tower() -> std::sync::Arc<TowerPresentation> {
    let f = &UniPoly::from_i64(&[-1, 9]) * &UniPoly::from_i64(&[-1, 1]);
    TowerPresentation::new(
        "s",
        vec![f, UniPoly::from_i64(&[1, -18, 1])],
        vec!["v".into(), "w1".into()],
    )
    .unwrap()
}

fn element() -> impl Strategy<Value = FieldElement> {
    let coord = (
        prop::collection::vec(-5i64..=5, 0..3),
        prop::collection::vec(-3i64..=3, 0..2),
        1i64..=4,
    )
        .prop_map(|(n, mut d, k)| {
            d.push(k);
            RatFunc::new(UniPoly::from_i64(&n), UniPoly::from_i64(&d))
        });
    prop::collection::vec(coord, 4).prop_map(|c| FieldElement::new(&sample_tower(), c).unwrap())
}

fn expr_tree() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..50).prop_map(|n| Expr::Int(n.into())),
        prop::sample::select(vec!["s", "v", "w1"]).prop_map(|v| Expr::Var(v.into())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner, 0i32..4).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
        ]
    })
}

fn summarize<T: std::fmt::Debug>(
    r: Result<(), proptest::test_runner::TestError<T>>,
) -> Result<(), String> {
    r.map_err(|e| format!("{e:?}").chars().take(200).collect())
}

fn criterion_9(cat: &Catalog) -> Outcome {
    let runner = || {
        TestRunner::new(Config {
            cases: PROPERTY_CASES,
            failure_persistence: None,
            ..Config::default()
        })
    };
    let mut results: Vec<(&str, Result<(), String>)> = vec![];
    results.push((
        "field axioms",
        summarize(
            runner().run(&(element(), element(), element()), |(a, b, c)| {
                prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
                prop_assert_eq!(
                    a.mul(&b.add(&c).unwrap()).unwrap(),
                    a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
                );
                prop_assert_eq!(
                    a.mul(&b).unwrap().mul(&c).unwrap(),
                    a.mul(&b.mul(&c).unwrap()).unwrap()
                );
                Ok(())
            }),
        ),
    ));
    results.push((
        "Leibniz",
        summarize(runner().run(&(element(), element()), |(a, b)| {
            let lhs = a.mul(&b).unwrap().differentiate();
            let rhs = a
                .differentiate()
                .mul(&b)
                .unwrap()
                .add(&a.mul(&b.differentiate()).unwrap())
                .unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })),
    ));
    results.push((
        "inverse",
        summarize(runner().run(&element(), |a| {
            if !a.is_zero() {
                prop_assert!(a.mul(&a.invert().unwrap()).unwrap().is_one());
            }
            Ok(())
        })),
    ));
    results.push((
        "minimal polynomial",
        summarize(runner().run(&element(), |a| {
            prop_assert!(a.minimal_polynomial().eval(&a).is_zero());
            Ok(())
        })),
    ));
    results.push((
        "adjoin idempotence",
        summarize(runner().run(
            &(
                prop::collection::vec(-6i64..=6, 1..4),
                prop::collection::vec(1i64..=4, 1..3),
            ),
            |(n, c)| {
                let r = UniPoly::from_i64(&n);
                if r.is_zero() {
                    return Ok(());
                }
                let cof = UniPoly::from_i64(&c);
                let first = adjoin_root(&TowerPresentation::base("s"), &r, "a").unwrap();
                let again = adjoin_root(&first.tower, &(&r * &(&cof * &cof)), "b").unwrap();
                prop_assert_eq!(again.tower.depth(), first.tower.depth());
                prop_assert!(again.kind != AdjoinKind::Extended);
                Ok(())
            },
        )),
    ));
    results.push((
        "parser round trip",
        summarize(runner().run(&expr_tree(), |e| {
            let text = e.to_string();
            prop_assert_eq!(parse_expr(&text).unwrap().to_string(), text);
            Ok(())
        })),
    ));
    let resolve =
        |name: &str| std::fs::read_to_string(default_dir().join(name)).map_err(|e| e.to_string());
    let records_ok = cat.records.values().all(|r| {
        parse_record_with(&serialize_record(r), &resolve)
            .map(|b| same_source(&r.source, &b.source))
            .unwrap_or(false)
    });
    let failed: Vec<String> = results
        .iter()
        .filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}")))
        .collect();
    let names: Vec<&str> = results.iter().map(|(n, _)| *n).collect();
    let ok = failed.is_empty() && records_ok;
    outcome(
        ok,
        format!(
            "{} x {PROPERTY_CASES} cases ({}), record round trips {} {}",
            results.len(),
            names.join(", "),
            if records_ok { "ok" } else { "FAIL" },
            failed.join("; ")
        ),
    )
}

fn main() -> ExitCode {
    let cat = Catalog::load(default_dir()).expect("catalog loads");
    let mut outcomes = vec![];
    let start = Instant::now();
    let (c6, parts) = criterion_6(&cat);
    for (n, o) in [
        (1, criterion_1(&cat)),
        (2, criterion_2(&cat)),
        (3, criterion_3(&cat)),
        (4, criterion_4(&cat)),
        (5, criterion_5(&cat)),
        (6, c6),
        (7, criterion_7(&cat)),
        (8, criterion_8(&cat)),
        (9, criterion_9(&cat)),
    ] {
        println!(
            "criterion {n}: {} - {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
        outcomes.push((n, o.passed));
    }
    let others_pass = outcomes.iter().filter(|(n, _)| *n != 6).all(|(_, p)| *p);
    let six_as_documented = outcomes[5].1 || only_known_deviation(&parts);
    if !outcomes[5].1 {
        println!("criterion 6: known deviation, (q,p) acts as (t/y,t) on sol-50 and sol-51; every other part holds");
    }
    println!(
        "acceptance finished in {:.1}s",
        start.elapsed().as_secs_f64()
    );
    if others_pass && six_as_documented {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failure");
        ExitCode::FAILURE
    }
}
