use crate::report::{mark, profile, Outcome};
use crate::{BranchArg, Cli, Command, Mode, TransformKind};
use pvi_algebra::catalog::{load_record_file, Catalog, ModelKind, SolutionRecord};
use pvi_algebra::checks::{
    folded_negation_checks, negation_check, numeric_pvi_check, quartic_symmetry_check,
    w1_typo_check, NumericCheck, PresentationCheck, QuarticSymmetryReport, SymmetryCheck,
    TypoCheck,
};
use pvi_algebra::curve::model::plane_polynomial;
use pvi_algebra::curve::{
    analyze_plane_singularities, belyi_certify, build_model, degree_of_map, genus, verify_model,
    BelyiCertificate, BelyiOptions, CurveInvariants, ModelCheck, ModelPresentation,
    SingularityReport,
};
use pvi_algebra::pipeline::{default_chain, run_pipeline, PipelineError, KNOWN_CHAINS};
use pvi_algebra::pvi::{pvi_residual, ExpansionStats, PviSolution};
use pvi_algebra::transforms::{
    apply_mobius, folded_quadratic_transform, match_solution, rgt_transform, to_seed_form, Branch,
    MobiusSymmetry, SolutionMatch, TransformError,
};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write;
use std::time::Instant;

const NUMERIC_POINTS: usize = 5;
const NUMERIC_SEED: u64 = 20_061_112;

pub fn run(cli: &Cli) -> Outcome {
    let catalog = match Catalog::load(&cli.catalog) {
        Ok(c) => c,
        Err(e) => return Outcome::usage(format!("loading catalog {}: {e}", cli.catalog.display())),
    };
    match &cli.command {
        Command::Verify { ids, file } => verify(cli, &catalog, ids, file.as_deref()),
        Command::Transform {
            id,
            kind,
            symmetry,
            branch,
            target,
        } => transform(
            &catalog,
            id,
            *kind,
            symmetry.as_deref(),
            *branch,
            target.as_deref(),
        ),
        Command::Pipeline { ids } => pipeline(&catalog, ids),
        Command::Analyze { ids } => analyze(cli, &catalog, ids),
        Command::CatalogList => catalog_list(&catalog),
    }
}

fn select<'a>(catalog: &'a Catalog, ids: &[String]) -> Result<Vec<&'a SolutionRecord>, Outcome> {
    if ids.is_empty() {
        return Ok(catalog.records.values().collect());
    }
    ids.iter()
        .map(|id| {
            catalog
                .get(id)
                .ok_or_else(|| Outcome::usage(format!("unknown record {id}")))
        })
        .collect()
}

// ---- verify ----

#[derive(Serialize)]
struct Expected {
    computed: u32,
    expected: Option<u32>,
    ok: bool,
}

impl Expected {
    fn new(computed: u32, expected: Option<u32>) -> Self {
        Expected {
            computed,
            expected,
            ok: expected.is_none_or(|e| e == computed),
        }
    }
}

#[derive(Serialize)]
struct ResidualSummary {
    zero: bool,
    stats: ExpansionStats,
}

#[derive(Serialize)]
struct BelyiSummary {
    certified: bool,
    certificate: Option<BelyiCertificate>,
    error: Option<String>,
}

#[derive(Serialize)]
struct VerifyRecord {
    id: String,
    theta: String,
    genus: Expected,
    degree: Expected,
    residual: Option<ResidualSummary>,
    numeric: Option<NumericCheck>,
    belyi: Option<BelyiSummary>,
    errors: Vec<String>,
    passed: bool,
    millis: u128,
}

fn verify_record(cli: &Cli, rec: &SolutionRecord) -> VerifyRecord {
    let start = Instant::now();
    let sol = &rec.solution;
    let mut errors = vec![];
    let g = genus(sol.tower.as_ref()).genus;
    let d = match degree_of_map(&sol.t) {
        Ok(d) => d,
        Err(e) => {
            errors.push(format!("degree: {e}"));
            0
        }
    };
    let exact = matches!(cli.mode, Mode::Exact | Mode::Both);
    let numeric = matches!(cli.mode, Mode::Numeric | Mode::Both);
    let residual = if exact {
        match pvi_residual(sol) {
            Ok(r) => {
                if !r.is_zero {
                    errors
                        .push("nonzero residual: the functions do not satisfy the equation".into());
                }
                Some(ResidualSummary {
                    zero: r.is_zero,
                    stats: r.stats,
                })
            }
            Err(e) => {
                errors.push(format!("residual: {e}"));
                None
            }
        }
    } else {
        None
    };
    let numeric_check = numeric.then(|| {
        numeric_pvi_check(
            sol,
            NUMERIC_POINTS,
            cli.precision_bits as usize,
            cli.tolerance,
            NUMERIC_SEED,
        )
    });
    let belyi = (numeric && d > 0).then(|| {
        let opts = BelyiOptions {
            precision_bits: cli.precision_bits as usize,
            tolerance: cli.tolerance,
            ..Default::default()
        };
        match belyi_certify(&sol.t, g, d, &opts) {
            Ok(c) => BelyiSummary {
                certified: c.rh_consistent,
                certificate: Some(c),
                error: None,
            },
            Err(e) => BelyiSummary {
                certified: false,
                certificate: None,
                error: Some(e.to_string()),
            },
        }
    });
    let genus = Expected::new(g, rec.expected_genus());
    let degree = Expected::new(d, rec.expected_degree());
    let passed = errors.is_empty()
        && genus.ok
        && degree.ok
        && residual.as_ref().is_none_or(|r| r.zero)
        && numeric_check.as_ref().is_none_or(|n| n.passed)
        && belyi.as_ref().is_none_or(|b| b.certified);
    VerifyRecord {
        id: rec.id().to_string(),
        theta: sol.theta.to_text(),
        genus,
        degree,
        residual,
        numeric: numeric_check,
        belyi,
        errors,
        passed,
        millis: start.elapsed().as_millis(),
    }
}

fn verify_text(r: &VerifyRecord) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} [{}] theta ({})", r.id, mark(r.passed), r.theta);
    let exp = |e: &Expected| match e.expected {
        Some(x) => format!("{} (expected {x}) {}", e.computed, mark(e.ok)),
        None => e.computed.to_string(),
    };
    let _ = writeln!(s, "  genus   {}", exp(&r.genus));
    let _ = writeln!(s, "  degree  {}", exp(&r.degree));
    if let Some(res) = &r.residual {
        let _ = writeln!(
            s,
            "  residual {} (max degree {}, {} coefficient bits, {} ms)",
            if res.zero { "zero" } else { "NONZERO" },
            res.stats.max_degree,
            res.stats.max_coefficient_bits,
            res.stats.millis
        );
    }
    if let Some(n) = &r.numeric {
        let _ = writeln!(
            s,
            "  numeric  {} points at {} bits, max relative error {:.2e} {}",
            n.points,
            n.precision_bits,
            n.max_relative_error,
            mark(n.passed)
        );
    }
    if let Some(b) = &r.belyi {
        match (&b.certificate, &b.error) {
            (Some(c), _) => {
                let _ = writeln!(
                    s,
                    "  belyi    over 0 {}, over 1 {}, over inf {}; sum(e-1) = {}, deviation {:.1e} {}",
                    profile(&c.profiles.zero),
                    profile(&c.profiles.one),
                    profile(&c.profiles.infinity),
                    c.ramification_total,
                    c.max_deviation,
                    mark(b.certified)
                );
            }
            (None, Some(e)) => {
                let _ = writeln!(s, "  belyi    FAIL: {e}");
            }
            _ => {}
        }
    }
    for e in &r.errors {
        let _ = writeln!(s, "  error: {e}");
    }
    let _ = writeln!(s, "  time {} ms", r.millis);
    s
}

#[derive(Serialize)]
struct VerifyReport {
    records: Vec<VerifyRecord>,
    passed: bool,
    millis: u128,
}

fn verify(cli: &Cli, catalog: &Catalog, ids: &[String], file: Option<&std::path::Path>) -> Outcome {
    let start = Instant::now();
    let loaded;
    let recs: Vec<&SolutionRecord> = if let Some(path) = file {
        loaded = match load_record_file(&catalog.dir, path) {
            Ok(r) => r,
            Err(e) => return Outcome::usage(format!("{}: {e}", path.display())),
        };
        vec![&loaded]
    } else {
        match select(catalog, ids) {
            Ok(r) => r,
            Err(o) => return o,
        }
    };
    let records: Vec<VerifyRecord> = recs.par_iter().map(|r| verify_record(cli, r)).collect();
    let passed = records.iter().all(|r| r.passed);
    let report = VerifyReport {
        records,
        passed,
        millis: start.elapsed().as_millis(),
    };
    let mut text: String = report.records.iter().map(verify_text).collect();
    let _ = writeln!(
        text,
        "{} ({} records, {} ms)",
        if passed { "PASS" } else { "FAIL" },
        report.records.len(),
        report.millis
    );
    Outcome::report(u8::from(!passed), &report, text)
}

// ---- transform ----

#[derive(Serialize)]
struct TransformReport {
    source: String,
    kind: String,
    theta: String,
    tower: String,
    y: String,
    t: String,
    residual_zero: bool,
    identification: Option<SolutionMatch>,
    target: Option<String>,
    passed: bool,
    millis: u128,
}

fn transform_error(e: TransformError) -> Outcome {
    match e {
        TransformError::Shape(_) | TransformError::Depth(_) => Outcome::usage(e.to_string()),
        other => Outcome::report(
            1,
            &serde_json::json!({ "error": other.to_string() }),
            format!("FAIL: {other}"),
        ),
    }
}

fn transform(
    catalog: &Catalog,
    id: &str,
    kind: TransformKind,
    symmetry: Option<&str>,
    branch: BranchArg,
    target: Option<&str>,
) -> Outcome {
    let start = Instant::now();
    let Some(rec) = catalog.get(id) else {
        return Outcome::usage(format!("unknown record {id}"));
    };
    let target_rec = match target {
        Some(t) => match catalog.get(t) {
            Some(r) => Some(r),
            None => return Outcome::usage(format!("unknown record {t}")),
        },
        None => None,
    };
    let (out, label): (Result<PviSolution, TransformError>, String) = match kind {
        TransformKind::Folded => (
            to_seed_form(&rec.solution).and_then(|s| folded_quadratic_transform(&s)),
            "folded".into(),
        ),
        TransformKind::Rgt => {
            let b = if branch == BranchArg::Plus {
                Branch::Plus
            } else {
                Branch::Minus
            };
            (rgt_transform(&rec.solution, b), format!("rgt ({b:?})"))
        }
        TransformKind::Mobius => {
            let Some(label) = symmetry else {
                return Outcome::usage("--kind mobius needs --symmetry");
            };
            let Some(sym) = MobiusSymmetry::from_label(label) else {
                let known: Vec<&str> = MobiusSymmetry::ALL.iter().map(|s| s.label()).collect();
                return Outcome::usage(format!(
                    "unknown symmetry {label}; known: {}",
                    known.join(" ")
                ));
            };
            (
                apply_mobius(sym, &rec.solution),
                format!("mobius {}", sym.label()),
            )
        }
    };
    let out = match out {
        Ok(o) => o,
        Err(e) => return transform_error(e),
    };
    let residual_zero = pvi_residual(&out).map(|r| r.is_zero).unwrap_or(false);
    let identification = target_rec.and_then(|t| match_solution(&out, &t.solution).ok());
    let passed = residual_zero && (target_rec.is_none() || identification.is_some());
    let report = TransformReport {
        source: id.to_string(),
        kind: label,
        theta: out.theta.to_text(),
        tower: out.tower.to_text(),
        y: out.y.to_expr(),
        t: out.t.to_expr(),
        residual_zero,
        identification,
        target: target.map(str::to_string),
        passed,
        millis: start.elapsed().as_millis(),
    };
    let mut text = String::new();
    let _ = writeln!(text, "{} of {} [{}]", report.kind, id, mark(passed));
    let _ = writeln!(text, "{}", report.tower.trim_end());
    let _ = writeln!(text, "theta {}", report.theta);
    let _ = writeln!(text, "y = {}", report.y);
    let _ = writeln!(text, "t = {}", report.t);
    let _ = writeln!(
        text,
        "residual {}",
        if residual_zero { "zero" } else { "NONZERO" }
    );
    if let Some(t) = target {
        match &report.identification {
            Some(m) => {
                let _ = writeln!(
                    text,
                    "matches {t}: negate [{}] then {}",
                    m.negated.join(","),
                    m.symmetry.label()
                );
            }
            None => {
                let _ = writeln!(text, "no normalization identifies the output with {t}");
            }
        }
    }
    let _ = writeln!(text, "time {} ms", report.millis);
    Outcome::report(u8::from(!passed), &report, text)
}

// ---- pipeline ----

fn pipeline(catalog: &Catalog, ids: &[String]) -> Outcome {
    let chain: Vec<&str> = match ids {
        [] => return Outcome::usage("pipeline needs at least one record id"),
        [one] => match default_chain(one) {
            Some(c) => c.to_vec(),
            None => {
                if catalog.get(one).is_none() {
                    return Outcome::usage(format!("unknown record {one}"));
                }
                let starts: Vec<&str> = KNOWN_CHAINS.iter().map(|c| c[0]).collect();
                return Outcome::usage(format!(
                    "{one}: not in seed form; known chains start at {}",
                    starts.join(", ")
                ));
            }
        },
        many => many.iter().map(String::as_str).collect(),
    };
    match run_pipeline(catalog, &chain) {
        Ok(r) => {
            let passed = r.steps.iter().all(|s| s.degree_doubled);
            let mut text = String::new();
            let _ = writeln!(text, "pipeline {}", r.chain.join(" -> "));
            if let Some(first) = r.steps.first() {
                let _ = writeln!(text, "  {} theta ({})", first.from, first.theta_in);
            }
            for s in &r.steps {
                let via = s
                    .via_model
                    .as_deref()
                    .map(|m| format!(" via model {m}"))
                    .unwrap_or_default();
                let _ = writeln!(
                    text,
                    "  -> {} theta ({}) degree {} -> {} {}{}; matched by negating [{}] then {} ({} ms)",
                    s.to,
                    s.theta_out,
                    s.degree_in,
                    s.degree_out,
                    mark(s.degree_doubled),
                    via,
                    s.identification.negated.join(","),
                    s.identification.symmetry.label(),
                    s.millis
                );
            }
            let _ = writeln!(text, "{}", if passed { "PASS" } else { "FAIL" });
            Outcome::report(u8::from(!passed), &r, text)
        }
        Err(e) if e.is_usage() => Outcome::usage(e.to_string()),
        Err(PipelineError::Step { from, to, reason }) => Outcome::report(
            1,
            &serde_json::json!({ "error": { "from": from, "to": to, "reason": reason } }),
            format!("FAIL: step {from} -> {to}: {reason}"),
        ),
        Err(e) => Outcome::report(
            1,
            &serde_json::json!({ "error": e.to_string() }),
            format!("FAIL: {e}"),
        ),
    }
}

// ---- analyze ----

#[derive(Serialize)]
struct ModelEntry {
    name: String,
    kind: &'static str,
    check: Option<ModelCheck>,
    singularities: Option<SingularityReport>,
    error: Option<String>,
    ok: bool,
}

#[derive(Serialize)]
struct AnalyzeRecord {
    id: String,
    invariants: CurveInvariants,
    degree: Option<u32>,
    models: Vec<ModelEntry>,
    symmetries: Vec<SymmetryCheck>,
    presentation: Option<PresentationCheck>,
    quartic: Option<QuarticSymmetryReport>,
    typo: Option<TypoCheck>,
    errors: Vec<String>,
    passed: bool,
    millis: u128,
}

fn analyze_model(
    rec: &SolutionRecord,
    block: &pvi_algebra::catalog::ModelBlock,
    genus: u32,
    prec: usize,
) -> ModelEntry {
    let mut entry = ModelEntry {
        name: block.name.clone(),
        kind: block.kind.keyword(),
        check: None,
        singularities: None,
        error: None,
        ok: false,
    };
    let model = match build_model(block, rec) {
        Ok(m) => m,
        Err(e) => {
            entry.error = Some(e.to_string());
            return entry;
        }
    };
    match verify_model(&model, rec) {
        Ok(c) => entry.check = Some(c),
        Err(e) => entry.error = Some(e.to_string()),
    }
    let plane = match &model {
        ModelPresentation::Plane { curve, .. } => Some(Ok(curve.clone())),
        ModelPresentation::Image { curve, vars, .. } => {
            Some(plane_polynomial(curve, &vars.0, &vars.1))
        }
        ModelPresentation::Hyperelliptic { .. } => None,
    };
    let mut sing_ok = true;
    if let Some(f) = plane {
        match f.and_then(|f| analyze_plane_singularities(&f, prec)) {
            Ok(r) => {
                sing_ok = r.others == 0 && r.implied_genus == Some(i64::from(genus));
                entry.singularities = Some(r);
            }
            Err(e) => {
                sing_ok = false;
                entry.error = Some(e.to_string());
            }
        }
    }
    entry.ok = entry.error.is_none() && entry.check.as_ref().is_some_and(|c| c.verified) && sing_ok;
    entry
}

fn analyze_record(cli: &Cli, catalog: &Catalog, rec: &SolutionRecord) -> AnalyzeRecord {
    let start = Instant::now();
    let invariants = genus(rec.tower().as_ref());
    let mut errors = vec![];
    let degree = degree_of_map(&rec.solution.t)
        .map_err(|e| errors.push(e.to_string()))
        .ok();
    if let Some(g) = rec.expected_genus() {
        if g != invariants.genus {
            errors.push(format!(
                "genus {} differs from the recorded {g}",
                invariants.genus
            ));
        }
    }
    let models: Vec<ModelEntry> = rec
        .source
        .models
        .iter()
        .map(|b| analyze_model(rec, b, invariants.genus, cli.precision_bits as usize))
        .collect();
    let mut symmetries = vec![];
    if to_seed_form(&rec.solution).is_ok() {
        match negation_check(
            &rec.solution,
            &[rec.tower().names()[0].as_str()],
            MobiusSymmetry::OneMinus,
        ) {
            Ok(c) => symmetries.push(c),
            Err(e) => errors.push(e.to_string()),
        }
    }
    let seed = KNOWN_CHAINS
        .iter()
        .find(|c| c.len() > 1 && c[1] == rec.id())
        .and_then(|c| catalog.get(c[0]));
    let presentation = seed.and_then(|s| {
        folded_negation_checks(s, rec)
            .map_err(|e| errors.push(e.to_string()))
            .ok()
    });
    let quartic = rec
        .model("quartic")
        .filter(|m| m.kind == ModelKind::Plane)
        .and_then(|_| {
            quartic_symmetry_check(rec)
                .map_err(|e| errors.push(e.to_string()))
                .ok()
        });
    let typo = rec
        .model("elliptic")
        .filter(|m| m.maps.iter().any(|(n, _)| n == "w1"))
        .and_then(|_| {
            w1_typo_check(rec)
                .map_err(|e| errors.push(e.to_string()))
                .ok()
        });
    let passed = errors.is_empty()
        && models.iter().all(|m| m.ok)
        && symmetries.iter().all(|s| s.holds)
        && presentation.as_ref().is_none_or(|p| {
            p.rgt_negation.holds && p.relabels_to_record && p.record_negation.holds
        })
        && quartic.as_ref().is_none_or(|q| q.passed)
        && typo
            .as_ref()
            .is_none_or(|t| t.corrected_holds && !t.literal_holds);
    AnalyzeRecord {
        id: rec.id().to_string(),
        invariants,
        degree,
        models,
        symmetries,
        presentation,
        quartic,
        typo,
        errors,
        passed,
        millis: start.elapsed().as_millis(),
    }
}

fn symmetry_line(s: &mut String, c: &SymmetryCheck) {
    let observed = if c.observed.is_empty() {
        String::new()
    } else {
        format!(" (acts as {})", c.observed.join(", "))
    };
    let _ = writeln!(
        s,
        "  {} -> {} {}{}",
        c.action,
        c.expected,
        mark(c.holds),
        observed
    );
}

fn analyze_text(r: &AnalyzeRecord) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} [{}]", r.id, mark(r.passed));
    let hyper = match r.invariants.hyperelliptic {
        Some(true) => ", hyperelliptic",
        _ => "",
    };
    let deg = r
        .degree
        .map(|d| d.to_string())
        .unwrap_or_else(|| "?".into());
    let _ = writeln!(
        s,
        "  genus {}{}, {} branch points, degree {}",
        r.invariants.genus, hyper, r.invariants.ramified_place_count, deg
    );
    for m in &r.models {
        let rel = m
            .check
            .as_ref()
            .map(|c| c.relations.iter().filter(|x| x.holds).count())
            .unwrap_or(0);
        let total = m.check.as_ref().map(|c| c.relations.len()).unwrap_or(0);
        let _ = writeln!(
            s,
            "  model {} ({}): {rel}/{total} relations hold {}",
            m.name,
            m.kind,
            mark(m.ok)
        );
        if let Some(sr) = &m.singularities {
            let g = sr
                .implied_genus
                .map(|g| g.to_string())
                .unwrap_or_else(|| "?".into());
            let _ = writeln!(
                s,
                "    degree {} curve: {} nodes, {} tacnodes, {} other; delta {} -> genus {g}",
                sr.degree, sr.nodes, sr.tacnodes, sr.others, sr.total_delta
            );
        }
        if let Some(e) = &m.error {
            let _ = writeln!(s, "    error: {e}");
        }
    }
    for c in &r.symmetries {
        symmetry_line(&mut s, c);
    }
    if let Some(p) = &r.presentation {
        let _ = writeln!(s, "  intermediate presentation:");
        symmetry_line(&mut s, &p.rgt_negation);
        let _ = writeln!(
            s,
            "  (y/(y-1),t/(t-1)) of it is this record {}",
            mark(p.relabels_to_record)
        );
        symmetry_line(&mut s, &p.record_negation);
    }
    if let Some(q) = &r.quartic {
        let _ = writeln!(
            s,
            "  quartic symmetries (group order {}, curve invariant {}):",
            q.group_order,
            mark(q.curve_invariant)
        );
        for c in &q.checks {
            symmetry_line(&mut s, c);
        }
    }
    if let Some(t) = &r.typo {
        let _ = writeln!(
            s,
            "  w1 = {}: conic {}",
            t.corrected,
            if t.corrected_holds { "holds" } else { "fails" }
        );
        let _ = writeln!(
            s,
            "  w1 = {}: conic {}",
            t.literal,
            if t.literal_holds { "holds" } else { "fails" }
        );
    }
    for e in &r.errors {
        let _ = writeln!(s, "  error: {e}");
    }
    let _ = writeln!(s, "  time {} ms", r.millis);
    s
}

#[derive(Serialize)]
struct AnalyzeReport {
    records: Vec<AnalyzeRecord>,
    passed: bool,
    millis: u128,
}

fn analyze(cli: &Cli, catalog: &Catalog, ids: &[String]) -> Outcome {
    let start = Instant::now();
    let recs = match select(catalog, ids) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let records: Vec<AnalyzeRecord> = recs
        .par_iter()
        .map(|r| analyze_record(cli, catalog, r))
        .collect();
    let passed = records.iter().all(|r| r.passed);
    let report = AnalyzeReport {
        records,
        passed,
        millis: start.elapsed().as_millis(),
    };
    let mut text: String = report.records.iter().map(analyze_text).collect();
    let _ = writeln!(
        text,
        "{} ({} records, {} ms)",
        if passed { "PASS" } else { "FAIL" },
        report.records.len(),
        report.millis
    );
    Outcome::report(u8::from(!passed), &report, text)
}

// ---- catalog-list ----

#[derive(Serialize)]
struct ListEntry {
    id: String,
    variable: String,
    radicands: usize,
    theta: String,
    theta_source: String,
    genus: Option<u32>,
    degree: Option<u32>,
    sibling: Option<String>,
    models: Vec<String>,
}

fn catalog_list(catalog: &Catalog) -> Outcome {
    let entries: Vec<ListEntry> = catalog
        .records
        .values()
        .map(|r| ListEntry {
            id: r.id().to_string(),
            variable: r.tower().var().to_string(),
            radicands: r.tower().depth(),
            theta: r.solution.theta.to_text(),
            theta_source: format!("{:?}", r.source.theta_source).to_lowercase(),
            genus: r.expected_genus(),
            degree: r.expected_degree(),
            sibling: r.source.sibling.clone(),
            models: r
                .source
                .models
                .iter()
                .map(|m| format!("{} {}", m.kind.keyword(), m.name))
                .collect(),
        })
        .collect();
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{:<16} {:>5} {:>6}  {:<22} {}",
        "id", "genus", "degree", "theta", "models"
    );
    for e in &entries {
        let opt = |x: Option<u32>| x.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            text,
            "{:<16} {:>5} {:>6}  {:<22} {}",
            e.id,
            opt(e.genus),
            opt(e.degree),
            e.theta,
            e.models.join(", ")
        );
    }
    Outcome::report(0, &entries, text)
}
