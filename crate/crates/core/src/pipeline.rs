//! Chains of folded quadratic transformations through the catalog.
//!
//! Each step takes the current record to seed form, either directly (one
//! radicand) or after transport to its hyperelliptic model, applies the
//! folded transformation and identifies the output with the next record.

use crate::catalog::{Catalog, ModelKind, SolutionRecord};
use crate::curve::model::{build_model, pullback_to_model};
use crate::curve::{degree_of_map, CurveError};
use crate::pvi::PviSolution;
use crate::transforms::{
    folded_quadratic_transform, match_solution, to_seed_form, SeedForm, SolutionMatch,
    TransformError,
};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("unknown record {0}")]
    UnknownRecord(String),
    #[error("{0}: not in seed form: {1}")]
    Shape(String, String),
    #[error("step {from} -> {to}: {reason}")]
    Step {
        from: String,
        to: String,
        reason: String,
    },
}

impl PipelineError {
    /// Errors caused by the request rather than the mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            PipelineError::UnknownRecord(_) | PipelineError::Shape(..)
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub from: String,
    pub to: String,
    /// Hyperelliptic model used to reach seed form, if any.
    pub via_model: Option<String>,
    pub theta_in: String,
    pub theta_out: String,
    pub degree_in: u32,
    pub degree_out: u32,
    pub degree_doubled: bool,
    pub identification: SolutionMatch,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub chain: Vec<String>,
    pub steps: Vec<StepReport>,
}

/// The chains through the shipped catalog, seed first.
pub const KNOWN_CHAINS: [&[&str]; 5] = [
    &["seed-10", "sol-45", "sol-51"],
    &["seed-10-sibling", "sol-44", "sol-50"],
    &["seed-15", "sol-47"],
    &["seed-15-sibling", "sol-48"],
    &["seed-18", "sol-49", "sol-52"],
];

/// The longest known chain starting at `id`.
pub fn default_chain(id: &str) -> Option<&'static [&'static str]> {
    KNOWN_CHAINS.iter().copied().find(|c| c[0] == id)
}

/// Seed form of a record, reached on a hyperelliptic model if the record
/// has more than one radicand.
pub fn seed_form_of(rec: &SolutionRecord) -> Result<(SeedForm, Option<String>), String> {
    match to_seed_form(&rec.solution) {
        Ok(s) => Ok((s, None)),
        Err(direct) => {
            let mut last = direct.to_string();
            for block in rec
                .source
                .models
                .iter()
                .filter(|m| m.kind == ModelKind::Hyperelliptic)
            {
                let attempt = build_model(block, rec)
                    .and_then(|m| pullback_to_model(rec, &m))
                    .map_err(|e| e.to_string())
                    .and_then(|sol| to_seed_form(&sol).map_err(|e| e.to_string()));
                match attempt {
                    Ok(s) => return Ok((s, Some(block.name.clone()))),
                    Err(e) => last = format!("model {}: {e}", block.name),
                }
            }
            Err(last)
        }
    }
}

fn map_degree(sol: &PviSolution) -> Result<u32, CurveError> {
    degree_of_map(&sol.t)
}

/// Runs the chain `ids`; the first record must already be in seed form.
pub fn run_pipeline(cat: &Catalog, ids: &[&str]) -> Result<PipelineReport, PipelineError> {
    let recs: Vec<&SolutionRecord> = ids
        .iter()
        .map(|id| {
            cat.get(id)
                .ok_or_else(|| PipelineError::UnknownRecord(id.to_string()))
        })
        .collect::<Result<_, _>>()?;
    let first = recs
        .first()
        .ok_or_else(|| PipelineError::UnknownRecord("(empty chain)".into()))?;
    if let Err(e) = to_seed_form(&first.solution) {
        return Err(PipelineError::Shape(first.id().to_string(), e.to_string()));
    }
    let mut steps = vec![];
    for pair in recs.windows(2) {
        let (src, dst) = (pair[0], pair[1]);
        let start = std::time::Instant::now();
        let fail = |reason: String| PipelineError::Step {
            from: src.id().into(),
            to: dst.id().into(),
            reason,
        };
        let (seed, via_model) = seed_form_of(src).map_err(fail)?;
        let seed_sol = seed
            .solution()
            .map_err(|e: TransformError| fail(e.to_string()))?;
        let out = folded_quadratic_transform(&seed).map_err(|e| fail(e.to_string()))?;
        let identification =
            match_solution(&out, &dst.solution).map_err(|e| fail(e.to_string()))?;
        let degree_in = map_degree(&seed_sol).map_err(|e| fail(e.to_string()))?;
        let degree_out = map_degree(&out).map_err(|e| fail(e.to_string()))?;
        steps.push(StepReport {
            from: src.id().into(),
            to: dst.id().into(),
            via_model,
            theta_in: seed.theta.to_text(),
            theta_out: out.theta.to_text(),
            degree_in,
            degree_out,
            degree_doubled: degree_out == 2 * degree_in,
            identification,
            millis: start.elapsed().as_millis(),
        });
    }
    Ok(PipelineReport {
        chain: ids.iter().map(|s| s.to_string()).collect(),
        steps,
    })
}
