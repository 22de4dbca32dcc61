use super::{MobiusSymmetry, TransformError};
use crate::arith::RatFunc;
use crate::field::{represent_in, FieldElement, FieldError, TowerPresentation};
use crate::pvi::{theta_equivalent_up_to_signs, PviSolution};
use serde::Serialize;
use std::sync::Arc;

/// How a computed solution was identified with a target.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionMatch {
    /// Generators of the target tower whose sign was flipped.
    pub negated: Vec<String>,
    /// Symmetry fixing `t` applied after the sign flips.
    pub symmetry: MobiusSymmetry,
}

/// Transports a solution along a map of function fields given by the image
/// of the base variable and of each generator.
pub fn pullback(
    sol: &PviSolution,
    target: &Arc<TowerPresentation>,
    var_image: &RatFunc,
    gen_images: &[FieldElement],
) -> Result<PviSolution, TransformError> {
    let base = |c: &RatFunc| -> Result<FieldElement, FieldError> {
        Ok(FieldElement::from_base(target, c.compose(var_image)))
    };
    let y = sol.y.substitute(target, &base, gen_images)?;
    let t = sol.t.substitute(target, &base, gen_images)?;
    Ok(PviSolution::new(y, t, sol.theta.clone())?)
}

/// Searches generator sign flips composed with the symmetries fixing `t`
/// for one carrying `candidate` to `target`, parameters included.
pub fn match_solution(
    candidate: &PviSolution,
    target: &PviSolution,
) -> Result<SolutionMatch, TransformError> {
    let tt = &target.tower;
    if candidate.tower.var() != tt.var() {
        return Err(TransformError::NoMatch(format!(
            "base variables differ: {} vs {}",
            candidate.tower.var(),
            tt.var()
        )));
    }
    if candidate.tower.square_classes() != tt.square_classes() {
        return Err(TransformError::NoMatch(
            "the towers present different fields".into(),
        ));
    }
    let y = represent_in(&candidate.y, tt)?;
    let t = represent_in(&candidate.t, tt)?;
    for sym in MobiusSymmetry::FIXING_T {
        if !theta_equivalent_up_to_signs(&sym.apply_theta(&candidate.theta), &target.theta) {
            continue;
        }
        for sigma in 0..tt.basis_len() {
            let (ys, ts) = (y.conjugate(sigma), t.conjugate(sigma));
            if ts != target.t {
                continue;
            }
            let Ok((ym, _)) = sym.apply_functions(&ys, &ts) else {
                continue;
            };
            if ym == target.y {
                let negated = (0..tt.depth())
                    .filter(|i| sigma >> i & 1 == 1)
                    .map(|i| tt.names()[i].clone())
                    .collect();
                return Ok(SolutionMatch {
                    negated,
                    symmetry: sym,
                });
            }
        }
    }
    Err(TransformError::NoMatch(
        "no generator sign flip or t-fixing symmetry identifies the solutions".into(),
    ))
}
