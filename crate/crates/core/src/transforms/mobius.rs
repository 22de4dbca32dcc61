use super::TransformError;
use crate::arith::Rational;
use crate::field::FieldElement;
use crate::pvi::{PviSolution, ThetaParams};
use num_traits::Signed;
use serde::Serialize;
use std::fmt;

/// Fractional-linear symmetries of the equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MobiusSymmetry {
    Identity,
    /// `(1-y, 1-t)`
    OneMinus,
    /// `(y/t, 1/t)`
    Scale,
    /// `(1/y, 1/t)`
    Invert,
    /// `(y(t-1)/(t-y), 1-t)`
    Cross,
    /// `(y/(y-1), t/(t-1))`
    Ratio,
    /// `((y-t)/(y-1), t)`
    FixT1,
    /// `(t/y, t)`
    FixT2,
    /// `(t(y-1)/(y-t), t)`
    FixT3,
}

impl MobiusSymmetry {
    pub const ALL: [MobiusSymmetry; 9] = [
        MobiusSymmetry::Identity,
        MobiusSymmetry::OneMinus,
        MobiusSymmetry::Scale,
        MobiusSymmetry::Invert,
        MobiusSymmetry::Cross,
        MobiusSymmetry::Ratio,
        MobiusSymmetry::FixT1,
        MobiusSymmetry::FixT2,
        MobiusSymmetry::FixT3,
    ];

    /// The maps fixing `t`; together with the identity they form a Klein four-group.
    pub const FIXING_T: [MobiusSymmetry; 4] = [
        MobiusSymmetry::Identity,
        MobiusSymmetry::FixT1,
        MobiusSymmetry::FixT2,
        MobiusSymmetry::FixT3,
    ];

    pub fn label(self) -> &'static str {
        match self {
            MobiusSymmetry::Identity => "(y,t)",
            MobiusSymmetry::OneMinus => "(1-y,1-t)",
            MobiusSymmetry::Scale => "(y/t,1/t)",
            MobiusSymmetry::Invert => "(1/y,1/t)",
            MobiusSymmetry::Cross => "(y(t-1)/(t-y),1-t)",
            MobiusSymmetry::Ratio => "(y/(y-1),t/(t-1))",
            MobiusSymmetry::FixT1 => "((y-t)/(y-1),t)",
            MobiusSymmetry::FixT2 => "(t/y,t)",
            MobiusSymmetry::FixT3 => "(t(y-1)/(y-t),t)",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        Self::ALL.into_iter().find(|m| m.label() == compact)
    }

    /// Permutation of the marked points `0, t, 1, infinity` (as indices
    /// `0..4`): entry `i` of the new shifted theta is entry `perm[i]` of the old.
    pub fn point_permutation(self) -> [usize; 4] {
        match self {
            MobiusSymmetry::Identity => [0, 1, 2, 3],
            MobiusSymmetry::OneMinus => [2, 1, 0, 3],
            MobiusSymmetry::Scale => [0, 2, 1, 3],
            MobiusSymmetry::Invert => [3, 1, 2, 0],
            MobiusSymmetry::Cross => [0, 3, 2, 1],
            MobiusSymmetry::Ratio => [0, 1, 3, 2],
            MobiusSymmetry::FixT1 => [1, 0, 3, 2],
            MobiusSymmetry::FixT2 => [3, 2, 1, 0],
            MobiusSymmetry::FixT3 => [2, 3, 0, 1],
        }
    }

    /// Action on parameters: permute `(theta_1, theta_2, theta_3, theta_4 - 1)`
    /// and take the representative with nonnegative entries.
    pub fn apply_theta(self, theta: &ThetaParams) -> ThetaParams {
        let old = theta.shifted();
        let perm = self.point_permutation();
        let new: [Rational; 4] = std::array::from_fn(|i| old[perm[i]].abs());
        ThetaParams::from_shifted(new)
    }

    /// Images of `(y, t)`.
    pub fn apply_functions(
        self,
        y: &FieldElement,
        t: &FieldElement,
    ) -> Result<(FieldElement, FieldElement), TransformError> {
        let one = FieldElement::one(y.tower());
        let r = |e: Result<FieldElement, crate::field::FieldError>| {
            e.map_err(|_| TransformError::Degenerate(self.label().into()))
        };
        Ok(match self {
            MobiusSymmetry::Identity => (y.clone(), t.clone()),
            MobiusSymmetry::OneMinus => (r(one.sub(y))?, r(one.sub(t))?),
            MobiusSymmetry::Scale => (r(y.div(t))?, r(t.invert())?),
            MobiusSymmetry::Invert => (r(y.invert())?, r(t.invert())?),
            MobiusSymmetry::Cross => {
                let num = r(y.mul(&r(t.sub(&one))?))?;
                (r(num.div(&r(t.sub(y))?))?, r(one.sub(t))?)
            }
            MobiusSymmetry::Ratio => (r(y.div(&r(y.sub(&one))?))?, r(t.div(&r(t.sub(&one))?))?),
            MobiusSymmetry::FixT1 => (r(r(y.sub(t))?.div(&r(y.sub(&one))?))?, t.clone()),
            MobiusSymmetry::FixT2 => (r(t.div(y))?, t.clone()),
            MobiusSymmetry::FixT3 => (
                r(r(t.mul(&r(y.sub(&one))?))?.div(&r(y.sub(t))?))?,
                t.clone(),
            ),
        })
    }
}

impl fmt::Display for MobiusSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Applies a symmetry to a solution, transforming `theta` by the point permutation.
pub fn apply_mobius(sym: MobiusSymmetry, sol: &PviSolution) -> Result<PviSolution, TransformError> {
    let (y, t) = sym.apply_functions(&sol.y, &sol.t)?;
    Ok(PviSolution::new(y, t, sym.apply_theta(&sol.theta))?)
}
