//! Function fields `Q(x)(sqrt f1, sqrt f2)` and their arithmetic.

mod element;
mod tower;

pub use element::{FieldElement, MinimalPolynomial};
pub use tower::{SquareClassSet, TowerPresentation, MAX_DEPTH};

use crate::arith::{squarefree_part, ArithError, RatFunc, UniPoly};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error("elements belong to different towers")]
    TowerMismatch,
    #[error("zero divisor: the tower is not a field")]
    ZeroDivisor,
    #[error("tower depth exceeds {MAX_DEPTH}")]
    DepthExceeded,
    #[error("radicand {0} is not squarefree")]
    NotSquarefree(String),
    #[error("reducible tower: {0} is a square")]
    Reducible(String),
    #[error("malformed tower data: {0}")]
    Malformed(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// How an adjoined square root was realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdjoinKind {
    /// The radicand is a square in the base field.
    Square,
    /// The square class already occurs in the tower.
    Existing,
    /// The tower was extended by a new generator.
    Extended,
}

/// Result of [`adjoin_root`].
#[derive(Debug, Clone)]
pub struct Adjoined {
    pub tower: Arc<TowerPresentation>,
    /// A square root of the radicand in `tower`.
    pub root: FieldElement,
    pub kind: AdjoinKind,
    /// `radicand = core * cofactor^2`.
    pub core: UniPoly,
    pub cofactor: UniPoly,
}

/// Adjoins a square root of `radicand` (a base polynomial) to `tower`.
///
/// The root is `cofactor * m`, where `m` is the monomial of the tower whose
/// square class equals that of the radicand, or a new generator named `name`.
pub fn adjoin_root(
    tower: &Arc<TowerPresentation>,
    radicand: &UniPoly,
    name: &str,
) -> Result<Adjoined, FieldError> {
    let (core, cofactor) = squarefree_part(radicand)?;
    let cof = RatFunc::from_poly(cofactor.clone());
    if core.is_one() {
        return Ok(Adjoined {
            tower: tower.clone(),
            root: FieldElement::from_base(tower, cof),
            kind: AdjoinKind::Square,
            core,
            cofactor,
        });
    }
    if let Some(mask) = tower.find_class(&core) {
        let (_, cm) = tower.class_of(mask);
        let k = &cof / &RatFunc::from_poly(cm.clone());
        return Ok(Adjoined {
            tower: tower.clone(),
            root: FieldElement::monomial(tower, mask).scale(&k),
            kind: AdjoinKind::Existing,
            core,
            cofactor,
        });
    }
    if tower.depth() >= MAX_DEPTH {
        return Err(FieldError::DepthExceeded);
    }
    let ext = tower.extend(core.clone(), name)?;
    let r = FieldElement::generator(&ext, ext.depth() - 1);
    Ok(Adjoined {
        root: r.scale(&cof),
        tower: ext,
        kind: AdjoinKind::Extended,
        core,
        cofactor,
    })
}

/// Adjoins a square root of an arbitrary base element `a = n/d`, using
/// `sqrt(n/d) = sqrt(n d) / d`.
pub fn adjoin_root_of(
    tower: &Arc<TowerPresentation>,
    a: &RatFunc,
    name: &str,
) -> Result<Adjoined, FieldError> {
    let nd = a.num() * a.den();
    let mut adj = adjoin_root(tower, &nd, name)?;
    adj.root = adj.root.scale(&RatFunc::from_poly(a.den().clone()).recip());
    Ok(adj)
}

/// Images of the generators of `from` expressed in `to`, when both towers
/// present the same field (equal square-class sets).
pub fn change_presentation(
    from: &Arc<TowerPresentation>,
    to: &Arc<TowerPresentation>,
) -> Result<Vec<FieldElement>, FieldError> {
    if from.var() != to.var() || from.square_classes() != to.square_classes() {
        return Err(FieldError::TowerMismatch);
    }
    from.radicands()
        .iter()
        .map(|f| {
            let mask = to.find_class(f).ok_or(FieldError::TowerMismatch)?;
            let (_, cm) = to.class_of(mask);
            Ok(FieldElement::monomial(to, mask).scale(&RatFunc::from_poly(cm.clone()).recip()))
        })
        .collect()
}

/// Re-expresses `a` in another presentation of the same field.
pub fn represent_in(
    a: &FieldElement,
    to: &Arc<TowerPresentation>,
) -> Result<FieldElement, FieldError> {
    let imgs = change_presentation(a.tower(), to)?;
    let base = |c: &RatFunc| Ok(FieldElement::from_base(to, c.clone()));
    a.substitute(to, &base, &imgs)
}
