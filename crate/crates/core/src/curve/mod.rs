//! Geometry of the curves carrying the solutions.

pub mod belyi;
pub mod model;
pub mod mp;
pub mod plane;
pub mod roots;

pub use belyi::{belyi_certify, BelyiCertificate, BelyiOptions, Profiles};
pub use model::{build_model, pullback_to_model, verify_model, ModelCheck, ModelPresentation};
pub use plane::{analyze_plane_singularities, PointKind, SingularPoint, SingularityReport};

use crate::arith::{ArithError, UniPoly};
use crate::catalog::CatalogError;
use crate::field::{FieldElement, FieldError, TowerPresentation};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("malformed model: {0}")]
    Malformed(String),
    #[error("t is constant")]
    ConstantMap,
    #[error("unresolved at {0} bits: {1}")]
    Unresolved(u32, String),
    #[error("not a Belyi map: {0}")]
    NotBelyi(String),
    #[error("classification failure: {0}")]
    Classification(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveInvariants {
    pub genus: u32,
    /// Points of the base line over which the cover ramifies.
    pub ramified_place_count: u32,
    /// `Some(true)` for double covers of the line; unknown otherwise.
    pub hyperelliptic: Option<bool>,
}

/// Distinct roots of `f` counted with multiplicity one, plus infinity when
/// the degree is odd.
fn branch_points(classes: &[&UniPoly]) -> u32 {
    let mut l = UniPoly::one();
    for f in classes {
        let g = l.gcd(f);
        l = (&l * &f.monic()).div_exact(&g).expect("gcd divides");
    }
    let finite = l.degree().unwrap_or(0) as u32;
    let infinite = classes.iter().any(|f| f.degree().unwrap_or(0) % 2 == 1);
    finite + u32::from(infinite)
}

/// Genus from Riemann-Hurwitz: `floor((deg f - 1)/2)` for one radicand and
/// `R - 3` for two, where `R` counts branch points of either class.
pub fn genus(tower: &TowerPresentation) -> CurveInvariants {
    match tower.depth() {
        0 => CurveInvariants {
            genus: 0,
            ramified_place_count: 0,
            hyperelliptic: Some(false),
        },
        1 => {
            let f = &tower.radicands()[0];
            let d = f.degree().unwrap_or(0) as u32;
            CurveInvariants {
                genus: d.saturating_sub(1) / 2,
                ramified_place_count: branch_points(&[f]),
                hyperelliptic: Some(d >= 5),
            }
        }
        _ => {
            let r = tower.radicands();
            let big_r = branch_points(&[&r[0], &r[1]]);
            CurveInvariants {
                genus: big_r.saturating_sub(3),
                ramified_place_count: big_r,
                hyperelliptic: None,
            }
        }
    }
}

/// Degree of `t` as a map to the line: `(2^k / d) deg_s P` for the minimal
/// polynomial of degree `d` with primitive integral form `P`.
pub fn degree_of_map(t: &FieldElement) -> Result<u32, CurveError> {
    if t.differentiate().is_zero() {
        return Err(CurveError::ConstantMap);
    }
    let m = t.minimal_polynomial();
    let k = t.tower().basis_len() as u32;
    Ok(k / m.degree() as u32 * m.base_degree() as u32)
}
