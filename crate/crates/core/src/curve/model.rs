//! Alternative models of the curves and the substitution maps to them.

use super::CurveError;
use crate::arith::{squarefree_part, BiPoly, RatFunc, Var};
use crate::catalog::expr::{evaluate, Expr, Interpreter};
use crate::catalog::interp::{BiFrac, FieldInterp, PlaneInterp, RatInterp};
use crate::catalog::{ModelBlock, ModelKind, SolutionRecord, TowerStmt};
use crate::field::{FieldElement, TowerPresentation};
use crate::pvi::PviSolution;
use crate::transforms::pullback;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub enum ModelPresentation {
    /// `root^2 = f(param)` with the tower coordinates expressed on it.
    Hyperelliptic {
        name: String,
        tower: Arc<TowerPresentation>,
        maps: Vec<(String, FieldElement)>,
    },
    /// A plane curve with the tower coordinates expressed on it.
    Plane {
        name: String,
        vars: (String, String),
        curve: BiPoly,
        maps: Vec<(String, BiFrac)>,
    },
    /// A plane curve with its coordinates expressed on the tower.
    Image {
        name: String,
        vars: (String, String),
        curve: Expr,
        images: Vec<(String, FieldElement)>,
    },
}

impl ModelPresentation {
    pub fn name(&self) -> &str {
        match self {
            ModelPresentation::Hyperelliptic { name, .. }
            | ModelPresentation::Plane { name, .. }
            | ModelPresentation::Image { name, .. } => name,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModelCheck {
    pub model: String,
    pub relations: Vec<RelationCheck>,
    pub verified: bool,
}

fn malformed(m: impl Into<String>) -> CurveError {
    CurveError::Malformed(m.into())
}

/// Evaluates a plane curve expression to a polynomial in `(x, y)`.
pub fn plane_polynomial(curve: &Expr, x: &str, y: &str) -> Result<BiPoly, CurveError> {
    let env = HashMap::new();
    let f = evaluate(curve, &PlaneInterp { x, y, env: &env }).map_err(malformed)?;
    match f.den.coeffs().first().and_then(|c| c.constant_value()) {
        Some(c) if f.den.degree(Var::Outer) == Some(0) && f.den.coeffs()[0].is_constant() => {
            Ok(f.num.scale(&c.recip()))
        }
        _ => Err(malformed("curve is not a polynomial")),
    }
}

/// Builds the model described by a record block.
pub fn build_model(
    block: &ModelBlock,
    rec: &SolutionRecord,
) -> Result<ModelPresentation, CurveError> {
    match block.kind {
        ModelKind::Hyperelliptic => {
            let param = block
                .param
                .clone()
                .ok_or_else(|| malformed("missing param"))?;
            let empty = HashMap::new();
            let mut cores = vec![];
            let mut scales = vec![];
            let mut names = vec![];
            for (name, e) in &block.roots {
                let f = evaluate(
                    e,
                    &RatInterp {
                        var: &param,
                        env: &empty,
                    },
                )
                .map_err(malformed)?;
                if !f.is_polynomial() {
                    return Err(malformed(format!("radicand of {name} is not a polynomial")));
                }
                let (core, cof) = squarefree_part(f.num())?;
                let c = cof
                    .constant_value()
                    .ok_or_else(|| malformed(format!("radicand of {name} is not squarefree")))?;
                cores.push(core);
                scales.push(c);
                names.push(name.clone());
            }
            let tower = TowerPresentation::new(&param, cores, names.clone())?;
            let mut env = HashMap::new();
            for (i, n) in names.iter().enumerate() {
                env.insert(
                    n.clone(),
                    FieldElement::generator(&tower, i).scale_rational(&scales[i]),
                );
            }
            let mut maps = vec![];
            for (name, e) in &block.maps {
                let v = evaluate(
                    e,
                    &FieldInterp {
                        tower: &tower,
                        env: &env,
                    },
                )
                .map_err(malformed)?;
                env.insert(name.clone(), v.clone());
                maps.push((name.clone(), v));
            }
            Ok(ModelPresentation::Hyperelliptic {
                name: block.name.clone(),
                tower,
                maps,
            })
        }
        ModelKind::Plane => {
            let (x, y) = block
                .plane
                .clone()
                .ok_or_else(|| malformed("missing plane"))?;
            let curve = plane_polynomial(
                block
                    .curve
                    .as_ref()
                    .ok_or_else(|| malformed("missing curve"))?,
                &x,
                &y,
            )?;
            let mut env = HashMap::new();
            let mut maps = vec![];
            for (name, e) in &block.maps {
                let v = evaluate(
                    e,
                    &PlaneInterp {
                        x: &x,
                        y: &y,
                        env: &env,
                    },
                )
                .map_err(malformed)?;
                env.insert(name.clone(), v.clone());
                maps.push((name.clone(), v));
            }
            Ok(ModelPresentation::Plane {
                name: block.name.clone(),
                vars: (x, y),
                curve,
                maps,
            })
        }
        ModelKind::Image => {
            let (x, y) = block
                .plane
                .clone()
                .ok_or_else(|| malformed("missing plane"))?;
            let curve = block
                .curve
                .clone()
                .ok_or_else(|| malformed("missing curve"))?;
            let tower = rec.tower();
            let mut images = vec![];
            for (name, e) in &block.images {
                let v = evaluate(
                    e,
                    &FieldInterp {
                        tower,
                        env: &rec.env,
                    },
                )
                .map_err(malformed)?;
                images.push((name.clone(), v));
            }
            for n in [&x, &y] {
                if !images.iter().any(|(m, _)| m == n) {
                    return Err(malformed(format!("no image for {n}")));
                }
            }
            Ok(ModelPresentation::Image {
                name: block.name.clone(),
                vars: (x, y),
                curve,
                images,
            })
        }
    }
}

/// The radicand statements of a record, in tower order.
fn record_roots(rec: &SolutionRecord) -> Vec<(String, Expr)> {
    rec.all_defs()
        .into_iter()
        .filter_map(|d| match &d.value {
            TowerStmt::Root { name, radicand } => Some((name.clone(), radicand.clone())),
            _ => None,
        })
        .collect()
}

fn lookup<'a, T>(maps: &'a [(String, T)], name: &str) -> Result<&'a T, CurveError> {
    maps.iter()
        .find(|(n, _)| n == name)
        .map(|(_, v)| v)
        .ok_or_else(|| malformed(format!("missing substitution for {name}")))
}

/// Checks every tower relation `r^2 = f(var)` on the model (for models mapping
/// to the tower) or the curve equation on the tower (for image models).
pub fn verify_model(
    model: &ModelPresentation,
    rec: &SolutionRecord,
) -> Result<ModelCheck, CurveError> {
    let var = rec.tower().var().to_string();
    let mut relations = vec![];
    match model {
        ModelPresentation::Hyperelliptic { tower, maps, .. } => {
            let s_img = lookup(maps, &var)?;
            let mut env = HashMap::new();
            env.insert(var.clone(), s_img.clone());
            for (name, rad) in record_roots(rec) {
                let r = lookup(maps, &name)?;
                let rhs = evaluate(&rad, &FieldInterp { tower, env: &env }).map_err(malformed)?;
                relations.push(RelationCheck {
                    relation: format!("{name}^2 = {rad}"),
                    holds: r.square() == rhs,
                });
            }
        }
        ModelPresentation::Plane {
            vars, curve, maps, ..
        } => {
            let s_img = lookup(maps, &var)?;
            let mut env = HashMap::new();
            env.insert(var.clone(), s_img.clone());
            let it = PlaneInterp {
                x: &vars.0,
                y: &vars.1,
                env: &env,
            };
            for (name, rad) in record_roots(rec) {
                let r = lookup(maps, &name)?;
                let rhs = evaluate(&rad, &it).map_err(malformed)?;
                let diff = it
                    .sub(&it.mul(r, r).map_err(malformed)?, &rhs)
                    .map_err(malformed)?;
                let rem = diff.num.pseudo_rem_outer(curve);
                relations.push(RelationCheck {
                    relation: format!("{name}^2 = {rad} mod curve"),
                    holds: rem.is_zero(),
                });
            }
        }
        ModelPresentation::Image {
            vars,
            curve,
            images,
            ..
        } => {
            let tower = rec.tower();
            let mut env = HashMap::new();
            for (n, v) in images {
                env.insert(n.clone(), v.clone());
            }
            let value = evaluate(curve, &FieldInterp { tower, env: &env }).map_err(malformed)?;
            relations.push(RelationCheck {
                relation: format!("curve({}, {}) = 0", vars.0, vars.1),
                holds: value.is_zero(),
            });
        }
    }
    let verified = !relations.is_empty() && relations.iter().all(|r| r.holds);
    Ok(ModelCheck {
        model: model.name().to_string(),
        relations,
        verified,
    })
}

/// Transports a record's solution to a hyperelliptic model.
pub fn pullback_to_model(
    rec: &SolutionRecord,
    model: &ModelPresentation,
) -> Result<PviSolution, CurveError> {
    let ModelPresentation::Hyperelliptic { tower, maps, .. } = model else {
        return Err(malformed("pullback needs a hyperelliptic model"));
    };
    let rt = rec.tower();
    let s_img = lookup(maps, rt.var())?;
    let var_image: RatFunc = s_img
        .as_base()
        .cloned()
        .ok_or_else(|| malformed("base variable must map to the base line"))?;
    let mut gens = vec![];
    for (i, name) in rt.names().iter().enumerate() {
        let img = lookup(maps, name)?;
        // the record binds `name` to a rational multiple of the generator
        let scale = rec
            .env
            .get(name)
            .map(|e| e.coord(1 << i).clone())
            .unwrap_or_else(RatFunc::one);
        gens.push(img.scale(&scale.recip()));
    }
    pullback(&rec.solution, tower, &var_image, &gens).map_err(|e| malformed(e.to_string()))
}
