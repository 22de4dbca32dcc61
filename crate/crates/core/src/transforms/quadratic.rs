use super::TransformError;
use crate::arith::{rat, RatFunc, Rational, UniPoly};
use crate::field::{adjoin_root_of, AdjoinKind, FieldElement, TowerPresentation};
use crate::pvi::{PviSolution, ThetaParams};
use num_traits::{One, Zero};
use std::sync::Arc;

/// A solution `y = 1/2 + a_y u`, `t = 1/2 + a_t u` on `u^2 = u2(var)`
/// with `theta_1 = theta_3 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedForm {
    pub var: String,
    pub a_y: RatFunc,
    pub a_t: RatFunc,
    pub u2: UniPoly,
    pub theta: ThetaParams,
}

impl SeedForm {
    /// Rebuilds `(y, t)` on the tower `u^2 = u2`.
    pub fn solution(&self) -> Result<PviSolution, TransformError> {
        let tower = TowerPresentation::new(&self.var, vec![self.u2.clone()], vec!["u".into()])?;
        let u = FieldElement::generator(&tower, 0);
        let half = RatFunc::constant(rat(1, 2));
        let y = u.scale(&self.a_y).add_base(&half);
        let t = u.scale(&self.a_t).add_base(&half);
        Ok(PviSolution::new(y, t, self.theta.clone())?)
    }
}

/// Reads off the seed shape of a solution on a one-radicand tower.
pub fn to_seed_form(sol: &PviSolution) -> Result<SeedForm, TransformError> {
    let tower = &sol.tower;
    if tower.depth() != 1 {
        return Err(TransformError::Shape(format!(
            "tower has {} radicands, expected one",
            tower.depth()
        )));
    }
    if !sol.theta.get(0).is_zero() || !sol.theta.get(2).is_zero() {
        return Err(TransformError::Shape(
            "theta shape: theta_1 and theta_3 must vanish".into(),
        ));
    }
    let half = RatFunc::constant(rat(1, 2));
    for (name, e) in [("y", &sol.y), ("t", &sol.t)] {
        if e.coord(0) != &half {
            return Err(TransformError::Shape(format!(
                "{name} is not 1/2 plus a multiple of the generator"
            )));
        }
    }
    Ok(SeedForm {
        var: tower.var().to_string(),
        a_y: sol.y.coord(1).clone(),
        a_t: sol.t.coord(1).clone(),
        u2: tower.radicands()[0].clone(),
        theta: sol.theta.clone(),
    })
}

/// Parameter map of the folded transformation.
pub fn folded_theta(theta: &ThetaParams) -> ThetaParams {
    let two = Rational::from_integer(2.into());
    let one = Rational::one();
    let a = (&one - theta.get(3)) / &two;
    ThetaParams::new(
        a.clone(),
        theta.get(1) / &two,
        a,
        (&two - theta.get(1)) / &two,
    )
}

/// Parameter map of the two-square-root transformation.
pub fn rgt_theta(theta: &ThetaParams) -> ThetaParams {
    let two = Rational::from_integer(2.into());
    let h = theta.get(1) / &two;
    ThetaParams::new(
        theta.get(2) / &two,
        h.clone(),
        h,
        (&two - theta.get(2)) / &two,
    )
}

fn adjoin(
    tower: &Arc<TowerPresentation>,
    rad: &RatFunc,
    name: &str,
) -> Result<(Arc<TowerPresentation>, FieldElement), TransformError> {
    let adj = adjoin_root_of(tower, rad, name)?;
    if adj.kind == AdjoinKind::Square {
        return Err(TransformError::Degenerate(format!(
            "radicand of {name} is a perfect square"
        )));
    }
    Ok((adj.tower, adj.root))
}

/// The folded quadratic transformation: `A_i = 2 a_i u2`, `v^2 = A_y^2 - u2`,
/// `w^2 = A_t^2 - u2`, `y = 1/2 + (w + v)/(2(A_y - A_t))`, `t = 1/2 - A_t/(2w)`.
pub fn folded_quadratic_transform(seed: &SeedForm) -> Result<PviSolution, TransformError> {
    let u2 = RatFunc::from_poly(seed.u2.clone());
    let two = RatFunc::constant(Rational::from_integer(2.into()));
    let ay = &(&seed.a_y * &u2) * &two;
    let at = &(&seed.a_t * &u2) * &two;
    if ay == at {
        return Err(TransformError::Degenerate("A_y = A_t".into()));
    }
    let base = TowerPresentation::base(&seed.var);
    let (t1, v) = adjoin(&base, &(&(&ay * &ay) - &u2), "v")?;
    let (t2, w) = adjoin(&t1, &(&(&at * &at) - &u2), "w")?;
    let v = v.lift(&t2)?;
    let half = RatFunc::constant(rat(1, 2));
    let y = v
        .add(&w)?
        .scale(&(&two * &(&ay - &at)).recip())
        .add_base(&half);
    let t = w.invert()?.scale(&-&(&at / &two)).add_base(&half);
    Ok(PviSolution::new(y, t, folded_theta(&seed.theta))?)
}

/// Sign in `B = A +- sqrt(A^2 - u2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize)]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

/// The transformation obtained from square roots `eta^2 = y0`, `tau^2 = t0`:
/// `y = (tau-1)(eta+1)/((tau+1)(eta-1))`, `t = ((tau-1)/(tau+1))^2`.
///
/// On a base-field solution the roots are adjoined directly. On a one-radicand
/// tower the inputs must have norm one; writing `x = (A+u)/(A-u)` the roots are
/// `(B+u)/(B-u)` with `B = A +- sqrt(A^2 - u^2)`, and `u` cancels from the output:
/// `y = B_y/B_t`, `t = u^2/B_t^2`.
pub fn rgt_transform(sol: &PviSolution, branch: Branch) -> Result<PviSolution, TransformError> {
    let [_, _, _, d] = sol.theta.shifted();
    if !sol.theta.get(0).is_zero() || !d.is_zero() {
        return Err(TransformError::Shape(
            "theta shape: need theta_1 = 0 and theta_4 = 1".into(),
        ));
    }
    let theta = rgt_theta(&sol.theta);
    let tower = &sol.tower;
    match tower.depth() {
        0 => {
            let y0 = sol.y.as_base().expect("depth 0").clone();
            let t0 = sol.t.as_base().expect("depth 0").clone();
            let (t1, eta) = adjoin(tower, &y0, "eta")?;
            let (t2, tau) = adjoin(&t1, &t0, "tau")?;
            let eta = eta.lift(&t2)?;
            let one = FieldElement::one(&t2);
            let r = tau.sub(&one)?.div(&tau.add(&one)?)?;
            let y = r.mul(&eta.add(&one)?)?.div(&eta.sub(&one)?)?;
            Ok(PviSolution::new(y, r.square(), theta)?)
        }
        1 => {
            let u2 = RatFunc::from_poly(tower.radicands()[0].clone());
            let a_of = |x: &FieldElement, name: &str| -> Result<RatFunc, TransformError> {
                if !x.norm().is_one() {
                    return Err(TransformError::Depth(format!(
                        "{name} does not have norm one; its square root leaves the depth-2 budget"
                    )));
                }
                let (p, q) = (x.coord(0), x.coord(1));
                if q.is_zero() {
                    return Err(TransformError::Degenerate(format!("{name} is constant")));
                }
                Ok(&(p + &RatFunc::one()) / q)
            };
            let ay = a_of(&sol.y, "y")?;
            let at = a_of(&sol.t, "t")?;
            let base = TowerPresentation::base(tower.var());
            let (t1, v) = adjoin(&base, &(&(&ay * &ay) - &u2), "v")?;
            let (t2, w) = adjoin(&t1, &(&(&at * &at) - &u2), "w")?;
            let v = v.lift(&t2)?;
            let (v, w) = match branch {
                Branch::Plus => (v, w),
                Branch::Minus => (v.neg(), w.neg()),
            };
            let by = v.add_base(&ay);
            let bt = w.add_base(&at);
            let y = by.div(&bt)?;
            let t = bt.square().invert()?.scale(&u2);
            Ok(PviSolution::new(y, t, theta)?)
        }
        _ => Err(TransformError::Depth(
            "input tower must have at most one radicand".into(),
        )),
    }
}
