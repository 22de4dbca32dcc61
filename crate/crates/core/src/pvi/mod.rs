//! The sixth Painleve equation: parameters, solutions and the exact residual.

pub mod polyvec;

use crate::arith::{rat_to_string, IntPoly, Rational};
use crate::field::{FieldElement, FieldError, TowerPresentation};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use polyvec::{clear_denominators, PolyVec, TowerTable};
use serde::Serialize;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PviError {
    #[error("t is constant")]
    ConstantT,
    #[error("degenerate solution: y is identically {0}")]
    Degenerate(&'static str),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The four parameters `theta_1 .. theta_4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaParams(pub [Rational; 4]);

impl ThetaParams {
    pub fn new(t1: Rational, t2: Rational, t3: Rational, t4: Rational) -> Self {
        ThetaParams([t1, t2, t3, t4])
    }

    /// `(a, b, c, d) / den` from integers.
    pub fn over(nums: [i64; 4], den: i64) -> Self {
        ThetaParams(nums.map(|n| Rational::new(BigInt::from(n), BigInt::from(den))))
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    /// `(theta_1, theta_2, theta_3, theta_4 - 1)`: the entries attached to
    /// the marked points `0, t, 1, infinity`.
    pub fn shifted(&self) -> [Rational; 4] {
        let [a, b, c, d] = self.0.clone();
        [a, b, c, d - Rational::one()]
    }

    pub fn from_shifted(v: [Rational; 4]) -> Self {
        let [a, b, c, d] = v;
        ThetaParams([a, b, c, d + Rational::one()])
    }

    /// Coefficients `((theta_4-1)^2, theta_1^2, theta_3^2, 1-theta_2^2)` of the equation.
    pub fn coefficients(&self) -> [Rational; 4] {
        let [a, b, c, d] = self.shifted();
        [&d * &d, &a * &a, &c * &c, Rational::one() - &b * &b]
    }

    /// Representative with nonnegative `theta_1..theta_3` and `theta_4 >= 1`.
    pub fn canonical(&self) -> Self {
        let [a, b, c, d] = self.shifted();
        Self::from_shifted([a.abs(), b.abs(), c.abs(), d.abs()])
    }

    pub fn to_text(&self) -> String {
        self.0
            .iter()
            .map(rat_to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for ThetaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(rat_to_string)
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

/// True iff the equations for `a` and `b` coincide.
pub fn theta_equivalent_up_to_signs(a: &ThetaParams, b: &ThetaParams) -> bool {
    a.coefficients() == b.coefficients()
}

/// An algebraic solution `(y, t)` on a tower.
#[derive(Clone, Debug, PartialEq)]
pub struct PviSolution {
    pub tower: Arc<TowerPresentation>,
    pub y: FieldElement,
    pub t: FieldElement,
    pub theta: ThetaParams,
}

impl PviSolution {
    /// Validates non-degeneracy: `t` nonconstant, `y` not identically `0`, `1` or `t`.
    pub fn new(y: FieldElement, t: FieldElement, theta: ThetaParams) -> Result<Self, PviError> {
        let tower = y.tower().clone();
        if t.tower() != &tower && **t.tower() != *tower {
            return Err(FieldError::TowerMismatch.into());
        }
        if t.differentiate().is_zero() {
            return Err(PviError::ConstantT);
        }
        if y.is_zero() {
            return Err(PviError::Degenerate("0"));
        }
        if y.is_one() {
            return Err(PviError::Degenerate("1"));
        }
        if y == t {
            return Err(PviError::Degenerate("t"));
        }
        Ok(PviSolution { tower, y, t, theta })
    }

    pub fn with_theta(&self, theta: ThetaParams) -> Self {
        PviSolution {
            theta,
            ..self.clone()
        }
    }
}

/// Size statistics of the residual expansion.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct ExpansionStats {
    pub max_degree: usize,
    pub max_coefficient_bits: u64,
    pub millis: u128,
}

/// Outcome of [`pvi_residual`].
#[derive(Clone, Debug)]
pub struct ResidualReport {
    /// The residual multiplied through by its (nonzero) cleared denominator;
    /// it vanishes exactly when the residual does.
    pub residual: FieldElement,
    pub is_zero: bool,
    pub stats: ExpansionStats,
}

/// Exact residual of the equation at `(y, t)`.
///
/// With `p = Dy, q = Dt` for the base derivation `D`, the equation times
/// `q^3 * 2 t^2 (t-1)^2 y^2 (y-1)^2 (y-t)^2` reads
/// `G1 (D^2y q - p D^2t) + G2 p^2 q + G3 p q^2 + G4 q^3 = 0`.
/// Everything is scaled to integer polynomial coordinates; the derivation is
/// replaced by `lambda D` with `lambda = 2 f1 f2`, which keeps coordinates
/// polynomial and rescales the residual by `lambda^3`.
pub fn pvi_residual(sol: &PviSolution) -> Result<ResidualReport, PviError> {
    let start = Instant::now();
    let tower = &sol.tower;
    let tab = TowerTable::new(tower);
    let n = tower.basis_len();
    if sol.t.differentiate().is_zero() {
        return Err(PviError::ConstantT);
    }
    let (y, e) = clear_denominators(&sol.y);
    let (t, f) = clear_denominators(&sol.t);
    let mut stats = ExpansionStats::default();
    let mut track = |v: &PolyVec| {
        stats.max_degree = stats.max_degree.max(v.max_degree());
        stats.max_coefficient_bits = stats.max_coefficient_bits.max(v.max_bits());
    };

    // first and second derivatives, numerators over E^2, E^3 (resp. F)
    let de = &e.derivative() * &tab.lambda;
    let df = &f.derivative() * &tab.lambda;
    let y1 = y.delta(&tab).scale(&e).sub(&y.scale(&de));
    let y2 = y1.delta(&tab).scale(&e).sub(&y1.scale(&de).scale_int(2));
    let t1 = t.delta(&tab).scale(&f).sub(&t.scale(&df));
    let t2 = t1.delta(&tab).scale(&f).sub(&t1.scale(&df).scale_int(2));

    let a = y.sub_scalar(&e); // y - 1
    let b = t.sub_scalar(&f); // t - 1
    let c = y.scale(&f).sub(&t.scale(&e)); // y - t
    let ya = y.mul(&a, &tab);
    let tb = t.mul(&b, &tab);
    let c2 = c.square(&tab);
    let ya2 = ya.square(&tab);
    track(&ya2);

    // term 1: G1 (y'' t' - y' t''), scaled by F
    let g1 = tb.square(&tab).mul(&ya2, &tab).mul(&c2, &tab).scale_int(2);
    let br1 = y2
        .mul(&t1, &tab)
        .scale(&f)
        .sub(&y1.mul(&t2, &tab).scale(&e));
    let term1 = g1.mul(&br1, &tab).scale(&f);
    track(&term1);

    // term 2: G2 y'^2 t', scaled by F^2
    let yac = ya.mul(&c, &tab);
    let br2 = a.mul(&c, &tab).add(&y.mul(&c, &tab)).add(&ya.scale(&f));
    let g2 = tb.square(&tab).mul(&yac, &tab).mul(&br2, &tab);
    let term2 = g2
        .mul(&y1.square(&tab).mul(&t1, &tab), &tab)
        .scale(&(&f * &f))
        .scale_int(-1);
    track(&term2);

    // term 3: G3 y' t'^2, scaled by E F
    let br3 = b.mul(&c, &tab).add(&t.mul(&c, &tab)).add(&tb.scale(&e));
    let g3 = tb
        .mul(&ya2, &tab)
        .mul(&c, &tab)
        .mul(&br3, &tab)
        .scale_int(2);
    let term3 = g3
        .mul(&y1.mul(&t1.square(&tab), &tab), &tab)
        .scale(&(&e * &f));
    track(&term3);

    // term 4: G4 t'^3
    let [alpha, beta, gamma, delta] = sol.theta.coefficients();
    let den = [&alpha, &beta, &gamma, &delta]
        .iter()
        .fold(BigInt::one(), |acc, r| {
            num_integer::Integer::lcm(&acc, r.denom())
        });
    let k = |r: &Rational| (r * Rational::from_integer(den.clone())).to_integer();
    let e2 = &e * &e;
    let mut br4 = PolyVec::zero(n);
    if !alpha.is_zero() {
        br4 = br4.add(
            &ya2.mul(&c2, &tab)
                .scale(&f)
                .scale(&IntPoly::constant(k(&alpha))),
        );
    }
    if !beta.is_zero() {
        let v = t.mul(&a.square(&tab), &tab).mul(&c2, &tab).scale(&e2);
        br4 = br4.sub(&v.scale(&IntPoly::constant(k(&beta))));
    }
    if !gamma.is_zero() {
        let v = b.mul(&y.square(&tab), &tab).mul(&c2, &tab).scale(&e2);
        br4 = br4.add(&v.scale(&IntPoly::constant(k(&gamma))));
    }
    if !delta.is_zero() {
        let v = tb.mul(&ya2, &tab).scale(&(&e2 * &f));
        br4 = br4.add(&v.scale(&IntPoly::constant(k(&delta))));
    }
    let term4 = yac
        .mul(&br4, &tab)
        .mul(&t1.square(&tab).mul(&t1, &tab), &tab)
        .scale_int(-1);
    track(&term4);

    let dk = IntPoly::constant(den);
    let total = term1.add(&term2).add(&term3).scale(&dk).add(&term4);
    track(&total);
    let is_zero = total.is_zero();
    stats.millis = start.elapsed().as_millis();
    Ok(ResidualReport {
        residual: total.to_field(tower),
        is_zero,
        stats,
    })
}
