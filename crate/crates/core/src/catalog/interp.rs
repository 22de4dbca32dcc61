use super::expr::Interpreter;
use crate::arith::{BiPoly, RatFunc, Rational};
use crate::field::{FieldElement, TowerPresentation};
use num_bigint::BigInt;
use std::collections::HashMap;
use std::sync::Arc;

/// Evaluates expressions as elements of a tower. The base variable and the
/// bound names are in scope.
pub struct FieldInterp<'a> {
    pub tower: &'a Arc<TowerPresentation>,
    pub env: &'a HashMap<String, FieldElement>,
}

impl Interpreter for FieldInterp<'_> {
    type Value = FieldElement;
    type Error = String;

    fn integer(&self, n: &BigInt) -> Result<FieldElement, String> {
        Ok(FieldElement::from_rational(
            self.tower,
            Rational::from_integer(n.clone()),
        ))
    }

    fn variable(&self, name: &str) -> Result<FieldElement, String> {
        if name == self.tower.var() {
            return Ok(FieldElement::variable(self.tower));
        }
        self.env
            .get(name)
            .cloned()
            .ok_or_else(|| format!("unknown name '{name}'"))
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, String> {
        a.add(b).map_err(|e| e.to_string())
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, String> {
        a.sub(b).map_err(|e| e.to_string())
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, String> {
        a.mul(b).map_err(|e| e.to_string())
    }

    fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, String> {
        if b.is_zero() {
            return Err("division by zero".into());
        }
        a.div(b).map_err(|e| e.to_string())
    }

    fn neg(&self, a: &FieldElement) -> Result<FieldElement, String> {
        Ok(a.neg())
    }

    fn pow(&self, a: &FieldElement, k: i32) -> Result<FieldElement, String> {
        if k < 0 && a.is_zero() {
            return Err("division by zero".into());
        }
        a.pow(k).map_err(|e| e.to_string())
    }
}

/// Quotient of two bivariate polynomials, kept unreduced.
#[derive(Clone, Debug, PartialEq)]
pub struct BiFrac {
    pub num: BiPoly,
    pub den: BiPoly,
}

impl BiFrac {
    pub fn poly(p: BiPoly) -> Self {
        BiFrac {
            num: p,
            den: BiPoly::constant(Rational::from_integer(1.into())),
        }
    }
}

/// Evaluates expressions in `Q(x, y)` with named bivariate fractions in scope.
pub struct PlaneInterp<'a> {
    pub x: &'a str,
    pub y: &'a str,
    pub env: &'a HashMap<String, BiFrac>,
}

impl Interpreter for PlaneInterp<'_> {
    type Value = BiFrac;
    type Error = String;

    fn integer(&self, n: &BigInt) -> Result<BiFrac, String> {
        Ok(BiFrac::poly(BiPoly::constant(Rational::from_integer(
            n.clone(),
        ))))
    }

    fn variable(&self, name: &str) -> Result<BiFrac, String> {
        if name == self.x {
            return Ok(BiFrac::poly(BiPoly::x()));
        }
        if name == self.y {
            return Ok(BiFrac::poly(BiPoly::y()));
        }
        self.env
            .get(name)
            .cloned()
            .ok_or_else(|| format!("unknown name '{name}'"))
    }

    fn add(&self, a: &BiFrac, b: &BiFrac) -> Result<BiFrac, String> {
        if a.den == b.den {
            return Ok(BiFrac {
                num: &a.num + &b.num,
                den: a.den.clone(),
            });
        }
        Ok(BiFrac {
            num: &(&a.num * &b.den) + &(&b.num * &a.den),
            den: &a.den * &b.den,
        })
    }

    fn sub(&self, a: &BiFrac, b: &BiFrac) -> Result<BiFrac, String> {
        self.add(a, &self.neg(b)?)
    }

    fn mul(&self, a: &BiFrac, b: &BiFrac) -> Result<BiFrac, String> {
        Ok(BiFrac {
            num: &a.num * &b.num,
            den: &a.den * &b.den,
        })
    }

    fn div(&self, a: &BiFrac, b: &BiFrac) -> Result<BiFrac, String> {
        if b.num.is_zero() {
            return Err("division by zero".into());
        }
        Ok(BiFrac {
            num: &a.num * &b.den,
            den: &a.den * &b.num,
        })
    }

    fn neg(&self, a: &BiFrac) -> Result<BiFrac, String> {
        Ok(BiFrac {
            num: -&a.num,
            den: a.den.clone(),
        })
    }

    fn pow(&self, a: &BiFrac, k: i32) -> Result<BiFrac, String> {
        let base = if k < 0 {
            if a.num.is_zero() {
                return Err("division by zero".into());
            }
            BiFrac {
                num: a.den.clone(),
                den: a.num.clone(),
            }
        } else {
            a.clone()
        };
        let e = k.unsigned_abs();
        Ok(BiFrac {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }
}

/// Evaluates expressions in the rational function field of one variable.
pub struct RatInterp<'a> {
    pub var: &'a str,
    pub env: &'a HashMap<String, RatFunc>,
}

impl Interpreter for RatInterp<'_> {
    type Value = RatFunc;
    type Error = String;

    fn integer(&self, n: &BigInt) -> Result<RatFunc, String> {
        Ok(RatFunc::constant(Rational::from_integer(n.clone())))
    }

    fn variable(&self, name: &str) -> Result<RatFunc, String> {
        if name == self.var {
            return Ok(RatFunc::x());
        }
        self.env
            .get(name)
            .cloned()
            .ok_or_else(|| format!("unknown name '{name}'"))
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc, String> {
        Ok(a + b)
    }

    fn sub(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc, String> {
        Ok(a - b)
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc, String> {
        Ok(a * b)
    }

    fn div(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc, String> {
        if b.is_zero() {
            return Err("division by zero".into());
        }
        Ok(a / b)
    }

    fn neg(&self, a: &RatFunc) -> Result<RatFunc, String> {
        Ok(-a)
    }

    fn pow(&self, a: &RatFunc, k: i32) -> Result<RatFunc, String> {
        if k < 0 && a.is_zero() {
            return Err("division by zero".into());
        }
        Ok(a.pow(k))
    }
}
