use super::intpoly::IntPoly;
use super::unipoly::UniPoly;
use super::Rational;
use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Rational function in one variable: coprime numerator and monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFunc {
    /// Builds and normalizes `num / den`. Panics on a zero denominator.
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (cn, n) = num.to_primitive();
        let (cd, d) = den.to_primitive();
        Self::from_primitive(cn / cd, n, d)
    }

    /// `scale * n / d` with `n, d` integer polynomials, `d` nonzero.
    pub fn from_int_parts(scale: Rational, n: &IntPoly, d: &IntPoly) -> Self {
        let (cn, n) = n.primitive();
        let (cd, d) = d.primitive();
        Self::from_primitive(scale * Rational::new(cn, cd), n, d)
    }

    fn from_primitive(scale: Rational, n: IntPoly, d: IntPoly) -> Self {
        if n.is_zero() || scale.is_zero() {
            return Self::zero();
        }
        let g = n.gcd(&d);
        let (n, d) = if g.degree() == Some(0) {
            (n, d)
        } else {
            (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
        };
        let lcd = Rational::from_integer(d.lc());
        let num = UniPoly::from_int_poly(&n).scale(&(scale / &lcd));
        let den = UniPoly::from_int_poly(&d).scale(&lcd.recip());
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc {
            num: UniPoly::constant(c),
            den: UniPoly::one(),
        }
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn x() -> Self {
        Self::from_poly(UniPoly::x())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Re-normalizes; a no-op on values built through the public API.
    pub fn normalized(&self) -> Self {
        Self::new(self.num.clone(), self.den.clone())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, k: i32) -> Self {
        let base = if k < 0 { self.recip() } else { self.clone() };
        let e = k.unsigned_abs();
        RatFunc {
            num: base.num.pow(e),
            den: base.den.pow(e),
        }
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    /// Evaluates at a rational point; `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Substitutes `x := r` (composition `self(r)`).
    pub fn compose(&self, r: &RatFunc) -> RatFunc {
        let (cn, n) = self.num.to_primitive();
        let (cd, d) = self.den.to_primitive();
        let (ca, a) = r.num.to_primitive();
        let (cb, b) = r.den.to_primitive();
        // x = (ca/cb) a / b; work with a' = ca_n a, b' = cb_d b as integer polys.
        let ratio = ca / cb;
        let (an, ad) = (ratio.numer().clone(), ratio.denom().clone());
        let a = a.scale(&an);
        let b = b.scale(&ad);
        let dn = n.degree().unwrap_or(0);
        let dd = d.degree().unwrap_or(0);
        let top = n.compose_fraction(&a, &b);
        let bot = d.compose_fraction(&a, &b);
        let (top, bot) = if dn >= dd {
            (top, &bot * &b.pow((dn - dd) as u32))
        } else {
            (&top * &b.pow((dd - dn) as u32), bot)
        };
        Self::from_int_parts(cn / cd, &top, &bot)
    }

    pub fn to_expr(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.to_expr(var);
        }
        format!("({})/({})", self.num.to_expr(var), self.den.to_expr(var))
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let (b1, d1) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                self.den.div_exact(&g).unwrap(),
                rhs.den.div_exact(&g).unwrap(),
            )
        };
        let n = &(&self.num * &d1) + &(&rhs.num * &b1);
        RatFunc::new(n, &self.den * &d1)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let (c1, n1) = self.num.to_primitive();
        let (e1, d1) = self.den.to_primitive();
        let (c2, n2) = rhs.num.to_primitive();
        let (e2, d2) = rhs.den.to_primitive();
        let g1 = n1.gcd(&d2);
        let g2 = n2.gcd(&d1);
        let (n1, d2) = if g1.degree() == Some(0) {
            (n1, d2)
        } else {
            (n1.div_exact(&g1).unwrap(), d2.div_exact(&g1).unwrap())
        };
        let (n2, d1) = if g2.degree() == Some(0) {
            (n2, d1)
        } else {
            (n2.div_exact(&g2).unwrap(), d1.div_exact(&g2).unwrap())
        };
        let n = &n1 * &n2;
        let d = &d1 * &d2;
        let lcd = Rational::from_integer(d.lc());
        RatFunc {
            num: UniPoly::from_int_poly(&n).scale(&(c1 * c2 / (e1 * e2 * &lcd))),
            den: UniPoly::from_int_poly(&d).scale(&lcd.recip()),
        }
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.recip()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<UniPoly> for RatFunc {
    fn from(p: UniPoly) -> Self {
        RatFunc::from_poly(p)
    }
}
