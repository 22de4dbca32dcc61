use super::intpoly::IntPoly;
use super::{rat_to_string, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial over Q, lowest degree first.
///
/// The indeterminate is anonymous; towers and records carry the symbol name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(
            c.iter()
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k];
        v.push(c);
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().recip())
    }

    pub fn from_int_poly(p: &IntPoly) -> Self {
        UniPoly {
            coeffs: p
                .coeffs()
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        }
    }

    /// `self = scale * prim` with `prim` primitive in `Z[x]` and positive leading coefficient.
    pub fn to_primitive(&self) -> (Rational, IntPoly) {
        if self.is_zero() {
            return (Rational::zero(), IntPoly::zero());
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &l).to_integer()).collect();
        let (ct, p) = IntPoly::new(ints).primitive();
        (Rational::new(ct, l), p)
    }

    /// Integer polynomial proportional to `self` (denominators cleared, content kept).
    pub fn clear_denominators(&self) -> (BigInt, IntPoly) {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &l).to_integer()).collect();
        (l, IntPoly::new(ints))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Self {
        let (c, p) = self.to_primitive();
        UniPoly::from_int_poly(&p.pow(k)).scale(&num_traits::pow(c, k as usize))
    }

    /// Euclidean division over Q.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let n = match self.degree() {
            Some(n) if n >= dd => n,
            _ => return (UniPoly::zero(), self.clone()),
        };
        let inv = d.lc().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let qk = top * &inv;
            for (i, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    r[k + i] -= &qk * dc;
                }
            }
            q[k] = qk;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let (cs, ps) = self.to_primitive();
        let (cd, pd) = d.to_primitive();
        if pd.is_zero() {
            return None;
        }
        let q = ps.div_exact(&pd)?;
        Some(UniPoly::from_int_poly(&q).scale(&(cs / cd)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (_, a) = self.to_primitive();
        let (_, b) = other.to_primitive();
        let g = a.gcd(&b);
        UniPoly::from_int_poly(&g).monic()
    }

    /// `self(p(x))`.
    pub fn compose(&self, p: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * p) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Renders in the catalog expression syntax using `var` as the indeterminate.
    pub fn to_expr(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&rat_to_string(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                let _ = write!(out, "{}*{}", rat_to_string(&a), mono);
            }
        }
        out
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut c = long.coeffs.clone();
        for (i, x) in short.coeffs.iter().enumerate() {
            c[i] += x;
        }
        UniPoly::new(c)
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let mut c = self.coeffs.clone();
        if c.len() < rhs.coeffs.len() {
            c.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (i, x) in rhs.coeffs.iter().enumerate() {
            c[i] -= x;
        }
        UniPoly::new(c)
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        if self.coeffs.len() == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.coeffs.len() == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let (ca, a) = self.to_primitive();
        let (cb, b) = rhs.to_primitive();
        UniPoly::from_int_poly(&(&a * &b)).scale(&(ca * cb))
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: &UniPoly) -> UniPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
