//! Multiprecision complex numbers over `astro-float`.
//!
//! Every value carries its working precision; binary operations round to the
//! larger of the two.

use crate::arith::{IntPoly, Rational, UniPoly};
use astro_float::{BigFloat, RoundingMode, Sign};
use num_bigint::BigInt;
use std::ops::{Add, Mul, Neg, Sub};

const RM: RoundingMode = RoundingMode::ToEven;

fn bigint_to_float(n: &BigInt, p: usize) -> BigFloat {
    let (sign, words) = n.to_u64_digits();
    if words.is_empty() {
        return BigFloat::from_word(0, p);
    }
    let s = if sign == num_bigint::Sign::Minus {
        Sign::Neg
    } else {
        Sign::Pos
    };
    let mut f = BigFloat::from_words(&words, s, (words.len() * 64) as i32);
    f.set_precision(p.max(64), RM).expect("precision");
    f
}

pub fn real_from_rational(r: &Rational, p: usize) -> BigFloat {
    let n = bigint_to_float(r.numer(), p + 64);
    let d = bigint_to_float(r.denom(), p + 64);
    n.div(&d, p, RM)
}

/// Nearest `f64`, saturating outside its range.
pub fn real_to_f64(x: &BigFloat) -> f64 {
    match x.as_raw_parts() {
        Some((words, _, sign, e, _)) => {
            if x.is_zero() || words.is_empty() {
                return 0.0;
            }
            let top = *words.last().expect("mantissa") as f64;
            let e = e as i64 - 64;
            let mag = if e > 1100 {
                f64::INFINITY
            } else if e < -1200 {
                0.0
            } else {
                top * 2f64.powi(e as i32)
            };
            if sign == Sign::Neg {
                -mag
            } else {
                mag
            }
        }
        None => f64::NAN,
    }
}

/// Binary exponent: `|x|` lies in `[2^(e-1), 2^e)`; very negative for zero.
pub fn real_exponent(x: &BigFloat) -> i64 {
    if x.is_zero() {
        i64::MIN / 4
    } else {
        x.exponent().map(i64::from).unwrap_or(i64::MAX / 4)
    }
}

#[derive(Clone, Debug)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
    pub p: usize,
}

impl Complex {
    pub fn zero(p: usize) -> Self {
        Complex {
            re: BigFloat::from_word(0, p),
            im: BigFloat::from_word(0, p),
            p,
        }
    }

    pub fn one(p: usize) -> Self {
        Self::from_f64(1.0, 0.0, p)
    }

    pub fn from_f64(re: f64, im: f64, p: usize) -> Self {
        Complex {
            re: BigFloat::from_f64(re, p),
            im: BigFloat::from_f64(im, p),
            p,
        }
    }

    pub fn from_real(re: BigFloat, p: usize) -> Self {
        Complex {
            re,
            im: BigFloat::from_word(0, p),
            p,
        }
    }

    pub fn from_rational(r: &Rational, p: usize) -> Self {
        Self::from_real(real_from_rational(r, p), p)
    }

    pub fn from_bigint(n: &BigInt, p: usize) -> Self {
        Self::from_real(bigint_to_float(n, p), p)
    }

    pub fn with_precision(&self, p: usize) -> Self {
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        re.set_precision(p, RM).expect("precision");
        im.set_precision(p, RM).expect("precision");
        Complex { re, im, p }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !(self.re.is_nan() || self.im.is_nan() || self.re.is_inf() || self.im.is_inf())
    }

    pub fn conj(&self) -> Self {
        Complex {
            re: self.re.clone(),
            im: -&self.im,
            p: self.p,
        }
    }

    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.p;
        self.re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt(self.p, RM)
    }

    /// `|z|` as an `f64`, saturating.
    pub fn abs_f64(&self) -> f64 {
        real_to_f64(&self.abs())
    }

    /// Approximate `log2 |z|`; `-inf` at zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let a = self.abs();
        let e = real_exponent(&a);
        let mut m = a.clone();
        m.set_exponent(0);
        e as f64 + real_to_f64(&m).log2()
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (real_to_f64(&self.re), real_to_f64(&self.im))
    }

    pub fn scale_real(&self, k: &BigFloat) -> Self {
        let p = self.p;
        Complex {
            re: self.re.mul(k, p, RM),
            im: self.im.mul(k, p, RM),
            p,
        }
    }

    pub fn recip(&self) -> Self {
        let p = self.p + 8;
        let d = self.norm_sqr();
        let c = self.conj();
        Complex {
            re: c.re.div(&d, p, RM),
            im: c.im.div(&d, p, RM),
            p: self.p,
        }
        .with_precision(self.p)
    }

    pub fn div(&self, o: &Complex) -> Self {
        self * &o.recip()
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.p;
        if self.is_zero() {
            return Complex::zero(p);
        }
        let two = BigFloat::from_word(2, p);
        let r = self.abs();
        if !self.re.is_negative() {
            let u = r.add(&self.re, p, RM).div(&two, p, RM).sqrt(p, RM);
            let v = self.im.div(&u.mul(&two, p, RM), p, RM);
            Complex { re: u, im: v, p }
        } else {
            let v = r.sub(&self.re, p, RM).div(&two, p, RM).sqrt(p, RM);
            let u = self.im.abs().div(&v.mul(&two, p, RM), p, RM);
            let v = if self.im.is_negative() { -v } else { v };
            Complex { re: u, im: v, p }
        }
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Complex::one(self.p);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `|self - o|` as `f64`.
    pub fn dist_f64(&self, o: &Complex) -> f64 {
        (self - o).abs_f64()
    }

    /// Decimal rendering with `digits` significant digits in each part.
    pub fn to_decimal(&self, digits: usize) -> String {
        let f = |x: &BigFloat| -> String {
            let v = real_to_f64(x);
            if v == 0.0 {
                return "0".into();
            }
            let s = format!("{:.*e}", digits.min(16), v);
            s
        };
        let (re, im) = (f(&self.re), f(&self.im));
        if real_to_f64(&self.im) == 0.0 {
            re
        } else if self.im.is_negative() {
            format!("{re} - {}i", im.trim_start_matches('-'))
        } else {
            format!("{re} + {im}i")
        }
    }
}

impl<'a> Add<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        let p = self.p.max(o.p);
        Complex {
            re: self.re.add(&o.re, p, RM),
            im: self.im.add(&o.im, p, RM),
            p,
        }
    }
}

impl<'a> Sub<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        let p = self.p.max(o.p);
        Complex {
            re: self.re.sub(&o.re, p, RM),
            im: self.im.sub(&o.im, p, RM),
            p,
        }
    }
}

impl<'a> Mul<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        let p = self.p.max(o.p);
        let q = p + 8;
        let re = self
            .re
            .mul(&o.re, q, RM)
            .sub(&self.im.mul(&o.im, q, RM), p, RM);
        let im = self
            .re
            .mul(&o.im, q, RM)
            .add(&self.im.mul(&o.re, q, RM), p, RM);
        Complex { re, im, p }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex {
            re: -&self.re,
            im: -&self.im,
            p: self.p,
        }
    }
}

/// Polynomial with multiprecision complex coefficients, lowest degree first.
#[derive(Clone, Debug)]
pub struct MpPoly {
    pub coeffs: Vec<Complex>,
}

impl MpPoly {
    pub fn from_int(f: &IntPoly, p: usize) -> Self {
        MpPoly {
            coeffs: f
                .coeffs()
                .iter()
                .map(|c| Complex::from_bigint(c, p))
                .collect(),
        }
    }

    pub fn from_uni(f: &UniPoly, p: usize) -> Self {
        MpPoly {
            coeffs: f
                .coeffs()
                .iter()
                .map(|c| Complex::from_rational(c, p))
                .collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: &Complex) -> Complex {
        let mut acc = Complex::zero(z.p);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    /// Value and first derivative.
    pub fn eval_with_derivative(&self, z: &Complex) -> (Complex, Complex) {
        let mut f = Complex::zero(z.p);
        let mut d = Complex::zero(z.p);
        for c in self.coeffs.iter().rev() {
            d = &(&d * z) + &f;
            f = &(&f * z) + c;
        }
        (f, d)
    }

    /// `sum |c_k| |z|^k`, a scale for rounding-error bounds.
    pub fn abs_eval_f64(&self, z: &Complex) -> f64 {
        let a = z.abs_f64();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * a + c.abs_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn sqrt_squares_back() {
        let p = 128;
        for (a, b) in [
            (3.0, 4.0),
            (-3.0, 4.0),
            (-3.0, -4.0),
            (0.5, -0.25),
            (-2.0, 0.0),
        ] {
            let z = Complex::from_f64(a, b, p);
            let r = z.sqrt();
            assert!((&(&r * &r) - &z).abs_f64() < 1e-35);
            assert!(!r.re.is_negative());
        }
    }

    #[test]
    fn rational_conversion() {
        let z = Complex::from_rational(&rat(-7, 3), 200);
        let back = &z * &Complex::from_f64(3.0, 0.0, 200);
        assert!((&back + &Complex::from_f64(7.0, 0.0, 200)).abs_f64() < 1e-55);
        let big = BigInt::from(3u8).pow(200);
        let x = Complex::from_bigint(&big, 200);
        assert!((x.log2_abs() - 200.0 * 3f64.log2()).abs() < 1e-9);
    }

    #[test]
    fn horner_with_derivative() {
        let f = IntPoly::from_i64(&[1, -2, 0, 5]);
        let mp = MpPoly::from_int(&f, 100);
        let (v, d) = mp.eval_with_derivative(&Complex::from_f64(2.0, 0.0, 100));
        assert_eq!(v.to_c64(), (37.0, 0.0));
        assert_eq!(d.to_c64(), (58.0, 0.0));
    }
}
