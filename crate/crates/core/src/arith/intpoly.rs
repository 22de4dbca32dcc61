//! Dense polynomials over the integers.
//!
//! This is the workhorse behind the rational types: gcds, exact division and
//! large products all run here on primitive integer representatives.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

/// Polynomial with integer coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

const KRONECKER_THRESHOLD: usize = 12;

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Exact division of every coefficient by `k`.
    pub fn div_scalar(&self, k: &BigInt) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / k).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Splits into `(c, p)` with `self = c * p`, `p` primitive with positive
    /// leading coefficient. The zero polynomial gives `(0, 0)`.
    pub fn primitive(&self) -> (BigInt, IntPoly) {
        if self.is_zero() {
            return (BigInt::zero(), Self::zero());
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        if c.is_one() {
            return (c, self.clone());
        }
        let p = self.div_scalar(&c);
        (c, p)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self(p(x))` by Horner's rule.
    pub fn compose(&self, p: &IntPoly) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * p) + &Self::constant(c.clone());
        }
        acc
    }

    /// Homogenized composition: `b^n * self(a/b)` with `n = deg self`.
    pub fn compose_fraction(&self, a: &IntPoly, b: &IntPoly) -> Self {
        let n = match self.degree() {
            Some(n) => n,
            None => return Self::zero(),
        };
        let mut apow = vec![Self::one()];
        for i in 1..=n {
            apow.push(&apow[i - 1] * a);
        }
        let mut acc = Self::zero();
        let mut bpow = Self::one();
        for k in (0..=n).rev() {
            if !self.coeffs[k].is_zero() {
                acc = &acc + &(&apow[k] * &bpow).scale(&self.coeffs[k]);
            }
            if k > 0 {
                bpow = &bpow * b;
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self` in `Z[x]`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.degree().unwrap();
        if n < dd {
            return None;
        }
        if dd == 0 {
            let k = &d.coeffs[0];
            if self.coeffs.iter().any(|c| !c.is_multiple_of(k)) {
                return None;
            }
            return Some(self.div_scalar(k));
        }
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    r[k + i] -= &qk * dc;
                }
            }
            q[k] = qk;
        }
        if r.iter().take(dd).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(q))
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let mut r = self.clone();
        let lc = d.lc();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let t = r.lc();
            r = &r.scale(&lc) - &d.scale(&t).shift(rd - dd);
        }
        r
    }

    /// Greatest common divisor: integer content gcd times the primitive gcd
    /// with positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive().1.scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive().1.scale(&self.content());
        }
        let (ca, a) = self.primitive();
        let (cb, b) = other.primitive();
        let c = ca.abs().gcd(&cb.abs());
        let g = primitive_gcd(&a, &b);
        g.scale(&c)
    }

    /// Squarefree decomposition of the primitive part: returns `[f1, f2, ...]`
    /// with `prim(self) = f1 f2^2 f3^3 ...`, each `fi` primitive and squarefree.
    pub fn squarefree_decomposition(&self) -> Vec<IntPoly> {
        let (_, a) = self.primitive();
        let mut out = Vec::new();
        if a.degree().unwrap_or(0) == 0 {
            return out;
        }
        let da = a.derivative().primitive().1;
        let mut b = primitive_gcd(&a, &da);
        let mut c = a.div_exact(&b).expect("gcd divides");
        while c.degree().unwrap_or(0) > 0 {
            let y = primitive_gcd(&b, &c);
            let z = c.div_exact(&y).expect("gcd divides");
            out.push(z.primitive().1);
            b = b.div_exact(&y).expect("gcd divides");
            c = y;
        }
        while out.last().is_some_and(|p| p.degree() == Some(0)) {
            out.pop();
        }
        out
    }
}

fn mul_schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Packs signed coefficients into one integer `sum c_i 2^(bits i)`.
fn kronecker_pack(c: &[BigInt], words: usize) -> BigInt {
    let mut pos = vec![0u32; c.len() * words + 1];
    let mut neg = vec![0u32; c.len() * words + 1];
    let mut has_neg = false;
    for (i, x) in c.iter().enumerate() {
        let (sign, digits) = x.to_u32_digits();
        let target = if sign == Sign::Minus {
            has_neg = true;
            &mut neg
        } else {
            &mut pos
        };
        target[i * words..i * words + digits.len()].copy_from_slice(&digits);
    }
    let p = BigInt::from_biguint(Sign::Plus, BigUint::new(pos));
    if has_neg {
        p - BigInt::from_biguint(Sign::Plus, BigUint::new(neg))
    } else {
        p
    }
}

fn kronecker_unpack(x: &BigInt, words: usize, n: usize) -> Vec<BigInt> {
    let (sign, limbs) = x.to_u32_digits();
    let bits = 32 * words as u64;
    let full = BigUint::one() << bits;
    let half = BigUint::one() << (bits - 1);
    let mut out = Vec::with_capacity(n);
    let mut carry = false;
    for i in 0..n {
        let lo = (i * words).min(limbs.len());
        let hi = ((i + 1) * words).min(limbs.len());
        let mut v = BigUint::from_slice(&limbs[lo..hi]);
        if carry {
            v += 1u32;
        }
        let c = if v >= half {
            carry = true;
            -BigInt::from_biguint(Sign::Plus, &full - v)
        } else {
            carry = false;
            BigInt::from_biguint(Sign::Plus, v)
        };
        out.push(if sign == Sign::Minus { -c } else { c });
    }
    out
}

fn mul_kronecker(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let ba = a.iter().map(|c| c.bits()).max().unwrap_or(0);
    let bb = b.iter().map(|c| c.bits()).max().unwrap_or(0);
    let len = a.len().min(b.len()) as u64;
    let need = ba + bb + (64 - len.leading_zeros() as u64) + 2;
    let words = need.div_ceil(32) as usize;
    let pa = kronecker_pack(a, words);
    let pb = kronecker_pack(b, words);
    kronecker_unpack(&(pa * pb), words, a.len() + b.len() - 1)
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let c = if self.coeffs.len().min(rhs.coeffs.len()) >= KRONECKER_THRESHOLD {
            mul_kronecker(&self.coeffs, &rhs.coeffs)
        } else {
            mul_schoolbook(&self.coeffs, &rhs.coeffs)
        };
        IntPoly::new(c)
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut c = long.coeffs.clone();
        for (i, x) in short.coeffs.iter().enumerate() {
            c[i] += x;
        }
        IntPoly::new(c)
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut c = self.coeffs.clone();
        if c.len() < rhs.coeffs.len() {
            c.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (i, x) in rhs.coeffs.iter().enumerate() {
            c[i] -= x;
        }
        IntPoly::new(c)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

// ---- modular gcd ----

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const PRIME_COUNT: usize = 4096;

/// Large word-size primes used for modular algorithms, in decreasing order.
pub(crate) fn modular_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n = (1u64 << 62) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn reduce_mod(a: &IntPoly, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = a
        .coeffs
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv = pow_mod(b[db], p - 2, p);
    while a.len() > db {
        let top = *a.last().unwrap();
        let k = a.len() - 1 - db;
        if top != 0 {
            let q = mul_mod(top, inv, p);
            for (i, bc) in b.iter().enumerate() {
                let t = mul_mod(q, *bc, p);
                a[k + i] = (a[k + i] + p - t) % p;
            }
        }
        a.pop();
    }
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        rem_mod(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    let inv = pow_mod(*a.last().unwrap(), p - 2, p);
    a.iter().map(|&c| mul_mod(c, inv, p)).collect()
}

/// Gcd of two primitive polynomials of positive degree, via CRT over word primes.
fn primitive_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive().1;
    }
    if b.is_zero() {
        return a.primitive().1;
    }
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return IntPoly::one();
    }
    if a == b {
        return a.primitive().1;
    }
    let lca = a.lc();
    let lcb = b.lc();
    let lcg = lca.gcd(&lcb);
    let mut deg_cur = usize::MAX;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut prev: Option<IntPoly> = None;
    for &p in modular_primes() {
        let pb = BigInt::from(p);
        if lca.is_multiple_of(&pb) || lcb.is_multiple_of(&pb) {
            continue;
        }
        let g = gcd_mod(reduce_mod(a, p), reduce_mod(b, p), p);
        let dg = g.len() - 1;
        if dg == 0 {
            return IntPoly::one();
        }
        if dg > deg_cur {
            continue;
        }
        let scale = lcg.mod_floor(&pb).to_u64().unwrap();
        let g: Vec<u64> = g.iter().map(|&c| mul_mod(c, scale, p)).collect();
        if dg < deg_cur {
            deg_cur = dg;
            modulus = pb;
            acc = g.iter().map(|&c| BigInt::from(c)).collect();
            prev = None;
        } else {
            let minv = BigInt::from(pow_mod((&modulus % &pb).to_u64().unwrap(), p - 2, p));
            for (x, &r) in acc.iter_mut().zip(g.iter()) {
                let diff = (BigInt::from(r) - &*x).mod_floor(&pb);
                let t = (diff * &minv).mod_floor(&pb);
                *x += &modulus * t;
            }
            modulus *= &pb;
        }
        let half = &modulus >> 1;
        let cand = IntPoly::new(
            acc.iter()
                .map(|c| if c > &half { c - &modulus } else { c.clone() })
                .collect(),
        );
        if prev.as_ref() == Some(&cand) {
            let g = cand.primitive().1;
            if a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                return g;
            }
        }
        prev = Some(cand);
    }
    prs_gcd(a, b)
}

/// Primitive polynomial remainder sequence; the slow fallback.
fn prs_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (mut r0, mut r1) = if a.degree() >= b.degree() {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    while !r1.is_zero() {
        let r = r0.pseudo_rem(&r1).primitive().1;
        r0 = r1;
        r1 = r;
    }
    r0.primitive().1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn kronecker_matches_schoolbook() {
        let a: Vec<BigInt> = (0..40)
            .map(|i| BigInt::from((i * 7919 % 101) - 50) << (i % 70))
            .collect();
        let b: Vec<BigInt> = (0..33)
            .map(|i| BigInt::from((i * 104729 % 97) - 48) << (i % 13))
            .collect();
        assert_eq!(mul_kronecker(&a, &b), mul_schoolbook(&a, &b));
    }

    #[test]
    fn gcd_shared_factor() {
        let a = p(&[9, -10, 1]) * p(&[5, 1]);
        let b = p(&[-1, 0, 1]) * p(&[5, 1]).pow(2);
        assert_eq!(a.gcd(&b), p(&[-5, 4, 1]));
    }

    #[test]
    fn squarefree_yun() {
        let f = p(&[-1, 1]).pow(3) * p(&[1, 0, 1]).pow(2) * p(&[3, 2]);
        let d = f.squarefree_decomposition();
        assert_eq!(d, vec![p(&[3, 2]), p(&[1, 0, 1]), p(&[-1, 1])]);
    }

    #[test]
    fn exact_division() {
        let f = p(&[1, 2, 1]);
        assert_eq!(f.div_exact(&p(&[1, 1])), Some(p(&[1, 1])));
        assert_eq!(f.div_exact(&p(&[2, 1])), None);
    }
}
