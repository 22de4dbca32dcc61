use super::intpoly::IntPoly;
use super::unipoly::UniPoly;
use super::{ArithError, Rational};
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

const TRIAL_BOUND: u64 = 1 << 20;

/// Writes `n = core * root^2` with `core` squarefree.
pub fn squarefree_integer(n: &BigUint) -> Result<(BigUint, BigUint), ArithError> {
    let mut rest = n.clone();
    let mut core = BigUint::one();
    let mut root = BigUint::one();
    let mut d = 2u64;
    while d < TRIAL_BOUND {
        let dd = BigUint::from(d);
        if &dd * &dd > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &dd).is_zero() {
            rest /= &dd;
            e += 1;
        }
        if e > 0 {
            root *= num_traits::pow(dd.clone(), (e / 2) as usize);
            if e % 2 == 1 {
                core *= &dd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Ok((core, root));
    }
    let bound = BigUint::from(TRIAL_BOUND);
    if rest < &bound * &bound {
        // no factor below its square root: prime
        return Ok((core * rest, root));
    }
    let s = rest.sqrt();
    if &s * &s == rest {
        return Ok((core, root * s));
    }
    if rest < num_traits::pow(bound, 3) {
        // at most two prime factors above the trial bound, not a square: squarefree
        return Ok((core * rest, root));
    }
    Err(ArithError::UnfactorableContent(n.to_string()))
}

/// Splits a nonzero rational `c` as `sign * core * q^2` with `core` a positive
/// squarefree integer. Returns `(sign * core, q)`.
pub fn squarefree_rational(c: &Rational) -> Result<(BigInt, Rational), ArithError> {
    if c.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let prod = (c.numer() * c.denom()).abs().to_biguint().unwrap();
    let (core, root) = squarefree_integer(&prod)?;
    let sign = if c.is_negative() {
        Sign::Minus
    } else {
        Sign::Plus
    };
    let q = Rational::new(BigInt::from_biguint(Sign::Plus, root), c.denom().clone());
    Ok((BigInt::from_biguint(sign, core), q))
}

/// Decomposes `f = core * cofactor^2` exactly.
///
/// `core` has integer coefficients, is squarefree, has squarefree (signed)
/// content and a primitive part with positive leading coefficient. This is the
/// canonical representative of the square class of `f` in `Q(x)*`.
pub fn squarefree_part(f: &UniPoly) -> Result<(UniPoly, UniPoly), ArithError> {
    if f.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let (c, prim) = f.to_primitive();
    let factors = prim.squarefree_decomposition();
    let mut core = IntPoly::one();
    let mut cof = IntPoly::one();
    for (i, fi) in factors.iter().enumerate() {
        let mult = i + 1;
        if mult % 2 == 1 {
            core = &core * fi;
        }
        if mult >= 2 {
            cof = &cof * &fi.pow((mult / 2) as u32);
        }
    }
    let (k, q) = squarefree_rational(&c)?;
    let core = UniPoly::from_int_poly(&core.scale(&k));
    let cof = UniPoly::from_int_poly(&cof).scale(&q);
    Ok((core, cof))
}

/// True when `f` is squarefree as a polynomial (ignoring its constant content).
pub fn is_squarefree(f: &UniPoly) -> bool {
    if f.is_constant() {
        return !f.is_zero();
    }
    let (_, p) = f.to_primitive();
    p.gcd(&p.derivative()).degree() == Some(0)
}
