//! Exact arithmetic over Q: integers, polynomials, rational functions.

pub mod bipoly;
pub mod intpoly;
pub mod ratfunc;
pub mod squarefree;
pub mod unipoly;

pub use bipoly::{resultant, BiPoly, Var};
pub use intpoly::IntPoly;
pub use ratfunc::RatFunc;
pub use squarefree::{is_squarefree, squarefree_part};
pub use unipoly::UniPoly;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

/// Reduced fraction with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("zero input")]
    ZeroInput,
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("could not decide the square class of the integer {0}")]
    UnfactorableContent(String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` or `p` when the denominator is one.
pub fn rat_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}
