//! Tower elements with polynomial coordinates and no denominators.
//!
//! These carry the residual computation: every quantity is kept as an integer
//! polynomial vector over an explicitly tracked denominator, so no gcds are
//! ever taken.

use crate::arith::{IntPoly, RatFunc, UniPoly};
use crate::field::{FieldElement, TowerPresentation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct PolyVec(pub Vec<IntPoly>);

/// Integer data of a tower needed for products and the derivation.
pub struct TowerTable {
    /// `m_mask^2` as integer polynomials.
    pub sq: Vec<IntPoly>,
    /// Scale `lambda` of the derivation `delta = lambda * D`.
    pub lambda: IntPoly,
    /// `lambda * D(m)/m` for each monomial.
    pub h: Vec<IntPoly>,
}

fn int_of(p: &UniPoly) -> IntPoly {
    let (d, q) = p.clear_denominators();
    assert!(d.is_one(), "radicands have integer coefficients");
    q
}

impl TowerTable {
    pub fn new(tower: &TowerPresentation) -> Self {
        let f: Vec<IntPoly> = tower.radicands().iter().map(int_of).collect();
        let n = tower.basis_len();
        let sq = (0..n).map(|m| int_of(tower.mono_square(m).num())).collect();
        let lambda = if f.is_empty() {
            IntPoly::one()
        } else {
            f.iter()
                .fold(IntPoly::constant(BigInt::from(2)), |acc, g| &acc * g)
        };
        let h = (0..n)
            .map(|mask| {
                let mut acc = IntPoly::zero();
                for i in 0..f.len() {
                    if mask >> i & 1 == 1 {
                        let mut term = f[i].derivative();
                        for (j, g) in f.iter().enumerate() {
                            if j != i {
                                term = &term * g;
                            }
                        }
                        acc = &acc + &term;
                    }
                }
                acc
            })
            .collect();
        TowerTable { sq, lambda, h }
    }
}

impl PolyVec {
    pub fn zero(n: usize) -> Self {
        PolyVec(vec![IntPoly::zero(); n])
    }

    pub fn scalar(p: IntPoly, n: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[0] = p;
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        PolyVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        PolyVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn add_scalar(&self, p: &IntPoly) -> Self {
        let mut v = self.clone();
        v.0[0] = &v.0[0] + p;
        v
    }

    pub fn sub_scalar(&self, p: &IntPoly) -> Self {
        let mut v = self.clone();
        v.0[0] = &v.0[0] - p;
        v
    }

    pub fn scale(&self, p: &IntPoly) -> Self {
        PolyVec(self.0.iter().map(|c| c * p).collect())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        PolyVec(self.0.iter().map(|c| c.scale(&k)).collect())
    }

    pub fn mul(&self, o: &Self, t: &TowerTable) -> Self {
        let n = self.0.len();
        // group products by the shared mask so each radicand product is applied once
        let mut by_shared: Vec<Vec<IntPoly>> = vec![vec![IntPoly::zero(); n]; n];
        for a in 0..n {
            if self.0[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if o.0[b].is_zero() {
                    continue;
                }
                let p = &self.0[a] * &o.0[b];
                let slot = &mut by_shared[a & b][a ^ b];
                *slot = &*slot + &p;
            }
        }
        let mut out = vec![IntPoly::zero(); n];
        for (shared, row) in by_shared.into_iter().enumerate() {
            for (target, p) in row.into_iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let p = if shared == 0 { p } else { &p * &t.sq[shared] };
                out[target] = &out[target] + &p;
            }
        }
        PolyVec(out)
    }

    pub fn square(&self, t: &TowerTable) -> Self {
        self.mul(self, t)
    }

    /// `delta = lambda * D` applied coordinatewise.
    pub fn delta(&self, t: &TowerTable) -> Self {
        PolyVec(
            self.0
                .iter()
                .enumerate()
                .map(|(mask, c)| {
                    let d = &c.derivative() * &t.lambda;
                    if mask == 0 {
                        d
                    } else {
                        &d + &(c * &t.h[mask])
                    }
                })
                .collect(),
        )
    }

    pub fn max_degree(&self) -> usize {
        self.0.iter().filter_map(|c| c.degree()).max().unwrap_or(0)
    }

    pub fn max_bits(&self) -> u64 {
        self.0.iter().map(|c| c.max_bits()).max().unwrap_or(0)
    }

    /// Divides out the common integer content of the vector and `den`.
    pub fn reduce_content(&mut self, den: &mut IntPoly) {
        let mut g = den.content();
        for c in &self.0 {
            g = g.gcd(&c.content());
        }
        if !g.is_zero() && !g.is_one() {
            for c in self.0.iter_mut() {
                *c = c.div_scalar(&g);
            }
            *den = den.div_scalar(&g);
        }
    }

    pub fn to_field(&self, tower: &std::sync::Arc<TowerPresentation>) -> FieldElement {
        let coords = self
            .0
            .iter()
            .map(|c| RatFunc::from_poly(UniPoly::from_int_poly(c)))
            .collect();
        FieldElement::new(tower, coords).expect("coordinate count matches")
    }
}

/// Writes `a = N / E` with `N` a polynomial vector and `E` an integer polynomial.
pub fn clear_denominators(a: &FieldElement) -> (PolyVec, IntPoly) {
    let mut l = UniPoly::one();
    for c in a.coords() {
        let g = l.gcd(c.den());
        l = (&l * c.den()).div_exact(&g).expect("gcd divides");
    }
    let scaled: Vec<UniPoly> = a
        .coords()
        .iter()
        .map(|c| &l.div_exact(c.den()).expect("lcm") * c.num())
        .collect();
    let mut m = l.clear_denominators().0;
    for p in &scaled {
        m = m.lcm(&p.clear_denominators().0);
    }
    let mr = crate::arith::Rational::from_integer(m);
    let num = PolyVec(
        scaled
            .iter()
            .map(|p| p.scale(&mr).clear_denominators().1)
            .collect(),
    );
    let mut den = l.scale(&mr).clear_denominators().1;
    let mut num = num;
    num.reduce_content(&mut den);
    (num, den)
}
