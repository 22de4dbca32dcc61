use super::tower::TowerPresentation;
use super::FieldError;
use crate::arith::{RatFunc, Rational};
use std::fmt;
use std::sync::Arc;

/// Element of a tower, as coordinates over the monomial basis.
#[derive(Clone, Debug)]
pub struct FieldElement {
    tower: Arc<TowerPresentation>,
    coords: Vec<RatFunc>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.tower, &other.tower) || self.tower == other.tower)
            && self.coords == other.coords
    }
}

fn check(a: &FieldElement, b: &FieldElement) -> Result<(), FieldError> {
    if Arc::ptr_eq(&a.tower, &b.tower) || a.tower == b.tower {
        Ok(())
    } else {
        Err(FieldError::TowerMismatch)
    }
}

impl FieldElement {
    pub fn new(tower: &Arc<TowerPresentation>, coords: Vec<RatFunc>) -> Result<Self, FieldError> {
        if coords.len() != tower.basis_len() {
            return Err(FieldError::Malformed("coordinate count".into()));
        }
        Ok(FieldElement {
            tower: tower.clone(),
            coords,
        })
    }

    pub fn zero(tower: &Arc<TowerPresentation>) -> Self {
        FieldElement {
            tower: tower.clone(),
            coords: vec![RatFunc::zero(); tower.basis_len()],
        }
    }

    pub fn one(tower: &Arc<TowerPresentation>) -> Self {
        Self::from_base(tower, RatFunc::one())
    }

    pub fn from_base(tower: &Arc<TowerPresentation>, c: RatFunc) -> Self {
        let mut e = Self::zero(tower);
        e.coords[0] = c;
        e
    }

    pub fn from_rational(tower: &Arc<TowerPresentation>, c: Rational) -> Self {
        Self::from_base(tower, RatFunc::constant(c))
    }

    /// The base variable as an element.
    pub fn variable(tower: &Arc<TowerPresentation>) -> Self {
        Self::from_base(tower, RatFunc::x())
    }

    /// The basis monomial with the given mask.
    pub fn monomial(tower: &Arc<TowerPresentation>, mask: usize) -> Self {
        let mut e = Self::zero(tower);
        e.coords[mask] = RatFunc::one();
        e
    }

    /// The `i`-th square-root generator.
    pub fn generator(tower: &Arc<TowerPresentation>, i: usize) -> Self {
        Self::monomial(tower, 1 << i)
    }

    pub fn tower(&self) -> &Arc<TowerPresentation> {
        &self.tower
    }

    pub fn coords(&self) -> &[RatFunc] {
        &self.coords
    }

    pub fn coord(&self, mask: usize) -> &RatFunc {
        &self.coords[mask]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// `Some(c)` when the element lies in the base field.
    pub fn as_base(&self) -> Option<&RatFunc> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        check(self, other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(FieldElement {
            tower: self.tower.clone(),
            coords,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        check(self, other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Ok(FieldElement {
            tower: self.tower.clone(),
            coords,
        })
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            tower: self.tower.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &RatFunc) -> Self {
        FieldElement {
            tower: self.tower.clone(),
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn scale_rational(&self, k: &Rational) -> Self {
        FieldElement {
            tower: self.tower.clone(),
            coords: self.coords.iter().map(|c| c.scale(k)).collect(),
        }
    }

    pub fn add_base(&self, k: &RatFunc) -> Self {
        let mut e = self.clone();
        e.coords[0] = &e.coords[0] + k;
        e
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        check(self, other)?;
        let n = self.coords.len();
        let mut acc: Vec<Option<RatFunc>> = vec![None; n];
        for a in 0..n {
            if self.coords[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if other.coords[b].is_zero() {
                    continue;
                }
                let mut term = &self.coords[a] * &other.coords[b];
                let shared = a & b;
                if shared != 0 {
                    term = &term * self.tower.mono_square(shared);
                }
                let slot = &mut acc[a ^ b];
                *slot = Some(match slot.take() {
                    Some(s) => &s + &term,
                    None => term,
                });
            }
        }
        let coords = acc.into_iter().map(|c| c.unwrap_or_default()).collect();
        Ok(FieldElement {
            tower: self.tower.clone(),
            coords,
        })
    }

    pub fn square(&self) -> Self {
        self.mul(self).expect("same tower")
    }

    /// Galois conjugate flipping the signs of the generators in `sigma`.
    pub fn conjugate(&self, sigma: usize) -> Self {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(b, c)| {
                if (b & sigma).count_ones() % 2 == 1 {
                    -c
                } else {
                    c.clone()
                }
            })
            .collect();
        FieldElement {
            tower: self.tower.clone(),
            coords,
        }
    }

    /// Product of all nontrivial conjugates.
    fn adjugate(&self) -> Self {
        let mut p = FieldElement::one(&self.tower);
        for sigma in 1..self.coords.len() {
            p = p.mul(&self.conjugate(sigma)).expect("same tower");
        }
        p
    }

    /// Norm down to the base field.
    pub fn norm(&self) -> RatFunc {
        if self.coords.len() == 1 {
            return self.coords[0].clone();
        }
        // two-step norm through the intermediate field
        let n = self.coords.len();
        let top = n >> 1;
        let rel = self.mul(&self.conjugate(top)).expect("same tower");
        if n == 2 {
            return rel.coords[0].clone();
        }
        let rel2 = rel.mul(&rel.conjugate(1)).expect("same tower");
        rel2.coords[0].clone()
    }

    pub fn invert(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroDivisor);
        }
        if let Some(c) = self.as_base() {
            return Ok(Self::from_base(&self.tower, c.recip()));
        }
        let adj = self.adjugate();
        let n = self.mul(&adj)?;
        let nb = n.coords[0].clone();
        if nb.is_zero() {
            return Err(FieldError::ZeroDivisor);
        }
        Ok(adj.scale(&nb.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        self.mul(&other.invert()?)
    }

    pub fn pow(&self, k: i32) -> Result<Self, FieldError> {
        let base = if k < 0 { self.invert()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut result = FieldElement::one(&self.tower);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.square();
            }
        }
        Ok(result)
    }

    /// The derivation extending `d/dx` with `D(r_i) = f_i' / (2 f_i) r_i`.
    pub fn differentiate(&self) -> Self {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(b, c)| {
                if c.is_zero() {
                    return RatFunc::zero();
                }
                let d = c.derivative();
                if b == 0 {
                    d
                } else {
                    &d + &(c * self.tower.log_derivative(b))
                }
            })
            .collect();
        FieldElement {
            tower: self.tower.clone(),
            coords,
        }
    }

    /// Minimal polynomial over the base field, as the product over the
    /// distinct Galois conjugates.
    pub fn minimal_polynomial(&self) -> MinimalPolynomial {
        let mut conj: Vec<FieldElement> = Vec::new();
        for sigma in 0..self.coords.len() {
            let c = self.conjugate(sigma);
            if !conj.contains(&c) {
                conj.push(c);
            }
        }
        // coefficients as field elements, lowest degree first
        let mut poly = vec![FieldElement::one(&self.tower)];
        for c in &conj {
            let mut next = vec![FieldElement::zero(&self.tower); poly.len() + 1];
            for (i, p) in poly.iter().enumerate() {
                next[i + 1] = next[i + 1].add(p).expect("same tower");
                next[i] = next[i]
                    .sub(&p.mul(c).expect("same tower"))
                    .expect("same tower");
            }
            poly = next;
        }
        let coeffs = poly
            .into_iter()
            .map(|e| {
                debug_assert!(
                    e.as_base().is_some(),
                    "symmetric functions are Galois invariant"
                );
                e.coords[0].clone()
            })
            .collect();
        MinimalPolynomial { coeffs }
    }

    /// Image under a homomorphism given by a map on base coefficients and
    /// the images of the generators, all in `target`.
    pub fn substitute(
        &self,
        target: &Arc<TowerPresentation>,
        base_map: &dyn Fn(&RatFunc) -> Result<FieldElement, FieldError>,
        gen_images: &[FieldElement],
    ) -> Result<FieldElement, FieldError> {
        if gen_images.len() != self.tower.depth() {
            return Err(FieldError::Malformed("one image per generator".into()));
        }
        let mut acc = FieldElement::zero(target);
        for (mask, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = base_map(c)?;
            for (i, g) in gen_images.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    term = term.mul(g)?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Re-expresses the element in a tower that extends this one by
    /// appending radicands.
    pub fn lift(&self, target: &Arc<TowerPresentation>) -> Result<FieldElement, FieldError> {
        let d = self.tower.depth();
        if target.depth() < d
            || target.radicands()[..d] != *self.tower.radicands()
            || target.var() != self.tower.var()
        {
            return Err(FieldError::TowerMismatch);
        }
        let mut coords = self.coords.clone();
        coords.resize(target.basis_len(), RatFunc::zero());
        Ok(FieldElement {
            tower: target.clone(),
            coords,
        })
    }

    /// Moves the element to an equal tower presentation (same radicands, other names).
    pub fn retag(&self, target: &Arc<TowerPresentation>) -> Result<FieldElement, FieldError> {
        if target.radicands() != self.tower.radicands() {
            return Err(FieldError::TowerMismatch);
        }
        Ok(FieldElement {
            tower: target.clone(),
            coords: self.coords.clone(),
        })
    }

    /// Expression text in the catalog syntax.
    pub fn to_expr(&self) -> String {
        let var = self.tower.var();
        let mut parts = Vec::new();
        for (mask, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if mask == 0 {
                parts.push(format!("({})", c.to_expr(var)));
            } else {
                parts.push(format!(
                    "({})*{}",
                    c.to_expr(var),
                    self.tower.monomial_name(mask)
                ));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

/// Monic polynomial in `T` with coefficients in the base field, lowest first.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalPolynomial {
    pub coeffs: Vec<RatFunc>,
}

impl MinimalPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluates at a field element by Horner's rule.
    pub fn eval(&self, a: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(a.tower());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a).expect("same tower").add_base(c);
        }
        acc
    }

    /// Primitive integral form: multiplies through by the lcm of the
    /// coefficient denominators and returns the polynomial coefficients.
    pub fn cleared(&self) -> Vec<crate::arith::UniPoly> {
        let mut l = crate::arith::UniPoly::one();
        for c in &self.coeffs {
            let g = l.gcd(c.den());
            l = (&l * c.den()).div_exact(&g).expect("gcd divides");
        }
        self.coeffs
            .iter()
            .map(|c| {
                let q = l.div_exact(c.den()).expect("lcm");
                &q * c.num()
            })
            .collect()
    }

    /// Degree in the base variable of the primitive integral form.
    pub fn base_degree(&self) -> usize {
        self.cleared()
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0)
    }
}
