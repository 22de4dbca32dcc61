use super::intpoly::IntPoly;
use super::unipoly::UniPoly;
use super::{ArithError, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Which of the two indeterminates of a [`BiPoly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    /// The variable of the coefficient polynomials (`x`).
    Inner,
    /// The outer variable (`y`).
    Outer,
}

/// Polynomial in two variables stored as `sum_k c_k(x) y^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![UniPoly::constant(c)])
    }

    pub fn from_inner(p: UniPoly) -> Self {
        Self::new(vec![p])
    }

    pub fn x() -> Self {
        Self::from_inner(UniPoly::x())
    }

    pub fn y() -> Self {
        Self::new(vec![UniPoly::zero(), UniPoly::one()])
    }

    /// Builds from `(i, j, c)` triples meaning `c x^i y^j`.
    pub fn from_terms(terms: &[(usize, usize, i64)]) -> Self {
        let mut out = BiPoly::zero();
        for &(i, j, c) in terms {
            let mut v = vec![UniPoly::zero(); j];
            v.push(UniPoly::monomial(
                Rational::from_integer(BigInt::from(c)),
                i,
            ));
            out = &out + &BiPoly::new(v);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> UniPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self, v: Var) -> Option<usize> {
        match v {
            Var::Outer => self.coeffs.len().checked_sub(1),
            Var::Inner => self.coeffs.iter().filter_map(|c| c.degree()).max(),
        }
    }

    /// Total degree.
    pub fn total_degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(j, c)| c.degree().map(|i| i + j))
            .max()
    }

    /// Coefficient of `x^i y^j`.
    pub fn term(&self, i: usize, j: usize) -> Rational {
        self.coeffs
            .get(j)
            .map(|c| c.coeff(i))
            .unwrap_or_else(Rational::zero)
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap(&self) -> BiPoly {
        let n = self.degree(Var::Inner).map_or(0, |d| d + 1);
        let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::zero(); self.coeffs.len()]; n];
        for (j, c) in self.coeffs.iter().enumerate() {
            for (i, a) in c.coeffs().iter().enumerate() {
                rows[i][j] = a.clone();
            }
        }
        BiPoly::new(rows.into_iter().map(UniPoly::new).collect())
    }

    pub fn derivative(&self, v: Var) -> BiPoly {
        match v {
            Var::Inner => BiPoly::new(self.coeffs.iter().map(|c| c.derivative()).collect()),
            Var::Outer => BiPoly::new(
                self.coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, c)| c.scale(&Rational::from_integer(BigInt::from(k))))
                    .collect(),
            ),
        }
    }

    pub fn scale(&self, k: &Rational) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(|c| c.scale(k)).collect())
    }

    pub fn pow(&self, k: u32) -> BiPoly {
        let mut r = BiPoly::constant(Rational::one());
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Evaluates the outer variable, leaving a polynomial in `x`.
    pub fn eval_outer(&self, y: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * y) + c;
        }
        acc
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * y + c.eval(x);
        }
        acc
    }

    /// Substitutes `x := a, y := b` with bivariate polynomials.
    pub fn substitute(&self, a: &BiPoly, b: &BiPoly) -> BiPoly {
        let mut acc = BiPoly::zero();
        for c in self.coeffs.iter().rev() {
            let mut ca = BiPoly::zero();
            for k in c.coeffs().iter().rev() {
                ca = &(&ca * a) + &BiPoly::constant(k.clone());
            }
            acc = &(&acc * b) + &ca;
        }
        acc
    }

    /// Pseudo-remainder with respect to the outer variable.
    pub fn pseudo_rem_outer(&self, d: &BiPoly) -> BiPoly {
        let dd = d.degree(Var::Outer).expect("pseudo remainder by zero");
        let lc = d.coeffs[dd].clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree(Var::Outer) {
            if rd < dd {
                break;
            }
            let t = r.coeffs[rd].clone();
            let mut shifted = vec![UniPoly::zero(); rd - dd];
            shifted.extend(d.coeffs.iter().map(|c| c * &t));
            let scaled = BiPoly::new(r.coeffs.iter().map(|c| c * &lc).collect());
            r = &scaled - &BiPoly::new(shifted);
        }
        r
    }

    /// Integer-coefficient copy of `self` up to a positive rational factor.
    pub fn to_integer(&self) -> BiPoly {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            let (d, _) = c.clear_denominators();
            l = num_integer::Integer::lcm(&l, &d);
        }
        self.scale(&Rational::from_integer(l))
    }

    /// Renders with the given variable names in the catalog expression syntax.
    pub fn to_expr(&self, xv: &str, yv: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let inner = c.to_expr(xv);
            let part = match j {
                0 => format!("({inner})"),
                1 => format!("({inner})*{yv}"),
                _ => format!("({inner})*{yv}^{j}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![UniPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        BiPoly::new(out)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Resultant with respect to the chosen variable, as a polynomial in the other.
///
/// Computed as the determinant of the Sylvester matrix by fraction-free
/// (Bareiss) elimination over `Z[x]`.
pub fn resultant(a: &BiPoly, b: &BiPoly, eliminate: Var) -> Result<UniPoly, ArithError> {
    let (a, b) = match eliminate {
        Var::Outer => (a.clone(), b.clone()),
        Var::Inner => (a.swap(), b.swap()),
    };
    let m = a.degree(Var::Outer).unwrap_or(0);
    let n = b.degree(Var::Outer).unwrap_or(0);
    if a.is_zero() || b.is_zero() {
        return Ok(UniPoly::zero());
    }
    if m == 0 && n == 0 {
        return Err(ArithError::Degenerate(
            "both polynomials are constant in the eliminated variable",
        ));
    }
    let ints = |p: &BiPoly| -> (Rational, Vec<IntPoly>) {
        let mut l = BigInt::one();
        for c in &p.coeffs {
            l = num_integer::Integer::lcm(&l, &c.clear_denominators().0);
        }
        let lr = Rational::from_integer(l.clone());
        let v = p
            .coeffs
            .iter()
            .map(|c| c.scale(&lr).clear_denominators().1)
            .collect();
        (lr, v)
    };
    let (la, ca) = ints(&a);
    let (lb, cb) = ints(&b);
    let size = m + n;
    let mut mat = vec![vec![IntPoly::zero(); size]; size];
    for r in 0..n {
        for k in 0..=m {
            mat[r][r + m - k] = ca[k].clone();
        }
    }
    for r in 0..m {
        for k in 0..=n {
            mat[n + r][r + n - k] = cb[k].clone();
        }
    }
    let det = bareiss_det(mat);
    // Res(la a, lb b) = la^n lb^m Res(a, b)
    let scale = num_traits::pow(la, n) * num_traits::pow(lb, m);
    Ok(UniPoly::from_int_poly(&det).scale(&scale.recip()))
}

fn bareiss_det(mut m: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut sign = false;
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return IntPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = IntPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sylvester_small() {
        // s - T and s^2 - T with s outer, T inner
        let a = BiPoly::from_terms(&[(0, 1, 1), (1, 0, -1)]);
        let b = BiPoly::from_terms(&[(0, 2, 1), (1, 0, -1)]);
        let r = resultant(&a, &b, Var::Outer).unwrap();
        assert_eq!(r, UniPoly::from_i64(&[0, -1, 1]));
    }

    #[test]
    fn common_root_vanishes() {
        let a = BiPoly::from_terms(&[(0, 1, 1), (0, 0, -3)]);
        let r = resultant(&a, &a, Var::Outer).unwrap();
        assert!(r.is_zero());
    }
}
