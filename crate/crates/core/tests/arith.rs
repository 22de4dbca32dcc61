use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use pvi_algebra::arith::{
    int, is_squarefree, rat, resultant, squarefree_part, BiPoly, RatFunc, Rational, UniPoly, Var,
};

fn p(c: &[i64]) -> UniPoly {
    UniPoly::from_i64(c)
}

/// Plain Euclid on coefficient vectors, lowest degree first; returns the monic gcd.
fn euclid_oracle(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let mut r = a.clone();
        while r.len() >= b.len() {
            let q = r[r.len() - 1].clone() / b[b.len() - 1].clone();
            let shift = r.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                r[i + shift] = r[i + shift].clone() - q.clone() * c.clone();
            }
            r = trim(r);
            if r.is_empty() {
                break;
            }
        }
        a = b;
        b = r;
    }
    let lc = a.last().cloned().unwrap_or_else(Rational::one);
    a.into_iter().map(|c| c / lc.clone()).collect()
}

/// Determinant by cofactor expansion over polynomials.
fn det_oracle(m: &[Vec<UniPoly>]) -> UniPoly {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = UniPoly::zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<UniPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, c)| c.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &det_oracle(&minor);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

#[test]
fn gcd_shared_linear_factor() {
    assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
}

#[test]
fn gcd_with_unit() {
    assert_eq!(UniPoly::x().gcd(&UniPoly::one()), UniPoly::one());
}

#[test]
fn gcd_of_products_matches_euclid() {
    let a = &p(&[-1, 9]) * &p(&[-1, 1]);
    let b = &p(&[-1, 1]) * &p(&[1, 1]);
    let g = a.gcd(&b);
    assert_eq!(g.coeffs(), euclid_oracle(a.coeffs(), b.coeffs()).as_slice());
    assert_eq!(g, p(&[-1, 1]));
}

#[test]
fn squarefree_visible_square() {
    let f = &(&UniPoly::x() * &UniPoly::x()) * &p(&[-1, 1]);
    let (core, cof) = squarefree_part(&f).unwrap();
    assert_eq!(core.monic(), p(&[-1, 1]));
    assert_eq!(cof.monic(), UniPoly::x());
    let back = &core * &(&cof * &cof);
    let ratio = back.lc() / f.lc();
    assert_eq!(back, f.scale(&ratio));
}

#[test]
fn squarefree_identity_on_squarefree_input() {
    let f = p(&[2, 0, 1]);
    let (core, cof) = squarefree_part(&f).unwrap();
    assert_eq!(core, f);
    assert!(cof.is_one());
}

#[test]
fn squarefree_scaled_square() {
    // 4 (s-1)^2 (s^2+1)
    let s1 = p(&[-1, 1]);
    let f = (&(&s1 * &s1) * &p(&[1, 0, 1])).scale(&int(4));
    let (core, cof) = squarefree_part(&f).unwrap();
    assert_eq!(core, p(&[1, 0, 1]));
    assert_eq!(&core * &(&cof * &cof), f);
    assert_eq!(cof.monic(), s1);
}

#[test]
fn squarefree_rejects_zero() {
    assert!(squarefree_part(&UniPoly::zero()).is_err());
}

fn sylvester(a: &BiPoly, b: &BiPoly) -> Vec<Vec<UniPoly>> {
    let m = a.degree(Var::Outer).unwrap();
    let n = b.degree(Var::Outer).unwrap();
    let mut rows = vec![];
    for r in 0..n {
        let mut row = vec![UniPoly::zero(); m + n];
        for k in 0..=m {
            row[r + m - k] = a.coeff(k);
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![UniPoly::zero(); m + n];
        for k in 0..=n {
            row[r + n - k] = b.coeff(k);
        }
        rows.push(row);
    }
    rows
}

#[test]
fn resultant_against_sylvester_by_hand() {
    // s - T and s^2 - T with T the inner variable
    let t = BiPoly::x();
    let s = BiPoly::y();
    let a = &s - &t;
    let b = &(&s * &s) - &t;
    let r = resultant(&a, &b, Var::Outer).unwrap();
    assert_eq!(r, det_oracle(&sylvester(&a, &b)));
    let expected = p(&[0, -1, 1]);
    assert!(r == expected || r == -&expected);
}

#[test]
fn resultant_of_common_root_is_zero() {
    let c = BiPoly::x();
    let a = &BiPoly::y() - &c;
    assert!(resultant(&a, &a, Var::Outer).unwrap().is_zero());
}

#[test]
fn resultant_linear_times_constant() {
    let r = resultant(&BiPoly::y(), &BiPoly::x(), Var::Outer).unwrap();
    assert_eq!(r, UniPoly::x());
}

#[test]
fn resultant_both_constant_is_degenerate() {
    assert!(resultant(&BiPoly::x(), &BiPoly::x(), Var::Outer).is_err());
}

fn small_poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-9i64..=9, 0..6).prop_map(|c| UniPoly::from_i64(&c))
}

fn nonzero_poly() -> impl Strategy<Value = UniPoly> {
    small_poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| rat(n, d))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (small_poly(), nonzero_poly()).prop_map(|(n, d)| RatFunc::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rational_ring_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!(a.denom() > &BigInt::zero());
    }

    #[test]
    fn unipoly_ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        let prod = &a * &b;
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!(prod.degree().unwrap(), a.degree().unwrap() + b.degree().unwrap());
        }
    }

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn ratfunc_normalization(a in ratfunc()) {
        prop_assert_eq!(a.normalized(), a.clone());
        prop_assert!(a.den().lc().is_one());
        prop_assert!(a.num().gcd(a.den()).is_one());
    }

    #[test]
    fn gcd_matches_euclid(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let (x, y) = (&a * &c, &b * &c);
        let g = x.gcd(&y);
        let oracle = euclid_oracle(x.coeffs(), y.coeffs());
        prop_assert_eq!(g.coeffs(), oracle.as_slice());
    }

    #[test]
    fn squarefree_round_trip(a in nonzero_poly(), b in nonzero_poly(), k in 1i64..=30) {
        let f = (&a * &(&b * &b)).scale(&int(k));
        let (core, cof) = squarefree_part(&f).unwrap();
        prop_assert!(is_squarefree(&core));
        prop_assert!(core.gcd(&core.derivative()).is_constant());
        let back = &core * &(&cof * &cof);
        // equal up to a nonzero rational square
        let ratio = f.lc() / back.lc();
        prop_assert_eq!(back.scale(&ratio), f);
        let (n, d) = (ratio.numer().clone(), ratio.denom().clone());
        let nd = n * d;
        prop_assert!(nd > BigInt::zero());
        let root = nd.sqrt();
        prop_assert_eq!(&root * &root, nd);
    }

    #[test]
    fn resultant_vanishes_iff_common_root(
        r in -6i64..=6, shift in 1i64..=5,
        a in nonzero_poly(), b in nonzero_poly(),
    ) {
        let lin = |c: i64| p(&[-c, 1]);
        let as_bi = |f: &UniPoly| BiPoly::new(f.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect());
        let (a, b) = (&a * &lin(r), &b * &lin(r));
        prop_assert!(resultant(&as_bi(&a), &as_bi(&b), Var::Outer).unwrap().is_zero());
        // distinct single roots
        let res = resultant(&as_bi(&lin(r)), &as_bi(&(&lin(r + shift) * &lin(r + 2 * shift))), Var::Outer).unwrap();
        prop_assert!(!res.is_zero());
        prop_assert_eq!(res, UniPoly::constant(int(2 * shift * shift)));
    }
}
