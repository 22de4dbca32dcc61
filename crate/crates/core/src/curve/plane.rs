//! Singular points of projective plane curves and their double-point types.

use super::mp::Complex;
use super::roots::isolate_roots;
use super::CurveError;
use crate::arith::{resultant, BiPoly, IntPoly, Rational, UniPoly, Var};
use num_traits::Zero;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    /// Two transverse smooth branches.
    Node,
    /// Two smooth branches with a common tangent, meeting to order two.
    Tacnode,
    /// Anything else: cusps, higher tangency, points of multiplicity three or more.
    Other,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularPoint {
    /// Projective coordinates `[x : y : z]`, rendered in decimal.
    pub coords: [String; 3],
    pub kind: PointKind,
    /// `1` for nodes, `2` for tacnodes, absent when not classified.
    pub delta: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularityReport {
    pub degree: u32,
    pub points: Vec<SingularPoint>,
    pub nodes: usize,
    pub tacnodes: usize,
    pub others: usize,
    pub total_delta: u32,
    /// `(d-1)(d-2)/2 - total_delta`, absent when some point is of type other.
    pub implied_genus: Option<i64>,
    pub precision_bits: usize,
}

/// Sparse coefficient list `(i, j, c)` for `c x^i y^j`.
type Terms = Vec<(usize, usize, Rational)>;

fn terms_of(f: &BiPoly) -> Terms {
    let mut out = vec![];
    for (j, c) in f.coeffs().iter().enumerate() {
        for (i, a) in c.coeffs().iter().enumerate() {
            if !a.is_zero() {
                out.push((i, j, a.clone()));
            }
        }
    }
    out
}

fn from_terms(terms: &Terms) -> BiPoly {
    let mut by_y: Vec<Vec<Rational>> = vec![];
    for (i, j, c) in terms {
        if by_y.len() <= *j {
            by_y.resize(j + 1, vec![]);
        }
        let row = &mut by_y[*j];
        if row.len() <= *i {
            row.resize(i + 1, Rational::zero());
        }
        row[*i] = &row[*i] + c;
    }
    BiPoly::new(by_y.into_iter().map(UniPoly::new).collect())
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Local expansion `F(x0 + X, y0 + Y)` as a dense table `b[k][l]`.
fn shifted(
    terms: &Terms,
    x0: &Complex,
    y0: &Complex,
    d: usize,
    prec: usize,
) -> (Vec<Vec<Complex>>, f64) {
    let mut b = vec![vec![Complex::zero(prec); d + 1]; d + 1];
    let xp: Vec<Complex> = (0..=d).map(|k| x0.powi(k as u32)).collect();
    let yp: Vec<Complex> = (0..=d).map(|k| y0.powi(k as u32)).collect();
    let mut scale: f64 = 0.0;
    for (i, j, c) in terms {
        let a = Complex::from_rational(c, prec);
        scale = scale.max(a.abs_f64() * xp[*i].abs_f64() * yp[*j].abs_f64());
        for k in 0..=*i {
            for l in 0..=*j {
                let w = binom(*i, k) * binom(*j, l);
                let term = &(&a * &xp[i - k]) * &yp[j - l];
                b[k][l] = &b[k][l] + &term.scale_real(&astro_float::BigFloat::from_f64(w, prec));
            }
        }
    }
    (b, scale.max(1e-300))
}

struct Zero3 {
    eps: f64,
    big: f64,
}

impl Zero3 {
    /// `Some(true)` if certifiably zero, `Some(false)` if certifiably not.
    fn test(&self, v: &Complex) -> Option<bool> {
        let a = v.abs_f64();
        if a < self.eps {
            Some(true)
        } else if a > self.big {
            Some(false)
        } else {
            None
        }
    }
}

/// Node / tacnode / other from the local expansion at a singular point.
fn classify(b: &[Vec<Complex>], z: &Zero3, prec: usize) -> Option<PointKind> {
    let d = b.len() - 1;
    let (b20, b11, b02) = (&b[2][0], &b[1][1], &b[0][2]);
    if z.test(b20)? && z.test(b11)? && z.test(b02)? {
        return Some(PointKind::Other);
    }
    let four = Complex::from_f64(4.0, 0.0, prec);
    let disc = &(b11 * b11) - &(&four * &(b20 * b02));
    if !z.test(&disc)? {
        return Some(PointKind::Node);
    }
    // rank one: make X + lambda Y (or its transpose) the tangent line
    let transposed: Vec<Vec<Complex>>;
    let b: &[Vec<Complex>] = if b20.abs_f64() >= b02.abs_f64() {
        b
    } else {
        transposed = (0..=d)
            .map(|k| (0..=d).map(|l| b[l][k].clone()).collect())
            .collect();
        &transposed
    };
    let lambda = b[1][1].div(&(&b[2][0] * &Complex::from_f64(2.0, 0.0, prec)));
    // G(U, V) = F(U - lambda V, V)
    let mut g = vec![vec![Complex::zero(prec); d + 1]; d + 1];
    let neg_l = -&lambda;
    let lp: Vec<Complex> = (0..=d).map(|k| neg_l.powi(k as u32)).collect();
    for k in 0..=d {
        for l in 0..=d - k {
            if b[k][l].is_zero() {
                continue;
            }
            // (U - lambda V)^k V^l
            for m in 0..=k {
                let w = astro_float::BigFloat::from_f64(binom(k, m), prec);
                let c = (&b[k][l] * &lp[k - m]).scale_real(&w);
                g[m][l + k - m] = &g[m][l + k - m] + &c;
            }
        }
    }
    let c = &g[2][0];
    if !z.test(&g[0][3])? {
        return Some(PointKind::Other);
    }
    // weighted 4-jet c U^2 + g21 U V^2 + g04 V^4 splits into two smooth tangent branches
    let (g12, g04) = (&g[1][2], &g[0][4]);
    let q = &(g12 * g12) - &(&four * &(c * g04));
    if z.test(&q)? {
        Some(PointKind::Other)
    } else {
        Some(PointKind::Tacnode)
    }
}

fn unresolved(prec: usize, msg: &str) -> CurveError {
    CurveError::Unresolved(prec as u32, msg.into())
}

fn sqfree(f: &UniPoly) -> Option<IntPoly> {
    if f.degree().unwrap_or(0) == 0 {
        return None;
    }
    let parts = f.to_primitive().1.squarefree_decomposition();
    Some(parts.iter().fold(IntPoly::one(), |acc, g| &acc * g))
}

fn roots_of(f: &UniPoly, prec: usize) -> Result<Vec<Complex>, CurveError> {
    match sqfree(f) {
        None => Ok(vec![]),
        Some(g) => Ok(isolate_roots(&g, prec)
            .map_err(|e| unresolved(prec, &e.to_string()))?
            .into_iter()
            .map(|r| r.z)
            .collect()),
    }
}

fn eval_terms(terms: &Terms, x: &Complex, y: &Complex, prec: usize) -> Complex {
    let mut acc = Complex::zero(prec);
    for (i, j, c) in terms {
        acc =
            &acc + &(&(&Complex::from_rational(c, prec) * &x.powi(*i as u32)) * &y.powi(*j as u32));
    }
    acc
}

fn point(
    prec: usize,
    d: usize,
    terms: &Terms,
    x0: &Complex,
    y0: &Complex,
    coords: [String; 3],
) -> Result<SingularPoint, CurveError> {
    let (b, scale) = shifted(terms, x0, y0, d, prec);
    let z = Zero3 {
        eps: scale * 2f64.powf(-(prec as f64) * 0.6),
        big: scale * 2f64.powf(-(prec as f64) * 0.3),
    };
    let kind =
        classify(&b, &z, prec).ok_or_else(|| unresolved(prec, "double-point classification"))?;
    let delta = match kind {
        PointKind::Node => Some(1),
        PointKind::Tacnode => Some(2),
        PointKind::Other => None,
    };
    Ok(SingularPoint {
        coords,
        kind,
        delta,
    })
}

fn analyze_at(f: &BiPoly, prec: usize) -> Result<SingularityReport, CurveError> {
    let d = f
        .total_degree()
        .ok_or_else(|| CurveError::Malformed("zero polynomial".into()))?;
    let fx = f.derivative(Var::Inner);
    let fy = f.derivative(Var::Outer);
    let terms = terms_of(f);
    let mut points = vec![];
    let fmt = |c: &Complex| c.to_decimal(15);
    // affine chart z = 1
    if d >= 2 {
        let rx = |a: &BiPoly, b: &BiPoly, v: Var| -> Result<UniPoly, CurveError> {
            if a.degree(v).unwrap_or(0) == 0 && b.degree(v).unwrap_or(0) == 0 {
                return Ok(UniPoly::zero());
            }
            Ok(resultant(a, b, v)?)
        };
        let gx = {
            let a = rx(f, &fx, Var::Outer)?;
            let b = rx(f, &fy, Var::Outer)?;
            if f.degree(Var::Outer).unwrap_or(0) > 0 && b.is_zero() {
                return Err(CurveError::Classification(
                    "non-isolated singularities: repeated factor".into(),
                ));
            }
            a.gcd(&b)
        };
        let gy = {
            let a = rx(f, &fx, Var::Inner)?;
            let b = rx(f, &fy, Var::Inner)?;
            if f.degree(Var::Inner).unwrap_or(0) > 0 && a.is_zero() {
                return Err(CurveError::Classification(
                    "non-isolated singularities: repeated factor".into(),
                ));
            }
            a.gcd(&b)
        };
        let xs = roots_of(&gx, prec)?;
        let ys = if xs.is_empty() {
            vec![]
        } else {
            roots_of(&gy, prec)?
        };
        let t_x = terms_of(&fx);
        let t_y = terms_of(&fy);
        for x0 in &xs {
            for y0 in &ys {
                let scale = terms
                    .iter()
                    .map(|(i, j, c)| {
                        Complex::from_rational(c, 64).abs_f64()
                            * x0.abs_f64().powi(*i as i32)
                            * y0.abs_f64().powi(*j as i32)
                    })
                    .fold(1e-300, f64::max);
                let zt = Zero3 {
                    eps: scale * 2f64.powf(-(prec as f64) * 0.6),
                    big: scale * 2f64.powf(-(prec as f64) * 0.3),
                };
                let vals = [
                    eval_terms(&terms, x0, y0, prec),
                    eval_terms(&t_x, x0, y0, prec),
                    eval_terms(&t_y, x0, y0, prec),
                ];
                let mut on = true;
                for v in &vals {
                    match zt.test(v) {
                        Some(true) => {}
                        Some(false) => {
                            on = false;
                            break;
                        }
                        None => return Err(unresolved(prec, "singular point pairing")),
                    }
                }
                if on {
                    points.push(point(
                        prec,
                        d,
                        &terms,
                        x0,
                        y0,
                        [fmt(x0), fmt(y0), "1".into()],
                    )?);
                }
            }
        }
    }
    // chart y = 1 on the line z = 0: B(x, z) = H(x, 1, z)
    let chart_b: Terms = terms
        .iter()
        .map(|(i, j, c)| (*i, d - i - j, c.clone()))
        .collect();
    let b_poly = from_terms(&chart_b);
    let on_line = |p: &BiPoly| p.coeff(0);
    let g = on_line(&b_poly)
        .gcd(&on_line(&b_poly.derivative(Var::Inner)))
        .gcd(&on_line(&b_poly.derivative(Var::Outer)));
    if g.is_zero() {
        return Err(CurveError::Classification(
            "non-isolated singularities along the line at infinity".into(),
        ));
    }
    let zero = Complex::zero(prec);
    for x0 in roots_of(&g, prec)? {
        points.push(point(
            prec,
            d,
            &chart_b,
            &x0,
            &zero,
            [fmt(&x0), "1".into(), "0".into()],
        )?);
    }
    // the point [1 : 0 : 0]: C(y, z) = H(1, y, z)
    let chart_c: Terms = terms
        .iter()
        .map(|(i, j, c)| (*j, d - i - j, c.clone()))
        .collect();
    let c_poly = from_terms(&chart_c);
    if c_poly.term(0, 0).is_zero() && c_poly.term(1, 0).is_zero() && c_poly.term(0, 1).is_zero() {
        points.push(point(
            prec,
            d,
            &chart_c,
            &zero,
            &zero,
            ["1".into(), "0".into(), "0".into()],
        )?);
    }
    let nodes = points.iter().filter(|p| p.kind == PointKind::Node).count();
    let tacnodes = points
        .iter()
        .filter(|p| p.kind == PointKind::Tacnode)
        .count();
    let others = points.len() - nodes - tacnodes;
    let total_delta: u32 = points.iter().filter_map(|p| p.delta).sum();
    let arithmetic = ((d as i64 - 1) * (d as i64 - 2)) / 2;
    Ok(SingularityReport {
        degree: d as u32,
        points,
        nodes,
        tacnodes,
        others,
        total_delta,
        implied_genus: (others == 0).then_some(arithmetic - i64::from(total_delta)),
        precision_bits: prec,
    })
}

/// Finds and classifies all singular points of the projective closure of `F(x, y) = 0`.
pub fn analyze_plane_singularities(
    f: &BiPoly,
    precision_bits: usize,
) -> Result<SingularityReport, CurveError> {
    let mut prec = precision_bits;
    for attempt in 0..=2 {
        match analyze_at(f, prec) {
            Err(CurveError::Unresolved(..)) if attempt < 2 => prec *= 2,
            other => return other,
        }
    }
    unreachable!("loop returns")
}
