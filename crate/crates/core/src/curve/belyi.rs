//! Numeric certification that `t` ramifies only over `0, 1, infinity`.
//!
//! The base coordinate is moved by `s = a + 1/r` with `s = a` an unremarkable
//! point, so that every special point of the curve lies over a finite `r`.
//! Candidates are the roots of the radicands, the denominators of `t`, and the
//! norms of `t`, `t - 1` and `dt/dr`. Around each candidate `r0` the curve is
//! sampled on a small circle with every square root continued along the path;
//! a point `P` over `r0` with ramification `e` over the `r`-line is the closed
//! path of `e` turns, and the winding number of `h` on that path is `ord_P h`.

use super::mp::{Complex, MpPoly};
use super::roots::{isolate_roots, CertifiedRoot, RootError};
use super::CurveError;
use crate::arith::{int, IntPoly, RatFunc, Rational, UniPoly};
use crate::field::FieldElement;
use num_traits::{One, Zero};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq)]
pub struct BelyiOptions {
    pub precision_bits: usize,
    pub tolerance: f64,
    /// Number of times the precision is doubled after an unresolved attempt.
    pub escalations: u32,
}

impl Default for BelyiOptions {
    fn default() -> Self {
        BelyiOptions {
            precision_bits: 200,
            tolerance: 1e-30,
            escalations: 3,
        }
    }
}

/// Ramification indices over `0`, `1` and infinity, largest first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Profiles {
    pub zero: Vec<u32>,
    pub one: Vec<u32>,
    pub infinity: Vec<u32>,
}

impl Profiles {
    /// `sum (e - 1)` over the three fibers.
    pub fn ramification_total(&self) -> u32 {
        [&self.zero, &self.one, &self.infinity]
            .iter()
            .flat_map(|v| v.iter())
            .map(|e| e - 1)
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BelyiCertificate {
    pub degree: u32,
    pub genus: u32,
    pub profiles: Profiles,
    pub precision_bits: usize,
    pub rh_consistent: bool,
    pub ramification_total: u32,
    /// Points of the curve examined over the candidate places.
    pub points_examined: usize,
    /// Largest relative distance of a fiber point's value from `0`, `1` or infinity.
    pub max_deviation: f64,
}

/// The function in the chart `s = a + 1/r`: `t = sum_b num_b(r) G_b / den(r)`
/// with `G_i^2 = radicand_i(r)`.
struct Chart {
    depth: usize,
    radicands: Vec<UniPoly>,
    num: Vec<UniPoly>,
    den: UniPoly,
    /// Pairwise coprime squarefree polynomials with the mask of radicands they divide.
    candidates: Vec<(IntPoly, usize)>,
}

fn int_part(f: &UniPoly) -> IntPoly {
    f.to_primitive().1
}

/// Refines a pairwise coprime list by a new squarefree polynomial.
fn insert_coprime(basis: &mut Vec<IntPoly>, q: IntPoly) {
    let mut q = q;
    let mut i = 0;
    while i < basis.len() && q.degree().unwrap_or(0) > 0 {
        let g = basis[i].gcd(&q).primitive().1;
        if g.degree().unwrap_or(0) > 0 {
            let rest = basis[i].div_exact(&g).expect("gcd divides");
            q = q.div_exact(&g).expect("gcd divides");
            basis[i] = g;
            if rest.degree().unwrap_or(0) > 0 {
                basis.push(rest);
            }
        }
        i += 1;
    }
    if q.degree().unwrap_or(0) > 0 {
        basis.push(q.primitive().1);
    }
}

fn squarefree_core(f: &IntPoly) -> IntPoly {
    f.squarefree_decomposition()
        .iter()
        .fold(IntPoly::one(), |acc, g| &acc * g)
}

fn nonzero_at(f: &RatFunc, a: &Rational) -> bool {
    !f.num().eval(a).is_zero() && !f.den().eval(a).is_zero()
}

fn build_chart(t: &FieldElement) -> Result<Chart, CurveError> {
    let tower = t.tower();
    let k = tower.depth();
    let n = tower.basis_len();
    let norms = [
        t.norm(),
        t.add_base(&RatFunc::from_i64(-1)).norm(),
        t.differentiate().norm(),
    ];
    if norms[2].is_zero() {
        return Err(CurveError::ConstantMap);
    }
    let a = (2i64..)
        .flat_map(|m| [m, -m])
        .take(400)
        .map(int)
        .find(|a| {
            tower.radicands().iter().all(|f| !f.eval(a).is_zero())
                && t.coords().iter().all(|c| !c.den().eval(a).is_zero())
                && norms.iter().all(|m| nonzero_at(m, a))
        })
        .ok_or_else(|| CurveError::Classification("no regular base point for the chart".into()))?;
    // s = a + 1/r
    let mob = RatFunc::new(UniPoly::new(vec![Rational::one(), a.clone()]), UniPoly::x());
    let r_pow = |e: usize| RatFunc::from_poly(UniPoly::monomial(Rational::one(), e));
    let halves: Vec<usize> = tower
        .radicands()
        .iter()
        .map(|f| f.degree().unwrap_or(0).div_ceil(2))
        .collect();
    let mut radicands = Vec::with_capacity(k);
    for (f, &m) in tower.radicands().iter().zip(&halves) {
        let g = &RatFunc::from_poly(f.clone()).compose(&mob) * &r_pow(2 * m);
        if !g.is_polynomial() {
            return Err(CurveError::Classification(
                "radicand did not clear in the chart".into(),
            ));
        }
        radicands.push(g.num().scale(&g.den().lc().recip()));
    }
    let coords: Vec<RatFunc> = (0..n)
        .map(|b| {
            let shift: usize = (0..k).filter(|i| b >> i & 1 == 1).map(|i| halves[i]).sum();
            &t.coord(b).compose(&mob) / &r_pow(shift)
        })
        .collect();
    let mut den = UniPoly::one();
    for c in &coords {
        let g = den.gcd(c.den());
        den = (&den * c.den()).div_exact(&g).expect("gcd divides");
    }
    let num: Vec<UniPoly> = coords
        .iter()
        .map(|c| (c * &RatFunc::from_poly(den.clone())).num().clone())
        .collect();
    // dt/dr = -r^-2 dt/ds, so its norm is r^(-2n) N(dt/ds)(a + 1/r)
    let nd = &norms[2].compose(&mob) / &r_pow(2 * n);
    let mut pieces: Vec<IntPoly> = radicands.iter().map(int_part).collect();
    pieces.push(int_part(&den));
    pieces.push(int_part(norms[0].compose(&mob).num()));
    pieces.push(int_part(norms[1].compose(&mob).num()));
    pieces.push(int_part(nd.num()));
    pieces.push(IntPoly::x());
    let mut basis = Vec::new();
    for p in pieces {
        if p.degree().unwrap_or(0) > 0 {
            insert_coprime(&mut basis, squarefree_core(&p));
        }
    }
    let rad_int: Vec<IntPoly> = radicands.iter().map(int_part).collect();
    let candidates = basis
        .into_iter()
        .map(|b| {
            let mask = rad_int
                .iter()
                .enumerate()
                .filter(|(_, f)| f.gcd(&b).degree() == b.degree())
                .fold(0usize, |m, (i, _)| m | 1 << i);
            (b, mask)
        })
        .collect();
    Ok(Chart {
        depth: k,
        radicands,
        num,
        den,
        candidates,
    })
}

/// One candidate place with its certified location.
struct Place {
    root: CertifiedRoot,
    ramified: usize,
    radius: f64,
}

#[derive(Debug)]
enum PointKind {
    Zero(u32),
    One(u32),
    Pole(u32),
    Regular,
}

struct PointResult {
    kind: PointKind,
    deviation: f64,
}

enum Trace {
    Done(Vec<PointResult>),
    Refine,
    /// A critical point over the given value, away from `0, 1, infinity`.
    Critical(String),
}

struct NumericChart {
    prec: usize,
    radicands: Vec<MpPoly>,
    num: Vec<MpPoly>,
    den: MpPoly,
    depth: usize,
}

/// `exp(2 pi i / m)` for a power of two `m >= 4`, by repeated square roots of `i`.
fn root_of_unity(m: usize, p: usize) -> Complex {
    let mut w = Complex::from_f64(0.0, 1.0, p);
    let mut k = 4;
    while k < m {
        w = w.sqrt();
        k *= 2;
    }
    w
}

fn sign_of(sigma: usize, b: usize) -> bool {
    (sigma & b).count_ones() % 2 == 1
}

/// Increment of `arg` from `a` to `b`, or `None` when it is not clearly below `limit`.
fn arg_step(a: &Complex, b: &Complex, limit: f64) -> Option<f64> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let (x, y) = b.div(a).to_c64();
    if !x.is_finite() || !y.is_finite() {
        return None;
    }
    let d = y.atan2(x);
    (d.abs() < limit).then_some(d)
}

fn winding(values: &[Complex], shift: &Complex) -> Option<i64> {
    let mut total = 0.0;
    let shifted: Vec<Complex> = values.iter().map(|v| v - shift).collect();
    for w in shifted.windows(2) {
        total += arg_step(&w[0], &w[1], PI / 3.0)?;
    }
    total += arg_step(shifted.last()?, &shifted[0], PI / 3.0)?;
    let k = (total / (2.0 * PI)).round();
    ((total - k * 2.0 * PI).abs() < 0.5).then_some(k as i64)
}

/// `|mean h| / max |h|` for samples of `h`.
fn relative_mean(values: &[Complex]) -> f64 {
    let p = values[0].p;
    let mut sum = Complex::zero(p);
    let mut max = f64::NEG_INFINITY;
    for v in values {
        sum = &sum + v;
        max = max.max(v.log2_abs());
    }
    let mean = sum.log2_abs() - (values.len() as f64).log2();
    2f64.powf((mean - max).clamp(-1020.0, 0.0))
}

impl NumericChart {
    fn new(c: &Chart, prec: usize) -> Self {
        let q = prec + 32;
        NumericChart {
            prec,
            radicands: c.radicands.iter().map(|f| MpPoly::from_uni(f, q)).collect(),
            num: c.num.iter().map(|f| MpPoly::from_uni(f, q)).collect(),
            den: MpPoly::from_uni(&c.den, q),
            depth: c.depth,
        }
    }

    /// Samples `t` on every sheet along `turns` circuits of the circle, with
    /// `m` points per circuit.
    fn sample(
        &self,
        center: &Complex,
        rho: f64,
        turns: usize,
        m: usize,
    ) -> Option<Vec<Vec<Complex>>> {
        let p = self.prec;
        let n = 1usize << self.depth;
        let mut polys = Vec::with_capacity(m);
        let omega = root_of_unity(m, p);
        let mut offset = Complex::from_f64(rho, 0.0, p);
        for _ in 0..m {
            let z = center + &offset;
            offset = &offset * &omega;
            let den = self.den.eval(&z);
            if den.is_zero() {
                return None;
            }
            let inv = den.recip();
            let nums: Vec<Complex> = self.num.iter().map(|f| &f.eval(&z) * &inv).collect();
            let rads: Vec<Complex> = self.radicands.iter().map(|f| f.eval(&z)).collect();
            polys.push((nums, rads));
        }
        let mut roots: Vec<Complex> = polys[0].1.iter().map(|f| f.sqrt()).collect();
        let mut out = vec![Vec::with_capacity(m * turns); n];
        for step in 0..m * turns {
            let (nums, rads) = &polys[step % m];
            if step > 0 {
                for (g, f) in roots.iter_mut().zip(rads) {
                    let cand = f.sqrt();
                    let (x, y) = cand.div(g).to_c64();
                    if !x.is_finite() || y.atan2(x).abs() > PI / 3.0 && y.atan2(-x).abs() > PI / 3.0
                    {
                        return None;
                    }
                    *g = if x >= 0.0 { cand } else { -&cand };
                }
            }
            let mut mono = vec![Complex::one(p); n];
            for b in 1..n {
                let i = b.trailing_zeros() as usize;
                let rest = b & (b - 1);
                mono[b] = &mono[rest] * &roots[i];
            }
            for (sigma, sheet) in out.iter_mut().enumerate() {
                let mut acc = Complex::zero(p);
                for b in 0..n {
                    let term = &nums[b] * &mono[b];
                    acc = if sign_of(sigma, b) {
                        &acc - &term
                    } else {
                        &acc + &term
                    };
                }
                sheet.push(acc);
            }
        }
        Some(out)
    }

    fn trace(&self, place: &Place, m: usize, tol: f64) -> Trace {
        let turns = if place.ramified == 0 { 1 } else { 2 };
        let Some(samples) = self.sample(&place.root.z, place.radius, turns, m) else {
            return Trace::Refine;
        };
        let p = self.prec;
        let zero = Complex::zero(p);
        let one = Complex::one(p);
        let mut results = Vec::new();
        for sigma in 0..samples.len() {
            // one representative per point: the smaller sheet of each monodromy orbit
            if sigma ^ place.ramified < sigma {
                continue;
            }
            let vals = &samples[sigma];
            let (Some(w0), Some(w1)) = (winding(vals, &zero), winding(vals, &one)) else {
                return Trace::Refine;
            };
            let (kind, deviation) = if w0 > 0 {
                (PointKind::Zero(w0 as u32), relative_mean(vals))
            } else if w0 < 0 {
                let inv: Vec<Complex> = vals.iter().map(|v| v.recip()).collect();
                (PointKind::Pole((-w0) as u32), relative_mean(&inv))
            } else if w1 > 0 {
                let shifted: Vec<Complex> = vals.iter().map(|v| v - &one).collect();
                (PointKind::One(w1 as u32), relative_mean(&shifted))
            } else {
                let mut sum = Complex::zero(p);
                for v in vals {
                    sum = &sum + v;
                }
                let c =
                    sum.scale_real(&astro_float::BigFloat::from_f64(1.0 / vals.len() as f64, p));
                match winding(vals, &c) {
                    Some(1) => (PointKind::Regular, 0.0),
                    Some(w) if w > 1 => {
                        let near = c.abs_f64() < tol
                            || (&c - &one).abs_f64() < tol
                            || c.abs_f64() > 1.0 / tol;
                        if near {
                            return Trace::Refine;
                        }
                        return Trace::Critical(c.to_decimal(12));
                    }
                    _ => return Trace::Refine,
                }
            };
            if deviation > tol {
                return Trace::Refine;
            }
            results.push(PointResult { kind, deviation });
        }
        Trace::Done(results)
    }
}

fn unresolved(prec: usize, msg: impl Into<String>) -> CurveError {
    CurveError::Unresolved(prec as u32, msg.into())
}

fn certify_at(
    chart: &Chart,
    genus: u32,
    degree: u32,
    prec: usize,
    tol: f64,
) -> Result<BelyiCertificate, CurveError> {
    let mut places: Vec<Place> = Vec::new();
    for (poly, mask) in &chart.candidates {
        let roots = isolate_roots(poly, prec).map_err(|e| match e {
            RootError::Constant => {
                CurveError::Classification("constant candidate polynomial".into())
            }
            other => unresolved(prec, other.to_string()),
        })?;
        for root in roots {
            places.push(Place {
                root,
                ramified: *mask,
                radius: 0.0,
            });
        }
    }
    let centers: Vec<(f64, f64)> = places.iter().map(|p| p.root.z.to_c64()).collect();
    for i in 0..places.len() {
        let mut nearest = f64::INFINITY;
        for j in 0..places.len() {
            if i != j {
                let (dx, dy) = (centers[i].0 - centers[j].0, centers[i].1 - centers[j].1);
                let d = if dx.hypot(dy) > 1e-12 * (1.0 + centers[i].0.hypot(centers[i].1)) {
                    dx.hypot(dy)
                } else {
                    places[i].root.z.dist_f64(&places[j].root.z)
                };
                nearest = nearest.min(d);
            }
        }
        let rho = nearest / 4.0;
        if !(rho > 1e3 * places[i].root.radius) {
            return Err(unresolved(prec, "candidate places are not separated"));
        }
        places[i].radius = rho;
    }
    let numeric = NumericChart::new(chart, prec);
    let mut profiles = Profiles {
        zero: vec![],
        one: vec![],
        infinity: vec![],
    };
    let mut examined = 0;
    let mut max_dev: f64 = 0.0;
    for place in &places {
        let mut m = 64;
        let results = loop {
            match numeric.trace(place, m, tol) {
                Trace::Done(r) => break r,
                Trace::Critical(v) => {
                    return Err(CurveError::NotBelyi(format!(
                        "critical value {v} over r = {}",
                        place.root.z.to_decimal(12)
                    )))
                }
                Trace::Refine if m < 2048 => m *= 2,
                Trace::Refine => {
                    return Err(unresolved(
                        prec,
                        format!("winding numbers at r = {}", place.root.z.to_decimal(12)),
                    ))
                }
            }
        };
        for r in results {
            examined += 1;
            max_dev = max_dev.max(r.deviation);
            match r.kind {
                PointKind::Zero(e) => profiles.zero.push(e),
                PointKind::One(e) => profiles.one.push(e),
                PointKind::Pole(e) => profiles.infinity.push(e),
                PointKind::Regular => {}
            }
        }
    }
    for v in [
        &mut profiles.zero,
        &mut profiles.one,
        &mut profiles.infinity,
    ] {
        v.sort_unstable_by(|a, b| b.cmp(a));
        if v.iter().sum::<u32>() != degree {
            return Err(unresolved(
                prec,
                format!(
                    "a fiber profile sums to {} instead of {degree}",
                    v.iter().sum::<u32>()
                ),
            ));
        }
    }
    let total = profiles.ramification_total();
    let rh = i64::from(total) == 2 * i64::from(genus) - 2 + 2 * i64::from(degree);
    Ok(BelyiCertificate {
        degree,
        genus,
        profiles,
        precision_bits: prec,
        rh_consistent: rh,
        ramification_total: total,
        points_examined: examined,
        max_deviation: max_dev,
    })
}

/// Certifies the ramification of `t` and the Riemann-Hurwitz identity,
/// doubling the precision after unresolved attempts.
pub fn belyi_certify(
    t: &FieldElement,
    genus: u32,
    degree: u32,
    opts: &BelyiOptions,
) -> Result<BelyiCertificate, CurveError> {
    let chart = build_chart(t)?;
    let mut prec = opts.precision_bits;
    let mut attempt = 0;
    loop {
        match certify_at(&chart, genus, degree, prec, opts.tolerance) {
            Err(CurveError::Unresolved(..)) if attempt < opts.escalations => {
                attempt += 1;
                prec *= 2;
            }
            other => return other,
        }
    }
}
