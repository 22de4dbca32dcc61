//! Simultaneous root finding (Aberth-Ehrlich) with a posteriori inclusion disks.
//!
//! For approximations `z_i` of the roots of a degree-`n` polynomial with
//! leading coefficient `a`, the disks of radius `n |p(z_i)| / |a prod_{j != i} (z_i - z_j)|`
//! cover all roots, and a connected union of `m` disks holds exactly `m` roots.
//! Pairwise disjoint disks therefore certify one simple root each.

use super::mp::{Complex, MpPoly};
use crate::arith::IntPoly;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootError {
    #[error("constant polynomial")]
    Constant,
    #[error("iteration did not converge at {0} bits")]
    NotConverged(usize),
    #[error("inclusion disks overlap at {0} bits")]
    NotSeparated(usize),
}

#[derive(Clone, Debug)]
pub struct CertifiedRoot {
    pub z: Complex,
    /// Radius of a disk around `z` holding exactly this root.
    pub radius: f64,
}

/// Starting points from the Newton polygon of `log |a_k|`.
fn initial_points(p: &MpPoly, prec: usize) -> Vec<Complex> {
    let n = p.degree();
    let logs: Vec<f64> = p.coeffs.iter().map(|c| c.log2_abs()).collect();
    // upper convex hull of (k, log|a_k|)
    let mut hull: Vec<usize> = Vec::new();
    for k in 0..=n {
        if logs[k] == f64::NEG_INFINITY {
            continue;
        }
        while hull.len() >= 2 {
            let (i, j) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (logs[j] - logs[i]) * (k - i) as f64 - (logs[k] - logs[i]) * (j - i) as f64;
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(k);
    }
    let mut out = Vec::with_capacity(n);
    let mut placed = 0usize;
    for w in hull.windows(2) {
        let (i, j) = (w[0], w[1]);
        let m = j - i;
        let log_r = (logs[i] - logs[j]) / m as f64;
        let r = 2f64.powf(log_r.clamp(-1000.0, 1000.0));
        for k in 0..m {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / m as f64
                + 0.7
                + placed as f64 * 0.37;
            let z = Complex::from_f64(r * ang.cos(), r * ang.sin(), prec);
            out.push(z);
        }
        placed += 1;
    }
    // zero roots lie below the first hull vertex
    while out.len() < n {
        out.push(Complex::from_f64(1e-300, 0.0, prec));
    }
    out
}

fn aberth(p: &MpPoly, z: &mut [Complex], prec: usize, max_iter: usize) -> bool {
    let n = z.len();
    let dp = MpPoly {
        coeffs: p.coeffs.iter().map(|c| c.with_precision(prec)).collect(),
    };
    let mut done = vec![false; n];
    let tol = -(prec as f64) + 12.0;
    for _ in 0..max_iter {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (f, d) = dp.eval_with_derivative(&z[i]);
            if f.is_zero() {
                done[i] = true;
                continue;
            }
            let ratio = f.div(&d);
            let mut s = Complex::zero(prec);
            for j in 0..n {
                if j != i {
                    s = &s + &(&z[i] - &z[j]).recip();
                }
            }
            let denom = &Complex::one(prec) - &(&ratio * &s);
            let w = ratio.div(&denom);
            if !w.is_finite() {
                return false;
            }
            z[i] = &z[i] - &w;
            let scale = z[i].log2_abs().max(-(prec as f64));
            if w.log2_abs() <= scale + tol {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            return true;
        }
    }
    false
}

/// Inclusion radii for approximations of all roots of `p`.
pub fn inclusion_radii(p: &MpPoly, z: &[Complex]) -> Vec<f64> {
    let n = p.degree();
    let prec = z.first().map(|c| c.p).unwrap_or(64);
    let lead = p.coeffs[n].with_precision(prec);
    let unit = 2f64.powi(-(prec as i32));
    (0..z.len())
        .map(|i| {
            let mut prod = lead.clone();
            for j in 0..z.len() {
                if j != i {
                    prod = &prod * &(&z[i] - &z[j]);
                }
            }
            let fz = p.eval(&z[i]);
            let err_bits = (p.abs_eval_f64(&z[i]) * 4.0 * n as f64 * unit).log2();
            let num_bits = fz.log2_abs().max(err_bits) + 1.0;
            let bits = (n as f64).log2() + num_bits - prod.log2_abs();
            if bits.is_nan() {
                f64::INFINITY
            } else {
                2f64.powf(bits.clamp(-1020.0, 1020.0))
            }
        })
        .collect()
}

/// All roots of a squarefree polynomial with disjoint inclusion disks.
pub fn isolate_roots_mp(p: &MpPoly, prec: usize) -> Result<Vec<CertifiedRoot>, RootError> {
    let n = p.degree();
    if n == 0 || p.coeffs.iter().all(|c| c.is_zero()) {
        return Err(RootError::Constant);
    }
    if n == 1 {
        let z = (&-&p.coeffs[0].with_precision(prec)).div(&p.coeffs[1].with_precision(prec));
        return Ok(vec![CertifiedRoot { z, radius: 0.0 }]);
    }
    let low = prec.min(128);
    let mut z = initial_points(p, low);
    let converged = aberth(p, &mut z, low, 600);
    if low < prec || !converged {
        let mut zz: Vec<Complex> = z.iter().map(|c| c.with_precision(prec)).collect();
        if !aberth(p, &mut zz, prec, if converged { 30 } else { 400 }) {
            return Err(RootError::NotConverged(prec));
        }
        z = zz;
    }
    let radii = inclusion_radii(p, &z);
    for i in 0..n {
        for j in (i + 1)..n {
            if z[i].dist_f64(&z[j]) <= radii[i] + radii[j] {
                return Err(RootError::NotSeparated(prec));
            }
        }
    }
    Ok(z.into_iter()
        .zip(radii)
        .map(|(z, radius)| CertifiedRoot { z, radius })
        .collect())
}

/// Roots of a squarefree integer polynomial.
pub fn isolate_roots(f: &IntPoly, prec: usize) -> Result<Vec<CertifiedRoot>, RootError> {
    isolate_roots_mp(&MpPoly::from_int(f, prec + 32), prec)
}
