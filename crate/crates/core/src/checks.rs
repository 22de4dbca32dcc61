//! Exact identity checks tying catalog records to symmetries and models,
//! and a numeric evaluation of the equation at sample points.

use crate::arith::{rat, BiPoly, IntPoly, RatFunc, Rational};
use crate::catalog::expr::parse_expr;
use crate::catalog::interp::BiFrac;
use crate::catalog::SolutionRecord;
use crate::curve::model::{build_model, verify_model, ModelPresentation};
use crate::curve::mp::{Complex, MpPoly};
use crate::curve::CurveError;
use crate::field::FieldElement;
use crate::pvi::polyvec::clear_denominators;
use crate::pvi::PviSolution;
use crate::transforms::{apply_mobius, match_solution, rgt_transform, Branch, MobiusSymmetry};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetryCheck {
    pub action: String,
    pub expected: String,
    pub holds: bool,
    /// For a failed check, the symmetries that do act as the stated action.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub observed: Vec<String>,
}

fn malformed(m: impl Into<String>) -> CurveError {
    CurveError::Malformed(m.into())
}

/// Mask of the generators named in `names`.
fn mask_of(sol: &PviSolution, names: &[&str]) -> Result<usize, CurveError> {
    names.iter().try_fold(0, |m, n| {
        let i = sol
            .tower
            .names()
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| malformed(format!("no generator {n}")))?;
        Ok(m | 1 << i)
    })
}

/// Whether flipping the generators `names` acts on `(y, t)` as `sym`.
pub fn negation_check(
    sol: &PviSolution,
    names: &[&str],
    sym: MobiusSymmetry,
) -> Result<SymmetryCheck, CurveError> {
    let sigma = mask_of(sol, names)?;
    let (ym, tm) = sym
        .apply_functions(&sol.y, &sol.t)
        .map_err(|e| malformed(e.to_string()))?;
    Ok(SymmetryCheck {
        action: format!("negate {}", names.join(",")),
        expected: sym.label().into(),
        holds: sol.y.conjugate(sigma) == ym && sol.t.conjugate(sigma) == tm,
        observed: vec![],
    })
}

/// The intermediate presentation of a folded output: the two-square-root
/// transform of `(y/(y-1), t/(t-1))` applied to a seed solution.
pub fn rgt_presentation(seed: &PviSolution) -> Result<PviSolution, CurveError> {
    let pre = apply_mobius(MobiusSymmetry::Ratio, seed).map_err(|e| malformed(e.to_string()))?;
    rgt_transform(&pre, Branch::Plus).map_err(|e| malformed(e.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationCheck {
    /// `(v, w)`-negation on the intermediate presentation.
    pub rgt_negation: SymmetryCheck,
    /// The intermediate presentation after `(y/(y-1), t/(t-1))` is the record.
    pub relabels_to_record: bool,
    /// `(v, w)`-negation on the record itself.
    pub record_negation: SymmetryCheck,
}

/// Symmetries of a folded record and of its intermediate presentation built from `seed`.
pub fn folded_negation_checks(
    seed: &SolutionRecord,
    rec: &SolutionRecord,
) -> Result<PresentationCheck, CurveError> {
    let mid = rgt_presentation(&seed.solution)?;
    let rgt_negation = negation_check(&mid, &["v", "w"], MobiusSymmetry::Invert)?;
    let relabelled =
        apply_mobius(MobiusSymmetry::Ratio, &mid).map_err(|e| malformed(e.to_string()))?;
    let relabels_to_record = match_solution(&relabelled, &rec.solution).is_ok();
    // the record binds `w = v*w1`, so negating v and w fixes w1
    let names: Vec<&str> = rec.tower().names().iter().map(String::as_str).collect();
    let flip = if names.contains(&"w") {
        vec!["v", "w"]
    } else {
        vec!["v"]
    };
    let record_negation = negation_check(&rec.solution, &flip, MobiusSymmetry::OneMinus)?;
    Ok(PresentationCheck {
        rgt_negation,
        relabels_to_record,
        record_negation: SymmetryCheck {
            action: "negate v,w".into(),
            ..record_negation
        },
    })
}

/// Rational functions on a plane curve `F(x, y) = 0`, with `F` monic in `y`
/// and every numerator and denominator reduced modulo `F`.
struct CurveFunctions {
    f: BiPoly,
}

impl CurveFunctions {
    fn new(curve: &BiPoly) -> Result<Self, CurveError> {
        let d = curve
            .degree(crate::arith::Var::Outer)
            .ok_or_else(|| malformed("zero curve"))?;
        let lc = curve.coeffs()[d]
            .constant_value()
            .filter(|c| c != &Rational::from_integer(0.into()));
        let lc = lc.ok_or_else(|| malformed("curve leading coefficient must be constant"))?;
        Ok(CurveFunctions {
            f: curve.scale(&lc.recip()),
        })
    }

    fn reduce(&self, p: &BiPoly) -> BiPoly {
        p.pseudo_rem_outer(&self.f)
    }

    fn frac(&self, num: BiPoly, den: BiPoly) -> BiFrac {
        BiFrac {
            num: self.reduce(&num),
            den: self.reduce(&den),
        }
    }

    fn scaled(&self, p: &BiPoly, c: &BigInt) -> BiPoly {
        p.scale(&Rational::from_integer(c.clone()))
    }

    /// A tower element with the base variable and generators sent to `base`, `gens`.
    ///
    /// Over a common denominator `e`, each coordinate `n_b(x)` is evaluated
    /// homogeneously as `sum c_k J_n^k J_d^(D-k)` with `base = J_n / J_d`.
    fn element(&self, e: &FieldElement, base: &BiFrac, gens: &[BiFrac]) -> BiFrac {
        let (num, den) = clear_denominators(e);
        let d = num
            .0
            .iter()
            .chain([&den])
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0);
        let mut jn = vec![BiPoly::constant(Rational::from_integer(1.into()))];
        let mut jd = jn.clone();
        for k in 0..d {
            jn.push(self.reduce(&(&jn[k] * &base.num)));
            jd.push(self.reduce(&(&jd[k] * &base.den)));
        }
        let h: Vec<BiPoly> = (0..=d)
            .map(|k| self.reduce(&(&jn[k] * &jd[d - k])))
            .collect();
        let hom = |p: &IntPoly| -> BiPoly {
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .fold(BiPoly::zero(), |acc, (k, c)| &acc + &self.scaled(&h[k], c))
        };
        let mut top = BiPoly::zero();
        for (b, c) in num.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = hom(c);
            for (i, g) in gens.iter().enumerate() {
                let factor = if b >> i & 1 == 1 { &g.num } else { &g.den };
                term = self.reduce(&(&term * factor));
            }
            top = &top + &term;
        }
        let bottom = gens
            .iter()
            .fold(hom(&den), |acc, g| self.reduce(&(&acc * &g.den)));
        BiFrac {
            num: top,
            den: bottom,
        }
    }

    fn substitute(&self, a: &BiFrac, x: &BiPoly, y: &BiPoly) -> BiFrac {
        self.frac(a.num.substitute(x, y), a.den.substitute(x, y))
    }

    fn is_nonzero(&self, a: &BiFrac) -> bool {
        !self.reduce(&a.num).is_zero()
    }

    fn equal(&self, a: &BiFrac, b: &BiFrac) -> bool {
        self.reduce(&(&(&a.num * &b.den) - &(&b.num * &a.den)))
            .is_zero()
    }
}

/// A signed coordinate permutation `(x, y) -> (sx * x or y, ...)` as an integer matrix.
type Linear = [[i64; 2]; 2];

fn compose(a: &Linear, b: &Linear) -> Linear {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

fn group_order(gens: &[Linear]) -> usize {
    let mut seen: BTreeSet<Linear> = BTreeSet::from([[[1, 0], [0, 1]]]);
    let mut frontier: Vec<Linear> = seen.iter().copied().collect();
    while let Some(g) = frontier.pop() {
        for h in gens {
            let k = compose(h, &g);
            if seen.insert(k) {
                frontier.push(k);
            }
        }
    }
    seen.len()
}

fn linear_image(m: &Linear) -> (BiPoly, BiPoly) {
    let lin = |row: &[i64; 2]| {
        &BiPoly::x().scale(&Rational::from_integer(row[0].into()))
            + &BiPoly::y().scale(&Rational::from_integer(row[1].into()))
    };
    (lin(&m[0]), lin(&m[1]))
}

#[derive(Clone, Debug, Serialize)]
pub struct QuarticSymmetryReport {
    pub checks: Vec<SymmetryCheck>,
    pub curve_invariant: bool,
    pub group_order: usize,
    pub passed: bool,
}

/// The coordinate symmetries of a plane model and the maps they induce on `(y, t)`.
pub fn plane_symmetry_check(
    rec: &SolutionRecord,
    model_name: &str,
    table: &[(&str, Linear, MobiusSymmetry)],
) -> Result<QuarticSymmetryReport, CurveError> {
    let block = rec
        .model(model_name)
        .ok_or_else(|| malformed(format!("no model {model_name}")))?;
    let model = build_model(block, rec)?;
    let ModelPresentation::Plane { curve, maps, .. } = &model else {
        return Err(malformed("symmetry check needs a plane model"));
    };
    if !verify_model(&model, rec)?.verified {
        return Err(malformed("model does not satisfy the tower relations"));
    }
    let cf = CurveFunctions::new(curve)?;
    let tower = rec.tower();
    let lookup = |n: &str| {
        maps.iter()
            .find(|(m, _)| m == n)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| malformed(format!("no map for {n}")))
    };
    let base = lookup(tower.var())?;
    let base = cf.frac(base.num, base.den);
    let mut gens = vec![];
    for (i, name) in tower.names().iter().enumerate() {
        let img = lookup(name)?;
        let scale = rec
            .env
            .get(name)
            .map(|e| e.coord(1 << i).clone())
            .unwrap_or_else(RatFunc::one);
        let inv = scale
            .constant_value()
            .ok_or_else(|| malformed("generator binding is not a constant multiple"))?
            .recip();
        gens.push(cf.frac(img.num.scale(&inv), img.den));
    }
    let y = cf.element(&rec.solution.y, &base, &gens);
    let t = cf.element(&rec.solution.t, &base, &gens);
    if !(cf.is_nonzero(&y)
        && cf.is_nonzero(&t)
        && !cf.reduce(&y.den).is_zero()
        && !cf.reduce(&t.den).is_zero())
    {
        return Err(malformed("degenerate functions on the model"));
    }
    let mut checks = vec![];
    let mut curve_invariant = true;
    for (label, m, sym) in table {
        let (a, b) = linear_image(m);
        curve_invariant &= cf.reduce(&curve.substitute(&a, &b)).is_zero();
        let (ys, ts) = (cf.substitute(&y, &a, &b), cf.substitute(&t, &a, &b));
        let acts_as = |s: MobiusSymmetry| -> Result<bool, CurveError> {
            let (ym, tm) = s
                .apply_functions(&rec.solution.y, &rec.solution.t)
                .map_err(|e| malformed(e.to_string()))?;
            Ok(cf.equal(&ys, &cf.element(&ym, &base, &gens))
                && cf.equal(&ts, &cf.element(&tm, &base, &gens)))
        };
        let holds = acts_as(*sym)?;
        let mut observed = vec![];
        if !holds {
            for s in MobiusSymmetry::ALL {
                if s != *sym && acts_as(s).unwrap_or(false) {
                    observed.push(s.label().to_string());
                }
            }
        }
        checks.push(SymmetryCheck {
            action: label.to_string(),
            expected: sym.label().into(),
            holds,
            observed,
        });
    }
    let order = group_order(&table.iter().map(|(_, m, _)| *m).collect::<Vec<_>>());
    let passed = curve_invariant && checks.iter().all(|c| c.holds);
    Ok(QuarticSymmetryReport {
        checks,
        curve_invariant,
        group_order: order,
        passed,
    })
}

/// The three involutions of the quartic model and their stated images.
pub const QUARTIC_SYMMETRIES: [(&str, Linear, MobiusSymmetry); 3] = [
    ("(-p,q)", [[-1, 0], [0, 1]], MobiusSymmetry::OneMinus),
    ("(p,-q)", [[1, 0], [0, -1]], MobiusSymmetry::Cross),
    ("(q,p)", [[0, 1], [1, 0]], MobiusSymmetry::FixT1),
];

pub fn quartic_symmetry_check(rec: &SolutionRecord) -> Result<QuarticSymmetryReport, CurveError> {
    let mut r = plane_symmetry_check(rec, "quartic", &QUARTIC_SYMMETRIES)?;
    r.passed &= r.group_order == 8;
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct TypoCheck {
    pub corrected: String,
    pub corrected_holds: bool,
    pub literal: String,
    pub literal_holds: bool,
}

/// Checks the conic relation of `w1` on the elliptic model for the corrected
/// substitution and for the variant with the `j` dropped from `-18 j`.
pub fn w1_typo_check(rec: &SolutionRecord) -> Result<TypoCheck, CurveError> {
    const CORRECTED: &str = "(j^2 - 18*j + 1)/(2*j - 18)";
    const LITERAL: &str = "(j^2 - 18 + 1)/(2*j - 18)";
    let block = rec
        .model("elliptic")
        .ok_or_else(|| malformed("no elliptic model"))?;
    let holds = |src: &str| -> Result<bool, CurveError> {
        let mut b = block.clone();
        let e = parse_expr(src).map_err(|e| malformed(e.to_string()))?;
        match b.maps.iter_mut().find(|(n, _)| n == "w1") {
            Some(m) => m.1 = e,
            None => return Err(malformed("model has no w1 map")),
        }
        let check = verify_model(&build_model(&b, rec)?, rec)?;
        let rel = check
            .relations
            .iter()
            .find(|r| r.relation.starts_with("w1^2"))
            .ok_or_else(|| malformed("no w1 relation"))?;
        Ok(rel.holds)
    };
    Ok(TypoCheck {
        corrected: CORRECTED.into(),
        corrected_holds: holds(CORRECTED)?,
        literal: LITERAL.into(),
        literal_holds: holds(LITERAL)?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericCheck {
    pub points: usize,
    pub precision_bits: usize,
    pub max_relative_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn eval_ratfunc(r: &RatFunc, s: &Complex, p: usize) -> Complex {
    MpPoly::from_uni(r.num(), p)
        .eval(s)
        .div(&MpPoly::from_uni(r.den(), p).eval(s))
}

fn eval_element(e: &FieldElement, s: &Complex, roots: &[Complex], p: usize) -> Complex {
    let mut acc = Complex::zero(p);
    for (b, c) in e.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut term = eval_ratfunc(c, s, p);
        for (i, r) in roots.iter().enumerate() {
            if b >> i & 1 == 1 {
                term = &term * r;
            }
        }
        acc = &acc + &term;
    }
    acc
}

/// Evaluates both sides of the equation at random points of a random sheet.
pub fn numeric_pvi_check(
    sol: &PviSolution,
    points: usize,
    precision_bits: usize,
    tolerance: f64,
    seed: u64,
) -> NumericCheck {
    let p = precision_bits;
    let (ys, ts) = (sol.y.differentiate(), sol.t.differentiate());
    let (yss, tss) = (ys.differentiate(), ts.differentiate());
    let coeffs = sol
        .theta
        .coefficients()
        .map(|c| Complex::from_rational(&c, p));
    let half = Complex::from_rational(&rat(1, 2), p);
    let one = Complex::one(p);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let s = Complex::from_f64(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), p);
        let roots: Vec<Complex> = sol
            .tower
            .radicands()
            .iter()
            .map(|f| {
                let r = MpPoly::from_uni(f, p).eval(&s).sqrt();
                if rng.gen_bool(0.5) {
                    -&r
                } else {
                    r
                }
            })
            .collect();
        let ev = |e: &FieldElement| eval_element(e, &s, &roots, p);
        let (y, t, y1, t1, y2, t2) = (ev(&sol.y), ev(&sol.t), ev(&ys), ev(&ts), ev(&yss), ev(&tss));
        // derivatives with respect to t
        let dy = y1.div(&t1);
        let d2y = (&(&y2 * &t1) - &(&y1 * &t2)).div(&t1.powi(3));
        let (ym1, tm1, ymt) = (&y - &one, &t - &one, &y - &t);
        let first = &(&(&y.recip() + &ym1.recip()) + &ymt.recip()) * &(&dy * &dy);
        let second = &(&(&t.recip() + &tm1.recip()) + &ymt.recip()) * &dy;
        let bracket = {
            let a = coeffs[0].clone();
            let b = -&(&coeffs[1] * &t.div(&(&y * &y)));
            let c = &coeffs[2] * &tm1.div(&(&ym1 * &ym1));
            let d = &coeffs[3] * &(&t * &tm1).div(&(&ymt * &ymt));
            &(&(&a + &b) + &c) + &d
        };
        let prefactor = (&(&y * &ym1) * &ymt).div(&(&(&t * &t) * &(&tm1 * &tm1)));
        let rhs = &(&(&first * &half) - &second) + &(&(&prefactor * &bracket) * &half);
        let scale = d2y.abs_f64()
            + (&first * &half).abs_f64()
            + second.abs_f64()
            + (&(&prefactor * &bracket) * &half).abs_f64();
        let err = (&d2y - &rhs).abs_f64() / scale;
        worst = worst.max(if err.is_nan() { f64::INFINITY } else { err });
    }
    NumericCheck {
        points,
        precision_bits,
        max_relative_error: worst,
        tolerance,
        passed: worst < tolerance,
    }
}
