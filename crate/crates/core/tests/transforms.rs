use proptest::prelude::*;
use pvi_algebra::arith::{rat, RatFunc, Rational, UniPoly};
use pvi_algebra::catalog::{default_dir, Catalog};
use pvi_algebra::checks::folded_negation_checks;
use pvi_algebra::curve::{degree_of_map, genus};
use pvi_algebra::pipeline::{run_pipeline, KNOWN_CHAINS};
use pvi_algebra::pvi::{pvi_residual, theta_equivalent_up_to_signs, PviSolution, ThetaParams};
use pvi_algebra::transforms::{
    apply_mobius, folded_quadratic_transform, folded_theta, match_solution, rgt_theta,
    rgt_transform, to_seed_form, Branch, MobiusSymmetry, TransformError,
};
use std::sync::OnceLock;

fn catalog() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(|| Catalog::load(default_dir()).unwrap())
}

fn sol(id: &str) -> PviSolution {
    catalog().get(id).unwrap().solution.clone()
}

fn p(c: &[i64]) -> UniPoly {
    UniPoly::from_i64(c)
}

fn rf(c: &[i64]) -> RatFunc {
    RatFunc::from_poly(p(c))
}

#[test]
fn seed10_seed_form() {
    let seed = to_seed_form(&sol("seed-10")).unwrap();
    assert_eq!(seed.u2, UniPoly::x());
    let a_y = &rf(&[-1, 6, 3]).scale(&rat(-1, 16)) / &rf(&[0, 0, 1]);
    assert_eq!(seed.a_y, a_y);
    let big_p = rf(&[1, -25, 170, -370, -315, 27]);
    let den = &(&rf(&[-1, 5]) * &rf(&[0, 0, 0, 1])) * &RatFunc::from_i64(256);
    assert_eq!(seed.a_t, &big_p / &den);
    assert_eq!(seed.theta, ThetaParams::over([0, 1, 0, 5], 5));
}

#[test]
fn seed18_seed_form() {
    let seed = to_seed_form(&sol("seed-18")).unwrap();
    let u2 = &p(&[0, 1]) * &p(&[8, -11, 8]);
    assert_eq!(seed.u2, u2);
    let u2 = RatFunc::from_poly(u2);
    // 1/(6u) = u/(6u^2)
    let a_y = &rf(&[-4, 3, -12, 8]).scale(&rat(-1, 6)) / &u2;
    assert_eq!(seed.a_y, a_y);
    let big_p = &rf(&[1, 1]) * &rf(&[32, -320, 1112, -2420, 3167, -2420, 1112, -320, 32]);
    let den = &(&(&rf(&[0, 1]) * &rf(&[-1, 1])) * &(&u2 * &u2)) * &RatFunc::from_i64(54);
    assert_eq!(seed.a_t, &big_p / &den);
}

#[test]
fn seed_form_rejects_theta_shape() {
    let s = sol("seed-10").with_theta(ThetaParams::over([1, 1, 0, 5], 5));
    match to_seed_form(&s) {
        Err(TransformError::Shape(m)) => assert!(m.contains("theta shape")),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        to_seed_form(&sol("sol-45")),
        Err(TransformError::Shape(_))
    ));
}

#[test]
fn folded_theta_outputs() {
    let cases = [
        ("seed-10", ThetaParams::over([0, 1, 0, 9], 10)),
        ("seed-15", ThetaParams::over([2, 7, 2, 23], 30)),
        ("seed-18", ThetaParams::over([0, 1, 0, 5], 6)),
    ];
    for (id, expected) in cases {
        let seed = to_seed_form(&sol(id)).unwrap();
        assert_eq!(folded_theta(&seed.theta), expected, "{id}");
        let out = folded_quadratic_transform(&seed).unwrap();
        assert_eq!(out.theta, expected, "{id}");
        assert!(pvi_residual(&out).unwrap().is_zero, "{id}");
    }
    assert_eq!(
        folded_theta(&ThetaParams::over([0, 1, 0, 5], 6)),
        ThetaParams::over([1, 1, 1, 11], 12)
    );
}

#[test]
fn folded_outputs_match_catalog() {
    for (seed, target) in [
        ("seed-10", "sol-45"),
        ("seed-15", "sol-47"),
        ("seed-18", "sol-49"),
        ("seed-15-sibling", "sol-48"),
    ] {
        let out = folded_quadratic_transform(&to_seed_form(&sol(seed)).unwrap()).unwrap();
        let m = match_solution(&out, &sol(target)).unwrap();
        assert_eq!(m.symmetry, MobiusSymmetry::Identity, "{seed}");
    }
}

#[test]
fn rgt_theta_map() {
    let out = rgt_theta(&ThetaParams::over([0, 1, 0, 5], 5));
    assert_eq!(out, ThetaParams::over([0, 1, 1, 10], 10));
    // agrees with the folded output up to permutation and signs
    let folded = folded_theta(&ThetaParams::over([0, 1, 0, 5], 5));
    let abs_sorted = |t: &ThetaParams| {
        let mut v: Vec<Rational> = t
            .shifted()
            .iter()
            .map(|x| {
                if x < &Rational::from_integer(0.into()) {
                    -x
                } else {
                    x.clone()
                }
            })
            .collect();
        v.sort();
        v
    };
    assert_eq!(abs_sorted(&out), abs_sorted(&folded));
}

#[test]
fn rgt_transform_on_seed() {
    for branch in [Branch::Plus, Branch::Minus] {
        let pre = apply_mobius(MobiusSymmetry::Ratio, &sol("seed-10")).unwrap();
        let out = rgt_transform(&pre, branch).unwrap();
        assert!(pvi_residual(&out).unwrap().is_zero, "{branch:?}");
        assert_eq!(degree_of_map(&out.t).unwrap(), 20);
        assert!(out.t.minimal_polynomial().degree() <= 4);
    }
    let bad = sol("seed-15");
    assert!(matches!(
        rgt_transform(&bad, Branch::Plus),
        Err(TransformError::Shape(_))
    ));
}

#[test]
fn mobius_on_seed_is_generator_flip() {
    let s = sol("seed-10");
    let m = apply_mobius(MobiusSymmetry::OneMinus, &s).unwrap();
    assert_eq!(m.y, s.y.conjugate(1));
    assert_eq!(m.t, s.t.conjugate(1));
    let id = apply_mobius(MobiusSymmetry::Identity, &s).unwrap();
    assert_eq!(
        (id.y, id.t, id.theta),
        (s.y.clone(), s.t.clone(), s.theta.clone())
    );
}

#[test]
fn negation_of_v_and_w() {
    let rec = catalog().get("sol-45").unwrap();
    let seed = catalog().get("seed-10").unwrap();
    let c = folded_negation_checks(seed, rec).unwrap();
    assert!(
        c.rgt_negation.holds,
        "(1/y,1/t) on the intermediate presentation"
    );
    assert!(c.relabels_to_record);
    assert!(c.record_negation.holds, "(1-y,1-t) on the record");
    // the record itself does not carry (1/y,1/t) as the (v,w) flip
    let s = &rec.solution;
    let (ym, tm) = MobiusSymmetry::Invert.apply_functions(&s.y, &s.t).unwrap();
    assert!(!(s.y.conjugate(1) == ym && s.t.conjugate(1) == tm));
}

#[test]
fn involutions_square_to_identity() {
    let s = sol("seed-15");
    for sym in MobiusSymmetry::ALL {
        let once = apply_mobius(sym, &s).unwrap();
        let twice = apply_mobius(sym, &once).unwrap();
        assert_eq!(twice.y, s.y, "{sym}");
        assert_eq!(twice.t, s.t, "{sym}");
        assert!(
            theta_equivalent_up_to_signs(&twice.theta, &s.theta),
            "{sym}"
        );
    }
}

#[test]
fn mobius_preserves_degree_and_genus() {
    let s = sol("sol-45");
    let g = genus(&s.tower).genus;
    for sym in MobiusSymmetry::ALL {
        let m = apply_mobius(sym, &s).unwrap();
        assert_eq!(degree_of_map(&m.t).unwrap(), 20, "{sym}");
        assert_eq!(genus(&m.tower).genus, g, "{sym}");
    }
}

#[test]
fn chains_double_degree() {
    let expected: [&[u32]; 5] = [
        &[10, 20, 40],
        &[10, 20, 40],
        &[15, 30],
        &[15, 30],
        &[18, 36, 72],
    ];
    for (chain, degrees) in KNOWN_CHAINS.iter().zip(expected) {
        let report = run_pipeline(catalog(), chain).unwrap();
        assert_eq!(report.steps.len(), chain.len() - 1);
        for (i, step) in report.steps.iter().enumerate() {
            assert_eq!(step.degree_in, degrees[i], "{chain:?}");
            assert_eq!(step.degree_out, degrees[i + 1], "{chain:?}");
            assert!(step.degree_doubled);
        }
    }
}

#[test]
fn pipeline_rejects_non_seed_start() {
    let e = run_pipeline(catalog(), &["sol-45", "sol-51"]).unwrap_err();
    assert!(e.is_usage());
    assert!(run_pipeline(catalog(), &["nope"]).unwrap_err().is_usage());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn mobius_preserves_zero_residual(
        sym in prop::sample::select(MobiusSymmetry::ALL.to_vec()),
        id in prop::sample::select(vec!["seed-10", "seed-10-sibling", "seed-15", "seed-15-sibling", "seed-18", "sol-45", "sol-47"]),
        flip in 0usize..4,
    ) {
        let s = sol(id);
        let sigma = flip % s.tower.basis_len();
        let f = PviSolution::new(s.y.conjugate(sigma), s.t.conjugate(sigma), s.theta.clone()).unwrap();
        let m = apply_mobius(sym, &f).unwrap();
        prop_assert!(pvi_residual(&m).unwrap().is_zero);
    }
}
