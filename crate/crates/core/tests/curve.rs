use num_traits::ToPrimitive;
use proptest::prelude::*;
use pvi_algebra::arith::{rat, BiPoly, RatFunc, UniPoly};
use pvi_algebra::catalog::{default_dir, Catalog};
use pvi_algebra::checks::{plane_symmetry_check, quartic_symmetry_check, w1_typo_check};
use pvi_algebra::curve::model::plane_polynomial;
use pvi_algebra::curve::{
    analyze_plane_singularities, belyi_certify, build_model, degree_of_map, genus, verify_model,
    BelyiOptions, CurveError, ModelPresentation, PointKind,
};
use pvi_algebra::field::{FieldElement, TowerPresentation};
use pvi_algebra::transforms::MobiusSymmetry;
use std::sync::OnceLock;

fn catalog() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(|| Catalog::load(default_dir()).unwrap())
}

fn p(c: &[i64]) -> UniPoly {
    UniPoly::from_i64(c)
}

fn prod(fs: &[UniPoly]) -> UniPoly {
    fs.iter().fold(UniPoly::one(), |a, b| &a * b)
}

fn tower(var: &str, rads: Vec<UniPoly>) -> std::sync::Arc<TowerPresentation> {
    let names = (0..rads.len()).map(|i| format!("r{i}")).collect();
    TowerPresentation::new(var, rads, names).unwrap()
}

/// Number of points where `t` takes a generic value `c`: the zeros in `s`
/// of the norm of `c - t`, counted with multiplicity.
fn fiber_size(t: &FieldElement, c: i64) -> usize {
    let n = t.neg().add_base(&RatFunc::from_i64(c)).norm();
    n.num().degree().unwrap()
}

#[test]
fn genus_sol45_tower() {
    let g = genus(&tower(
        "s",
        vec![&p(&[-1, 9]) * &p(&[-1, 1]), p(&[1, -18, 1])],
    ));
    assert_eq!((g.ramified_place_count, g.genus), (4, 1));
}

#[test]
fn genus_sol47_tower() {
    let common = prod(&[p(&[0, 1]), p(&[5, 1]), p(&[2, 1])]);
    let g = genus(&tower(
        "s",
        vec![&common * &p(&[-3, 1]), &common * &p(&[3, 1])],
    ));
    assert_eq!((g.ramified_place_count, g.genus), (5, 2));
}

#[test]
fn genus_sol51_tower() {
    let f = prod(&[p(&[1, -1]), p(&[-9, 1]), p(&[13, -2, 5])]);
    let g = prod(&[p(&[-9, 1]), p(&[-1, 0, 1])]).scale(&rat(2, 1));
    let inv = genus(&tower("j", vec![f, g]));
    assert_eq!((inv.ramified_place_count, inv.genus), (6, 3));
}

#[test]
fn genus_sol52_tower() {
    let inv = genus(catalog().get("sol-52").unwrap().tower());
    assert_eq!((inv.ramified_place_count, inv.genus), (10, 7));
}

#[test]
fn genus_depth_one() {
    assert_eq!(genus(&tower("s", vec![UniPoly::x()])).genus, 0);
    let inv = genus(&tower("s", vec![p(&[-1, 0, 0, 1])]));
    assert_eq!((inv.genus, inv.hyperelliptic), (1, Some(false)));
    let inv = genus(&tower("s", vec![p(&[1, 0, 0, 0, 0, 1])]));
    assert_eq!((inv.genus, inv.hyperelliptic), (2, Some(true)));
}

#[test]
fn genus_ledger_matches_records() {
    for (id, rec) in &catalog().records {
        assert_eq!(Some(genus(rec.tower()).genus), rec.expected_genus(), "{id}");
    }
}

#[test]
fn degree_examples() {
    let t45 = &catalog().get("sol-45").unwrap().solution.t;
    assert_eq!(degree_of_map(t45).unwrap(), 20);
    let t52 = &catalog().get("sol-52").unwrap().solution.t;
    assert_eq!(degree_of_map(t52).unwrap(), 72);
    assert_eq!(degree_of_map(t52).unwrap(), 18 * 4);

    let tw = tower("s", vec![p(&[-1, 0, 0, 1])]);
    let t = FieldElement::from_base(&tw, RatFunc::from_poly(p(&[0, 0, 1])));
    assert_eq!(degree_of_map(&t).unwrap(), 4);
    // s^2 = c has two roots, and u^2 = s^3 - 1 is nonzero at both, so the fiber has four points
    let c = 3.7f64;
    let fiber: usize = [c.sqrt(), -c.sqrt()]
        .iter()
        .map(|&s| if s * s * s - 1.0 == 0.0 { 1 } else { 2 })
        .sum();
    assert_eq!(fiber, 4);
    assert_eq!(fiber_size(&t, 7), 4);
    assert!(degree_of_map(&FieldElement::from_base(&tw, RatFunc::from_i64(5))).is_err());
}

#[test]
fn degree_matches_fiber_count() {
    for (id, rec) in &catalog().records {
        let t = &rec.solution.t;
        let d = degree_of_map(t).unwrap();
        assert_eq!(Some(d), rec.expected_degree(), "{id}");
        assert_eq!(fiber_size(t, 7) as u32, d, "{id}");
    }
}

#[test]
fn belyi_sol45() {
    let rec = catalog().get("sol-45").unwrap();
    let cert = belyi_certify(&rec.solution.t, 1, 20, &BelyiOptions::default()).unwrap();
    assert!(cert.rh_consistent);
    assert_eq!(cert.ramification_total, 40);
    assert_eq!(cert.precision_bits, 200);
    for fiber in [
        &cert.profiles.zero,
        &cert.profiles.one,
        &cert.profiles.infinity,
    ] {
        assert_eq!(fiber.iter().sum::<u32>(), 20);
    }
}

#[test]
fn belyi_sol52() {
    let rec = catalog().get("sol-52").unwrap();
    let cert = belyi_certify(&rec.solution.t, 7, 72, &BelyiOptions::default()).unwrap();
    assert!(cert.rh_consistent);
    assert_eq!(cert.ramification_total, 156);
}

#[test]
fn belyi_rejects_perturbed_map() {
    let rec = catalog().get("sol-45").unwrap();
    let t = rec.solution.t.add_base(&RatFunc::x());
    let d = degree_of_map(&t).unwrap();
    match belyi_certify(&t, 1, d, &BelyiOptions::default()) {
        Err(CurveError::NotBelyi(_)) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn riemann_hurwitz_for_every_record() {
    for (id, rec) in &catalog().records {
        let g = genus(rec.tower()).genus;
        let d = degree_of_map(&rec.solution.t).unwrap();
        let cert = belyi_certify(&rec.solution.t, g, d, &BelyiOptions::default()).unwrap();
        assert!(cert.rh_consistent, "{id}");
        assert_eq!(
            2 * g as i64 - 2,
            -2 * d as i64 + cert.ramification_total as i64,
            "{id}"
        );
    }
}

#[test]
fn models_verify() {
    for (id, name) in [
        ("sol-45", "elliptic"),
        ("sol-47", "genus2"),
        ("sol-49", "genus3"),
        ("sol-51", "quartic"),
        ("sol-52", "octic"),
    ] {
        let rec = catalog().get(id).unwrap();
        let model = build_model(rec.model(name).unwrap(), rec).unwrap();
        let check = verify_model(&model, rec).unwrap();
        assert!(check.verified, "{id} {name}: {:?}", check.relations);
        assert!(!check.relations.is_empty());
    }
}

#[test]
fn broken_model_fails() {
    let rec = catalog().get("sol-45").unwrap();
    let mut block = rec.model("elliptic").unwrap().clone();
    block.maps.retain(|(n, _)| n != "v");
    assert!(build_model(&block, rec)
        .and_then(|m| verify_model(&m, rec))
        .map(|c| !c.verified)
        .unwrap_or(true));
}

#[test]
fn w1_variants() {
    let c = w1_typo_check(catalog().get("sol-45").unwrap()).unwrap();
    assert!(c.corrected_holds);
    assert!(!c.literal_holds);
}

fn plane_curve(id: &str, name: &str) -> BiPoly {
    let block = catalog().get(id).unwrap().model(name).unwrap();
    let (x, y) = block.plane.clone().unwrap();
    plane_polynomial(block.curve.as_ref().unwrap(), &x, &y).unwrap()
}

#[test]
fn octic_singularities() {
    let r = analyze_plane_singularities(&plane_curve("sol-52", "octic"), 200).unwrap();
    assert_eq!((r.degree, r.nodes, r.tacnodes, r.others), (8, 10, 2, 0));
    assert_eq!(r.total_delta, 14);
    assert_eq!(r.implied_genus, Some(7));
    let tac: Vec<_> = r
        .points
        .iter()
        .filter(|q| q.kind == PointKind::Tacnode)
        .collect();
    for q in tac {
        assert_eq!(q.delta, Some(2));
        assert!(
            q.coords[2]
                .trim_start_matches('-')
                .chars()
                .all(|c| c == '0' || c == '.'),
            "{:?}",
            q.coords
        );
    }
}

#[test]
fn quartic_is_smooth() {
    let r = analyze_plane_singularities(&plane_curve("sol-51", "quartic"), 200).unwrap();
    assert!(r.points.is_empty());
    assert_eq!(r.implied_genus, Some(3));
}

#[test]
fn crossing_lines_classified() {
    let (x, y) = (BiPoly::x(), BiPoly::y());
    let f = &(&x * &x) - &(&y * &y);
    let r = analyze_plane_singularities(&f, 128).unwrap();
    assert_eq!(r.nodes, 1);
    assert_eq!(r.others, 0);
    assert_eq!(r.implied_genus, Some(-1));
}

#[test]
fn quartic_symmetries() {
    for id in ["sol-51", "sol-50"] {
        let r = quartic_symmetry_check(catalog().get(id).unwrap()).unwrap();
        assert!(r.curve_invariant, "{id}");
        assert_eq!(r.group_order, 8, "{id}");
        assert!(r.checks[0].holds, "{id} (-p,q)");
        assert!(r.checks[1].holds, "{id} (p,-q)");
        // the swap fixes t but acts on y as t/y
        assert!(!r.checks[2].holds, "{id}");
        assert_eq!(r.checks[2].observed, vec!["(t/y,t)".to_string()], "{id}");
        assert!(!r.passed);
    }
}

#[test]
fn quartic_composite_symmetry() {
    // (1-y,1-t) followed by (y(t-1)/(t-y),1-t) is (t(y-1)/(y-t),t)
    let rec = catalog().get("sol-51").unwrap();
    let table = [
        ("(-p,-q)", [[-1, 0], [0, -1]], MobiusSymmetry::FixT3),
        ("(-q,-p)", [[0, -1], [-1, 0]], MobiusSymmetry::FixT1),
    ];
    let r = plane_symmetry_check(rec, "quartic", &table).unwrap();
    assert!(r.checks[0].holds);
    assert!(r.checks[1].holds);
    let s = &rec.solution;
    let (y1, t1) = MobiusSymmetry::OneMinus
        .apply_functions(&s.y, &s.t)
        .unwrap();
    let (y2, t2) = MobiusSymmetry::Cross.apply_functions(&y1, &t1).unwrap();
    let (y3, t3) = MobiusSymmetry::FixT3.apply_functions(&s.y, &s.t).unwrap();
    assert_eq!((y2, t2), (y3, t3));
}

fn hyperelliptic_parts(
    id: &str,
    name: &str,
) -> (
    std::sync::Arc<TowerPresentation>,
    Vec<(String, FieldElement)>,
) {
    let rec = catalog().get(id).unwrap();
    match build_model(rec.model(name).unwrap(), rec).unwrap() {
        ModelPresentation::Hyperelliptic { tower, maps, .. } => (tower, maps),
        _ => panic!("not hyperelliptic"),
    }
}

fn horner(q: &UniPoly, x: f64) -> f64 {
    q.coeffs()
        .iter()
        .rev()
        .fold(0.0, |a, c| a * x + c.to_f64().unwrap())
}

/// Evaluates `c0 + c1 z` at `j` with `z = sqrt(radicand(j))` in floating point.
fn eval_at(e: &FieldElement, j: f64, z: f64) -> f64 {
    let f = |r: &RatFunc| horner(r.num(), j) / horner(r.den(), j);
    f(e.coord(0))
        + if e.coords().len() > 1 {
            f(e.coord(1)) * z
        } else {
            0.0
        }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn degree_invariant_under_flips(
        id in prop::sample::select(vec!["seed-10", "seed-15", "seed-18", "sol-45", "sol-47", "sol-49", "sol-51"]),
        sigma in 0usize..4,
    ) {
        let s = &catalog().get(id).unwrap().solution;
        let sigma = sigma % s.tower.basis_len();
        let d = degree_of_map(&s.t).unwrap();
        prop_assert_eq!(degree_of_map(&s.t.conjugate(sigma)).unwrap(), d);
        for sym in [MobiusSymmetry::OneMinus, MobiusSymmetry::Invert, MobiusSymmetry::Scale] {
            let (_, t) = sym.apply_functions(&s.y, &s.t).unwrap();
            prop_assert_eq!(degree_of_map(&t).unwrap(), d);
        }
    }

    #[test]
    fn models_agree_numerically(j in 2.5f64..40.0, which in 0usize..3) {
        let (id, name, rels): (&str, &str, Vec<(&str, UniPoly)>) = match which {
            0 => ("sol-45", "elliptic", vec![("v", &p(&[-1, 9]) * &p(&[-1, 1])), ("w1", p(&[1, -18, 1]))]),
            1 => ("sol-47", "genus2", vec![
                ("v", prod(&[p(&[0, 1]), p(&[5, 1]), p(&[2, 1]), p(&[-3, 1])])),
                ("w", prod(&[p(&[0, 1]), p(&[5, 1]), p(&[2, 1]), p(&[3, 1])])),
            ]),
            _ => ("sol-49", "genus3", vec![
                ("v", prod(&[p(&[-2, 1]), p(&[-1, 2]), p(&[2, 1, 2])])),
                ("w1", p(&[1, -7, 1])),
            ]),
        };
        let (tw, maps) = hyperelliptic_parts(id, name);
        let r = horner(&tw.radicands()[0], j);
        prop_assume!(r > 0.0);
        let z = r.sqrt();
        let get = |n: &str| maps.iter().find(|(m, _)| m == n).map(|(_, e)| e.clone()).unwrap();
        let s = eval_at(&get("s"), j, z);
        for (g, f) in rels {
            let val = eval_at(&get(g), j, z);
            let fs = horner(&f, s);
            let scale = fs.abs().max(1.0);
            prop_assert!((val * val - fs).abs() / scale < 1e-9, "{} {}: {} vs {}", id, g, val * val, fs);
        }
    }
}
