use proptest::prelude::*;
use pvi_algebra::arith::UniPoly;
use pvi_algebra::catalog::expr::{parse_expr, Expr};
use pvi_algebra::catalog::{
    default_dir, parse_record, parse_record_with, parse_source, same_source, serialize_record,
    serialize_source, Catalog, CatalogError,
};
use pvi_algebra::pvi::ThetaParams;
use std::sync::OnceLock;

fn catalog() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(|| Catalog::load(default_dir()).unwrap())
}

fn resolve(name: &str) -> Result<String, String> {
    std::fs::read_to_string(default_dir().join(name)).map_err(|e| e.to_string())
}

#[test]
fn all_records_present() {
    let ids: Vec<&str> = catalog().ids().collect();
    for id in [
        "seed-10",
        "seed-10-sibling",
        "seed-15",
        "seed-15-sibling",
        "seed-18",
        "sol-44",
        "sol-45",
        "sol-47",
        "sol-48",
        "sol-49",
        "sol-50",
        "sol-51",
        "sol-52",
    ] {
        assert!(ids.contains(&id), "{id}");
    }
}

#[test]
fn sol45_record() {
    let r = catalog().get("sol-45").unwrap();
    assert_eq!(r.expected_genus(), Some(1));
    assert_eq!(r.expected_degree(), Some(20));
    assert_eq!(r.solution.theta, ThetaParams::over([0, 1, 0, 9], 10));
    assert_eq!(r.tower().depth(), 2);
}

#[test]
fn round_trip_every_record() {
    for (id, rec) in &catalog().records {
        let text = serialize_record(rec);
        let again = parse_record_with(&text, &resolve).unwrap();
        assert!(same_source(&rec.source, &again.source), "{id}");
        assert_eq!(again.solution.y, rec.solution.y, "{id}");
        assert_eq!(again.solution.t, rec.solution.t, "{id}");
        assert_eq!(again.solution.theta, rec.solution.theta, "{id}");
        assert_eq!(
            serialize_record(&again),
            text,
            "{id}: serialization is a fixed point"
        );
    }
}

#[test]
fn sol52_long_numerator_survives() {
    let rec = catalog().get("sol-52").unwrap();
    let text = serialize_record(rec);
    assert!(text.contains("j^3 + 27*j^2 - 57*j + 79"));
    let again = parse_record_with(&text, &resolve).unwrap();
    let w = again.tower().names().iter().position(|n| n == "w").unwrap();
    let coord = again.solution.y.coord(1 << w);
    let factor = UniPoly::from_i64(&[79, -57, 27, 1]);
    assert_eq!(coord.num().gcd(&factor), factor);
    assert_eq!(coord, rec.solution.y.coord(1 << w));
}

#[test]
fn theta_rendering() {
    let text = serialize_record(catalog().get("sol-45").unwrap());
    assert!(text.lines().any(|l| l == "theta 0 1/10 0 9/10"));
}

#[test]
fn factored_radicands_stay_factored() {
    let text = serialize_record(catalog().get("sol-52").unwrap());
    assert!(text.contains("root v^2 = -(j + 1)*(6 + j^2 - 2*j)*(4*j^2 - 13*j + 19)"));
    let seed = serialize_record(catalog().get("seed-15").unwrap());
    assert!(seed.contains("include shared/seed-15.tower"));
}

const MINIMAL: &str = "id demo\nvar s\nroot u^2 = s\ntheta 0 1/5 0 1\ny = 1/2 - (3*s^2 + 6*s - 1)*u/(16*s^2)\nt = 1/2 + u*(27*s^5 - 315*s^4 - 370*s^3 + 170*s^2 - 25*s + 1)/(256*(5*s - 1)*s^3)\n";

#[test]
fn minimal_record_parses() {
    let r = parse_record(MINIMAL).unwrap();
    assert_eq!(r.id(), "demo");
    assert_eq!(
        r.solution,
        catalog().get("seed-10").unwrap().solution.clone()
    );
    let src = parse_source(MINIMAL).unwrap();
    assert!(same_source(
        &src,
        &parse_source(&serialize_source(&src)).unwrap()
    ));
}

#[test]
fn undeclared_generator_is_semantic_error() {
    let text = MINIMAL.replace("y = 1/2 - ", "y = x + 1/2 - ");
    match parse_record(&text) {
        Err(CatalogError::Semantic { line, message }) => {
            assert_eq!(line, 5);
            assert!(message.contains('x'), "{message}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn syntax_error_has_position() {
    let text = MINIMAL.replace("theta 0 1/5 0 1\n", "theta 0 1/5 0 1\ny = (1 + * s)\n");
    match parse_record(&text) {
        Err(CatalogError::Syntax(e)) => {
            assert_eq!((e.line, e.column), (5, 10), "{e}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn square_radicand_rejected() {
    let text = MINIMAL.replace("root u^2 = s", "root u^2 = 4*s^2");
    assert!(parse_record(&text).is_err());
}

#[test]
fn degenerate_solution_rejected() {
    let text = MINIMAL.replace("y = 1/2 - (3*s^2 + 6*s - 1)*u/(16*s^2)", "y = 1");
    assert!(matches!(parse_record(&text), Err(CatalogError::Pvi(_))));
}

#[test]
fn unresolved_include() {
    let text = format!("include shared/missing.tower\n{MINIMAL}");
    assert!(matches!(parse_record(&text), Err(CatalogError::Io(_))));
}

#[test]
fn expression_precedence() {
    let e = parse_expr("1 - 2 - 3").unwrap();
    assert_eq!(e.to_string(), "1 - 2 - 3");
    let e = parse_expr("2*s^2 + -s/(s - 1)").unwrap();
    assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    assert!(matches!(parse_expr("a^b"), Err(_)));
    assert!(matches!(parse_expr("-2^2").unwrap(), Expr::Neg(_)));
}

fn expr_tree() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..50).prop_map(|n| Expr::Int(n.into())),
        prop::sample::select(vec!["s", "u", "v", "w1"]).prop_map(|v| Expr::Var(v.into())),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner, 0i32..4).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printed_expressions_reparse(e in expr_tree()) {
        let text = e.to_string();
        let back = parse_expr(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn parser_never_panics(src in "[ -~\n]{0,80}") {
        let _ = parse_expr(&src);
        let _ = parse_source(&src);
        let _ = parse_record(&src);
    }

    #[test]
    fn mutated_records_never_panic(pos in 0usize..400, ch in "[ -~]") {
        let mut text = MINIMAL.to_string();
        let pos = pos % text.len();
        text.replace_range(pos..pos + 1, &ch);
        let _ = parse_record(&text);
    }
}
