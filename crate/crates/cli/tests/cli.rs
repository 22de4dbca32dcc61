use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn pvi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pvi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn catalog_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog")
}

/// Replaces timing fields, which vary between runs, by zero.
fn normalize(v: &mut Value) {
    match v {
        Value::Object(m) => {
            for (k, x) in m.iter_mut() {
                if k == "millis" {
                    *x = Value::from(0);
                } else {
                    normalize(x);
                }
            }
        }
        Value::Array(a) => a.iter_mut().for_each(normalize),
        _ => {}
    }
}

fn check_golden(name: &str, args: &[&str]) {
    let out = pvi(args);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let mut v: Value = serde_json::from_slice(&out.stdout).expect("structured output is JSON");
    normalize(&mut v);
    let text = serde_json::to_string_pretty(&v).unwrap() + "\n";
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let expected = std::fs::read_to_string(&path).expect("golden file exists");
    assert_eq!(text, expected, "structured output of {args:?} changed");
}

#[test]
fn verify_sol52_exact() {
    let out = pvi(&["verify", "sol-52", "--mode", "exact"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("genus   7"), "{text}");
    assert!(text.contains("degree  72"), "{text}");
    assert!(text.contains("residual zero"), "{text}");
}

#[test]
fn verify_sol45_both() {
    let out = pvi(&[
        "verify",
        "sol-45",
        "--mode",
        "both",
        "--format",
        "structured",
    ]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rec = &v["records"][0];
    assert_eq!(rec["id"], "sol-45");
    assert_eq!(rec["passed"], true);
    let cert = &rec["belyi"]["certificate"];
    assert_eq!(cert["degree"], 20);
    assert_eq!(cert["genus"], 1);
    assert_eq!(cert["rh_consistent"], true);
    assert_eq!(cert["precision_bits"], 200);
    for fiber in ["zero", "one", "infinity"] {
        let total: u64 = cert["profiles"][fiber]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| e.as_u64().unwrap())
            .sum();
        assert_eq!(total, 20);
    }
}

#[test]
fn verify_corrupted_record() {
    let dir = std::env::temp_dir().join(format!("pvi-corrupt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let original = std::fs::read_to_string(catalog_dir().join("seed-10.pvi")).unwrap();
    let corrupted = original.replace("(3*s^2 + 6*s - 1)", "(3*s^2 + 7*s - 1)");
    assert_ne!(corrupted, original);
    let path = dir.join("seed-10.pvi");
    std::fs::write(&path, corrupted).unwrap();
    let out = pvi(&[
        "verify",
        "--file",
        path.to_str().unwrap(),
        "--mode",
        "exact",
    ]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(code(&out), 1);
    assert!(
        stdout(&out).contains("residual NONZERO"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn verify_unparsable_record() {
    let dir = std::env::temp_dir().join(format!("pvi-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.pvi");
    std::fs::write(&path, "id bad\nvar s\nroot u^2 = s\ny = (1 + * s)\n").unwrap();
    let out = pvi(&["verify", "--file", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(code(&out), 2);
}

#[test]
fn pipeline_chain() {
    let out = pvi(&["pipeline", "seed-10", "sol-45", "sol-51"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("0 1/10 0 9/10"), "{text}");
    assert!(text.contains("1/20 1/20 1/20 19/20"), "{text}");
}

#[test]
fn pipeline_from_non_seed() {
    let out = pvi(&["pipeline", "sol-45"]);
    assert_eq!(code(&out), 2);
    assert!(
        stdout(&out).contains("not in seed form"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn usage_errors() {
    assert_eq!(code(&pvi(&["verify", "sol-45", "--tolerance", "0.1"])), 2);
    assert_eq!(
        code(&pvi(&["verify", "sol-45", "--precision-bits", "32"])),
        2
    );
    assert_eq!(code(&pvi(&["verify", "no-such-record"])), 2);
    assert_eq!(code(&pvi(&["frobnicate"])), 2);
    assert_eq!(code(&pvi(&["--help"])), 0);
    assert_eq!(
        code(&pvi(&["catalog-list", "--catalog", "/nonexistent/catalog"])),
        2
    );
}

#[test]
fn transform_with_match() {
    let out = pvi(&[
        "transform",
        "seed-15",
        "--kind",
        "folded",
        "--match",
        "sol-47",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = pvi(&[
        "transform",
        "sol-45",
        "--kind",
        "mobius",
        "--symmetry",
        "(1-y,1-t)",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(code(&pvi(&["transform", "sol-45", "--kind", "folded"])), 2);
}

#[test]
fn golden_catalog_list() {
    check_golden(
        "catalog-list.json",
        &["catalog-list", "--format", "structured"],
    );
}

#[test]
fn golden_pipeline() {
    check_golden(
        "pipeline-seed-18.json",
        &["pipeline", "seed-18", "--format", "structured"],
    );
}
