use std::process::Command;

fn fpp(args: &[&str], catalog_env: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fpp"));
    cmd.args(args).env_remove("FPP_CATALOG");
    if let Some(c) = catalog_env {
        cmd.env("FPP_CATALOG", c);
    }
    let out = cmd.output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let (code, out, err) = fpp(&["classify", "--frobnicate"], None);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("Usage"), "{err}");
}

#[test]
fn malformed_catalog_is_a_schema_error() {
    let dir = std::env::temp_dir().join(format!("fpp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let (code, out, _) = fpp(&["classify", "--catalog", path.to_str().unwrap()], None);
    assert_eq!(code, 1);
    assert!(out.contains("\"usage_error\""), "{out}");
    let (code, ..) = fpp(
        &["validate", "--catalog", "/nonexistent/catalog.json"],
        None,
    );
    assert_eq!(code, 1);
}

#[test]
fn env_catalog_is_used_and_flag_wins() {
    let (code, out, _) = fpp(&["classify"], Some(&fixture("wrong_chi.json")));
    assert_eq!(code, 2);
    assert!(out.contains("C20: chi_lambda"), "{out}");
    let default = format!("{}/../core/data/catalog.json", env!("CARGO_MANIFEST_DIR"));
    let (code, ..) = fpp(
        &["classify", "--catalog", &default],
        Some(&fixture("wrong_chi.json")),
    );
    assert_eq!(code, 0);
}

#[test]
fn queries_succeed() {
    assert_eq!(fpp(&["lvalue", "--disc", "5", "--n", "2"], None).0, 0);
    assert_eq!(fpp(&["lvalue", "--disc", "20", "--n", "2"], None).0, 1);
    assert_eq!(
        fpp(&["cubes", "--field", "Q(sqrt-5)", "--s", "2"], None).0,
        1
    );
    assert_eq!(fpp(&["chi", "--pair", "C99", "--T", "v0"], None).0, 1);
    let (code, out, _) = fpp(&["chi", "--pair", "C20", "--T", "v0", "--decimal"], None);
    assert_eq!(code, 0);
    assert!(
        out.contains("\"chi_lambda_decimal\": \"~0.428571428571\""),
        "{out}"
    );
}

#[test]
fn certify_exit_codes() {
    assert_eq!(
        fpp(&["certify", "--class", "(7,2)/2+5/5:nonhyp/1"], None).0,
        0
    );
    assert_eq!(
        fpp(&["certify", "--class", "(7,2)/2+3/3:iwahori"], None).0,
        2
    );
    assert_eq!(fpp(&["certify", "--class", "nonsense"], None).0, 1);
}
