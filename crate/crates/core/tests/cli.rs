use std::path::PathBuf;
use std::process::Command;

use hopf_partial::cli::instance::Body;
use hopf_partial::cli::{parse_instance, print_instance, run_command, InstanceFile, Resolver};
use hopf_partial::exactlin::Field;
use hopf_partial::twisted::{check_twisted, klein_family};

const Q: Field = Field::Rationals;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["hopf-partial"];
    argv.extend_from_slice(args);
    let out = run_command(argv);
    (out.code, out.output)
}

fn binary(args: &[&str], field: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hopf-partial"));
    cmd.args(args).env_remove("HOPF_PARTIAL_FIELD");
    if let Some(f) = field {
        cmd.env("HOPF_PARTIAL_FIELD", f);
    }
    let out = cmd.output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn temp(name: &str) -> String {
    std::env::temp_dir()
        .join(format!("hopf-partial-{}-{name}", std::process::id()))
        .to_string_lossy()
        .into_owned()
}

#[test]
fn klein_builtin_globalization_passes() {
    let (code, out) = run(&["klein", "--x", "1/8", "--globalize", "builtin"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("globalization.law_of_cocycles"));
    assert!(out.contains("closure.theta"));
    assert!(out.contains("extract.round_trip"));
    assert!(out.contains("summary: PASS"));
}

#[test]
fn klein_singular_parameter_is_rejected() {
    let (code, out) = run(&["klein", "--x", "3/16"]);
    assert_eq!(code, 1);
    assert!(out.contains("32x = 6"), "{out}");
    let (code, out) = run(&["klein", "--x", "-3/7"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("y = 25/138"));
}

#[test]
fn non_symmetric_sweedler_fixture_passes_with_a_note() {
    let (code, out) = run(&["check", "tpa", &fixture("sweedler_l1_c0.tpa")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("not symmetric"));
}

#[test]
fn broken_coassociativity_names_the_triple() {
    let (code, out) = run(&["verify", "hopf", &fixture("broken_coassoc.bialg")]);
    assert_eq!(code, 1);
    assert!(out.contains("coassoc"), "{out}");
    assert!(out.contains("g⊗e⊗g"), "{out}");
}

#[test]
fn builtin_addresses_verify() {
    for target in ["groupalg:K4", "dualgroupalg:S3", "sweedler", &fixture("sweedler.bialg")] {
        let (code, out) = run(&["verify", "hopf", target]);
        assert_eq!(code, 0, "{target}: {out}");
    }
}

#[test]
fn non_subgroup_support_fails() {
    let (code, out) = run(&["check", "measuring", &fixture("non_subgroup.meas")]);
    assert_eq!(code, 1);
    assert!(out.contains("[FAIL] partial_action"), "{out}");
}

#[test]
fn bad_literal_reports_line() {
    let (code, out) = run(&["check", "tpa", &fixture("bad_literal.tpa")]);
    assert_eq!(code, 2);
    assert!(out.contains("line 11"), "{out}");
    assert!(out.contains("1/0"), "{out}");
}

#[test]
fn dangling_reference_is_named() {
    let (code, out) = run(&["check", "tpa", &fixture("dangling.tpa")]);
    assert_eq!(code, 2);
    assert!(out.contains("dangling reference `G`"), "{out}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["check", "tpa", "/nonexistent/file.tpa"]).0, 2);
    assert_eq!(run(&["--field", "Fp:4", "verify", "hopf", "sweedler"]).0, 2);
}

#[test]
fn json_output_has_ids_and_statuses() {
    let (code, out) = run(&["--emit", "json", "check", "tpa", &fixture("klein_x_1_8.tpa")]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["id"] == "TPA5" && c["status"] == "pass"));

    let (code, out) = run(&["--emit", "json", "verify", "hopf", &fixture("broken_coassoc.bialg")]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let bad = v["checks"].as_array().unwrap().iter().find(|c| c["status"] == "fail").unwrap();
    assert!(bad["counterexample"].as_array().is_some_and(|c| !c.is_empty()));

    let (code, out) = run(&["--emit", "json", "check", "tpa", &fixture("bad_literal.tpa")]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["error"].as_str().unwrap().contains("line 11"));
}

#[test]
fn classification_counts() {
    for (hopf, field, count) in [("groupalg:K4", "Q", 5), ("dualgroupalg:K4", "Q", 5), ("dualgroupalg:K4", "Fp:2", 1)] {
        let (code, out) = run(&["--field", field, "classify", "measurings", "--hopf", hopf]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains(&format!("count={count}")), "{hopf} over {field}: {out}");
    }
}

#[test]
fn field_from_environment() {
    let (code, out, _) = binary(&["classify", "measurings", "--hopf", "dualgroupalg:K4"], Some("Fp:2"));
    assert_eq!(code, 0);
    assert!(out.contains("count=1"), "{out}");
    let (code, out, _) = binary(&["classify", "measurings", "--hopf", "dualgroupalg:K4"], None);
    assert_eq!(code, 0);
    assert!(out.contains("count=5"), "{out}");
}

#[test]
fn binary_exit_codes_and_streams() {
    let (code, out, _) = binary(&["check", "tpa", &fixture("klein_x_1_8.tpa")], None);
    assert_eq!(code, 0);
    assert!(out.contains("summary: PASS"));
    let (code, _, _) = binary(&["check", "measuring", &fixture("non_subgroup.meas")], None);
    assert_eq!(code, 1);
    let (code, out, err) = binary(&["check", "tpa", &fixture("dangling.tpa")], None);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("dangling"));
}

#[test]
fn output_is_deterministic() {
    // Timing lines aside, repeated runs print the same bytes.
    let strip = |s: String| s.lines().filter(|l| !l.contains("elapsed")).collect::<Vec<_>>().join("\n");
    for args in [
        vec!["--emit", "json", "classify", "measurings", "--hopf", "dualgroupalg:K4"],
        vec!["crossed-product", "--emit", "table", &fixture("klein_x_1_8.tpa")],
        vec!["klein", "--x", "1/8", "--globalize", "builtin"],
    ] {
        let (_, a, _) = binary(&args, None);
        let (_, b, _) = binary(&args, None);
        assert_eq!(strip(a), strip(b), "{args:?}");
    }
}

#[test]
fn klein_fixture_matches_the_family() {
    let file = InstanceFile::read(std::path::Path::new(&fixture("klein_x_1_8.tpa")), Q).unwrap();
    let kinds: Vec<&str> = file.sections.iter().map(|s| s.body.kind()).collect();
    assert_eq!(kinds.len(), 4);
    let name = file.sections.iter().find(|s| matches!(s.body, Body::Cocycle(_))).unwrap().name.clone();
    let d = Resolver::new(&file, Q).cocycle(&name).unwrap();
    let (family, _) = klein_family(&Q.ratio(1, 8).unwrap()).unwrap();
    assert_eq!(d.omega, family.omega);
    assert_eq!(d.omega_prime, family.omega_prime);
    assert!(check_twisted(&d).passed());
}

#[test]
fn canonical_fixtures_round_trip() {
    for name in ["sweedler.bialg", "sweedler_l1_c0.tpa", "klein_x_1_8.tpa", "k4.group"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let parsed = parse_instance(&text, Q).unwrap();
        let printed = print_instance(&parsed);
        assert_eq!(parse_instance(&printed, Q).unwrap(), parsed, "{name}");
        assert_eq!(print_instance(&parse_instance(&printed, Q).unwrap()), printed, "{name}");
    }
    for name in ["sweedler.bialg", "sweedler_l1_c0.tpa", "klein_x_1_8.tpa"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        assert_eq!(print_instance(&parse_instance(&text, Q).unwrap()), text, "{name} is not canonical");
    }
}

#[test]
fn globalize_save_then_extract() {
    let saved = temp("glob.inst");
    let (code, out) = run(&[
        "globalize",
        &fixture("klein_x_1_8.tpa"),
        "--wtil",
        &fixture("klein_wtil.map"),
        "--save",
        &saved,
    ]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = run(&["extract-wtil", &saved]);
    std::fs::remove_file(&saved).ok();
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("(p_b⊗p_b) -> (-1/2)"), "{out}");
}

#[test]
fn flipped_table_fails_equation1() {
    let (code, out) = run(&["klein", "--x", "1/8", "--globalize", &fixture("klein_flipped.map")]);
    assert_eq!(code, 1);
    assert!(out.contains("[FAIL] equations.equation1"), "{out}");
}

#[test]
fn isomorphisms() {
    for args in [
        vec!["iso", "dual", "--group", "K4", "--L", "a", "--x", "1/8"],
        vec!["iso", "group", "--group", "K4", "--L", "a,b", "--cocycle", "klein"],
    ] {
        let (code, out) = run(&args);
        assert_eq!(code, 0, "{args:?}: {out}");
    }
    let k4 = fixture("k4.group");
    let (code, out) = run(&["iso", "group", "--group", &k4, "--L", "a,b"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn crossed_product_table() {
    let (code, out) = run(&["crossed-product", "--emit", "table", &fixture("klein_x_1_8.tpa")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("dim 2") || out.contains("dim = 2"), "{out}");
}
