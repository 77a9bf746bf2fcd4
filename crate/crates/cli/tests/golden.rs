use serde_json::Value;
use std::process::Command;

fn run(args: &[&str]) -> (i32, Vec<Value>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cremona")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines = stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    (out.status.code().unwrap(), lines, String::from_utf8(out.stderr).unwrap())
}

fn one(args: &[&str]) -> Value {
    let (code, mut lines, err) = run(args);
    assert_eq!(code, 0, "{err}");
    assert_eq!(lines.len(), 1);
    lines.pop().unwrap()
}

#[test]
fn classify_plastic_number() {
    let v = one(&["classify-number", "x^3 - x - 1"]);
    assert_eq!(v["kind"], "pisot");
    assert_eq!(v["root"].as_f64().unwrap(), 1.324718);
}

#[test]
fn classify_lehmer() {
    let v = one(&["classify-number", "x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1"]);
    assert_eq!(v["kind"], "salem");
    assert_eq!(v["root"].as_f64().unwrap(), 1.176281);
}

#[test]
fn classify_golden_ratio_squared() {
    let v = one(&["classify-number", "x^2 - 3x + 1"]);
    assert_eq!(v["kind"], "reciprocal_quadratic");
    assert_eq!(v["root"].as_f64().unwrap(), 2.618034);
}

#[test]
fn parse_error_has_position_and_exit_2() {
    let (code, lines, err) = run(&["classify-number", "x^3 - "]);
    assert_eq!(code, 2);
    assert!(lines.is_empty());
    assert!(err.contains("position 6"), "{err}");
}

#[test]
fn bad_word_exit_2() {
    let (code, _, err) = run(&["weyl-eval", "q(p1,p2"]);
    assert_eq!(code, 2);
    assert!(err.contains("position"), "{err}");
}

#[test]
fn unknown_subcommand_exit_2() {
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn weyl_eval_quadratic() {
    let v = one(&["weyl-eval", "q(p1,p2,p3)"]);
    assert_eq!(v["degree"], "2");
    assert_eq!(v["image_e0"], "2*e0 - e(p1) - e(p2) - e(p3)");
    assert_eq!(v["noether"]["applicable"], true);
    assert!(v["noether"]["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
}

#[test]
fn weyl_eval_class() {
    let v = one(&["weyl-eval", "q(p1,p2,p3)", "--class", "e(p1)"]);
    assert_eq!(v["class_image"], "e0 - e(p2) - e(p3)");
}

#[test]
fn weyl_normalize_keeps_image() {
    let v = one(&["weyl-normalize", "q(p1,p2,p3)*q(p1,p4,p5)", "--class", "e0"]);
    assert_eq!(v["same_image"], true);
    let degs: Vec<i64> = v["partial_degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.as_str().unwrap().parse().unwrap())
        .collect();
    assert!(degs.windows(2).all(|w| w[0] <= w[1]), "{degs:?}");
}

#[test]
fn spectrum_elliptic() {
    let v = one(&["spectrum", "q(p1,p2,p3)"]);
    assert_eq!(v["kind"], "elliptic");
    assert_eq!(v["lambda"].as_f64().unwrap(), 1.0);
}

#[test]
fn spectrum_loxodromic() {
    let v = one(&["spectrum", "s(p1 p2 p3 p4 p5 p6 p7 p8 p9 p10)*q(p1,p2,p3)"]);
    assert_eq!(v["kind"], "loxodromic");
    let l = v["lambda"].as_f64().unwrap();
    assert!((l - 1.176280818259917).abs() < 1e-9, "{l}");
}

#[test]
fn reduce_instance_emits_header_steps_and_verification() {
    let (code, lines, err) = run(&["reduce", "--seed", "3", "--pairs", "4"]);
    assert_eq!(code, 0, "{err}");
    assert!(lines.len() >= 3);
    assert!(lines[0].get("instance").is_some());
    assert!(lines[1].get("threshold").is_some());
    for s in &lines[2..lines.len() - 1] {
        assert_eq!(s["conjugation_verified"], true);
    }
    let last = lines.last().unwrap();
    assert_eq!(last["conjugation_verified"], true);
}

#[test]
fn reduce_non_loxodromic_exit_1() {
    let (code, lines, _) = run(&["reduce", "q(p1,p2,p3)"]);
    assert_eq!(code, 1);
    assert!(lines.is_empty());
}

const GENERAL: &str = r#"{"points":[{"name":"p1","coords":[0,0,1]},{"name":"p2","coords":[1,0,1]},
{"name":"p3","coords":[0,1,1]},{"name":"p4","coords":[2,3,1]},{"name":"p5","coords":[5,7,1]}]}"#;

const COLLINEAR: &str = r#"{"points":[{"name":"p1","coords":[0,0,1]},{"name":"p2","coords":[1,0,1]},
{"name":"p3","coords":[2,0,1]},{"name":"p4","coords":[3,0,1]},{"name":"p5","coords":[5,7,1]}]}"#;

#[test]
fn realizable_general_position() {
    let v = one(&["realizable", "--config", GENERAL]);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["m"], 3);
}

#[test]
fn realizable_collinear_fails() {
    let v = one(&["realizable", "--config", COLLINEAR]);
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["condition"], 3);
}

#[test]
fn realizable_bad_json_exit_2() {
    assert_eq!(run(&["realizable", "--config", "{\"points\": 3}"]).0, 2);
}

#[test]
fn fk_spectrum_table() {
    let v = one(&["fk-spectrum", "--m", "5", "--kmax", "12"]);
    let table = v["table"].as_array().unwrap();
    assert_eq!(table.len(), 11);
    assert_eq!(table[0]["k"], 2);
    // limit is the root of x² - 4x + 1
    assert!((v["leading_block_root"].as_f64().unwrap() - (2.0 + 3f64.sqrt())).abs() < 1e-12);
    let last = table.last().unwrap()["lambda"].as_f64().unwrap();
    assert!((last - (2.0 + 3f64.sqrt())).abs() < 1e-3, "{last}");
}

#[test]
fn fk_spectrum_m2_does_not_reach_stated_limit() {
    let v = one(&["fk-spectrum", "--m", "2", "--kmax", "10"]);
    assert!((v["stated_limit"].as_f64().unwrap() - 2.618034).abs() < 1e-6);
    let last = v["table"].as_array().unwrap().last().unwrap()["lambda"].as_f64().unwrap();
    assert!((last - 2.618034).abs() > 1.0, "{last}");
}

#[test]
fn degseq_sigma_cancels() {
    let v = one(&["degseq", "--map", "sigma", "-n", "2"]);
    assert_eq!(v["degrees"], serde_json::json!([2, 1]));
    assert_eq!(v["cancelled"], serde_json::json!([3]));
}

#[test]
fn degseq_henon_both_fields() {
    for field in [&[][..], &["--prime"][..]] {
        let mut args = vec!["degseq", "--map", "henon(3)", "-n", "4"];
        args.extend_from_slice(field);
        let v = one(&args);
        assert_eq!(v["degrees"], serde_json::json!([3, 9, 27, 81]));
    }
}

#[test]
fn degseq_explicit_triple() {
    let v = one(&["degseq", "--map", "[x^2 : x*y : y^2 + x*z]", "-n", "3"]);
    assert_eq!(v["degrees"].as_array().unwrap().len(), 3);
}

#[test]
fn degseq_not_homogeneous_exit_2() {
    assert_eq!(run(&["degseq", "--map", "[x^2 : y : z]", "-n", "2"]).0, 2);
}

#[test]
fn degseq_monomial() {
    let v = one(&["degseq", "--monomial", "1,1,1,2", "-n", "4"]);
    assert_eq!(v["degrees"], serde_json::json!(["3", "8", "21", "55"]));
}

#[test]
fn degseq_monomial_not_unimodular_exit_1() {
    assert_eq!(run(&["degseq", "--monomial", "2,0,0,1", "-n", "3"]).0, 1);
}

#[test]
fn bounds_for_large_lambda() {
    let v = one(&["bounds", "--lambda", "1e6", "--degrees", "3,5"]);
    let mc = v["mcdeg_bound"].as_f64().unwrap();
    assert!((mc / 4.7e33 - 1.0).abs() < 1e-12);
    assert_eq!(v["loxodromy_constant"], "1162261467");
}

#[test]
fn bounds_bad_degrees_exit_2() {
    assert_eq!(run(&["bounds", "--degrees", "3"]).0, 2);
}

#[test]
fn salem_enumeration_small() {
    let v = one(&["salem-enum", "--degree", "10", "--bound", "1.18"]);
    assert_eq!(v["count"], 1);
    let v = one(&["salem-enum", "--degree", "4", "--bound", "1.7"]);
    assert_eq!(v["count"], 0);
}
