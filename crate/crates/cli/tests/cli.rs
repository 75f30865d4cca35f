use std::process::{Command, Output};

fn abszeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abszeta"))
        .args(args)
        .env_remove("ABSZETA_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok_line(args: &[&str]) -> String {
    let out = abszeta(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
    stdout(&out).trim_end().to_string()
}

#[test]
fn documented_examples() {
    assert_eq!(ok_line(&["zeta", "gl:3"]), "(s-8)(s-7)(s-3)/((s-9)(s-5)(s-4))");
    assert_eq!(ok_line(&["product", "gl:2", "--N", "2", "--K", "inf"]), "(s-3)/(s-4)");
    assert_eq!(ok_line(&["rationality", "gm^3", "--N", "2"]), "not rational (gamma factors remain)");
}

#[test]
fn zeta_from_raw_polynomial_and_rank_flag() {
    assert_eq!(ok_line(&["zeta", "x^3 - x"]), "(s-1)/(s-3)");
    assert_eq!(ok_line(&["zeta", "sl", "--r", "2"]), "(s-1)/(s-3)");
    assert_eq!(ok_line(&["zeta", "x^-1 - 2"]), "s^2/(s+1)");
    assert_eq!(ok_line(&["zeta", "x^{-1} - 2"]), "s^2/(s+1)");
    assert_eq!(ok_line(&["zeta", "gl:2", "--format", "latex"]), r"\frac{(s-3)(s-2)}{(s-4)(s-1)}");
}

#[test]
fn finite_and_infinite_products() {
    assert_eq!(ok_line(&["product", "gl:2", "--N", "1", "--K", "0"]), ok_line(&["zeta", "gl:2"]));
    assert_eq!(ok_line(&["product", "gl:2", "--N", "2", "--K", "3"]), "(s-3)(s+4)/((s-4)(s+5))");
    assert_eq!(ok_line(&["product", "gl:2", "--K", "inf"]), "(s-2)/(s-4)");
    assert_eq!(
        ok_line(&["product", "gl:2", "--N", "3", "--K", "inf"]),
        "Γ((s-1)/3)Γ((s-4)/3)/(Γ((s-2)/3)Γ((s-3)/3))"
    );
}

#[test]
fn numeric_value_at_point() {
    let text = ok_line(&["product", "gl:2", "--N", "2", "--K", "inf", "--s", "6"]);
    let value: f64 = text.lines().nth(1).unwrap().rsplit(": ").next().unwrap().parse().unwrap();
    assert!((value - 1.5).abs() < 1e-12, "{text}");
    let json = ok_line(&["zeta", "gl:3", "--s", "10,0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!((v["value"]["re"].as_f64().unwrap() - 1.4).abs() < 1e-12);
}

#[test]
fn verdict_commands() {
    assert_eq!(ok_line(&["convergence", "gl:2"]), "converges");
    assert_eq!(ok_line(&["convergence", "gm^1"]), "diverges (f(1) = 0, f'(1) = 1)");
    assert_eq!(ok_line(&["rationality", "gl:2", "--N", "1"]), "rational: (s-2)/(s-4)");
    assert_eq!(ok_line(&["fe", "gl:2", "--N", "2", "--K", "inf"]), "Z(7-s) = Z(s)^-1");
    assert!(ok_line(&["fe", "gl:2", "--N", "1", "--K", "3"]).lines().any(|l| l == "Z(2-s) = Z(s)"));
    assert_eq!(ok_line(&["fe", "gm^2", "--N", "1", "--K", "inf"]), ok_line(&["fe", "x^2 - x"]));
    assert_eq!(ok_line(&["automorphy", "gl:2"]), "C = +1, D = 5");
    assert_eq!(ok_line(&["automorphy", "gl:2", "--N", "1"]), "C = -1, D = 6");
    assert_eq!(ok_line(&["automorphy", "x^2 + 2x"]), "none");
}

#[test]
fn json_is_deterministic_and_parseable() {
    let args = ["product", "gl:2", "--N", "3", "--K", "inf", "--format", "json"];
    let a = ok_line(&args);
    assert_eq!(a, ok_line(&args));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["N"], 3);
    assert_eq!(v["K"], "inf");
}

#[test]
fn catalog_listing() {
    let text = ok_line(&["catalog", "--r", "2"]);
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().any(|l| l.starts_with("gl:2") && l.ends_with("x^4 - x^3 - x^2 + x")));
}

#[test]
fn usage_errors_exit_2_and_name_the_token() {
    let out = abszeta(&["zeta", "x^2 + 3y"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("3y"), "{}", stderr(&out));

    let out = abszeta(&["product", "gl:2", "--K", "many"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("many"));

    let out = abszeta(&["zeta", "gl:0"]);
    assert_eq!(out.status.code(), Some(2));

    let out = abszeta(&["verify", "bogus-suite"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bogus-suite"));

    let out = abszeta(&["--tol", "bogus=1", "zeta", "gl:1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn divergent_infinite_product_is_a_failure() {
    let out = abszeta(&["product", "gm^1", "--K", "inf"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("diverges"));
}

#[test]
fn tolerance_override_can_fail_a_suite() {
    let out = Command::new(env!("CARGO_BIN_EXE_abszeta"))
        .args(["verify", "telescoping"])
        .env("ABSZETA_TOL", "partial_product=1e-9")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL") && text.contains("lhs:") && text.contains("rhs:"), "{text}");
}

#[test]
fn verify_all_passes() {
    let out = abszeta(&["verify", "all"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.trim_end().ends_with(", 0 failed"));
}
