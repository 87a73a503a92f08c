use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nhmf"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn nhmf");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = run(args, stdin);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn lines(text: &str) -> Vec<Value> {
    text.lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn form(name: &str, prec: usize) -> String {
    ok(&["form", "--name", name, "--prec", &prec.to_string()], "")
}

fn expect_error(args: &[&str], stdin: &str, code: i32, kind: &str) {
    let out = run(args, stdin);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], kind);
    assert!(err["message"].is_string());
}

#[test]
fn basis_counts() {
    assert_eq!(
        lines(&ok(
            &["basis", "--weight", "4", "--degree", "2", "--prec", "30"],
            ""
        ))
        .len(),
        2
    );

    let constant = lines(&ok(
        &["basis", "--weight", "0", "--degree", "3", "--prec", "5"],
        "",
    ));
    assert_eq!(constant.len(), 1);
    assert_eq!(
        constant[0]["coeffs"],
        serde_json::json!([["1", "0", "0", "0", "0", "0"]])
    );

    let cusp = lines(&ok(
        &[
            "basis",
            "--weight",
            "12",
            "--degree",
            "0",
            "--prec",
            "20",
            "--cuspidal",
        ],
        "",
    ));
    assert_eq!(cusp.len(), 1);
    let c = &cusp[0]["coeffs"][0];
    assert_eq!(
        (c[0].as_str(), c[1].as_str(), c[2].as_str(), c[3].as_str()),
        (Some("0"), Some("1"), Some("-24"), Some("252"))
    );
}

#[test]
fn basis_truncation_error() {
    expect_error(
        &["basis", "--weight", "24", "--degree", "0", "--prec", "2"],
        "",
        2,
        "truncation_too_small",
    );
}

#[test]
fn apply_operators() {
    let lowered = lines(&ok(&["apply", "--op", "lower"], &form("e2star", 30)));
    assert_eq!(lowered[0]["weight"], 0);
    let c0 = lowered[0]["coeffs"][0].as_array().unwrap();
    assert_eq!(c0[0], "-12");
    assert!(c0[1..].iter().all(|x| x == "0"));
    assert_eq!(lowered[0]["coeffs"].as_array().unwrap().len(), 1);

    let delta = lines(&form("delta", 30));
    let cas = lines(&ok(&["apply", "--op", "casimir"], &form("delta", 30)));
    let scaled: Vec<String> = delta[0]["coeffs"][0]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| (x.as_str().unwrap().parse::<i64>().unwrap() * 30).to_string())
        .collect();
    assert_eq!(cas[0]["weight"], 12);
    assert_eq!(cas[0]["coeffs"][0], serde_json::json!(scaled));

    let raised = lines(&ok(&["apply", "--op", "raise"], &form("one", 10)));
    assert_eq!(raised[0]["weight"], 2);
    assert_eq!(raised[0]["coeffs"], serde_json::json!([]));
}

#[test]
fn apply_rejects_malformed_input() {
    expect_error(&["apply", "--op", "raise"], "{not json}\n", 3, "parse");
    expect_error(
        &["apply", "--op", "raise"],
        r#"{"weight":2,"truncation":1,"coeffs":[["1"]]}"#,
        3,
        "parse",
    );
    expect_error(&["apply", "--op", "spin"], "", 3, "parse");
}

#[test]
fn decompose_examples() {
    let square = ok(&["mul"], &(form("e2star", 30) + &form("e2star", 30)));
    let d = lines(&ok(&["decompose", "--degree", "2"], &square));
    assert_eq!(d[0]["weight"], 4);
    assert_eq!(d[0]["e2_coeff"], "12");
    let parts = d[0]["parts"].as_array().unwrap();
    assert_eq!(parts.len(), 1);
    assert_eq!(parts[0]["ell"], 4);
    assert_eq!(parts[0]["coeffs"], lines(&form("e4", 30))[0]["coeffs"][0]);

    let raised = ok(&["apply", "--op", "raise"], &form("delta", 30));
    let d = lines(&ok(&["decompose", "--degree", "1"], &raised));
    assert_eq!(d[0]["e2_coeff"], "0");
    assert_eq!(d[0]["parts"][0]["ell"], 12);
    assert_eq!(
        d[0]["parts"][0]["coeffs"],
        lines(&form("delta", 30))[0]["coeffs"][0]
    );

    expect_error(
        &["decompose", "--degree", "0"],
        &form("e2", 30),
        4,
        "not_in_space",
    );
    expect_error(
        &["decompose", "--degree", "3", "--cuspidal"],
        &form("e4", 30),
        5,
        "domain",
    );
}

#[test]
fn scalar_commands() {
    assert_eq!(ok(&["dim", "--weight", "12", "--degree", "1"], ""), "3\n");
    assert_eq!(ok(&["dim", "--weight", "-4", "--degree", "1"], ""), "0\n");
    assert_eq!(
        ok(&["pconst", "--weight", "12", "--v", "1"], ""),
        "\"12\"\n"
    );
    assert_eq!(
        ok(&["pconst", "--weight", "12", "--v", "2"], ""),
        "\"312\"\n"
    );
    expect_error(&["pconst", "--weight", "0", "--v", "1"], "", 5, "domain");

    let v = lines(&ok(&["verma", "--lambda", "0", "--depth", "20"], ""));
    assert_eq!(v[0]["singular_weights"], serde_json::json!([2]));
    assert_eq!(v[0]["relations_hold"], true);
    assert_eq!(v[0]["weights"].as_array().unwrap().len(), 21);
}

#[test]
fn e2_module_report() {
    let v = lines(&ok(&["e2module", "--depth", "10"], ""));
    assert_eq!(v[0]["match"], true);
    assert_eq!(v[0]["lower_e2_star"], "-12");
}

#[test]
fn eval_outputs_decimal_pairs() {
    let v = lines(&ok(&["eval", "--tau", "0+1i"], &form("one", 10)));
    assert_eq!(v[0], serde_json::json!(["1.00000000000000", "0"]));

    let v = lines(&ok(&["eval", "--tau", "0.3+1.2i"], &form("e4", 60)));
    let re: f64 = v[0][0].as_str().unwrap().parse().unwrap();
    let text = v[0][0].as_str().unwrap();
    let significant = text.trim_start_matches(['-', '0', '.']);
    let digits = significant.chars().filter(char::is_ascii_digit).count();
    assert!(re.is_finite() && digits == 15);

    expect_error(&["eval", "--tau", "0.3+1.2j"], &form("one", 3), 3, "parse");
    expect_error(
        &["eval", "--tau", "0.3+0.01i"],
        &form("one", 3),
        5,
        "domain",
    );
}

#[test]
fn basis_pipes_into_unit_decompositions() {
    for (k, p) in [(4, 2), (12, 1), (16, 3), (2, 1), (0, 2)] {
        let basis = ok(
            &[
                "basis",
                "--weight",
                &k.to_string(),
                "--degree",
                &p.to_string(),
                "--prec",
                "40",
            ],
            "",
        );
        let decompositions = lines(&ok(&["decompose", "--degree", &p.to_string()], &basis));
        assert_eq!(decompositions.len(), basis.lines().count());
        for d in decompositions {
            let nonzero_e2 = d["e2_coeff"] != "0";
            let parts = d["parts"].as_array().unwrap();
            assert_eq!(parts.len() + usize::from(nonzero_e2), 1, "({k},{p}): {d}");
            if nonzero_e2 {
                assert_eq!(d["e2_coeff"], "1");
            }
        }
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["basis", "--weight", "16", "--degree", "2", "--prec", "30"];
    let a = ok(&args, "");
    let b = ok(&args, "");
    assert_eq!(a, b);
    let d1 = ok(&["decompose", "--degree", "2"], &a);
    let d2 = ok(&["decompose", "--degree", "2"], &b);
    assert_eq!(d1, d2);
}

#[test]
fn split_separates_eisenstein_part() {
    let raised = ok(&["apply", "--op", "raise"], &form("e4", 30));
    let d = ok(&["decompose", "--degree", "1"], &raised);
    let s = lines(&ok(&["split"], &d));
    assert_eq!(s[0]["cuspidal"]["parts"], serde_json::json!([]));
    assert_eq!(s[0]["eisenstein"]["parts"][0]["ell"], 4);
}

#[test]
fn help_and_version_succeed() {
    assert!(run(&["--help"], "").status.success());
    assert!(run(&["--version"], "").status.success());
    expect_error(&[], "", 3, "parse");
}
