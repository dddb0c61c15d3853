use std::process::Command;

use loghyper_cli::SpecialValueRecord;

fn loghyper(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_loghyper"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn special_value_json() {
    let (code, out, _) = loghyper(&[
        "special-value",
        "--p",
        "7",
        "--N",
        "3",
        "--i",
        "1",
        "--j",
        "1",
        "--k",
        "3",
        "--json",
    ]);
    assert_eq!(code, 0);
    let record: SpecialValueRecord = serde_json::from_str(out.trim()).unwrap();
    assert_eq!((record.modulus, record.value), (2401, 290));
    assert!(record.stable && record.h_unit_ok);
    assert_eq!(serde_json::to_string(&record).unwrap(), out.trim());
}

#[test]
fn invalid_tuple_is_a_usage_error() {
    let (code, _, err) = loghyper(&[
        "special-value",
        "--p",
        "7",
        "--N",
        "3",
        "--i",
        "2",
        "--j",
        "2",
        "--k",
        "3",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("exceeds k"), "{err}");
    let (code, _, err) = loghyper(&[
        "special-value",
        "--p",
        "7",
        "--N",
        "4",
        "--i",
        "1",
        "--j",
        "1",
        "--k",
        "2",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("divide"), "{err}");
    let (code, _, _) = loghyper(&["table", "--paper", "--p", "5"]);
    assert_eq!(code, 2);
}

#[test]
fn undefined_value_exit_code() {
    let (code, _, err) = loghyper(&[
        "special-value",
        "--p",
        "7",
        "--N",
        "2",
        "--i",
        "1",
        "--j",
        "1",
        "--k",
        "2",
        "--alpha",
        "-1",
    ]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn table_csv_and_json() {
    let (code, csv, _) = loghyper(&["table", "--p", "5", "--N", "4", "--prec", "2"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "p,N,i,j,k,modulus,value");
    assert_eq!(lines.len(), 7);
    assert!(lines.contains(&"5,4,1,1,3,25,6"));

    let (code, json, _) = loghyper(&[
        "table",
        "--p",
        "5",
        "--N",
        "4",
        "--prec",
        "2",
        "--format",
        "json",
        "--threads",
        "1",
    ]);
    assert_eq!(code, 0);
    let rows: Vec<serde_json::Value> = json.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[1]["value"], 6);

    let (_, again, _) = loghyper(&["table", "--p", "5", "--N", "4", "--prec", "2", "--threads", "1"]);
    assert_eq!(again, csv);
}

#[test]
fn verify_suites() {
    let (code, out, _) = loghyper(&["verify", "--suite", "log", "--p", "5", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS log")).count(), 9);
    let (code, out, _) = loghyper(&["verify", "--suite", "dwork", "--p", "3", "--n", "2", "--json"]);
    assert_eq!(code, 0);
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["failures"].as_array().unwrap().is_empty());
    }
    let (code, out, _) = loghyper(&["verify", "--suite", "log", "--p", "2", "--n", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("2^(n-1)"));
    let (code, _, _) = loghyper(&["verify", "--suite", "nope", "--p", "5"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_custom_corpus() {
    let dir = std::env::temp_dir().join(format!("loghyper-corpus-{}", std::process::id()));
    std::fs::write(&dir, "# two sets\n1/3,2/3;1\n\n1/2,1/2;1\n").unwrap();
    let (code, out, err) = loghyper(&[
        "verify",
        "--suite",
        "ratio",
        "--p",
        "7",
        "--corpus",
        dir.to_str().unwrap(),
    ]);
    std::fs::remove_file(&dir).ok();
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 2);
}

#[test]
fn curve_output() {
    let (code, out, _) = loghyper(&["curve", "--N", "2", "--i", "1", "--p", "5"]);
    assert_eq!(code, 0, "{out}");
    for name in ["G:", "E1:", "E2:", "eps1:", "eps2:"] {
        assert!(out.lines().any(|l| l == name), "{name}");
    }
    assert!(out.contains("PASS endpoint_vanishing"));
    assert!(!out.contains("FAIL"));

    let (code, out, _) = loghyper(&["curve", "--N", "3", "--i", "1", "--p", "5", "--terms", "8"]);
    assert_eq!(code, 0);
    assert!(out.contains("skip endpoint_vanishing"));
    let (code, _, _) = loghyper(&["curve", "--N", "3", "--i", "1", "--p", "5", "--check", "endpoint"]);
    assert_eq!(code, 2);
}

#[test]
fn utilities() {
    let (code, out, _) = loghyper(&["psi", "--p", "5", "--z", "1/3", "--prec", "4"]);
    assert_eq!(code, 0);
    let (_, shifted, _) = loghyper(&["psi", "--p", "5", "--z", "626/3", "--prec", "4"]);
    assert_eq!(out, shifted);

    let (code, out, _) = loghyper(&["dwork-prime", "--p", "5", "--a", "1/3", "--iters", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1/3\n2/3\n1/3\npreperiod 0 period 2\n");
    let (code, _, _) = loghyper(&["dwork-prime", "--p", "5", "--a", "1/5"]);
    assert_eq!(code, 2);
}
