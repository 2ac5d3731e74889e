//! End-to-end tests of the command-line interface: flags, formats and
//! exit codes.

use std::process::{Command, Output};

fn maprec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maprec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn curve_prints_gamma_series() {
    let out = maprec(&[
        "curve",
        "--model",
        "bipartite",
        "--weights",
        "t4",
        "--trunc",
        "4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("gamma^2 = 1 + 3*t4 + 18*t4^2 + 135*t4^3 + 1134*t4^4"),
        "{text}"
    );
    assert!(text.contains("branch points"));
}

#[test]
fn curve_dessins_defaults() {
    let out = maprec(&["curve", "--model", "dessins"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("x = (1 + 2*z + z^2) / (z)"), "{text}");
    assert!(text.contains("y = (z) / ((z+1))"), "{text}");
}

#[test]
fn curve_rejects_odd_weight() {
    let out = maprec(&["curve", "--model", "bipartite", "--weights", "t3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("even"));
}

#[test]
fn curve_scaled_weight() {
    // t4=1/2 halves every t-linear coefficient: γ² = 1 + (3/2)t + …
    let out = maprec(&["curve", "--weights", "t4=1/2", "--trunc", "1"]);
    assert!(out.status.success());
    assert!(
        stdout(&out).contains("gamma^2 = 1 + 3/2*t4"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn omega_closed_forms() {
    let out = maprec(&[
        "omega",
        "--model",
        "bipartite",
        "--g",
        "1",
        "--n",
        "1",
        "--trunc",
        "0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for piece in [
        "-1/16 / (z1-1)^2",
        "1/4 / (z1-1)^3",
        "1/4 / (z1-1)^4",
        "1/16 / (z1+1)^2",
    ] {
        assert!(text.contains(piece), "{text}");
    }
    let out = maprec(&[
        "omega", "--model", "ordinary", "--g", "1", "--n", "1", "--trunc", "0",
    ]);
    let text = stdout(&out);
    assert!(text.contains("1/16 / (z1-1)^4"), "{text}");
    assert!(text.contains("-1/32 / (z1-1)^2"), "{text}");
}

#[test]
fn omega_unstable_names_the_alternatives() {
    let out = maprec(&["omega", "--g", "0", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("unstable"), "{err}");
    assert!(err.contains("counts"), "{err}");
}

#[test]
fn counts_golden_cell() {
    let out = maprec(&[
        "counts",
        "--model",
        "bipartite",
        "--g",
        "2",
        "--lengths",
        "2",
        "--weights",
        "t4",
        "--trunc",
        "5",
    ]);
    assert!(out.status.success());
    assert!(
        stdout(&out).contains("21*t4^4 + 966*t4^5"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn counts_disk_constant() {
    let out = maprec(&[
        "counts",
        "--model",
        "bipartite",
        "--g",
        "0",
        "--lengths",
        "2",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("T~^(0)_2"), "{}", stdout(&out));
    assert!(stdout(&out).contains("= 1"), "{}", stdout(&out));
}

#[test]
fn counts_hexagon_torus() {
    let out = maprec(&[
        "counts",
        "--model",
        "bipartite",
        "--g",
        "1",
        "--lengths",
        "6",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("= 1"), "{}", stdout(&out));
}

#[test]
fn counts_truncation_guard() {
    let out = maprec(&[
        "counts",
        "--model",
        "bipartite",
        "--g",
        "2",
        "--lengths",
        "2",
        "--weights",
        "t4",
        "--trunc",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("total degree 4"), "{}", stderr(&out));
}

#[test]
fn counts_csv_mirrors_the_table_layout() {
    let out = maprec(&[
        "counts",
        "--model",
        "bipartite",
        "--table",
        "0:2",
        "--table",
        "1:2",
        "--table",
        "2:2",
        "--weights",
        "t4",
        "--trunc",
        "5",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "order,T~^(0)_2,T~^(1)_2,T~^(2)_2");
    assert_eq!(lines[1], "0,1,0,0");
    assert_eq!(lines[5], "4,378,307,21");
    assert_eq!(lines[6], "5,2916,4280,966");
}

#[test]
fn counts_json_schema_and_determinism() {
    let args = [
        "counts",
        "--model",
        "bipartite",
        "--g",
        "1",
        "--lengths",
        "2",
        "--weights",
        "t4",
        "--trunc",
        "5",
        "--format",
        "json",
    ];
    let a = maprec(&args);
    let b = maprec(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "byte-stable output");
    let json: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(json["model"], "bipartite");
    assert_eq!(json["genus"], 1);
    assert_eq!(json["lengths"][0], 2);
    assert_eq!(json["trunc"], 5);
    // exact integer strings
    assert_eq!(json["series"][0]["coefficient"], "1");
    assert_eq!(json["series"][0]["exponents"][0], 2);
}

#[test]
fn verify_default_passes() {
    let out = maprec(&["verify", "--suite", "unstable"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("verification passed"));
}

#[test]
fn verify_golden_passes_with_documented_defect_visible() {
    let out = maprec(&["verify", "--suite", "golden"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains("[DEFECT] ordinary T^(2)_2 printed alignment"),
        "{text}"
    );
    assert!(text.contains("verification passed"), "{text}");
}

#[test]
fn verify_sign_fault_fails_with_nonzero_exit() {
    let out = maprec(&["verify", "--suite", "golden", "--inject-sign-fault"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    // the fault surfaces as a fractional low-order bipartite coefficient
    assert!(text.contains("T~^(1)_2"), "{text}");
    assert!(text.contains("verification FAILED"), "{text}");
}

#[test]
fn verify_json_is_deterministic() {
    let args = ["verify", "--suite", "unstable", "--format", "json"];
    let a = maprec(&args);
    let b = maprec(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let json: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(json["pass"], true);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("maprec-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("counts.json");
    let out = maprec(&[
        "counts",
        "--model",
        "dessins",
        "--g",
        "1",
        "--lengths",
        "6",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains("\"model\": \"dessins\""), "{written}");
    std::fs::remove_file(&path).ok();
}
