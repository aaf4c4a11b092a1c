//! End-to-end checks of the command surface: JSON shapes, CSV layouts,
//! exit codes, and byte determinism.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn weylgauge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylgauge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let out = weylgauge(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn cosine_potential_file(c: f64) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# cosine potential").unwrap();
    writeln!(file, "1 {c} 0").unwrap();
    file.flush().unwrap();
    file
}

#[test]
fn circle_spectrum_matches_the_closed_form() {
    let v = json_of(&[
        "spectrum", "circle", "--theta", "0.25", "--mass", "1", "--levels", "3",
    ]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["levels"][0], 0.03125);
    assert_eq!(v["levels"][1], 0.28125);
    assert_eq!(v["levels"][2], 0.78125);
    assert_eq!(v["gap"], 0.25);
    assert_eq!(v["ground_energy"], 0.03125);
}

#[test]
fn symmetry_check_reports_breaking() {
    let v = json_of(&["symmetry", "check", "--preset", "circle", "--lambda", "1/2"]);
    assert_eq!(v["broken"], true);
    assert_eq!(v["sector_shift"], "1/2");
    assert_eq!(v["witness"], "V(2π)");
    let v = json_of(&["symmetry", "check", "--preset", "circle", "--lambda", "2"]);
    assert_eq!(v["broken"], false);
    assert_eq!(v["witness"], Value::Null);
}

#[test]
fn expect_kills_intertwiners() {
    let v = json_of(&[
        "expect",
        "--preset",
        "circle",
        "--theta",
        "0",
        "--element",
        "U(1/3)",
    ]);
    assert_eq!(v["value"]["re"], 0.0);
    assert_eq!(v["value"]["im"], 0.0);
    assert_eq!(v["observable"], false);
}

#[test]
fn expect_accepts_radians() {
    // θ = π/2 radians = 0.25 turns: ω(V(2π)) = i.
    let pi_half = format!("{}", std::f64::consts::FRAC_PI_2);
    let v = json_of(&[
        "expect",
        "--preset",
        "circle",
        "--theta",
        &pi_half,
        "--radians",
        "--element",
        "V(1)",
    ]);
    assert_eq!(v["theta_turns"], 0.25);
    assert!((v["value"]["im"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn nonregularity_table_has_exact_zeros() {
    let v = json_of(&[
        "nonregularity",
        "--preset",
        "circle",
        "--theta",
        "0",
        "--element",
        "U(0)",
        "--lambdas",
        "0,1/10,1/3",
    ]);
    let table = v["table"].as_array().unwrap();
    assert_eq!(table[0]["value"]["re"], 1.0);
    assert_eq!(table[1]["value"]["re"], 0.0);
    assert_eq!(table[2]["value"]["re"], 0.0);
}

#[test]
fn ward_reports_the_obstruction() {
    let v = json_of(&[
        "ward",
        "--preset",
        "circle",
        "--theta",
        "0.25",
        "--Q",
        "U(1)+U(-1)",
    ]);
    assert_eq!(v["obstruction_holds"], true);
    for row in v["generator_shifts"].as_array().unwrap() {
        assert_eq!(row["shift"], "0");
    }
    for row in v["central_phases"].as_array().unwrap() {
        assert_eq!(row["phase_turns"], "0");
    }
}

#[test]
fn structure_show_two_body() {
    let v = json_of(&["structure", "show", "--preset", "two_body"]);
    assert_eq!(v["dims"], 2);
    assert_eq!(v["observable_u_lattice"][0]["type"], "all");
    assert_eq!(v["observable_u_lattice"][1]["type"], "zero");
    assert_eq!(v["center_generators"][0]["display"], "V_P(ξ)");
}

#[test]
fn two_body_symmetry_acts_along_the_gauge_dimension() {
    // Ad U_Q(λ) moves the center-of-mass sector.
    let v = json_of(&[
        "symmetry", "check", "--preset", "two_body", "--lambda", "1/3",
    ]);
    assert_eq!(v["broken"], true);
    assert_eq!(v["sector_shift"], "1/3");
    assert_eq!(v["witness"], "V_P(ξ)");
    // Relative-dimension elements are observable and expectation-friendly.
    let v = json_of(&[
        "expect",
        "--preset",
        "two_body",
        "--theta",
        "0.25",
        "--element",
        "V(1/2)",
    ]);
    assert_eq!(v["observable"], true);
    // The relative dimension carries p̄ = 0: ω(V_rel(ξ/2)) = 1.
    assert_eq!(v["value"]["re"], 1.0);
}

#[test]
fn bloch_spectrum_csv_layout() {
    let file = cosine_potential_file(0.05);
    let out = weylgauge(&[
        "spectrum",
        "bloch",
        "--a",
        "1",
        "--potential",
        file.path().to_str().unwrap(),
        "--theta-grid",
        "3",
        "--bands",
        "2",
        "--ntrunc",
        "8",
        "--csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta_turns,band_index,energy"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6); // 3 grid points × 2 bands
    assert!(rows[0].starts_with("0,0,"));
    assert!(rows[1].starts_with("0,1,"));
}

#[test]
fn gap_report_branches() {
    let v = json_of(&[
        "gap-report",
        "--preset",
        "circle",
        "--theta",
        "0.25",
        "--lambda",
        "1/2",
    ]);
    assert_eq!(v["broken"], true);
    assert_eq!(v["gap"], 0.25);
    assert_eq!(v["conclusion"], "SSB with gap");
    assert_eq!(v["E0"], 0.03125);

    let v = json_of(&[
        "gap-report",
        "--preset",
        "circle",
        "--theta",
        "0.25",
        "--lambda",
        "1",
    ]);
    assert_eq!(v["broken"], false);
    assert_eq!(v["conclusion"], "no breaking (inner symmetry)");

    let v = json_of(&[
        "gap-report",
        "--preset",
        "circle",
        "--theta",
        "0.5",
        "--lambda",
        "1/2",
    ]);
    assert_eq!(v["conclusion"], "SSB, degenerate sector edge");
    assert_eq!(v["gap"], 0.0);
}

#[test]
fn gap_report_with_potential_lifts_the_edge_degeneracy() {
    let file = cosine_potential_file(0.05);
    let v = json_of(&[
        "gap-report",
        "--preset",
        "bloch:a=1",
        "--theta",
        "0.5",
        "--lambda",
        "1/2",
        "--potential",
        file.path().to_str().unwrap(),
        "--ntrunc",
        "32",
    ]);
    assert_eq!(v["broken"], true);
    assert_eq!(v["conclusion"], "SSB with gap");
    let gap = v["gap"].as_f64().unwrap();
    assert!((gap - 0.1).abs() / 0.1 < 0.05, "gap = {gap}");
}

#[test]
fn input_errors_exit_2() {
    for args in [
        vec![
            "expect",
            "--preset",
            "circle",
            "--theta",
            "0",
            "--element",
            "U(0.5)",
        ],
        vec![
            "expect",
            "--preset",
            "klein",
            "--theta",
            "0",
            "--element",
            "U(1)",
        ],
        vec![
            "expect",
            "--preset",
            "bloch:a=-1",
            "--theta",
            "0",
            "--element",
            "U(1)",
        ],
        vec![
            "ward",
            "--preset",
            "circle",
            "--theta",
            "0",
            "--Q",
            "U(1/2)+U(-1/2)",
        ],
        vec!["ward", "--preset", "circle", "--theta", "0", "--Q", "U(1)"],
        vec!["symmetry", "check", "--preset", "circle", "--lambda", "0.5"],
        vec![
            "spectrum",
            "bloch",
            "--a",
            "1",
            "--potential",
            "/does/not/exist",
        ],
        vec![
            "nonregularity",
            "--preset",
            "circle",
            "--theta",
            "0",
            "--element",
            "U(1)",
            "--lambdas",
            "1/0",
        ],
    ] {
        let out = weylgauge(&args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "args {args:?} gave {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn numerical_failures_exit_3() {
    // The λ-shifted frequency label 1/4000000000 + 1/3999999999 does not
    // fit in 64-bit components: overflow during the scan, not at parse.
    let out = weylgauge(&[
        "nonregularity",
        "--preset",
        "circle",
        "--theta",
        "0",
        "--element",
        "W(1/3999999999,0)",
        "--lambdas",
        "1/4000000000",
    ]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "spectrum", "circle", "--theta", "0.37", "--mass", "1.5", "--levels", "6",
    ];
    let first = weylgauge(&args);
    let second = weylgauge(&args);
    assert_eq!(first.stdout, second.stdout);

    let file = cosine_potential_file(0.02);
    let args = [
        "spectrum",
        "bloch",
        "--a",
        "1",
        "--potential",
        file.path().to_str().unwrap(),
        "--theta-grid",
        "5",
        "--bands",
        "3",
        "--ntrunc",
        "12",
    ];
    let first = weylgauge(&args);
    let second = weylgauge(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn floats_print_with_at_most_12_significant_digits() {
    let v = json_of(&[
        "spectrum",
        "circle",
        "--theta",
        "0.1234567891234567",
        "--mass",
        "1",
        "--levels",
        "1",
    ]);
    assert_eq!(v["theta_turns"], 0.123456789123);
    let ground = v["ground_energy"].as_f64().unwrap();
    let expected: f64 = format!("{:.11e}", 0.1234567891234567_f64.powi(2) / 2.0)
        .parse()
        .unwrap();
    assert_eq!(ground, expected);
}

#[test]
fn expression_round_trip_corpus() {
    // Parse, print, reparse: the canonical form must be stable through the
    // CLI expect path for a corpus of 50 expressions.
    let corpus: Vec<String> = (1..=50)
        .map(|i| match i % 5 {
            0 => format!("U({i})+U(-{i})"),
            1 => format!("{i}*V(1/{i})"),
            2 => format!("V(1)*U(1/{i})"),
            3 => format!("(0.5+0.{i}i)*W({i},1/{i})"),
            _ => format!("W(1/{i},{i}) - W(-1/{i},-{i})"),
        })
        .collect();
    for src in &corpus {
        let v1 = json_of(&[
            "expect",
            "--preset",
            "circle",
            "--theta",
            "0.1",
            "--element",
            src,
        ]);
        let canonical = v1["element"].as_str().unwrap().to_string();
        let v2 = json_of(&[
            "expect",
            "--preset",
            "circle",
            "--theta",
            "0.1",
            "--element",
            &canonical,
        ]);
        assert_eq!(
            v1["element"], v2["element"],
            "normal form of `{src}` is not stable"
        );
        assert_eq!(v1["value"], v2["value"]);
    }
}
