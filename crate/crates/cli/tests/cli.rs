//! End-to-end checks of the `aklt` binary: golden output bytes, JSON shape,
//! exit codes, and byte-level reproducibility of repeated invocations.

use std::process::{Command, Output};

fn aklt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aklt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

#[test]
fn table_prints_golden_csv() {
    let out = aklt(&["table", "--lmax", "3"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "L,E,dev\n\
         1,1.098612,0.405465\n\
         2,0.587787,-0.105361\n\
         3,0.730888,0.037740\n"
    );
    let err = stderr(&out);
    assert!(err.contains("# command=table"), "parameters go to stderr: {err}");
    assert!(err.contains("# lmax=3"));
    assert!(err.contains("# seed=20260817"), "default seed is fixed: {err}");
}

#[test]
fn table_precision_flag_widens_output() {
    let out = aklt(&["table", "--lmax", "1", "--precision", "10"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "L,E,dev\n1,1.0986122887,0.4054651081\n");
}

#[test]
fn json_output_is_one_object_with_typed_rows() {
    let out = aklt(&["table", "--lmax", "2", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    let object = value.as_object().expect("top level is an object");
    let mut keys: Vec<&str> = object.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["command", "metadata", "parameters", "rows"]);
    assert_eq!(object["command"], "table");
    assert_eq!(object["parameters"]["lmax"], "2");
    assert_eq!(object["metadata"]["seed"], "20260817");
    let rows = object["rows"].as_array().expect("rows is an array");
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["L"], 1);
    assert_eq!(rows[1]["L"], 2);
    let e1 = rows[0]["E"].as_f64().expect("E is numeric");
    assert!((e1 - 1.098612).abs() < 1e-9, "rounded to precision: {e1}");
}

#[test]
fn repeated_invocations_are_byte_identical() {
    for args in [
        vec!["entanglement", "-L", "3", "--method", "maximize"],
        vec!["verify", "-N", "4", "--bc", "obc"],
        vec!["sweep", "--quantity", "entropy", "--lmax", "8"],
    ] {
        let first = aklt(&args);
        let second = aklt(&args);
        assert_eq!(first.status, second.status, "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.stderr, second.stderr, "{args:?}");
    }
}

#[test]
fn seed_flag_lands_in_metadata_without_changing_closed_forms() {
    let default = aklt(&["table", "--lmax", "4"]);
    let seeded = aklt(&["table", "--lmax", "4", "--seed", "7"]);
    assert_eq!(default.stdout, seeded.stdout, "table values are closed-form");
    assert!(stderr(&seeded).contains("# seed=7"));
}

#[test]
fn norm_large_chain_flags_displayed_zero() {
    let out = aklt(&["norm", "-N", "300"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "N,bc,norm,log_norm,underflow\n300,obc,0.000000,-86.304622,1\n"
    );
}

#[test]
fn norm_one_site_ring_is_a_true_zero() {
    let out = aklt(&["norm", "-N", "1", "--bc", "pbc"]);
    assert!(out.status.success());
    // An exact zero is not an underflow: the log-norm is -inf, not recoverable.
    assert_eq!(
        stdout(&out),
        "N,bc,norm,log_norm,underflow\n1,pbc,0.000000,-inf,0\n"
    );
}

#[test]
fn entropy_saturates_at_two_bits() {
    let out = aklt(&["entropy", "-L", "50", "--base", "bit"]);
    assert!(out.status.success());
    let body = stdout(&out);
    let row = body.lines().nth(1).expect("one data row");
    assert!(row.starts_with("50,bit,2.000000,"), "row: {row}");
}

#[test]
fn entropy_two_site_block_eigenvalues() {
    let out = aklt(&["entropy", "-L", "2"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "L,base,entropy,p0,p1,p2,p3\n2,nat,1.368922,0.333333,0.222222,0.222222,0.222222\n"
    );
}

#[test]
fn entropy_verbose_reports_the_variant_combination() {
    let out = aklt(&["entropy", "-L", "1", "--verbose"]);
    assert!(out.status.success());
    let err = stderr(&out);
    assert!(
        err.contains("# note: sign-flipped base-2 combination at L=1: 2.415037"),
        "note: {err}"
    );
}

#[test]
fn correlator_prints_value_and_forward_ratio() {
    let out = aklt(&["correlator", "-L", "3"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "L,correlator,ratio\n3,0.444444,-0.333333\n"
    );
}

#[test]
fn spectrum_prints_the_four_eigenpairs() {
    let out = aklt(&["spectrum"]);
    assert!(out.status.success());
    let body = stdout(&out);
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(lines.len(), 5, "header plus four rows: {body}");
    assert_eq!(lines[0], "index,eigenvalue,v0,v1,v2,v3");
    assert_eq!(lines[1], "0,0.750000,0.707107,0.000000,0.000000,0.707107");
    for row in &lines[2..] {
        assert!(row.contains(",-0.250000,"), "degenerate level: {row}");
    }
}

#[test]
fn sweep_correlator_ratio_is_exact() {
    let out = aklt(&["sweep", "--quantity", "correlator", "--lmax", "6"]);
    assert!(out.status.success());
    let body = stdout(&out);
    assert_eq!(
        body.lines().next().unwrap(),
        "L,value,deviation,ratio"
    );
    for row in body.lines().skip(2) {
        let ratio = row.rsplit(',').next().unwrap();
        assert_eq!(ratio, "-0.333333", "row: {row}");
    }
}

#[test]
fn verify_small_open_chain_passes_every_clause() {
    let out = aklt(&["verify", "-N", "4", "--bc", "obc"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let body = stdout(&out);
    assert!(!body.contains(",fail,"), "no clause fails: {body}");
    for clause in [
        "norm,pass",
        "amplitudes,pass",
        "ground_energy,pass",
        "ground_residual,pass",
        "gap,pass",
        "degeneracy,pass",
        "rdm,pass",
        "geom_lambda_sq,pass",
        "overlap_paths,pass",
        "correlator,pass",
    ] {
        assert!(body.contains(clause), "missing {clause}: {body}");
    }
}

#[test]
fn verify_six_site_ring_matches_the_two_site_block_value() {
    let out = aklt(&["verify", "-N", "6", "--bc", "pbc", "-L", "2"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let body = stdout(&out);
    let row = body
        .lines()
        .find(|line| line.starts_with("geom_per_block,"))
        .expect("per-block clause present");
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[1], "pass", "row: {row}");
    assert_eq!(fields[3], "0.587787", "reference value: {row}");
}

#[test]
fn verify_exit_codes() {
    // Oversized request: capacity error before any clause runs.
    let out = aklt(&["verify", "-N", "99"]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("capacity"));

    // Block length must divide the chain.
    let out = aklt(&["verify", "-N", "5", "--bc", "obc", "-L", "2"]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));

    // Unknown enum value is a usage error.
    let out = aklt(&["verify", "-N", "4", "--bc", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));

    // Window of one site has no two ends.
    let out = aklt(&["correlator", "-L", "1"]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));

    // A sweep needs at least two rows to form a ratio.
    let out = aklt(&["sweep", "--quantity", "geoment", "--lmax", "1"]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
}

#[test]
fn one_site_ring_verifies_as_the_zero_state() {
    let out = aklt(&["verify", "-N", "1", "--bc", "pbc"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let body = stdout(&out);
    assert!(body.contains("norm,pass,0.000000,0.000000"), "body: {body}");
    assert!(!body.contains(",fail,"), "nothing to fail: {body}");
    assert!(body.contains("rdm,skip"), "state clauses skip: {body}");
}
