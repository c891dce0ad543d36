//! End-to-end runs of the `tcm-lab` binary.

use std::process::{Command, Output};

use tcm_lab::sweep::CSV_HEADER;

fn tcm_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tcm-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// Rows of a CSV document keyed by header column.
fn csv_rows(text: &str) -> Vec<Vec<(String, String)>> {
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').map(str::to_owned).collect();
    lines
        .map(|line| header.iter().cloned().zip(line.split(',').map(str::to_owned)).collect())
        .collect()
}

fn field(row: &[(String, String)], name: &str) -> String {
    row.iter()
        .find(|(k, _)| k == name)
        .unwrap_or_else(|| panic!("no column {name}"))
        .1
        .clone()
}

fn number(row: &[(String, String)], name: &str) -> f64 {
    field(row, name)
        .parse()
        .unwrap_or_else(|_| panic!("column {name} not numeric"))
}

#[test]
fn north_pole_point_as_json() {
    let out = tcm_lab(&[
        "point",
        "--n-atoms",
        "20",
        "--delta",
        "0.2",
        "--gamma",
        "0.5",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let record: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(record["lambda_proj"], -10.0);
    assert_eq!(record["lambda_exact"], -10.0);
    assert!((record["e_proj"].as_f64().unwrap() + 0.4).abs() < 1e-12);
    assert!((record["e_exact"].as_f64().unwrap() + 0.4).abs() < 1e-12);
    assert!((record["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn single_atom_resonant_point() {
    let out = tcm_lab(&["point", "--n-atoms", "1", "--delta", "0", "--gamma", "0.5"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 1);
    assert_eq!(field(&rows[0], "lambda_exact"), "-0.5");
    assert!((number(&rows[0], "e_exact") + 0.5).abs() < 1e-12);
}

#[test]
fn just_past_the_separatrix_fidelity_stays_high() {
    let out = tcm_lab(&["point", "--n-atoms", "20", "--delta", "0.2", "--gamma", "0.95"]);
    assert!(out.status.success());
    let f = number(&csv_rows(&stdout(&out))[0], "fidelity");
    assert!((0.99..=1.0).contains(&f), "{f}");
}

#[test]
fn usage_errors_exit_with_two_and_name_the_flag() {
    let out = tcm_lab(&[
        "point",
        "--n-atoms",
        "20",
        "--delta",
        "0.2",
        "--omega-a",
        "0.8",
        "--gamma",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = tcm_lab(&["point", "--n-atoms", "0", "--delta", "0.2", "--gamma", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--n-atoms"));
    let out = tcm_lab(&["point", "--n-atoms", "4", "--delta", "0.2", "--gamma", "inf"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tcm_lab(&[
        "sweep",
        "--n-atoms",
        "4",
        "--delta",
        "0.2",
        "--gamma-min",
        "0",
        "--gamma-max",
        "1",
        "--gamma-steps",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--gamma"));
    let out = tcm_lab(&["spectrum", "--n-atoms", "4", "--delta", "1", "--gamma", "0", "--k", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tcm_lab(&["grid", "--n-atoms", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_output_is_byte_deterministic() {
    let args = [
        "sweep",
        "--n-atoms",
        "20",
        "--delta",
        "0.2",
        "--gamma-min",
        "0",
        "--gamma-max",
        "2",
        "--gamma-steps",
        "41",
    ];
    let a = tcm_lab(&args);
    let b = tcm_lab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let rows = csv_rows(&stdout(&a));
    assert_eq!(rows.len(), 41);
    let gammas: Vec<f64> = rows.iter().map(|r| number(r, "gamma")).collect();
    assert!(gammas.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(gammas[0], 0.0);
    assert_eq!(gammas[40], 2.0);
}

#[test]
fn north_pole_sweep_has_no_photons() {
    let out = tcm_lab(&[
        "sweep",
        "--n-atoms",
        "20",
        "--delta",
        "0.2",
        "--gamma-min",
        "0",
        "--gamma-max",
        "0.5",
        "--gamma-steps",
        "11",
    ]);
    for row in csv_rows(&stdout(&out)) {
        assert_eq!(number(&row, "n_mean_proj"), 0.0);
        assert!(number(&row, "n_mean_exact").abs() < 1e-12);
        assert!((number(&row, "fidelity") - 1.0).abs() < 1e-12);
    }
}

#[test]
fn output_flag_writes_the_same_bytes() {
    let dir = std::env::temp_dir().join(format!("tcm-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("point.csv");
    let args = ["point", "--n-atoms", "6", "--omega-a", "0.3", "--gamma", "1.2"];
    let direct = tcm_lab(&args);
    let mut with_file = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    let out = tcm_lab(&with_file);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn projected_only_grid_matches_full_grid_columns() {
    let grid = [
        "grid",
        "--n-atoms",
        "8",
        "--delta-min",
        "-2",
        "--delta-max",
        "4",
        "--delta-steps",
        "5",
        "--gamma-min",
        "-5",
        "--gamma-max",
        "5",
        "--gamma-steps",
        "7",
    ];
    let full = csv_rows(&stdout(&tcm_lab(&grid)));
    let mut fast_args = grid.to_vec();
    fast_args.push("--projected-only");
    let fast = csv_rows(&stdout(&tcm_lab(&fast_args)));
    assert_eq!(full.len(), 35);
    assert_eq!(fast.len(), 35);
    for (a, b) in full.iter().zip(&fast) {
        for (key, value) in b {
            if key.ends_with("_exact") || key == "fidelity" {
                assert_eq!(value, "", "{key} should be empty");
            } else {
                assert_eq!(value, &field(a, key), "{key}");
            }
        }
    }
    // delta outer, gamma inner
    assert_eq!(number(&full[0], "delta"), -2.0);
    assert_eq!(number(&full[1], "delta"), -2.0);
    assert_eq!(number(&full[7], "delta"), -0.5);
}

#[test]
fn single_row_grid_equals_sweep() {
    let sweep = tcm_lab(&[
        "sweep",
        "--n-atoms",
        "10",
        "--delta",
        "0.2",
        "--gamma-min",
        "-1",
        "--gamma-max",
        "2",
        "--gamma-steps",
        "13",
    ]);
    let grid = tcm_lab(&[
        "grid",
        "--n-atoms",
        "10",
        "--delta-min",
        "0.2",
        "--delta-max",
        "0.2",
        "--delta-steps",
        "1",
        "--gamma-min",
        "-1",
        "--gamma-max",
        "2",
        "--gamma-steps",
        "13",
    ]);
    assert!(grid.status.success(), "{}", stderr(&grid));
    assert_eq!(sweep.stdout, grid.stdout);
}

#[test]
fn coupling_sign_does_not_change_observables() {
    let out = tcm_lab(&[
        "grid",
        "--n-atoms",
        "10",
        "--delta-min",
        "-1",
        "--delta-max",
        "2",
        "--delta-steps",
        "4",
        "--gamma-min",
        "-3",
        "--gamma-max",
        "3",
        "--gamma-steps",
        "7",
    ]);
    let rows = csv_rows(&stdout(&out));
    for block in rows.chunks(7) {
        for i in 0..3 {
            let (neg, pos) = (&block[i], &block[6 - i]);
            for key in [
                "lambda_proj",
                "lambda_exact",
                "e_proj",
                "e_exact",
                "n_mean_proj",
                "n_var_exact",
                "xi_proj",
                "se_exact",
                "fidelity",
            ] {
                let (a, b) = (number(neg, key), number(pos, key));
                assert!((a - b).abs() < 1e-9 * a.abs().max(1.0), "{key}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn spectrum_first_level_is_the_ground_state() {
    let spectrum = tcm_lab(&[
        "spectrum",
        "--n-atoms",
        "12",
        "--delta",
        "0.4",
        "--gamma",
        "1.3",
        "--k",
        "1",
    ]);
    let point = tcm_lab(&[
        "point",
        "--n-atoms",
        "12",
        "--delta",
        "0.4",
        "--gamma",
        "1.3",
        "--method",
        "exact",
    ]);
    let level = &csv_rows(&stdout(&spectrum))[0];
    let record = &csv_rows(&stdout(&point))[0];
    assert_eq!(field(level, "energy"), field(record, "e_exact"));
    assert_eq!(field(level, "lambda"), field(record, "lambda_exact"));
    assert_eq!(field(record, "e_proj"), "");
}

#[test]
fn spectrum_unfolds_away_from_zero_coupling() {
    let distinct = |gamma: &str| {
        let out = tcm_lab(&[
            "spectrum",
            "--n-atoms",
            "20",
            "--delta",
            "1",
            "--gamma",
            gamma,
            "--k",
            "40",
            "--format",
            "json",
        ]);
        let levels: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(levels.len(), 40);
        let mut energies: Vec<f64> = levels.iter().map(|l| l["energy"].as_f64().unwrap()).collect();
        energies.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        energies.len()
    };
    assert!(distinct("0.1") > distinct("0"));
}
