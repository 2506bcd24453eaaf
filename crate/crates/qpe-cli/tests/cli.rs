//! End-to-end runs of the `qpe` binary: artifact shapes, exit codes,
//! and byte-level determinism.

use std::path::Path;
use std::process::{Command, Output};

fn qpe(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpe"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(str::to_owned)
        .collect()
}

#[test]
fn sweep_round_trip_produces_the_documented_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = qpe(
        &[
            "sweep",
            "--manifold",
            "circle:50",
            "--encoder",
            "phase",
            "--out",
            "run",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");

    // Paths are echoed exactly as given, relative here.
    assert_eq!(stdout_lines(&out), vec!["run/sweep.phase.csv".to_string()]);
    let text = std::fs::read_to_string(dir.path().join("run/sweep.phase.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "x1,shannon,pseudo_real,pseudo_imag,pseudo_modulus,branch_flag"
    );
    assert_eq!(lines.count(), 50);
    assert!(dir.path().join("run/sweep.meta.json").is_file());
}

#[test]
fn correlate_emits_rows_for_every_encoder_translation_pair() {
    let dir = tempfile::tempdir().unwrap();
    let out = qpe(
        &[
            "correlate",
            "--manifold",
            "interval:0.1:3:40",
            "--encoder",
            "phase,iqp",
            "--out",
            "run",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let rows: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("run/correlate.json")).unwrap(),
    )
    .unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["encoder"], "phase");
    assert_eq!(rows[0]["translation"], "real");
    assert_eq!(rows[1]["translation"], "modulus");
    assert_eq!(rows[2]["encoder"], "iqp");
    assert_eq!(rows[0]["n"], 40);
    assert_eq!(rows[0]["seed"], 42);
}

#[test]
fn diff_and_gram_write_their_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = qpe(
        &[
            "diff",
            "--manifold",
            "circle:20",
            "--encoder",
            "phase",
            "--out",
            "run",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let text = std::fs::read_to_string(dir.path().join("run/diff.phase.csv")).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "x1,shannon,diff_real,diff_modulus"
    );

    let out = qpe(
        &[
            "gram",
            "--manifold",
            "circle:5",
            "--encoder",
            "phase",
            "--out",
            "run",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let text = std::fs::read_to_string(dir.path().join("run/gram.phase.csv")).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0].split(',').count(), 5);
    // Unit diagonal: a state has fidelity 1 with itself.
    for (i, row) in rows.iter().enumerate() {
        let cell: f64 = row.split(',').nth(i).unwrap().parse().unwrap();
        assert!((cell - 1.0).abs() < 1e-12);
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for run in ["a", "b"] {
        let out = qpe(
            &[
                "correlate",
                "--manifold",
                "circle:60",
                "--encoder",
                "circle-angle",
                "--seed",
                "7",
                "--out",
                run,
            ],
            dir.path(),
        );
        assert!(out.status.success(), "{out:?}");
    }
    assert_eq!(
        std::fs::read(dir.path().join("a/correlate.json")).unwrap(),
        std::fs::read(dir.path().join("b/correlate.json")).unwrap()
    );
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    // Unknown flag: rejected by the parser.
    let out = qpe(&["sweep", "--nonsense"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    // No source at all.
    let out = qpe(&["sweep", "--encoder", "phase"], dir.path());
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    // Unknown encoder.
    let out = qpe(
        &["sweep", "--manifold", "circle:5", "--encoder", "teleport"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown encoder"));
    // Unregistered experiment name.
    let out = qpe(&["experiment", "fig99"], dir.path());
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn missing_data_file_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = qpe(
        &["sweep", "--data", "absent.csv", "--encoder", "phase"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3), "{out:?}");

    let out = qpe(
        &["experiment", "table2-vf", "--data", "absent.csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3), "{out:?}");
}

#[test]
fn check_reports_every_suite_and_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = qpe(&["check"], dir.path());
    assert!(out.status.success(), "{out:?}");
    let reports: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 5);
    for r in reports {
        assert_eq!(r["passed"], true, "{r}");
    }

    let out = qpe(&["check", "--suite", "analytic"], dir.path());
    assert!(out.status.success(), "{out:?}");
    let reports: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 1);
}

#[test]
fn experiment_smoke_runs_cover_a_figure_and_a_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = qpe(
        &[
            "experiment",
            "fig3-circle",
            "--grid",
            "16",
            "--gnuplot",
            "--out",
            "figs",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let figs = dir.path().join("figs");
    assert!(figs.join("fig3-circle.circle-amplitude.csv").is_file());
    assert!(figs.join("fig3-circle.circle-angle.csv").is_file());
    assert!(figs.join("fig3-circle.meta.json").is_file());
    let script = std::fs::read_to_string(figs.join("fig3-circle.gp")).unwrap();
    assert!(script.contains("plot"), "{script}");

    let out = qpe(
        &[
            "experiment",
            "table-symmetric",
            "--grid",
            "32",
            "--out",
            "tables",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let rows: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("tables/table-symmetric.json")).unwrap(),
    )
    .unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    // The two symmetric encodings share a spectrum point by point, so the
    // table rows agree exactly.
    assert_eq!(rows[0]["xicor"], rows[2]["xicor"]);
    assert_eq!(rows[1]["spearman"], rows[3]["spearman"]);
}
