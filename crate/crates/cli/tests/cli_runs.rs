use std::path::Path;
use std::process::{Command, Output};

use dnwr_cli::{parse_config, run_experiment, write_outputs, BOUND_COMPARE_HEADER};

const SMALL_GRID: &str = "grid.dx = 0.1\ngrid.dt = 0.01\n";

fn dnwr(dir: &Path, args: &[&str], env_out: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dnwr"));
    cmd.current_dir(dir).args(args).env_remove("DNWR_OUT");
    if let Some(out) = env_out {
        cmd.env("DNWR_OUT", out);
    }
    cmd.output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

fn header(path: &Path) -> Vec<String> {
    let mut reader = csv::Reader::from_path(path).unwrap();
    reader.headers().unwrap().iter().map(String::from).collect()
}

#[test]
fn sweep_writes_one_file_per_window() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "sweep.toml",
        &format!("{SMALL_GRID}experiment.horizons = [0.5, 1.0]\nrun.max_iter = 3\noutput.path = \"runs/sweep.csv\""),
    );
    let out = dnwr(dir.path(), &["run", "sweep.toml"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for t in ["T0.5", "T1"] {
        let path = dir.path().join(format!("runs/sweep_{t}.csv"));
        assert_eq!(
            header(&path),
            [
                "iteration",
                "theta_0.2",
                "theta_0.4",
                "theta_0.5",
                "theta_0.6",
                "theta_0.8"
            ]
        );
        let rows = csv::Reader::from_path(&path).unwrap().records().count();
        assert_eq!(rows, 4);
    }
}

#[test]
fn identical_specs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "c.toml",
        &format!("{SMALL_GRID}experiment.kind = \"bound_compare\"\nrun.max_iter = 4"),
    );
    let first = dir.path().join("first");
    let second = dir.path().join("second");
    assert!(dnwr(dir.path(), &["run", "c.toml", "--out", "first"], None)
        .status
        .success());
    assert!(dnwr(dir.path(), &["run", "c.toml"], Some(&second)).status.success());
    let a = std::fs::read(first.join("bound_compare_T2.csv")).unwrap();
    let b = std::fs::read(second.join("bound_compare_T2.csv")).unwrap();
    assert_eq!(a, b);
    assert_eq!(header(&first.join("bound_compare_T2.csv")), BOUND_COMPARE_HEADER);
}

#[test]
fn out_flag_beats_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k.toml", "experiment.time_samples = 10");
    let env_dir = dir.path().join("env");
    let out = dnwr(
        dir.path(),
        &["run", "k.toml", "--preset", "fig3", "--out", "flag"],
        Some(&env_dir),
    );
    assert!(out.status.success());
    assert!(dir.path().join("flag/fig3.csv").exists());
    assert!(!env_dir.exists());
    assert_eq!(header(&dir.path().join("flag/fig3.csv")), ["t", "F_1", "F_2", "F_3"]);
}

#[test]
fn exit_codes_separate_config_and_runtime_errors() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "unknown.toml", "run.thta = 0.5");
    let out = dnwr(dir.path(), &["run", "unknown.toml"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("run.thta"));

    write(dir.path(), "theta.toml", "run.theta = 0");
    assert_eq!(dnwr(dir.path(), &["run", "theta.toml"], None).status.code(), Some(2));
    assert_eq!(dnwr(dir.path(), &["run", "missing.toml"], None).status.code(), Some(2));
    assert_eq!(
        dnwr(dir.path(), &["run", "theta.toml", "--preset", "fig9"], None)
            .status
            .code(),
        Some(2)
    );

    // the output target is an existing directory, so the final rename fails
    write(dir.path(), "ok.toml", &format!("{SMALL_GRID}experiment.kind = \"kernels\"\ngeometry.a = 3.0\ngeometry.b = 2.0\nexperiment.time_samples = 4"));
    std::fs::create_dir(dir.path().join("kernels.csv")).unwrap();
    assert_eq!(dnwr(dir.path(), &["run", "ok.toml"], None).status.code(), Some(3));
}

#[test]
fn symmetric_homogeneous_sweep_hits_the_floor_in_two_steps() {
    let spec = parse_config(
        "problem.kind = \"homogeneous\"\ngeometry.a = 2.5\ngeometry.b = 2.5\nexperiment.theta_list = [0.5]\nrun.max_iter = 3",
    )
    .unwrap();
    let out = run_experiment(&spec).unwrap();
    let e: Vec<f64> = out[0]
        .table
        .column("theta_0.5")
        .unwrap()
        .into_iter()
        .flatten()
        .collect();
    assert!(e[2] <= 1e-10 * e[0], "{e:?}");
}

#[test]
fn written_values_round_trip() {
    let spec = parse_config(&format!("{SMALL_GRID}run.max_iter = 2\nexperiment.theta_list = [0.3]")).unwrap();
    let outputs = run_experiment(&spec).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let paths = write_outputs(&outputs, &dir.path().join("s.csv")).unwrap();
    let mut reader = csv::Reader::from_path(&paths[0]).unwrap();
    let expected = outputs[0].table.column("theta_0.3").unwrap();
    for (record, want) in reader.records().zip(expected) {
        let got: f64 = record.unwrap()[1].parse().unwrap();
        assert_eq!(Some(got), want);
    }
}
