use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_rotorcool"));
    c.env_remove("ROTORCOOL_OUT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn repo_file(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

const HEADER: &str = "model,rpm,flow_lpm,inlet_temp_c,outlet_temp_c,heat_rate_w,max_pressure_pa,max_velocity_m_s,heat_per_area_w_m2,converged";

#[test]
fn simulate_defaults_to_baseline_flow_and_temperature() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("one.csv");
    let o = run(&["simulate", "--model", "1", "--rpm", "10000", "--out", p(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let summary = stdout(&o);
    assert!(summary.starts_with("model 1 at 10000 1/min, 5 l/min, 80 °C: outlet "), "{summary}");
    assert!(summary.contains(" bar, max velocity "));
    let csv = fs::read_to_string(&out).unwrap();
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], HEADER);
    assert!(lines[1].starts_with("1,10000,5,80,"));
    assert!(lines[1].ends_with(",true"));
}

#[test]
fn simulate_json_has_the_csv_fields() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("one.json");
    let o = run(&[
        "simulate", "--model", "4", "--flow-lpm", "3", "--inlet-temp-c", "60", "--format", "json",
        "--out", p(&out), "--quiet",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let row = &v[0];
    for field in HEADER.split(',') {
        assert!(row.get(field).is_some(), "missing {field}");
    }
    assert_eq!(row["flow_lpm"], 3.0);
    assert_eq!(row["inlet_temp_c"], 60.0);
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["simulate", "--model", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--model"));
    let o = run(&["simulate", "--model", "1", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).to_lowercase().contains("usage"));
    let o = run(&["simulate", "--model", "1", "--rpm", "fast"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn runtime_errors_exit_one() {
    let o = run(&["simulate", "--model", "1", "--inlet-temp-c", "120"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("inlet temperature"));
    let o = run(&["simulate", "--model", "1", "--config", "/nonexistent/cfg.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("/nonexistent/cfg.json"));
    let o = run(&["simulate", "--model", "2", "--out", "/nonexistent/dir/out.csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("/nonexistent/dir"));
}

#[test]
fn rerun_replaces_output_atomically_and_identically() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("rows.csv");
    fs::write(&out, "stale\n".repeat(1000)).unwrap();
    let args = ["sweep", "--model", "2,3", "--rpm", "0,10000", "--segments", "50", "--out", p(&out)];
    assert!(run(&args).status.success());
    let first = fs::read(&out).unwrap();
    assert!(!String::from_utf8_lossy(&first).contains("stale"));
    assert!(run(&args).status.success());
    assert_eq!(fs::read(&out).unwrap(), first);
    // No temporary files left behind.
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn sweep_from_committed_grid_config() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("grid.csv");
    let summary = dir.path().join("summary.json");
    let o = run(&[
        "sweep", "--config", p(&repo_file("configs/grid.json")), "--out", p(&out), "--summary",
        p(&summary),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("512 rows, 512 converged"));
    let csv = fs::read_to_string(&out).unwrap();
    assert!(!csv.contains('\r'));
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines.len(), 513);
    assert_eq!(lines[0], HEADER);
    assert!(lines[1].starts_with("1,0,3,50,"));
    assert!(lines[512].starts_with("4,18000,6,80,"));
    let s: serde_json::Value = serde_json::from_str(&fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(s["rows"], 512);
    assert_eq!(s["rankings"].as_array().unwrap().len(), 128);
    assert_eq!(s["rankings"][0]["ranking"].as_array().unwrap().len(), 4);
}

#[test]
fn sweep_flags_override_config_axes() {
    let o = run(&[
        "sweep", "--config", p(&repo_file("configs/grid.json")), "--model", "3", "--rpm", "10000",
        "--flow-lpm", "5", "--inlet-temp-c", "80",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 2);
    assert!(out.lines().nth(1).unwrap().starts_with("3,10000,5,80,"));
    assert!(stderr(&o).contains("1 rows"));
}

#[test]
fn empty_sweep_fails_before_writing() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("rows.csv");
    let o = run(&["sweep", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("every axis is empty"));
    assert!(!out.exists());

    let cfg = dir.path().join("empty.json");
    fs::write(&cfg, r#"{"sweep": {}}"#).unwrap();
    let o = run(&["sweep", "--config", p(&cfg), "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());
}

#[test]
fn sweep_range_guard_and_override() {
    let o = run(&["sweep", "--model", "1", "--flow-lpm", "8"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("allow_out_of_range"));
    let o = run(&["sweep", "--model", "1", "--flow-lpm", "8", "--allow-out-of-range", "--segments", "20"]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn default_output_directory_from_environment() {
    let dir = TempDir::new().unwrap();
    let o = bin()
        .args(["simulate", "--model", "2", "--segments", "30"])
        .env("ROTORCOOL_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let written = dir.path().join("simulate.csv");
    assert!(fs::read_to_string(written).unwrap().starts_with(HEADER));
}

#[test]
fn compare_ranks_and_reports_ratios() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("cmp.csv");
    let o = run(&["compare", "--rpm", "3000", "--segments", "50", "--out", p(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("ranking by heat rate: 4 > "), "{text}");
    assert!(text.trim_end().ends_with("> 1"));
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 5);

    let o = run(&["compare", "--model", "3", "--baseline", "1", "--segments", "30"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("×1"));
}

#[test]
fn props_table_and_point() {
    let o = run(&["props"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 17 + 1);
    assert!(text.contains("within 0.5%"));

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("p.csv");
    let o = run(&["props", "--temperature-c", "42.5", "--out", p(&out)]);
    assert!(o.status.success());
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.lines().nth(1).unwrap().starts_with("42.5,824.7,"));

    let o = run(&["props", "--temperature-c", "150", "--format", "json", "--quiet"]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
}

#[test]
fn props_from_replacement_table() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("oil.json");
    fs::write(
        &cfg,
        r#"{"fluid_properties": [
            {"temperature_c": 0, "density_kg_m3": 1000, "kinematic_viscosity_m2_s": 1e-6,
             "specific_heat_j_kgk": 4000, "thermal_conductivity_w_mk": 0.6, "dynamic_viscosity_pa_s": 1e-3},
            {"temperature_c": 100, "density_kg_m3": 900, "kinematic_viscosity_m2_s": 1e-6,
             "specific_heat_j_kgk": 4000, "thermal_conductivity_w_mk": 0.6, "dynamic_viscosity_pa_s": 9e-4}
        ]}"#,
    )
    .unwrap();
    let o = run(&["props", "--config", p(&cfg), "--temperature-c", "50"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("950"));

    fs::write(&cfg, r#"{"fluid_properties": [{"temperature_c": 0, "density_kg_m3": -1,
        "kinematic_viscosity_m2_s": 1e-6, "specific_heat_j_kgk": 4000,
        "thermal_conductivity_w_mk": 0.6, "dynamic_viscosity_pa_s": 1e-3}]}"#)
        .unwrap();
    let o = run(&["props", "--config", p(&cfg)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn convergence_study() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("conv.csv");
    let o = run(&["convergence", "--model", "2", "--out", p(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("differences contract: true"));
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.starts_with("n_segments,outlet_temp_c,max_pressure_pa,converged\n100,"));

    let o = run(&["convergence", "--model", "1", "--counts", "20,10"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn design_scan_paths() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("scan.csv");
    let o = run(&[
        "design-scan", "--model", "2", "--teeth", "8,12,16", "--depths-mm", "2,4,6", "--fills",
        "0.3,0.5,0.7", "--segments", "30", "--out", p(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("skipped:"));
    let csv = fs::read_to_string(&out).unwrap();
    let rows: Vec<_> = csv.lines().skip(1).collect();
    assert!(!rows.is_empty() && rows.len() <= 27);
    assert!(rows.iter().any(|r| r.ends_with(",false")));

    let o = run(&["design-scan", "--model", "2", "--depths-mm", "7"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("[1, 6]"));

    let o = run(&["design-scan", "--model", "1"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&[
        "design-scan", "--model", "3", "--config", p(&repo_file("configs/design_scan.json")),
        "--segments", "20", "--format", "json", "--out", p(&dir.path().join("scan.json")),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn config_show_round_trips() {
    let o = run(&["config", "show"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["solver"]["laminar_friction_constant"], 64.0);
    assert_eq!(v["fluid_properties"].as_array().unwrap().len(), 17);
    assert_eq!(v["sweep"]["speeds_rpm"].as_array().unwrap().len(), 8);

    // The shown configuration is itself a valid input.
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("shown.json");
    fs::write(&cfg, &o.stdout).unwrap();
    let again = run(&["config", "show", "--config", p(&cfg)]);
    assert!(again.status.success(), "{}", stderr(&again));
    assert_eq!(again.stdout, o.stdout);

    fs::write(&cfg, r#"{"solver": {"tolerance_c": -1}}"#).unwrap();
    assert_eq!(run(&["config", "show", "--config", p(&cfg)]).status.code(), Some(1));
    fs::write(&cfg, r#"{"unknown": 1}"#).unwrap();
    assert_eq!(run(&["config", "show", "--config", p(&cfg)]).status.code(), Some(1));
}

#[test]
fn geometry_describe_matches_golden() {
    let o = run(&["geometry", "describe", "--model", "2"]);
    assert!(o.status.success());
    let golden = fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/describe_model2.txt"),
    )
    .unwrap();
    assert_eq!(stdout(&o), golden);

    let o = run(&["geometry", "describe", "--model", "1", "--segments", "5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn help_and_version_exit_zero() {
    assert!(run(&["--help"]).status.success());
    assert!(run(&["--version"]).status.success());
    assert!(run(&["sweep", "--help"]).status.success());
}
