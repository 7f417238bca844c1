use std::process::Command;

use unsteady_stokes_cli::*;

fn ustokes() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ustokes"))
}

#[test]
fn config_defaults_and_overrides() {
    let c = RunConfig::from_toml("").unwrap();
    assert_eq!(c.points, 200);
    assert_eq!(c.steps, vec![20, 40, 80, 160]);
    let c = RunConfig::from_toml("boundary = \"circle-to-ellipse\"\nsteps = [10]\npoints = 64\nkind = \"dlp\"").unwrap();
    assert_eq!(c.steps, vec![10]);
    assert!(c.boundary().is_ok());
    assert!(c.kind().is_ok());
    assert!(RunConfig::from_toml("typo = 1").is_err());
    assert!(RunConfig::from_toml("boundary = \"square\"").unwrap().boundary().is_err());
}

#[test]
fn config_validation() {
    let ok = RunConfig::from_toml("").unwrap();
    for cmd in ["identities", "validate-asym", "solve"] {
        ok.validate_for(cmd).unwrap();
    }
    let huge = RunConfig::from_toml("steps = [1000]").unwrap();
    assert!(huge.validate_for("solve").is_err());
    assert!(RunConfig { force: true, ..huge }.validate_for("solve").is_ok());
    assert!(RunConfig::from_toml("points = 201").unwrap().validate_for("validate-asym").is_err());
    assert!(RunConfig::from_toml("eps = [2.0]").unwrap().validate_for("validate-asym").is_err());
    assert!(RunConfig::from_toml("steps = [2]").unwrap().validate_for("solve").is_err());
    assert!(RunConfig::from_toml("threads = 0").unwrap().validate_for("identities").is_err());
    assert!(parse_kind("slp").is_ok() && parse_kind("dlp").is_ok() && parse_kind("tlp").is_err());
}

#[test]
fn table_renders_metadata_then_rows() {
    let mut t = Table::new(&["a", "b"]);
    t.meta("version = x");
    t.row(vec!["1".into(), "2".into()]);
    assert_eq!(t.render(), "# version = x\na,b\n1,2\n");
    assert_eq!(t.rows().len(), 1);
}

#[test]
fn slope_fit() {
    let xs = [1e-2, 1e-3, 1e-4];
    let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(1.5)).collect();
    assert!((fit_slope(&xs, &ys).unwrap() - 1.5).abs() < 1e-12);
    assert_eq!(fit_slope(&xs[..1], &ys[..1]), None);
}

#[test]
fn identities_command_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ids.csv");
    let status = ustokes().args(["identities", "--out"]).arg(&out).status().unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.lines().any(|l| l.starts_with("# ustokes")));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 9);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(ustokes().args(["solve", "--steps", "1000"]).output().unwrap().status.code(), Some(1));
    assert_eq!(ustokes().args(["validate-asym", "--kind", "xyz"]).output().unwrap().status.code(), Some(1));
    assert_eq!(ustokes().args(["--config", "/nonexistent.toml", "identities"]).output().unwrap().status.code(), Some(1));
    assert_eq!(ustokes().arg("--help").output().unwrap().status.code(), Some(0));
}

#[test]
fn solve_command_small_run() {
    let out = ustokes()
        .args(["solve", "--boundary", "circle-to-ellipse", "--steps", "6,12", "--points", "64", "--final-time", "0.3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].starts_with("N,dt,E"));
    assert!(rows[2].ends_with("ok"), "{}", rows[2]);
}
