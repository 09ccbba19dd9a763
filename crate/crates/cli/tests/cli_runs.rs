use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_specstat"));
    c.env_remove("SPECSTAT_OUT_DIR");
    c
}

fn run_ok(args: &[&str], out: &Path) -> PathBuf {
    let o = bin().args(args).arg("--out").arg(out).output().unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    PathBuf::from(String::from_utf8(o.stdout).unwrap().trim())
}

fn data_rows(path: &Path) -> Vec<csv::StringRecord> {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_path(path).unwrap();
    r.records().map(Result::unwrap).collect()
}

fn header(path: &Path) -> Vec<String> {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_path(path).unwrap();
    r.headers().unwrap().iter().map(String::from).collect()
}

fn error_record(o: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&o.stderr);
    let line = text.lines().last().unwrap();
    serde_json::from_str(line).unwrap()
}

#[test]
fn torus_run_is_byte_identical() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    let args = ["torus-mc-ks", "--n", "64", "--samples", "1000", "--seed", "7"];
    let pa = run_ok(&args, a.path());
    let pb = run_ok(&args, b.path());
    assert_eq!(std::fs::read(&pa).unwrap(), std::fs::read(&pb).unwrap());
    assert_eq!(data_rows(&pa).len(), 1);
}

#[test]
fn thread_count_does_not_change_output() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    let args = ["torus-mc-ks", "--n", "32,128", "--samples", "300", "--seed", "3"];
    let pa = run_ok(&args, a.path());
    let o = bin().args(args).arg("--out").arg(b.path()).env("RAYON_NUM_THREADS", "1").output().unwrap();
    assert!(o.status.success());
    assert_eq!(std::fs::read(pa).unwrap(), std::fs::read(b.path().join("torus-mc-ks.csv")).unwrap());
}

#[test]
fn config_file_matches_flags() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "seed = 7\nformat = \"json\"\n\n[torus-mc-ks]\nn = [64]\nsamples = 500\n").unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let o = bin().arg("torus-mc-ks").arg("--config").arg(&cfg).arg("--out").arg(&a).output().unwrap();
    assert!(o.status.success());
    run_ok(&["torus-mc-ks", "--n", "64", "--samples", "500", "--seed", "7", "--format", "json"], &b);
    let ja = std::fs::read(a.join("torus-mc-ks.json")).unwrap();
    assert_eq!(ja, std::fs::read(b.join("torus-mc-ks.json")).unwrap());
    // flags override the file
    let c = dir.path().join("c");
    let o = bin().args(["torus-mc-ks", "--seed", "8", "--config"]).arg(&cfg).arg("--out").arg(&c).output().unwrap();
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(c.join("torus-mc-ks.json")).unwrap()).unwrap();
    let w: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["meta"]["seed"], 8);
    assert_ne!(v["meta"]["config_hash"], w["meta"]["config_hash"]);
}

#[test]
fn decay_rows_per_dimension() {
    let dir = TempDir::new().unwrap();
    let p = run_ok(&["torus-mc-ks", "--samples", "200"], dir.path());
    assert_eq!(header(&p), ["N", "estimate", "stderr"]);
    let rows = data_rows(&p);
    let ns: Vec<&str> = rows.iter().map(|r| &r[0]).collect();
    assert_eq!(ns, ["16", "64", "256", "1024"]);
}

#[test]
fn grid_json_has_every_cell() {
    let dir = TempDir::new().unwrap();
    let p = run_ok(&["bn-grid", "--n", "3", "--resolution", "20", "--alpha", "1.3333333333333333", "--format", "json"], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(p).unwrap()).unwrap();
    for key in ["schema", "N", "resolution", "alpha", "cells"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 8000);
    assert_eq!(cells[0], 1);
}

#[test]
fn histogram_has_unit_area() {
    let dir = TempDir::new().unwrap();
    let spec = dir.path().join("spectrum.txt");
    let values: Vec<String> = (0..200).map(|i| format!("{}", (i as f64 * 0.37).sin() * 10.0 + i as f64)).collect();
    std::fs::write(&spec, format!("# sample spectrum\n{}\n", values.join("\n"))).unwrap();
    let p = run_ok(&["spacing-hist", "--input", spec.to_str().unwrap(), "--bin-width", "0.25"], dir.path());
    assert_eq!(header(&p), ["bin_left", "bin_right", "density"]);
    let area: f64 = data_rows(&p)
        .iter()
        .map(|r| (r[1].parse::<f64>().unwrap() - r[0].parse::<f64>().unwrap()) * r[2].parse::<f64>().unwrap())
        .sum();
    assert!((area - 1.0).abs() < 1e-12, "{area}");
}

#[test]
fn every_subcommand_runs_with_defaults() {
    let dir = TempDir::new().unwrap();
    for (kind, extra) in [
        ("rep-weights", vec![]),
        ("op-spectrum", vec![]),
        ("flow-sweep", vec!["--horizons", "50", "--steps", "20000"]),
        ("clump-verify", vec!["--cases", "20"]),
        ("cl-converge", vec![]),
        ("final-bound", vec![]),
    ] {
        let mut args = vec![kind];
        args.extend(extra);
        let p = run_ok(&args, dir.path());
        assert!(!data_rows(&p).is_empty(), "{kind}");
    }
    let residuals = data_rows(&dir.path().join("clump-verify.csv"));
    assert!(residuals.iter().all(|r| r[4].parse::<f64>().unwrap() < 1e-10));
}

#[test]
fn out_dir_from_environment() {
    let dir = TempDir::new().unwrap();
    let o = bin().args(["final-bound"]).env("SPECSTAT_OUT_DIR", dir.path()).output().unwrap();
    assert!(o.status.success());
    assert!(dir.path().join("final-bound.csv").exists());
}

#[test]
fn exit_codes_and_error_records() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "[bn-grid]\nresolutoin = 3\n").unwrap();
    let o = bin().arg("bn-grid").arg("--config").arg(&cfg).arg("--out").arg(dir.path()).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_record(&o)["error"], "config");

    let o = bin().args(["final-bound", "--gamma", "0.9"]).arg("--out").arg(dir.path()).output().unwrap();
    assert_eq!(o.status.code(), Some(2));

    let o = bin().args(["bn-grid", "--resolution", "1"]).arg("--out").arg(dir.path()).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_record(&o)["exit_code"], 3);

    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let o = bin().args(["final-bound", "--out"]).arg(blocker.join("sub")).output().unwrap();
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(error_record(&o)["error"], "io");

    let o = bin().args(["bn-grid", "--no-such-flag"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
