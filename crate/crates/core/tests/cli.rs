mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::*;

fn frv(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frv")).args(args.split_whitespace()).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn read_table(path: &Path) -> Vec<Vec<f64>> {
    let mut reader = csv::Reader::from_path(path).unwrap();
    reader.records().map(|r| r.unwrap().iter().map(|f| f.parse().unwrap()).collect()).collect()
}

#[test]
fn density_varma_integrates_to_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display();
    let res = frv(&format!("density --process varma --a 1.0,0.3 --b 0.2 --r 0.25 --out {out} --svg"));
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let rows = read_table(&dir.path().join("density.csv"));
    let (l, p): (Vec<f64>, Vec<f64>) = rows.iter().map(|r| (r[0], r[1])).unzip();
    assert_eq!(l.len(), 1000);
    assert!((trapezoid(&l, &p) - 1.0).abs() < 1e-3);
    assert!(dir.path().join("density.svg").exists());
}

#[test]
fn density_white_vma_support() {
    let dir = tempfile::tempdir().unwrap();
    let res = frv(&format!("density --process vma --a 1.0,0.0 --r 0.25 --out {}", dir.path().display()));
    assert_eq!(code(&res), 0);
    let stdout = String::from_utf8(res.stdout).unwrap();
    let line = stdout.lines().find(|l| l.starts_with("support:")).unwrap();
    let nums: Vec<f64> =
        line.trim_start_matches("support: [").trim_end_matches(']').split(", ").map(|x| x.parse().unwrap()).collect();
    assert!((nums[0] - 0.25).abs() < 1e-3 && (nums[1] - 2.25).abs() < 1e-3, "{line}");
}

#[test]
fn invalid_arguments_exit_two() {
    assert_eq!(code(&frv("density --process vma --a 1.0,0.3 --r 0")), 2);
    assert_eq!(code(&frv("density --process var --a 1.0 --b 1.2 --r 0.25")), 2);
    assert_eq!(code(&frv("simulate --process vma --a 1.0 --N 10 --T 20 --reps 0")), 2);
    assert_eq!(code(&frv("density --process nope --a 1.0 --r 0.25")), 2);
    assert_eq!(code(&frv("frobnicate")), 2);
}

#[test]
fn simulate_is_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let res = frv(&format!(
            "simulate --process varma --a 1.0,0.3 --b 0.2 --N 50 --T 200 --reps 20 --seed 7 --out {}",
            dir.path().display()
        ));
        assert_eq!(code(&res), 0);
    }
    let ea = std::fs::read(a.path().join("eigenvalues.csv")).unwrap();
    let eb = std::fs::read(b.path().join("eigenvalues.csv")).unwrap();
    assert_eq!(ea, eb);
    assert_eq!(read_table(&a.path().join("eigenvalues.csv")).len(), 50 * 20);
    let hist = read_table(&a.path().join("histogram.csv"));
    let area: f64 = hist.iter().map(|r| (r[1] - r[0]) * r[2]).sum();
    assert!((area - 1.0).abs() < 1e-9);
}

#[test]
fn compare_report_matches_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let res = frv(&format!(
        "compare --process varma --a 1.0,0.3 --b 0.2 --N 50 --T 200 --reps 50 --out {}",
        dir.path().display()
    ));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["schema"], 1);
    let l1 = report["l1_distance"].as_f64().unwrap();
    let l1_max = report["l1_max"].as_f64().unwrap();
    assert_eq!(code(&res), if l1 < l1_max { 0 } else { 1 });
    assert!(report["ks_distance"].as_f64().unwrap() <= 1.0);
    assert_eq!(report["moment_table"].as_array().unwrap().len(), 2);
    assert!(dir.path().join("overlay.svg").exists());
}

#[test]
fn compare_without_overlap_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let density = dir.path().join("d.csv");
    let eig = dir.path().join("e.csv");
    std::fs::write(&density, "lambda,density\n1.0,0.0\n1.5,2.0\n2.0,0.0\n").unwrap();
    std::fs::write(&eig, "replica,index,eigenvalue\n0,0,50.0\n0,1,60.0\n").unwrap();
    let res = frv(&format!(
        "compare --process vma --a 1.0 --N 2 --T 4 --reps 1 --density-csv {} --eigenvalues-csv {} --out {}",
        density.display(),
        eig.display(),
        dir.path().display()
    ));
    assert_eq!(code(&res), 3, "{}", String::from_utf8_lossy(&res.stderr));
}

#[test]
fn compare_white_noise_against_marchenko_pastur() {
    let dir = tempfile::tempdir().unwrap();
    let res = frv(&format!(
        "compare --process vma --a 1.0 --N 50 --T 5000 --reps 200 --l1-max 0.05 --out {}",
        dir.path().display()
    ));
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stdout));
}

#[test]
fn compare_white_noise_coarse_bins() {
    let dir = tempfile::tempdir().unwrap();
    let res = frv(&format!(
        "compare --process vma --a 1.0 --N 50 --T 5000 --reps 200 --bins 20 --l1-max 0.05 --out {}",
        dir.path().display()
    ));
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stdout));
}

#[test]
fn autocov_values() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().display();
    let res = frv(&format!("autocov --process var --a 1.0 --b 0.5 --max-lag 5 --out {path}"));
    assert_eq!(code(&res), 0);
    assert!(String::from_utf8(res.stdout).unwrap().contains("T_1 = 1.442695040889"));
    let rows = read_table(&dir.path().join("autocov.csv"));
    assert_eq!(rows.len(), 6);
    for row in &rows {
        assert!((row[1] - var1_autocov(1.0, 0.5, row[0] as i64)).abs() < 1e-12);
    }

    let res = frv(&format!("autocov --process varma --a 1.0,0.3 --b 0.2 --max-lag 4 --out {path}"));
    assert_eq!(code(&res), 0);
    let rows = read_table(&dir.path().join("autocov.csv"));
    assert!((rows[0][1] - 1.2604166666666667).abs() < 1e-12);
    for row in &rows {
        assert!((row[1] - varma11_autocov(1.0, 0.3, 0.2, row[0] as i64)).abs() < 1e-12);
    }

    let res = frv(&format!("autocov --process vma --a 1.0 --max-lag 3 --out {path}"));
    assert_eq!(code(&res), 0);
    let rows = read_table(&dir.path().join("autocov.csv"));
    assert_eq!(rows.iter().map(|r| r[1]).collect::<Vec<_>>(), vec![1.0, 0.0, 0.0, 0.0]);
}
