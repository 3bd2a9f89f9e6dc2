use std::path::Path;
use std::process::Command;

use lbe_cipher::{pgm, GrayImage};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lbe-cipher"))
}

fn sample_image() -> GrayImage {
    GrayImage::from_fn(20, 30, |r, c| ((r * 7 + c * 3) % 256) as u8).unwrap()
}

const FAST_KEY: [&str; 2] = ["--h", "0.01"];

#[test]
fn encrypt_then_decrypt_restores_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.pgm");
    let cipher = dir.path().join("out.pgm");
    let back = dir.path().join("back.pgm");
    pgm::write_pgm(&sample_image(), &input).unwrap();

    let st = bin()
        .arg("encrypt")
        .arg(&input)
        .arg(&cipher)
        .args(FAST_KEY)
        .output()
        .unwrap()
        .status;
    assert!(st.success());
    let st = bin()
        .arg("decrypt")
        .arg(&cipher)
        .arg(&back)
        .args(FAST_KEY)
        .output()
        .unwrap()
        .status;
    assert!(st.success());

    assert_eq!(
        std::fs::read(&input).unwrap(),
        std::fs::read(&back).unwrap()
    );
    assert_ne!(
        std::fs::read(&input).unwrap(),
        std::fs::read(&cipher).unwrap()
    );
}

#[test]
fn config_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("key.toml");
    std::fs::write(&cfg, "transient = 2000\n[params]\nh = 0.01\n").unwrap();
    let from_flags = bin()
        .args(["keystream", "--rows", "4", "--cols", "4"])
        .args(FAST_KEY)
        .output()
        .unwrap();
    let from_file = bin()
        .args(["keystream", "--rows", "4", "--cols", "4", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(from_flags.status.success());
    assert_eq!(from_flags.stdout, from_file.stdout);
    assert_eq!(from_flags.stdout.len(), 33);
}

#[test]
fn raw_keystream_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("key.bin");
    let st = bin()
        .args([
            "keystream",
            "--rows",
            "3",
            "--cols",
            "5",
            "--format",
            "raw",
            "-o",
        ])
        .arg(&out)
        .args(FAST_KEY)
        .output()
        .unwrap()
        .status;
    assert!(st.success());
    let raw = std::fs::read(&out).unwrap();
    let hex = bin()
        .args(["keystream", "--rows", "3", "--cols", "5"])
        .args(FAST_KEY)
        .output()
        .unwrap();
    let expected: String = raw.iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(String::from_utf8(hex.stdout).unwrap().trim_end(), expected);
}

#[test]
fn analyze_writes_metric_csv() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.pgm");
    let report = dir.path().join("report.csv");
    let hist = dir.path().join("hist.csv");
    pgm::write_pgm(&sample_image(), &input).unwrap();
    let st = bin()
        .arg("analyze")
        .arg(&input)
        .arg("--report")
        .arg(&report)
        .arg("--histogram")
        .arg(&hist)
        .output()
        .unwrap()
        .status;
    assert!(st.success());
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.starts_with("metric,value\n"));
    assert!(!text.contains('\r'));
    let names: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "rows",
            "cols",
            "entropy",
            "corr_horizontal",
            "corr_vertical",
            "corr_diagonal",
            "hist_min",
            "hist_max",
            "hist_max_min_ratio"
        ]
    );
    let hist = std::fs::read_to_string(&hist).unwrap();
    assert_eq!(hist.lines().count(), 257);
    let total: u64 = hist
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 600);
}

#[test]
fn index_prints_published_values() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("table1.csv");
    std::fs::write(
        &table,
        "label,corr_h,corr_v,corr_d,entropy\n\
         this work,0.00045,0.0015,0.0040,7.9973\n\
         Nardo,0.0028,0.0059,0.0031,7.9969\n\
         Li,0.00083,0.00223,0.00650,7.9998\n\
         Luo,0.0016,0.0025,0.0003,7.9826\n",
    )
    .unwrap();
    let out = bin().arg("index").arg(&table).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let values: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    for (got, want) in values.iter().zip([0.7686, 0.3778, 0.5652, 0.7197]) {
        assert!((got - want).abs() <= 0.0005, "{got} vs {want}");
    }
}

fn code(args: &[&str], extra: Option<&Path>) -> i32 {
    let mut cmd = bin();
    cmd.args(args);
    if let Some(p) = extra {
        cmd.arg(p);
    }
    cmd.output().unwrap().status.code().unwrap()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.pgm");
    pgm::write_pgm(&sample_image(), &input).unwrap();
    let out = dir.path().join("o.pgm");

    assert_eq!(code(&["bogus"], None), 1);
    let mismatch = bin()
        .arg("encrypt")
        .arg(&input)
        .arg(&out)
        .args(["--rows", "5"])
        .output()
        .unwrap();
    assert_eq!(mismatch.status.code(), Some(1));
    assert_eq!(code(&["analyze", "/nonexistent.pgm"], None), 2);

    let ascii = dir.path().join("ascii.pgm");
    std::fs::write(&ascii, "P2\n1 1\n255\n7\n").unwrap();
    assert_eq!(code(&["analyze"], Some(&ascii)), 2);

    let flat = dir.path().join("flat.pgm");
    pgm::write_pgm(&GrayImage::filled(4, 4, 3).unwrap(), &flat).unwrap();
    assert_eq!(code(&["analyze"], Some(&flat)), 3);
    assert_eq!(
        code(
            &["keystream", "--rows", "2", "--cols", "2", "--h", "100"],
            None
        ),
        3
    );
}
