use std::f64::consts::LN_2;
use std::fs;
use std::process::{Command, Output};

fn bosecap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bosecap"))
        .args(args)
        .env_remove("BOSECAP_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

/// Parses the `capacity` column of every data row.
fn capacity_column(csv: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let col = lines.next().unwrap().split(',').position(|h| h == "capacity").unwrap();
    lines.map(|l| l.split(',').nth(col).unwrap().parse().unwrap()).collect()
}

#[test]
fn gaussian_capacity_reduces_to_coherent_channel() {
    let o = bosecap(&["capacity", "gaussian", "--ntr", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "gamma,theta,k,n_c,n_tr,regime,capacity\n0,0,1.00000000,0,1.00000000,A,1.38629436\n");
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 8] = [
        (&["capacity", "gaussian", "--ntr", "2"], 0),
        (&["verify", "--check", "trine"], 0),
        (&["capacity", "gaussian"], 2),
        (&["sweep", "--variable", "m", "--start", "1", "--stop", "0", "--points", "3"], 2),
        (&["sweep", "--figure", "4", "--start", "0", "--stop", "1", "--points", "3"], 2),
        (&["capacity", "gaussian", "--ntr", "-1"], 3),
        (&["capacity", "gaussian", "--gamma", "2", "--ntr", "1"], 3),
        (&["sweep", "--variable", "gamma", "--start", "0", "--stop", "2", "--points", "3", "--ntr", "1"], 4),
    ];
    for (args, code) in cases {
        assert_eq!(bosecap(args).status.code(), Some(code), "{args:?}");
    }
}

#[test]
fn partial_sweep_keeps_good_rows() {
    let o = bosecap(&["sweep", "--variable", "gamma", "--start", "0", "--stop", "2", "--points", "3", "--ntr", "1"]);
    let text = stdout(&o);
    let rows: Vec<_> = text.lines().collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[1].ends_with(",A,1.38629436"));
    assert!(rows[2].ends_with(",error,error"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["sweep", "--figure", "3", "--start", "1e-8", "--stop", "1", "--points", "5", "--scale", "log"];
    let first = bosecap(&args);
    assert_eq!(first.status.code(), Some(0));
    for _ in 0..2 {
        assert_eq!(bosecap(&args).stdout, first.stdout);
    }
}

#[test]
fn bits_are_nats_over_ln2() {
    let runs: [&[&str]; 3] = [
        &["capacity", "number", "--eta", "0.5", "--budget", "1", "--mode", "bose-einstein"],
        &["capacity", "input", "--gamma", "0.4", "--energy", "0.7"],
        &["sweep", "--variable", "k", "--start", "0.2", "--stop", "1", "--points", "4", "--ntr", "2", "--gamma", "0.3"],
    ];
    for args in runs {
        let nats = capacity_column(&stdout(&bosecap(args)));
        let mut with_bits = args.to_vec();
        with_bits.extend(["--log-base", "two"]);
        let bits = capacity_column(&stdout(&bosecap(&with_bits)));
        assert_eq!(nats.len(), bits.len());
        for (n, b) in nats.iter().zip(&bits) {
            // both columns carry nine significant digits
            assert!((n / LN_2 - b).abs() <= 1e-8 * b.abs().max(1e-12), "{n} vs {b}");
        }
    }
}

#[test]
fn config_file_env_var_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "# units\nlog_base = two\n").unwrap();
    let path = cfg.to_str().unwrap();
    let base = ["capacity", "gaussian", "--ntr", "1"];

    let from_file = bosecap(&[&base[..], &["--config", path]].concat());
    assert!(stdout(&from_file).ends_with(",2.00000000\n"));

    let from_env = Command::new(env!("CARGO_BIN_EXE_bosecap"))
        .args(base)
        .env("BOSECAP_CONFIG", path)
        .output()
        .unwrap();
    assert_eq!(from_env.stdout, from_file.stdout);

    let flag_wins = bosecap(&[&base[..], &["--config", path, "--log-base", "e"]].concat());
    assert!(stdout(&flag_wins).ends_with(",1.38629436\n"));

    fs::write(&cfg, "bogus = 1\n").unwrap();
    assert_eq!(bosecap(&[&base[..], &["--config", path]].concat()).status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.csv");
    let o = bosecap(&["discretize", "--m", "0.01", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(out).unwrap();
    assert!(text.starts_with("m,c_be,c2,c2_ratio,c12,c12_ratio\n0.0100000000,"));
}

#[test]
fn verify_all_passes() {
    let o = bosecap(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",pass") || l.ends_with(",note")));
}
