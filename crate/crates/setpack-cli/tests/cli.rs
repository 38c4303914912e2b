//! End-to-end checks of the binary: exit codes, output formats, flags.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_setpack"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("setpack-cli-{}-{}", tag, std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        TempDir(dir)
    }

    fn file(&self, name: &str, content: &str) -> String {
        let path = self.0.join(name);
        fs::write(&path, content).unwrap();
        path.to_string_lossy().into_owned()
    }

    fn path(&self) -> String {
        self.0.to_string_lossy().into_owned()
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

#[test]
fn solve_feasible_exits_zero_with_weight() {
    let dir = TempDir::new("feasible");
    let file = dir.file("a.wdm", "WDM 2 2\nT a x 4\nT b y 7\n");
    let out = run(&["solve", "--alg", "wdm", &file]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "WEIGHT 11\nPICK 0\nPICK 1\n");
}

#[test]
fn solve_infeasible_exits_one_with_reject() {
    let dir = TempDir::new("infeasible");
    let file = dir.file("a.wdm", "WDM 2 2\nT a x 4\nT a y 7\n");
    for alg in ["wdm", "brute", "dm3"] {
        let file3 = dir.file("b.wdm", "WDM 3 2\nT a x 1 4\nT a y 2 4\n");
        let target = if alg == "dm3" { &file3 } else { &file };
        let out = run(&["solve", "--alg", alg, target]);
        assert_eq!(out.status.code(), Some(1), "alg {}", alg);
        assert_eq!(stdout(&out), "REJECT\n", "alg {}", alg);
    }
}

#[test]
fn kind_mismatch_exits_two() {
    let dir = TempDir::new("mismatch");
    let wsp = dir.file("a.wsp", "WSP 3 1\nS a b c 4\n");
    for alg in ["wdm", "dm3"] {
        let out = run(&["solve", "--alg", alg, &wsp]);
        assert_eq!(out.status.code(), Some(2), "alg {}", alg);
    }
}

#[test]
fn dm3_refuses_weighted_and_large_p() {
    let dir = TempDir::new("dm3-refuse");
    let weighted = dir.file("w.wdm", "WDM 3 1\nT a x 1 5\nT b y 2 9\n");
    let out = run(&["solve", "--alg", "dm3", &weighted]);
    assert_eq!(out.status.code(), Some(2));

    let mut text = String::from("WDM 3 7\n");
    for i in 0..7 {
        text.push_str(&format!("T a{i} b{i} c{i} 1\n"));
    }
    let big_p = dir.file("p7.wdm", &text);
    let out = run(&["solve", "--alg", "dm3", &big_p]);
    assert_eq!(out.status.code(), Some(2));
    // The general solver still accepts it.
    let out = run(&["solve", "--alg", "wdm", &big_p]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn format_errors_exit_two() {
    let dir = TempDir::new("format");
    let bad = dir.file("bad.wdm", "WDM 3 1\nT a b 5\n");
    let out = run(&["solve", "--alg", "wdm", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["solve", "--alg", "wdm", "/nonexistent/file.wdm"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["solve", "--alg", "nope", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kernel_flag_preserves_the_weight_line() {
    let dir = TempDir::new("kernel-flag");
    let out = run(&[
        "gen", "--kind", "wsp", "--q", "3", "--p", "2", "--sizes", "10", "--members", "80",
        "--seed", "11", "--out", &format!("{}/g.wsp", dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let file = format!("{}/g.wsp", dir.path());
    let plain = run(&["solve", "--alg", "wsp", &file]);
    let kerneled = run(&["solve", "--alg", "wsp", "--kernel", &file]);
    assert_eq!(plain.status.code(), kerneled.status.code());
    let weight = |s: &str| s.lines().next().map(str::to_owned);
    assert_eq!(weight(&stdout(&plain)), weight(&stdout(&kerneled)));
}

#[test]
fn kernelize_emits_instance_plus_maps() {
    let dir = TempDir::new("kernelize");
    let gen_out = format!("{}/g.wdm", dir.path());
    run(&[
        "gen", "--kind", "wdm", "--q", "3", "--p", "2", "--sizes", "6,6,6", "--members", "90",
        "--seed", "4", "--out", &gen_out,
    ]);
    let out = run(&["kernelize", &gen_out]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("WDM 3 2\n"));
    assert!(text.contains("# MAPM 0 "));
    assert!(text.contains("# MAPE 0 "));
    let members = text.lines().filter(|l| l.starts_with("T ")).count();
    assert!(members <= 20, "kernel kept {} members", members);
}

#[test]
fn gen_is_deterministic_per_seed() {
    let args = [
        "gen", "--kind", "wdm", "--q", "3", "--p", "2", "--sizes", "5,5,5", "--members", "30",
        "--seed", "42",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(stdout(&a), stdout(&b));
    let c = run(&[
        "gen", "--kind", "wdm", "--q", "3", "--p", "2", "--sizes", "5,5,5", "--members", "30",
        "--seed", "43",
    ]);
    assert_ne!(stdout(&a), stdout(&c));
}

#[test]
fn gen_planted_records_the_witness() {
    let out = run(&[
        "gen", "--kind", "wsp", "--q", "3", "--p", "2", "--sizes", "12", "--planted", "--extra",
        "5", "--seed", "9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().last().unwrap().starts_with("# PLANTED "));
}

#[test]
fn bench_prints_the_pinned_header_and_rows() {
    let dir = TempDir::new("bench");
    dir.file("a.wdm", "WDM 2 1\nT a x 4\nT b y 7\n");
    dir.file("b.wsp", "WSP 2 2\nS a b 1\nS a c 2\n");
    let out = run(&["bench", &dir.path()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("name\talg\tq\tp\tm\tmillis\tresult"));
    let row_a = lines.next().unwrap();
    assert!(row_a.starts_with("a.wdm\twdm\t2\t1\t2\t"));
    assert!(row_a.ends_with("\t7"));
    let row_b = lines.next().unwrap();
    assert!(row_b.starts_with("b.wsp\twsp\t2\t2\t2\t"));
    assert!(row_b.ends_with("\tREJECT"));
}

#[test]
fn all_algorithms_print_the_same_weight_line() {
    let dir = TempDir::new("cross-alg");
    let file = format!("{}/x.wdm", dir.path());
    run(&[
        "gen", "--kind", "wdm", "--q", "3", "--p", "2", "--sizes", "5,5,5", "--members", "40",
        "--seed", "21", "--out", &file,
    ]);
    let weight = |args: &[&str]| -> String {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{:?}", args);
        stdout(&out).lines().next().unwrap().to_owned()
    };
    let reference = weight(&["solve", "--alg", "brute", &file]);
    for alg in ["wdm", "brute"] {
        for kernel in [false, true] {
            let mut args = vec!["solve", "--alg", alg];
            if kernel {
                args.push("--kernel");
            }
            args.push(&file);
            assert_eq!(weight(&args), reference, "alg {} kernel {}", alg, kernel);
        }
    }
    // The same family re-encoded as set packing agrees too.
    let as_wsp = format!("{}/x.wsp", dir.path());
    let text = fs::read_to_string(&file).unwrap().replacen("WDM", "WSP", 1).replace("\nT ", "\nS ");
    fs::write(&as_wsp, text).unwrap();
    for kernel in [false, true] {
        let mut args = vec!["solve", "--alg", "wsp"];
        if kernel {
            args.push("--kernel");
        }
        args.push(&as_wsp);
        assert_eq!(weight(&args), reference, "wsp kernel {}", kernel);
    }
}

#[test]
fn selftest_quick_passes() {
    let out = run(&["selftest", "--quick"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().all(|l| l.contains("PASS")));
}
