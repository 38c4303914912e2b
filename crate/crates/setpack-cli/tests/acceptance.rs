//! Acceptance suite: one test per release criterion, each ending in a
//! printed PASS line (run with `--nocapture` to see them).
//!
//! 1. Solver-vs-oracle equivalence over 500+ random weighted instances.
//! 2. dm3 verdict equivalence over 200+ unweighted instances.
//! 3. Representative-engine soundness over 1000+ random families.
//! 4. DP-cell representation invariants on 50+ small instances.
//! 5. Kernel size bounds and pipeline equivalence on 100+ instances.
//! 6. Matching instances re-encoded as packing agree on the optimum.
//! 7. Kernelize + solve on a 5000-member instance finishes under 60 s.
//! 8. Byte-identical CLI output across reruns and thread counts.
//!
//! All weight comparisons are exact integer equality.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use setpack::exec::Serial;
use setpack::instance::{gen_planted, Kind, SplitMix64};
use setpack::kernel::kernelize_wdm;
use setpack::selfcheck::{
    check_dm3_matches_oracle, check_dp_cells, check_kernel_pipeline, check_repset_family,
    check_solver_matches_oracle, check_wdm_wsp_agreement, sample_instance, SampleSpec,
};
use setpack::solver::wdm;

#[test]
fn criterion_1_oracle_equivalence_solvers() {
    let combos: [(usize, usize); 11] =
        [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (3, 4), (4, 1), (4, 2), (4, 3)];
    let mut rng = SplitMix64::new(0xacc1);
    let mut checked = 0usize;
    for &(q, p) in &combos {
        for kind in [Kind::Wdm, Kind::Wsp] {
            for trial in 0..23 {
                let spec = SampleSpec {
                    kind,
                    q,
                    p,
                    max_members: 40,
                    weight_lo: -20,
                    weight_hi: 20,
                };
                let inst = sample_instance(&mut rng, &spec);
                assert!(inst.members.len() <= 40);
                if let Err(e) = check_solver_matches_oracle(&inst) {
                    panic!("q={} p={} {:?} trial {}: {}", q, p, kind, trial, e);
                }
                checked += 1;
            }
        }
    }
    assert!(checked >= 500, "only {} instances checked", checked);
    println!("ACCEPTANCE 1 oracle-equivalence-solvers: PASS ({} instances)", checked);
}

#[test]
fn criterion_2_oracle_equivalence_dm3() {
    let mut rng = SplitMix64::new(0xacc2);
    let mut checked = 0usize;
    for case in 0..210usize {
        let spec = SampleSpec {
            kind: Kind::Wdm,
            q: 3,
            p: 1 + case % 3,
            max_members: 30,
            weight_lo: 1,
            weight_hi: 1,
        };
        let inst = sample_instance(&mut rng, &spec);
        assert!(inst.members.len() <= 30);
        if let Err(e) = check_dm3_matches_oracle(&inst) {
            panic!("case {}: {}", case, e);
        }
        checked += 1;
    }
    assert!(checked >= 200);
    println!("ACCEPTANCE 2 oracle-equivalence-dm3: PASS ({} instances)", checked);
}

#[test]
fn criterion_3_representative_engine_soundness() {
    let mut rng = SplitMix64::new(0xacc3);
    for case in 0..1000usize {
        if let Err(e) = check_repset_family(&mut rng) {
            panic!("family {}: {}", case, e);
        }
    }
    println!("ACCEPTANCE 3 representative-engine-soundness: PASS (1000 families)");
}

#[test]
fn criterion_4_dp_cell_invariants() {
    let mut rng = SplitMix64::new(0xacc4);
    let mut checked = 0usize;
    for case in 0..56usize {
        let kind = if case % 2 == 0 { Kind::Wdm } else { Kind::Wsp };
        let p = 1 + case % 3;
        let sizes: Vec<usize> = match kind {
            Kind::Wdm => (0..3).map(|_| 2 + rng.below(3) as usize).collect(),
            Kind::Wsp => vec![6 + rng.below(4) as usize],
        };
        let capacity: u128 = match kind {
            Kind::Wdm => sizes.iter().map(|&s| s as u128).product(),
            Kind::Wsp => setpack::repset::binomial(sizes[0] as u64, 3),
        };
        let m = 1 + rng.below(capacity.min(14) as u64) as usize;
        let inst = setpack::instance::gen_random(rng.next_u64(), kind, 3, p, &sizes, m, -9, 9)
            .expect("in-capacity sample");
        if let Err(e) = check_dp_cells(&inst) {
            panic!("case {} ({:?}, p={}): {}", case, kind, p, e);
        }
        checked += 1;
    }
    assert!(checked >= 50);
    println!("ACCEPTANCE 4 dp-cell-invariants: PASS ({} instances)", checked);
}

#[test]
fn criterion_5_kernel_guarantees() {
    let mut rng = SplitMix64::new(0xacc5);
    let mut checked = 0usize;
    for case in 0..100usize {
        let kind = if case % 2 == 0 { Kind::Wdm } else { Kind::Wsp };
        let p = 2 + case % 2;
        let spec = SampleSpec {
            kind,
            q: 3,
            p,
            max_members: 500,
            weight_lo: -9,
            weight_hi: 9,
        };
        // Widen the universes so families up to 500 members exist.
        let sizes: Vec<usize> = match kind {
            Kind::Wdm => vec![8; 3],
            Kind::Wsp => vec![20],
        };
        let m = 100 + rng.below(401) as usize;
        let inst = setpack::instance::gen_random(
            rng.next_u64(),
            kind,
            3,
            p,
            &sizes,
            m.min(500),
            spec.weight_lo,
            spec.weight_hi,
        )
        .expect("in-capacity sample");
        if let Err(e) = check_kernel_pipeline(&inst) {
            panic!("case {} ({:?}, p={}, m={}): {}", case, kind, p, m, e);
        }
        checked += 1;
    }
    assert!(checked >= 100);
    println!("ACCEPTANCE 5 kernel-guarantees: PASS ({} instances)", checked);
}

#[test]
fn criterion_6_wdm_as_wsp_consistency() {
    let mut rng = SplitMix64::new(0xacc6);
    let mut checked = 0usize;
    for case in 0..110usize {
        let spec = SampleSpec {
            kind: Kind::Wdm,
            q: 2 + case % 3,
            p: 1 + case % 3,
            max_members: 25,
            weight_lo: -20,
            weight_hi: 20,
        };
        let inst = sample_instance(&mut rng, &spec);
        if let Err(e) = check_wdm_wsp_agreement(&inst) {
            panic!("case {}: {}", case, e);
        }
        checked += 1;
    }
    assert!(checked >= 100);
    println!("ACCEPTANCE 6 wdm-as-wsp-consistency: PASS ({} instances)", checked);
}

#[test]
fn criterion_7_performance_smoke() {
    let (inst, witness) =
        gen_planted(7, Kind::Wdm, 3, 3, &[200, 200, 200], 4997, -20, 20).expect("generates");
    assert_eq!(inst.members.len(), 5000);
    assert_eq!(inst.universes[0].len(), 200);

    let start = Instant::now();
    let reduced = kernelize_wdm(&inst).expect("kernelizes");
    let sol = wdm::solve(&reduced.kernel, &Serial)
        .expect("solves")
        .expect("planted instance is feasible");
    let elapsed = start.elapsed();

    assert!(reduced.kernel.members.len() <= 84); // C(9,3)
    assert!(sol.total_weight >= witness);
    let lifted = setpack::instance::Solution {
        picked: reduced.lift(&sol.picked),
        total_weight: sol.total_weight,
    };
    setpack::instance::verify_solution(&inst, &lifted).expect("lifted solution is valid");
    assert!(
        elapsed < Duration::from_secs(60),
        "kernelize + solve took {:?}",
        elapsed
    );
    println!(
        "ACCEPTANCE 7 performance-smoke: PASS (5000 members kernelized to {} and solved in {:?})",
        reduced.kernel.members.len(),
        elapsed
    );
}

// ---------------------------------------------------------------------------

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_setpack"))
        .args(args)
        .output()
        .expect("binary runs")
}

struct TempDir(PathBuf);

impl TempDir {
    fn new() -> Self {
        let dir = std::env::temp_dir().join(format!("setpack-accept-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        TempDir(dir)
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).to_string_lossy().into_owned()
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

/// Two invocations must agree byte-for-byte on stdout and on the exit code.
fn assert_same_output(a: &[&str], b: &[&str]) {
    let out_a = bin(a);
    let out_b = bin(b);
    assert_eq!(out_a.status.code(), out_b.status.code(), "{:?} vs {:?}", a, b);
    assert_eq!(out_a.stdout, out_b.stdout, "{:?} vs {:?}", a, b);
}

#[test]
fn criterion_8_determinism_across_reruns_and_threads() {
    let dir = TempDir::new();
    let wdm_file = dir.path("det.wdm");
    let wsp_file = dir.path("det.wsp");
    let flat_file = dir.path("flat.wdm");

    // Seeded generation is rerun-identical.
    let gen_wdm = [
        "gen", "--kind", "wdm", "--q", "3", "--p", "2", "--sizes", "6,6,6", "--members", "60",
        "--seed", "5",
    ];
    assert_same_output(&gen_wdm, &gen_wdm);
    let gen_planted = [
        "gen", "--kind", "wsp", "--q", "3", "--p", "3", "--sizes", "14", "--planted", "--extra",
        "50", "--seed", "5",
    ];
    assert_same_output(&gen_planted, &gen_planted);

    fs::write(&wdm_file, String::from_utf8(bin(&gen_wdm).stdout).unwrap()).unwrap();
    let gen_wsp = [
        "gen", "--kind", "wsp", "--q", "3", "--p", "2", "--sizes", "12", "--members", "70",
        "--seed", "6",
    ];
    fs::write(&wsp_file, String::from_utf8(bin(&gen_wsp).stdout).unwrap()).unwrap();
    let gen_flat = [
        "gen", "--kind", "wdm", "--q", "3", "--p", "3", "--sizes", "5,5,5", "--members", "40",
        "--weight-lo", "1", "--weight-hi", "1", "--seed", "7",
    ];
    fs::write(&flat_file, String::from_utf8(bin(&gen_flat).stdout).unwrap()).unwrap();

    let mut cases: Vec<Vec<String>> = Vec::new();
    for kernel in [false, true] {
        for (alg, file) in
            [("wdm", &wdm_file), ("brute", &wdm_file), ("wsp", &wsp_file), ("dm3", &flat_file)]
        {
            let mut args = vec!["solve".to_string(), "--alg".into(), alg.into()];
            if kernel {
                args.push("--kernel".into());
            }
            args.push(file.clone());
            cases.push(args);
        }
    }
    for file in [&wdm_file, &wsp_file, &flat_file] {
        cases.push(vec!["kernelize".to_string(), file.clone()]);
    }

    for case in &cases {
        let base: Vec<&str> = case.iter().map(String::as_str).collect();
        // Rerun-identical.
        assert_same_output(&base, &base);
        if base[0] == "solve" {
            // Thread-count-independent.
            let mut one = base.clone();
            one.splice(1..1, ["--threads", "1"]);
            let mut eight = base.clone();
            eight.splice(1..1, ["--threads", "8"]);
            assert_same_output(&one, &eight);
        }
    }
    println!(
        "ACCEPTANCE 8 determinism: PASS ({} command lines, reruns and 1 vs 8 threads)",
        cases.len()
    );
}
