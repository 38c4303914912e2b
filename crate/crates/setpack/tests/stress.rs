//! Long-running randomized stress runs; `cargo test -- --ignored` to run.

use setpack::instance::{Kind, SplitMix64};
use setpack::selfcheck::{
    check_dm3_matches_oracle, check_kernel_pipeline, check_solver_matches_oracle,
    sample_instance, SampleSpec,
};

#[test]
#[ignore = "minutes-long fuzz; run explicitly"]
fn solvers_survive_a_wide_fuzz() {
    let mut rng = SplitMix64::new(0xf022);
    for case in 0..2000usize {
        let kind = if case % 2 == 0 { Kind::Wdm } else { Kind::Wsp };
        let spec = SampleSpec {
            kind,
            q: 2 + case % 3,
            p: 1 + case % 4,
            max_members: 24,
            weight_lo: -50,
            weight_hi: 50,
        };
        let inst = sample_instance(&mut rng, &spec);
        if let Err(e) = check_solver_matches_oracle(&inst) {
            panic!("case {} ({:?} q={} p={}): {}", case, kind, spec.q, spec.p, e);
        }
    }
}

#[test]
#[ignore = "minutes-long fuzz; run explicitly"]
fn dm3_and_kernel_survive_a_wide_fuzz() {
    let mut rng = SplitMix64::new(0xf023);
    for case in 0..400usize {
        let unweighted = SampleSpec {
            kind: Kind::Wdm,
            q: 3,
            p: 1 + case % 4,
            max_members: 24,
            weight_lo: 1,
            weight_hi: 1,
        };
        let inst = sample_instance(&mut rng, &unweighted);
        if let Err(e) = check_dm3_matches_oracle(&inst) {
            panic!("dm3 case {}: {}", case, e);
        }
        let weighted = SampleSpec {
            kind: if case % 2 == 0 { Kind::Wsp } else { Kind::Wdm },
            q: 3,
            p: 2 + case % 2,
            max_members: 200,
            weight_lo: -9,
            weight_hi: 9,
        };
        let inst = sample_instance(&mut rng, &weighted);
        if let Err(e) = check_kernel_pipeline(&inst) {
            panic!("kernel case {}: {}", case, e);
        }
    }
}
