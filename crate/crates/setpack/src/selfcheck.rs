//! Scripted invariant suites: the solvers checked against the brute-force
//! oracles on seeded random inputs.
//!
//! Each `check_*` function examines one sampled input and reports the first
//! problem it finds as an `Err(String)`. [`run_suites`] bundles them into the
//! `selftest` CLI subcommand; the acceptance tests drive the same functions
//! with their own counts.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::exec::Serial;
use crate::instance::{gen_planted, gen_random, verify_solution, Instance, Kind, SplitMix64};
use crate::kernel::kernelize;
use crate::oracle::{brute_force_solve, check_representation, CheckOutcome, OracleBudget};
use crate::repset::{binomial, represent, RepQuery, Triple};
use crate::solver::{dm3, wdm, wsp, PartialSel};

/// Parameters for one sampled instance.
#[derive(Debug, Clone)]
pub struct SampleSpec {
    pub kind: Kind,
    pub q: usize,
    pub p: usize,
    pub max_members: usize,
    pub weight_lo: i64,
    pub weight_hi: i64,
}

/// Draws a random instance: universe sizes straddle the feasibility
/// threshold, so the sample mixes feasible and infeasible cases.
pub fn sample_instance(rng: &mut SplitMix64, spec: &SampleSpec) -> Instance {
    let planted = rng.below(4) == 0;
    let sizes: Vec<usize> = match spec.kind {
        Kind::Wdm => (0..spec.q)
            .map(|_| {
                let lo = if planted { spec.p } else { spec.p.saturating_sub(1).max(1) };
                lo + rng.below(3) as usize
            })
            .collect(),
        Kind::Wsp => {
            let lo = if planted {
                spec.q * spec.p
            } else {
                (spec.q * spec.p).saturating_sub(2).max(spec.q)
            };
            alloc::vec![lo + rng.below(4) as usize]
        }
    };
    let capacity: u128 = match spec.kind {
        Kind::Wdm => sizes.iter().map(|&s| s as u128).product(),
        Kind::Wsp => binomial(sizes[0] as u64, spec.q as u64),
    };
    let cap = capacity.min(spec.max_members as u128) as usize;
    let seed = rng.next_u64();
    if planted && cap > spec.p {
        let m_extra = rng.below((cap - spec.p) as u64 + 1) as usize;
        if let Ok((inst, _)) = gen_planted(
            seed,
            spec.kind,
            spec.q,
            spec.p,
            &sizes,
            m_extra,
            spec.weight_lo,
            spec.weight_hi,
        ) {
            return inst;
        }
    }
    let m = 1 + rng.below(cap as u64) as usize;
    gen_random(seed, spec.kind, spec.q, spec.p, &sizes, m, spec.weight_lo, spec.weight_hi)
        .expect("sampler respects generator bounds")
}

/// Kind-matching DP solver vs the brute-force oracle: identical verdict,
/// identical optimum weight, and a valid returned solution.
pub fn check_solver_matches_oracle(inst: &Instance) -> Result<(), String> {
    let expected = brute_force_solve(inst, OracleBudget::default())
        .map_err(|e| format!("oracle budget: {}", e))?;
    let got = match inst.kind {
        Kind::Wdm => wdm::solve(inst, &Serial),
        Kind::Wsp => wsp::solve(inst, &Serial),
    }
    .map_err(|e| format!("solver: {}", e))?;
    match (&expected, &got) {
        (None, None) => Ok(()),
        (Some(e), Some(g)) => {
            if e.total_weight != g.total_weight {
                return Err(format!(
                    "optimum mismatch: oracle {}, solver {}",
                    e.total_weight, g.total_weight
                ));
            }
            verify_solution(inst, g).map_err(|e| format!("invalid solution: {}", e))
        }
        _ => Err(format!(
            "verdict mismatch: oracle {:?}, solver {:?}",
            expected.as_ref().map(|s| s.total_weight),
            got.as_ref().map(|s| s.total_weight)
        )),
    }
}

/// dm3 vs oracle on an unweighted (3,p) instance: same accept/reject verdict
/// and a valid matching on accept.
pub fn check_dm3_matches_oracle(inst: &Instance) -> Result<(), String> {
    let expected = brute_force_solve(inst, OracleBudget::default())
        .map_err(|e| format!("oracle budget: {}", e))?;
    let got = dm3::solve(inst, &Serial).map_err(|e| format!("solver: {}", e))?;
    if expected.is_some() != got.is_some() {
        return Err(format!(
            "verdict mismatch: oracle {}, dm3 {}",
            expected.is_some(),
            got.is_some()
        ));
    }
    if let Some(sol) = &got {
        verify_solution(inst, sol).map_err(|e| format!("invalid solution: {}", e))?;
    }
    Ok(())
}

/// Kernel guarantees: size bounds, universe bound, and pipeline equivalence
/// of optimum weight and feasibility (via the kind-matching solver).
pub fn check_kernel_pipeline(inst: &Instance) -> Result<(), String> {
    let result = kernelize(inst).map_err(|e| format!("kernelize: {}", e))?;
    let bound = binomial((inst.q * inst.p) as u64, inst.q as u64);
    if result.kernel.members.len() as u128 > bound {
        return Err(format!(
            "kernel keeps {} members, bound is {}",
            result.kernel.members.len(),
            bound
        ));
    }
    let universe_total: usize = result.kernel.universes.iter().map(Vec::len).sum();
    if universe_total > inst.q * result.kernel.members.len() {
        return Err(format!(
            "kernel universe has {} elements for {} members",
            universe_total,
            result.kernel.members.len()
        ));
    }
    let solve = |x: &Instance| match x.kind {
        Kind::Wdm => wdm::solve(x, &Serial),
        Kind::Wsp => wsp::solve(x, &Serial),
    };
    let original = solve(inst).map_err(|e| format!("solve original: {}", e))?;
    let reduced = solve(&result.kernel).map_err(|e| format!("solve kernel: {}", e))?;
    match (&original, &reduced) {
        (None, None) => Ok(()),
        (Some(a), Some(b)) if a.total_weight == b.total_weight => {
            // The lifted picks must be a valid solution of the original.
            let lifted = crate::instance::Solution {
                picked: result.lift(&b.picked),
                total_weight: b.total_weight,
            };
            verify_solution(inst, &lifted).map_err(|e| format!("lifted solution: {}", e))
        }
        _ => Err(format!(
            "pipeline mismatch: original {:?}, kernel {:?}",
            original.map(|s| s.total_weight),
            reduced.map(|s| s.total_weight)
        )),
    }
}

/// WDM solved directly vs re-encoded as WSP: identical optimum.
pub fn check_wdm_wsp_agreement(inst: &Instance) -> Result<(), String> {
    let direct = wdm::solve(inst, &Serial).map_err(|e| format!("wdm: {}", e))?;
    let reencoded = wsp::solve(&inst.to_wsp(), &Serial).map_err(|e| format!("wsp: {}", e))?;
    match (&direct, &reencoded) {
        (None, None) => Ok(()),
        (Some(a), Some(b)) if a.total_weight == b.total_weight => Ok(()),
        _ => Err(format!(
            "wdm {:?} vs wsp {:?}",
            direct.map(|s| s.total_weight),
            reencoded.map(|s| s.total_weight)
        )),
    }
}

/// One random family through the engine: size bound, subset identity,
/// determinism, Definition-1 soundness, and soundness of a second pass
/// (transitivity of representation).
pub fn check_repset_family(rng: &mut SplitMix64) -> Result<(), String> {
    let universe = 1 + rng.below(12) as u32;
    let s = rng.below(4).min(universe as u64) as usize;
    let r = rng.below(4) as usize;
    let count = 1 + rng.below(60) as usize;
    let mut family: Vec<Triple<usize>> = Vec::with_capacity(count);
    for marker in 0..count {
        let mut elements: Vec<u32> = Vec::with_capacity(s);
        while elements.len() < s {
            let e = rng.below(universe as u64) as u32;
            if !elements.contains(&e) {
                elements.push(e);
            }
        }
        elements.sort_unstable();
        family.push(Triple::new(elements, marker, rng.range_i64(-20, 20)));
    }
    let query = RepQuery { universe_size: universe, s, r };
    let kept = represent(&query, family.clone()).map_err(|e| format!("represent: {}", e))?;

    let bound = binomial((s + r) as u64, s as u64);
    if kept.len() as u128 > bound {
        return Err(format!("kept {} triples, bound C({},{}) = {}", kept.len(), s + r, s, bound));
    }
    for t in &kept {
        if family[t.payload] != *t {
            return Err(format!("triple {} not an identical member of the input", t.payload));
        }
    }
    let again = represent(&query, family.clone()).map_err(|e| format!("represent: {}", e))?;
    if again != kept {
        return Err(String::from("non-deterministic output"));
    }
    match check_representation(universe, r, &family, &kept, OracleBudget::default())
        .map_err(|e| format!("checker budget: {}", e))?
    {
        CheckOutcome::Represents => {}
        CheckOutcome::Counterexample { y, unserved } => {
            return Err(format!("unserved blocker {:?} for triple {}", y, unserved));
        }
    }
    // Representing the representative family again must still represent the
    // original family.
    let twice = represent(&query, kept).map_err(|e| format!("represent: {}", e))?;
    match check_representation(universe, r, &family, &twice, OracleBudget::default())
        .map_err(|e| format!("checker budget: {}", e))?
    {
        CheckOutcome::Represents => Ok(()),
        CheckOutcome::Counterexample { y, unserved } => {
            Err(format!("second pass: unserved blocker {:?} for triple {}", y, unserved))
        }
    }
}

fn cell_tri(inst: &Instance, sel: &[u32]) -> Triple<()> {
    let t = crate::solver::tri(inst, sel);
    Triple::new(t.elements, (), t.weight)
}

/// Brute-forces the full partial-solution space SOL_(u,i) for every DP cell
/// of the WDM (or WSP) solver and checks the cell's representation radius.
pub fn check_dp_cells(inst: &Instance) -> Result<(), String> {
    let q = inst.q;
    let p = inst.p;
    let n = inst.universe_size() as u32;
    let anchor_of = |sel: &crate::instance::MemberRecord| -> u32 {
        match inst.kind {
            Kind::Wdm => sel.elements[0],
            Kind::Wsp => *sel.elements.iter().min().expect("validated member"),
        }
    };
    let radius_of = |i: usize| match inst.kind {
        Kind::Wdm => (q - 1) * (p - i),
        Kind::Wsp => q * (p - i),
    };

    let mut failure: Option<String> = None;
    let mut observer = |u: u32, i: usize, cell: &[PartialSel]| {
        if failure.is_some() {
            return;
        }
        // SOL_{u,i}: every set of i disjoint members with anchors <= u.
        let eligible: Vec<u32> = inst
            .members
            .iter()
            .filter(|m| anchor_of(m) <= u)
            .map(|m| m.index)
            .collect();
        let mut space: Vec<Triple<()>> = Vec::new();
        let mut stack: Vec<u32> = Vec::new();
        enumerate_disjoint(inst, &eligible, 0, i, &mut stack, &mut |sel| {
            space.push(cell_tri(inst, sel));
        });
        let candidate: Vec<Triple<()>> = cell.iter().map(|sel| cell_tri(inst, sel)).collect();
        match check_representation(n, radius_of(i), &space, &candidate, OracleBudget::default())
        {
            Ok(CheckOutcome::Represents) => {}
            Ok(CheckOutcome::Counterexample { y, unserved }) => {
                failure = Some(format!(
                    "cell (u={}, i={}): blocker {:?} unserved for space entry {}",
                    u, i, y, unserved
                ));
            }
            Err(e) => failure = Some(format!("cell (u={}, i={}): {}", u, i, e)),
        }
    };
    match inst.kind {
        Kind::Wdm => wdm::solve_traced(inst, &Serial, &mut observer),
        Kind::Wsp => wsp::solve_traced(inst, &Serial, &mut observer),
    }
    .map_err(|e| format!("solver: {}", e))?;
    failure.map_or(Ok(()), Err)
}

fn enumerate_disjoint(
    inst: &Instance,
    eligible: &[u32],
    from: usize,
    size: usize,
    stack: &mut Vec<u32>,
    out: &mut dyn FnMut(&[u32]),
) {
    if stack.len() == size {
        out(stack);
        return;
    }
    for k in from..eligible.len() {
        let mi = eligible[k];
        let elements = &inst.members[mi as usize].elements;
        let disjoint = stack.iter().all(|&prev| {
            inst.members[prev as usize].elements.iter().all(|e| !elements.contains(e))
        });
        if disjoint {
            stack.push(mi);
            enumerate_disjoint(inst, eligible, k + 1, size, stack, out);
            stack.pop();
        }
    }
}

/// Outcome of one named suite.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteOutcome {
    fn collect(name: &'static str, results: impl Iterator<Item = Result<(), String>>) -> Self {
        let mut cases = 0;
        let mut failures = 0;
        let mut first_failure = None;
        for result in results {
            cases += 1;
            if let Err(e) = result {
                failures += 1;
                first_failure.get_or_insert(e);
            }
        }
        SuiteOutcome { name, cases, failures, first_failure }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Runs all invariant suites with built-in case counts (reduced under
/// `quick`). Deterministic: the case streams are derived from fixed seeds.
pub fn run_suites(quick: bool) -> Vec<SuiteOutcome> {
    let scale = if quick { 5 } else { 1 };
    let mut out = Vec::new();

    let mut rng = SplitMix64::new(0x5e7f_ac55);
    out.push(SuiteOutcome::collect(
        "repset-soundness",
        (0..1000 / scale).map(|_| check_repset_family(&mut rng)),
    ));

    let mut rng = SplitMix64::new(0x0dd5_eed5);
    out.push(SuiteOutcome::collect(
        "solver-vs-oracle",
        (0..120 / scale).map(|case| {
            let kind = if case % 2 == 0 { Kind::Wdm } else { Kind::Wsp };
            let spec = SampleSpec {
                kind,
                q: 2 + (case / 2) % 2,
                p: 1 + case % 3,
                max_members: 18,
                weight_lo: -20,
                weight_hi: 20,
            };
            check_solver_matches_oracle(&sample_instance(&mut rng, &spec))
        }),
    ));

    let mut rng = SplitMix64::new(0x3d3d_0001);
    out.push(SuiteOutcome::collect(
        "dm3-vs-oracle",
        (0..60 / scale).map(|case| {
            let spec = SampleSpec {
                kind: Kind::Wdm,
                q: 3,
                p: 1 + case % 3,
                max_members: 16,
                weight_lo: 1,
                weight_hi: 1,
            };
            check_dm3_matches_oracle(&sample_instance(&mut rng, &spec))
        }),
    ));

    let mut rng = SplitMix64::new(0x6b1e_0002);
    out.push(SuiteOutcome::collect(
        "kernel-pipeline",
        (0..40 / scale).map(|case| {
            let kind = if case % 2 == 0 { Kind::Wdm } else { Kind::Wsp };
            let spec = SampleSpec {
                kind,
                q: 3,
                p: 2 + case % 2,
                max_members: 120,
                weight_lo: -9,
                weight_hi: 9,
            };
            check_kernel_pipeline(&sample_instance(&mut rng, &spec))
        }),
    ));

    let mut rng = SplitMix64::new(0x77ab_0003);
    out.push(SuiteOutcome::collect(
        "wdm-as-wsp",
        (0..40 / scale).map(|case| {
            let spec = SampleSpec {
                kind: Kind::Wdm,
                q: 2 + case % 3,
                p: 1 + case % 2,
                max_members: 16,
                weight_lo: -20,
                weight_hi: 20,
            };
            check_wdm_wsp_agreement(&sample_instance(&mut rng, &spec))
        }),
    ));

    let mut rng = SplitMix64::new(0x90cc_0004);
    out.push(SuiteOutcome::collect(
        "dp-cell-invariants",
        (0..10 / scale.min(2)).map(|case| {
            let kind = if case % 2 == 0 { Kind::Wdm } else { Kind::Wsp };
            let spec = SampleSpec {
                kind,
                q: 3,
                p: 2 + case % 2,
                max_members: 10,
                weight_lo: -9,
                weight_hi: 9,
            };
            check_dp_cells(&sample_instance(&mut rng, &spec))
        }),
    ));

    out
}
