//! Weight-preserving kernelization.
//!
//! One representative-family computation over the members themselves (each
//! member as the triple of its full element set and weight, radius `q(p-1)`)
//! keeps at most `C(qp, q)` members while preserving the optimum weight and
//! feasibility in both directions: any solution of the original can be
//! rebuilt member by member inside the kept family, swapping each dropped
//! member for a kept one of at least its weight that avoids everything else.

use alloc::vec::Vec;

use crate::instance::{canonicalize, Instance, Kind};
use crate::repset::{binomial, represent, RepQuery, Triple};
use crate::solver::{ensure_valid, SolveError};

/// A reduced instance plus the maps back to the original.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelResult {
    pub kernel: Instance,
    /// Kernel member index to original member index (strictly increasing).
    pub member_map: Vec<u32>,
    /// Kernel element id to original element id.
    pub element_map: Vec<u32>,
}

impl KernelResult {
    fn identity(inst: &Instance) -> Self {
        KernelResult {
            kernel: inst.clone(),
            member_map: (0..inst.members.len() as u32).collect(),
            element_map: (0..inst.labels.len() as u32).collect(),
        }
    }

    /// Lifts a kernel solution's picks to original member indices.
    pub fn lift(&self, picked: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> =
            picked.iter().map(|&k| self.member_map[k as usize]).collect();
        out.sort_unstable();
        out
    }
}

pub fn kernelize_wdm(inst: &Instance) -> Result<KernelResult, SolveError> {
    ensure_valid(inst, Kind::Wdm)?;
    Ok(shrink(inst))
}

pub fn kernelize_wsp(inst: &Instance) -> Result<KernelResult, SolveError> {
    ensure_valid(inst, Kind::Wsp)?;
    Ok(shrink(inst))
}

/// Kind-dispatching front end.
pub fn kernelize(inst: &Instance) -> Result<KernelResult, SolveError> {
    match inst.kind {
        Kind::Wdm => kernelize_wdm(inst),
        Kind::Wsp => kernelize_wsp(inst),
    }
}

fn shrink(inst: &Instance) -> KernelResult {
    let q = inst.q;
    let p = inst.p;
    // C(qp, q) is the engine's output cap: below it, kernelization cannot
    // shrink the family, so return the instance unchanged.
    if inst.members.len() as u128 <= binomial((q * p) as u64, q as u64) {
        return KernelResult::identity(inst);
    }
    let family: Vec<Triple<u32>> = inst
        .members
        .iter()
        .map(|m| {
            let mut all = m.elements.clone();
            all.sort_unstable();
            Triple::new(all, m.index, m.weight)
        })
        .collect();
    let query = RepQuery {
        universe_size: inst.universe_size() as u32,
        s: q,
        r: q * (p - 1),
    };
    let kept = represent(&query, family).expect("member arity is validated");

    let member_map: Vec<u32> = kept.iter().map(|t| t.payload).collect();
    let members: Vec<(Vec<u32>, i64)> = kept
        .iter()
        .map(|t| {
            let m = &inst.members[t.payload as usize];
            (m.elements.clone(), m.weight)
        })
        .collect();
    let (kernel, element_map) = canonicalize(inst.kind, q, p, &inst.labels, &members);
    KernelResult { kernel, member_map, element_map }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Serial;
    use crate::instance::{gen_random, parse_instance, validate};
    use crate::oracle::{brute_force_solve, OracleBudget};
    use alloc::vec;

    #[test]
    fn small_families_pass_through_unchanged() {
        // 3 members, q=3, p=2: 3 <= C(6,3) = 20.
        let inst = parse_instance("WDM 3 2\nT a x 1 5\nT b y 2 3\nT c z 3 1\n").unwrap();
        let result = kernelize_wdm(&inst).unwrap();
        assert_eq!(result.kernel, inst);
        assert_eq!(result.member_map, vec![0, 1, 2]);
        assert_eq!(result.element_map, (0..9).collect::<Vec<u32>>());
    }

    #[test]
    fn large_wdm_family_shrinks_and_keeps_the_optimum() {
        let inst =
            gen_random(31, crate::instance::Kind::Wdm, 3, 2, &[6, 6, 6], 100, -9, 9).unwrap();
        let result = kernelize_wdm(&inst).unwrap();
        assert!(result.kernel.members.len() <= 20); // C(6,3)
        assert!(validate(&result.kernel).is_empty());
        // Universe bound: sum of universe sizes <= q * |S*|.
        assert!(result.kernel.universe_size() <= 3 * result.kernel.members.len());
        let original = brute_force_solve(&inst, OracleBudget::default()).unwrap();
        let reduced = brute_force_solve(&result.kernel, OracleBudget::default()).unwrap();
        assert_eq!(
            original.map(|s| s.total_weight),
            reduced.map(|s| s.total_weight)
        );
    }

    #[test]
    fn kernel_solution_lifts_to_valid_original_picks() {
        let inst =
            gen_random(77, crate::instance::Kind::Wsp, 3, 2, &[12], 150, -9, 9).unwrap();
        let result = kernelize_wsp(&inst).unwrap();
        let sol = crate::solver::wsp::solve(&result.kernel, &Serial).unwrap().unwrap();
        let lifted = result.lift(&sol.picked);
        let original = crate::instance::Solution {
            picked: lifted,
            total_weight: sol.total_weight,
        };
        crate::instance::verify_solution(&inst, &original).unwrap();
    }

    #[test]
    fn pairwise_intersecting_family_stays_infeasible() {
        // Every set contains `z`: no 2 disjoint sets before or after.
        let mut text = alloc::string::String::from("WSP 3 2\n");
        for i in 0..30 {
            text.push_str(&alloc::format!("S z a{} b{} 1\n", i, i));
        }
        let inst = parse_instance(&text).unwrap();
        let result = kernelize_wsp(&inst).unwrap();
        assert!(result.kernel.members.len() <= 20);
        assert_eq!(
            brute_force_solve(&result.kernel, OracleBudget::default()).unwrap(),
            None
        );
    }

    #[test]
    fn kernel_bound_holds_for_other_arities() {
        // q=2, p=3: bound C(6,2) = 15.
        let inst =
            gen_random(41, crate::instance::Kind::Wsp, 2, 3, &[9], 36, -9, 9).unwrap();
        let result = kernelize_wsp(&inst).unwrap();
        assert!(result.kernel.members.len() <= 15);
        let a = brute_force_solve(&inst, OracleBudget::default()).unwrap();
        let b = brute_force_solve(&result.kernel, OracleBudget::default()).unwrap();
        assert_eq!(a.map(|s| s.total_weight), b.map(|s| s.total_weight));

        // q=4, p=2: bound C(8,4) = 70.
        let inst =
            gen_random(42, crate::instance::Kind::Wdm, 4, 2, &[4, 4, 4, 4], 120, -9, 9)
                .unwrap();
        let result = kernelize_wdm(&inst).unwrap();
        assert!(result.kernel.members.len() <= 70);
        let a = brute_force_solve(&inst, OracleBudget::default()).unwrap();
        let b = brute_force_solve(&result.kernel, OracleBudget::default()).unwrap();
        assert_eq!(a.map(|s| s.total_weight), b.map(|s| s.total_weight));
    }

    #[test]
    fn kernelization_is_idempotent() {
        let inst =
            gen_random(5, crate::instance::Kind::Wsp, 3, 3, &[12], 200, -5, 5).unwrap();
        let once = kernelize_wsp(&inst).unwrap();
        assert!(once.kernel.members.len() <= 84); // C(9,3)
        let twice = kernelize_wsp(&once.kernel).unwrap();
        assert_eq!(twice.kernel, once.kernel);
    }

    #[test]
    fn kernel_text_round_trips_with_maps() {
        let inst =
            gen_random(13, crate::instance::Kind::Wdm, 3, 2, &[5, 5, 5], 60, -9, 9).unwrap();
        let result = kernelize_wdm(&inst).unwrap();
        let text = crate::instance::serialize_kernel(&result);
        assert!(text.contains("# MAPM 0 "));
        assert!(text.contains("# MAPE 0 "));
        let back = crate::instance::parse_instance(&text).unwrap();
        assert_eq!(back, result.kernel);
    }
}
