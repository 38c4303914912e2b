//! Brute-force reference solver and exhaustive representation checker.
//!
//! These are the ground-truth instruments the whole test suite leans on.
//! They are deliberately naive; a budget keeps them from being pointed at
//! inputs they cannot finish.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::instance::{Instance, Solution};
use crate::repset::{binomial, Triple};

/// Cap on the number of enumerations an oracle call may perform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_combinations: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_combinations: 20_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    BudgetExceeded { needed: u128, budget: u64 },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::BudgetExceeded { needed, budget } => {
                write!(f, "{} enumerations needed, budget is {}", needed, budget)
            }
        }
    }
}

/// Enumerates all `p`-subsets of the member list and returns a maximum-weight
/// pairwise-disjoint one (ties: lexicographically smallest index vector), or
/// `None` when no disjoint `p`-subset exists.
pub fn brute_force_solve(
    inst: &Instance,
    budget: OracleBudget,
) -> Result<Option<Solution>, OracleError> {
    let m = inst.members.len();
    let p = inst.p;
    let needed = binomial(m as u64, p as u64);
    if needed > budget.max_combinations as u128 {
        return Err(OracleError::BudgetExceeded { needed, budget: budget.max_combinations });
    }
    if p > m {
        return Ok(None);
    }

    let n = inst.universe_size();
    let mut used = alloc::vec![false; n];
    let mut chosen: Vec<u32> = Vec::with_capacity(p);
    let mut best: Option<(i64, Vec<u32>)> = None;

    // Depth-first over index combinations in lexicographic order; strict
    // improvement keeps the lexicographically smallest optimum.
    fn descend(
        inst: &Instance,
        start: usize,
        weight: i64,
        used: &mut [bool],
        chosen: &mut Vec<u32>,
        best: &mut Option<(i64, Vec<u32>)>,
    ) {
        if chosen.len() == inst.p {
            if best.as_ref().is_none_or(|(bw, _)| weight > *bw) {
                *best = Some((weight, chosen.clone()));
            }
            return;
        }
        let remaining = inst.p - chosen.len();
        for idx in start..=inst.members.len().saturating_sub(remaining) {
            let member = &inst.members[idx];
            if member.elements.iter().any(|&e| used[e as usize]) {
                continue;
            }
            for &e in &member.elements {
                used[e as usize] = true;
            }
            chosen.push(idx as u32);
            descend(inst, idx + 1, weight + member.weight, used, chosen, best);
            chosen.pop();
            for &e in &member.elements {
                used[e as usize] = false;
            }
        }
    }
    descend(inst, 0, 0, &mut used, &mut chosen, &mut best);

    Ok(best.map(|(total_weight, picked)| Solution { picked, total_weight }))
}

/// Result of an exhaustive Definition-1 check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Represents,
    /// A blocker `y` avoided by `family[unserved]` that no candidate triple
    /// avoids with at least the same weight.
    Counterexample { y: Vec<u32>, unserved: usize },
}

impl CheckOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, CheckOutcome::Represents)
    }
}

/// Exhaustively tests whether `candidate` max `r`-represents `family`: for
/// every blocker set `Y` with `|Y| <= r`, whenever some family triple avoids
/// `Y`, some candidate triple must avoid `Y` with at least that weight.
///
/// Blockers are enumerated over the elements occurring in the family's sets
/// plus up to `r` fresh elements; every other blocker imposes a requirement
/// already covered by one of these.
pub fn check_representation<A, B>(
    universe_size: u32,
    r: usize,
    family: &[Triple<A>],
    candidate: &[Triple<B>],
    budget: OracleBudget,
) -> Result<CheckOutcome, OracleError> {
    let mut pool: BTreeSet<u32> = family.iter().flat_map(|t| t.elements.iter().copied()).collect();
    let mut fresh = 0usize;
    for id in 0..universe_size {
        if fresh == r {
            break;
        }
        if pool.insert(id) {
            fresh += 1;
        }
    }
    let pool: Vec<u32> = pool.into_iter().collect();

    let mut needed: u128 = 0;
    for k in 0..=r.min(pool.len()) {
        needed += binomial(pool.len() as u64, k as u64);
    }
    if needed > budget.max_combinations as u128 {
        return Err(OracleError::BudgetExceeded { needed, budget: budget.max_combinations });
    }

    let mut outcome = CheckOutcome::Represents;
    let mut check_y = |y: &[u32]| -> bool {
        let disjoint = |elements: &[u32]| elements.iter().all(|e| !y.contains(e));
        let mut strongest: Option<usize> = None;
        for (i, t) in family.iter().enumerate() {
            if disjoint(&t.elements)
                && strongest.is_none_or(|b| t.weight > family[b].weight)
            {
                strongest = Some(i);
            }
        }
        let Some(unserved) = strongest else { return true };
        let served = candidate
            .iter()
            .any(|t| disjoint(&t.elements) && t.weight >= family[unserved].weight);
        if !served {
            outcome = CheckOutcome::Counterexample { y: y.to_vec(), unserved };
        }
        served
    };

    // Size-k index combinations of the pool, in lexicographic order.
    'sizes: for k in 0..=r.min(pool.len()) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let y: Vec<u32> = idx.iter().map(|&i| pool[i]).collect();
            if !check_y(&y) {
                break 'sizes;
            }
            // Advance to the next combination.
            let mut j = k;
            while j > 0 {
                j -= 1;
                if idx[j] < pool.len() - (k - j) {
                    idx[j] += 1;
                    for t in j + 1..k {
                        idx[t] = idx[t - 1] + 1;
                    }
                    break;
                }
                if j == 0 {
                    continue 'sizes;
                }
            }
            if k == 0 {
                continue 'sizes;
            }
        }
    }
    Ok(outcome)
}
