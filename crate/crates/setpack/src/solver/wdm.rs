//! Exact solver for weighted q-dimensional p-matching.
//!
//! The DP walks the first universe in ascending id order. A cell `(u, i)`
//! holds partial solutions of `i` disjoint tuples whose first elements are at
//! most `u`; its engine triples drop the first element of every tuple, which
//! is safe because first elements can never collide with anything a later
//! tuple contributes. Adding a tuple goes element by element, re-representing
//! after each step, which keeps the intermediate families small.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{best_solution, ensure_valid, insert_sorted, tri, CellObserver, PartialSel, SolveError};
use crate::exec::TaskPool;
use crate::instance::{Instance, Kind, Solution};
use crate::repset::{represent, RepQuery, Triple};

/// Extends the partial solutions of the `(u', i-1)` cell by the member
/// `member` (whose first element must follow `u'`), one element at a time.
///
/// No disjointness check is needed on the first element: stored partials only
/// contain tuples with strictly smaller first elements, and universes are
/// pairwise disjoint. Each later element `u_j` only extends partials whose
/// element set avoids it.
pub fn wdm_add(
    inst: &Instance,
    i: usize,
    member: u32,
    partials: &[PartialSel],
) -> Result<Vec<Triple<PartialSel>>, SolveError> {
    debug_assert!(inst.kind == Kind::Wdm);
    debug_assert!((2..=inst.p).contains(&i));
    let q = inst.q;
    let p = inst.p;
    let n = inst.universe_size() as u32;
    let added = &inst.members[member as usize];

    let mut current: Vec<Triple<PartialSel>> = partials
        .iter()
        .map(|sel| {
            let mut t = tri(inst, sel);
            t.payload.push(member);
            t.weight += added.weight;
            t
        })
        .collect();

    for j in 2..=q {
        let uj = added.elements[j - 1];
        let mut extended = Vec::with_capacity(current.len());
        for mut t in current {
            if insert_sorted(&mut t.elements, uj) {
                extended.push(t);
            }
        }
        let query = RepQuery {
            universe_size: n,
            s: (q - 1) * (i - 1) + (j - 1),
            r: (q - 1) * (p - i) + (q - j),
        };
        current = represent(&query, extended)?;
    }
    Ok(current)
}

/// Solves the instance exactly: a maximum-weight set of `p` pairwise-disjoint
/// tuples, or `None` when no `p` disjoint tuples exist.
pub fn solve<P: TaskPool>(inst: &Instance, pool: &P) -> Result<Option<Solution>, SolveError> {
    solve_traced(inst, pool, &mut |_, _, _| {})
}

/// As [`solve`], reporting every DP cell to `observer` as it is finished.
pub fn solve_traced<P: TaskPool>(
    inst: &Instance,
    pool: &P,
    observer: &mut CellObserver<'_>,
) -> Result<Option<Solution>, SolveError> {
    ensure_valid(inst, Kind::Wdm)?;
    let q = inst.q;
    let p = inst.p;
    let n = inst.universe_size() as u32;
    let first_universe = &inst.universes[0];
    if first_universe.is_empty() {
        return Ok(None);
    }

    let mut by_first: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for member in &inst.members {
        by_first.entry(member.elements[0]).or_default().push(member.index);
    }

    // One column of cells per element of U_1; only the previous column is read.
    let mut prev: Vec<Vec<PartialSel>> = vec![Vec::new(); p + 1];
    for &u in first_universe {
        let arrivals: &[u32] = by_first.get(&u).map_or(&[], Vec::as_slice);
        let mut cur: Vec<Vec<PartialSel>> = vec![Vec::new(); p + 1];

        // i = 1: fold the new singletons into the previous representative set.
        let mut family: Vec<Triple<PartialSel>> =
            prev[1].iter().map(|sel| tri(inst, sel)).collect();
        family.extend(arrivals.iter().map(|&mi| tri(inst, &[mi])));
        let query = RepQuery { universe_size: n, s: q - 1, r: (q - 1) * (p - 1) };
        cur[1] = payloads(represent(&query, family)?);

        for i in 2..=p {
            let additions = pool.map_ordered(arrivals.len(), &|k| {
                wdm_add(inst, i, arrivals[k], &prev[i - 1])
            });
            let mut family: Vec<Triple<PartialSel>> =
                prev[i].iter().map(|sel| tri(inst, sel)).collect();
            for addition in additions {
                family.extend(addition?);
            }
            let query =
                RepQuery { universe_size: n, s: (q - 1) * i, r: (q - 1) * (p - i) };
            cur[i] = payloads(represent(&query, family)?);
        }

        for (i, cell) in cur.iter().enumerate().skip(1) {
            observer(u, i, cell);
        }
        prev = cur;
    }
    Ok(best_solution(inst, &prev[p]))
}

fn payloads(kept: Vec<Triple<PartialSel>>) -> Vec<PartialSel> {
    kept.into_iter().map(|t| t.payload).collect()
}
