//! Exact solver for weighted q-set p-packing.
//!
//! Same DP skeleton as the matching solver, but over the single universe,
//! grouping sets by their smallest element. A stored partial never has its
//! smallest elements touched by later sets (later sets have strictly greater
//! minima), so engine triples may drop them; unlike matching, a later set
//! *can* contain an earlier set's smallest element, which forces the explicit
//! disjointness check when a new set is opened.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{best_solution, ensure_valid, insert_sorted, tri, CellObserver, PartialSel, SolveError};
use crate::exec::TaskPool;
use crate::instance::{Instance, Kind, Solution};
use crate::repset::{represent, RepQuery, Triple};

/// Extends the partial solutions of the `(u', i-1)` cell by the set `member`,
/// whose smallest element must follow `u'`, one element at a time in
/// ascending order.
pub fn wsp_add(
    inst: &Instance,
    i: usize,
    member: u32,
    partials: &[PartialSel],
) -> Result<Vec<Triple<PartialSel>>, SolveError> {
    debug_assert!(inst.kind == Kind::Wsp);
    debug_assert!((2..=inst.p).contains(&i));
    let q = inst.q;
    let p = inst.p;
    let n = inst.universe_size() as u32;
    let added = &inst.members[member as usize];
    let mut ascending = added.elements.clone();
    ascending.sort_unstable();
    let smallest = ascending[0];

    // Opening the set: admit a partial only if none of its sets contains the
    // new set's smallest element (it may occur there as a non-smallest
    // element, which the partial's stored element set does not reveal for
    // its own smallest elements).
    let mut current: Vec<Triple<PartialSel>> = partials
        .iter()
        .filter(|sel| {
            sel.iter()
                .all(|&mi| !inst.members[mi as usize].elements.contains(&smallest))
        })
        .map(|sel| {
            let mut t = tri(inst, sel);
            t.payload.push(member);
            t.weight += added.weight;
            t
        })
        .collect();

    for j in 2..=q {
        let uj = ascending[j - 1];
        let mut extended = Vec::with_capacity(current.len());
        for mut t in current {
            if insert_sorted(&mut t.elements, uj) {
                extended.push(t);
            }
        }
        let query = RepQuery {
            universe_size: n,
            s: (q - 1) * (i - 1) + (j - 1),
            r: q * (p - i) + (q - j),
        };
        current = represent(&query, extended)?;
    }
    Ok(current)
}

/// Solves the instance exactly: a maximum-weight collection of `p` pairwise
/// disjoint sets, or `None` when no such collection exists.
pub fn solve<P: TaskPool>(inst: &Instance, pool: &P) -> Result<Option<Solution>, SolveError> {
    solve_traced(inst, pool, &mut |_, _, _| {})
}

/// As [`solve`], reporting every DP cell to `observer` as it is finished.
pub fn solve_traced<P: TaskPool>(
    inst: &Instance,
    pool: &P,
    observer: &mut CellObserver<'_>,
) -> Result<Option<Solution>, SolveError> {
    ensure_valid(inst, Kind::Wsp)?;
    let q = inst.q;
    let p = inst.p;
    let n = inst.universe_size() as u32;
    if n == 0 {
        return Ok(None);
    }

    let mut by_smallest: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for member in &inst.members {
        let smallest = *member.elements.iter().min().expect("validated member");
        by_smallest.entry(smallest).or_default().push(member.index);
    }

    let mut prev: Vec<Vec<PartialSel>> = vec![Vec::new(); p + 1];
    for u in 0..n {
        let arrivals: &[u32] = by_smallest.get(&u).map_or(&[], Vec::as_slice);
        if arrivals.is_empty() {
            // Nothing starts at u: every cell would re-represent an already
            // representative family, which keeps it unchanged.
            for (i, cell) in prev.iter().enumerate().skip(1) {
                observer(u, i, cell);
            }
            continue;
        }
        let mut cur: Vec<Vec<PartialSel>> = vec![Vec::new(); p + 1];

        let mut family: Vec<Triple<PartialSel>> =
            prev[1].iter().map(|sel| tri(inst, sel)).collect();
        family.extend(arrivals.iter().map(|&mi| tri(inst, &[mi])));
        let query = RepQuery { universe_size: n, s: q - 1, r: q * (p - 1) };
        cur[1] = payloads(represent(&query, family)?);

        for i in 2..=p {
            let additions = pool.map_ordered(arrivals.len(), &|k| {
                wsp_add(inst, i, arrivals[k], &prev[i - 1])
            });
            let mut family: Vec<Triple<PartialSel>> =
                prev[i].iter().map(|sel| tri(inst, sel)).collect();
            for addition in additions {
                family.extend(addition?);
            }
            let query = RepQuery { universe_size: n, s: (q - 1) * i, r: q * (p - i) };
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
