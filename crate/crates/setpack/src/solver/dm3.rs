//! Unweighted 3-dimensional p-matching, faster than the general weighted DP.
//!
//! The solver first finds a (p-1)-matching by recursion. If a p-matching
//! exists at all, one exists that reuses many elements of the smaller
//! matching: writing `r` for the number of solution elements outside the
//! reused pool, some coordinate `t` admits `r <= (2p+4)/3`. For each anchor
//! coordinate `t` and each `r`, a DP over `U_t` tracks, per cell, which pool
//! elements the partial solution covers (exactly), so its engine triples only
//! need to carry the few elements outside the pool, which shrinks the
//! representation radius well below the general solver's.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{ensure_valid, PartialSel, SolveError};
use crate::exec::TaskPool;
use crate::instance::{Instance, Kind, Solution};
use crate::repset::{represent, RepQuery, Triple};

/// One DP cell as reported by [`solve_traced`], with its full context.
pub struct DmCell<'a> {
    /// Target size of the matching this DP level is looking for.
    pub level: usize,
    /// Anchor coordinate (0-based).
    pub t: usize,
    /// Number of solution elements assumed to fall outside the pool.
    pub r: usize,
    /// Elements of the lower-level matching outside `U_t`, ascending.
    pub anchor_pool: &'a [u32],
    pub u: u32,
    pub i: usize,
    /// Bitmask over `anchor_pool`: pool elements covered exactly.
    pub covered: u32,
    pub cell: &'a [PartialSel],
}

pub type DmObserver<'a> = dyn FnMut(&DmCell<'_>) + 'a;

/// One (anchor, r) search over the whole pool of branches at a recursion
/// level; arguments are the level, the lower-level matching, and the r cap.
type LevelSearch<'a> = dyn FnMut(usize, &[u32], usize) -> Option<PartialSel> + 'a;

/// Solves unweighted (3,p)-matching: `p` pairwise-disjoint tuples or `None`.
/// Requires q = 3 and all weights equal; the reported total weight is `p`
/// times the common weight.
pub fn solve<P: TaskPool>(inst: &Instance, pool: &P) -> Result<Option<Solution>, SolveError> {
    let ctx = DmContext::new(inst)?;
    let picked = recurse(&ctx, inst.p, &mut |level, prev, rmax| {
        pool.find_map_ordered(3 * (rmax + 1), &|idx| {
            let t = idx / (rmax + 1);
            let r = idx % (rmax + 1);
            run_level(&ctx, level, prev, t, r, &mut |_| {})
        })
    });
    Ok(picked.map(|sel| ctx.solution(sel)))
}

/// As [`solve`], but strictly sequential, reporting every DP cell.
pub fn solve_traced(
    inst: &Instance,
    observer: &mut DmObserver<'_>,
) -> Result<Option<Solution>, SolveError> {
    let ctx = DmContext::new(inst)?;
    let picked = recurse_traced(&ctx, inst.p, observer);
    Ok(picked.map(|sel| ctx.solution(sel)))
}

struct DmContext<'a> {
    inst: &'a Instance,
    /// Element id to coordinate.
    coord: Vec<usize>,
}

impl<'a> DmContext<'a> {
    fn new(inst: &'a Instance) -> Result<Self, SolveError> {
        ensure_valid(inst, Kind::Wdm)?;
        if inst.q != 3 {
            return Err(SolveError::ArityUnsupported { found: inst.q });
        }
        if !inst.members.is_empty() && inst.uniform_weight().is_none() {
            return Err(SolveError::NonUniformWeights);
        }
        Ok(DmContext { inst, coord: inst.coord_of() })
    }

    fn solution(&self, mut picked: Vec<u32>) -> Solution {
        picked.sort_unstable();
        let common = self.inst.uniform_weight().unwrap_or(0);
        Solution { total_weight: common * picked.len() as i64, picked }
    }
}

fn recurse(
    ctx: &DmContext<'_>,
    level: usize,
    search: &mut LevelSearch<'_>,
) -> Option<PartialSel> {
    if level == 1 {
        return (!ctx.inst.members.is_empty()).then(|| vec![0]);
    }
    // A p-matching contains a (p-1)-matching, so a rejection here is final.
    let prev = recurse(ctx, level - 1, search)?;
    let rmax = (2 * level + 4) / 3;
    search(level, &prev, rmax)
}

fn recurse_traced(
    ctx: &DmContext<'_>,
    level: usize,
    observer: &mut DmObserver<'_>,
) -> Option<PartialSel> {
    recurse(ctx, level, &mut |lvl, prev, rmax| {
        for t in 0..3 {
            for r in 0..=rmax {
                if let Some(found) = run_level(ctx, lvl, prev, t, r, observer) {
                    return Some(found);
                }
            }
        }
        None
    })
}

/// The DP for one (anchor coordinate, r) choice. Returns some `level`-matching
/// if one with exactly `2*level - r` elements inside the anchor pool exists
/// (and possibly otherwise; any returned matching is checked disjoint by
/// construction).
fn run_level(
    ctx: &DmContext<'_>,
    level: usize,
    prev_matching: &[u32],
    t: usize,
    r: usize,
    observer: &mut DmObserver<'_>,
) -> Option<PartialSel> {
    let inst = ctx.inst;
    let n = inst.universe_size() as u32;

    // P_t: elements of the lower matching outside U_t, ascending.
    let mut anchor_pool: Vec<u32> = prev_matching
        .iter()
        .flat_map(|&mi| inst.members[mi as usize].elements.iter().copied())
        .filter(|&e| ctx.coord[e as usize] != t)
        .collect();
    anchor_pool.sort_unstable();
    let np = anchor_pool.len();
    debug_assert_eq!(np, 2 * (level - 1));

    // Per member: anchor element, covered pool bits, elements outside pool.
    let mut covered_of = vec![0u32; inst.members.len()];
    let mut free_of: Vec<Vec<u32>> = Vec::with_capacity(inst.members.len());
    let mut by_anchor: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for member in &inst.members {
        let mut free = Vec::with_capacity(2);
        for (pos, &e) in member.elements.iter().enumerate() {
            if pos == t {
                continue;
            }
            match anchor_pool.binary_search(&e) {
                Ok(bit) => covered_of[member.index as usize] |= 1 << bit,
                Err(_) => free.push(e),
            }
        }
        free.sort_unstable();
        free_of.push(free);
        by_anchor.entry(member.elements[t]).or_default().push(member.index);
    }

    let tri_dm = |sel: &PartialSel| -> Triple<PartialSel> {
        let mut elements: Vec<u32> = sel
            .iter()
            .flat_map(|&mi| free_of[mi as usize].iter().copied())
            .collect();
        elements.sort_unstable();
        Triple::new(elements, sel.clone(), 1)
    };

    // Covered-subset iteration order: popcount, then numeric value.
    let mut masks: Vec<u32> = (0..1u32 << np)
        .filter(|m| {
            let pc = m.count_ones() as usize;
            pc + r >= 2 && pc + r <= 2 * level
        })
        .collect();
    masks.sort_unstable_by_key(|m| (m.count_ones(), *m));

    let cells = 1usize << np;
    let mut prev_col: Vec<Vec<Vec<PartialSel>>> = vec![vec![Vec::new(); cells]; level + 1];
    let universe_t = &inst.universes[t];

    for &u in universe_t {
        let arrivals: &[u32] = by_anchor.get(&u).map_or(&[], Vec::as_slice);
        let mut cur_col: Vec<Vec<Vec<PartialSel>>> = vec![vec![Vec::new(); cells]; level + 1];

        for &mask in &masks {
            let pc = mask.count_ones() as usize;

            // i = 1: singletons whose covered set is exactly `mask`, folded
            // into the previous representative cell.
            if pc <= 2 {
                let mut family: Vec<Triple<PartialSel>> =
                    prev_col[1][mask as usize].iter().map(&tri_dm).collect();
                family.extend(
                    arrivals
                        .iter()
                        .filter(|&&mi| covered_of[mi as usize] == mask)
                        .map(|&mi| tri_dm(&vec![mi])),
                );
                if !family.is_empty() {
                    let query =
                        RepQuery { universe_size: n, s: 2 - pc, r: r - (2 - pc) };
                    cur_col[1][mask as usize] =
                        payloads(represent(&query, family).expect("arity is structural"));
                }
            }

            for i in 2..=level.min((pc + r) / 2) {
                let mut family: Vec<Triple<PartialSel>> =
                    prev_col[i][mask as usize].iter().map(&tri_dm).collect();
                for sub in submasks_ascending(mask) {
                    let need = mask ^ sub;
                    for sel in &prev_col[i - 1][sub as usize] {
                        let base = tri_dm(sel);
                        for &mi in arrivals {
                            if covered_of[mi as usize] != need {
                                continue;
                            }
                            let clash = free_of[mi as usize]
                                .iter()
                                .any(|e| base.elements.binary_search(e).is_ok());
                            if clash {
                                continue;
                            }
                            let mut elements = base.elements.clone();
                            for &e in &free_of[mi as usize] {
                                super::insert_sorted(&mut elements, e);
                            }
                            let mut payload = sel.clone();
                            payload.push(mi);
                            family.push(Triple::new(elements, payload, 1));
                        }
                    }
                }
                if !family.is_empty() {
                    let s = 2 * i - pc;
                    let query = RepQuery { universe_size: n, s, r: r - s };
                    cur_col[i][mask as usize] =
                        payloads(represent(&query, family).expect("arity is structural"));
                }
            }
        }

        for (i, row) in cur_col.iter().enumerate().skip(1) {
            for &mask in &masks {
                observer(&DmCell {
                    level,
                    t,
                    r,
                    anchor_pool: &anchor_pool,
                    u,
                    i,
                    covered: mask,
                    cell: &row[mask as usize],
                });
            }
        }
        prev_col = cur_col;
    }

    for &mask in &masks {
        if let Some(sel) = prev_col[level][mask as usize].first() {
            return Some(sel.clone());
        }
    }
    None
}

fn submasks_ascending(mask: u32) -> Vec<u32> {
    let mut subs = Vec::new();
    let mut s = mask;
    loop {
        subs.push(s);
        if s == 0 {
            break;
        }
        s = (s - 1) & mask;
    }
    subs.reverse();
    subs
}

fn payloads(kept: Vec<Triple<PartialSel>>) -> Vec<PartialSel> {
    kept.into_iter().map(|t| t.payload).collect()
}
