//! Seeded random and planted instance generation.
//!
//! Everything is a pure function of its arguments: the same seed always
//! produces byte-identical instances. Generated instances are canonical
//! (unused elements pruned, ids in first-appearance order) and pass
//! validation.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{canonicalize, Instance, Kind};
use crate::repset::binomial;

/// Small deterministic PRNG (splitmix64). Not cryptographic; stable across
/// platforms and releases, which is what seeded tests need.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n` without modulo bias.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let width = (hi as i128 - lo as i128 + 1) as u128;
        if width > u64::MAX as u128 {
            return self.next_u64() as i64;
        }
        lo.wrapping_add(self.below(width as u64) as i64)
    }

    /// The first `take` entries of a random permutation of `0..n`.
    fn sample_distinct(&mut self, n: usize, take: usize) -> Vec<u32> {
        debug_assert!(take <= n);
        let mut pool: Vec<u32> = (0..n as u32).collect();
        for i in 0..take {
            let j = i + self.below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        pool.truncate(take);
        pool
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenError {
    BadQ { q: usize },
    BadP { p: usize },
    SizesArity { expected: usize, found: usize },
    EmptyUniverse { coord: usize },
    BadWeightRange { lo: i64, hi: i64 },
    NoMembers,
    /// More distinct members requested than the universes admit.
    TooManyMembers { requested: usize, capacity: u128 },
    /// Planted generation needs room for `p` disjoint members.
    UniverseTooSmall { coord: usize, size: usize, needed: usize },
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::BadQ { q } => write!(f, "q must be at least 2, got {}", q),
            GenError::BadP { p } => write!(f, "p must be at least 1, got {}", p),
            GenError::SizesArity { expected, found } => {
                write!(f, "expected {} universe size(s), got {}", expected, found)
            }
            GenError::EmptyUniverse { coord } => {
                write!(f, "universe {} must have at least one element", coord + 1)
            }
            GenError::BadWeightRange { lo, hi } => {
                write!(f, "weight range {}..={} is empty", lo, hi)
            }
            GenError::NoMembers => write!(f, "at least one member required"),
            GenError::TooManyMembers { requested, capacity } => {
                write!(f, "{} members requested but only {} distinct ones exist", requested, capacity)
            }
            GenError::UniverseTooSmall { coord, size, needed } => {
                write!(f, "universe {} has {} elements, planting needs {}", coord + 1, size, needed)
            }
        }
    }
}

struct GenContext {
    kind: Kind,
    q: usize,
    sizes: Vec<usize>,
    /// Provisional id of the first element of each coordinate (WDM).
    offsets: Vec<u32>,
    labels: Vec<String>,
}

impl GenContext {
    fn new(kind: Kind, q: usize, p: usize, sizes: &[usize]) -> Result<Self, GenError> {
        if q < 2 {
            return Err(GenError::BadQ { q });
        }
        if p < 1 {
            return Err(GenError::BadP { p });
        }
        let expected = match kind {
            Kind::Wdm => q,
            Kind::Wsp => 1,
        };
        if sizes.len() != expected {
            return Err(GenError::SizesArity { expected, found: sizes.len() });
        }
        if let Some(coord) = sizes.iter().position(|&s| s == 0) {
            return Err(GenError::EmptyUniverse { coord });
        }
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut labels = Vec::new();
        let mut next = 0u32;
        for (j, &size) in sizes.iter().enumerate() {
            offsets.push(next);
            for k in 0..size {
                labels.push(match kind {
                    Kind::Wdm => format!("u{}_{}", j + 1, k),
                    Kind::Wsp => format!("e{}", k),
                });
            }
            next += size as u32;
        }
        Ok(GenContext { kind, q, sizes: sizes.to_vec(), offsets, labels })
    }

    fn capacity(&self) -> u128 {
        match self.kind {
            Kind::Wdm => {
                let mut acc: u128 = 1;
                for &s in &self.sizes {
                    acc = acc.saturating_mul(s as u128);
                }
                acc
            }
            Kind::Wsp => binomial(self.sizes[0] as u64, self.q as u64),
        }
    }

    /// Draws one member, resampling until it differs from everything drawn
    /// so far. WSP members come out sorted by id.
    fn draw_member(&self, rng: &mut SplitMix64, seen: &mut BTreeSet<Vec<u32>>) -> Vec<u32> {
        loop {
            let candidate = match self.kind {
                Kind::Wdm => (0..self.q)
                    .map(|j| self.offsets[j] + rng.below(self.sizes[j] as u64) as u32)
                    .collect::<Vec<u32>>(),
                Kind::Wsp => {
                    let mut picked = BTreeSet::new();
                    while picked.len() < self.q {
                        picked.insert(rng.below(self.sizes[0] as u64) as u32);
                    }
                    picked.into_iter().collect()
                }
            };
            if seen.insert(candidate.clone()) {
                return candidate;
            }
        }
    }
}

/// `m` distinct members drawn uniformly, weights uniform in
/// `[weight_lo, weight_hi]`.
#[allow(clippy::too_many_arguments)]
pub fn gen_random(
    seed: u64,
    kind: Kind,
    q: usize,
    p: usize,
    sizes: &[usize],
    m: usize,
    weight_lo: i64,
    weight_hi: i64,
) -> Result<Instance, GenError> {
    let ctx = GenContext::new(kind, q, p, sizes)?;
    if weight_lo > weight_hi {
        return Err(GenError::BadWeightRange { lo: weight_lo, hi: weight_hi });
    }
    if m == 0 {
        return Err(GenError::NoMembers);
    }
    let capacity = ctx.capacity();
    if m as u128 > capacity {
        return Err(GenError::TooManyMembers { requested: m, capacity });
    }
    let mut rng = SplitMix64::new(seed);
    let mut seen = BTreeSet::new();
    let mut members = Vec::with_capacity(m);
    for _ in 0..m {
        let elements = ctx.draw_member(&mut rng, &mut seen);
        let weight = rng.range_i64(weight_lo, weight_hi);
        members.push((elements, weight));
    }
    Ok(canonicalize(kind, q, p, &ctx.labels, &members).0)
}

/// Plants `p` pairwise-disjoint members, then adds `m_extra` random ones.
/// Returns the instance and the planted total weight, a feasibility
/// witness (not necessarily the optimum).
#[allow(clippy::too_many_arguments)]
pub fn gen_planted(
    seed: u64,
    kind: Kind,
    q: usize,
    p: usize,
    sizes: &[usize],
    m_extra: usize,
    weight_lo: i64,
    weight_hi: i64,
) -> Result<(Instance, i64), GenError> {
    let ctx = GenContext::new(kind, q, p, sizes)?;
    if weight_lo > weight_hi {
        return Err(GenError::BadWeightRange { lo: weight_lo, hi: weight_hi });
    }
    match kind {
        Kind::Wdm => {
            for (coord, &size) in sizes.iter().enumerate() {
                if size < p {
                    return Err(GenError::UniverseTooSmall { coord, size, needed: p });
                }
            }
        }
        Kind::Wsp => {
            if sizes[0] < q * p {
                return Err(GenError::UniverseTooSmall { coord: 0, size: sizes[0], needed: q * p });
            }
        }
    }
    let capacity = ctx.capacity();
    if (p + m_extra) as u128 > capacity {
        return Err(GenError::TooManyMembers { requested: p + m_extra, capacity });
    }

    let mut rng = SplitMix64::new(seed);
    let mut seen = BTreeSet::new();
    let mut members: Vec<(Vec<u32>, i64)> = Vec::with_capacity(p + m_extra);
    let mut planted_weight = 0i64;

    match kind {
        Kind::Wdm => {
            // One disjoint p-sample per coordinate; member i takes the i-th pick
            // of every coordinate.
            let picks: Vec<Vec<u32>> =
                (0..ctx.q).map(|j| rng.sample_distinct(sizes[j], p)).collect();
            #[allow(clippy::needless_range_loop)]
            for i in 0..p {
                let elements: Vec<u32> =
                    (0..ctx.q).map(|j| ctx.offsets[j] + picks[j][i]).collect();
                seen.insert(elements.clone());
                let weight = rng.range_i64(weight_lo, weight_hi);
                planted_weight += weight;
                members.push((elements, weight));
            }
        }
        Kind::Wsp => {
            let picks = rng.sample_distinct(sizes[0], q * p);
            for chunk in picks.chunks_exact(ctx.q) {
                let mut elements = chunk.to_vec();
                elements.sort_unstable();
                seen.insert(elements.clone());
                let weight = rng.range_i64(weight_lo, weight_hi);
                planted_weight += weight;
                members.push((elements, weight));
            }
        }
    }

    for _ in 0..m_extra {
        let elements = ctx.draw_member(&mut rng, &mut seen);
        let weight = rng.range_i64(weight_lo, weight_hi);
        members.push((elements, weight));
    }
    Ok((canonicalize(kind, q, p, &ctx.labels, &members).0, planted_weight))
}
