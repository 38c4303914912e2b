//! Problem-instance data model: universes, members, weights, validation.
//!
//! Elements carry dense ids `0..|U|-1`, assigned in order of first appearance
//! in the input (or in the generated member list). That id order is the fixed
//! ascending order every solver iterates in. All values are immutable after
//! construction.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

mod gen;
mod text;

pub use gen::{gen_planted, gen_random, GenError, SplitMix64};
pub use text::{
    parse_instance, serialize_instance, serialize_kernel, serialize_solution, ParseError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Weighted q-dimensional matching: members are tuples over q pairwise
    /// disjoint universes.
    Wdm,
    /// Weighted q-set packing: members are q-element subsets of one universe.
    Wsp,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Wdm => write!(f, "WDM"),
            Kind::Wsp => write!(f, "WSP"),
        }
    }
}

/// Borrowed view of one universe element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElementRef<'a> {
    pub id: u32,
    /// Universe index (0-based) for WDM instances; `None` for WSP.
    pub coord: Option<usize>,
    pub label: &'a str,
}

/// One tuple (WDM) or set (WSP) of the family, with its weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberRecord {
    /// Position in the family; always equals the record's index in
    /// [`Instance::members`].
    pub index: u32,
    /// Exactly `q` element ids. For WDM, position `j` lies in universe `j`.
    pub elements: Vec<u32>,
    pub weight: i64,
}

/// A WDM or WSP problem instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub kind: Kind,
    pub q: usize,
    pub p: usize,
    /// Element id to external label.
    pub labels: Vec<String>,
    /// Per-coordinate element lists (WDM, `q` of them) or a single list
    /// (WSP), each sorted ascending.
    pub universes: Vec<Vec<u32>>,
    pub members: Vec<MemberRecord>,
}

/// `p` pairwise-disjoint member indices and their total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// Sorted ascending; 0-based positions in the instance's member list.
    pub picked: Vec<u32>,
    pub total_weight: i64,
}

impl Instance {
    pub fn universe_size(&self) -> usize {
        self.labels.len()
    }

    /// Id to universe index. For WSP every element maps to universe 0.
    pub fn coord_of(&self) -> Vec<usize> {
        let mut coord = alloc::vec![0usize; self.labels.len()];
        for (j, universe) in self.universes.iter().enumerate() {
            for &id in universe {
                if (id as usize) < coord.len() {
                    coord[id as usize] = j;
                }
            }
        }
        coord
    }

    pub fn element(&self, id: u32) -> ElementRef<'_> {
        let coord = match self.kind {
            Kind::Wdm => Some(self.coord_of()[id as usize]),
            Kind::Wsp => None,
        };
        ElementRef { id, coord, label: &self.labels[id as usize] }
    }

    /// The common weight if all members share one, else `None`.
    pub fn uniform_weight(&self) -> Option<i64> {
        let first = self.members.first()?.weight;
        self.members
            .iter()
            .all(|m| m.weight == first)
            .then_some(first)
    }

    /// Re-encodes a WDM instance as the WSP instance with the same members
    /// over the union universe. WSP instances are returned unchanged.
    pub fn to_wsp(&self) -> Instance {
        if self.kind == Kind::Wsp {
            return self.clone();
        }
        let all: Vec<u32> = (0..self.labels.len() as u32).collect();
        Instance {
            kind: Kind::Wsp,
            q: self.q,
            p: self.p,
            labels: self.labels.clone(),
            universes: alloc::vec![all],
            members: self.members.clone(),
        }
    }
}

/// A broken instance invariant. Violations are data, not errors: `validate`
/// reports all of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    BadQ { q: usize },
    BadP { p: usize },
    UniverseCount { expected: usize, found: usize },
    DuplicateLabel { id_a: u32, id_b: u32 },
    NotPartitioned { id: u32 },
    MemberArity { member: u32, found: usize },
    IdOutOfRange { member: u32, position: usize, id: u32 },
    WrongUniverse { member: u32, position: usize, id: u32 },
    RepeatedElement { member: u32, id: u32 },
    UnusedElement { id: u32 },
    IndexMismatch { at: u32, index: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadQ { q } => write!(f, "q must be at least 2, got {}", q),
            Violation::BadP { p } => write!(f, "p must be at least 1, got {}", p),
            Violation::UniverseCount { expected, found } => {
                write!(f, "expected {} universe list(s), found {}", expected, found)
            }
            Violation::DuplicateLabel { id_a, id_b } => {
                write!(f, "elements {} and {} share a label", id_a, id_b)
            }
            Violation::NotPartitioned { id } => {
                write!(f, "element {} does not occur in exactly one universe list", id)
            }
            Violation::MemberArity { member, found } => {
                write!(f, "member {} has {} elements", member, found)
            }
            Violation::IdOutOfRange { member, position, id } => {
                write!(f, "member {} position {} references unknown element {}", member, position, id)
            }
            Violation::WrongUniverse { member, position, id } => {
                write!(f, "member {} position {} holds element {} from another universe", member, position, id)
            }
            Violation::RepeatedElement { member, id } => {
                write!(f, "member {} repeats element {}", member, id)
            }
            Violation::UnusedElement { id } => {
                write!(f, "element {} appears in no member", id)
            }
            Violation::IndexMismatch { at, index } => {
                write!(f, "member at position {} carries index {}", at, index)
            }
        }
    }
}

/// Checks every `Instance` and `MemberRecord` invariant; an empty list means
/// the instance is valid.
pub fn validate(inst: &Instance) -> Vec<Violation> {
    let mut out = Vec::new();
    if inst.q < 2 {
        out.push(Violation::BadQ { q: inst.q });
    }
    if inst.p < 1 {
        out.push(Violation::BadP { p: inst.p });
    }
    let expected_universes = match inst.kind {
        Kind::Wdm => inst.q,
        Kind::Wsp => 1,
    };
    if inst.universes.len() != expected_universes {
        out.push(Violation::UniverseCount {
            expected: expected_universes,
            found: inst.universes.len(),
        });
    }

    let n = inst.labels.len();
    let mut seen_label: BTreeMap<&str, u32> = BTreeMap::new();
    for (id, label) in inst.labels.iter().enumerate() {
        if let Some(&first) = seen_label.get(label.as_str()) {
            out.push(Violation::DuplicateLabel { id_a: first, id_b: id as u32 });
        } else {
            seen_label.insert(label, id as u32);
        }
    }

    // Each id must occur in exactly one universe list.
    let mut occurrences = alloc::vec![0u32; n];
    let mut coord = alloc::vec![usize::MAX; n];
    let mut stray = BTreeSet::new();
    for (j, universe) in inst.universes.iter().enumerate() {
        for &id in universe {
            if (id as usize) < n {
                occurrences[id as usize] += 1;
                coord[id as usize] = j;
            } else {
                stray.insert(id);
            }
        }
    }
    for id in stray {
        out.push(Violation::NotPartitioned { id });
    }
    for (id, &count) in occurrences.iter().enumerate() {
        if count != 1 {
            out.push(Violation::NotPartitioned { id: id as u32 });
        }
    }

    let mut used = alloc::vec![false; n];
    for (at, member) in inst.members.iter().enumerate() {
        if member.index != at as u32 {
            out.push(Violation::IndexMismatch { at: at as u32, index: member.index });
        }
        if member.elements.len() != inst.q {
            out.push(Violation::MemberArity {
                member: at as u32,
                found: member.elements.len(),
            });
        }
        let mut in_member = BTreeSet::new();
        for (position, &id) in member.elements.iter().enumerate() {
            if (id as usize) >= n {
                out.push(Violation::IdOutOfRange { member: at as u32, position, id });
                continue;
            }
            used[id as usize] = true;
            match inst.kind {
                Kind::Wdm => {
                    if position < inst.universes.len() && coord[id as usize] != position {
                        out.push(Violation::WrongUniverse { member: at as u32, position, id });
                    }
                }
                Kind::Wsp => {
                    if !in_member.insert(id) {
                        out.push(Violation::RepeatedElement { member: at as u32, id });
                    }
                }
            }
        }
    }
    for (id, &u) in used.iter().enumerate() {
        if !u {
            out.push(Violation::UnusedElement { id: id as u32 });
        }
    }
    out
}

/// Checks a solution against its instance: exactly `p` distinct indices,
/// pairwise element-disjoint members, correct weight sum.
pub fn verify_solution(inst: &Instance, sol: &Solution) -> Result<(), String> {
    use alloc::format;
    if sol.picked.len() != inst.p {
        return Err(format!("expected {} picks, found {}", inst.p, sol.picked.len()));
    }
    let mut seen_members = BTreeSet::new();
    let mut seen_elements = BTreeSet::new();
    let mut total = 0i64;
    for &idx in &sol.picked {
        let member = inst
            .members
            .get(idx as usize)
            .ok_or_else(|| format!("pick {} out of range", idx))?;
        if !seen_members.insert(idx) {
            return Err(format!("pick {} repeated", idx));
        }
        for &id in &member.elements {
            if !seen_elements.insert(id) {
                return Err(format!("element {} shared between picked members", id));
            }
        }
        total += member.weight;
    }
    if total != sol.total_weight {
        return Err(format!(
            "total weight {} does not match picked sum {}",
            sol.total_weight, total
        ));
    }
    Ok(())
}

/// Builds a canonical instance from members given over an arbitrary id space:
/// unused elements are pruned and ids re-interned in first-appearance order,
/// so serializing and re-parsing reproduces the instance exactly. Also
/// returns the map from new element ids back to the old ones.
///
/// Assumes the member structure itself is sound (arity, coordinate
/// discipline); callers construct it from already-validated data.
pub(crate) fn canonicalize(
    kind: Kind,
    q: usize,
    p: usize,
    old_labels: &[String],
    members: &[(Vec<u32>, i64)],
) -> (Instance, Vec<u32>) {
    let mut new_of_old: BTreeMap<u32, u32> = BTreeMap::new();
    let mut old_of_new: Vec<u32> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut new_members: Vec<MemberRecord> = Vec::with_capacity(members.len());
    for (at, (elements, weight)) in members.iter().enumerate() {
        let mapped: Vec<u32> = elements
            .iter()
            .map(|&old| {
                *new_of_old.entry(old).or_insert_with(|| {
                    labels.push(old_labels[old as usize].clone());
                    old_of_new.push(old);
                    (labels.len() - 1) as u32
                })
            })
            .collect();
        new_members.push(MemberRecord { index: at as u32, elements: mapped, weight: *weight });
    }
    let universes = derive_universes(kind, q, labels.len(), &new_members);
    (Instance { kind, q, p, labels, universes, members: new_members }, old_of_new)
}

pub(crate) fn derive_universes(
    kind: Kind,
    q: usize,
    n: usize,
    members: &[MemberRecord],
) -> Vec<Vec<u32>> {
    match kind {
        Kind::Wsp => alloc::vec![(0..n as u32).collect()],
        Kind::Wdm => {
            let mut per_coord: Vec<BTreeSet<u32>> = alloc::vec![BTreeSet::new(); q];
            for member in members {
                for (j, &id) in member.elements.iter().enumerate() {
                    per_coord[j].insert(id);
                }
            }
            per_coord.into_iter().map(|set| set.into_iter().collect()).collect()
        }
    }
}
