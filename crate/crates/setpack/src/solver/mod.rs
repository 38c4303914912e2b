//! The representative-set dynamic programs: [`wdm`] for weighted
//! q-dimensional matching, [`wsp`] for weighted q-set packing, and [`dm3`]
//! for the faster unweighted 3-dimensional case.
//!
//! All three share one skeleton: iterate the anchor universe in ascending id
//! order, keep one table cell per (anchor element, solution size) holding
//! partial solutions, and after every extension squeeze the cell through
//! [`crate::repset::represent`] so its size stays bounded by a binomial in
//! the parameters alone.

use alloc::vec::Vec;
use core::fmt;

use crate::instance::{Instance, Kind, Solution, Violation};
use crate::repset::{RepError, Triple};

pub mod dm3;
pub mod wdm;
pub mod wsp;

/// A partial solution: member indices in accumulation order.
pub type PartialSel = Vec<u32>;

/// Observer for DP cells of the wdm/wsp solvers, called once per
/// (anchor element, solution size) cell in computation order.
pub type CellObserver<'a> = dyn FnMut(u32, usize, &[PartialSel]) + 'a;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    Invalid(Vec<Violation>),
    KindMismatch { expected: Kind, found: Kind },
    /// The dm3 solver handles exactly q = 3.
    ArityUnsupported { found: usize },
    /// The dm3 solver handles uniform weights only.
    NonUniformWeights,
    Engine(RepError),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Invalid(violations) => {
                write!(f, "invalid instance:")?;
                for v in violations {
                    write!(f, " {};", v)?;
                }
                Ok(())
            }
            SolveError::KindMismatch { expected, found } => {
                write!(f, "expected a {} instance, got {}", expected, found)
            }
            SolveError::ArityUnsupported { found } => {
                write!(f, "this solver requires q = 3, got q = {}", found)
            }
            SolveError::NonUniformWeights => {
                write!(f, "this solver requires all weights to be equal")
            }
            SolveError::Engine(e) => write!(f, "representation engine: {}", e),
        }
    }
}

impl From<RepError> for SolveError {
    fn from(e: RepError) -> Self {
        SolveError::Engine(e)
    }
}

pub(crate) fn ensure_valid(inst: &Instance, expected: Kind) -> Result<(), SolveError> {
    if inst.kind != expected {
        return Err(SolveError::KindMismatch { expected, found: inst.kind });
    }
    let violations = crate::instance::validate(inst);
    if !violations.is_empty() {
        return Err(SolveError::Invalid(violations));
    }
    Ok(())
}

/// Total weight of a partial solution.
pub(crate) fn selection_weight(inst: &Instance, members: &[u32]) -> i64 {
    members.iter().map(|&m| inst.members[m as usize].weight).sum()
}

/// Maximum-weight entry of a final cell; ties go to the lexicographically
/// smallest sorted index vector.
pub(crate) fn best_solution(inst: &Instance, cell: &[PartialSel]) -> Option<Solution> {
    cell.iter()
        .map(|sel| {
            let mut picked = sel.clone();
            picked.sort_unstable();
            (selection_weight(inst, sel), picked)
        })
        .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)))
        .map(|(total_weight, picked)| Solution { picked, total_weight })
}

/// Inserts `id` into the sorted element set `x`; `false` if already present.
pub(crate) fn insert_sorted(x: &mut Vec<u32>, id: u32) -> bool {
    match x.binary_search(&id) {
        Ok(_) => false,
        Err(pos) => {
            x.insert(pos, id);
            true
        }
    }
}

/// Builds the engine triple of a partial solution: the union of the members'
/// element sets minus each member's anchor element, plus the total weight.
/// The anchor is the first element for WDM and the smallest for WSP.
pub(crate) fn tri(inst: &Instance, selection: &[u32]) -> Triple<PartialSel> {
    let mut elements = Vec::with_capacity(selection.len() * (inst.q - 1));
    for &mi in selection {
        let member = &inst.members[mi as usize].elements;
        match inst.kind {
            Kind::Wdm => elements.extend_from_slice(&member[1..]),
            Kind::Wsp => {
                let smallest = *member.iter().min().expect("validated member");
                elements.extend(member.iter().copied().filter(|&e| e != smallest));
            }
        }
    }
    elements.sort_unstable();
    debug_assert!(elements.windows(2).all(|w| w[0] < w[1]), "partial members overlap");
    Triple::new(elements, selection.to_vec(), selection_weight(inst, selection))
}
