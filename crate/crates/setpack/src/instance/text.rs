//! Line-based text format for instances and solutions.
//!
//! ```text
//! WDM <q> <p>            (or WSP <q> <p>)
//! T <e1> … <eq> <weight> (one line per member; S … for WSP)
//! ```
//!
//! Lines whose first non-blank character is `#` are comments. Element labels
//! are whitespace-free strings, interned to dense ids in first-appearance
//! order; weights are signed decimal integers. Solutions print as a `WEIGHT`
//! line followed by `p` `PICK` lines, or the single line `REJECT`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use super::{derive_universes, Instance, Kind, MemberRecord, Solution};
use crate::kernel::KernelResult;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// No header line found.
    Empty,
    BadHeader { line: usize },
    BadParameter { line: usize, what: &'static str },
    BadTag { line: usize, found: String },
    WrongArity { line: usize, expected: usize, found: usize },
    BadWeight { line: usize, token: String },
    /// WDM only: one label used in two different coordinates.
    CoordinateClash { line: usize, label: String },
    /// WSP only: one label repeated inside a set.
    DuplicateElement { line: usize, label: String },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Empty => write!(f, "no header line"),
            ParseError::BadHeader { line } => {
                write!(f, "line {}: expected `WDM <q> <p>` or `WSP <q> <p>`", line)
            }
            ParseError::BadParameter { line, what } => {
                write!(f, "line {}: bad value for {}", line, what)
            }
            ParseError::BadTag { line, found } => {
                write!(f, "line {}: unexpected line tag `{}`", line, found)
            }
            ParseError::WrongArity { line, expected, found } => {
                write!(f, "line {}: expected {} elements, found {}", line, expected, found)
            }
            ParseError::BadWeight { line, token } => {
                write!(f, "line {}: bad weight `{}`", line, token)
            }
            ParseError::CoordinateClash { line, label } => {
                write!(f, "line {}: element `{}` already bound to another coordinate", line, label)
            }
            ParseError::DuplicateElement { line, label } => {
                write!(f, "line {}: element `{}` repeated within the set", line, label)
            }
        }
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(ParseError::Empty)?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 3 {
        return Err(ParseError::BadHeader { line: header_line });
    }
    let kind = match tokens[0] {
        "WDM" => Kind::Wdm,
        "WSP" => Kind::Wsp,
        _ => return Err(ParseError::BadHeader { line: header_line }),
    };
    let q: usize = tokens[1]
        .parse()
        .map_err(|_| ParseError::BadParameter { line: header_line, what: "q" })?;
    if q < 2 {
        return Err(ParseError::BadParameter { line: header_line, what: "q" });
    }
    let p: usize = tokens[2]
        .parse()
        .map_err(|_| ParseError::BadParameter { line: header_line, what: "p" })?;
    if p < 1 {
        return Err(ParseError::BadParameter { line: header_line, what: "p" });
    }

    let expected_tag = match kind {
        Kind::Wdm => "T",
        Kind::Wsp => "S",
    };
    let mut ids: BTreeMap<String, u32> = BTreeMap::new();
    let mut coord_of_label: BTreeMap<u32, usize> = BTreeMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut members: Vec<MemberRecord> = Vec::new();

    for (line, body) in lines {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens[0] != expected_tag {
            return Err(ParseError::BadTag { line, found: tokens[0].to_string() });
        }
        if tokens.len() != q + 2 {
            return Err(ParseError::WrongArity {
                line,
                expected: q,
                found: tokens.len().saturating_sub(2),
            });
        }
        let weight_token = tokens[q + 1];
        let weight: i64 = weight_token
            .parse()
            .map_err(|_| ParseError::BadWeight { line, token: weight_token.to_string() })?;

        let mut elements = Vec::with_capacity(q);
        let mut in_line: BTreeSet<u32> = BTreeSet::new();
        for (j, &label) in tokens[1..=q].iter().enumerate() {
            let id = match ids.get(label) {
                Some(&id) => id,
                None => {
                    let id = labels.len() as u32;
                    ids.insert(label.to_string(), id);
                    labels.push(label.to_string());
                    if kind == Kind::Wdm {
                        coord_of_label.insert(id, j);
                    }
                    id
                }
            };
            match kind {
                Kind::Wdm => {
                    if coord_of_label[&id] != j {
                        return Err(ParseError::CoordinateClash { line, label: label.to_string() });
                    }
                }
                Kind::Wsp => {
                    if !in_line.insert(id) {
                        return Err(ParseError::DuplicateElement { line, label: label.to_string() });
                    }
                }
            }
            elements.push(id);
        }
        members.push(MemberRecord { index: members.len() as u32, elements, weight });
    }

    let universes = derive_universes(kind, q, labels.len(), &members);
    Ok(Instance { kind, q, p, labels, universes, members })
}

pub fn serialize_instance(inst: &Instance) -> String {
    let tag = match inst.kind {
        Kind::Wdm => "T",
        Kind::Wsp => "S",
    };
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", inst.kind, inst.q, inst.p);
    for member in &inst.members {
        out.push_str(tag);
        for &id in &member.elements {
            out.push(' ');
            out.push_str(&inst.labels[id as usize]);
        }
        let _ = writeln!(out, " {}", member.weight);
    }
    out
}

/// Kernel text: the reduced instance followed by comment trailer lines
/// mapping kernel member indices and element ids back to the original.
pub fn serialize_kernel(result: &KernelResult) -> String {
    let mut out = serialize_instance(&result.kernel);
    for (kernel_idx, &orig_idx) in result.member_map.iter().enumerate() {
        let _ = writeln!(out, "# MAPM {} {}", kernel_idx, orig_idx);
    }
    for (kernel_id, _) in result.element_map.iter().enumerate() {
        let _ = writeln!(out, "# MAPE {} {}", kernel_id, result.kernel.labels[kernel_id]);
    }
    out
}

pub fn serialize_solution(solution: Option<&Solution>) -> String {
    match solution {
        None => "REJECT\n".to_string(),
        Some(sol) => {
            let mut out = String::new();
            let _ = writeln!(out, "WEIGHT {}", sol.total_weight);
            for &idx in &sol.picked {
                let _ = writeln!(out, "PICK {}", idx);
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::validate;
    use alloc::vec;

    #[test]
    fn parses_wdm_header_and_members() {
        let inst = parse_instance("WDM 3 2\nT a x 1 5\nT b y 2 3\nT c z 3 -1\n").unwrap();
        assert_eq!(inst.kind, Kind::Wdm);
        assert_eq!((inst.q, inst.p), (3, 2));
        assert_eq!(inst.members.len(), 3);
        assert!(validate(&inst).is_empty());
    }

    #[test]
    fn singleton_universes() {
        let inst = parse_instance("WDM 2 1\nT x y 7\n").unwrap();
        assert_eq!(inst.universes, vec![vec![0], vec![1]]);
        assert_eq!(inst.labels, vec!["x", "y"]);
    }

    #[test]
    fn rejects_duplicate_in_wsp_set() {
        let err = parse_instance("WSP 3 1\nS a b a 5\n").unwrap_err();
        assert_eq!(err, ParseError::DuplicateElement { line: 2, label: "a".into() });
    }

    #[test]
    fn rejects_coordinate_clash() {
        let err = parse_instance("WDM 2 1\nT a b 1\nT b a 1\n").unwrap_err();
        assert_eq!(err, ParseError::CoordinateClash { line: 3, label: "b".into() });
    }

    #[test]
    fn rejects_wrong_arity_with_line() {
        let err = parse_instance("WDM 3 1\nT a b 5\n").unwrap_err();
        assert_eq!(err, ParseError::WrongArity { line: 2, expected: 3, found: 2 });
    }

    #[test]
    fn rejects_bad_header_values() {
        assert!(matches!(
            parse_instance("WDM 1 1\n").unwrap_err(),
            ParseError::BadParameter { what: "q", .. }
        ));
        assert!(matches!(
            parse_instance("WSP 3 0\n").unwrap_err(),
            ParseError::BadParameter { what: "p", .. }
        ));
        assert!(matches!(parse_instance("XXX 3 1\n").unwrap_err(), ParseError::BadHeader { .. }));
        assert_eq!(parse_instance("# only a comment\n").unwrap_err(), ParseError::Empty);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let inst = parse_instance("# hello\n\nWSP 2 1\n  # indented comment\nS a b 3\n").unwrap();
        assert_eq!(inst.members.len(), 1);
    }

    #[test]
    fn round_trips_exactly() {
        let text = "WDM 3 2\nT a x 1 5\nT b y 2 3\nT a y 3 -4\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(serialize_instance(&inst), text);
        assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn solution_text() {
        let sol = Solution { picked: vec![0, 2], total_weight: 8 };
        assert_eq!(serialize_solution(Some(&sol)), "WEIGHT 8\nPICK 0\nPICK 2\n");
        assert_eq!(serialize_solution(None), "REJECT\n");
    }
}
