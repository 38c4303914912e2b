//! Exact, deterministic solvers for weighted `q`-dimensional `p`-matching and
//! weighted `q`-set `p`-packing.
//!
//! The crate is organised around a representative-family engine ([`repset`]):
//! given a weighted family of `s`-element sets, it extracts a subfamily of at
//! most `C(s+r, s)` members that preserves, for every blocker set of at most
//! `r` elements, a maximum-weight member avoiding it. The dynamic programs in
//! [`solver`] assemble disjoint tuples/sets one element at a time and squeeze
//! every intermediate table through the engine, which keeps table sizes
//! bounded by a function of the parameters alone. [`kernel`] applies the same
//! engine once to shrink whole instances, and [`oracle`] provides the
//! brute-force reference implementations everything is tested against.
//!
//! The crate is `no_std` (it allocates, but performs no IO); the companion
//! CLI crate carries file formats, threading and benchmarks.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod exec;
pub mod instance;
pub mod kernel;
pub mod oracle;
pub mod repset;
pub mod selfcheck;
pub mod solver;

pub use instance::{Instance, Kind, MemberRecord, Solution};
pub use repset::{RepQuery, Triple};
