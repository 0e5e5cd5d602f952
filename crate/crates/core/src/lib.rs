//! Finite pointfree semantics workbench.
//!
//! The pipeline: a [`topology::FormalTopology`] (finite carrier poset plus a
//! covering relation) induces a closure operator on lower sets, whose fixed
//! points form a finite frame ([`frame::Frame`]). Over such a frame one can
//! build a truncated universe of names ([`name`]), interpret a small
//! set-theoretic language ([`formula`], [`eval`]), and study how the picture
//! changes under double-negation smoothing of the frame. [`inductive`] and
//! [`hf`] carry the supporting fixed-point and hereditarily-finite-set
//! machinery; [`suite`] bundles the law checks that `heytlab suite` runs.
//!
//! The crate is `no_std` + `alloc`; everything is deterministic, and all
//! combinatorial searches are guarded by [`Ceilings`].

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod corpus;
pub mod eval;
pub mod formula;
pub mod frame;
pub mod hf;
pub mod inductive;
pub mod name;
pub mod suite;
pub mod topology;

/// Hard limits on combinatorial blowup, checked wherever enumeration happens.
///
/// Defaults match the guarantees the test suites are tuned for; raising a
/// field is allowed but the caller owns the consequences. The structural cap
/// of 16 atoms per carrier is not configurable.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Ceilings {
    /// Max carrier size of a formal topology.
    pub carrier: usize,
    /// Max name rank for universe enumeration.
    pub rank: u32,
    /// Max domain width for universe enumeration.
    pub width: usize,
    /// Max |a x A| bits for one regularity slot.
    pub mv_bits: usize,
    /// Max candidate count for one subset search.
    pub subset_search: u64,
}

impl Default for Ceilings {
    fn default() -> Self {
        Ceilings {
            carrier: 6,
            rank: 3,
            width: 2,
            mv_bits: 16,
            subset_search: 1 << 16,
        }
    }
}
