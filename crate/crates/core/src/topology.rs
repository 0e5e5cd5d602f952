//! Finite formal topologies.
//!
//! A formal topology here is a finite carrier with a preorder-like relation
//! `<=` and a covering relation `a ◁ p` between atoms and subsets of the
//! carrier, subject to four axioms (checked by [`FormalTopology::validate`]):
//!
//! 1. a ∈ p implies a ◁ p
//! 2. a <= b and b ◁ p imply a ◁ p
//! 3. a ◁ p and x ◁ q for every x ∈ p imply a ◁ q
//! 4. a ◁ p and a ◁ q imply a ◁ ↓p ∩ ↓q
//!
//! The carrier is small by design: subsets are bitmasks ([`AtomSet`]) and the
//! cover is tabulated extensionally, one bit per (atom, subset) pair, so
//! every axiom is decidable by exhaustive enumeration.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::Ceilings;

/// Structural cap on carrier size; `AtomSet` is a 16-bit mask.
pub const MAX_ATOMS: usize = 16;

/// A subset of a topology's carrier, as a bitmask. Bit i is atom index i.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AtomSet(pub u16);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn singleton(i: usize) -> AtomSet {
        debug_assert!(i < MAX_ATOMS);
        AtomSet(1 << i)
    }

    /// The full carrier of an n-atom topology.
    pub fn full(n: usize) -> AtomSet {
        debug_assert!(n <= MAX_ATOMS);
        AtomSet(((1u32 << n) - 1) as u16)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn union(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 | other.0)
    }

    pub fn inter(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & other.0)
    }

    pub fn minus(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Atom indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_ATOMS).filter(move |i| self.contains(*i))
    }

    /// All subsets of an n-atom carrier, in ascending mask order.
    pub fn power(n: usize) -> impl Iterator<Item = AtomSet> {
        (0u32..1 << n).map(|m| AtomSet(m as u16))
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// One atom's cover row: a bitvector indexed by subset mask.
#[derive(Clone, PartialEq, Eq)]
struct CoverRow(Vec<u64>);

impl CoverRow {
    fn new(n_subsets: usize) -> CoverRow {
        CoverRow(vec![0; n_subsets.div_ceil(64)])
    }

    fn get(&self, mask: AtomSet) -> bool {
        let i = mask.0 as usize;
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, mask: AtomSet) {
        let i = mask.0 as usize;
        self.0[i / 64] |= 1 << (i % 64);
    }
}

/// How to populate the cover table.
pub enum CoverSpec<'a> {
    /// a ◁ p iff a ∈ ↓p. Always valid over a poset.
    Downset,
    /// a ◁ p iff a ∈ p. Valid when the order is discrete.
    Discrete,
    /// Exactly the listed (atom, subset) pairs hold; everything else fails.
    /// May violate the axioms; that is what validation is for.
    Pairs(&'a [(usize, AtomSet)]),
}

/// Validation failures, with enough data to name a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    OrderNotReflexive { a: usize },
    OrderNotTransitive { a: usize, b: usize, c: usize },
    OrderNotAntisymmetric { a: usize, b: usize },
    /// Axiom 1: a ∈ p but not a ◁ p.
    CoverMembership { a: usize, p: AtomSet },
    /// Axiom 2: a <= b, b ◁ p, but not a ◁ p.
    CoverOrder { a: usize, b: usize, p: AtomSet },
    /// Axiom 3: a ◁ p, every x ∈ p has x ◁ q, but not a ◁ q.
    CoverTransitive { a: usize, p: AtomSet, q: AtomSet },
    /// Axiom 4: a ◁ p and a ◁ q, but not a ◁ ↓p ∩ ↓q.
    CoverStability { a: usize, p: AtomSet, q: AtomSet },
}

/// Outcome of [`FormalTopology::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Errors from topology construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopologyError {
    CarrierTooLarge { atoms: usize, ceiling: usize },
    DuplicateAtom { name: String },
    AtomOutOfRange { index: usize },
}

impl fmt::Display for TopologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyError::CarrierTooLarge { atoms, ceiling } => {
                write!(f, "carrier has {atoms} atoms, ceiling is {ceiling}")
            }
            TopologyError::DuplicateAtom { name } => write!(f, "duplicate atom `{name}`"),
            TopologyError::AtomOutOfRange { index } => write!(f, "atom index {index} out of range"),
        }
    }
}

/// A finite carrier with order and tabulated cover. May be invalid; run
/// [`FormalTopology::validate`] before trusting the axioms.
#[derive(Clone)]
pub struct FormalTopology {
    atoms: Vec<String>,
    /// below[b] = { a | a <= b }. Reflexive pairs are always present;
    /// transitivity is whatever the input said (validation may reject it).
    below: Vec<AtomSet>,
    cover: Vec<CoverRow>,
}

impl FormalTopology {
    /// Builds a topology, tabulating the cover from `spec`. `le` lists the
    /// pairs a <= b by atom index; reflexive pairs are implicit.
    pub fn new(
        atoms: Vec<String>,
        le: &[(usize, usize)],
        spec: CoverSpec<'_>,
        ceilings: &Ceilings,
    ) -> Result<FormalTopology, TopologyError> {
        let n = atoms.len();
        let cap = ceilings.carrier.min(MAX_ATOMS);
        if n > cap {
            return Err(TopologyError::CarrierTooLarge { atoms: n, ceiling: cap });
        }
        for (i, name) in atoms.iter().enumerate() {
            if atoms[..i].contains(name) {
                return Err(TopologyError::DuplicateAtom { name: name.clone() });
            }
        }
        let mut below = vec![AtomSet::EMPTY; n];
        for (i, b) in below.iter_mut().enumerate() {
            b.insert(i);
        }
        for &(a, b) in le {
            if a >= n || b >= n {
                return Err(TopologyError::AtomOutOfRange { index: a.max(b) });
            }
            below[b].insert(a);
        }
        let mut topo = FormalTopology { atoms, below, cover: Vec::new() };
        let n_subsets = 1usize << n;
        let mut cover = Vec::with_capacity(n);
        for a in 0..n {
            let mut row = CoverRow::new(n_subsets);
            for p in AtomSet::power(n) {
                let covered = match spec {
                    CoverSpec::Downset => topo.down_closure(p).contains(a),
                    CoverSpec::Discrete => p.contains(a),
                    CoverSpec::Pairs(pairs) => pairs.contains(&(a, p)),
                };
                if covered {
                    row.set(p);
                }
            }
            cover.push(row);
        }
        topo.cover = cover;
        Ok(topo)
    }

    /// Like [`FormalTopology::new`] but with the cover given as a decision
    /// procedure, tabulated on construction.
    pub fn from_fn(
        atoms: Vec<String>,
        le: &[(usize, usize)],
        mut cover: impl FnMut(usize, AtomSet) -> bool,
        ceilings: &Ceilings,
    ) -> Result<FormalTopology, TopologyError> {
        let mut topo = FormalTopology::new(atoms, le, CoverSpec::Discrete, ceilings)?;
        let n = topo.len();
        for a in 0..n {
            let mut row = CoverRow::new(1 << n);
            for p in AtomSet::power(n) {
                if cover(a, p) {
                    row.set(p);
                }
            }
            topo.cover[a] = row;
        }
        Ok(topo)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atom_names(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    /// The full carrier as a subset.
    pub fn carrier(&self) -> AtomSet {
        AtomSet::full(self.len())
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    /// ↓p = { a | a <= b for some b ∈ p }.
    pub fn down_closure(&self, p: AtomSet) -> AtomSet {
        let mut out = AtomSet::EMPTY;
        for b in p.iter() {
            out = out.union(self.below[b]);
        }
        out
    }

    pub fn is_lower(&self, p: AtomSet) -> bool {
        self.down_closure(p) == p
    }

    pub fn covers(&self, a: usize, p: AtomSet) -> bool {
        self.cover[a].get(p)
    }

    /// ȷp = { a | a ◁ p }. For a valid topology this is a closure operator
    /// on lower sets: p ⊆ ȷp, ȷȷp = ȷp, and ȷ(p ∩ q) = ȷp ∩ ȷq for lower p, q.
    pub fn nucleus_close(&self, p: AtomSet) -> AtomSet {
        let mut out = AtomSet::EMPTY;
        for a in 0..self.len() {
            if self.covers(a, p) {
                out.insert(a);
            }
        }
        out
    }

    /// Exhaustively checks the poset laws and the four covering axioms,
    /// collecting a witness for every failure.
    pub fn validate(&self) -> ValidationReport {
        let n = self.len();
        let mut report = ValidationReport::default();
        for a in 0..n {
            if !self.leq(a, a) {
                report.violations.push(AxiomViolation::OrderNotReflexive { a });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    if a < b {
                        report.violations.push(AxiomViolation::OrderNotAntisymmetric { a, b });
                    }
                    continue;
                }
                for c in 0..n {
                    if self.leq(a, b) && self.leq(b, c) && !self.leq(a, c) {
                        report.violations.push(AxiomViolation::OrderNotTransitive { a, b, c });
                    }
                }
            }
        }
        for a in 0..n {
            for p in AtomSet::power(n) {
                if p.contains(a) && !self.covers(a, p) {
                    report.violations.push(AxiomViolation::CoverMembership { a, p });
                }
                for b in 0..n {
                    if self.leq(a, b) && self.covers(b, p) && !self.covers(a, p) {
                        report.violations.push(AxiomViolation::CoverOrder { a, b, p });
                    }
                }
            }
        }
        for a in 0..n {
            for p in AtomSet::power(n) {
                if !self.covers(a, p) {
                    continue;
                }
                for q in AtomSet::power(n) {
                    if p.iter().all(|x| self.covers(x, q)) && !self.covers(a, q) {
                        report.violations.push(AxiomViolation::CoverTransitive { a, p, q });
                    }
                    if self.covers(a, q) {
                        let meet = self.down_closure(p).inter(self.down_closure(q));
                        if !self.covers(a, meet) {
                            report.violations.push(AxiomViolation::CoverStability { a, p, q });
                        }
                    }
                }
            }
        }
        report
    }

    /// Human-readable witness lines for a report, using atom names.
    pub fn describe(&self, report: &ValidationReport) -> Vec<String> {
        report.violations.iter().map(|v| self.describe_violation(v)).collect()
    }

    fn describe_violation(&self, v: &AxiomViolation) -> String {
        use core::fmt::Write;
        let name = |i: usize| self.atoms[i].as_str();
        let set = |p: AtomSet| {
            let mut s = String::from("{");
            for (k, i) in p.iter().enumerate() {
                if k > 0 {
                    s.push(' ');
                }
                s.push_str(name(i));
            }
            s.push('}');
            s
        };
        let mut out = String::new();
        match *v {
            AxiomViolation::OrderNotReflexive { a } => {
                let _ = write!(out, "order: {} <= {} missing", name(a), name(a));
            }
            AxiomViolation::OrderNotTransitive { a, b, c } => {
                let _ = write!(
                    out,
                    "order: {} <= {} and {} <= {} but not {} <= {}",
                    name(a), name(b), name(b), name(c), name(a), name(c)
                );
            }
            AxiomViolation::OrderNotAntisymmetric { a, b } => {
                let _ = write!(out, "order: {} and {} are distinct but mutually <=", name(a), name(b));
            }
            AxiomViolation::CoverMembership { a, p } => {
                let _ = write!(out, "axiom 1: {} in {} but not covered by it", name(a), set(p));
            }
            AxiomViolation::CoverOrder { a, b, p } => {
                let _ = write!(
                    out,
                    "axiom 2: {} <= {} and {} covered by {} but {} is not",
                    name(a), name(b), name(b), set(p), name(a)
                );
            }
            AxiomViolation::CoverTransitive { a, p, q } => {
                let _ = write!(
                    out,
                    "axiom 3: {} covered by {} whose members are all covered by {}, but {} is not",
                    name(a), set(p), set(q), name(a)
                );
            }
            AxiomViolation::CoverStability { a, p, q } => {
                let _ = write!(
                    out,
                    "axiom 4: {} covered by {} and {} but not by their downset meet",
                    name(a), set(p), set(q)
                );
            }
        }
        out
    }
}

impl fmt::Debug for FormalTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FormalTopology")
            .field("atoms", &self.atoms)
            .field("below", &self.below)
            .finish_non_exhaustive()
    }
}

/// Named atoms 0..n as strings, the usual test convenience.
pub fn numbered_atoms(n: usize) -> Vec<String> {
    use alloc::string::ToString;
    (0..n).map(|i| i.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> FormalTopology {
        FormalTopology::new(numbered_atoms(2), &[(0, 1)], CoverSpec::Downset, &Ceilings::default())
            .unwrap()
    }

    #[test]
    fn atomset_basics() {
        let mut s = AtomSet::EMPTY;
        s.insert(0);
        s.insert(3);
        assert_eq!(s.len(), 2);
        assert!(s.contains(3) && !s.contains(1));
        assert!(AtomSet::singleton(3).is_subset(s));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3]);
        assert_eq!(AtomSet::power(2).count(), 4);
    }

    #[test]
    fn downset_chain_is_valid() {
        let t = chain2();
        assert!(t.validate().is_valid());
        assert!(t.leq(0, 1) && !t.leq(1, 0));
        assert_eq!(t.down_closure(AtomSet::singleton(1)), AtomSet::full(2));
    }

    #[test]
    fn nucleus_close_on_downset_cover_is_down_closure() {
        let t = chain2();
        for p in AtomSet::power(2) {
            assert_eq!(t.nucleus_close(p), t.down_closure(p));
        }
    }

    #[test]
    fn one_point_discrete_is_valid() {
        let t = FormalTopology::new(
            numbered_atoms(1),
            &[],
            CoverSpec::Discrete,
            &Ceilings::default(),
        )
        .unwrap();
        assert!(t.validate().is_valid());
        assert_eq!(t.nucleus_close(AtomSet::EMPTY), AtomSet::EMPTY);
    }

    #[test]
    fn broken_cover_reports_membership_witness() {
        // Cover that denies 0 ◁ {0}: axiom 1 must flag (0, {0}).
        let t = FormalTopology::from_fn(
            numbered_atoms(1),
            &[],
            |_, _| false,
            &Ceilings::default(),
        )
        .unwrap();
        let report = t.validate();
        assert!(report
            .violations
            .contains(&AxiomViolation::CoverMembership { a: 0, p: AtomSet(1) }));
        assert!(!t.describe(&report).is_empty());
    }

    #[test]
    fn missing_transitive_edge_is_flagged() {
        let t = FormalTopology::new(
            numbered_atoms(3),
            &[(0, 1), (1, 2)],
            CoverSpec::Downset,
            &Ceilings::default(),
        )
        .unwrap();
        let bad: Vec<_> = t
            .validate()
            .violations
            .into_iter()
            .filter(|v| matches!(v, AxiomViolation::OrderNotTransitive { .. }))
            .collect();
        assert_eq!(bad, vec![AxiomViolation::OrderNotTransitive { a: 0, b: 1, c: 2 }]);
    }

    #[test]
    fn carrier_ceiling_enforced() {
        let err = FormalTopology::new(
            numbered_atoms(7),
            &[],
            CoverSpec::Discrete,
            &Ceilings::default(),
        )
        .unwrap_err();
        assert_eq!(err, TopologyError::CarrierTooLarge { atoms: 7, ceiling: 6 });
    }
}
