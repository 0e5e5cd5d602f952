//! Frames of stable lower sets.
//!
//! For a valid [`FormalTopology`], the operator ȷ ([`FormalTopology::nucleus_close`])
//! is a closure operator on lower sets and its fixed points form a finite
//! frame: meet is intersection, join is ȷ of union, top is the carrier,
//! bottom is ȷ(∅), and implication is the right adjoint of meet. [`Frame`]
//! tabulates all of it once at construction; every later operation is a
//! table lookup.
//!
//! Implication is computed pointwise as p → q = { x | every y <= x in p is
//! in q }, the Heyting implication of the downset lattice. Stability of the
//! result is inherited from q (a closure operator that preserves binary
//! meets fixes such implications), and construction asserts both stability
//! and the adjunction r ∧ p <= q iff r <= p → q.
//!
//! [`Frame::booleanize`] is the double-negation smoothing: the stable lower
//! sets that additionally satisfy ¬¬p = p form a Boolean frame; it is
//! realized as the frame of a derived cover a ◁' p iff a ∈ ¬¬ȷ(↓p), which
//! keeps the whole `Frame` API available on the result.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicU64, Ordering};

use crate::topology::{AtomSet, FormalTopology, ValidationReport};

static NEXT_FRAME_ID: AtomicU64 = AtomicU64::new(1);

/// Identity of one constructed frame; elements remember it so that mixing
/// frames is an error instead of a silent wrong answer.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FrameId(u64);

/// One stable lower set, tagged with its frame.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FrameElement {
    frame: FrameId,
    bits: AtomSet,
}

impl FrameElement {
    pub fn frame(&self) -> FrameId {
        self.frame
    }

    /// The underlying subset of the carrier. Comparable across frames over
    /// the same carrier, which is how base and booleanized values meet.
    pub fn bits(&self) -> AtomSet {
        self.bits
    }
}

impl fmt::Debug for FrameElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "el{:?}", self.bits)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameError {
    /// The topology failed validation; the report carries the witnesses.
    InvalidTopology(ValidationReport),
    /// An element of a different frame was passed in.
    FrameMismatch { expected: FrameId, got: FrameId },
    /// A subset that is not a stable lower set was used as an element.
    NotAnElement { bits: AtomSet },
    /// relativized_j was handed a set that is not lower.
    NotLower { bits: AtomSet },
}

impl fmt::Display for FrameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameError::InvalidTopology(r) => {
                write!(f, "topology violates {} axiom instance(s)", r.violations.len())
            }
            FrameError::FrameMismatch { .. } => write!(f, "element belongs to a different frame"),
            FrameError::NotAnElement { bits } => write!(f, "{bits:?} is not a stable lower set"),
            FrameError::NotLower { bits } => write!(f, "{bits:?} is not a lower set"),
        }
    }
}

/// A finite frame with tabulated operations. Immutable after construction.
pub struct Frame {
    id: FrameId,
    topology: FormalTopology,
    /// Stable lower sets in ascending mask order.
    elements: Vec<AtomSet>,
    /// Mask -> element index.
    by_bits: Vec<Option<u16>>,
    meet: Vec<u16>,
    join: Vec<u16>,
    imp: Vec<u16>,
    top: u16,
    bot: u16,
    /// generator_of[x] = index of ȷ(↓{x}).
    generator_of: Vec<u16>,
}

impl Frame {
    /// Validates the topology and enumerates its frame.
    pub fn enumerate(topology: &FormalTopology) -> Result<Frame, FrameError> {
        let report = topology.validate();
        if !report.is_valid() {
            return Err(FrameError::InvalidTopology(report));
        }
        Ok(Frame::enumerate_unchecked(topology))
    }

    fn enumerate_unchecked(topology: &FormalTopology) -> Frame {
        let n = topology.len();
        let mut elements = Vec::new();
        let mut by_bits = vec![None; 1 << n];
        for p in AtomSet::power(n) {
            if topology.is_lower(p) && topology.nucleus_close(p) == p {
                by_bits[p.0 as usize] = Some(elements.len() as u16);
                elements.push(p);
            }
        }
        let k = elements.len();
        let idx = |bits: AtomSet, by: &[Option<u16>]| -> u16 {
            by[bits.0 as usize].expect("closure of a lower set is an element")
        };
        let mut meet = vec![0u16; k * k];
        let mut join = vec![0u16; k * k];
        let mut imp = vec![0u16; k * k];
        for (i, &p) in elements.iter().enumerate() {
            for (j, &q) in elements.iter().enumerate() {
                meet[i * k + j] = idx(p.inter(q), &by_bits);
                join[i * k + j] = idx(topology.nucleus_close(p.union(q)), &by_bits);
                let mut r = AtomSet::EMPTY;
                for x in 0..n {
                    let ok = (0..n).all(|y| !topology.leq(y, x) || !p.contains(y) || q.contains(y));
                    if ok {
                        r.insert(x);
                    }
                }
                imp[i * k + j] = idx(r, &by_bits);
            }
        }
        let top = idx(topology.carrier(), &by_bits);
        let bot = idx(topology.nucleus_close(AtomSet::EMPTY), &by_bits);
        let generator_of = (0..n)
            .map(|x| {
                let g = topology.nucleus_close(topology.down_closure(AtomSet::singleton(x)));
                idx(g, &by_bits)
            })
            .collect();
        let frame = Frame {
            id: FrameId(NEXT_FRAME_ID.fetch_add(1, Ordering::Relaxed)),
            topology: topology.clone(),
            elements,
            by_bits,
            meet,
            join,
            imp,
            top,
            bot,
            generator_of,
        };
        frame.assert_implication_is_adjoint();
        frame
    }

    /// Implication must be stable and satisfy the adjunction; cheap enough
    /// to check unconditionally at construction.
    fn assert_implication_is_adjoint(&self) {
        let k = self.elements.len();
        for i in 0..k {
            for j in 0..k {
                let pq = self.elements[self.imp[i * k + j] as usize];
                for (r_idx, &r) in self.elements.iter().enumerate() {
                    let meets_in = self.elements[self.meet[r_idx * k + i] as usize]
                        .is_subset(self.elements[j]);
                    assert_eq!(
                        meets_in,
                        r.is_subset(pq),
                        "implication adjunction broken at ({i},{j},{r_idx})"
                    );
                }
            }
        }
    }

    pub fn id(&self) -> FrameId {
        self.id
    }

    pub fn topology(&self) -> &FormalTopology {
        &self.topology
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn el(&self, index: u16) -> FrameElement {
        FrameElement { frame: self.id, bits: self.elements[index as usize] }
    }

    fn index_of(&self, e: FrameElement) -> Result<usize, FrameError> {
        if e.frame != self.id {
            return Err(FrameError::FrameMismatch { expected: self.id, got: e.frame });
        }
        Ok(self.by_bits[e.bits.0 as usize].expect("tagged element is tabulated") as usize)
    }

    /// Elements in ascending mask order; index order is iteration order.
    pub fn elements(&self) -> impl Iterator<Item = FrameElement> + '_ {
        (0..self.elements.len() as u16).map(move |i| self.el(i))
    }

    /// Looks a subset up as an element.
    pub fn element(&self, bits: AtomSet) -> Result<FrameElement, FrameError> {
        match self.by_bits.get(bits.0 as usize) {
            Some(Some(_)) => Ok(FrameElement { frame: self.id, bits }),
            _ => Err(FrameError::NotAnElement { bits }),
        }
    }

    pub fn top(&self) -> FrameElement {
        self.el(self.top)
    }

    /// Bottom is ȷ(∅), which on a dense cover can be strictly above ∅.
    pub fn bot(&self) -> FrameElement {
        self.el(self.bot)
    }

    pub fn is_top(&self, e: FrameElement) -> bool {
        e.frame == self.id && e.bits == self.elements[self.top as usize]
    }

    pub fn leq(&self, a: FrameElement, b: FrameElement) -> Result<bool, FrameError> {
        self.index_of(a)?;
        self.index_of(b)?;
        Ok(a.bits.is_subset(b.bits))
    }

    pub fn meet(&self, a: FrameElement, b: FrameElement) -> Result<FrameElement, FrameError> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        Ok(self.el(self.meet[i * self.elements.len() + j]))
    }

    pub fn join(&self, a: FrameElement, b: FrameElement) -> Result<FrameElement, FrameError> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        Ok(self.el(self.join[i * self.elements.len() + j]))
    }

    pub fn imp(&self, a: FrameElement, b: FrameElement) -> Result<FrameElement, FrameError> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        Ok(self.el(self.imp[i * self.elements.len() + j]))
    }

    pub fn neg(&self, a: FrameElement) -> Result<FrameElement, FrameError> {
        self.imp(a, self.bot())
    }

    /// ¬¬a.
    pub fn dn(&self, a: FrameElement) -> Result<FrameElement, FrameError> {
        self.neg(self.neg(a)?)
    }

    /// Left fold of meet; empty input is top.
    pub fn big_meet(
        &self,
        items: impl IntoIterator<Item = FrameElement>,
    ) -> Result<FrameElement, FrameError> {
        let mut acc = self.top();
        for e in items {
            acc = self.meet(acc, e)?;
        }
        Ok(acc)
    }

    /// Left fold of join; empty input is bottom. Folding is exact because
    /// ȷ(ȷ(p ∪ q) ∪ r) = ȷ(p ∪ q ∪ r) for a closure operator.
    pub fn big_join(
        &self,
        items: impl IntoIterator<Item = FrameElement>,
    ) -> Result<FrameElement, FrameError> {
        let mut acc = self.bot();
        for e in items {
            acc = self.join(acc, e)?;
        }
        Ok(acc)
    }

    /// The set generators ȷ(↓{x}), one per atom, deduplicated, ascending.
    pub fn generators(&self) -> Vec<FrameElement> {
        let mut idxs: Vec<u16> = self.generator_of.clone();
        idxs.sort_unstable();
        idxs.dedup();
        idxs.into_iter().map(|i| self.el(i)).collect()
    }

    /// The generator ȷ(↓{x}) of one atom.
    pub fn generator_of_atom(&self, atom: usize) -> FrameElement {
        self.el(self.generator_of[atom])
    }

    pub fn is_boolean(&self) -> bool {
        self.elements().all(|e| {
            let lem = self.join(e, self.neg(e).unwrap()).unwrap();
            self.is_top(lem)
        })
    }

    /// The frame of ¬¬-stable elements, built from the derived cover
    /// a ◁' p iff a ∈ ¬¬ȷ(↓p). Joins compose the old join with ¬¬; meets,
    /// implication and top are unchanged; excluded middle is asserted on
    /// the result. A Boolean input reproduces itself.
    pub fn booleanize(&self) -> Frame {
        let derived = FormalTopology::from_fn(
            self.topology.atom_names().to_vec(),
            &self.le_pairs(),
            |a, p| {
                let closed = self.topology.nucleus_close(self.topology.down_closure(p));
                let e = self.element(closed).expect("closure is an element");
                self.dn(e).expect("same frame").bits.contains(a)
            },
            &crate::Ceilings { carrier: self.topology.len().max(1), ..Default::default() },
        )
        .expect("carrier already admitted");
        let out = Frame::enumerate(&derived).expect("derived cover satisfies the axioms");
        assert!(out.is_boolean(), "double-negation frame must be Boolean");
        out
    }

    fn le_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.topology.len();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.topology.leq(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    /// ¬¬ȷ(p) for a lower set p: the closure whose fixed points are the
    /// booleanized frame's elements. Agrees with ¬¬p when p is stable.
    pub fn booleanization_closure(&self, p: AtomSet) -> Result<AtomSet, FrameError> {
        if !self.topology.is_lower(p) {
            return Err(FrameError::NotLower { bits: p });
        }
        let e = self.element(self.topology.nucleus_close(p)).expect("closure is an element");
        Ok(self.dn(e)?.bits)
    }

    /// The A-indexed approximation ⋃ { ¬¬q | q ∈ A, q ⊆ p } for a lower set
    /// p. The union of stable sets need not be stable, so the result is a
    /// raw lower set; see [`Frame::element`] to view it as an element when
    /// it happens to be one. Monotone in A, and bounded by
    /// [`Frame::booleanization_closure`].
    pub fn relativized_j(
        &self,
        p: AtomSet,
        family: &[FrameElement],
    ) -> Result<AtomSet, FrameError> {
        if !self.topology.is_lower(p) {
            return Err(FrameError::NotLower { bits: p });
        }
        let mut out = AtomSet::EMPTY;
        for &q in family {
            self.index_of(q)?;
            if q.bits.is_subset(p) {
                out = out.union(self.dn(q)?.bits);
            }
        }
        Ok(out)
    }

    /// The approximation with every element admitted: ⋃ { ¬¬q | q ⊆ p }.
    pub fn j_all(&self, p: AtomSet) -> Result<AtomSet, FrameError> {
        let family: Vec<_> = self.elements().collect();
        self.relativized_j(p, &family)
    }

    /// Renders an element as its sorted atom-name list, `[0 1]` style.
    pub fn render(&self, e: FrameElement) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::from("[");
        for (k, i) in e.bits.iter().enumerate() {
            if k > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{}", self.topology.atom_names()[i]);
        }
        s.push(']');
        s
    }

    /// Test fixture: returns a copy with one meet-table entry overwritten.
    /// Exists so law suites can demonstrate they catch a corrupted table.
    #[doc(hidden)]
    pub fn with_faulted_meet(&self, i: usize, j: usize, v: usize) -> Frame {
        let mut meet = self.meet.clone();
        meet[i * self.elements.len() + j] = v as u16;
        Frame {
            id: FrameId(NEXT_FRAME_ID.fetch_add(1, Ordering::Relaxed)),
            topology: self.topology.clone(),
            elements: self.elements.clone(),
            by_bits: self.by_bits.clone(),
            meet,
            join: self.join.clone(),
            imp: self.imp.clone(),
            top: self.top,
            bot: self.bot,
            generator_of: self.generator_of.clone(),
        }
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Frame")
            .field("id", &self.id)
            .field("elements", &self.elements)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{numbered_atoms, CoverSpec};
    use crate::Ceilings;

    fn frame_of(atoms: usize, le: &[(usize, usize)], spec: CoverSpec<'_>) -> Frame {
        let t = FormalTopology::new(numbered_atoms(atoms), le, spec, &Ceilings::default()).unwrap();
        Frame::enumerate(&t).unwrap()
    }

    /// Chain 0 <= 1 under the downset cover: three nested elements.
    fn three_chain() -> Frame {
        frame_of(2, &[(0, 1)], CoverSpec::Downset)
    }

    #[test]
    fn chain2_frame_is_the_three_chain() {
        let f = three_chain();
        let bits: Vec<_> = f.elements().map(|e| e.bits()).collect();
        assert_eq!(bits, vec![AtomSet(0b00), AtomSet(0b01), AtomSet(0b11)]);
        assert_eq!(f.bot().bits(), AtomSet::EMPTY);
        assert_eq!(f.top().bits(), AtomSet(0b11));
    }

    #[test]
    fn antichain2_frame_is_boolean_four() {
        let f = frame_of(2, &[], CoverSpec::Downset);
        assert_eq!(f.len(), 4);
        assert!(f.is_boolean());
    }

    #[test]
    fn implication_examples_on_the_three_chain() {
        let f = three_chain();
        let bot = f.bot();
        let mid = f.element(AtomSet(0b01)).unwrap();
        let top = f.top();
        assert_eq!(f.imp(mid, bot).unwrap(), bot, "{{0}} -> empty is empty");
        assert_eq!(f.imp(bot, mid).unwrap(), top);
        assert_eq!(f.dn(mid).unwrap(), top, "not not {{0}} is top");
        for e in f.elements() {
            assert_eq!(f.imp(e, e).unwrap(), top);
            assert_eq!(f.imp(top, e).unwrap(), e);
        }
    }

    #[test]
    fn booleanize_collapses_the_three_chain() {
        let f = three_chain();
        let b = f.booleanize();
        let bits: Vec<_> = b.elements().map(|e| e.bits()).collect();
        assert_eq!(bits, vec![AtomSet(0b00), AtomSet(0b11)]);
        assert!(b.is_boolean());
    }

    #[test]
    fn booleanize_fixes_a_boolean_frame() {
        let f = frame_of(2, &[], CoverSpec::Downset);
        let b = f.booleanize();
        let old: Vec<_> = f.elements().map(|e| e.bits()).collect();
        let new: Vec<_> = b.elements().map(|e| e.bits()).collect();
        assert_eq!(old, new);
        for p in f.elements() {
            for q in f.elements() {
                let bp = b.element(p.bits()).unwrap();
                let bq = b.element(q.bits()).unwrap();
                assert_eq!(f.join(p, q).unwrap().bits(), b.join(bp, bq).unwrap().bits());
                assert_eq!(f.meet(p, q).unwrap().bits(), b.meet(bp, bq).unwrap().bits());
                assert_eq!(f.imp(p, q).unwrap().bits(), b.imp(bp, bq).unwrap().bits());
            }
        }
    }

    #[test]
    fn dense_cover_has_dense_bottom() {
        // Every atom covered by every subset: the only element is the carrier.
        let f = frame_of(1, &[], CoverSpec::Pairs(&[(0, AtomSet(0)), (0, AtomSet(1))]));
        assert_eq!(f.len(), 1);
        assert_eq!(f.bot(), f.top());
        assert_eq!(f.bot().bits(), AtomSet(1));
    }

    #[test]
    fn generators_span_the_three_chain() {
        let f = three_chain();
        let gens = f.generators();
        assert_eq!(gens.len(), 2);
        for e in f.elements() {
            let below: Vec<_> =
                gens.iter().copied().filter(|g| f.leq(*g, e).unwrap()).collect();
            assert_eq!(f.big_join(below).unwrap(), e);
        }
    }

    #[test]
    fn relativized_j_examples() {
        let f = three_chain();
        let mid = f.element(AtomSet(0b01)).unwrap();
        // Family {bot, {0}}: the {0} part contributes ¬¬{0} = top.
        let out = f.relativized_j(mid.bits(), &[f.bot(), mid]).unwrap();
        assert_eq!(out, f.top().bits());
        // Family {bot} approximates nothing above bottom.
        let out = f.relativized_j(mid.bits(), &[f.bot()]).unwrap();
        assert_eq!(out, f.bot().bits());
        // Raising the family can only grow the result.
        let small = f.relativized_j(mid.bits(), &[f.bot()]).unwrap();
        let large = f.j_all(mid.bits()).unwrap();
        assert!(small.is_subset(large));
        assert!(large.is_subset(f.booleanization_closure(mid.bits()).unwrap()));
    }

    #[test]
    fn relativized_j_can_leave_the_frame() {
        // Wedge poset 0, 1 <= 2 with a ◁ p iff ↓{a} ∩ {0,1} ⊆ ↓p. This is the
        // cover induced by restricting to the subspace {0,1}; in particular
        // 2 ◁ {0,1}. The union of the stable sets {0} and {1} is {0,1},
        // which is not stable.
        let t = FormalTopology::from_fn(
            numbered_atoms(3),
            &[(0, 2), (1, 2)],
            |a, p| {
                let (dp, base) = (AtomSet(0b011), AtomSet(0b011));
                let down = if p.contains(2) { p.union(dp) } else { p };
                let trace = if a == 2 { base } else { AtomSet::singleton(a) };
                trace.is_subset(down)
            },
            &Ceilings::default(),
        )
        .unwrap();
        let f = Frame::enumerate(&t).unwrap();
        assert_eq!(f.len(), 4);
        let p = AtomSet(0b011);
        assert!(f.element(p).is_err());
        let e0 = f.element(AtomSet(0b001)).unwrap();
        let e1 = f.element(AtomSet(0b010)).unwrap();
        let out = f.relativized_j(p, &[e0, e1]).unwrap();
        assert_eq!(out, p, "union of two regular elements escapes the frame");
    }

    #[test]
    fn mixing_frames_is_an_error() {
        let f = three_chain();
        let g = three_chain();
        let err = f.meet(f.top(), g.top()).unwrap_err();
        assert!(matches!(err, FrameError::FrameMismatch { .. }));
    }

    #[test]
    fn invalid_topology_is_rejected() {
        let t = FormalTopology::from_fn(numbered_atoms(1), &[], |_, _| false, &Ceilings::default())
            .unwrap();
        assert!(matches!(Frame::enumerate(&t), Err(FrameError::InvalidTopology(_))));
    }
}
