//! Names over a frame: the truncated universe of the forcing interpretation.
//!
//! A name is hereditarily a finite function from names to frame elements.
//! [`Name`] is immutable and cheaply clonable; equality is structural
//! identity only (extensional merging needs the evaluator and lives
//! downstream). The order is (rank, domain size, entries lexicographically),
//! so enumeration output is reproducible bit for bit.
//!
//! [`NameUniverse`] lists every name up to a rank bound and a domain-width
//! bound, deduplicated and sorted, with values drawn from the non-⊥ elements
//! of one frame. ⊥-valued entries are semantically inert (the membership
//! clause joins b(y) ∧ …), so enumeration omits them; constructors still
//! accept them and [`Name::prune_bottom`] removes them hereditarily.
//!
//! The empty name carries no frame of its own and embeds in any universe.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::fmt::Write as _;
use core::hash::{Hash, Hasher};

use crate::frame::{Frame, FrameElement, FrameError, FrameId};
use crate::hf::HfSet;
use crate::Ceilings;

/// A name: a finite function from names to frame elements.
#[derive(Clone)]
pub struct Name(Arc<NameData>);

struct NameData {
    /// Sorted by key, keys pairwise distinct.
    entries: Vec<(Name, FrameElement)>,
    /// 1 + max key rank; 0 for the empty domain.
    rank: u32,
    /// None only for the empty name.
    frame: Option<FrameId>,
}

impl PartialEq for Name {
    fn eq(&self, other: &Name) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.rank == other.0.rank && self.0.entries == other.0.entries)
    }
}

impl Eq for Name {}

impl Hash for Name {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.rank.hash(state);
        self.0.entries.len().hash(state);
        for (k, v) in &self.0.entries {
            k.hash(state);
            v.hash(state);
        }
    }
}

impl PartialOrd for Name {
    fn partial_cmp(&self, other: &Name) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Name {
    fn cmp(&self, other: &Name) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0
            .rank
            .cmp(&other.0.rank)
            .then_with(|| self.0.entries.len().cmp(&other.0.entries.len()))
            .then_with(|| {
                for ((ka, va), (kb, vb)) in self.0.entries.iter().zip(&other.0.entries) {
                    let c = ka.cmp(kb).then_with(|| va.cmp(vb));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            })
    }
}

impl fmt::Debug for Name {
    /// Structural form with raw element bits: `name{empty: {0}}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.entries.is_empty() {
            return write!(f, "empty");
        }
        write!(f, "name{{")?;
        for (i, (k, v)) in self.0.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k:?}: {:?}", v.bits())?;
        }
        write!(f, "}}")
    }
}

/// Errors from name construction and universe enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NameError {
    FrameMismatch { expected: FrameId, got: FrameId },
    DuplicateKey { key: Name },
    /// A bound was exceeded; `rank` names the offending stratum.
    Bound { what: &'static str, rank: u32, needed: u64, max: u64 },
    UnknownAtom { atom: String },
    NotListed { name: Name },
    Frame(FrameError),
}

impl From<FrameError> for NameError {
    fn from(e: FrameError) -> NameError {
        NameError::Frame(e)
    }
}

impl fmt::Display for NameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NameError::FrameMismatch { expected, got } => {
                write!(f, "frame mismatch: expected {expected:?}, got {got:?}")
            }
            NameError::DuplicateKey { key } => write!(f, "duplicate key {key:?}"),
            NameError::Bound { what, rank, needed, max } => {
                write!(f, "bound exceeded: {what} at rank {rank} needs {needed}, max {max}")
            }
            NameError::UnknownAtom { atom } => write!(f, "unknown atom `{atom}`"),
            NameError::NotListed { name } => write!(f, "name {name:?} is not in the universe"),
            NameError::Frame(e) => write!(f, "{e:?}"),
        }
    }
}

fn check_owner(frame: &Frame, name: &Name) -> Result<(), NameError> {
    match name.frame_id() {
        Some(id) if id != frame.id() => {
            Err(NameError::FrameMismatch { expected: frame.id(), got: id })
        }
        _ => Ok(()),
    }
}

impl Name {
    pub fn empty() -> Name {
        Name(Arc::new(NameData { entries: Vec::new(), rank: 0, frame: None }))
    }

    /// Builds a name, sorting entries by key. Duplicate keys and mixed
    /// frames are rejected.
    pub fn from_entries(mut entries: Vec<(Name, FrameElement)>) -> Result<Name, NameError> {
        let mut frame: Option<FrameId> = None;
        for (k, v) in &entries {
            for id in [k.frame_id(), Some(v.frame())].into_iter().flatten() {
                match frame {
                    None => frame = Some(id),
                    Some(f) if f == id => {}
                    Some(f) => return Err(NameError::FrameMismatch { expected: f, got: id }),
                }
            }
        }
        entries.sort_by(|(a, _), (b, _)| a.cmp(b));
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(NameError::DuplicateKey { key: w[0].0.clone() });
            }
        }
        let rank = entries.iter().map(|(k, _)| k.rank() + 1).max().unwrap_or(0);
        Ok(Name(Arc::new(NameData { entries, rank, frame })))
    }

    pub fn rank(&self) -> u32 {
        self.0.rank
    }

    /// Domain size.
    pub fn width(&self) -> usize {
        self.0.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.entries.is_empty()
    }

    pub fn entries(&self) -> &[(Name, FrameElement)] {
        &self.0.entries
    }

    pub fn domain(&self) -> impl Iterator<Item = &Name> {
        self.0.entries.iter().map(|(k, _)| k)
    }

    pub fn value_of(&self, key: &Name) -> Option<FrameElement> {
        self.0
            .entries
            .binary_search_by(|(k, _)| k.cmp(key))
            .ok()
            .map(|i| self.0.entries[i].1)
    }

    /// None only for the empty name, which belongs to every frame.
    pub fn frame_id(&self) -> Option<FrameId> {
        self.0.frame
    }

    /// The canonical name x̌: dom x̌ = {y̌ | y ∈ x}, all values ⊤.
    /// Injective on extensionally distinct sets, so keys never collide.
    pub fn canonical(frame: &Frame, x: &HfSet) -> Name {
        let top = frame.top();
        let entries = x.elems().iter().map(|m| (Name::canonical(frame, m), top)).collect();
        Name::from_entries(entries).expect("canonical entries are distinct and share one frame")
    }

    /// dom = {a, b} (one entry when a = b), values ⊤.
    pub fn up(frame: &Frame, a: &Name, b: &Name) -> Result<Name, NameError> {
        check_owner(frame, a)?;
        check_owner(frame, b)?;
        let top = frame.top();
        let entries = if a == b {
            vec![(a.clone(), top)]
        } else {
            vec![(a.clone(), top), (b.clone(), top)]
        };
        Name::from_entries(entries)
    }

    /// op(a, b) = up(up(a, a), up(a, b)).
    pub fn op_pair(frame: &Frame, a: &Name, b: &Name) -> Result<Name, NameError> {
        let aa = Name::up(frame, a, a)?;
        let ab = Name::up(frame, a, b)?;
        Name::up(frame, &aa, &ab)
    }

    /// Hereditarily drops ⊥-valued entries. Pruning a key can merge two
    /// previously distinct keys; their values are joined, which preserves
    /// the interpreted value of the name (both ⟦·=·⟧ conjuncts and ⟦·∈·⟧
    /// joins factor through ∨ on the value side).
    pub fn prune_bottom(&self, frame: &Frame) -> Result<Name, NameError> {
        check_owner(frame, self)?;
        let bot = frame.bot();
        let mut merged: Vec<(Name, FrameElement)> = Vec::new();
        for (k, v) in &self.0.entries {
            if *v == bot {
                continue;
            }
            let key = k.prune_bottom(frame)?;
            match merged.iter_mut().find(|(m, _)| *m == key) {
                Some((_, mv)) => *mv = frame.join(*mv, *v)?,
                None => merged.push((key, *v)),
            }
        }
        Name::from_entries(merged)
    }

    /// Hereditarily replaces every value v by f(v), joining values in
    /// `target` when the mapped keys collide. `f` must produce elements of
    /// `target`.
    pub fn map_values(
        &self,
        target: &Frame,
        f: &dyn Fn(FrameElement) -> Result<FrameElement, NameError>,
    ) -> Result<Name, NameError> {
        let mut merged: Vec<(Name, FrameElement)> = Vec::new();
        for (k, v) in &self.0.entries {
            let key = k.map_values(target, f)?;
            let value = f(*v)?;
            match merged.iter_mut().find(|(m, _)| *m == key) {
                Some((_, mv)) => *mv = target.join(*mv, value)?,
                None => merged.push((key, value)),
            }
        }
        Name::from_entries(merged)
    }

    /// Parseable literal form; element values use the frame's atom names.
    pub fn render(&self, frame: &Frame) -> Result<String, NameError> {
        check_owner(frame, self)?;
        let mut out = String::new();
        self.render_into(frame, &mut out);
        Ok(out)
    }

    fn render_into(&self, frame: &Frame, out: &mut String) {
        if self.0.entries.is_empty() {
            out.push_str("empty");
            return;
        }
        out.push_str("name{");
        for (i, (k, v)) in self.0.entries.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            k.render_into(frame, out);
            let _ = write!(out, ": {}", frame.render(*v));
        }
        out.push('}');
    }
}

/// Every name of rank ≤ `max_rank` and domain width ≤ `max_width` over one
/// frame, sorted ascending, downward closed, deduplicated.
pub struct NameUniverse {
    frame: Arc<Frame>,
    names: Vec<Name>,
    max_rank: u32,
    max_width: usize,
}

impl NameUniverse {
    /// Rank-stratified enumeration. Before materializing each stratum the
    /// projected count Σ_k C(n,k)·v^k is checked against the subset-search
    /// ceiling, where n counts names so far and v the non-⊥ elements.
    pub fn enumerate(
        frame: Arc<Frame>,
        max_rank: u32,
        max_width: usize,
        ceilings: &Ceilings,
    ) -> Result<NameUniverse, NameError> {
        let bot = frame.bot();
        let values: Vec<FrameElement> = frame.elements().filter(|e| *e != bot).collect();
        let mut names = vec![Name::empty()];
        // A degenerate frame (⊥ = ⊤) admits no entry values, so the empty
        // name is the whole universe at every rank.
        for rank in 1..=max_rank {
            if values.is_empty() {
                break;
            }
            let n = names.len();
            let mut projected = n as u128;
            for k in 1..=max_width.min(n) {
                projected = projected
                    .saturating_add(binom(n as u128, k as u128).saturating_mul(pow(
                        values.len() as u128,
                        k as u32,
                    )));
            }
            if projected > ceilings.subset_search as u128 {
                return Err(NameError::Bound {
                    what: "name enumeration",
                    rank,
                    needed: projected.min(u64::MAX as u128) as u64,
                    max: ceilings.subset_search,
                });
            }
            let prev = names.clone();
            for k in 1..=max_width.min(prev.len()) {
                for_each_combination(prev.len(), k, |idx| {
                    let keys: Vec<&Name> = idx.iter().map(|&i| &prev[i]).collect();
                    let mut digits = vec![0usize; k];
                    loop {
                        let entries = keys
                            .iter()
                            .zip(&digits)
                            .map(|(key, &d)| ((*key).clone(), values[d]))
                            .collect();
                        names.push(
                            Name::from_entries(entries)
                                .expect("keys are distinct and share the frame"),
                        );
                        let mut i = 0;
                        loop {
                            if i == k {
                                return;
                            }
                            digits[i] += 1;
                            if digits[i] < values.len() {
                                break;
                            }
                            digits[i] = 0;
                            i += 1;
                        }
                    }
                });
            }
            names.sort();
            names.dedup();
        }
        Ok(NameUniverse { frame, names, max_rank, max_width })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn frame_arc(&self) -> Arc<Frame> {
        Arc::clone(&self.frame)
    }

    pub fn names(&self) -> &[Name] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn max_rank(&self) -> u32 {
        self.max_rank
    }

    pub fn max_width(&self) -> usize {
        self.max_width
    }

    pub fn contains(&self, name: &Name) -> bool {
        self.index_of(name).is_some()
    }

    pub fn index_of(&self, name: &Name) -> Option<usize> {
        self.names.binary_search(name).ok()
    }

    /// x̌ as a member of this universe; rejects sets whose rank or
    /// hereditary width exceed the bounds.
    pub fn canonical_name(&self, x: &HfSet) -> Result<Name, NameError> {
        let rank = x.rank();
        if rank > self.max_rank {
            return Err(NameError::Bound {
                what: "canonical name rank",
                rank,
                needed: rank as u64,
                max: self.max_rank as u64,
            });
        }
        let width = hereditary_width(x);
        if width > self.max_width {
            return Err(NameError::Bound {
                what: "canonical name width",
                rank,
                needed: width as u64,
                max: self.max_width as u64,
            });
        }
        let name = Name::canonical(&self.frame, x);
        debug_assert!(self.contains(&name));
        Ok(name)
    }

    /// Is `subset` closed under domains?
    pub fn is_domain_closed(&self, subset: &[Name]) -> bool {
        subset.iter().all(|n| n.domain().all(|k| subset.contains(k)))
    }

    /// The name Ã of a sub-collection: dom = members, values ⊤. Members
    /// must be listed.
    pub fn subuniverse_name(&self, members: &[Name]) -> Result<Name, NameError> {
        let top = self.frame.top();
        let mut entries = Vec::with_capacity(members.len());
        for m in members {
            if !self.contains(m) {
                return Err(NameError::NotListed { name: m.clone() });
            }
            entries.push((m.clone(), top));
        }
        Name::from_entries(entries)
    }

    /// All domain-closed subsets, as ascending index vectors in ascending
    /// bitmask order. Scans 2^n masks, so the universe must be small.
    pub fn transitive_subsets(&self, ceilings: &Ceilings) -> Result<Vec<Vec<usize>>, NameError> {
        let n = self.names.len();
        if n >= 64 || 1u64 << n > ceilings.subset_search {
            return Err(NameError::Bound {
                what: "transitive subset scan",
                rank: self.max_rank,
                needed: 1u64.checked_shl(n as u32).unwrap_or(u64::MAX),
                max: ceilings.subset_search,
            });
        }
        let key_masks: Vec<u64> = self
            .names
            .iter()
            .map(|name| {
                let mut m = 0u64;
                for k in name.domain() {
                    // Listed names are downward closed, so keys resolve.
                    m |= 1 << self.index_of(k).expect("universe is downward closed");
                }
                m
            })
            .collect();
        let mut out = Vec::new();
        for mask in 0u64..1 << n {
            let closed = (0..n).all(|i| mask >> i & 1 == 0 || key_masks[i] & mask == key_masks[i]);
            if closed {
                out.push((0..n).filter(|i| mask >> i & 1 == 1).collect());
            }
        }
        Ok(out)
    }
}

fn hereditary_width(x: &HfSet) -> usize {
    x.len().max(x.elems().iter().map(hereditary_width).max().unwrap_or(0))
}

/// Saturating binomial coefficient; the incremental form divides exactly at
/// every step below saturation.
fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn pow(base: u128, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Visits all k-subsets of 0..n as ascending index slices.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Source syntax for names in input files. Keeps the written form so the
/// pretty-printer round-trips; [`NameLiteral::resolve`] produces the value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NameLiteral {
    Empty,
    Check(HfSet),
    Up(Box<NameLiteral>, Box<NameLiteral>),
    Op(Box<NameLiteral>, Box<NameLiteral>),
    /// `name{ k: [a b], ... }` with values as atom-name lists.
    Explicit(Vec<(NameLiteral, Vec<String>)>),
}

impl NameLiteral {
    pub fn resolve(&self, frame: &Frame) -> Result<Name, NameError> {
        match self {
            NameLiteral::Empty => Ok(Name::empty()),
            NameLiteral::Check(x) => Ok(Name::canonical(frame, x)),
            NameLiteral::Up(a, b) => {
                Name::up(frame, &a.resolve(frame)?, &b.resolve(frame)?)
            }
            NameLiteral::Op(a, b) => {
                Name::op_pair(frame, &a.resolve(frame)?, &b.resolve(frame)?)
            }
            NameLiteral::Explicit(entries) => {
                let mut resolved = Vec::with_capacity(entries.len());
                for (key, atoms) in entries {
                    let mut bits = crate::topology::AtomSet::EMPTY;
                    for atom in atoms {
                        match frame.topology().atom_index(atom) {
                            Some(i) => bits.insert(i),
                            None => {
                                return Err(NameError::UnknownAtom { atom: atom.clone() })
                            }
                        }
                    }
                    resolved.push((key.resolve(frame)?, frame.element(bits)?));
                }
                Name::from_entries(resolved)
            }
        }
    }
}

impl fmt::Display for NameLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NameLiteral::Empty => write!(f, "empty"),
            NameLiteral::Check(x) => write!(f, "check({x})"),
            NameLiteral::Up(a, b) => write!(f, "up({a}, {b})"),
            NameLiteral::Op(a, b) => write!(f, "op({a}, {b})"),
            NameLiteral::Explicit(entries) => {
                write!(f, "name{{")?;
                for (i, (key, atoms)) in entries.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{key}: [")?;
                    for (j, atom) in atoms.iter().enumerate() {
                        if j > 0 {
                            write!(f, " ")?;
                        }
                        write!(f, "{atom}")?;
                    }
                    write!(f, "]")?;
                }
                write!(f, "}}")
            }
        }
    }
}
