//! Hereditarily finite sets and the multi-valued-relation toolkit.
//!
//! [`HfSet`] keeps a canonical form (elements sorted and deduplicated,
//! recursively), so structural equality is extensional equality and the
//! derived order is total and deterministic.
//!
//! On top of that sit multi-valued relations between two sets, written
//! R: A ⇉ B when every x ∈ A has at least one pair, and R: A ⇄ B when
//! additionally every y ∈ B is hit. The adjustment 𝒜(R) replaces each pair
//! ⟨x,y⟩ by ⟨x,⟨x,y⟩⟩; its point is the pair of equivalences
//!
//!   𝒜(R): A ⇉ S  iff  R ∩ S: A ⇉ B      and      𝒜(R): A ⇇ S  iff  S ⊆ R
//!
//! which turn one strong-collection step into a refinement search
//! ([`set_mv_refine`]). A transitive set A is regular when every R: a ⇉ A
//! with a ∈ A admits b ∈ A with R: a ⇄ b; [`is_regular`] decides this by
//! brute force under explicit ceilings, and [`census`] sweeps all small
//! transitive candidates.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::Ceilings;

/// A hereditarily finite set in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HfSet {
    elems: Vec<HfSet>,
}

impl PartialOrd for HfSet {
    fn partial_cmp(&self, other: &HfSet) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HfSet {
    /// Rank first, then length, then lexicographic on elements. Rank-first
    /// keeps stage enumerations aligned with the order.
    fn cmp(&self, other: &HfSet) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.elems.len().cmp(&other.elems.len()))
            .then_with(|| self.elems.cmp(&other.elems))
    }
}

impl HfSet {
    pub fn empty() -> HfSet {
        HfSet { elems: Vec::new() }
    }

    /// Canonicalizes: sorts and deduplicates.
    pub fn from_vec(mut elems: Vec<HfSet>) -> HfSet {
        elems.sort();
        elems.dedup();
        HfSet { elems }
    }

    pub fn singleton(x: HfSet) -> HfSet {
        HfSet { elems: vec![x] }
    }

    /// {x, y}.
    pub fn pair_set(x: HfSet, y: HfSet) -> HfSet {
        HfSet::from_vec(vec![x, y])
    }

    /// Kuratowski pair ⟨x, y⟩ = {{x}, {x, y}}.
    pub fn kuratowski(x: HfSet, y: HfSet) -> HfSet {
        HfSet::pair_set(HfSet::singleton(x.clone()), HfSet::pair_set(x, y))
    }

    /// Inverse of [`HfSet::kuratowski`] where one exists.
    pub fn decode_pair(&self) -> Option<(HfSet, HfSet)> {
        match self.elems.as_slice() {
            [s] => match s.elems.as_slice() {
                [x] => Some((x.clone(), x.clone())),
                _ => None,
            },
            [s, t] => {
                // One of the two must be the singleton {x}.
                let (sing, dup) = if s.elems.len() == 1 { (s, t) } else { (t, s) };
                if sing.elems.len() != 1 || dup.elems.len() != 2 {
                    return None;
                }
                let x = &sing.elems[0];
                let y = if &dup.elems[0] == x {
                    &dup.elems[1]
                } else if &dup.elems[1] == x {
                    &dup.elems[0]
                } else {
                    return None;
                };
                Some((x.clone(), y.clone()))
            }
            _ => None,
        }
    }

    pub fn elems(&self) -> &[HfSet] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: &HfSet) -> bool {
        self.elems.iter().any(|e| e == x)
    }

    pub fn rank(&self) -> u32 {
        self.elems.iter().map(|e| e.rank() + 1).max().unwrap_or(0)
    }

    pub fn union2(&self, other: &HfSet) -> HfSet {
        let mut v = self.elems.clone();
        v.extend(other.elems.iter().cloned());
        HfSet::from_vec(v)
    }

    pub fn inter2(&self, other: &HfSet) -> HfSet {
        HfSet::from_vec(self.elems.iter().filter(|e| other.contains(e)).cloned().collect())
    }

    /// ⋃ self.
    pub fn union_all(&self) -> HfSet {
        let mut v = Vec::new();
        for e in &self.elems {
            v.extend(e.elems.iter().cloned());
        }
        HfSet::from_vec(v)
    }

    /// All hereditary members (not including self).
    pub fn transitive_closure(&self) -> HfSet {
        let mut v = Vec::new();
        for e in &self.elems {
            v.push(e.clone());
            v.extend(e.transitive_closure().elems);
        }
        HfSet::from_vec(v)
    }

    pub fn is_transitive(&self) -> bool {
        self.elems.iter().all(|e| e.elems.iter().all(|x| self.contains(x)))
    }

    /// Von Neumann ordinal n.
    pub fn ordinal(n: usize) -> HfSet {
        let mut v = Vec::new();
        for _ in 0..n {
            let next = HfSet::from_vec(v.clone());
            v.push(next);
        }
        HfSet { elems: v }
    }

    /// Cartesian product as a set of Kuratowski pairs.
    pub fn product(&self, other: &HfSet) -> HfSet {
        let mut v = Vec::new();
        for x in &self.elems {
            for y in &other.elems {
                v.push(HfSet::kuratowski(x.clone(), y.clone()));
            }
        }
        HfSet::from_vec(v)
    }
}

impl fmt::Display for HfSet {
    /// Literal form: `{{},{{}}}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Errors from this module's searches and parsers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HfError {
    Ceiling { what: &'static str, needed: u64, max: u64 },
    Precondition { what: String },
    Parse { pos: usize, msg: String },
}

impl fmt::Display for HfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HfError::Ceiling { what, needed, max } => {
                write!(f, "ceiling exceeded: {what} needs {needed}, max {max}")
            }
            HfError::Precondition { what } => write!(f, "precondition violated: {what}"),
            HfError::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
        }
    }
}

/// Parses the literal form: sets in braces, elements comma-separated,
/// whitespace free-form: `{ {}, {{}} }`.
pub fn parse_hf_literal(src: &str) -> Result<HfSet, HfError> {
    let bytes = src.as_bytes();
    let mut pos = 0usize;
    let set = parse_set(bytes, &mut pos)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(HfError::Parse { pos, msg: String::from("trailing input") });
    }
    Ok(set)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_set(bytes: &[u8], pos: &mut usize) -> Result<HfSet, HfError> {
    skip_ws(bytes, pos);
    if bytes.get(*pos) != Some(&b'{') {
        return Err(HfError::Parse { pos: *pos, msg: String::from("expected `{`") });
    }
    *pos += 1;
    let mut elems = Vec::new();
    skip_ws(bytes, pos);
    if bytes.get(*pos) == Some(&b'}') {
        *pos += 1;
        return Ok(HfSet::empty());
    }
    loop {
        elems.push(parse_set(bytes, pos)?);
        skip_ws(bytes, pos);
        match bytes.get(*pos) {
            Some(b',') => *pos += 1,
            Some(b'}') => {
                *pos += 1;
                return Ok(HfSet::from_vec(elems));
            }
            _ => {
                return Err(HfError::Parse { pos: *pos, msg: String::from("expected `,` or `}`") })
            }
        }
    }
}

/// The cumulative stage: all sets of rank < k, sorted.
pub fn v_stage(k: u32, ceilings: &Ceilings) -> Result<Vec<HfSet>, HfError> {
    let mut stage: Vec<HfSet> = Vec::new();
    for _ in 0..k {
        if stage.len() >= 64 || (1u64 << stage.len()) > ceilings.subset_search {
            return Err(HfError::Ceiling {
                what: "stage enumeration",
                needed: 1u64.checked_shl(stage.len() as u32).unwrap_or(u64::MAX),
                max: ceilings.subset_search,
            });
        }
        let mut next = Vec::with_capacity(1 << stage.len());
        for mask in 0u64..1 << stage.len() {
            let elems: Vec<HfSet> = stage
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, s)| s.clone())
                .collect();
            next.push(HfSet::from_vec(elems));
        }
        next.sort();
        stage = next;
    }
    Ok(stage)
}

/// A finite relation R ⊆ A × B with its ambient sets recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvRelation {
    a: HfSet,
    b: HfSet,
    /// Sorted, deduplicated pairs.
    pairs: Vec<(HfSet, HfSet)>,
}

impl MvRelation {
    pub fn new(a: HfSet, b: HfSet, mut pairs: Vec<(HfSet, HfSet)>) -> Result<MvRelation, HfError> {
        pairs.sort();
        pairs.dedup();
        for (x, y) in &pairs {
            if !a.contains(x) || !b.contains(y) {
                return Err(HfError::Precondition {
                    what: alloc::format!("pair <{x},{y}> outside {a} x {b}"),
                });
            }
        }
        Ok(MvRelation { a, b, pairs })
    }

    pub fn domain_set(&self) -> &HfSet {
        &self.a
    }

    pub fn codomain_set(&self) -> &HfSet {
        &self.b
    }

    pub fn pairs(&self) -> &[(HfSet, HfSet)] {
        &self.pairs
    }

    pub fn contains(&self, x: &HfSet, y: &HfSet) -> bool {
        self.pairs.iter().any(|(px, py)| px == x && py == y)
    }

    /// R: A ⇉ B, i.e. dom R = A.
    pub fn is_mvf(&self) -> bool {
        self.a.elems().iter().all(|x| self.pairs.iter().any(|(px, _)| px == x))
    }

    /// R: A ⇄ B, i.e. R: A ⇉ B and every y ∈ B is hit.
    pub fn is_mvf_both(&self) -> bool {
        self.is_mvf()
            && self.b.elems().iter().all(|y| self.pairs.iter().any(|(_, py)| py == y))
    }

    /// The relation as a set of Kuratowski pairs.
    pub fn as_set(&self) -> HfSet {
        HfSet::from_vec(
            self.pairs.iter().map(|(x, y)| HfSet::kuratowski(x.clone(), y.clone())).collect(),
        )
    }

    /// 𝒜(R) = { ⟨x, ⟨x,y⟩⟩ | ⟨x,y⟩ ∈ R }, from A into A × B.
    pub fn adjust(&self) -> MvRelation {
        let pairs = self
            .pairs
            .iter()
            .map(|(x, y)| (x.clone(), HfSet::kuratowski(x.clone(), y.clone())))
            .collect();
        MvRelation { a: self.a.clone(), b: self.a.product(&self.b), pairs }
    }

    /// Does every x ∈ dom have a pair landing in `target`?
    pub fn into_all(&self, target: &HfSet) -> bool {
        self.a
            .elems()
            .iter()
            .all(|x| self.pairs.iter().any(|(px, py)| px == x && target.contains(py)))
    }

    /// Is every element of `target` hit by some pair?
    pub fn onto_all(&self, target: &HfSet) -> bool {
        target.elems().iter().all(|y| self.pairs.iter().any(|(_, py)| py == y))
    }
}

/// All R: a ⇉ b, enumerated as one nonempty row per x ∈ a, ascending by
/// row-mask odometer. Count is (2^|b| - 1)^|a|.
pub fn mv_enumerate(a: &HfSet, b: &HfSet, ceilings: &Ceilings) -> Result<Vec<MvRelation>, HfError> {
    let bits = a.len() * b.len();
    if bits > ceilings.mv_bits {
        return Err(HfError::Ceiling {
            what: "mv enumeration bits",
            needed: bits as u64,
            max: ceilings.mv_bits as u64,
        });
    }
    if a.is_empty() {
        return Ok(vec![MvRelation::new(a.clone(), b.clone(), Vec::new()).unwrap()]);
    }
    if b.is_empty() {
        return Ok(Vec::new());
    }
    let row_choices = (1u64 << b.len()) - 1;
    let mut count = 1u64;
    for _ in 0..a.len() {
        count = count.saturating_mul(row_choices);
    }
    if count > ceilings.subset_search {
        return Err(HfError::Ceiling {
            what: "mv enumeration count",
            needed: count,
            max: ceilings.subset_search,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut rows = vec![1u64; a.len()];
    loop {
        let mut pairs = Vec::new();
        for (i, x) in a.elems().iter().enumerate() {
            for (j, y) in b.elems().iter().enumerate() {
                if rows[i] >> j & 1 == 1 {
                    pairs.push((x.clone(), y.clone()));
                }
            }
        }
        out.push(MvRelation::new(a.clone(), b.clone(), pairs).unwrap());
        // Odometer, least significant row first.
        let mut i = 0;
        loop {
            if i == rows.len() {
                return Ok(out);
            }
            rows[i] += 1;
            if rows[i] <= row_choices {
                break;
            }
            rows[i] = 1;
            i += 1;
        }
    }
}

/// All full subsets of mv(a, b): sets c of relations such that every
/// R: a ⇉ b has some s ∈ c with s ⊆ R. With `minimal`, only those of
/// minimum cardinality.
pub fn full_subsets(
    a: &HfSet,
    b: &HfSet,
    minimal: bool,
    ceilings: &Ceilings,
) -> Result<Vec<Vec<MvRelation>>, HfError> {
    let mv = mv_enumerate(a, b, ceilings)?;
    if mv.len() >= 64 || (1u64 << mv.len()) > ceilings.subset_search {
        return Err(HfError::Ceiling {
            what: "full subset search",
            needed: 1u64.checked_shl(mv.len() as u32).unwrap_or(u64::MAX),
            max: ceilings.subset_search,
        });
    }
    let subset = |small: &MvRelation, big: &MvRelation| {
        small.pairs().iter().all(|p| big.pairs().contains(p))
    };
    let mut out: Vec<Vec<MvRelation>> = Vec::new();
    for mask in 0u64..1 << mv.len() {
        let c: Vec<&MvRelation> =
            mv.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, r)| r).collect();
        let full = mv.iter().all(|r| c.iter().any(|s| subset(s, r)));
        if full {
            out.push(c.into_iter().cloned().collect());
        }
    }
    if minimal {
        let best = out.iter().map(|c| c.len()).min().unwrap_or(0);
        out.retain(|c| c.len() == best);
    }
    Ok(out)
}

/// Verdict of a regularity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularVerdict {
    Regular,
    NotTransitive { witness: HfSet },
    /// Some R: a ⇉ A admits no b ∈ A with R: a ⇄ b.
    NoBound { a: HfSet, r: Vec<(HfSet, HfSet)> },
    /// Could not finish within the |a × A| ceiling; no witness found first.
    Ceiling { a: HfSet, bits: usize },
}

impl RegularVerdict {
    pub fn is_regular(&self) -> bool {
        matches!(self, RegularVerdict::Regular)
    }
}

/// Decides regularity of A: transitivity plus, for every a ∈ A and every
/// R: a ⇉ A, a bound b ∈ A with R: a ⇄ b. Member slots are visited smallest
/// first and the search exits on the first witness, so a negative verdict is
/// sound even when a larger slot would have exceeded the ceiling.
pub fn is_regular(a_set: &HfSet, ceilings: &Ceilings) -> RegularVerdict {
    if let Some(w) = a_set
        .elems()
        .iter()
        .find(|e| e.elems().iter().any(|x| !a_set.contains(x)))
    {
        return RegularVerdict::NotTransitive { witness: w.clone() };
    }
    let members = a_set.elems();
    let n = members.len();
    // Transitivity makes every member a subset of A; precompute masks.
    let mask_of = |s: &HfSet| -> u64 {
        let mut m = 0u64;
        for (i, e) in members.iter().enumerate() {
            if s.contains(e) {
                m |= 1 << i;
            }
        }
        m
    };
    let member_masks: Vec<u64> = members.iter().map(mask_of).collect();
    let mut slots: Vec<usize> = (0..n).collect();
    slots.sort_by_key(|&i| (members[i].len(), i));
    let mut ceiling_hit: Option<(HfSet, usize)> = None;
    for slot in slots {
        let a = &members[slot];
        let bits = a.len() * n;
        if bits > ceilings.mv_bits {
            if ceiling_hit.is_none() {
                ceiling_hit = Some((a.clone(), bits));
            }
            continue;
        }
        if a.is_empty() {
            // Only R = ∅; it needs b = ∅ in A, which transitivity gives
            // whenever A is nonempty (and a ∈ A means it is).
            let empty = HfSet::empty();
            let r = MvRelation::new(empty.clone(), a_set.clone(), Vec::new()).unwrap();
            let found = members.iter().any(|b| r.into_all(b) && r.onto_all(b));
            if !found {
                return RegularVerdict::NoBound { a: empty, r: Vec::new() };
            }
            continue;
        }
        let a_items: Vec<&HfSet> = a.elems().iter().collect();
        let row_choices = (1u64 << n) - 1;
        let mut rows = vec![1u64; a_items.len()];
        'relations: loop {
            // Does some b ∈ A bound this R?
            let mut bounded = false;
            'bounds: for bm in &member_masks {
                let mut hit = 0u64;
                for row in &rows {
                    let overlap = row & bm;
                    if overlap == 0 {
                        continue 'bounds;
                    }
                    hit |= overlap;
                }
                if hit & bm == *bm {
                    bounded = true;
                    break;
                }
            }
            if !bounded {
                let mut pairs = Vec::new();
                for (i, x) in a_items.iter().enumerate() {
                    for (j, y) in members.iter().enumerate() {
                        if rows[i] >> j & 1 == 1 {
                            pairs.push(((*x).clone(), y.clone()));
                        }
                    }
                }
                return RegularVerdict::NoBound { a: a.clone(), r: pairs };
            }
            let mut i = 0;
            loop {
                if i == rows.len() {
                    break 'relations;
                }
                rows[i] += 1;
                if rows[i] <= row_choices {
                    break;
                }
                rows[i] = 1;
                i += 1;
            }
        }
    }
    match ceiling_hit {
        Some((a, bits)) => RegularVerdict::Ceiling { a, bits },
        None => RegularVerdict::Regular,
    }
}

/// Closure bookkeeping on top of [`is_regular`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BcstReport {
    pub regular: RegularVerdict,
    pub has_empty: bool,
    pub union_closed: bool,
    pub pairing_closed: bool,
    pub inter_closed: bool,
}

impl BcstReport {
    /// Regular and ⋃-closed.
    pub fn union_regular(&self) -> bool {
        self.regular.is_regular() && self.union_closed
    }

    /// Regular plus all four closure conditions.
    pub fn bcst_regular(&self) -> bool {
        self.regular.is_regular()
            && self.has_empty
            && self.union_closed
            && self.pairing_closed
            && self.inter_closed
    }
}

/// [`is_regular`] plus the four closure conditions, as one boolean.
pub fn is_bcst_regular(a_set: &HfSet, ceilings: &Ceilings) -> bool {
    bcst_report(a_set, ceilings).bcst_regular()
}

pub fn bcst_report(a_set: &HfSet, ceilings: &Ceilings) -> BcstReport {
    let members = a_set.elems();
    BcstReport {
        regular: is_regular(a_set, ceilings),
        has_empty: a_set.contains(&HfSet::empty()),
        union_closed: members.iter().all(|x| a_set.contains(&x.union_all())),
        pairing_closed: members.iter().all(|x| {
            members.iter().all(|y| a_set.contains(&HfSet::pair_set(x.clone(), y.clone())))
        }),
        inter_closed: members
            .iter()
            .all(|x| members.iter().all(|y| a_set.contains(&x.inter2(y)))),
    }
}

/// Outcome of the pairing-closure check: regular sets containing the
/// ordinal 2 must contain all Kuratowski pairs of their members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairingClosure {
    /// Not regular or 2 ∉ A, so the statement says nothing.
    Vacuous,
    Satisfied,
    Violated { x: HfSet, y: HfSet },
}

pub fn check_pairing_closure(a_set: &HfSet, ceilings: &Ceilings) -> PairingClosure {
    if !a_set.contains(&HfSet::ordinal(2)) || !is_regular(a_set, ceilings).is_regular() {
        return PairingClosure::Vacuous;
    }
    for x in a_set.elems() {
        for y in a_set.elems() {
            if !a_set.contains(&HfSet::kuratowski(x.clone(), y.clone())) {
                return PairingClosure::Violated { x: x.clone(), y: y.clone() };
            }
        }
    }
    PairingClosure::Satisfied
}

/// One strong-collection step through the adjustment: given a ∈ A and
/// R: a ⇉ A, looks for b ∈ A with 𝒜(R): a ⇄ b; such a b is a set of pairs
/// with b ⊆ R and b: a ⇉ A. Returns the first bound in canonical order, or
/// None when this instance witnesses that A is not regular.
pub fn set_mv_refine(
    a_set: &HfSet,
    a: &HfSet,
    r: &MvRelation,
) -> Result<Option<HfSet>, HfError> {
    if !a_set.contains(a) {
        return Err(HfError::Precondition { what: alloc::format!("{a} not a member of {a_set}") });
    }
    if r.domain_set() != a || !r.is_mvf() {
        return Err(HfError::Precondition { what: String::from("R must be a ⇉ A") });
    }
    if r.codomain_set() != a_set {
        return Err(HfError::Precondition { what: String::from("R must target A") });
    }
    let adj = r.adjust();
    for b in a_set.elems() {
        if adj.into_all(b) && adj.onto_all(b) {
            return Ok(Some(b.clone()));
        }
    }
    Ok(None)
}

/// One census row. `set` is always transitive by construction.
#[derive(Clone, Debug)]
pub struct CensusRow {
    pub set: HfSet,
    pub report: BcstReport,
    pub pairing: PairingClosure,
}

/// Sweeps every transitive subset of the stage of rank `max_rank` with at
/// most `max_size` members, in canonical order.
pub fn census(max_rank: u32, max_size: usize, ceilings: &Ceilings) -> Result<Vec<CensusRow>, HfError> {
    let stage = v_stage(max_rank, ceilings)?;
    if stage.len() >= 64 || (1u64 << stage.len()) > ceilings.subset_search {
        return Err(HfError::Ceiling {
            what: "census candidate enumeration",
            needed: 1u64.checked_shl(stage.len() as u32).unwrap_or(u64::MAX),
            max: ceilings.subset_search,
        });
    }
    // Membership masks let transitivity be a mask inclusion.
    let mask_of = |s: &HfSet| -> u64 {
        let mut m = 0u64;
        for (i, e) in stage.iter().enumerate() {
            if s.contains(e) {
                m |= 1 << i;
            }
        }
        m
    };
    let elem_masks: Vec<u64> = stage.iter().map(mask_of).collect();
    let mut candidates: Vec<HfSet> = Vec::new();
    for mask in 0u64..1 << stage.len() {
        if (mask.count_ones() as usize) > max_size {
            continue;
        }
        let transitive =
            (0..stage.len()).all(|i| mask >> i & 1 == 0 || elem_masks[i] & mask == elem_masks[i]);
        if !transitive {
            continue;
        }
        let elems: Vec<HfSet> = stage
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, s)| s.clone())
            .collect();
        candidates.push(HfSet::from_vec(elems));
    }
    candidates.sort();
    Ok(candidates
        .into_iter()
        .map(|set| {
            let report = bcst_report(&set, ceilings);
            let pairing = check_pairing_closure(&set, ceilings);
            CensusRow { set, report, pairing }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(n: usize) -> HfSet {
        HfSet::ordinal(n)
    }

    #[test]
    fn canonical_form_dedups_and_sorts() {
        let a = HfSet::from_vec(vec![o(1), o(0), o(1)]);
        let b = HfSet::from_vec(vec![o(0), o(1)]);
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "{{},{{}}}");
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn literal_round_trip() {
        for s in [o(0), o(3), HfSet::kuratowski(o(1), o(2)), HfSet::singleton(o(2))] {
            assert_eq!(parse_hf_literal(&s.to_string()).unwrap(), s);
        }
        let spaced = parse_hf_literal(" { {} , { {} } } ").unwrap();
        assert_eq!(spaced, o(2));
        assert!(parse_hf_literal("{{}").is_err());
        assert!(parse_hf_literal("{} x").is_err());
    }

    #[test]
    fn kuratowski_decode() {
        let p = HfSet::kuratowski(o(1), o(2));
        assert_eq!(p.decode_pair(), Some((o(1), o(2))));
        let q = HfSet::kuratowski(o(1), o(1));
        assert_eq!(q, HfSet::singleton(HfSet::singleton(o(1))));
        assert_eq!(q.decode_pair(), Some((o(1), o(1))));
        assert_eq!(o(2).decode_pair(), None);
    }

    #[test]
    fn transitive_closure_of_ordinals() {
        assert!(o(4).is_transitive());
        assert_eq!(o(4).transitive_closure(), HfSet::from_vec(vec![o(0), o(1), o(2), o(3)]));
        assert!(!HfSet::singleton(o(1)).is_transitive());
    }

    #[test]
    fn stage_sizes() {
        let c = Ceilings::default();
        assert_eq!(v_stage(0, &c).unwrap().len(), 0);
        assert_eq!(v_stage(1, &c).unwrap().len(), 1);
        assert_eq!(v_stage(2, &c).unwrap().len(), 2);
        assert_eq!(v_stage(3, &c).unwrap().len(), 4);
        assert_eq!(v_stage(4, &c).unwrap().len(), 16);
        assert!(matches!(v_stage(6, &c), Err(HfError::Ceiling { .. })));
    }

    #[test]
    fn mv_enumerate_counts() {
        let c = Ceilings::default();
        // |a| = 1, |b| = 2: the three nonempty rows.
        let rels = mv_enumerate(&HfSet::singleton(o(0)), &o(2), &c).unwrap();
        assert_eq!(rels.len(), 3);
        assert!(rels.iter().all(|r| r.is_mvf()));
        let rels = mv_enumerate(&o(2), &o(2), &c).unwrap();
        assert_eq!(rels.len(), 9);
        let too_big = mv_enumerate(&o(5), &HfSet::from_vec((0..4).map(o).collect()), &c);
        assert!(matches!(too_big, Err(HfError::Ceiling { .. })));
    }

    #[test]
    fn minimal_full_subset_is_the_two_singletons() {
        let c = Ceilings::default();
        let a = HfSet::singleton(o(0));
        let b = o(2);
        let minimal = full_subsets(&a, &b, true, &c).unwrap();
        assert_eq!(minimal.len(), 1);
        let only = &minimal[0];
        assert_eq!(only.len(), 2);
        assert!(only.iter().all(|r| r.pairs().len() == 1));
    }

    #[test]
    fn full_subsets_contain_all_subset_minimal_relations() {
        let c = Ceilings::default();
        for (a, b) in [(o(2), o(2)), (HfSet::singleton(o(1)), o(2))] {
            let mv = mv_enumerate(&a, &b, &c).unwrap();
            let minimal_rels: Vec<&MvRelation> = mv
                .iter()
                .filter(|r| {
                    !mv.iter().any(|s| {
                        s != *r && s.pairs().iter().all(|p| r.pairs().contains(p))
                    })
                })
                .collect();
            for full in full_subsets(&a, &b, false, &c).unwrap() {
                for m in &minimal_rels {
                    assert!(full.contains(m));
                }
            }
        }
    }

    #[test]
    fn adjust_shape() {
        let a = HfSet::singleton(o(0));
        let r = MvRelation::new(a.clone(), o(2), vec![(o(0), o(1))]).unwrap();
        let adj = r.adjust();
        assert_eq!(adj.pairs().len(), 1);
        let (x, s) = &adj.pairs()[0];
        assert_eq!(*x, o(0));
        assert_eq!(*s, HfSet::kuratowski(o(0), o(1)));
    }

    #[test]
    fn singleton_empty_is_regular() {
        let a = HfSet::singleton(o(0));
        assert_eq!(is_regular(&a, &Ceilings::default()), RegularVerdict::Regular);
        assert_eq!(is_regular(&o(0), &Ceilings::default()), RegularVerdict::Regular);
    }

    #[test]
    fn two_is_not_regular_with_the_expected_witness() {
        let verdict = is_regular(&o(2), &Ceilings::default());
        match verdict {
            RegularVerdict::NoBound { a, r } => {
                assert_eq!(a, o(1));
                assert_eq!(r, vec![(o(0), o(1))]);
            }
            v => panic!("expected a witness, got {v:?}"),
        }
    }

    #[test]
    fn non_transitive_is_flagged() {
        let a = HfSet::singleton(o(1));
        assert!(matches!(
            is_regular(&a, &Ceilings::default()),
            RegularVerdict::NotTransitive { .. }
        ));
    }

    #[test]
    fn set_mv_refine_on_singleton() {
        let a_set = HfSet::singleton(o(0));
        let a = o(0);
        let r = MvRelation::new(a.clone(), a_set.clone(), Vec::new()).unwrap();
        let b = set_mv_refine(&a_set, &a, &r).unwrap();
        assert_eq!(b, Some(o(0)));
        let bad = set_mv_refine(&a_set, &o(1), &r.clone());
        assert!(bad.is_err());
    }

    #[test]
    fn bcst_flags_on_small_sets() {
        let c = Ceilings::default();
        let report = bcst_report(&HfSet::singleton(o(0)), &c);
        assert!(report.regular.is_regular());
        assert!(report.has_empty && report.union_closed && report.inter_closed);
        assert!(!report.pairing_closed, "{{∅,∅}} = 1 is not a member");
        assert!(!report.bcst_regular());
    }

    #[test]
    fn pairing_closure_is_vacuous_without_two() {
        let c = Ceilings::default();
        assert_eq!(check_pairing_closure(&HfSet::singleton(o(0)), &c), PairingClosure::Vacuous);
        assert_eq!(check_pairing_closure(&o(2), &c), PairingClosure::Vacuous);
    }

    #[test]
    fn census_smoke() {
        let rows = census(3, 8, &Ceilings::default()).unwrap();
        assert!(rows.iter().all(|r| r.set.is_transitive()));
        let singleton = rows.iter().find(|r| r.set == HfSet::singleton(o(0))).unwrap();
        assert!(singleton.report.regular.is_regular());
        let two = rows.iter().find(|r| r.set == o(2)).unwrap();
        assert!(!two.report.regular.is_regular());
    }
}
