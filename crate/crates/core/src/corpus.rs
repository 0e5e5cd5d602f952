//! Bundled example topologies.
//!
//! A fixed corpus of small formal topologies used by the law suites and the
//! CLI: chains, antichains, branching posets, and three non-downset covers
//! (two dense covers and a subspace-induced one). Carriers range over 1 to 6
//! atoms, the default ceiling. Every entry validates clean; the frame sizes
//! are frozen in the tests below.

use alloc::vec::Vec;

use crate::topology::{numbered_atoms, AtomSet, CoverSpec, FormalTopology};
use crate::Ceilings;

/// One corpus topology: a stable name, a one-line summary, a constructor.
pub struct CorpusEntry {
    pub name: &'static str,
    pub summary: &'static str,
    build: fn() -> FormalTopology,
}

impl CorpusEntry {
    pub fn topology(&self) -> FormalTopology {
        (self.build)()
    }
}

/// The corpus, in fixed order. Names are unique and CLI-addressable.
pub const STANDARD: &[CorpusEntry] = &[
    CorpusEntry {
        name: "point",
        summary: "one atom, downset cover; 2-element frame",
        build: point,
    },
    CorpusEntry {
        name: "dense-point",
        summary: "one atom covered by everything, even {}; 1-element frame with bottom = top",
        build: dense_point,
    },
    CorpusEntry {
        name: "chain2",
        summary: "2-chain, downset cover; 3-element chain frame",
        build: chain2,
    },
    CorpusEntry {
        name: "chain3",
        summary: "3-chain, downset cover; 4-element chain frame",
        build: chain3,
    },
    CorpusEntry {
        name: "chain6",
        summary: "6-chain, downset cover; 7-element chain frame",
        build: chain6,
    },
    CorpusEntry {
        name: "antichain2",
        summary: "two incomparable atoms; 4-element Boolean frame",
        build: antichain2,
    },
    CorpusEntry {
        name: "antichain3",
        summary: "three incomparable atoms; 8-element Boolean frame",
        build: antichain3,
    },
    CorpusEntry {
        name: "diamond",
        summary: "bottom, two middles, top; 6-element frame",
        build: diamond,
    },
    CorpusEntry {
        name: "vee",
        summary: "two incomparable atoms under a common top; 5-element frame",
        build: vee,
    },
    CorpusEntry {
        name: "two-chains",
        summary: "disjoint 3-chain and 2-chain; 12-element product frame",
        build: two_chains,
    },
    CorpusEntry {
        name: "dense-chain3",
        summary: "3-chain where every nonempty subset covers everything; 2-element frame",
        build: dense_chain3,
    },
    CorpusEntry {
        name: "wedge",
        summary: "two atoms under a top, cover induced by the subspace of minimal atoms",
        build: wedge,
    },
];

/// Looks a corpus topology up by its stable name.
pub fn by_name(name: &str) -> Option<FormalTopology> {
    STANDARD.iter().find(|e| e.name == name).map(|e| e.topology())
}

fn downset(n: usize, le: &[(usize, usize)]) -> FormalTopology {
    FormalTopology::new(numbered_atoms(n), le, CoverSpec::Downset, &Ceilings::default())
        .expect("corpus carriers are within the default ceiling")
}

/// All pairs a < b of a linear order on 0..n; `new` wants the full relation.
fn chain_le(n: usize) -> Vec<(usize, usize)> {
    let mut le = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            le.push((a, b));
        }
    }
    le
}

fn point() -> FormalTopology {
    downset(1, &[])
}

fn chain2() -> FormalTopology {
    downset(2, &chain_le(2))
}

fn chain3() -> FormalTopology {
    downset(3, &chain_le(3))
}

fn chain6() -> FormalTopology {
    downset(6, &chain_le(6))
}

fn antichain2() -> FormalTopology {
    downset(2, &[])
}

fn antichain3() -> FormalTopology {
    downset(3, &[])
}

fn diamond() -> FormalTopology {
    downset(4, &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)])
}

fn vee() -> FormalTopology {
    downset(3, &[(0, 2), (1, 2)])
}

fn two_chains() -> FormalTopology {
    let mut le = chain_le(3);
    le.push((3, 4));
    downset(5, &le)
}

fn dense_point() -> FormalTopology {
    FormalTopology::from_fn(numbered_atoms(1), &[], |_, _| true, &Ceilings::default())
        .expect("one atom is within the ceiling")
}

/// a ◁ p iff p is nonempty. Axiom 4 needs every pair of nonempty downsets to
/// meet, which the chain's least element guarantees.
fn dense_chain3() -> FormalTopology {
    FormalTopology::from_fn(
        numbered_atoms(3),
        &chain_le(3),
        |_, p| !p.is_empty(),
        &Ceilings::default(),
    )
    .expect("three atoms are within the ceiling")
}

/// Atoms 0, 1 below a top 2, with a ◁ p iff ↓{a} ∩ {0,1} ⊆ ↓p: the cover
/// induced by restricting to the subspace {0,1}. In particular 2 ◁ {0 1},
/// so {0 1} is a lower set that is not stable.
fn wedge() -> FormalTopology {
    FormalTopology::from_fn(
        numbered_atoms(3),
        &[(0, 2), (1, 2)],
        |a, p| {
            let base = AtomSet(0b011);
            let down = if p.contains(2) { p.union(base) } else { p };
            let trace = if a == 2 { base } else { AtomSet::singleton(a) };
            trace.is_subset(down)
        },
        &Ceilings::default(),
    )
    .expect("three atoms are within the ceiling")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;

    #[test]
    fn names_are_unique() {
        for (i, e) in STANDARD.iter().enumerate() {
            assert!(
                STANDARD[..i].iter().all(|o| o.name != e.name),
                "duplicate corpus name {}",
                e.name
            );
        }
    }

    #[test]
    fn corpus_is_broad_enough() {
        assert!(STANDARD.len() >= 8);
        let carriers: Vec<usize> = STANDARD.iter().map(|e| e.topology().len()).collect();
        assert_eq!(carriers.iter().min(), Some(&1));
        assert_eq!(carriers.iter().max(), Some(&6));
    }

    #[test]
    fn every_entry_validates_clean() {
        for e in STANDARD {
            let t = e.topology();
            let report = t.validate();
            assert!(report.is_valid(), "{}: {:?}", e.name, t.describe(&report));
        }
    }

    #[test]
    fn frame_sizes_are_frozen() {
        let expected = [
            ("point", 2),
            ("dense-point", 1),
            ("chain2", 3),
            ("chain3", 4),
            ("chain6", 7),
            ("antichain2", 4),
            ("antichain3", 8),
            ("diamond", 6),
            ("vee", 5),
            ("two-chains", 12),
            ("dense-chain3", 2),
            ("wedge", 4),
        ];
        assert_eq!(STANDARD.len(), expected.len());
        for (e, (name, size)) in STANDARD.iter().zip(expected) {
            assert_eq!(e.name, name);
            let f = Frame::enumerate(&e.topology()).unwrap();
            assert_eq!(f.len(), size, "frame size of {}", e.name);
        }
    }

    #[test]
    fn boolean_frames_are_frozen() {
        let boolean = ["point", "dense-point", "antichain2", "antichain3", "dense-chain3", "wedge"];
        for e in STANDARD {
            let f = Frame::enumerate(&e.topology()).unwrap();
            assert_eq!(f.is_boolean(), boolean.contains(&e.name), "{}", e.name);
        }
    }

    #[test]
    fn corpus_includes_non_downset_covers() {
        let mut non_downset = Vec::new();
        for e in STANDARD {
            let t = e.topology();
            let is_downset = (0..t.len()).all(|a| {
                AtomSet::power(t.len()).all(|p| t.covers(a, p) == t.down_closure(p).contains(a))
            });
            if !is_downset {
                non_downset.push(e.name);
            }
        }
        assert_eq!(non_downset, ["dense-point", "dense-chain3", "wedge"]);
    }

    #[test]
    fn lookup_by_name() {
        assert!(by_name("chain2").is_some());
        assert!(by_name("no-such-topology").is_none());
    }
}
