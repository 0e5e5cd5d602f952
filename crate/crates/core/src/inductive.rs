//! Finite inductive definitions: the one-step operator Γ_Φ, its least
//! fixed point, and the linear iteration stages J^n = Γ_Φ(⋃_{m<n} J^m).
//!
//! The base universe is 0..n and subsets are `u64` bitmasks (bit i =
//! element i), which keeps exhaustive sweeps over all rule sets cheap.
//! Γ_Φ(C) = {a | ∃X ⊆ C, ⟨X,a⟩ ∈ Φ} is monotone, so iteration from ∅
//! ascends and stabilizes within |U| steps at the least Φ-closed set.

use alloc::vec::Vec;
use core::fmt;

/// One rule ⟨X, a⟩: if all of X holds, conclude a.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rule {
    /// Premise set X as a bitmask.
    pub premises: u64,
    /// Concluded element.
    pub conclusion: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InductiveError {
    UniverseTooLarge { size: usize, max: usize },
    OutOfRange { element: usize, universe: usize },
}

impl fmt::Display for InductiveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InductiveError::UniverseTooLarge { size, max } => {
                write!(f, "universe of {size} elements exceeds the maximum {max}")
            }
            InductiveError::OutOfRange { element, universe } => {
                write!(f, "element {element} outside universe 0..{universe}")
            }
        }
    }
}

/// Largest supported universe; subsets must fit a u64.
pub const MAX_UNIVERSE: usize = 32;

/// A finite rule set Φ over the universe 0..n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductiveDefinition {
    universe: usize,
    /// Sorted, deduplicated.
    rules: Vec<Rule>,
}

impl InductiveDefinition {
    pub fn new(universe: usize, rules: &[(&[usize], usize)]) -> Result<Self, InductiveError> {
        if universe > MAX_UNIVERSE {
            return Err(InductiveError::UniverseTooLarge { size: universe, max: MAX_UNIVERSE });
        }
        let mut compiled = Vec::with_capacity(rules.len());
        for (premises, conclusion) in rules {
            let mut mask = 0u64;
            for &p in *premises {
                if p >= universe {
                    return Err(InductiveError::OutOfRange { element: p, universe });
                }
                mask |= 1 << p;
            }
            if *conclusion >= universe {
                return Err(InductiveError::OutOfRange { element: *conclusion, universe });
            }
            compiled.push(Rule { premises: mask, conclusion: *conclusion });
        }
        compiled.sort();
        compiled.dedup();
        Ok(InductiveDefinition { universe, rules: compiled })
    }

    /// Number of distinct possible rules, 2^n · n; every Φ is a mask over
    /// this many slots.
    pub fn rule_slots(universe: usize) -> Option<u32> {
        let slots = (1u64.checked_shl(universe as u32)?).checked_mul(universe as u64)?;
        (slots <= 64).then_some(slots as u32)
    }

    /// The Φ selected by a bitmask over the canonical rule enumeration
    /// (premise-major: slot p·n + a is the rule ⟨p, a⟩). Supports the
    /// exhaustive all-rule-sets sweeps at |U| ≤ 3.
    pub fn from_rule_mask(universe: usize, mask: u64) -> Result<Self, InductiveError> {
        let slots = InductiveDefinition::rule_slots(universe)
            .ok_or(InductiveError::UniverseTooLarge { size: universe, max: 3 })?;
        let mut rules = Vec::with_capacity(mask.count_ones() as usize);
        for slot in 0..slots as u64 {
            if mask >> slot & 1 == 1 {
                rules.push(Rule {
                    premises: slot / universe as u64,
                    conclusion: (slot % universe as u64) as usize,
                });
            }
        }
        Ok(InductiveDefinition { universe, rules })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Γ_Φ(C) = {a | ∃X ⊆ C, ⟨X,a⟩ ∈ Φ}.
    pub fn gamma(&self, c: u64) -> u64 {
        let mut out = 0u64;
        for r in &self.rules {
            if r.premises & c == r.premises {
                out |= 1 << r.conclusion;
            }
        }
        out
    }

    /// Is Γ_Φ(C) ⊆ C?
    pub fn is_closed(&self, c: u64) -> bool {
        self.gamma(c) & !c == 0
    }

    /// Kleene iteration from ∅; the ascending chain fixes within |U| steps.
    pub fn least_fixed_point(&self) -> u64 {
        let mut c = 0u64;
        loop {
            let next = self.gamma(c);
            if next == c {
                return c;
            }
            c = next;
        }
    }

    /// J^0 .. J^stages with J^n = Γ_Φ(⋃_{m<n} J^m).
    pub fn iteration_class(&self, stages: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(stages + 1);
        let mut cum = 0u64;
        for _ in 0..=stages {
            let next = self.gamma(cum);
            out.push(next);
            cum |= next;
        }
        out
    }

    /// Least n with J^n = J^{n+1} (= the index where the chain has reached
    /// the fixed point); at most |U|.
    pub fn stabilization_index(&self) -> usize {
        let stages = self.iteration_class(self.universe + 1);
        stages
            .windows(2)
            .position(|w| w[0] == w[1])
            .unwrap_or(self.universe + 1)
    }

    /// Exhaustive minimality check: a proper Φ-closed subset of the least
    /// fixed point, if one exists (it never should).
    pub fn minimality_counterexample(&self) -> Option<u64> {
        let lfp = self.least_fixed_point();
        // Proper submasks in descending order, then ∅.
        let mut s = lfp;
        while s != 0 {
            s = (s - 1) & lfp;
            if self.is_closed(s) {
                return Some(s);
            }
        }
        None
    }
}

/// Bitmask for an element list.
pub fn subset_of(universe: usize, elements: &[usize]) -> Result<u64, InductiveError> {
    let mut mask = 0u64;
    for &e in elements {
        if e >= universe {
            return Err(InductiveError::OutOfRange { element: e, universe });
        }
        mask |= 1 << e;
    }
    Ok(mask)
}

/// Ascending element list of a bitmask.
pub fn subset_elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}
