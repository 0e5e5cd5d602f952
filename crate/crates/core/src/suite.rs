//! Law suites over the whole crate: each suite replays one body of laws
//! against the bundled corpus and tallies failures instead of panicking, so
//! a driver can report every broken law in one pass.
//!
//! Everything here is deterministic for a fixed [`SuiteConfig`]: corpora are
//! generated in fixed order, randomized sweeps derive from the seed, and
//! failure messages are capped, which keeps two runs of the same build
//! byte-comparable after serialization.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::corpus;
use crate::eval::{Environment, Evaluator};
use crate::formula::{parse_open, Formula, Term};
use crate::frame::{Frame, FrameElement};
use crate::hf::{self, HfSet, MvRelation, PairingClosure, RegularVerdict};
use crate::inductive::{subset_elements, InductiveDefinition};
use crate::name::{Name, NameLiteral, NameUniverse};
use crate::topology::AtomSet;
use crate::Ceilings;

/// Shared knobs for one suite run.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Seed for the randomized sweeps (formula generator, random Φ).
    pub seed: u64,
    pub ceilings: Ceilings,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig { seed: 0x0f2a_6d51, ceilings: Ceilings::default() }
    }
}

/// At most this many failure messages are kept per suite.
const MAX_MESSAGES: usize = 5;

/// Failure accumulator handed to each suite body.
pub struct Tally {
    checks: u64,
    failures: u64,
    messages: Vec<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally { checks: 0, failures: 0, messages: Vec::new() }
    }

    /// Records one law instance. The message closure only runs on failure.
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.messages.len() < MAX_MESSAGES {
                self.messages.push(msg());
            }
        }
    }
}

/// Result of one suite: instance counts plus the first few failures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub checks: u64,
    pub failures: u64,
    pub messages: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// One registered suite.
pub struct Suite {
    pub name: &'static str,
    pub summary: &'static str,
    run: fn(&SuiteConfig, &mut Tally),
}

impl Suite {
    pub fn run(&self, cfg: &SuiteConfig) -> SuiteOutcome {
        let mut tally = Tally::new();
        (self.run)(cfg, &mut tally);
        SuiteOutcome {
            suite: self.name,
            checks: tally.checks,
            failures: tally.failures,
            messages: tally.messages,
        }
    }
}

/// All suites, sorted by name.
pub fn registry() -> &'static [Suite] {
    const REGISTRY: &[Suite] = &[
        Suite {
            name: "evaluator/absoluteness",
            summary: "relativized values against sub-universe chains",
            run: suite_absoluteness,
        },
        Suite {
            name: "evaluator/bcst-instances",
            summary: "set-axiom instances are top on every corpus frame",
            run: suite_bcst_instances,
        },
        Suite {
            name: "evaluator/boolean-lem",
            summary: "excluded middle holds under the boolean semantics",
            run: suite_boolean_lem,
        },
        Suite {
            name: "evaluator/cache-coherence",
            summary: "memoized and uncached evaluators agree",
            run: suite_cache_coherence,
        },
        Suite {
            name: "evaluator/dn-correspondence",
            summary: "negative translation matches the boolean semantics",
            run: suite_dn_correspondence,
        },
        Suite {
            name: "evaluator/equality-laws",
            summary: "name equality is a substitutive equivalence",
            run: suite_equality_laws,
        },
        Suite {
            name: "evaluator/ipc-tautologies",
            summary: "intuitionistic tautologies are top in every frame",
            run: suite_ipc_tautologies,
        },
        Suite {
            name: "formula_lang/round-trip",
            summary: "parser inverts the printer",
            run: suite_formula_round_trip,
        },
        Suite {
            name: "formula_lang/translation",
            summary: "relativization and negative translation shapes",
            run: suite_formula_translation,
        },
        Suite {
            name: "frame_core/booleanization",
            summary: "double-negation frames are boolean fixed points",
            run: suite_booleanization,
        },
        Suite {
            name: "frame_core/generators",
            summary: "every element is a join of generators",
            run: suite_generators,
        },
        Suite {
            name: "frame_core/lattice-laws",
            summary: "adjunction, identities, full distributivity",
            run: suite_lattice_laws,
        },
        Suite {
            name: "frame_core/nucleus-laws",
            summary: "closure is inflationary, idempotent, meet-preserving",
            run: suite_nucleus_laws,
        },
        Suite {
            name: "frame_core/relativized-approximation",
            summary: "family-relative closure is monotone and bounded",
            run: suite_relativized_approximation,
        },
        Suite {
            name: "frame_core/topology-axioms",
            summary: "the corpus validates and the validator sees faults",
            run: suite_topology_axioms,
        },
        Suite {
            name: "hf_lab/canonical-laws",
            summary: "hereditarily finite sets round-trip and close",
            run: suite_hf_canonical,
        },
        Suite {
            name: "hf_lab/mv-adjustment",
            summary: "adjustment equivalences for relations over small sets",
            run: suite_mv_adjustment,
        },
        Suite {
            name: "hf_lab/mv-fullness",
            summary: "full relation sets against the exhaustive oracle",
            run: suite_mv_fullness,
        },
        Suite {
            name: "hf_lab/regularity-census",
            summary: "regularity verdicts, refinement, census sweep",
            run: suite_regularity_census,
        },
        Suite {
            name: "inductive_engine/fixed-points",
            summary: "stages stabilize at the least closed set",
            run: suite_inductive_fixed_points,
        },
        Suite {
            name: "name_universe/universe-laws",
            summary: "universe enumeration, canonical names, pair names",
            run: suite_universe_laws,
        },
    ];
    REGISTRY
}

/// Runs every suite whose name contains `filter` (all of them when absent).
pub fn run_all(cfg: &SuiteConfig, filter: Option<&str>) -> Vec<SuiteOutcome> {
    registry()
        .iter()
        .filter(|s| filter.is_none_or(|f| s.name.contains(f)))
        .map(|s| s.run(cfg))
        .collect()
}

// Formula corpora. Free variables are `p q r` for propositional formulas
// (bound to single-entry names by `PropFrame`) and `a b` for set formulas.

fn var(v: &str) -> Term {
    Term::Var(v.into())
}

fn lit_empty() -> Term {
    Term::Literal(NameLiteral::Empty)
}

fn eq(a: Term, b: Term) -> Formula {
    Formula::Eq(a, b)
}

fn mem(a: Term, b: Term) -> Formula {
    Formula::Mem(a, b)
}

fn forall_in(x: &str, bound: Term, body: Formula) -> Formula {
    Formula::ForallIn(x.into(), bound, Box::new(body))
}

fn exists_in(x: &str, bound: Term, body: Formula) -> Formula {
    Formula::ExistsIn(x.into(), bound, Box::new(body))
}

fn forall(x: &str, body: Formula) -> Formula {
    Formula::Forall(x.into(), Box::new(body))
}

fn exists(x: &str, body: Formula) -> Formula {
    Formula::Exists(x.into(), Box::new(body))
}

/// A propositional atom: membership of the empty name in the variable,
/// so that binding the variable to `name{empty: v}` gives the atom value v.
pub fn prop_atom(v: &str) -> Formula {
    mem(lit_empty(), var(v))
}

/// ((p → q) → p) → p, the classical law that separates the two semantics.
pub fn peirce() -> Formula {
    let p = || prop_atom("p");
    let q = || prop_atom("q");
    Formula::imp(Formula::imp(Formula::imp(p(), q()), p()), p())
}

/// Twenty-five intuitionistic tautologies over at most three atoms.
pub fn ipc_tautologies() -> Vec<(&'static str, Formula)> {
    let p = || prop_atom("p");
    let q = || prop_atom("q");
    let r = || prop_atom("r");
    vec![
        ("identity", Formula::imp(p(), p())),
        ("weakening", Formula::imp(p(), Formula::imp(q(), p()))),
        (
            "composition",
            Formula::imp(
                Formula::imp(p(), Formula::imp(q(), r())),
                Formula::imp(Formula::imp(p(), q()), Formula::imp(p(), r())),
            ),
        ),
        ("and-elim-left", Formula::imp(Formula::and(p(), q()), p())),
        ("and-elim-right", Formula::imp(Formula::and(p(), q()), q())),
        ("and-intro", Formula::imp(p(), Formula::imp(q(), Formula::and(p(), q())))),
        ("or-intro-left", Formula::imp(p(), Formula::or(p(), q()))),
        ("or-intro-right", Formula::imp(q(), Formula::or(p(), q()))),
        (
            "or-elim",
            Formula::imp(
                Formula::imp(p(), r()),
                Formula::imp(Formula::imp(q(), r()), Formula::imp(Formula::or(p(), q()), r())),
            ),
        ),
        ("ex-falso", Formula::imp(Formula::Bot, p())),
        (
            "neg-intro",
            Formula::imp(
                Formula::imp(p(), q()),
                Formula::imp(Formula::imp(p(), Formula::not(q())), Formula::not(p())),
            ),
        ),
        ("non-contradiction", Formula::not(Formula::and(p(), Formula::not(p())))),
        ("dn-intro", Formula::imp(p(), Formula::not(Formula::not(p())))),
        (
            "triple-negation",
            Formula::iff(Formula::not(Formula::not(Formula::not(p()))), Formula::not(p())),
        ),
        (
            "contraposition",
            Formula::imp(Formula::imp(p(), q()), Formula::imp(Formula::not(q()), Formula::not(p()))),
        ),
        ("dn-lem", Formula::not(Formula::not(Formula::or(p(), Formula::not(p()))))),
        (
            "currying",
            Formula::iff(
                Formula::imp(Formula::and(p(), q()), r()),
                Formula::imp(p(), Formula::imp(q(), r())),
            ),
        ),
        (
            "case-split",
            Formula::iff(
                Formula::imp(Formula::or(p(), q()), r()),
                Formula::and(Formula::imp(p(), r()), Formula::imp(q(), r())),
            ),
        ),
        (
            "de-morgan-or",
            Formula::iff(
                Formula::not(Formula::or(p(), q())),
                Formula::and(Formula::not(p()), Formula::not(q())),
            ),
        ),
        (
            "de-morgan-and-half",
            Formula::imp(
                Formula::or(Formula::not(p()), Formula::not(q())),
                Formula::not(Formula::and(p(), q())),
            ),
        ),
        (
            "imp-trans",
            Formula::imp(
                Formula::and(Formula::imp(p(), q()), Formula::imp(q(), r())),
                Formula::imp(p(), r()),
            ),
        ),
        (
            "and-or-dist",
            Formula::iff(
                Formula::and(p(), Formula::or(q(), r())),
                Formula::or(Formula::and(p(), q()), Formula::and(p(), r())),
            ),
        ),
        (
            "or-and-dist",
            Formula::iff(
                Formula::or(p(), Formula::and(q(), r())),
                Formula::and(Formula::or(p(), q()), Formula::or(p(), r())),
            ),
        ),
        (
            "iff-trans",
            Formula::imp(
                Formula::iff(p(), q()),
                Formula::imp(Formula::iff(q(), r()), Formula::iff(p(), r())),
            ),
        ),
        (
            "lem-to-dn",
            Formula::imp(
                Formula::imp(Formula::or(p(), Formula::not(p())), q()),
                Formula::not(Formula::not(q())),
            ),
        ),
    ]
}

/// The tautologies plus classical-only laws; the latter separate the base
/// and boolean semantics and must come out top after negative translation.
pub fn propositional_corpus() -> Vec<(&'static str, Formula)> {
    let p = || prop_atom("p");
    let q = || prop_atom("q");
    let mut out = ipc_tautologies();
    out.push(("peirce", peirce()));
    out.push(("lem", Formula::or(p(), Formula::not(p()))));
    out.push(("dn-elim", Formula::imp(Formula::not(Formula::not(p())), p())));
    out.push(("weak-lem", Formula::or(Formula::not(p()), Formula::not(Formula::not(p())))));
    out.push(("dummett", Formula::or(Formula::imp(p(), q()), Formula::imp(q(), p()))));
    out.push((
        "material-imp",
        Formula::imp(Formula::imp(p(), q()), Formula::or(Formula::not(p()), q())),
    ));
    out.push((
        "de-morgan-and",
        Formula::imp(
            Formula::not(Formula::and(p(), q())),
            Formula::or(Formula::not(p()), Formula::not(q())),
        ),
    ));
    out.push(("bot-or-top", Formula::or(Formula::not(Formula::Bot), Formula::Bot)));
    out
}

/// Bounded set formulas over the free variables `a` and `b`: atoms, bounded
/// quantifications, and their negative/implicative/lattice combinations.
pub fn bounded_corpus() -> Vec<Formula> {
    let a = || var("a");
    let b = || var("b");
    let x = || var("x");
    let y = || var("y");
    let base: Vec<Formula> = vec![
        eq(a(), b()),
        mem(a(), b()),
        mem(b(), a()),
        eq(a(), a()),
        mem(lit_empty(), b()),
        eq(lit_empty(), a()),
        Formula::Bot,
        forall_in("x", a(), mem(x(), b())),
        exists_in("x", a(), eq(x(), b())),
        forall_in("x", a(), exists_in("y", b(), eq(x(), y()))),
        exists_in("x", b(), forall_in("y", a(), mem(y(), x()))),
        forall_in("x", a(), forall_in("y", x(), mem(y(), b()))),
        exists_in("x", a(), mem(x(), a())),
        forall_in("x", b(), Formula::or(eq(x(), a()), mem(x(), a()))),
    ];
    let mut out = base.clone();
    for f in &base {
        out.push(Formula::not(f.clone()));
    }
    for i in 0..6 {
        for j in 0..6 {
            if i != j {
                out.push(Formula::imp(base[i].clone(), base[j].clone()));
            }
        }
    }
    for i in 0..4 {
        out.push(Formula::and(base[i].clone(), base[i + 1].clone()));
        out.push(Formula::or(base[i].clone(), base[i + 2].clone()));
    }
    out
}

/// Unbounded formulas whose implication antecedents are all bounded, over
/// the free variables `a` and `b`.
pub fn conditional_bounded_corpus() -> Vec<Formula> {
    let a = || var("a");
    let b = || var("b");
    let x = || var("x");
    let y = || var("y");
    vec![
        exists("y", mem(y(), a())),
        exists("y", eq(y(), a())),
        forall("x", eq(x(), x())),
        forall("x", Formula::imp(mem(x(), a()), mem(x(), b()))),
        exists("x", mem(a(), x())),
        exists("x", forall_in("y", a(), mem(y(), x()))),
        forall("x", Formula::or(mem(x(), a()), Formula::not(mem(x(), a())))),
        forall("x", exists("y", eq(y(), x()))),
    ]
}

/// A frame with a rank-0 universe and an evaluator, for propositional work:
/// atoms are `empty in v` and a valuation binds v to `name{empty: value}`.
pub struct PropFrame {
    frame: Arc<Frame>,
    universe: Arc<NameUniverse>,
    evaluator: Evaluator,
}

impl PropFrame {
    pub fn new(topology: &crate::topology::FormalTopology) -> PropFrame {
        PropFrame::over(Arc::new(Frame::enumerate(topology).expect("corpus topologies are valid")))
    }

    /// Wraps an already-enumerated frame, so callers can keep handing its
    /// elements around.
    pub fn over(frame: Arc<Frame>) -> PropFrame {
        let universe = Arc::new(
            NameUniverse::enumerate(Arc::clone(&frame), 0, 0, &Ceilings::default())
                .expect("the rank-0 universe is a single name"),
        );
        PropFrame { evaluator: Evaluator::new(Arc::clone(&frame)), frame, universe }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// The name carrying one atom value.
    pub fn atom_name(&self, value: FrameElement) -> Name {
        Name::from_entries(vec![(Name::empty(), value)]).expect("a single entry cannot collide")
    }

    fn env(&self, valuation: &[(&str, FrameElement)]) -> Environment {
        let mut env = Environment::new(Arc::clone(&self.universe));
        for (v, value) in valuation {
            env = env.bind(v, self.atom_name(*value)).expect("atom names live in this frame");
        }
        env
    }

    pub fn eval(&self, formula: &Formula, valuation: &[(&str, FrameElement)]) -> FrameElement {
        self.evaluator.eval(formula, &self.env(valuation)).expect("closed under the valuation")
    }

    pub fn eval_boolean(
        &self,
        formula: &Formula,
        valuation: &[(&str, FrameElement)],
    ) -> FrameElement {
        self.evaluator
            .eval_boolean(formula, &self.env(valuation))
            .expect("closed under the valuation")
    }
}

/// Calls `f` once per assignment of `vars` to `elems`, odometer order.
pub fn for_each_valuation<F>(elems: &[FrameElement], vars: &[&str], mut f: F)
where
    F: FnMut(&[(&str, FrameElement)]),
{
    if vars.is_empty() {
        f(&[]);
        return;
    }
    if elems.is_empty() {
        return;
    }
    let mut idx = vec![0usize; vars.len()];
    loop {
        let valuation: Vec<(&str, FrameElement)> =
            vars.iter().zip(&idx).map(|(&v, &i)| (v, elems[i])).collect();
        f(&valuation);
        let mut k = 0;
        loop {
            if k == idx.len() {
                return;
            }
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn corpus_frames() -> Vec<(&'static str, Arc<Frame>)> {
    corpus::STANDARD
        .iter()
        .map(|e| {
            (e.name, Arc::new(Frame::enumerate(&e.topology()).expect("corpus topologies are valid")))
        })
        .collect()
}

fn universe_on(frame: &Arc<Frame>, rank: u32, width: usize) -> Arc<NameUniverse> {
    Arc::new(
        NameUniverse::enumerate(Arc::clone(frame), rank, width, &Ceilings::default())
            .expect("corpus universes stay under the default ceilings"),
    )
}

fn sorted_free_vars(f: &Formula) -> Vec<String> {
    f.free_vars().into_iter().collect()
}

// frame_core/* suites

fn suite_topology_axioms(_cfg: &SuiteConfig, t: &mut Tally) {
    for entry in corpus::STANDARD {
        let topo = entry.topology();
        let report = topo.validate();
        t.check(report.is_valid(), || {
            format!("{}: {} axiom violations", entry.name, report.violations.len())
        });
        // The nucleus of the whole carrier is the whole carrier.
        let full = AtomSet::full(topo.len());
        t.check(topo.nucleus_close(full) == full, || {
            format!("{}: closing the carrier lost atoms", entry.name)
        });
        // Closure output is always a lower set.
        for p in AtomSet::power(topo.len()) {
            t.check(topo.is_lower(topo.nucleus_close(p)), || {
                format!("{}: closure of {p:?} is not lower", entry.name)
            });
        }
    }
}

fn suite_nucleus_laws(_cfg: &SuiteConfig, t: &mut Tally) {
    for entry in corpus::STANDARD {
        let topo = entry.topology();
        let n = topo.len();
        let subsets: Vec<AtomSet> = AtomSet::power(n).collect();
        let lower: Vec<AtomSet> = subsets.iter().copied().filter(|p| topo.is_lower(*p)).collect();
        for &p in &subsets {
            let jp = topo.nucleus_close(p);
            t.check(p.is_subset(jp), || format!("{}: {p:?} not inside its closure", entry.name));
            t.check(topo.nucleus_close(jp) == jp, || {
                format!("{}: closure of {p:?} is not idempotent", entry.name)
            });
        }
        // Meet preservation is a law of lower sets only.
        for &p in &lower {
            for &q in &lower {
                let lhs = topo.nucleus_close(p.inter(q));
                let rhs = topo.nucleus_close(p).inter(topo.nucleus_close(q));
                t.check(lhs == rhs, || {
                    format!("{}: closure breaks the meet of {p:?} and {q:?}", entry.name)
                });
            }
        }
        // Monotonicity on everything.
        for &p in &subsets {
            for &q in &subsets {
                if p.is_subset(q) {
                    t.check(topo.nucleus_close(p).is_subset(topo.nucleus_close(q)), || {
                        format!("{}: closure not monotone at {p:?} vs {q:?}", entry.name)
                    });
                }
            }
        }
    }
}

/// Adjunction, identity, and distributivity laws for one frame. Split out so
/// the fault-injection fixture can be run through the same checks.
fn lattice_laws_on(label: &str, frame: &Frame, t: &mut Tally) {
    let elems: Vec<FrameElement> = frame.elements().collect();
    let m = |p, q| frame.meet(p, q).expect("one frame");
    let j = |p, q| frame.join(p, q).expect("one frame");
    let le = |p, q| frame.leq(p, q).expect("one frame");
    for &r in &elems {
        for &p in &elems {
            for &q in &elems {
                let lhs = le(m(r, p), q);
                let rhs = le(r, frame.imp(p, q).expect("one frame"));
                t.check(lhs == rhs, || {
                    format!(
                        "{label}: adjunction fails at r={} p={} q={}",
                        frame.render(r),
                        frame.render(p),
                        frame.render(q)
                    )
                });
            }
        }
    }
    for &p in &elems {
        t.check(m(p, frame.top()) == p, || {
            format!("{label}: meet with top moved {}", frame.render(p))
        });
        t.check(j(p, frame.bot()) == p, || {
            format!("{label}: join with bottom moved {}", frame.render(p))
        });
        t.check(m(p, p) == p && j(p, p) == p, || {
            format!("{label}: idempotence fails at {}", frame.render(p))
        });
    }
    for &p in &elems {
        for &q in &elems {
            t.check(m(p, q) == m(q, p) && j(p, q) == j(q, p), || {
                format!("{label}: commutativity fails at {} {}", frame.render(p), frame.render(q))
            });
        }
    }
    // Binary meet distributes over the join of every subset of the frame.
    let n = elems.len();
    if n <= 12 {
        for mask in 0u64..1 << n {
            let family: Vec<FrameElement> = elems
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let joined = frame.big_join(family.iter().copied()).expect("one frame");
            for &p in &elems {
                let lhs = m(p, joined);
                let rhs = frame
                    .big_join(family.iter().map(|&q| m(p, q)))
                    .expect("one frame");
                t.check(lhs == rhs, || {
                    format!(
                        "{label}: meet with {} does not distribute over a {}-element join",
                        frame.render(p),
                        family.len()
                    )
                });
            }
        }
    }
}

fn suite_lattice_laws(_cfg: &SuiteConfig, t: &mut Tally) {
    for (name, frame) in corpus_frames() {
        lattice_laws_on(name, &frame, t);
    }
}

/// Runs the lattice suite against a two-chain frame whose meet table has one
/// deliberately corrupted entry. The outcome must report failures; a clean
/// result here means the suite has lost its teeth.
pub fn faulted_lattice_outcome() -> SuiteOutcome {
    let topo = corpus::by_name("chain2").expect("chain2 is in the corpus");
    let frame = Frame::enumerate(&topo).expect("chain2 validates");
    let broken = frame.with_faulted_meet(1, 2, 0);
    let mut tally = Tally::new();
    lattice_laws_on("faulted-chain2", &broken, &mut tally);
    SuiteOutcome {
        suite: "frame_core/lattice-laws[injected-fault]",
        checks: tally.checks,
        failures: tally.failures,
        messages: tally.messages,
    }
}

fn suite_generators(_cfg: &SuiteConfig, t: &mut Tally) {
    for (name, frame) in corpus_frames() {
        let gens = frame.generators();
        t.check(!gens.is_empty() || frame.len() == 1, || {
            format!("{name}: no generators in a nontrivial frame")
        });
        for e in frame.elements() {
            let below = gens.iter().copied().filter(|&g| frame.leq(g, e).expect("one frame"));
            let rebuilt = frame.big_join(below).expect("one frame");
            t.check(rebuilt == e, || {
                format!("{name}: {} is not the join of generators below it", frame.render(e))
            });
        }
        for atom in 0..frame.topology().len() {
            let g = frame.generator_of_atom(atom);
            t.check(gens.contains(&g), || {
                format!("{name}: generator of atom {atom} missing from the list")
            });
            t.check(g.bits().contains(atom), || {
                format!("{name}: generator of atom {atom} does not contain it")
            });
        }
    }
}

fn suite_booleanization(_cfg: &SuiteConfig, t: &mut Tally) {
    for (name, frame) in corpus_frames() {
        let elems: Vec<FrameElement> = frame.elements().collect();
        let dn = |p| frame.dn(p).expect("one frame");
        for &p in &elems {
            t.check(frame.leq(p, dn(p)).expect("one frame"), || {
                format!("{name}: {} above its double negation", frame.render(p))
            });
            t.check(dn(dn(p)) == dn(p), || {
                format!("{name}: double negation not idempotent at {}", frame.render(p))
            });
            for &q in &elems {
                let lhs = dn(frame.meet(p, q).expect("one frame"));
                let rhs = frame.meet(dn(p), dn(q)).expect("one frame");
                t.check(lhs == rhs, || {
                    format!(
                        "{name}: double negation breaks the meet of {} and {}",
                        frame.render(p),
                        frame.render(q)
                    )
                });
            }
        }
        let b = frame.booleanize();
        t.check(b.is_boolean(), || format!("{name}: booleanization is not boolean"));
        for e in b.elements() {
            t.check(b.dn(e).expect("one frame") == e, || {
                format!("{name}: booleanized element {} not negation-stable", b.render(e))
            });
            let lem = b.join(e, b.neg(e).expect("one frame")).expect("one frame");
            t.check(b.is_top(lem), || {
                format!("{name}: excluded middle fails at {} after booleanizing", b.render(e))
            });
        }
        // The booleanized carrier is exactly the negation-stable part.
        let mut stable: Vec<AtomSet> =
            elems.iter().copied().filter(|&p| dn(p) == p).map(|p| p.bits()).collect();
        stable.sort();
        let mut bbits: Vec<AtomSet> = b.elements().map(|e| e.bits()).collect();
        bbits.sort();
        t.check(stable == bbits, || {
            format!("{name}: booleanized carrier differs from the stable elements")
        });
        if frame.is_boolean() {
            t.check(b.len() == frame.len(), || {
                format!("{name}: booleanizing a boolean frame changed its size")
            });
        }
        if name == "chain2" {
            t.check(b.len() == 2, || format!("{name}: expected a two-element booleanization"));
        }
    }
}

fn suite_relativized_approximation(_cfg: &SuiteConfig, t: &mut Tally) {
    for (name, frame) in corpus_frames() {
        if frame.len() > 8 {
            continue;
        }
        let topo = frame.topology();
        let lower: Vec<AtomSet> =
            AtomSet::power(topo.len()).filter(|p| topo.is_lower(*p)).collect();
        let elems: Vec<FrameElement> = frame.elements().collect();
        let n = elems.len();
        let pick = |mask: u64| -> Vec<FrameElement> {
            elems.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect()
        };
        for bmask in 0u64..1 << n {
            let bfam = pick(bmask);
            for &p in &lower {
                let jb = frame.relativized_j(p, &bfam).expect("lower input");
                let ceiling = frame.booleanization_closure(p).expect("lower input");
                t.check(jb.is_subset(ceiling), || {
                    format!("{name}: family closure of {p:?} escapes its double negation")
                });
                // Walk every subfamily; monotonicity in the family.
                let mut amask = bmask;
                loop {
                    let ja = frame.relativized_j(p, &pick(amask)).expect("lower input");
                    t.check(ja.is_subset(jb), || {
                        format!("{name}: family closure of {p:?} not monotone in the family")
                    });
                    if amask == 0 {
                        break;
                    }
                    amask = (amask - 1) & bmask;
                }
            }
            // A stable member of the family is recovered up to double negation.
            for &e in &bfam {
                let je = frame.relativized_j(e.bits(), &bfam).expect("elements are lower");
                t.check(je == frame.dn(e).expect("one frame").bits(), || {
                    format!(
                        "{name}: family closure of member {} missed its double negation",
                        frame.render(e)
                    )
                });
            }
        }
        // The full-frame family dominates pointwise on stable elements.
        for &e in &elems {
            let all = frame.j_all(e.bits()).expect("elements are lower");
            t.check(e.bits().is_subset(all), || {
                format!("{name}: whole-frame closure lost {}", frame.render(e))
            });
        }
    }
}

// name_universe/* suite

fn suite_universe_laws(_cfg: &SuiteConfig, t: &mut Tally) {
    for (name, frame) in corpus_frames() {
        if frame.topology().len() > 2 {
            continue;
        }
        let universe = universe_on(&frame, 2, 2);
        let names = universe.names();
        t.check(names.windows(2).all(|w| w[0] < w[1]), || {
            format!("{name}: universe not strictly sorted")
        });
        t.check(
            names.iter().all(|n| n.rank() <= 2 && n.width() <= 2),
            || format!("{name}: universe breaches its rank or width bound"),
        );
        let all: Vec<Name> = names.to_vec();
        t.check(universe.is_domain_closed(&all), || {
            format!("{name}: universe not closed under domains")
        });
        t.check(
            names.iter().all(|n| n.entries().iter().all(|(_, v)| *v != frame.bot())),
            || format!("{name}: enumerated name carries a bottom value"),
        );
        // Completeness: every buildable combination is listed, and nothing
        // else is. Keys range over listed names of rank below the bound.
        let keys: Vec<&Name> = names.iter().filter(|n| n.rank() <= 1).collect();
        let values: Vec<FrameElement> =
            frame.elements().filter(|&v| v != frame.bot()).collect();
        let mut built = 0u64;
        for (i, k1) in keys.iter().enumerate() {
            for &v1 in &values {
                let n = Name::from_entries(vec![((*k1).clone(), v1)]).expect("one entry");
                t.check(universe.contains(&n), || {
                    format!("{name}: missing one-entry name {}", n.render(&frame).expect("owned"))
                });
                built += 1;
            }
            for k2 in keys.iter().skip(i + 1) {
                for &v1 in &values {
                    for &v2 in &values {
                        let n = Name::from_entries(vec![((*k1).clone(), v1), ((*k2).clone(), v2)])
                            .expect("distinct keys");
                        t.check(universe.contains(&n), || {
                            format!(
                                "{name}: missing two-entry name {}",
                                n.render(&frame).expect("owned")
                            )
                        });
                        built += 1;
                    }
                }
            }
        }
        t.check(universe.len() as u64 == built + 1, || {
            format!("{name}: universe size {} differs from rebuilt {}", universe.len(), built + 1)
        });
    }

    // Canonical names are crisp: equal sets get top, distinct sets bottom.
    for frame_name in ["chain2", "antichain2"] {
        let topo = corpus::by_name(frame_name).expect("corpus entry");
        let frame = Arc::new(Frame::enumerate(&topo).expect("valid"));
        let ev = Evaluator::new(Arc::clone(&frame));
        let stage = hf::v_stage(3, &Ceilings::default()).expect("small stage");
        for x in &stage {
            for y in &stage {
                let nx = Name::canonical(&frame, x);
                let ny = Name::canonical(&frame, y);
                let value = ev.eval_eq(&nx, &ny).expect("one frame");
                let expected = if x == y { frame.top() } else { frame.bot() };
                t.check(value == expected, || {
                    format!("{frame_name}: canonical equality of {x} and {y} is {}", frame.render(value))
                });
                let member = ev.eval_mem(&nx, &ny).expect("one frame");
                let expected = if y.contains(x) { frame.top() } else { frame.bot() };
                t.check(member == expected, || {
                    format!("{frame_name}: canonical membership of {x} in {y} is off")
                });
            }
        }
        // Pair names: membership law for up, laws of op via its unfolding.
        let universe = universe_on(&frame, 1, 2);
        let names = universe.names();
        for a in names {
            for b in names {
                let up = Name::up(&frame, a, b).expect("one frame");
                for c in [a, b] {
                    let v = ev.eval_mem(c, &up).expect("one frame");
                    t.check(frame.is_top(v), || {
                        format!("{frame_name}: a pair name does not contain its components")
                    });
                }
                let op = Name::op_pair(&frame, a, b).expect("one frame");
                let unfolded = Name::up(
                    &frame,
                    &Name::up(&frame, a, a).expect("one frame"),
                    &Name::up(&frame, a, b).expect("one frame"),
                )
                .expect("one frame");
                t.check(op == unfolded, || {
                    format!("{frame_name}: ordered pair is not its unfolding")
                });
            }
        }
        // Pruning bottom-valued entries never changes interpreted equality.
        let bot = frame.bot();
        for a in names {
            let padded = Name::from_entries(vec![
                (a.clone(), frame.top()),
                (Name::up(&frame, a, a).expect("one frame"), bot),
            ])
            .expect("distinct keys");
            let pruned = padded.prune_bottom(&frame).expect("one frame");
            t.check(pruned.width() == 1, || {
                format!("{frame_name}: pruning left a bottom entry behind")
            });
            let v = ev.eval_eq(&padded, &pruned).expect("one frame");
            t.check(frame.is_top(v), || {
                format!("{frame_name}: pruning changed the value of a name")
            });
        }
        // The universe name of the whole collection contains every member.
        let sub = universe.subuniverse_name(names).expect("listed");
        for n in names {
            let v = ev.eval_mem(n, &sub).expect("one frame");
            t.check(frame.is_top(v), || {
                format!("{frame_name}: collection name misses a member")
            });
        }
    }
}

// formula_lang/* suites

fn random_term(rng: &mut ChaCha8Rng, scope: &[String]) -> Term {
    if !scope.is_empty() && !rng.next_u32().is_multiple_of(3) {
        let i = rng.next_u32() as usize % scope.len();
        Term::Var(scope[i].clone())
    } else {
        match rng.next_u32() % 4 {
            0 => Term::Literal(NameLiteral::Empty),
            1 => Term::Literal(NameLiteral::Check(HfSet::ordinal(rng.next_u32() as usize % 3))),
            2 => Term::Literal(NameLiteral::Up(
                Box::new(NameLiteral::Empty),
                Box::new(NameLiteral::Check(HfSet::ordinal(1))),
            )),
            _ => Term::Literal(NameLiteral::Op(
                Box::new(NameLiteral::Empty),
                Box::new(NameLiteral::Empty),
            )),
        }
    }
}

fn random_formula(rng: &mut ChaCha8Rng, depth: u32, scope: &mut Vec<String>, fresh: &mut u32) -> Formula {
    let pick = if depth == 0 { rng.next_u32() % 3 } else { rng.next_u32() % 10 };
    match pick {
        0 => Formula::Bot,
        1 => Formula::Eq(random_term(rng, scope), random_term(rng, scope)),
        2 => Formula::Mem(random_term(rng, scope), random_term(rng, scope)),
        3 => Formula::and(
            random_formula(rng, depth - 1, scope, fresh),
            random_formula(rng, depth - 1, scope, fresh),
        ),
        4 => Formula::or(
            random_formula(rng, depth - 1, scope, fresh),
            random_formula(rng, depth - 1, scope, fresh),
        ),
        5 => Formula::imp(
            random_formula(rng, depth - 1, scope, fresh),
            random_formula(rng, depth - 1, scope, fresh),
        ),
        6 | 7 => {
            let v = format!("v{fresh}");
            *fresh += 1;
            let bound = random_term(rng, scope);
            scope.push(v.clone());
            let body = random_formula(rng, depth - 1, scope, fresh);
            scope.pop();
            if pick == 6 {
                Formula::ForallIn(v, bound, Box::new(body))
            } else {
                Formula::ExistsIn(v, bound, Box::new(body))
            }
        }
        _ => {
            let v = format!("v{fresh}");
            *fresh += 1;
            scope.push(v.clone());
            let body = random_formula(rng, depth - 1, scope, fresh);
            scope.pop();
            if pick == 8 {
                Formula::Forall(v, Box::new(body))
            } else {
                Formula::Exists(v, Box::new(body))
            }
        }
    }
}

fn suite_formula_round_trip(cfg: &SuiteConfig, t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x666f_726d);
    for _ in 0..256 {
        let mut scope = Vec::new();
        let mut fresh = 0u32;
        let f = random_formula(&mut rng, 3, &mut scope, &mut fresh);
        let printed = f.to_string();
        match parse_open(&printed) {
            Ok((parsed, _)) => t.check(parsed == f, || {
                format!("reparse changed `{printed}`")
            }),
            Err(e) => t.check(false, || format!("`{printed}` failed to reparse: {e}")),
        }
    }
    // The fixed corpora round-trip too, with their free variables reported.
    let mut fixed: Vec<Formula> = bounded_corpus();
    fixed.extend(conditional_bounded_corpus());
    fixed.extend(propositional_corpus().into_iter().map(|(_, f)| f));
    for f in &fixed {
        let printed = f.to_string();
        match parse_open(&printed) {
            Ok((parsed, frees)) => {
                t.check(parsed == *f, || format!("reparse changed `{printed}`"));
                let expected = sorted_free_vars(f);
                t.check(frees == expected, || {
                    format!("free variables of `{printed}` reported as {frees:?}")
                });
            }
            Err(e) => t.check(false, || format!("`{printed}` failed to reparse: {e}")),
        }
    }
}

fn suite_formula_translation(cfg: &SuiteConfig, t: &mut Tally) {
    let mut all: Vec<Formula> = bounded_corpus();
    all.extend(conditional_bounded_corpus());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x7472_616e);
    for _ in 0..64 {
        let mut scope = Vec::new();
        let mut fresh = 0u32;
        all.push(random_formula(&mut rng, 3, &mut scope, &mut fresh));
    }
    for f in &all {
        let rel = f.relativize("cls");
        t.check(rel.is_bounded(), || format!("relativization of `{f}` is unbounded"));
        t.check(rel.relativize("cls") == rel, || {
            format!("relativization of `{f}` is not idempotent")
        });
        if f.is_bounded() {
            t.check(rel == *f, || format!("relativization moved the bounded `{f}`"));
        }
        let mut allowed = f.free_vars();
        allowed.insert("cls".into());
        t.check(rel.free_vars().is_subset(&allowed), || {
            format!("relativization of `{f}` invented free variables")
        });
        let dn = f.dn_translate();
        t.check(dn.is_bounded() == f.is_bounded(), || {
            format!("negative translation changed boundedness of `{f}`")
        });
        t.check(dn.free_vars() == f.free_vars(), || {
            format!("negative translation changed free variables of `{f}`")
        });
    }
}

// evaluator/* suites

fn suite_ipc_tautologies(_cfg: &SuiteConfig, t: &mut Tally) {
    for entry in corpus::STANDARD {
        let lab = PropFrame::new(&entry.topology());
        let elems: Vec<FrameElement> = lab.frame().elements().collect();
        for (law, f) in ipc_tautologies() {
            let vars = sorted_free_vars(&f);
            let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
            for_each_valuation(&elems, &var_refs, |valuation| {
                let v = lab.eval(&f, valuation);
                t.check(lab.frame().is_top(v), || {
                    format!("{}: {law} came out {}", entry.name, lab.frame().render(v))
                });
            });
        }
    }
    // A classical law really is refutable: the canonical countermodel.
    let lab = PropFrame::new(&corpus::by_name("chain2").expect("corpus entry"));
    let frame = lab.frame();
    let mid = frame.element(AtomSet::singleton(0)).expect("the middle element");
    let v = lab.eval(&peirce(), &[("p", mid), ("q", frame.bot())]);
    t.check(v == mid, || format!("peirce countermodel moved to {}", frame.render(v)));
    t.check(!frame.is_top(v), || "peirce has no countermodel here".to_string());
}

/// The set-axiom instance checks shared with the acceptance gate. The
/// checked values are instances of Extensionality, Pairing, Union, Binary
/// Intersection, bounded Separation, and Replacement, with their witnesses
/// constructed rather than searched.
pub fn bcst_instance_failures(frame: &Arc<Frame>, budget: usize, t: &mut Tally) {
    let width = if frame.len() <= 4 { 2 } else { 1 };
    let universe = universe_on(frame, 2, width);
    let ev = Evaluator::new(Arc::clone(frame));
    let names = universe.names();
    let top = frame.top();
    let m = |p, q| frame.meet(p, q).expect("one frame");
    let imp = |p, q| frame.imp(p, q).expect("one frame");

    // ∀y ∈ x. y ∈ b, computed directly.
    let all_members_in = |x: &Name, b: &Name| -> FrameElement {
        let mut acc = top;
        for (y, xv) in x.entries() {
            let inside = ev.eval_mem(y, b).expect("one frame");
            acc = m(acc, imp(*xv, inside));
        }
        acc
    };

    let n = names.len();
    let total = n * n;
    let step = (total / budget).max(1);
    let mut flat = 0usize;
    while flat < total {
        let a = &names[flat / n];
        let b = &names[flat % n];
        flat += step;

        // Extensionality: mutual boundedness of membership forces equality.
        let fwd = all_members_in(a, b);
        let bwd = all_members_in(b, a);
        let ext = imp(m(fwd, bwd), ev.eval_eq(a, b).expect("one frame"));
        t.check(frame.is_top(ext), || {
            format!("extensionality instance fell to {}", frame.render(ext))
        });

        // Pairing: up(a, b) contains both and nothing else.
        let pair = Name::up(frame, a, b).expect("one frame");
        let mut pairing = m(
            ev.eval_mem(a, &pair).expect("one frame"),
            ev.eval_mem(b, &pair).expect("one frame"),
        );
        for (x, pv) in pair.entries() {
            let either = frame
                .join(
                    ev.eval_eq(x, a).expect("one frame"),
                    ev.eval_eq(x, b).expect("one frame"),
                )
                .expect("one frame");
            pairing = m(pairing, imp(*pv, either));
        }
        t.check(frame.is_top(pairing), || {
            format!("pairing instance fell to {}", frame.render(pairing))
        });

        // Union: the merged name contains exactly the members of members.
        let mut merged: BTreeMap<Name, FrameElement> = BTreeMap::new();
        for (y, av) in a.entries() {
            for (z, yv) in y.entries() {
                let w = m(*av, *yv);
                merged
                    .entry(z.clone())
                    .and_modify(|acc| *acc = frame.join(*acc, w).expect("one frame"))
                    .or_insert(w);
            }
        }
        let union = Name::from_entries(merged.into_iter().collect()).expect("distinct keys");
        let mut union_ok = top;
        for (y, av) in a.entries() {
            for (z, yv) in y.entries() {
                let inside = ev.eval_mem(z, &union).expect("one frame");
                union_ok = m(union_ok, imp(m(*av, *yv), inside));
            }
        }
        for (z, uv) in union.entries() {
            let mut hit = frame.bot();
            for (y, av) in a.entries() {
                let in_y = ev.eval_mem(z, y).expect("one frame");
                hit = frame.join(hit, m(*av, in_y)).expect("one frame");
            }
            union_ok = m(union_ok, imp(*uv, hit));
        }
        t.check(frame.is_top(union_ok), || {
            format!("union instance fell to {}", frame.render(union_ok))
        });

        // Binary intersection: restrict a to what is also in b.
        let inter = Name::from_entries(
            a.entries()
                .iter()
                .map(|(x, av)| (x.clone(), m(*av, ev.eval_mem(x, b).expect("one frame"))))
                .collect(),
        )
        .expect("keys of a");
        let mut inter_ok = top;
        for (x, iv) in inter.entries() {
            let both = m(
                ev.eval_mem(x, a).expect("one frame"),
                ev.eval_mem(x, b).expect("one frame"),
            );
            inter_ok = m(inter_ok, imp(*iv, both));
        }
        for (x, av) in a.entries() {
            let in_b = ev.eval_mem(x, b).expect("one frame");
            let claimed = ev.eval_mem(x, &inter).expect("one frame");
            inter_ok = m(inter_ok, imp(m(*av, in_b), claimed));
        }
        t.check(frame.is_top(inter_ok), || {
            format!("intersection instance fell to {}", frame.render(inter_ok))
        });

        // Bounded separation with the predicate ∀y ∈ x. y ∈ b.
        let sep = Name::from_entries(
            a.entries()
                .iter()
                .map(|(x, av)| (x.clone(), m(*av, all_members_in(x, b))))
                .collect(),
        )
        .expect("keys of a");
        let mut sep_ok = top;
        for (x, sv) in sep.entries() {
            let holds = m(
                ev.eval_mem(x, a).expect("one frame"),
                all_members_in(x, b),
            );
            sep_ok = m(sep_ok, imp(*sv, holds));
        }
        for (x, av) in a.entries() {
            let claimed = ev.eval_mem(x, &sep).expect("one frame");
            sep_ok = m(sep_ok, imp(m(*av, all_members_in(x, b)), claimed));
        }
        t.check(frame.is_top(sep_ok), || {
            format!("separation instance fell to {}", frame.render(sep_ok))
        });

        // Replacement along the pairing map x ↦ up(x, x): the image name
        // contains the image of every member and nothing more.
        let mut image: BTreeMap<Name, FrameElement> = BTreeMap::new();
        for (x, av) in a.entries() {
            let gx = Name::up(frame, x, x).expect("one frame");
            image
                .entry(gx)
                .and_modify(|acc| *acc = frame.join(*acc, *av).expect("one frame"))
                .or_insert(*av);
        }
        let repl = Name::from_entries(image.into_iter().collect()).expect("distinct keys");
        let mut repl_ok = top;
        for (x, av) in a.entries() {
            let gx = Name::up(frame, x, x).expect("one frame");
            let inside = ev.eval_mem(&gx, &repl).expect("one frame");
            repl_ok = m(repl_ok, imp(*av, inside));
        }
        for (y, rv) in repl.entries() {
            let mut hit = frame.bot();
            for (x, av) in a.entries() {
                let gx = Name::up(frame, x, x).expect("one frame");
                hit = frame
                    .join(hit, m(*av, ev.eval_eq(y, &gx).expect("one frame")))
                    .expect("one frame");
            }
            repl_ok = m(repl_ok, imp(*rv, hit));
        }
        t.check(frame.is_top(repl_ok), || {
            format!("replacement instance fell to {}", frame.render(repl_ok))
        });
    }
}

fn suite_bcst_instances(_cfg: &SuiteConfig, t: &mut Tally) {
    for (name, frame) in corpus_frames() {
        let before = t.failures;
        bcst_instance_failures(&frame, 4096, t);
        t.check(t.failures == before, || format!("{name}: some axiom instance failed above"));
    }
}

fn suite_equality_laws(_cfg: &SuiteConfig, t: &mut Tally) {
    for frame_name in ["chain2", "antichain2"] {
        let topo = corpus::by_name(frame_name).expect("corpus entry");
        let frame = Arc::new(Frame::enumerate(&topo).expect("valid"));
        let universe = universe_on(&frame, 2, 1);
        let ev = Evaluator::new(Arc::clone(&frame));
        let names = universe.names();
        let m = |p, q| frame.meet(p, q).expect("one frame");
        for a in names {
            let refl = ev.eval_eq(a, a).expect("one frame");
            t.check(frame.is_top(refl), || {
                format!("{frame_name}: reflexivity fell to {}", frame.render(refl))
            });
            for b in names {
                let ab = ev.eval_eq(a, b).expect("one frame");
                let ba = ev.eval_eq(b, a).expect("one frame");
                t.check(ab == ba, || format!("{frame_name}: equality is not symmetric"));
                for c in names {
                    let bc = ev.eval_eq(b, c).expect("one frame");
                    let ac = ev.eval_eq(a, c).expect("one frame");
                    t.check(frame.leq(m(ab, bc), ac).expect("one frame"), || {
                        format!("{frame_name}: transitivity fails")
                    });
                    // Substitutivity in both atom positions.
                    let a_in_c = ev.eval_mem(a, c).expect("one frame");
                    let b_in_c = ev.eval_mem(b, c).expect("one frame");
                    t.check(frame.leq(m(ab, a_in_c), b_in_c).expect("one frame"), || {
                        format!("{frame_name}: membership not stable under equality on the left")
                    });
                    let c_in_a = ev.eval_mem(c, a).expect("one frame");
                    let c_in_b = ev.eval_mem(c, b).expect("one frame");
                    t.check(frame.leq(m(ab, c_in_a), c_in_b).expect("one frame"), || {
                        format!("{frame_name}: membership not stable under equality on the right")
                    });
                }
            }
        }
    }

    // Ordered pairs compare componentwise, on two structurally different
    // frames, over every 4-tuple of rank ≤ 1 names.
    for frame_name in ["chain2", "vee"] {
        let topo = corpus::by_name(frame_name).expect("corpus entry");
        let frame = Arc::new(Frame::enumerate(&topo).expect("valid"));
        let universe = universe_on(&frame, 1, 2);
        let ev = Evaluator::new(Arc::clone(&frame));
        let names = universe.names();
        let m = |p, q| frame.meet(p, q).expect("one frame");
        for a in names {
            for b in names {
                let ab = Name::op_pair(&frame, a, b).expect("one frame");
                for c in names {
                    for d in names {
                        let cd = Name::op_pair(&frame, c, d).expect("one frame");
                        let lhs = ev.eval_eq(&ab, &cd).expect("one frame");
                        let rhs = m(
                            ev.eval_eq(a, c).expect("one frame"),
                            ev.eval_eq(b, d).expect("one frame"),
                        );
                        t.check(lhs == rhs, || {
                            format!(
                                "{frame_name}: pair equality {} differs from components {}",
                                frame.render(lhs),
                                frame.render(rhs)
                            )
                        });
                    }
                }
            }
        }
    }
}

fn suite_boolean_lem(_cfg: &SuiteConfig, t: &mut Tally) {
    let topo = corpus::by_name("chain2").expect("corpus entry");
    let frame = Arc::new(Frame::enumerate(&topo).expect("valid"));
    let universe = universe_on(&frame, 2, 2);
    let ev = Evaluator::new(Arc::clone(&frame));
    let names = universe.names();
    let corpus_formulas = bounded_corpus();
    t.check(corpus_formulas.len() >= 50, || "bounded corpus shrank".to_string());
    t.check(corpus_formulas.iter().all(Formula::is_bounded), || {
        "bounded corpus contains an unbounded formula".to_string()
    });
    let top_bits = frame.top().bits();
    for f in &corpus_formulas {
        let lem = Formula::or(f.clone(), Formula::not(f.clone()));
        for a in names {
            for b in names {
                let env = Environment::new(Arc::clone(&universe))
                    .bind("a", a.clone())
                    .expect("one frame")
                    .bind("b", b.clone())
                    .expect("one frame");
                let v = ev.eval_boolean(&lem, &env).expect("closed");
                t.check(v.bits() == top_bits, || {
                    format!(
                        "excluded middle for `{f}` fell to {:?} at a={} b={}",
                        v.bits(),
                        a.render(&frame).expect("owned"),
                        b.render(&frame).expect("owned")
                    )
                });
            }
        }
    }
    // A witness that the base semantics genuinely differs: one instance
    // whose base value is the middle element while its boolean value is top.
    let mid = frame.element(AtomSet::singleton(0)).expect("the middle element");
    let witness = Name::from_entries(vec![(Name::empty(), mid)]).expect("one entry");
    let f = mem(lit_empty(), var("b"));
    let lem = Formula::or(f.clone(), Formula::not(f));
    let env = Environment::new(Arc::clone(&universe)).bind("b", witness).expect("one frame");
    let base = ev.eval(&lem, &env).expect("closed");
    let boolean = ev.eval_boolean(&lem, &env).expect("closed");
    t.check(base == mid, || {
        format!("witness base value moved to {}", frame.render(base))
    });
    t.check(!frame.is_top(base), || "witness base value reached top".to_string());
    t.check(boolean.bits() == top_bits, || {
        format!("witness boolean value is {:?}", boolean.bits())
    });
    // Classical-only laws stay below top in the base frame.
    let lab = PropFrame::over(Arc::clone(&frame));
    let v = lab.eval(&peirce(), &[("p", mid), ("q", frame.bot())]);
    t.check(!lab.frame().is_top(v), || "peirce reached top in the base frame".to_string());
}

fn suite_dn_correspondence(_cfg: &SuiteConfig, t: &mut Tally) {
    for entry in corpus::STANDARD {
        let lab = PropFrame::new(&entry.topology());
        let elems: Vec<FrameElement> = lab.frame().elements().collect();
        for (law, f) in propositional_corpus() {
            let translated = f.dn_translate();
            let vars = sorted_free_vars(&f);
            let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
            for_each_valuation(&elems, &var_refs, |valuation| {
                let lhs = lab.eval(&translated, valuation);
                let rhs = lab.eval_boolean(&f, valuation);
                t.check(lhs.bits() == rhs.bits(), || {
                    format!(
                        "{}: {law} translates to {:?} but evaluates boolean to {:?}",
                        entry.name,
                        lhs.bits(),
                        rhs.bits()
                    )
                });
            });
        }
    }
}

fn suite_absoluteness(_cfg: &SuiteConfig, t: &mut Tally) {
    let topo = corpus::by_name("chain2").expect("corpus entry");
    let frame = Arc::new(Frame::enumerate(&topo).expect("valid"));
    let universe = universe_on(&frame, 2, 1);
    let ev = Evaluator::new(Arc::clone(&frame));
    let names = universe.names();
    let subsets = universe.transitive_subsets(&Ceilings::default()).expect("small universe");
    let families: Vec<Vec<Name>> = subsets
        .iter()
        .map(|idx| idx.iter().map(|&i| names[i].clone()).collect())
        .collect();

    // Bounded formulas never see the sub-universe: relative and absolute
    // values agree for every transitive family.
    for f in bounded_corpus() {
        for a in names {
            for b in names {
                let env = Environment::new(Arc::clone(&universe))
                    .bind("a", a.clone())
                    .expect("one frame")
                    .bind("b", b.clone())
                    .expect("one frame");
                let absolute = ev.eval(&f, &env).expect("closed");
                for fam in &families {
                    let relative = ev.eval_relativized(&f, fam, &env).expect("transitive family");
                    t.check(relative == absolute, || {
                        format!(
                            "`{f}` moved from {} to {} inside a {}-name family",
                            frame.render(absolute),
                            frame.render(relative),
                            fam.len()
                        )
                    });
                }
            }
        }
    }

    // Unbounded formulas with bounded antecedents only grow when the range
    // widens and the inner view is named explicitly.
    for f in conditional_bounded_corpus() {
        let rel = f.relativize("cls");
        for (ai, small) in families.iter().enumerate() {
            let small_name = universe.subuniverse_name(small).expect("listed");
            for (bi, large) in families.iter().enumerate() {
                if ai != bi && !subsets[ai].iter().all(|i| subsets[bi].contains(i)) {
                    continue;
                }
                for a in small {
                    let env = Environment::new(Arc::clone(&universe))
                        .bind("a", a.clone())
                        .expect("one frame")
                        .bind("b", a.clone())
                        .expect("one frame");
                    let lhs = ev.eval_relativized(&f, small, &env).expect("transitive family");
                    let env = env.bind("cls", small_name.clone()).expect("one frame");
                    let rhs = ev.eval_relativized(&rel, large, &env).expect("transitive family");
                    t.check(frame.leq(lhs, rhs).expect("one frame"), || {
                        format!(
                            "`{f}` shrank from {} to {} when the range widened",
                            frame.render(lhs),
                            frame.render(rhs)
                        )
                    });
                }
            }
        }
    }
}

fn suite_cache_coherence(_cfg: &SuiteConfig, t: &mut Tally) {
    for frame_name in ["chain2", "wedge"] {
        let topo = corpus::by_name(frame_name).expect("corpus entry");
        let frame = Arc::new(Frame::enumerate(&topo).expect("valid"));
        let universe = universe_on(&frame, 2, 1);
        let cached = Evaluator::new(Arc::clone(&frame));
        let uncached = Evaluator::uncached(Arc::clone(&frame));
        let names = universe.names();
        let mut formulas: Vec<Formula> = bounded_corpus().into_iter().take(16).collect();
        formulas.push(forall("x", exists_in("y", var("x"), mem(var("y"), var("a")))));
        formulas.push(exists("x", Formula::and(mem(var("a"), var("x")), eq(var("x"), var("b")))));
        for f in &formulas {
            for a in names {
                for b in names.iter().rev().take(3) {
                    let env = Environment::new(Arc::clone(&universe))
                        .bind("a", a.clone())
                        .expect("one frame")
                        .bind("b", b.clone())
                        .expect("one frame");
                    let hot = cached.eval(f, &env).expect("closed");
                    let cold = uncached.eval(f, &env).expect("closed");
                    t.check(hot == cold, || {
                        format!(
                            "{frame_name}: caching changed `{f}` from {} to {}",
                            frame.render(cold),
                            frame.render(hot)
                        )
                    });
                }
            }
        }
        // Every retained memo entry matches a fresh computation.
        let (eq_entries, mem_entries) = cached.cache_entries();
        t.check(!eq_entries.is_empty() && !mem_entries.is_empty(), || {
            format!("{frame_name}: the caches stayed empty")
        });
        for ((a, b), v) in eq_entries {
            let fresh = uncached.eval_eq(&a, &b).expect("one frame");
            t.check(v == fresh, || format!("{frame_name}: a stale equality entry"));
        }
        for ((a, b), v) in mem_entries {
            let fresh = uncached.eval_mem(&a, &b).expect("one frame");
            t.check(v == fresh, || format!("{frame_name}: a stale membership entry"));
        }
    }
}

// inductive_engine/* suite

fn inductive_laws_on(label: &str, def: &InductiveDefinition, t: &mut Tally) {
    let lfp = def.least_fixed_point();
    t.check(def.is_closed(lfp), || format!("{label}: the fixed point is not closed"));
    t.check(def.gamma(lfp) == lfp, || format!("{label}: the fixed point moves under the operator"));
    t.check(def.minimality_counterexample().is_none(), || {
        format!("{label}: a proper closed subset of the fixed point exists")
    });
    let stages = def.iteration_class(def.universe());
    t.check(stages.windows(2).all(|w| w[0] & !w[1] == 0), || {
        format!("{label}: stages are not ascending")
    });
    t.check(*stages.last().expect("nonempty") == lfp, || {
        format!("{label}: stages do not reach the fixed point")
    });
    let stab = def.stabilization_index();
    t.check(stab <= def.universe(), || {
        format!("{label}: stabilized only at stage {stab}")
    });
    t.check(stages[stab] == lfp, || {
        format!("{label}: the stabilization stage is not the fixed point")
    });
    // The fixed point sits below every closed set.
    if def.universe() <= 6 {
        for c in 0u64..1 << def.universe() {
            if def.is_closed(c) {
                t.check(lfp & !c == 0, || {
                    format!("{label}: a closed set below the fixed point exists")
                });
            }
        }
    }
}

fn suite_inductive_fixed_points(cfg: &SuiteConfig, t: &mut Tally) {
    // Every rule system over a two-element universe.
    let slots = InductiveDefinition::rule_slots(2).expect("in range");
    t.check(slots == 8, || format!("expected 8 rule slots, found {slots}"));
    for mask in 0u64..1 << slots {
        let def = InductiveDefinition::from_rule_mask(2, mask).expect("mask in range");
        inductive_laws_on("mask", &def, t);
        for c in 0u64..4 {
            for d in 0u64..4 {
                if c & d == c {
                    t.check(def.gamma(c) & !def.gamma(d) == 0, || {
                        format!("operator not monotone at mask {mask}")
                    });
                }
            }
        }
    }
    t.check(InductiveDefinition::rule_slots(3) == Some(24), || {
        "three-element universes should have 24 rule slots".to_string()
    });
    t.check(InductiveDefinition::rule_slots(6).is_none(), || {
        "six-element universes are past the mask range".to_string()
    });

    // Random rule systems over six elements.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x1fd_9e3);
    for round in 0..200 {
        let n_rules = (rng.next_u32() % 13) as usize;
        let rules: Vec<(Vec<usize>, usize)> = (0..n_rules)
            .map(|_| {
                (subset_elements(rng.next_u64() & 0x3f), (rng.next_u32() % 6) as usize)
            })
            .collect();
        let borrowed: Vec<(&[usize], usize)> =
            rules.iter().map(|(p, c)| (p.as_slice(), *c)).collect();
        let def = InductiveDefinition::new(6, &borrowed).expect("elements in range");
        inductive_laws_on("random", &def, t);
        for _ in 0..20 {
            let d = rng.next_u64() & 0x3f;
            let c = d & rng.next_u64();
            t.check(def.gamma(c) & !def.gamma(d) == 0, || {
                format!("operator not monotone on round {round}")
            });
        }
    }
}

// hf_lab/* suites

fn hf_transitive_closure_oracle(x: &HfSet) -> HfSet {
    let mut elems: Vec<HfSet> = x.elems().to_vec();
    for e in x.elems() {
        elems.extend(hf_transitive_closure_oracle(e).elems().iter().cloned());
    }
    HfSet::from_vec(elems)
}

fn suite_hf_canonical(cfg: &SuiteConfig, t: &mut Tally) {
    let stage = hf::v_stage(4, &cfg.ceilings).expect("stage within ceiling");
    t.check(stage.len() == 16, || format!("stage of rank 4 has {} sets", stage.len()));
    for k in 0..4u32 {
        let sub = hf::v_stage(k, &cfg.ceilings).expect("stage within ceiling");
        t.check(sub.len() == [0usize, 1, 2, 4][k as usize], || {
            format!("stage of rank {k} has {} sets", sub.len())
        });
        t.check(sub.iter().all(|s| stage.contains(s)), || {
            format!("stage of rank {k} is not cumulative")
        });
    }
    for x in &stage {
        match hf::parse_hf_literal(&x.to_string()) {
            Ok(back) => t.check(back == *x, || format!("reparse changed {x}")),
            Err(e) => t.check(false, || format!("{x} failed to reparse: {e}")),
        }
        let tc = x.transitive_closure();
        t.check(tc.is_transitive(), || format!("closure of {x} is not transitive"));
        t.check(x.elems().iter().all(|e| tc.contains(e)), || {
            format!("closure of {x} misses a member")
        });
        t.check(tc == hf_transitive_closure_oracle(x), || {
            format!("closure of {x} differs from the recursive oracle")
        });
        t.check(x.rank() <= 4, || format!("{x} overshoots its stage rank"));
    }
    let small = hf::v_stage(3, &cfg.ceilings).expect("stage within ceiling");
    for x in &small {
        for y in &small {
            let pair = HfSet::kuratowski(x.clone(), y.clone());
            t.check(HfSet::decode_pair(&pair) == Some((x.clone(), y.clone())), || {
                format!("pair of {x} and {y} does not decode")
            });
            let product = x.product(y);
            t.check(product.len() == x.len() * y.len(), || {
                format!("product of {x} and {y} has the wrong size")
            });
            for a in x.elems() {
                for b in y.elems() {
                    t.check(product.contains(&HfSet::kuratowski(a.clone(), b.clone())), || {
                        format!("product of {x} and {y} misses a pair")
                    });
                }
            }
        }
    }
    for n in 0..5usize {
        let o = HfSet::ordinal(n);
        t.check(o.len() == n && o.rank() == n as u32 && o.is_transitive(), || {
            format!("ordinal {n} is malformed")
        });
        for m in 0..n {
            t.check(o.contains(&HfSet::ordinal(m)), || {
                format!("ordinal {n} misses ordinal {m}")
            });
        }
    }
}

fn mv_pool() -> Vec<HfSet> {
    let base = [
        HfSet::empty(),
        HfSet::ordinal(1),
        HfSet::singleton(HfSet::ordinal(1)),
        HfSet::ordinal(2),
    ];
    let mut out = Vec::new();
    for mask in 0u32..16 {
        if mask.count_ones() <= 2 {
            let elems: Vec<HfSet> = base
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, s)| s.clone())
                .collect();
            out.push(HfSet::from_vec(elems));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn suite_mv_adjustment(cfg: &SuiteConfig, t: &mut Tally) {
    let pool = mv_pool();
    t.check(pool.len() == 11, || format!("relation pool has {} sets", pool.len()));
    let junk = HfSet::ordinal(4);
    for a in &pool {
        for b in &pool {
            let relations = hf::mv_enumerate(a, b, &cfg.ceilings).expect("pool sets are tiny");
            let pairs: Vec<HfSet> = a.product(b).elems().to_vec();
            for r in &relations {
                let adj = r.adjust();
                let r_set = r.as_set();
                for smask in 0u64..1 << pairs.len() {
                    for with_junk in [false, true] {
                        let mut elems: Vec<HfSet> = pairs
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| smask >> i & 1 == 1)
                            .map(|(_, p)| p.clone())
                            .collect();
                        if with_junk {
                            elems.push(junk.clone());
                        }
                        let s = HfSet::from_vec(elems);
                        // The adjustment lands wholly in s exactly when the
                        // part of r encoded inside s is still total on a.
                        let kept: Vec<(HfSet, HfSet)> = r
                            .pairs()
                            .iter()
                            .filter(|(x, y)| {
                                s.contains(&HfSet::kuratowski(x.clone(), y.clone()))
                            })
                            .cloned()
                            .collect();
                        let restricted = MvRelation::new(a.clone(), b.clone(), kept)
                            .expect("pairs come from r");
                        t.check(adj.into_all(&s) == restricted.is_mvf(), || {
                            format!("into-law fails for {} against {s}", r.as_set())
                        });
                        // The adjustment covers s exactly when s sits inside
                        // the encoded graph.
                        let graph_side = s.elems().iter().all(|e| r_set.contains(e));
                        t.check(adj.onto_all(&s) == graph_side, || {
                            format!("onto-law fails for {} against {s}", r.as_set())
                        });
                    }
                }
            }
        }
    }
    // One worked instance, kept explicit.
    let r = MvRelation::new(
        HfSet::ordinal(1),
        HfSet::singleton(HfSet::singleton(HfSet::empty())),
        vec![(HfSet::empty(), HfSet::singleton(HfSet::empty()))],
    )
    .expect("a one-pair relation");
    let adj = r.adjust();
    t.check(adj.pairs().len() == 1, || "adjustment changed the pair count".to_string());
    let (x, xy) = &adj.pairs()[0];
    t.check(*x == HfSet::empty(), || "adjustment moved the domain point".to_string());
    t.check(
        *xy == HfSet::kuratowski(HfSet::empty(), HfSet::singleton(HfSet::empty())),
        || "adjustment did not tag the pair".to_string(),
    );
}

fn suite_mv_fullness(cfg: &SuiteConfig, t: &mut Tally) {
    let pool = mv_pool();
    let is_full = |c: &[MvRelation], mv: &[MvRelation]| {
        mv.iter().all(|r| {
            c.iter().any(|s| s.pairs().iter().all(|p| r.pairs().contains(p)))
        })
    };
    for a in &pool {
        for b in &pool {
            if a.len() * b.len() > 4 || b.is_empty() {
                continue;
            }
            let mv = hf::mv_enumerate(a, b, &cfg.ceilings).expect("pool sets are tiny");
            if mv.len() > 9 {
                continue;
            }
            let fulls = hf::full_subsets(a, b, false, &cfg.ceilings).expect("tiny search");
            // The listing agrees with the definitional oracle over every
            // subset of mv(a, b).
            let mut oracle_count = 0u64;
            for mask in 0u64..1 << mv.len() {
                let c: Vec<MvRelation> = mv
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, r)| r.clone())
                    .collect();
                let full = is_full(&c, &mv);
                if full {
                    oracle_count += 1;
                }
                t.check(fulls.contains(&c) == full, || {
                    format!("full-subset listing disagrees at a {}-element candidate", c.len())
                });
            }
            t.check(fulls.len() as u64 == oracle_count, || {
                format!("full-subset count {} differs from oracle {oracle_count}", fulls.len())
            });
            // mv(a, b) itself is full, so the listing is never empty.
            t.check(!fulls.is_empty(), || "no full subset found".to_string());
            // Minimal elements of mv(a, b) under ⊆ appear in every full set.
            let minimal: Vec<&MvRelation> = mv
                .iter()
                .filter(|r| {
                    !mv.iter().any(|s| {
                        s.pairs().len() < r.pairs().len()
                            && s.pairs().iter().all(|p| r.pairs().contains(p))
                    })
                })
                .collect();
            for c in &fulls {
                for r in &minimal {
                    t.check(c.contains(r), || {
                        format!("a full set omits the minimal relation {}", r.as_set())
                    });
                }
            }
            let best = hf::full_subsets(a, b, true, &cfg.ceilings).expect("tiny search");
            let least = best.first().map_or(0, |c| c.len());
            t.check(best.iter().all(|c| c.len() == least), || {
                "minimal full sets disagree on cardinality".to_string()
            });
            t.check(best.iter().all(|c| is_full(c, &mv)), || {
                "a minimal full set is not full".to_string()
            });
        }
    }
    // Smallest worked case: one point against two points needs both
    // singleton relations and nothing less.
    let a = HfSet::ordinal(1);
    let b = HfSet::ordinal(2);
    let best = hf::full_subsets(&a, &b, true, &cfg.ceilings).expect("tiny search");
    t.check(best.len() == 1 && best[0].len() == 2, || {
        format!("expected one minimal full set of two relations, found {}", best.len())
    });
    t.check(
        best[0].iter().all(|r| r.pairs().len() == 1),
        || "the minimal full set should hold singleton relations".to_string(),
    );
}

fn suite_regularity_census(cfg: &SuiteConfig, t: &mut Tally) {
    let o = HfSet::ordinal;
    t.check(hf::is_regular(&HfSet::singleton(o(0)), &cfg.ceilings).is_regular(), || {
        "the singleton of the empty set should be regular".to_string()
    });
    t.check(hf::is_regular(&o(0), &cfg.ceilings).is_regular(), || {
        "the empty set should be vacuously regular".to_string()
    });
    match hf::is_regular(&o(2), &cfg.ceilings) {
        RegularVerdict::NoBound { a, r } => {
            t.check(a == o(1), || format!("unbounded slot is {a}, not the singleton"));
            t.check(r == vec![(o(0), o(1))], || "a different relation was blamed".to_string());
        }
        v => t.check(false, || format!("the ordinal 2 came out {v:?}")),
    }
    t.check(!HfSet::singleton(o(1)).is_transitive(), || {
        "the singleton of 1 should not be transitive".to_string()
    });
    match hf::is_regular(&HfSet::singleton(o(1)), &cfg.ceilings) {
        RegularVerdict::NotTransitive { witness } => {
            t.check(witness == o(1), || format!("transitivity witness is {witness}"));
        }
        v => t.check(false, || format!("a non-transitive set came out {v:?}")),
    }
    // {∅} is regular and ⋃-closed but not pairing-closed: the pair of its
    // only member with itself is {∅}, which is not a member.
    let report = hf::bcst_report(&HfSet::singleton(o(0)), &cfg.ceilings);
    t.check(report.union_regular(), || {
        "the singleton of the empty set should be union-regular".to_string()
    });
    t.check(!report.pairing_closed && !report.bcst_regular(), || {
        "the singleton of the empty set cannot hold its own pair".to_string()
    });

    // Refinement agrees with a direct reading of what a bound is.
    for a_set in [HfSet::singleton(o(0)), o(2), o(3), HfSet::from_vec(vec![o(0), o(1), HfSet::singleton(o(1))])] {
        if !a_set.is_transitive() {
            continue;
        }
        for a in a_set.elems() {
            let relations = hf::mv_enumerate(a, &a_set, &cfg.ceilings).expect("tiny sets");
            for r in &relations {
                let refined = hf::set_mv_refine(&a_set, a, r).expect("preconditions hold");
                let r_graph = r.as_set();
                let direct = a_set.elems().iter().find(|b| {
                    b.elems().iter().all(|e| r_graph.contains(e))
                        && a.elems().iter().all(|x| {
                            r.pairs().iter().any(|(px, py)| {
                                px == x && b.contains(&HfSet::kuratowski(px.clone(), py.clone()))
                            })
                        })
                });
                t.check(refined.as_ref() == direct, || {
                    format!("refinement of {} inside {a_set} disagrees", r.as_set())
                });
            }
        }
    }

    // Census over the stage of rank 4: the reference rows come out as
    // documented and no pairing-closure violation appears.
    let rows = hf::census(4, 8, &cfg.ceilings).expect("census within ceilings");
    t.check(!rows.is_empty(), || "census returned no rows".to_string());
    let find = |s: &HfSet| rows.iter().find(|row| row.set == *s);
    match find(&HfSet::singleton(o(0))) {
        Some(row) => t.check(row.report.regular.is_regular(), || {
            "census row for the singleton of the empty set is not regular".to_string()
        }),
        None => t.check(false, || "census lost the singleton of the empty set".to_string()),
    }
    match find(&o(2)) {
        Some(row) => t.check(!row.report.regular.is_regular(), || {
            "census row for the ordinal 2 claims regularity".to_string()
        }),
        None => t.check(false, || "census lost the ordinal 2".to_string()),
    }
    for row in &rows {
        t.check(row.set.is_transitive(), || format!("census row {} not transitive", row.set));
        if row.set.contains(&o(2)) {
            t.check(!row.report.regular.is_regular(), || {
                format!("census row {} contains 2 yet claims regularity", row.set)
            });
        }
        t.check(!matches!(row.pairing, PairingClosure::Violated { .. }), || {
            format!("census row {} violates pairing closure", row.set)
        });
        if let RegularVerdict::NotTransitive { .. } = row.report.regular {
            t.check(false, || format!("census offered the non-transitive {}", row.set));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_sorted_and_unique() {
        let names: Vec<&str> = registry().iter().map(|s| s.name).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(names, sorted);
        assert!(names.len() >= 20);
    }

    #[test]
    fn filter_selects_by_substring() {
        let cfg = SuiteConfig::default();
        let frame_only = run_all(&cfg, Some("frame_core"));
        assert!(frame_only.iter().all(|o| o.suite.starts_with("frame_core")));
        assert_eq!(frame_only.len(), 6);
        let none = run_all(&cfg, Some("no-such-suite"));
        assert!(none.is_empty());
    }

    #[test]
    fn every_suite_passes() {
        let cfg = SuiteConfig::default();
        for outcome in run_all(&cfg, None) {
            assert!(
                outcome.passed(),
                "{} failed {} of {} checks: {:?}",
                outcome.suite,
                outcome.failures,
                outcome.checks,
                outcome.messages
            );
            assert!(outcome.checks > 0, "{} checked nothing", outcome.suite);
        }
    }

    #[test]
    fn runs_are_deterministic() {
        let cfg = SuiteConfig::default();
        let a = run_all(&cfg, Some("formula_lang"));
        let b = run_all(&cfg, Some("formula_lang"));
        assert_eq!(a, b);
    }

    #[test]
    fn corpora_have_the_advertised_shapes() {
        assert_eq!(ipc_tautologies().len(), 25);
        assert!(propositional_corpus().len() >= 30);
        let bounded = bounded_corpus();
        assert!(bounded.len() >= 50);
        assert!(bounded.iter().all(Formula::is_bounded));
        let conditional = conditional_bounded_corpus();
        assert!(conditional.iter().all(|f| !f.is_bounded()));
    }

    #[test]
    fn a_faulted_meet_table_fails_the_lattice_suite() {
        let topo = corpus::by_name("chain2").unwrap();
        let frame = Frame::enumerate(&topo).unwrap();
        let broken = frame.with_faulted_meet(1, 2, 0);
        let mut tally = Tally::new();
        lattice_laws_on("faulted", &broken, &mut tally);
        assert!(tally.failures > 0, "the fault went unnoticed");
        assert!(!tally.messages.is_empty());

        let mut clean = Tally::new();
        lattice_laws_on("clean", &frame, &mut clean);
        assert_eq!(clean.failures, 0);
    }

    #[test]
    fn valuation_odometer_covers_the_grid() {
        let topo = corpus::by_name("chain2").unwrap();
        let lab = PropFrame::new(&topo);
        let elems: Vec<FrameElement> = lab.frame().elements().collect();
        let mut count = 0;
        for_each_valuation(&elems, &["p", "q"], |v| {
            assert_eq!(v.len(), 2);
            count += 1;
        });
        assert_eq!(count, 9);
        let mut nullary = 0;
        for_each_valuation(&elems, &[], |v| {
            assert!(v.is_empty());
            nullary += 1;
        });
        assert_eq!(nullary, 1);
    }
}
