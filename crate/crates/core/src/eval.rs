//! The Heyting-valued interpretation ⟦·⟧ of the forcing language.
//!
//! Atomic clauses, computed by mutual recursion on the sum of name ranks:
//!
//! ```text
//! ⟦a = b⟧ = ⋀_{x ∈ dom a} (a(x) → ⟦x ∈ b⟧)  ∧  ⋀_{y ∈ dom b} (b(y) → ⟦y ∈ a⟧)
//! ⟦a ∈ b⟧ = ⋁_{y ∈ dom b} (b(y) ∧ ⟦a = y⟧)
//! ```
//!
//! Connectives use the frame operations; bounded quantifiers fold over the
//! domain of the bounding name weighted by its values; unbounded quantifiers
//! fold over the truncated universe (or a designated sub-universe). All
//! folds run left to right in the deterministic name order, so results are
//! reproducible bit for bit.
//!
//! The equality cache is keyed on the sorted name pair, which both halves
//! the table and makes symmetry ⟦a=b⟧ = ⟦b=a⟧ structural.
//!
//! "Evaluation over Ω" ([`Evaluator::eval_boolean`]) runs the same clauses
//! in the Booleanized frame after hereditarily replacing every name value v
//! by ¬¬v; this is the sublocale semantics of the double-negation cover and
//! produces ¬¬-stable values for bounded formulas.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::formula::{Formula, Term};
use crate::frame::{Frame, FrameElement, FrameError};
use crate::name::{Name, NameError, NameUniverse};

/// Variable assignment plus the universe unbounded quantifiers range over.
#[derive(Clone)]
pub struct Environment {
    universe: Arc<NameUniverse>,
    /// Sorted by variable.
    assignment: Vec<(String, Name)>,
}

impl Environment {
    pub fn new(universe: Arc<NameUniverse>) -> Environment {
        Environment { universe, assignment: Vec::new() }
    }

    /// Binds a variable. The name must live over the universe's frame; it
    /// need not be listed (sub-universe names Ã routinely are not).
    pub fn bind(mut self, var: &str, name: Name) -> Result<Environment, EvalError> {
        if let Some(id) = name.frame_id() {
            if id != self.universe.frame().id() {
                return Err(EvalError::Name(NameError::FrameMismatch {
                    expected: self.universe.frame().id(),
                    got: id,
                }));
            }
        }
        match self.assignment.binary_search_by(|(v, _)| v.as_str().cmp(var)) {
            Ok(i) => self.assignment[i].1 = name,
            Err(i) => self.assignment.insert(i, (String::from(var), name)),
        }
        Ok(self)
    }

    pub fn universe(&self) -> &NameUniverse {
        &self.universe
    }

    pub fn assignment(&self) -> &[(String, Name)] {
        &self.assignment
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    Frame(FrameError),
    Name(NameError),
    Unresolved { var: String },
    NotDomainClosed { witness: Name },
}

impl From<FrameError> for EvalError {
    fn from(e: FrameError) -> EvalError {
        EvalError::Frame(e)
    }
}

impl From<NameError> for EvalError {
    fn from(e: NameError) -> EvalError {
        EvalError::Name(e)
    }
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Frame(e) => write!(f, "{e:?}"),
            EvalError::Name(e) => write!(f, "{e}"),
            EvalError::Unresolved { var } => write!(f, "unresolved variable `{var}`"),
            EvalError::NotDomainClosed { witness } => {
                write!(f, "sub-universe is not domain-closed at {witness:?}")
            }
        }
    }
}

/// The Booleanization of a frame together with the hereditary ¬¬ transport
/// of names into it.
pub struct BooleanLift {
    base: Arc<Frame>,
    lifted: Arc<Frame>,
}

impl BooleanLift {
    pub fn new(base: Arc<Frame>) -> BooleanLift {
        let lifted = Arc::new(base.booleanize());
        BooleanLift { base, lifted }
    }

    pub fn base(&self) -> &Frame {
        &self.base
    }

    pub fn lifted(&self) -> &Frame {
        &self.lifted
    }

    pub fn lifted_arc(&self) -> Arc<Frame> {
        Arc::clone(&self.lifted)
    }

    /// ¬¬v, as an element of the Booleanized frame.
    pub fn transport_element(&self, v: FrameElement) -> Result<FrameElement, EvalError> {
        let stable = self.base.dn(v)?;
        Ok(self.lifted.element(stable.bits())?)
    }

    /// Hereditarily maps every value through ¬¬. Keys that collapse to the
    /// same transported key get their values joined.
    pub fn transport_name(&self, n: &Name) -> Result<Name, EvalError> {
        let out = n.map_values(&self.lifted, &|v| {
            let stable = self.base.dn(v).map_err(NameError::Frame)?;
            self.lifted.element(stable.bits()).map_err(NameError::Frame)
        })?;
        Ok(out)
    }

    /// The universe's names transported, deduplicated, in name order.
    pub fn transport_universe(&self, u: &NameUniverse) -> Result<Vec<Name>, EvalError> {
        let mut out = Vec::with_capacity(u.len());
        for n in u.names() {
            out.push(self.transport_name(n)?);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

struct Ctx<'a> {
    /// Frame that name literals in the source text resolve against.
    base: &'a Frame,
    /// Present in boolean mode; resolved literals are transported.
    lift: Option<&'a BooleanLift>,
    /// Range of unbounded quantifiers, in the evaluation frame.
    range: &'a [Name],
    assignment: &'a [(String, Name)],
}

/// Snapshot of one memo table: `(lhs, rhs)` keys with their cached values.
pub type CacheDump = Vec<((Name, Name), FrameElement)>;

/// Interpreter over one frame, with a memo table for the atomic clauses.
pub struct Evaluator {
    frame: Arc<Frame>,
    memo: bool,
    eq_cache: RefCell<BTreeMap<(Name, Name), FrameElement>>,
    mem_cache: RefCell<BTreeMap<(Name, Name), FrameElement>>,
}

impl Evaluator {
    pub fn new(frame: Arc<Frame>) -> Evaluator {
        Evaluator::with_memo(frame, true)
    }

    /// Recomputes every atomic clause from scratch; the coherence suite
    /// compares this against the memoized path.
    pub fn uncached(frame: Arc<Frame>) -> Evaluator {
        Evaluator::with_memo(frame, false)
    }

    fn with_memo(frame: Arc<Frame>, memo: bool) -> Evaluator {
        Evaluator {
            frame,
            memo,
            eq_cache: RefCell::new(BTreeMap::new()),
            mem_cache: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    fn check_name(&self, n: &Name) -> Result<(), EvalError> {
        if let Some(id) = n.frame_id() {
            if id != self.frame.id() {
                return Err(EvalError::Name(NameError::FrameMismatch {
                    expected: self.frame.id(),
                    got: id,
                }));
            }
        }
        Ok(())
    }

    /// ⟦a = b⟧. Symmetric by construction: the cache key is the sorted pair.
    pub fn eval_eq(&self, a: &Name, b: &Name) -> Result<FrameElement, EvalError> {
        self.check_name(a)?;
        self.check_name(b)?;
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        if self.memo {
            if let Some(v) = self.eq_cache.borrow().get(&key) {
                return Ok(*v);
            }
        }
        let (a, b) = (&key.0, &key.1);
        let mut acc = self.frame.top();
        for (x, vx) in a.entries() {
            let mem = self.eval_mem(x, b)?;
            acc = self.frame.meet(acc, self.frame.imp(*vx, mem)?)?;
        }
        for (y, vy) in b.entries() {
            let mem = self.eval_mem(y, a)?;
            acc = self.frame.meet(acc, self.frame.imp(*vy, mem)?)?;
        }
        if self.memo {
            self.eq_cache.borrow_mut().insert(key.clone(), acc);
        }
        Ok(acc)
    }

    /// ⟦a ∈ b⟧ = ⋁_{y ∈ dom b} b(y) ∧ ⟦a = y⟧.
    pub fn eval_mem(&self, a: &Name, b: &Name) -> Result<FrameElement, EvalError> {
        self.check_name(a)?;
        self.check_name(b)?;
        let key = (a.clone(), b.clone());
        if self.memo {
            if let Some(v) = self.mem_cache.borrow().get(&key) {
                return Ok(*v);
            }
        }
        let mut acc = self.frame.bot();
        for (y, vy) in b.entries() {
            let eq = self.eval_eq(a, y)?;
            acc = self.frame.join(acc, self.frame.meet(*vy, eq)?)?;
        }
        if self.memo {
            self.mem_cache.borrow_mut().insert(key, acc);
        }
        Ok(acc)
    }

    /// ⟦φ⟧ with unbounded quantifiers over the environment's universe.
    pub fn eval(&self, formula: &Formula, env: &Environment) -> Result<FrameElement, EvalError> {
        self.check_env(env)?;
        let ctx = Ctx {
            base: &self.frame,
            lift: None,
            range: env.universe().names(),
            assignment: env.assignment(),
        };
        self.eval_in(formula, &mut Vec::new(), &ctx)
    }

    /// ⟦φ⟧ with unbounded quantifiers over the domain-closed sub-universe
    /// `sub` (each member must be listed).
    pub fn eval_relativized(
        &self,
        formula: &Formula,
        sub: &[Name],
        env: &Environment,
    ) -> Result<FrameElement, EvalError> {
        self.check_env(env)?;
        for n in sub {
            if !env.universe().contains(n) {
                return Err(EvalError::Name(NameError::NotListed { name: n.clone() }));
            }
            for k in n.domain() {
                if !sub.contains(k) {
                    return Err(EvalError::NotDomainClosed { witness: n.clone() });
                }
            }
        }
        let ctx = Ctx {
            base: &self.frame,
            lift: None,
            range: sub,
            assignment: env.assignment(),
        };
        self.eval_in(formula, &mut Vec::new(), &ctx)
    }

    /// ⟦φ⟧ over the Booleanized frame, names hereditarily mapped through
    /// ¬¬. The result is an element of `booleanize(frame)`; compare values
    /// across modes through [`FrameElement::bits`].
    pub fn eval_boolean(
        &self,
        formula: &Formula,
        env: &Environment,
    ) -> Result<FrameElement, EvalError> {
        self.check_env(env)?;
        let lift = BooleanLift::new(Arc::clone(&self.frame));
        let range = lift.transport_universe(env.universe())?;
        let mut assignment = Vec::with_capacity(env.assignment().len());
        for (var, name) in env.assignment() {
            assignment.push((var.clone(), lift.transport_name(name)?));
        }
        let inner = Evaluator::with_memo(lift.lifted_arc(), self.memo);
        let ctx = Ctx {
            base: &self.frame,
            lift: Some(&lift),
            range: &range,
            assignment: &assignment,
        };
        inner.eval_in(formula, &mut Vec::new(), &ctx)
    }

    fn check_env(&self, env: &Environment) -> Result<(), EvalError> {
        if env.universe().frame().id() != self.frame.id() {
            return Err(EvalError::Name(NameError::FrameMismatch {
                expected: self.frame.id(),
                got: env.universe().frame().id(),
            }));
        }
        Ok(())
    }

    fn resolve_term(
        &self,
        term: &Term,
        scope: &[(String, Name)],
        ctx: &Ctx<'_>,
    ) -> Result<Name, EvalError> {
        match term {
            Term::Var(v) => scope
                .iter()
                .rev()
                .find(|(s, _)| s == v)
                .or_else(|| ctx.assignment.iter().find(|(s, _)| s == v))
                .map(|(_, n)| n.clone())
                .ok_or_else(|| EvalError::Unresolved { var: v.clone() }),
            Term::Literal(lit) => {
                let name = lit.resolve(ctx.base)?;
                match ctx.lift {
                    Some(lift) => lift.transport_name(&name),
                    None => Ok(name),
                }
            }
        }
    }

    fn eval_in(
        &self,
        formula: &Formula,
        scope: &mut Vec<(String, Name)>,
        ctx: &Ctx<'_>,
    ) -> Result<FrameElement, EvalError> {
        match formula {
            Formula::Bot => Ok(self.frame.bot()),
            Formula::Eq(s, t) => {
                let a = self.resolve_term(s, scope, ctx)?;
                let b = self.resolve_term(t, scope, ctx)?;
                self.eval_eq(&a, &b)
            }
            Formula::Mem(s, t) => {
                let a = self.resolve_term(s, scope, ctx)?;
                let b = self.resolve_term(t, scope, ctx)?;
                self.eval_mem(&a, &b)
            }
            Formula::And(p, q) => {
                let a = self.eval_in(p, scope, ctx)?;
                let b = self.eval_in(q, scope, ctx)?;
                Ok(self.frame.meet(a, b)?)
            }
            Formula::Or(p, q) => {
                let a = self.eval_in(p, scope, ctx)?;
                let b = self.eval_in(q, scope, ctx)?;
                Ok(self.frame.join(a, b)?)
            }
            Formula::Imp(p, q) => {
                let a = self.eval_in(p, scope, ctx)?;
                let b = self.eval_in(q, scope, ctx)?;
                Ok(self.frame.imp(a, b)?)
            }
            Formula::ForallIn(x, t, body) => {
                let bound = self.resolve_term(t, scope, ctx)?;
                let mut acc = self.frame.top();
                for (y, vy) in bound.entries() {
                    scope.push((x.clone(), y.clone()));
                    let inner = self.eval_in(body, scope, ctx);
                    scope.pop();
                    acc = self.frame.meet(acc, self.frame.imp(*vy, inner?)?)?;
                }
                Ok(acc)
            }
            Formula::ExistsIn(x, t, body) => {
                let bound = self.resolve_term(t, scope, ctx)?;
                let mut acc = self.frame.bot();
                for (y, vy) in bound.entries() {
                    scope.push((x.clone(), y.clone()));
                    let inner = self.eval_in(body, scope, ctx);
                    scope.pop();
                    acc = self.frame.join(acc, self.frame.meet(*vy, inner?)?)?;
                }
                Ok(acc)
            }
            Formula::Forall(x, body) => {
                let mut acc = self.frame.top();
                for n in ctx.range {
                    scope.push((x.clone(), n.clone()));
                    let inner = self.eval_in(body, scope, ctx);
                    scope.pop();
                    acc = self.frame.meet(acc, inner?)?;
                }
                Ok(acc)
            }
            Formula::Exists(x, body) => {
                let mut acc = self.frame.bot();
                for n in ctx.range {
                    scope.push((x.clone(), n.clone()));
                    let inner = self.eval_in(body, scope, ctx);
                    scope.pop();
                    acc = self.frame.join(acc, inner?)?;
                }
                Ok(acc)
            }
        }
    }

    /// Memo-table snapshots, for the coherence suite.
    #[doc(hidden)]
    pub fn cache_entries(&self) -> (CacheDump, CacheDump) {
        (
            self.eq_cache.borrow().iter().map(|(k, v)| (k.clone(), *v)).collect(),
            self.mem_cache.borrow().iter().map(|(k, v)| (k.clone(), *v)).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, parse_open};
    use crate::hf::HfSet;
    use crate::name::NameUniverse;
    use crate::topology::{numbered_atoms, AtomSet, CoverSpec, FormalTopology};
    use crate::Ceilings;

    fn three_chain() -> Arc<Frame> {
        let t = FormalTopology::new(
            numbered_atoms(2),
            &[(0, 1)],
            CoverSpec::Downset,
            &Ceilings::default(),
        )
        .unwrap();
        Arc::new(Frame::enumerate(&t).unwrap())
    }

    fn universe(frame: &Arc<Frame>, rank: u32, width: usize) -> Arc<NameUniverse> {
        Arc::new(
            NameUniverse::enumerate(Arc::clone(frame), rank, width, &Ceilings::default())
                .unwrap(),
        )
    }

    fn mid(frame: &Frame) -> FrameElement {
        frame.element(AtomSet::singleton(0)).unwrap()
    }

    #[test]
    fn atomic_clause_examples() {
        let f = three_chain();
        let ev = Evaluator::new(Arc::clone(&f));
        let e = Name::empty();
        let a = Name::from_entries(vec![(e.clone(), mid(&f))]).unwrap();
        // ⟦a = ∅̌⟧ = ({0} → ⊥) = ∅ and ⟦∅̌ ∈ a⟧ = {0}.
        assert_eq!(ev.eval_eq(&a, &e).unwrap(), f.bot());
        assert_eq!(ev.eval_mem(&e, &a).unwrap(), mid(&f));
        // ⟦x ∈ ∅̌⟧ = ⊥ and ⟦x̌ ∈ up(x̌, y̌)⟧ = ⊤.
        assert_eq!(ev.eval_mem(&a, &e).unwrap(), f.bot());
        let x = Name::canonical(&f, &HfSet::ordinal(1));
        let y = Name::canonical(&f, &HfSet::empty());
        let up = Name::up(&f, &x, &y).unwrap();
        assert!(f.is_top(ev.eval_mem(&x, &up).unwrap()));
        assert!(f.is_top(ev.eval_mem(&y, &up).unwrap()));
    }

    #[test]
    fn equality_is_an_equivalence_up_to_frame_order() {
        let f = three_chain();
        let u = universe(&f, 2, 2);
        let ev = Evaluator::new(Arc::clone(&f));
        for a in u.names() {
            assert!(f.is_top(ev.eval_eq(a, a).unwrap()), "reflexivity at {a:?}");
        }
        for a in u.names() {
            for b in u.names() {
                let ab = ev.eval_eq(a, b).unwrap();
                assert_eq!(ab, ev.eval_eq(b, a).unwrap());
                for c in u.names() {
                    let bc = ev.eval_eq(b, c).unwrap();
                    let ac = ev.eval_eq(a, c).unwrap();
                    assert!(f.leq(f.meet(ab, bc).unwrap(), ac).unwrap());
                }
            }
        }
    }

    #[test]
    fn connectives_match_frame_operations() {
        let f = three_chain();
        let u = universe(&f, 1, 1);
        let env = Environment::new(Arc::clone(&u));
        let ev = Evaluator::new(Arc::clone(&f));
        let phi = parse("empty in name{empty: [0]}").unwrap();
        let psi = parse("empty = name{empty: [0 1]}").unwrap();
        let vp = ev.eval(&phi, &env).unwrap();
        let vq = ev.eval(&psi, &env).unwrap();
        let and = parse("empty in name{empty: [0]} & empty = name{empty: [0 1]}").unwrap();
        assert_eq!(ev.eval(&and, &env).unwrap(), f.meet(vp, vq).unwrap());
        let or = parse("empty in name{empty: [0]} | empty = name{empty: [0 1]}").unwrap();
        assert_eq!(ev.eval(&or, &env).unwrap(), f.join(vp, vq).unwrap());
        let imp = parse("empty in name{empty: [0]} -> empty = name{empty: [0 1]}").unwrap();
        assert_eq!(ev.eval(&imp, &env).unwrap(), f.imp(vp, vq).unwrap());
        assert_eq!(ev.eval(&parse("bot").unwrap(), &env).unwrap(), f.bot());
    }

    #[test]
    fn lem_fails_in_base_and_holds_boolean() {
        let f = three_chain();
        let u = universe(&f, 2, 2);
        let env = Environment::new(Arc::clone(&u));
        let ev = Evaluator::new(Arc::clone(&f));
        let phi = parse("empty in name{empty: [0]} | ~(empty in name{empty: [0]})").unwrap();
        let base = ev.eval(&phi, &env).unwrap();
        assert_eq!(base, mid(&f), "base value is {{0}} ∨ ∅ = {{0}}");
        assert!(!f.is_top(base));
        let boolean = ev.eval_boolean(&phi, &env).unwrap();
        assert_eq!(boolean.bits(), f.top().bits());
    }

    #[test]
    fn peirce_is_not_top_on_the_three_chain() {
        let f = three_chain();
        let u = universe(&f, 1, 1);
        let env = Environment::new(Arc::clone(&u));
        let ev = Evaluator::new(Arc::clone(&f));
        let p = "empty in name{empty: [0]}";
        let peirce = parse(&alloc::format!("(({p} -> bot) -> {p}) -> {p}")).unwrap();
        let v = ev.eval(&peirce, &env).unwrap();
        // ((p → ⊥) → p) → p = ¬¬p → p = ⊤ → {0} = {0}.
        assert_eq!(v, mid(&f));
        assert!(!f.is_top(v));
    }

    #[test]
    fn boolean_values_are_stable() {
        let f = three_chain();
        let u = universe(&f, 2, 2);
        let env = Environment::new(Arc::clone(&u));
        let ev = Evaluator::new(Arc::clone(&f));
        for src in [
            "empty in name{empty: [0]}",
            "empty = name{empty: [0]}",
            "all x in name{empty: [0]}. x in name{empty: [0 1]}",
            "exists x in up(empty, empty). x = empty",
        ] {
            let phi = parse(src).unwrap();
            let v = ev.eval_boolean(&phi, &env).unwrap();
            let in_base = f.element(v.bits()).unwrap();
            assert_eq!(f.dn(in_base).unwrap(), in_base, "{src}");
        }
    }

    #[test]
    fn bounded_quantifier_clauses() {
        let f = three_chain();
        let u = universe(&f, 2, 2);
        let env = Environment::new(Arc::clone(&u));
        let ev = Evaluator::new(Arc::clone(&f));
        // b = name{∅̌: {0}}: ⟦∀x∈b. x ∈ b⟧ = {0} → ⟦∅̌∈b⟧ = {0} → {0} = ⊤.
        let all = parse("all x in name{empty: [0]}. x in name{empty: [0]}").unwrap();
        assert!(f.is_top(ev.eval(&all, &env).unwrap()));
        // ⟦∃x∈b. x = ∅̌⟧ = {0} ∧ ⊤ = {0}.
        let ex = parse("exists x in name{empty: [0]}. x = empty").unwrap();
        assert_eq!(ev.eval(&ex, &env).unwrap(), mid(&f));
    }

    #[test]
    fn unbounded_quantifiers_fold_over_the_universe() {
        let f = three_chain();
        let u = universe(&f, 1, 1);
        let env = Environment::new(Arc::clone(&u));
        let ev = Evaluator::new(Arc::clone(&f));
        assert!(f.is_top(ev.eval(&parse("exists y. y = empty").unwrap(), &env).unwrap()));
        // ⟦∀x. x = ∅̌⟧ meets ⟦name{∅̌:{0}} = ∅̌⟧ = ∅.
        assert_eq!(ev.eval(&parse("all x. x = empty").unwrap(), &env).unwrap(), f.bot());
    }

    #[test]
    fn relativized_matches_the_relativized_formula() {
        let f = three_chain();
        let u = universe(&f, 2, 2);
        let ev = Evaluator::new(Arc::clone(&f));
        let e = Name::empty();
        let a = Name::up(&f, &e, &e).unwrap();
        let env = Environment::new(Arc::clone(&u)).bind("a", a).unwrap();
        let (phi, _) = parse_open("exists y. y in a").unwrap();
        let sub = [e.clone()];
        let relativized = ev.eval_relativized(&phi, &sub, &env).unwrap();
        // Same thing spelled with the sub-universe name Ã = up(∅̌, ∅̌).
        let tilde = u.subuniverse_name(&sub).unwrap();
        let env2 = env.clone().bind("A", tilde).unwrap();
        let (syntactic, _) = parse_open("exists y in A. y in a").unwrap();
        assert_eq!(relativized, ev.eval(&syntactic, &env2).unwrap());
        assert!(f.is_top(relativized));
        // Full sub-universe = plain eval; bounded formulas never consult it.
        let all: Vec<Name> = u.names().to_vec();
        let psi = parse("exists y. y = up(empty, empty)").unwrap();
        assert_eq!(
            ev.eval_relativized(&psi, &all, &env).unwrap(),
            ev.eval(&psi, &env).unwrap()
        );
        let bounded = parse("all x in up(empty, empty). x = empty").unwrap();
        assert_eq!(
            ev.eval_relativized(&bounded, &sub, &env).unwrap(),
            ev.eval(&bounded, &env).unwrap()
        );
    }

    #[test]
    fn relativized_rejects_bad_subuniverses() {
        let f = three_chain();
        let u = universe(&f, 2, 2);
        let ev = Evaluator::new(Arc::clone(&f));
        let env = Environment::new(Arc::clone(&u));
        let phi = parse("exists y. y = empty").unwrap();
        // {name{∅̌: ⊤}} is listed but not closed under domains.
        let open_sub = [Name::from_entries(vec![(Name::empty(), f.top())]).unwrap()];
        assert!(matches!(
            ev.eval_relativized(&phi, &open_sub, &env),
            Err(EvalError::NotDomainClosed { .. })
        ));
        // ⊥-valued names are never enumerated, so this one is not listed.
        let stranger = Name::from_entries(vec![(Name::empty(), f.bot())]).unwrap();
        let not_listed = [Name::empty(), stranger.clone()];
        let not_listed_err = ev.eval_relativized(&phi, &not_listed, &env);
        assert!(matches!(
            not_listed_err,
            Err(EvalError::Name(NameError::NotListed { .. }))
        ));
    }

    #[test]
    fn pruned_names_are_extensionally_equal() {
        let f = three_chain();
        let u = universe(&f, 2, 2);
        let ev = Evaluator::new(Arc::clone(&f));
        let e = Name::empty();
        for n in u.names() {
            // Attach a ⊥-valued entry (and a ⊥-valued junk key) and check
            // the padded name still evaluates equal to the original.
            let junk = Name::from_entries(vec![(n.clone(), f.bot())]).unwrap();
            let mut entries = n.entries().to_vec();
            if n.value_of(&junk).is_none() {
                entries.push((junk, f.bot()));
            }
            let padded = Name::from_entries(entries).unwrap();
            assert_eq!(padded.prune_bottom(&f).unwrap(), *n);
            assert!(f.is_top(ev.eval_eq(&padded, n).unwrap()), "at {n:?}");
            let _ = e;
        }
    }

    #[test]
    fn cached_and_uncached_agree() {
        let f = three_chain();
        let u = universe(&f, 2, 2);
        let env = Environment::new(Arc::clone(&u));
        let cached = Evaluator::new(Arc::clone(&f));
        let uncached = Evaluator::uncached(Arc::clone(&f));
        for src in [
            "all x in name{empty: [0], up(empty, empty): [0 1]}. exists y in x. y = empty",
            "exists z. z = up(empty, empty)",
            "~empty in name{empty: [0]} | empty in name{empty: [0]}",
        ] {
            let phi = parse(src).unwrap();
            assert_eq!(
                cached.eval(&phi, &env).unwrap(),
                uncached.eval(&phi, &env).unwrap(),
                "{src}"
            );
        }
        // Every memo entry equals recomputation from scratch.
        let (eqs, mems) = cached.cache_entries();
        assert!(!eqs.is_empty() && !mems.is_empty());
        for ((a, b), v) in eqs {
            assert_eq!(uncached.eval_eq(&a, &b).unwrap(), v);
        }
        for ((a, b), v) in mems {
            assert_eq!(uncached.eval_mem(&a, &b).unwrap(), v);
        }
    }

    #[test]
    fn environment_rejects_foreign_names() {
        let f = three_chain();
        let g = three_chain();
        let u = universe(&f, 1, 1);
        let foreign = Name::from_entries(vec![(Name::empty(), g.top())]).unwrap();
        let err = Environment::new(Arc::clone(&u)).bind("a", foreign);
        assert!(matches!(err, Err(EvalError::Name(NameError::FrameMismatch { .. }))));
        let ev = Evaluator::new(Arc::clone(&g));
        let env = Environment::new(u);
        assert!(matches!(
            ev.eval(&parse("bot").unwrap(), &env),
            Err(EvalError::Name(NameError::FrameMismatch { .. }))
        ));
    }

    #[test]
    fn unresolved_variables_error() {
        let f = three_chain();
        let u = universe(&f, 1, 1);
        let env = Environment::new(u);
        let ev = Evaluator::new(f);
        let (phi, free) = parse_open("a = empty").unwrap();
        assert_eq!(free, alloc::vec!["a".to_string()]);
        assert!(matches!(
            ev.eval(&phi, &env),
            Err(EvalError::Unresolved { var }) if var == "a"
        ));
    }
}
