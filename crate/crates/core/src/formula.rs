//! The forcing language: AST, parser, printer, and syntactic transforms.
//!
//! Surface syntax is ASCII (`all/exists/in/->/&/|/~/bot`) with unicode
//! aliases (∀ ∃ ∈ → ∧ ∨ ¬ ⊥). Grammar, tightest-binding last:
//!
//! ```text
//! formula := quant | impl
//! quant   := ("all" | "exists") IDENT ["in" term] "." formula
//! impl    := disj ["->" impl]
//! disj    := conj {"|" conj}
//! conj    := atom {"&" atom}
//! atom    := "bot" | term ("=" | "in") term | "~" atom | "(" formula ")"
//! term    := IDENT | name-literal
//! ```
//!
//! Negation is the derived form φ → ⊥; the printer writes it back as `~`.
//! Binders must be pairwise distinct along any path (shadowing is a scope
//! error) and [`parse`] additionally rejects free variables; [`parse_open`]
//! returns them for the caller to bind in an environment.
//!
//! Printing and parsing are mutually inverse on ASTs: `parse(φ.to_string())`
//! returns φ (a property test drives this over generated formulas).

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::hf::HfSet;
use crate::name::NameLiteral;

/// A term: a variable or a closed name literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(String),
    Literal(NameLiteral),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Literal(l) => write!(f, "{l}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Bot,
    Eq(Term, Term),
    Mem(Term, Term),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    /// all x in t. φ
    ForallIn(String, Term, Box<Formula>),
    /// exists x in t. φ
    ExistsIn(String, Term, Box<Formula>),
    /// all x. φ, ranging over the truncated universe.
    Forall(String, Box<Formula>),
    /// exists x. φ
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    /// ¬φ = φ → ⊥. A by-value constructor like the others, not `ops::Not`.
    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bot)
    }

    /// φ ↔ ψ as (φ → ψ) ∧ (ψ → φ).
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    /// True iff no unbounded quantifier occurs (the Δ₀ check).
    pub fn is_bounded(&self) -> bool {
        match self {
            Formula::Bot | Formula::Eq(..) | Formula::Mem(..) => true,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.is_bounded() && b.is_bounded()
            }
            Formula::ForallIn(_, _, body) | Formula::ExistsIn(_, _, body) => body.is_bounded(),
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    /// Free variables, sorted.
    pub fn free_vars(&self) -> BTreeSet<String> {
        fn go(f: &Formula, scope: &mut Vec<String>, out: &mut BTreeSet<String>) {
            let term = |t: &Term, scope: &Vec<String>, out: &mut BTreeSet<String>| {
                if let Term::Var(v) = t {
                    if !scope.contains(v) {
                        out.insert(v.clone());
                    }
                }
            };
            match f {
                Formula::Bot => {}
                Formula::Eq(a, b) | Formula::Mem(a, b) => {
                    term(a, scope, out);
                    term(b, scope, out);
                }
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                    go(a, scope, out);
                    go(b, scope, out);
                }
                Formula::ForallIn(x, t, body) | Formula::ExistsIn(x, t, body) => {
                    term(t, scope, out);
                    scope.push(x.clone());
                    go(body, scope, out);
                    scope.pop();
                }
                Formula::Forall(x, body) | Formula::Exists(x, body) => {
                    scope.push(x.clone());
                    go(body, scope, out);
                    scope.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Bounds every unbounded quantifier to the class symbol. Bounded
    /// quantifiers are untouched, so the map is idempotent.
    pub fn relativize(&self, class_symbol: &str) -> Formula {
        match self {
            Formula::Bot | Formula::Eq(..) | Formula::Mem(..) => self.clone(),
            Formula::And(a, b) => {
                Formula::and(a.relativize(class_symbol), b.relativize(class_symbol))
            }
            Formula::Or(a, b) => {
                Formula::or(a.relativize(class_symbol), b.relativize(class_symbol))
            }
            Formula::Imp(a, b) => {
                Formula::imp(a.relativize(class_symbol), b.relativize(class_symbol))
            }
            Formula::ForallIn(x, t, body) => Formula::ForallIn(
                x.clone(),
                t.clone(),
                Box::new(body.relativize(class_symbol)),
            ),
            Formula::ExistsIn(x, t, body) => Formula::ExistsIn(
                x.clone(),
                t.clone(),
                Box::new(body.relativize(class_symbol)),
            ),
            Formula::Forall(x, body) => Formula::ForallIn(
                x.clone(),
                Term::Var(class_symbol.to_string()),
                Box::new(body.relativize(class_symbol)),
            ),
            Formula::Exists(x, body) => Formula::ExistsIn(
                x.clone(),
                Term::Var(class_symbol.to_string()),
                Box::new(body.relativize(class_symbol)),
            ),
        }
    }

    /// Gödel–Gentzen translation: ¬¬ in front of atoms, ∨ and ∃; ∧, → and
    /// ∀ homomorphic; ⊥ is already negative.
    pub fn dn_translate(&self) -> Formula {
        let dn = |f: Formula| Formula::not(Formula::not(f));
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Eq(..) | Formula::Mem(..) => dn(self.clone()),
            Formula::And(a, b) => Formula::and(a.dn_translate(), b.dn_translate()),
            Formula::Or(a, b) => dn(Formula::or(a.dn_translate(), b.dn_translate())),
            Formula::Imp(a, b) => Formula::imp(a.dn_translate(), b.dn_translate()),
            Formula::ForallIn(x, t, body) => {
                Formula::ForallIn(x.clone(), t.clone(), Box::new(body.dn_translate()))
            }
            Formula::ExistsIn(x, t, body) => {
                dn(Formula::ExistsIn(x.clone(), t.clone(), Box::new(body.dn_translate())))
            }
            Formula::Forall(x, body) => Formula::Forall(x.clone(), Box::new(body.dn_translate())),
            Formula::Exists(x, body) => {
                dn(Formula::Exists(x.clone(), Box::new(body.dn_translate())))
            }
        }
    }

    /// Grammar level this node may be printed at without parentheses:
    /// 0 formula, 1 impl, 2 disj, 3 conj, 4 atom.
    fn level(&self) -> u8 {
        match self {
            Formula::Forall(..)
            | Formula::Exists(..)
            | Formula::ForallIn(..)
            | Formula::ExistsIn(..) => 0,
            Formula::Imp(_, b) if **b == Formula::Bot => 4,
            Formula::Imp(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Bot | Formula::Eq(..) | Formula::Mem(..) => 4,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        if self.level() < level {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Formula::Bot => write!(f, "bot"),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Mem(a, b) => write!(f, "{a} in {b}"),
            Formula::Imp(a, b) if **b == Formula::Bot => {
                write!(f, "~")?;
                a.fmt_at(f, 4)
            }
            Formula::Imp(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, " -> ")?;
                b.fmt_at(f, 1)
            }
            Formula::Or(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, " | ")?;
                b.fmt_at(f, 3)
            }
            Formula::And(a, b) => {
                a.fmt_at(f, 3)?;
                write!(f, " & ")?;
                b.fmt_at(f, 4)
            }
            Formula::ForallIn(x, t, body) => {
                write!(f, "all {x} in {t}. ")?;
                body.fmt_at(f, 0)
            }
            Formula::ExistsIn(x, t, body) => {
                write!(f, "exists {x} in {t}. ")?;
                body.fmt_at(f, 0)
            }
            Formula::Forall(x, body) => {
                write!(f, "all {x}. ")?;
                body.fmt_at(f, 0)
            }
            Formula::Exists(x, body) => {
                write!(f, "exists {x}. ")?;
                body.fmt_at(f, 0)
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// Parse or scope failure, with a 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: u32,
    pub col: u32,
    pub msg: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    All,
    Exists,
    In,
    Bot,
    Empty,
    Check,
    Up,
    Op,
    NameKw,
    Dot,
    Arrow,
    Amp,
    Pipe,
    Tilde,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Colon,
    Comma,
    Equals,
    Word(String),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Eof => String::from("end of input"),
            Tok::All => String::from("`all`"),
            Tok::Exists => String::from("`exists`"),
            Tok::In => String::from("`in`"),
            Tok::Bot => String::from("`bot`"),
            Tok::Empty => String::from("`empty`"),
            Tok::Check => String::from("`check`"),
            Tok::Up => String::from("`up`"),
            Tok::Op => String::from("`op`"),
            Tok::NameKw => String::from("`name`"),
            Tok::Dot => String::from("`.`"),
            Tok::Arrow => String::from("`->`"),
            Tok::Amp => String::from("`&`"),
            Tok::Pipe => String::from("`|`"),
            Tok::Tilde => String::from("`~`"),
            Tok::LParen => String::from("`(`"),
            Tok::RParen => String::from("`)`"),
            Tok::LBrace => String::from("`{`"),
            Tok::RBrace => String::from("`}`"),
            Tok::LBracket => String::from("`[`"),
            Tok::RBracket => String::from("`]`"),
            Tok::Colon => String::from("`:`"),
            Tok::Comma => String::from("`,`"),
            Tok::Equals => String::from("`=`"),
        }
    }
}

struct Token {
    tok: Tok,
    line: u32,
    col: u32,
}

fn lex(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    let mut line: u32 = 1;
    let mut col: u32 = 1;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut core::iter::Peekable<core::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        let push = |out: &mut Vec<Token>, tok: Tok| out.push(Token { tok, line: tline, col: tcol });
        match c {
            _ if c.is_whitespace() => {
                bump(&mut chars);
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
            }
            '.' => {
                bump(&mut chars);
                push(&mut out, Tok::Dot);
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    push(&mut out, Tok::Arrow);
                } else {
                    return Err(SyntaxError {
                        line: tline,
                        col: tcol,
                        msg: String::from("expected `->`"),
                    });
                }
            }
            '&' | '∧' => {
                bump(&mut chars);
                push(&mut out, Tok::Amp);
            }
            '|' | '∨' => {
                bump(&mut chars);
                push(&mut out, Tok::Pipe);
            }
            '~' | '¬' => {
                bump(&mut chars);
                push(&mut out, Tok::Tilde);
            }
            '(' => {
                bump(&mut chars);
                push(&mut out, Tok::LParen);
            }
            ')' => {
                bump(&mut chars);
                push(&mut out, Tok::RParen);
            }
            '{' => {
                bump(&mut chars);
                push(&mut out, Tok::LBrace);
            }
            '}' => {
                bump(&mut chars);
                push(&mut out, Tok::RBrace);
            }
            '[' => {
                bump(&mut chars);
                push(&mut out, Tok::LBracket);
            }
            ']' => {
                bump(&mut chars);
                push(&mut out, Tok::RBracket);
            }
            ':' => {
                bump(&mut chars);
                push(&mut out, Tok::Colon);
            }
            ',' => {
                bump(&mut chars);
                push(&mut out, Tok::Comma);
            }
            '=' => {
                bump(&mut chars);
                push(&mut out, Tok::Equals);
            }
            '→' => {
                bump(&mut chars);
                push(&mut out, Tok::Arrow);
            }
            '⊥' => {
                bump(&mut chars);
                push(&mut out, Tok::Bot);
            }
            '∀' => {
                bump(&mut chars);
                push(&mut out, Tok::All);
            }
            '∃' => {
                bump(&mut chars);
                push(&mut out, Tok::Exists);
            }
            '∈' => {
                bump(&mut chars);
                push(&mut out, Tok::In);
            }
            _ if c.is_alphanumeric() || c == '_' => {
                let mut word = String::new();
                while chars
                    .peek()
                    .is_some_and(|&c| c.is_alphanumeric() || c == '_')
                {
                    word.push(bump(&mut chars));
                }
                let tok = match word.as_str() {
                    "all" => Tok::All,
                    "exists" => Tok::Exists,
                    "in" => Tok::In,
                    "bot" => Tok::Bot,
                    "empty" => Tok::Empty,
                    "check" => Tok::Check,
                    "up" => Tok::Up,
                    "op" => Tok::Op,
                    "name" => Tok::NameKw,
                    _ => Tok::Word(word),
                };
                push(&mut out, tok);
            }
            _ => {
                return Err(SyntaxError {
                    line: tline,
                    col: tcol,
                    msg: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    scope: Vec<String>,
    free: BTreeSet<String>,
    allow_free: bool,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn here(&self) -> (u32, u32) {
        (self.tokens[self.pos].line, self.tokens[self.pos].col)
    }

    fn next(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: String) -> Result<T, SyntaxError> {
        let (line, col) = self.here();
        Err(SyntaxError { line, col, msg })
    }

    fn expect(&mut self, want: Tok) -> Result<(), SyntaxError> {
        if *self.peek() == want {
            self.next();
            Ok(())
        } else {
            self.err(format!("expected {}, found {}", want.describe(), self.peek().describe()))
        }
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Tok::All | Tok::Exists => self.quant(),
            _ => self.impl_(),
        }
    }

    fn binder(&mut self) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::Word(w) => {
                if !w.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_') {
                    return self.err(format!("invalid variable name `{w}`"));
                }
                if self.scope.contains(&w) {
                    return self.err(format!("variable `{w}` shadows an enclosing binder"));
                }
                self.next();
                Ok(w)
            }
            other => self.err(format!("expected a variable, found {}", other.describe())),
        }
    }

    fn quant(&mut self) -> Result<Formula, SyntaxError> {
        let universal = matches!(self.peek(), Tok::All);
        self.next();
        let var = self.binder()?;
        let bound = if matches!(self.peek(), Tok::In) {
            self.next();
            Some(self.term()?)
        } else {
            None
        };
        self.expect(Tok::Dot)?;
        self.scope.push(var.clone());
        let body = self.formula()?;
        self.scope.pop();
        let body = Box::new(body);
        Ok(match (universal, bound) {
            (true, Some(t)) => Formula::ForallIn(var, t, body),
            (false, Some(t)) => Formula::ExistsIn(var, t, body),
            (true, None) => Formula::Forall(var, body),
            (false, None) => Formula::Exists(var, body),
        })
    }

    fn impl_(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.disj()?;
        if matches!(self.peek(), Tok::Arrow) {
            self.next();
            let rhs = self.impl_()?;
            Ok(Formula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disj(&mut self) -> Result<Formula, SyntaxError> {
        let mut acc = self.conj()?;
        while matches!(self.peek(), Tok::Pipe) {
            self.next();
            acc = Formula::or(acc, self.conj()?);
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<Formula, SyntaxError> {
        let mut acc = self.atom()?;
        while matches!(self.peek(), Tok::Amp) {
            self.next();
            acc = Formula::and(acc, self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Tok::Bot => {
                self.next();
                Ok(Formula::Bot)
            }
            Tok::Tilde => {
                self.next();
                Ok(Formula::not(self.atom()?))
            }
            Tok::LParen => {
                self.next();
                let inner = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => {
                let lhs = self.term()?;
                match self.next() {
                    Tok::Equals => Ok(Formula::Eq(lhs, self.term()?)),
                    Tok::In => Ok(Formula::Mem(lhs, self.term()?)),
                    other => {
                        self.pos -= 1;
                        self.err(format!("expected `=` or `in`, found {}", other.describe()))
                    }
                }
            }
        }
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        match self.peek() {
            Tok::Word(w) => {
                let w = w.clone();
                if !w.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_') {
                    return self.err(format!("invalid variable name `{w}`"));
                }
                if !self.scope.contains(&w) {
                    if self.allow_free {
                        self.free.insert(w.clone());
                    } else {
                        return self.err(format!("unbound variable `{w}`"));
                    }
                }
                self.next();
                Ok(Term::Var(w))
            }
            _ => Ok(Term::Literal(self.name_literal()?)),
        }
    }

    fn name_literal(&mut self) -> Result<NameLiteral, SyntaxError> {
        match self.peek().clone() {
            Tok::Empty => {
                self.next();
                Ok(NameLiteral::Empty)
            }
            Tok::Check => {
                self.next();
                self.expect(Tok::LParen)?;
                let hf = self.hf_literal()?;
                self.expect(Tok::RParen)?;
                Ok(NameLiteral::Check(hf))
            }
            Tok::Up | Tok::Op => {
                let is_up = matches!(self.peek(), Tok::Up);
                self.next();
                self.expect(Tok::LParen)?;
                let a = self.name_literal()?;
                self.expect(Tok::Comma)?;
                let b = self.name_literal()?;
                self.expect(Tok::RParen)?;
                Ok(if is_up {
                    NameLiteral::Up(Box::new(a), Box::new(b))
                } else {
                    NameLiteral::Op(Box::new(a), Box::new(b))
                })
            }
            Tok::NameKw => {
                self.next();
                self.expect(Tok::LBrace)?;
                let mut entries = Vec::new();
                if !matches!(self.peek(), Tok::RBrace) {
                    loop {
                        let key = self.name_literal()?;
                        self.expect(Tok::Colon)?;
                        self.expect(Tok::LBracket)?;
                        let mut atoms = Vec::new();
                        while let Tok::Word(w) = self.peek() {
                            atoms.push(w.clone());
                            self.next();
                        }
                        self.expect(Tok::RBracket)?;
                        entries.push((key, atoms));
                        if matches!(self.peek(), Tok::Comma) {
                            self.next();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Tok::RBrace)?;
                Ok(NameLiteral::Explicit(entries))
            }
            other => self.err(format!("expected a term, found {}", other.describe())),
        }
    }

    fn hf_literal(&mut self) -> Result<HfSet, SyntaxError> {
        self.expect(Tok::LBrace)?;
        let mut elems = Vec::new();
        if !matches!(self.peek(), Tok::RBrace) {
            loop {
                elems.push(self.hf_literal()?);
                if matches!(self.peek(), Tok::Comma) {
                    self.next();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(HfSet::from_vec(elems))
    }
}

fn run_parser(src: &str, allow_free: bool) -> Result<(Formula, Vec<String>), SyntaxError> {
    let tokens = lex(src)?;
    let mut p = Parser { tokens, pos: 0, scope: Vec::new(), free: BTreeSet::new(), allow_free };
    let formula = p.formula()?;
    if !matches!(p.peek(), Tok::Eof) {
        return p.err(format!("trailing input: {}", p.peek().describe()));
    }
    Ok((formula, p.free.into_iter().collect()))
}

/// Parses a closed sentence; free variables are scope errors.
pub fn parse(src: &str) -> Result<Formula, SyntaxError> {
    run_parser(src, false).map(|(f, _)| f)
}

/// Parses a formula possibly containing free variables, returned sorted.
pub fn parse_open(src: &str) -> Result<(Formula, Vec<String>), SyntaxError> {
    run_parser(src, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(src: &str) -> Formula {
        parse(src).unwrap()
    }

    #[test]
    fn grammar_shapes() {
        let f = p("all x in empty. (x = empty -> bot)");
        match &f {
            Formula::ForallIn(x, Term::Literal(NameLiteral::Empty), body) => {
                assert_eq!(x, "x");
                assert!(matches!(**body, Formula::Imp(..)));
            }
            other => panic!("unexpected shape {other:?}"),
        }
        assert_eq!(p("exists y. y in empty"), {
            Formula::Exists(
                "y".into(),
                Box::new(Formula::Mem(Term::Var("y".into()), Term::Literal(NameLiteral::Empty))),
            )
        });
        // Derived negation and precedence: ~ binds before &, & before |,
        // | before ->, -> is right-associative.
        let f = p("empty in empty & ~(empty = empty) | bot -> bot -> bot");
        assert_eq!(
            f,
            Formula::imp(
                Formula::or(
                    Formula::and(
                        Formula::Mem(
                            Term::Literal(NameLiteral::Empty),
                            Term::Literal(NameLiteral::Empty)
                        ),
                        Formula::not(Formula::Eq(
                            Term::Literal(NameLiteral::Empty),
                            Term::Literal(NameLiteral::Empty)
                        )),
                    ),
                    Formula::Bot,
                ),
                Formula::imp(Formula::Bot, Formula::Bot),
            )
        );
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(p("∀x. ¬(x ∈ empty) ∨ ⊥"), p("all x. ~(x in empty) | bot"));
        assert_eq!(p("∃y. y = empty → ⊥ ∧ ⊥"), p("exists y. y = empty -> bot & bot"));
    }

    #[test]
    fn literals_parse() {
        let f = p("check({{},{{}}}) = up(empty, op(empty, check({})))");
        match f {
            Formula::Eq(Term::Literal(a), Term::Literal(b)) => {
                assert_eq!(a, NameLiteral::Check(HfSet::ordinal(2)));
                assert_eq!(
                    b,
                    NameLiteral::Up(
                        Box::new(NameLiteral::Empty),
                        Box::new(NameLiteral::Op(
                            Box::new(NameLiteral::Empty),
                            Box::new(NameLiteral::Check(HfSet::empty())),
                        )),
                    )
                );
            }
            other => panic!("unexpected shape {other:?}"),
        }
        let f = p("name{empty: [0 1], name{}: [0]} = empty");
        match f {
            Formula::Eq(Term::Literal(NameLiteral::Explicit(entries)), _) => {
                assert_eq!(entries.len(), 2);
                assert_eq!(entries[0], (NameLiteral::Empty, vec!["0".into(), "1".into()]));
                assert_eq!(entries[1], (NameLiteral::Explicit(Vec::new()), vec!["0".into()]));
            }
            other => panic!("unexpected shape {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse("all x in empty.\n  x =").unwrap_err();
        assert_eq!((err.line, err.col), (2, 6));
        let err = parse("x = empty").unwrap_err();
        assert!(err.msg.contains("unbound variable `x`"));
        assert_eq!((err.line, err.col), (1, 1));
        let err = parse("all x. all x. bot").unwrap_err();
        assert!(err.msg.contains("shadows"));
        assert_eq!((err.line, err.col), (1, 12));
        let err = parse("all x. x = x )").unwrap_err();
        assert!(err.msg.contains("trailing"));
    }

    #[test]
    fn parse_open_reports_free_variables() {
        let (f, free) = parse_open("a in b & ~(a = b)").unwrap();
        assert_eq!(free, vec!["a".to_string(), "b".to_string()]);
        assert!(f.is_bounded());
        assert_eq!(parse_open("all x. x = x").unwrap().1, Vec::<String>::new());
    }

    #[test]
    fn boundedness() {
        assert!(p("all x in empty. x in empty").is_bounded());
        assert!(!p("exists y. y in empty").is_bounded());
        assert!(p("bot").is_bounded());
        assert!(!p("all x in empty. exists y. y in x").is_bounded());
    }

    #[test]
    fn relativize_bounds_every_unbounded_quantifier() {
        let (f, _) = parse_open("exists y. y in a").unwrap();
        let rel = f.relativize("A");
        assert_eq!(rel, parse_open("exists y in A. y in a").unwrap().0);
        assert!(rel.free_vars().contains("A"));
        let bounded = p("all x in empty. x = empty");
        assert_eq!(bounded.relativize("A"), bounded);
        let nested = p("all x. exists y. x = y");
        let rel = nested.relativize("A");
        assert_eq!(rel, parse_open("all x in A. exists y in A. x = y").unwrap().0);
        assert!(rel.is_bounded());
        assert_eq!(rel.relativize("A"), rel);
    }

    #[test]
    fn dn_translate_shapes() {
        assert_eq!(
            parse_open("a in b").unwrap().0.dn_translate(),
            parse_open("~~a in b").unwrap().0
        );
        assert_eq!(
            parse_open("a = a | b = b").unwrap().0.dn_translate(),
            parse_open("~~(~~a = a | ~~b = b)").unwrap().0
        );
        assert_eq!(p("bot").dn_translate(), p("bot"));
        assert_eq!(
            p("all x in empty. x = x -> bot").dn_translate(),
            p("all x in empty. ~~x = x -> bot")
        );
        assert_eq!(
            p("exists y. y = y").dn_translate(),
            p("~~(exists y. ~~y = y)")
        );
        let f = parse_open("a in b").unwrap().0;
        assert!(f.dn_translate().is_bounded());
    }

    #[test]
    fn display_round_trips_spec_examples() {
        for src in [
            "all x in empty. (x = empty -> bot)",
            "exists y. y in empty",
            "~~(empty in empty | ~empty = empty)",
            "(bot -> bot) -> bot | bot & ~bot",
            "all x. exists y in x. (y = x | bot) & x in y",
            "check({{}}) in name{empty: [0], up(empty, empty): [0 1]}",
        ] {
            let ast = parse(src).unwrap();
            assert_eq!(parse(&ast.to_string()).unwrap(), ast, "through `{src}`");
        }
    }

    #[test]
    fn free_vars_excludes_bound() {
        let (f, _) = parse_open("all x in a. x in b").unwrap();
        let free = f.free_vars();
        assert!(free.contains("a") && free.contains("b") && !free.contains("x"));
    }

    mod prop {
        use super::*;
        use proptest::prelude::*;

        /// Deterministically decodes a byte budget into a closed,
        /// shadowing-free formula; every AST shape is reachable.
        struct Builder<'a> {
            bytes: &'a [u8],
            pos: usize,
            fresh: u32,
        }

        impl<'a> Builder<'a> {
            fn next(&mut self) -> u8 {
                let b = self.bytes.get(self.pos).copied().unwrap_or(0);
                self.pos += 1;
                b
            }

            fn formula(&mut self, depth: u8, scope: &mut Vec<String>) -> Formula {
                let choice = if depth == 0 { self.next() % 3 } else { self.next() % 9 };
                match choice {
                    0 => Formula::Bot,
                    1 => Formula::Eq(self.term(scope), self.term(scope)),
                    2 => Formula::Mem(self.term(scope), self.term(scope)),
                    3 => Formula::and(
                        self.formula(depth - 1, scope),
                        self.formula(depth - 1, scope),
                    ),
                    4 => Formula::or(
                        self.formula(depth - 1, scope),
                        self.formula(depth - 1, scope),
                    ),
                    5 => Formula::imp(
                        self.formula(depth - 1, scope),
                        self.formula(depth - 1, scope),
                    ),
                    _ => {
                        self.fresh += 1;
                        let var = alloc::format!("v{}", self.fresh);
                        let bound =
                            if choice < 8 { Some(self.term(scope)) } else { None };
                        scope.push(var.clone());
                        let body = Box::new(self.formula(depth - 1, scope));
                        scope.pop();
                        match (choice, bound) {
                            (6, Some(t)) => Formula::ForallIn(var, t, body),
                            (7, Some(t)) => Formula::ExistsIn(var, t, body),
                            _ => {
                                if self.next().is_multiple_of(2) {
                                    Formula::Forall(var, body)
                                } else {
                                    Formula::Exists(var, body)
                                }
                            }
                        }
                    }
                }
            }

            fn term(&mut self, scope: &[String]) -> Term {
                if !scope.is_empty() && self.next().is_multiple_of(2) {
                    let i = self.next() as usize % scope.len();
                    Term::Var(scope[i].clone())
                } else {
                    Term::Literal(self.literal(2))
                }
            }

            fn literal(&mut self, depth: u8) -> NameLiteral {
                let choice = if depth == 0 { self.next() % 2 } else { self.next() % 5 };
                match choice {
                    0 => NameLiteral::Empty,
                    1 => NameLiteral::Check(HfSet::ordinal(self.next() as usize % 3)),
                    2 => NameLiteral::Up(
                        Box::new(self.literal(depth - 1)),
                        Box::new(self.literal(depth - 1)),
                    ),
                    3 => NameLiteral::Op(
                        Box::new(self.literal(depth - 1)),
                        Box::new(self.literal(depth - 1)),
                    ),
                    _ => {
                        let n = self.next() as usize % 3;
                        let atoms = ["0", "1"];
                        let entries = (0..n)
                            .map(|_| {
                                let key = self.literal(depth - 1);
                                let k = self.next() as usize % 3;
                                let names =
                                    (0..k).map(|i| atoms[i % 2].into()).collect();
                                (key, names)
                            })
                            .collect();
                        NameLiteral::Explicit(entries)
                    }
                }
            }
        }

        proptest! {
            #[test]
            fn print_then_parse_is_identity(bytes in proptest::collection::vec(any::<u8>(), 0..96)) {
                let mut b = Builder { bytes: &bytes, pos: 0, fresh: 0 };
                let ast = b.formula(3, &mut Vec::new());
                let printed = ast.to_string();
                let reparsed = parse(&printed);
                prop_assert_eq!(reparsed.as_ref().ok(), Some(&ast), "printed `{}`", printed);
            }

            #[test]
            fn relativized_output_is_bounded(bytes in proptest::collection::vec(any::<u8>(), 0..96)) {
                let mut b = Builder { bytes: &bytes, pos: 0, fresh: 0 };
                let ast = b.formula(3, &mut Vec::new());
                let rel = ast.relativize("A");
                prop_assert!(rel.is_bounded());
                prop_assert_eq!(rel.relativize("A"), rel.clone());
                if ast.is_bounded() {
                    prop_assert_eq!(rel, ast);
                }
            }

            #[test]
            fn dn_translate_preserves_boundedness(bytes in proptest::collection::vec(any::<u8>(), 0..96)) {
                let mut b = Builder { bytes: &bytes, pos: 0, fresh: 0 };
                let ast = b.formula(3, &mut Vec::new());
                prop_assert_eq!(ast.dn_translate().is_bounded(), ast.is_bounded());
                // The translation also round-trips through the printer.
                let dn = ast.dn_translate();
                prop_assert_eq!(parse(&dn.to_string()).ok(), Some(dn));
            }
        }
    }
}
