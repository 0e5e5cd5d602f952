//! Plain-text input formats.
//!
//! Topology files:
//!
//! ```text
//! # comment
//! atoms: a b c
//! le: a<=c, b<=c
//! cover: downset
//! ```
//!
//! The `cover:` line either names a shorthand (`downset`, `discrete`) or is
//! left bare, in which case the following lines tabulate the relation, one
//! atom per line, listing every subset the atom is covered by:
//!
//! ```text
//! cover:
//! a: {a} {a c} {a b c}
//! b: {b} {b c} {a b c}
//! c: {a b c}
//! ```
//!
//! Rule files for the inductive engine: one rule per line, `X => a` with X a
//! comma-separated list of numeric atoms, possibly empty.

use heytlab_core::topology::{AtomSet, CoverSpec, FormalTopology, TopologyError};
use heytlab_core::Ceilings;
use std::fmt;

/// Input-file failures, split by exit-code class: malformed text is a usage
/// error, a busted ceiling is a resource refusal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FileError {
    Syntax { line: usize, msg: String },
    Ceiling { msg: String },
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FileError::Syntax { line, msg } => write!(f, "line {line}: {msg}"),
            FileError::Ceiling { msg } => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for FileError {}

fn syntax(line: usize, msg: impl Into<String>) -> FileError {
    FileError::Syntax { line, msg: msg.into() }
}

/// Content lines with their 1-based source line numbers; comments stripped.
fn content_lines(src: &str) -> Vec<(usize, &str)> {
    src.lines()
        .enumerate()
        .map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("").trim();
            (i + 1, body)
        })
        .filter(|(_, body)| !body.is_empty())
        .collect()
}

/// Strips `key:` from the front of a line, if present.
fn keyed<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(key)?;
    let rest = rest.trim_start();
    rest.strip_prefix(':').map(str::trim)
}

/// Parses a brace-delimited subset like `{a c}` against the atom list.
fn parse_subset(body: &str, atoms: &[String], line: usize) -> Result<AtomSet, FileError> {
    let mut set = AtomSet::EMPTY;
    for tok in body.split_whitespace() {
        match atoms.iter().position(|a| a == tok) {
            Some(i) => set.insert(i),
            None => return Err(syntax(line, format!("unknown atom `{tok}` in subset"))),
        }
    }
    Ok(set)
}

/// Splits a cover row value like `{a} {a c} {}` into subsets.
fn parse_subsets(value: &str, atoms: &[String], line: usize) -> Result<Vec<AtomSet>, FileError> {
    let mut out = Vec::new();
    let mut rest = value.trim();
    while !rest.is_empty() {
        let Some(open) = rest.strip_prefix('{') else {
            return Err(syntax(line, format!("expected `{{`, found `{rest}`")));
        };
        let Some(close) = open.find('}') else {
            return Err(syntax(line, "unterminated `{` in subset list"));
        };
        out.push(parse_subset(&open[..close], atoms, line)?);
        rest = open[close + 1..].trim_start();
    }
    Ok(out)
}

/// Parses a topology file and tabulates its cover. The result may still
/// violate the covering axioms; run `validate` to find out.
pub fn parse_topology(src: &str, ceilings: &Ceilings) -> Result<FormalTopology, FileError> {
    let lines = content_lines(src);
    let mut it = lines.iter().peekable();

    let Some(&(ln, first)) = it.next() else {
        return Err(syntax(1, "empty file; expected an `atoms:` line"));
    };
    let Some(atom_list) = keyed(first, "atoms") else {
        return Err(syntax(ln, "expected `atoms: ...` as the first entry"));
    };
    let atoms: Vec<String> = atom_list.split_whitespace().map(str::to_string).collect();
    if atoms.is_empty() {
        return Err(syntax(ln, "the atom list is empty"));
    }
    let atoms_line = ln;

    let mut le: Vec<(usize, usize)> = Vec::new();
    if let Some(&&(ln, line)) = it.peek() {
        if let Some(pairs) = keyed(line, "le") {
            it.next();
            for pair in pairs.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let Some((a, b)) = pair.split_once("<=") else {
                    return Err(syntax(ln, format!("expected `x<=y`, found `{pair}`")));
                };
                let index = |tok: &str| {
                    atoms
                        .iter()
                        .position(|x| x == tok.trim())
                        .ok_or_else(|| syntax(ln, format!("unknown atom `{}`", tok.trim())))
                };
                le.push((index(a)?, index(b)?));
            }
        }
    }

    let Some(&(ln, line)) = it.next() else {
        return Err(syntax(atoms_line, "missing `cover:` section"));
    };
    let Some(cover_value) = keyed(line, "cover") else {
        return Err(syntax(ln, format!("expected `cover:`, found `{line}`")));
    };

    fn build(
        atoms: &[String],
        le: &[(usize, usize)],
        spec: CoverSpec<'_>,
        ceilings: &Ceilings,
        atoms_line: usize,
    ) -> Result<FormalTopology, FileError> {
        FormalTopology::new(atoms.to_vec(), le, spec, ceilings).map_err(|e| match e {
            TopologyError::CarrierTooLarge { .. } => FileError::Ceiling { msg: e.to_string() },
            other => syntax(atoms_line, other.to_string()),
        })
    }

    match cover_value {
        "downset" => {
            if let Some(&&(ln, extra)) = it.peek() {
                return Err(syntax(ln, format!("unexpected content after shorthand: `{extra}`")));
            }
            build(&atoms, &le, CoverSpec::Downset, ceilings, atoms_line)
        }
        "discrete" => {
            if let Some(&&(ln, extra)) = it.peek() {
                return Err(syntax(ln, format!("unexpected content after shorthand: `{extra}`")));
            }
            build(&atoms, &le, CoverSpec::Discrete, ceilings, atoms_line)
        }
        "" => {
            let mut pairs: Vec<(usize, AtomSet)> = Vec::new();
            let mut seen = vec![false; atoms.len()];
            for &(ln, row) in it {
                let Some((name, value)) = row.split_once(':') else {
                    return Err(syntax(ln, format!("expected `atom: subsets`, found `{row}`")));
                };
                let name = name.trim();
                let Some(a) = atoms.iter().position(|x| x == name) else {
                    return Err(syntax(ln, format!("unknown atom `{name}` in cover row")));
                };
                if seen[a] {
                    return Err(syntax(ln, format!("duplicate cover row for `{name}`")));
                }
                seen[a] = true;
                for set in parse_subsets(value, &atoms, ln)? {
                    pairs.push((a, set));
                }
            }
            if let Some(a) = seen.iter().position(|s| !s) {
                return Err(syntax(ln, format!("no cover row for atom `{}`", atoms[a])));
            }
            build(&atoms, &le, CoverSpec::Pairs(&pairs), ceilings, atoms_line)
        }
        other => Err(syntax(ln, format!("unknown cover shorthand `{other}`"))),
    }
}

/// Parses a rule file into (premises, conclusion) pairs over numeric atoms.
pub fn parse_rules(src: &str) -> Result<Vec<(Vec<usize>, usize)>, FileError> {
    let mut rules = Vec::new();
    for (ln, line) in content_lines(src) {
        let Some((premises, conclusion)) = line.split_once("=>") else {
            return Err(syntax(ln, format!("expected `X => a`, found `{line}`")));
        };
        let atom = |tok: &str| -> Result<usize, FileError> {
            tok.parse().map_err(|_| syntax(ln, format!("atoms are numeric, found `{tok}`")))
        };
        let mut xs = Vec::new();
        for tok in premises.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            xs.push(atom(tok)?);
        }
        let c = conclusion.trim();
        if c.is_empty() {
            return Err(syntax(ln, "missing conclusion after `=>`"));
        }
        rules.push((xs, atom(c)?));
    }
    Ok(rules)
}
