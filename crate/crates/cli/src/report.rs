//! Report rendering. Every JSON document is built from `serde_json` maps,
//! which serialize with sorted keys; list orders are fixed by the owning
//! enumeration. Identical inputs therefore render byte-identically.

use heytlab_core::frame::{Frame, FrameElement};
use heytlab_core::hf::{CensusRow, PairingClosure, RegularVerdict};
use heytlab_core::inductive::{subset_elements, InductiveDefinition};
use heytlab_core::name::NameUniverse;
use heytlab_core::suite::SuiteOutcome;
use heytlab_core::topology::{AtomSet, FormalTopology, ValidationReport};
use serde_json::{json, Value};
use std::fmt::Write;

/// Atom names of a subset, in index order.
pub fn atom_list(topo: &FormalTopology, set: AtomSet) -> Value {
    Value::Array(set.iter().map(|i| json!(topo.atom_names()[i])).collect())
}

fn render_set(topo: &FormalTopology, set: AtomSet) -> String {
    let mut s = String::from("{");
    for (k, i) in set.iter().enumerate() {
        if k > 0 {
            s.push(' ');
        }
        s.push_str(&topo.atom_names()[i]);
    }
    s.push('}');
    s
}

pub fn topology_json(topo: &FormalTopology, report: &ValidationReport) -> Value {
    json!({
        "atoms": topo.atom_names(),
        "valid": report.is_valid(),
        "violations": topo.describe(report),
    })
}

pub fn topology_md(topo: &FormalTopology, report: &ValidationReport) -> String {
    let mut out = String::from("# topology\n\n");
    let _ = writeln!(out, "atoms: {}", topo.atom_names().join(" "));
    let _ = writeln!(out, "valid: {}", report.is_valid());
    for line in topo.describe(report) {
        let _ = writeln!(out, "- {line}");
    }
    out
}

/// Index of an element in the frame's enumeration order.
fn element_index(order: &[FrameElement], e: FrameElement) -> usize {
    order.iter().position(|x| *x == e).expect("element is in its own frame")
}

pub fn frame_json(frame: &Frame) -> Value {
    let topo = frame.topology();
    let order: Vec<FrameElement> = frame.elements().collect();
    let table = |op: &dyn Fn(FrameElement, FrameElement) -> FrameElement| -> Value {
        Value::Array(
            order
                .iter()
                .map(|&a| {
                    Value::Array(
                        order
                            .iter()
                            .map(|&b| json!(element_index(&order, op(a, b))))
                            .collect(),
                    )
                })
                .collect(),
        )
    };
    json!({
        "atoms": topo.atom_names(),
        "elements": order.iter().map(|e| atom_list(topo, e.bits())).collect::<Vec<_>>(),
        "top": json!(element_index(&order, frame.top())),
        "bot": json!(element_index(&order, frame.bot())),
        "boolean": frame.is_boolean(),
        "generators": frame
            .generators()
            .iter()
            .map(|&g| json!(element_index(&order, g)))
            .collect::<Vec<_>>(),
        "tables": {
            "meet": table(&|a, b| frame.meet(a, b).expect("same frame")),
            "join": table(&|a, b| frame.join(a, b).expect("same frame")),
            "imp": table(&|a, b| frame.imp(a, b).expect("same frame")),
        },
    })
}

pub fn frame_md(frame: &Frame) -> String {
    let topo = frame.topology();
    let mut out = String::from("# frame\n\n");
    let _ = writeln!(out, "atoms: {}", topo.atom_names().join(" "));
    let _ = writeln!(out, "elements: {}", frame.len());
    let _ = writeln!(out, "boolean: {}", frame.is_boolean());
    for e in frame.elements() {
        let marker = if frame.is_top(e) {
            " (top)"
        } else if e == frame.bot() {
            " (bot)"
        } else {
            ""
        };
        let _ = writeln!(out, "- {}{marker}", render_set(topo, e.bits()));
    }
    let _ = writeln!(out, "\ngenerators:");
    for g in frame.generators() {
        let _ = writeln!(out, "- {}", render_set(topo, g.bits()));
    }
    out
}

pub fn names_json(universe: &NameUniverse) -> Value {
    let frame = universe.frame();
    json!({
        "rank": universe.max_rank(),
        "width": universe.max_width(),
        "count": universe.len(),
        "names": universe
            .names()
            .iter()
            .map(|n| json!(n.render(frame).expect("universe names render")))
            .collect::<Vec<_>>(),
    })
}

pub fn names_md(universe: &NameUniverse) -> String {
    let frame = universe.frame();
    let mut out = String::from("# names\n\n");
    let _ = writeln!(
        out,
        "rank <= {}, width <= {}, {} names",
        universe.max_rank(),
        universe.max_width(),
        universe.len()
    );
    for n in universe.names() {
        let _ = writeln!(out, "- {}", n.render(frame).expect("universe names render"));
    }
    out
}

/// The one record `eval` emits. `bounded` controls the truncation label
/// required for unbounded-quantifier evaluations.
pub struct EvalRecord<'a> {
    pub formula: &'a str,
    pub frame_label: &'a str,
    pub mode: &'a str,
    pub topo: &'a FormalTopology,
    pub value: AtomSet,
    pub is_top: bool,
    pub rank: u32,
    pub width: usize,
    pub bounded: bool,
}

pub fn eval_json(r: &EvalRecord<'_>) -> Value {
    let mut doc = json!({
        "formula": r.formula,
        "frame": r.frame_label,
        "mode": r.mode,
        "value": atom_list(r.topo, r.value),
        "is_top": r.is_top,
        "truncation": { "rank": r.rank, "width": r.width },
    });
    if !r.bounded {
        doc.as_object_mut()
            .expect("record is an object")
            .insert("note".into(), json!(format!("truncated at rank {}", r.rank)));
    }
    doc
}

pub fn eval_md(r: &EvalRecord<'_>) -> String {
    let mut out = String::from("# eval\n\n");
    let _ = writeln!(out, "formula: {}", r.formula);
    let _ = writeln!(out, "frame: {}", r.frame_label);
    let _ = writeln!(out, "mode: {}", r.mode);
    let _ = writeln!(out, "value: {}", render_set(r.topo, r.value));
    let _ = writeln!(out, "is_top: {}", r.is_top);
    if !r.bounded {
        let _ = writeln!(out, "truncated at rank {} (width {})", r.rank, r.width);
    }
    out
}

fn verdict_witnesses(row: &CensusRow) -> Vec<String> {
    let mut out = Vec::new();
    match &row.report.regular {
        RegularVerdict::Regular => {}
        RegularVerdict::NotTransitive { witness } => {
            out.push(format!("not transitive: member {witness} is not a subset"));
        }
        RegularVerdict::NoBound { a, r } => {
            let pairs: Vec<String> =
                r.iter().map(|(x, y)| format!("({x},{y})")).collect();
            out.push(format!("no bound for a = {a} under R = [{}]", pairs.join(", ")));
        }
        RegularVerdict::Ceiling { a, bits } => {
            out.push(format!("relation search hit the ceiling at a = {a} ({bits} bits)"));
        }
    }
    if let PairingClosure::Violated { x, y } = &row.pairing {
        out.push(format!("pairing closure violated at x = {x}, y = {y}"));
    }
    out
}

pub fn census_json(rows: &[CensusRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|row| {
                json!({
                    "set": row.set.to_string(),
                    "transitive": row.set.is_transitive(),
                    "regular": row.report.regular.is_regular(),
                    "union_regular": row.report.union_regular(),
                    "bcst_regular": row.report.bcst_regular(),
                    "witnesses": verdict_witnesses(row),
                })
            })
            .collect(),
    )
}

pub fn census_md(rows: &[CensusRow]) -> String {
    let mut out = String::from("# census\n\n");
    out.push_str("| set | transitive | regular | union_regular | bcst_regular | witnesses |\n");
    out.push_str("|---|---|---|---|---|---|\n");
    for row in rows {
        let _ = writeln!(
            out,
            "| `{}` | {} | {} | {} | {} | {} |",
            row.set,
            row.set.is_transitive(),
            row.report.regular.is_regular(),
            row.report.union_regular(),
            row.report.bcst_regular(),
            verdict_witnesses(row).join("; ")
        );
    }
    let _ = writeln!(out, "\n{} rows", rows.len());
    out
}

pub fn inductive_json(def: &InductiveDefinition, stages: &[u64]) -> Value {
    json!({
        "universe": def.universe(),
        "rules": def
            .rules()
            .iter()
            .map(|r| json!({ "premises": subset_elements(r.premises), "conclusion": r.conclusion }))
            .collect::<Vec<_>>(),
        "fixed_point": subset_elements(def.least_fixed_point()),
        "stages": stages.iter().map(|&s| json!(subset_elements(s))).collect::<Vec<_>>(),
        "stabilization": def.stabilization_index(),
        "minimal": def.minimality_counterexample().is_none(),
    })
}

pub fn inductive_md(def: &InductiveDefinition, stages: &[u64]) -> String {
    let mut out = String::from("# inductive\n\n");
    let _ = writeln!(out, "universe: 0..{}", def.universe());
    let fmt_set = |m: u64| {
        let elems = subset_elements(m);
        let strs: Vec<String> = elems.iter().map(|x| x.to_string()).collect();
        format!("{{{}}}", strs.join(" "))
    };
    for r in def.rules() {
        let prem: Vec<String> =
            subset_elements(r.premises).iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "- {} => {}", prem.join(", "), r.conclusion);
    }
    let _ = writeln!(out, "\nfixed point: {}", fmt_set(def.least_fixed_point()));
    let _ = writeln!(out, "stabilizes at stage {}", def.stabilization_index());
    let _ = writeln!(out, "minimal: {}", def.minimality_counterexample().is_none());
    for (i, &s) in stages.iter().enumerate() {
        let _ = writeln!(out, "- stage {i}: {}", fmt_set(s));
    }
    out
}

pub fn suite_json(outcomes: &[SuiteOutcome], seed: u64) -> Value {
    json!({
        "seed": seed,
        "passed": outcomes.iter().all(SuiteOutcome::passed),
        "suites": outcomes
            .iter()
            .map(|o| {
                json!({
                    "name": o.suite,
                    "checks": o.checks,
                    "failures": o.failures,
                    "passed": o.passed(),
                    "messages": o.messages,
                })
            })
            .collect::<Vec<_>>(),
    })
}

pub fn suite_md(outcomes: &[SuiteOutcome], seed: u64) -> String {
    let mut out = String::from("# suite\n\n");
    let _ = writeln!(out, "seed: {seed}");
    for o in outcomes {
        let status = if o.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(out, "- {}: {status} ({} checks, {} failures)", o.suite, o.checks, o.failures);
        for m in &o.messages {
            let _ = writeln!(out, "  - {m}");
        }
    }
    let verdict = if outcomes.iter().all(SuiteOutcome::passed) { "pass" } else { "FAIL" };
    let _ = writeln!(out, "\nresult: {verdict}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use heytlab_core::corpus;

    #[test]
    fn frame_tables_are_square_and_closed() {
        let topo = corpus::by_name("diamond").unwrap();
        let frame = Frame::enumerate(&topo).unwrap();
        let doc = frame_json(&frame);
        let n = doc["elements"].as_array().unwrap().len();
        for op in ["meet", "join", "imp"] {
            let table = doc["tables"][op].as_array().unwrap();
            assert_eq!(table.len(), n);
            for row in table {
                let row = row.as_array().unwrap();
                assert_eq!(row.len(), n);
                assert!(row.iter().all(|v| (v.as_u64().unwrap() as usize) < n));
            }
        }
        assert!((doc["top"].as_u64().unwrap() as usize) < n);
        assert!((doc["bot"].as_u64().unwrap() as usize) < n);
    }

    #[test]
    fn eval_record_labels_unbounded_runs() {
        let topo = corpus::by_name("chain2").unwrap();
        let record = EvalRecord {
            formula: "all x. x = x",
            frame_label: "chain2",
            mode: "base",
            topo: &topo,
            value: topo.carrier(),
            is_top: true,
            rank: 2,
            width: 1,
            bounded: false,
        };
        let doc = eval_json(&record);
        assert_eq!(doc["note"], "truncated at rank 2");
        assert!(eval_md(&record).contains("truncated at rank 2"));
        let bounded = EvalRecord { bounded: true, ..record };
        assert!(eval_json(&bounded).get("note").is_none());
    }
}
