//! One pipeline walk across the crate surface: topology from scratch,
//! frame, universe, evaluation in both semantics, and a filtered suite run.

use heytlab_core::eval::{Environment, Evaluator};
use heytlab_core::formula::parse;
use heytlab_core::frame::Frame;
use heytlab_core::name::NameUniverse;
use heytlab_core::suite::{run_all, SuiteConfig};
use heytlab_core::topology::{CoverSpec, FormalTopology};
use heytlab_core::Ceilings;
use std::sync::Arc;

#[test]
fn pipeline_from_poset_to_boolean_lem() {
    let ceilings = Ceilings::default();
    let topo = FormalTopology::new(
        vec!["lo".into(), "mid".into(), "hi".into()],
        &[(0, 1), (0, 2), (1, 2)],
        CoverSpec::Downset,
        &ceilings,
    )
    .expect("three atoms fit");
    assert!(topo.validate().is_valid());

    let frame = Arc::new(Frame::enumerate(&topo).expect("valid topology"));
    assert_eq!(frame.len(), 4);

    let universe = Arc::new(
        NameUniverse::enumerate(Arc::clone(&frame), 2, 1, &ceilings).expect("within bounds"),
    );
    let ev = Evaluator::new(Arc::clone(&frame));
    let env = Environment::new(Arc::clone(&universe));

    let lem = parse("empty in name{empty: [lo]} | ~empty in name{empty: [lo]}")
        .expect("closed formula");
    let base = ev.eval(&lem, &env).expect("closed");
    assert_eq!(frame.render(base), "[lo]");
    assert!(!frame.is_top(base));

    let boolean = ev.eval_boolean(&lem, &env).expect("closed");
    assert_eq!(boolean.bits(), topo.carrier());
}

#[test]
fn filtered_suite_run_is_green() {
    let cfg = SuiteConfig::default();
    let outcomes = run_all(&cfg, Some("name_universe"));
    assert!(!outcomes.is_empty());
    assert!(outcomes.iter().all(|o| o.passed()));
}
