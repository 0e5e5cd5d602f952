//! The shipped `.topo` files must stay extensionally identical to the
//! built-in corpus: same atoms, same order, same cover relation.

use heytlab_cli::files::parse_topology;
use heytlab_core::topology::AtomSet;
use heytlab_core::{corpus, Ceilings};
use std::path::PathBuf;

fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.topo"))
}

#[test]
fn every_corpus_entry_has_a_matching_file() {
    let ceilings = Ceilings::default();
    for entry in corpus::STANDARD {
        let built = entry.topology();
        let src = std::fs::read_to_string(corpus_path(entry.name))
            .unwrap_or_else(|e| panic!("{}: {e}", entry.name));
        let parsed = parse_topology(&src, &ceilings)
            .unwrap_or_else(|e| panic!("{}: {e}", entry.name));

        assert_eq!(parsed.atom_names(), built.atom_names(), "{}: atoms", entry.name);
        let n = built.len();
        for a in 0..n {
            for b in 0..n {
                assert_eq!(
                    parsed.leq(a, b),
                    built.leq(a, b),
                    "{}: order at ({a}, {b})",
                    entry.name
                );
            }
        }
        for a in 0..n {
            for p in AtomSet::power(n) {
                assert_eq!(
                    parsed.covers(a, p),
                    built.covers(a, p),
                    "{}: cover at atom {a}, subset {p:?}",
                    entry.name
                );
            }
        }
        assert!(parsed.validate().is_valid(), "{}: file fails validation", entry.name);
    }
}

#[test]
fn no_stray_topology_files() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path().file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    names.sort();
    let mut expected: Vec<String> =
        corpus::STANDARD.iter().map(|e| e.name.to_string()).collect();
    expected.sort();
    assert_eq!(names, expected);
}
