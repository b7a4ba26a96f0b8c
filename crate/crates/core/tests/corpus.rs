use std::path::PathBuf;

use kekule::bench::{cmd_stats, load_gr_dir, load_smiles_corpus};
use kekule::count::{count_perfect_matchings, run_all};
use kekule::decomposition::min_fill_nice;
use kekule::oracle::oracle_counts;
use kekule::smiles::{load_corpus, parse_smiles};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

#[test]
fn every_bundled_molecule_parses() {
    let corpus = load_corpus(data("corpus.smi")).unwrap();
    assert!(corpus.rejects.is_empty(), "{:?}", corpus.rejects);
    assert_eq!(corpus.molecules.len(), 100);
    for entry in &corpus.molecules {
        assert!(entry.molecule.graph.is_connected(), "{:?}", entry.molecule.name);
    }
}

#[test]
fn bond_orders_do_not_matter() {
    let corpus = load_corpus(data("corpus.smi")).unwrap();
    for entry in &corpus.molecules {
        let plain: String = entry.molecule.source.chars().filter(|c| !"=#".contains(*c)).collect();
        assert_eq!(parse_smiles(&plain).unwrap().graph, entry.molecule.graph, "{plain}");
    }
}

#[test]
fn known_kekule_counts() {
    let expected = [
        ("benzene", 2u32),
        ("naphthalene", 3),
        ("anthracene", 4),
        ("phenanthrene", 5),
        ("tetracene", 5),
        ("pyrene", 6),
        ("triphenylene", 9),
        ("perylene", 9),
        ("coronene", 20),
        ("cubane", 9),
    ];
    let corpus = load_corpus(data("corpus.smi")).unwrap();
    for (name, count) in expected {
        let g = &corpus
            .molecules
            .iter()
            .find(|e| e.molecule.name.as_deref() == Some(name))
            .unwrap()
            .molecule
            .graph;
        assert_eq!(count_perfect_matchings(g, &min_fill_nice(g)).unwrap(), count.into(), "{name}");
    }
}

#[test]
fn small_molecules_match_the_oracle() {
    let corpus = load_corpus(data("corpus.smi")).unwrap();
    let mut checked = 0;
    for entry in &corpus.molecules {
        let g = &entry.molecule.graph;
        let Ok(oracle) = oracle_counts(g) else { continue };
        let report = run_all(g, &min_fill_nice(g)).unwrap();
        assert_eq!(report.perfect_matchings, oracle.perfect_matchings);
        assert_eq!(report.matching_poly, oracle.matching_poly);
        assert_eq!(report.independence_poly, oracle.independence_poly);
        checked += 1;
    }
    assert!(checked >= 80, "only {checked} molecules within the oracle cap");
}

#[test]
fn stats_account_for_every_line() {
    let text = "C1CCCCC1\tcyclohexane\n# comment\n\nC[NH4+]\tammonium\nCC\nC*C\n";
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mini.smi");
    std::fs::write(&path, text).unwrap();
    let (instances, rejects) = load_smiles_corpus(&path).unwrap();
    assert_eq!(instances.len() + rejects.len(), 4);
    let report = cmd_stats(&instances, rejects.len(), 1);
    assert_eq!(report.histogram.values().sum::<usize>(), report.accepted);
    assert_eq!(report.accepted, 2);
    assert_eq!(report.rejected, 2);
    assert_eq!(instances[1].id, "line5");
}

#[test]
fn synthetic_graphs_are_wide() {
    let instances = load_gr_dir(&data("synthetic")).unwrap();
    assert_eq!(instances.len(), 6);
    for inst in &instances {
        let width = min_fill_nice(&inst.graph).width();
        assert!(width >= 4, "{}: {width}", inst.id);
        let report = run_all(&inst.graph, &min_fill_nice(&inst.graph)).unwrap();
        assert_eq!(report.matching_poly.total(), report.hosoya);
    }
    let k6 = instances.iter().find(|i| i.id == "k6").unwrap();
    assert_eq!(count_perfect_matchings(&k6.graph, &min_fill_nice(&k6.graph)).unwrap(), 15u32.into());
}
