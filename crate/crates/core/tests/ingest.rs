use std::io::Write;

use subcover::ingest::{
    er_graph, load_dataset, load_snap_graph, load_tagged_corpus, parse_snap_graph, write_snap_graph, Dataset, DatasetSpec,
    SnapGraph,
};
use subcover::objectives::SubmodularOracle;
use subcover::Error;

fn file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn snap_fixture_from_disk() {
    let f = file("# c\n1 2\n2 1\n2 2\n1 3\n");
    let g: SnapGraph<f64> = load_snap_graph(f.path()).unwrap();
    assert_eq!(g.graph.vertex_count(), 3);
    assert_eq!(g.graph.edges().len(), 2);
    assert_eq!(g.self_loops, 1);
}

#[test]
fn snap_round_trip_preserves_edge_set() {
    let text = "# directed listing\n10 20\r\n20 10\n20 30\n30 40\n40 10\n10 30\n30 10\n50 50\n";
    let g: SnapGraph<f64> = parse_snap_graph(text.as_bytes()).unwrap();
    let mut out = Vec::new();
    write_snap_graph(&g, &mut out).unwrap();
    let h: SnapGraph<f64> = parse_snap_graph(out.as_slice()).unwrap();
    assert_eq!(g.labeled_edges(), h.labeled_edges());
    let mut labels = g.labels.clone();
    let mut reloaded = h.labels.clone();
    labels.sort();
    reloaded.sort();
    assert_eq!(labels, reloaded);
    let mut again = Vec::new();
    write_snap_graph(&h, &mut again).unwrap();
    assert_eq!(out, again);
}

#[test]
fn snap_errors_name_the_line() {
    let e = parse_snap_graph::<f64>("1 2\n# ok\nx\n".as_bytes()).unwrap_err();
    assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
    assert!(e.to_string().starts_with("line 3"));
    let f = file("");
    assert!(load_snap_graph::<f64>(f.path()).is_err());
}

#[test]
fn tagged_corpus_from_disk_with_cost_column() {
    let f = file("p1\t4\ta,b\np2\t1.5\tb,c\n");
    let d = load_tagged_corpus::<f64>(f.path(), true).unwrap();
    assert_eq!(d.ids, vec!["p1", "p2"]);
    assert_eq!(d.costs, Some(vec![4.0, 1.5]));
    assert!(d.corpus.gamma_div() > 0.0);
    let spec: DatasetSpec = format!("tagged-cost:{}", f.path().display()).parse().unwrap();
    let ds: Dataset<f64> = load_dataset(&spec, None).unwrap();
    assert_eq!(ds.universe.costs(), &[4.0, 1.5]);
    assert_eq!(ds.objective.name(), "diverse_summary");
}

#[test]
fn cost_file_overrides_uniform_costs() {
    let g = file("a b\nb c\n");
    let costs = file("c\t3\na\t1\nb\t2\n");
    let spec: DatasetSpec = format!("snap:{}", g.path().display()).parse().unwrap();
    let ds: Dataset<f64> = load_dataset(&spec, Some(costs.path())).unwrap();
    assert_eq!(ds.universe.costs(), &[1.0, 2.0, 3.0]);
    assert_eq!(ds.objective.evaluate(&[1]), 2.0);
}

#[test]
fn generators_are_seed_deterministic() {
    let a = er_graph::<f64>(8, 0.5, 7).unwrap();
    let b = er_graph::<f64>(8, 0.5, 7).unwrap();
    let c = er_graph::<f64>(8, 0.5, 8).unwrap();
    assert_eq!(a.edges(), b.edges());
    assert_ne!(a.edges(), c.edges());
    let ds: Dataset<f64> = load_dataset(&"synth:modular:n=3,seed=11".parse().unwrap(), None).unwrap();
    assert_eq!(ds.objective.evaluate(&[0, 1, 2]), 6.0);
}
