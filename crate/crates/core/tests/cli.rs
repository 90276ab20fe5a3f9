use std::process::Command;

fn subcover() -> Command {
    Command::new(env!("CARGO_BIN_EXE_subcover"))
}

fn stdout(args: &[&str]) -> (i32, String) {
    let out = subcover().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn baseline_on_fixture() {
    let (code, out) = stdout(&["baseline", "--dataset", "synth:modular:n=3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("f0=6 c0=3 q0="), "{out}");
}

#[test]
fn multi_row_matches_hand_trace() {
    let (code, out) = stdout(&["cover-multi", "--dataset", "synth:modular:n=3", "--epsilon", "0.5", "--tau", "5", "--usm", "exact"]);
    assert_eq!(code, 0);
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let row = reader.records().next().unwrap().unwrap();
    let get = |name: &str| row.get(headers.iter().position(|h| h == name).unwrap()).unwrap().to_owned();
    assert_eq!(get("algorithm"), "multi");
    assert_eq!(get("f"), "5.0");
    assert_eq!(get("cost"), "2.0");
    assert_eq!(get("passes"), "2");
    assert_eq!(get("feasible"), "true");
    assert!((get("f_norm").parse::<f64>().unwrap() - 5.0 / 6.0).abs() < 1e-12);
    assert_eq!(get("wall_ms"), "0");
}

#[test]
fn single_without_upper_bound_labels_preliminary_pass() {
    let (code, out) = stdout(&["cover-single", "--dataset", "synth:modular:n=3", "--epsilon", "0.5", "--tau", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("preliminary"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| subcover().args(args).output().unwrap().status.code().unwrap();
    assert_eq!(code(&["cover-multi", "--dataset", "synth:modular:n=3", "--epsilon", "1.5", "--tau", "5"]), 2);
    assert_eq!(code(&["cover-multi", "--dataset", "synth:modular:n=3", "--epsilon", "0.5"]), 2);
    assert_eq!(code(&["cover-multi", "--dataset", "synth:modular:n=3", "--epsilon", "0.5", "--tau", "5", "--usm", "zz"]), 2);
    assert_eq!(code(&["cover-multi", "--dataset", "snap:/nonexistent/graph.txt", "--epsilon", "0.5", "--tau", "5"]), 3);
    assert_eq!(
        code(&["cover-multi", "--dataset", "synth:modular:n=3", "--epsilon", "0.2", "--tau", "12", "--usm", "exact", "--require-feasible"]),
        4
    );
    assert_eq!(code(&["kcsm-single-max", "--dataset", "synth:modular:n=3", "--epsilon", "0.5", "--kappa", "2", "--require-feasible"]), 0);
}

#[test]
fn sweep_writes_one_row_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let status = subcover()
        .args(["sweep", "--dataset", "synth:coverage:n=30,topics=40,k=5,seed=2", "--algorithms", "multi,single,singlemax"])
        .args(["--epsilon", "0.1,0.2,0.3", "--tau-frac", "0.6", "--reps", "5", "--upper-bound", "30", "--kappa", "4"])
        .arg("--out")
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let mut reader = csv::Reader::from_path(&path).unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 9);
    let headers = reader.headers().unwrap().clone();
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    for row in rows.iter().filter(|r| r[col("algorithm")] != *"single") {
        let queries: f64 = row[col("queries")].parse().unwrap();
        let bound: f64 = row[col("bound_queries")].parse().unwrap();
        assert!(queries <= bound, "{queries} > {bound}");
    }
    for name in ["f", "f_norm", "cost", "cost_norm", "queries_norm", "peak_stored_norm", "tau_abs"] {
        let i = headers.iter().position(|h| h == name).unwrap();
        for row in &rows {
            assert!(row[i].parse::<f64>().unwrap().is_finite());
        }
    }
}
