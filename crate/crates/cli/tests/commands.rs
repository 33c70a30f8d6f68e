use clap::Parser;
use graphcomplex_cli::{run, Cli, Output};

fn go(args: &[&str]) -> Output {
    let cli = Cli::try_parse_from(std::iter::once("graphcx").chain(args.iter().copied())).unwrap();
    run(&cli).unwrap()
}

fn class_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| l.starts_with("v=")).collect()
}

#[test]
fn enumerate_loop_three() {
    let out = go(&["enumerate", "--loop", "3", "--connected"]);
    assert!(out.text.contains("# loop=3 vertices=3 classes=1"));
    assert!(out.text.contains("# loop=3 vertices=4 classes=2"));
    assert_eq!(class_lines(&out.text).len(), 3);
}

#[test]
fn enumerate_loop_two_is_theta() {
    let out = go(&["enumerate", "--loop", "2", "--connected"]);
    assert_eq!(class_lines(&out.text), vec!["v=2 e=3; 1>2; 1>2; 1>2  # aut=12 bridged=false"]);
}

#[test]
fn nothing_on_two_vertices_at_loop_three() {
    let out = go(&["enumerate", "--loop", "3", "--vertices", "2"]);
    assert!(class_lines(&out.text).is_empty());
}

#[test]
fn enumerated_lines_parse_back() {
    let out = go(&["enumerate", "--loop", "4"]);
    for line in class_lines(&out.text) {
        let g = graphcomplex::format::parse_graph(line).unwrap();
        assert_eq!(graphcomplex::canonical_form(&g).unwrap().class.to_line(), line.split("  #").next().unwrap());
    }
}

#[test]
fn homology_rows() {
    let out = go(&["homology", "--loop", "2", "--format", "csv"]);
    assert_eq!(out.text, "loop_degree,vertices,dim_basis,betti\n2,2,1,1\n");
    let out = go(&["homology", "--loop", "3", "--format", "csv", "--connected"]);
    assert!(out.text.contains("3,4,2,1\n"));
    assert!(out.text.contains("3,3,1,0\n"));
}

#[test]
fn matrix_export() {
    let out = go(&["matrix", "--op", "E", "--loop", "3", "--from", "4", "--connected"]);
    let mut lines = out.text.lines();
    assert_eq!(lines.next(), Some("1 2 2"));
    let mut mags: Vec<i64> = lines.map(|l| l.split(' ').nth(2).unwrap().parse::<i64>().unwrap().abs()).collect();
    mags.sort();
    assert_eq!(mags, vec![2, 6]);
}

#[test]
fn h_matrix_on_connected_slices_is_refused() {
    let cli = Cli::try_parse_from(["graphcx", "matrix", "--op", "H", "--loop", "3", "--from", "4", "--connected"]).unwrap();
    assert!(run(&cli).is_err());
}

#[test]
fn capacity_errors_are_reported() {
    let cli = Cli::try_parse_from(["graphcx", "enumerate", "--loop", "6"]).unwrap();
    assert!(run(&cli).is_err());
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--only", "jacobi", "--seed", "7", "--samples", "50", "--format", "json"];
    let a = go(&args);
    let b = go(&args);
    assert_eq!(a, b);
    assert_eq!(a.code, 0);
    assert!(a.text.contains("\"schema\": 1"));
}

#[test]
fn verify_compatibility_on_one_pi() {
    let out = go(&["verify", "--only", "compatibility", "--one-pi", "--samples", "20"]);
    assert_eq!(out.code, 0);
    assert!(out.text.starts_with("PASS compatibility"));
}

#[test]
fn replay_round_trip() {
    let dir = std::env::temp_dir().join(format!("graphcx-replay-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = go(&["verify", "--only", "bridged_counterexample", "--format", "json"]);
    std::fs::write(&path, &out.text).unwrap();
    let again = go(&["verify", "--replay", path.to_str().unwrap()]);
    assert_eq!(again.code, 0);
    assert!(again.text.contains("PASS bridged_counterexample"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn canon_reports_sign_and_group() {
    let dir = std::env::temp_dir().join(format!("graphcx-canon-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("theta.txt");
    std::fs::write(&path, "v=2 e=3\n2>1\n1>2\n1>2\n").unwrap();
    let out = go(&["canon", path.to_str().unwrap()]);
    assert!(out.text.contains("sign=-1 aut=12"));
    std::fs::write(&path, "v=2 e=4\n1>2\n1>2\n1>2\n1>2\n").unwrap();
    let out = go(&["canon", path.to_str().unwrap()]);
    assert!(out.text.contains("sign=0"));
    std::fs::remove_dir_all(&dir).unwrap();
}
