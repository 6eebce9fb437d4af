use std::io::Write;
use std::process::{Command, Output};

use serde::Deserialize;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures");
const GENERA: [i64; 9] = [3, 4, 5, 6, 7, 8, 9, 10, 12];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sarkisov")).args(args).env_remove("NO_COLOR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    format!("{FIXTURES}/{name}")
}

#[derive(Debug, Deserialize, PartialEq)]
struct Row {
    row: Option<u32>,
    z1: String,
    z1_tilde_or_base: String,
    pa_gamma: i64,
    deg_gamma: i64,
    a_gamma: Option<i64>,
    alpha: String,
    max_deg_f: i64,
    x: i64,
    y: i64,
    k: Option<i64>,
    e: i64,
    hodge_feasible: bool,
    extra: bool,
}

#[derive(Debug, Deserialize)]
struct Document {
    schema: u32,
    genus: i64,
    hodge_filter: bool,
    rows: Vec<Row>,
}

fn csv_rows(args: &[&str]) -> Vec<Row> {
    let o = run(args);
    assert!(o.status.success(), "{}", stderr(&o));
    csv::Reader::from_reader(o.stdout.as_slice()).deserialize().map(Result::unwrap).collect()
}

#[derive(Deserialize)]
struct Printed {
    row: u32,
    z1: String,
    base: String,
    pa_gamma: i64,
    deg_gamma: i64,
    max_deg_f: i64,
}

#[test]
fn genus_three_csv_covers_the_printed_table() {
    let rows = csv_rows(&["links", "--genus", "3", "--format", "csv"]);
    assert!(rows.iter().all(|r| !r.extra));
    let printed: Vec<Printed> = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(fixture("expected_table.csv"))
        .unwrap()
        .deserialize()
        .map(Result::unwrap)
        .collect();
    let mut missing = Vec::new();
    for p in &printed {
        match rows.iter().find(|r| r.row == Some(p.row)) {
            Some(r) => {
                assert_eq!((&r.z1, &r.z1_tilde_or_base, r.pa_gamma), (&p.z1, &p.base, p.pa_gamma));
                if p.row != 30 {
                    assert_eq!((r.deg_gamma, r.max_deg_f), (p.deg_gamma, p.max_deg_f), "row {}", p.row);
                }
            }
            None => missing.push(p.row),
        }
    }
    assert_eq!(missing, Vec::<u32>::new(), "printed rows with no solution");
}

#[test]
fn hodge_flag_removes_three_rows() {
    let all = csv_rows(&["links", "--genus", "3", "--format", "csv"]);
    let kept = csv_rows(&["links", "--genus", "3", "--hodge", "--format", "csv"]);
    let gone: Vec<_> = all.iter().filter(|r| !kept.contains(r)).filter_map(|r| r.row).collect();
    assert_eq!(gone, [16, 25, 32]);
}

#[test]
fn alpha_filter_partitions_the_rows() {
    for g in GENERA {
        let g = g.to_string();
        let all = csv_rows(&["links", "--genus", &g, "--format", "csv"]);
        let parts: usize = ["e1", "cb", "dp"]
            .iter()
            .map(|a| csv_rows(&["links", "--genus", &g, "--alpha", a, "--format", "csv"]).len())
            .sum();
        assert_eq!(parts, all.len());
    }
}

#[test]
fn csv_and_json_carry_the_same_data() {
    for g in GENERA {
        for hodge in [false, true] {
            let g_s = g.to_string();
            let mut args = vec!["links", "--genus", &g_s];
            if hodge {
                args.push("--hodge");
            }
            let from_csv = csv_rows(&[args.as_slice(), &["--format", "csv"]].concat());
            let o = run(&[args.as_slice(), &["--format", "json"]].concat());
            let doc: Document = serde_json::from_slice(&o.stdout).unwrap();
            assert_eq!((doc.schema, doc.genus, doc.hodge_filter), (1, g, hodge));
            assert_eq!(doc.rows, from_csv);
        }
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["links", "--genus", "3", "--format", "json"][..],
        &["links", "--genus", "7"],
        &["bound", "--genus", "3", "--witness"],
        &["nodal", "--nodes", &fixture("cayley_bacharach9.csv")],
        &["selfcheck"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn invalid_genus_exits_two() {
    for g in ["13", "11", "2"] {
        let o = run(&["links", "--genus", g]);
        assert_eq!(o.status.code(), Some(2));
        assert!(stdout(&o).is_empty());
        assert!(!stderr(&o).is_empty());
    }
    assert_eq!(run(&["links"]).status.code(), Some(2));
    assert_eq!(run(&["links", "--genus", "3", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn bound_examples() {
    let value = |args: &[&str]| {
        let o = run(args);
        assert!(o.status.success(), "{args:?}: {}", stderr(&o));
        stdout(&o)
    };
    assert!(value(&["bound", "--genus", "3", "--contains", "plane"]).starts_with("bound: 15\n"));
    assert!(value(&["bound", "--genus", "3", "--contains", "quadric"]).starts_with("bound: 11\n"));
    assert!(value(&["bound", "--genus", "3", "--contains", "none"]).starts_with("bound: 8\n"));
    assert!(value(&["bound", "--genus", "7", "--contains", "quadric"]).starts_with("bound: 7\n"));
    assert!(value(&["bound", "--index2", "--h3", "2"]).starts_with("rank cap: 6\nbound: 5\n"));
    let w = value(&["bound", "--genus", "5", "--contains", "quadric", "--witness"]);
    assert!(w.contains("search bound: 9\nwitness defect: 9\n"), "{w}");
}

#[test]
fn inconsistent_bound_flags_exit_two() {
    for args in [
        &["bound", "--genus", "5", "--contains", "plane"][..],
        &["bound", "--index2"],
        &["bound", "--index2", "--h3", "2", "--genus", "3"],
        &["bound", "--h3", "2"],
        &["bound", "--index2", "--h3", "6"],
        &["bound", "--genus", "11"],
        &["bound"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn nodal_examples() {
    let o = run(&[
        "nodal",
        "--nodes",
        &fixture("burkhardt.csv"),
        "--quartic",
        &fixture("burkhardt.poly"),
        "--field",
        "eisenstein",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    for line in ["nodes: 45", "rank: 30", "defect: 15", "lower bound: 15", "verified: 45/45", "b2 blow-up: 61"] {
        assert!(out.lines().any(|l| l == line), "{line} not in\n{out}");
    }
    assert!(stdout(&run(&["nodal", "--nodes", &fixture("one_node.csv")])).contains("defect: 0\n"));
    assert!(stdout(&run(&["nodal", "--nodes", &fixture("cayley_bacharach9.csv")])).contains("defect: 1\n"));
    let float = run(&["nodal", "--nodes", &fixture("burkhardt.csv"), "--field", "float", "--tol", "1e-8"]);
    assert!(stdout(&float).contains("defect: 15\n"));
}

fn temp(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn node_file_errors_exit_two_with_position() {
    let f = temp("# field: rational\n# a comment\n1,0,0,0,0\n1,2,3,oops,5\n");
    let o = run(&["nodal", "--nodes", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4, field 4"), "{}", stderr(&o));
    let f = temp("1,0,0,0,0\n");
    assert_eq!(run(&["nodal", "--nodes", f.path().to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["nodal", "--nodes", "/nonexistent/nodes.csv"]).status.code(), Some(2));
    let o = run(&["nodal", "--nodes", &fixture("burkhardt.csv"), "--field", "rational"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn quartic_errors_exit_two_with_position() {
    let q = temp("x0^4 + x1^3\n");
    let o = run(&["nodal", "--nodes", &fixture("one_node.csv"), "--quartic", q.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":1:"), "{}", stderr(&o));
}

#[test]
fn off_surface_node_exits_three() {
    let nodes = temp("# field: rational\n1,0,0,0,0\n");
    let o = run(&["nodal", "--nodes", nodes.path().to_str().unwrap(), "--quartic", &fixture("burkhardt.poly")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("verified: 0/1"));
}

#[test]
fn selfcheck_on_a_correct_build_exits_zero() {
    let o = run(&["selfcheck"]);
    let out = stdout(&o);
    assert!(out.contains("row 30 erratum"), "{out}");
    assert_eq!(o.status.code(), Some(0), "{out}");
}

#[test]
fn selfcheck_catches_inverted_hodge_filter() {
    let o = run(&["selfcheck", "--inject", "hodge-inverted"]);
    assert_eq!(o.status.code(), Some(1));
    let line = stdout(&o).lines().find(|l| l.contains("hodge filter")).unwrap().to_string();
    assert!(line.contains("FAIL") && line.contains("16, 25, 32"), "{line}");
}

#[test]
fn selfcheck_catches_printed_del_pezzo_equation() {
    let o = run(&["selfcheck", "--inject", "del-pezzo-printed"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.contains("FAIL") && l.contains("row 21: e = 0")), "{out}");
}

#[test]
fn no_color_suppresses_escapes() {
    let o = Command::new(env!("CARGO_BIN_EXE_sarkisov")).arg("selfcheck").env("NO_COLOR", "1").output().unwrap();
    assert!(!o.stdout.contains(&0x1b));
}
