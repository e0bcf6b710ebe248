//! End-to-end tests of the `bw` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use branchwidth::cli::CSV_HEADER;

fn named(file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/named").join(file)
}

fn bw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bw")).args(args).output().expect("run bw")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

#[test]
fn solve_prints_width_for_each_algorithm() {
    let petersen = named("petersen.gr");
    for alg in ["hyper", "blocks", "root", "oracle"] {
        let o = bw(&["solve", "--alg", alg, path_str(&petersen)]);
        assert_eq!(o.status.code(), Some(0), "{alg}");
        assert_eq!(stdout(&o), "bw = 4", "{alg}");
    }
}

#[test]
fn decide_answers_yes_and_no() {
    let wagner = named("wagner.gr");
    let no = bw(&["solve", "--alg", "root", "--decide", "3", path_str(&wagner)]);
    assert_eq!((no.status.code(), stdout(&no).as_str()), (Some(0), "bw <= 3: no"));
    let yes = bw(&["solve", "--alg", "blocks", "--decide", "4", "--check", path_str(&wagner)]);
    assert_eq!((yes.status.code(), stdout(&yes).as_str()), (Some(0), "bw <= 4: yes"));
}

#[test]
fn emit_writes_a_checkable_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("prism.bd");
    let o = bw(&["solve", "--alg", "blocks", "--check", "--emit", path_str(&out), path_str(&named("prism.gr"))]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("s bw 3 "), "{text}");
    let inst = branchwidth::io::parse_gr(&std::fs::read_to_string(named("prism.gr")).unwrap()).unwrap();
    let h = branchwidth::AnyHypergraph::from_instance(&inst).unwrap();
    assert_eq!(h.check_decomposition_text(&text, 3).unwrap(), 3);
    assert!(h.check_decomposition_text(&text, 2).is_err());
}

#[test]
fn hypergraph_input_by_extension_and_flag() {
    let dir = tempfile::tempdir().unwrap();
    let hgr = dir.path().join("h.hgr");
    // Three hyperedges around vertex 1.
    std::fs::write(&hgr, "p hbw 5 3\n1 2 3\n1 3 4\n1 4 5\n").unwrap();
    let o = bw(&["solve", "--check", path_str(&hgr)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let by_ext = stdout(&o);
    let txt = dir.path().join("h.txt");
    std::fs::copy(&hgr, &txt).unwrap();
    let o = bw(&["solve", "--format", "hgr", path_str(&txt)]);
    assert_eq!(stdout(&o), by_ext);
}

#[test]
fn graph_algorithms_fall_back_on_hyperedges() {
    let dir = tempfile::tempdir().unwrap();
    let hgr = dir.path().join("h.hgr");
    std::fs::write(&hgr, "p hbw 4 3\n1 2 3\n3 4\n4 1\n").unwrap();
    let widths: Vec<String> = ["hyper", "blocks", "root"]
        .iter()
        .map(|alg| {
            let o = bw(&["solve", "--check", "--alg", alg, path_str(&hgr)]);
            assert_eq!(o.status.code(), Some(0), "{alg}: {}", String::from_utf8_lossy(&o.stderr));
            stdout(&o)
        })
        .collect();
    assert!(widths.iter().all(|w| *w == widths[0]), "{widths:?}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.gr");
    std::fs::write(&bad, "p tw 3 1\n1 7\n").unwrap();
    assert_eq!(bw(&["solve", path_str(&bad)]).status.code(), Some(2));
    let missing = dir.path().join("missing.gr");
    assert_eq!(bw(&["solve", path_str(&missing)]).status.code(), Some(1));
    assert_eq!(bw(&["solve", "--alg", "nope", path_str(&bad)]).status.code(), Some(2));
    let conflict = bw(&["solve", "--decide", "2", "--emit", "x.bd", path_str(&bad)]);
    assert_eq!(conflict.status.code(), Some(2));
    let slow = bw(&["solve", "--alg", "blocks", "--timeout", "0", path_str(&named("holt.gr"))]);
    assert_eq!(slow.status.code(), Some(3));
}

#[test]
fn bench_writes_one_row_per_run() {
    let src = tempfile::tempdir().unwrap();
    for f in ["bull.gr", "prism.gr", "petersen.gr"] {
        std::fs::copy(named(f), src.path().join(f)).unwrap();
    }
    std::fs::write(src.path().join("notes.txt"), "ignored").unwrap();
    let out = src.path().join("r.csv");
    let o = bw(&["bench", "--dir", path_str(src.path()), "--out", path_str(&out), "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let mut rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    rows.sort();
    assert_eq!(rows.len(), 9);
    let expected = [("bull.gr", "5", "5", "2"), ("petersen.gr", "10", "15", "4"), ("prism.gr", "6", "9", "3")];
    for (chunk, (name, n, m, width)) in rows.chunks(3).zip(expected) {
        let mut algs: Vec<&str> = chunk.iter().map(|r| r[3].as_str()).collect();
        algs.sort();
        assert_eq!(algs, ["blocks", "hyper", "root"]);
        for r in chunk {
            assert_eq!((r[0].as_str(), r[1].as_str(), r[2].as_str(), r[4].as_str(), r[6].as_str()), (name, n, m, width, "ok"));
            assert!(r[5].parse::<f64>().unwrap() >= 0.0);
        }
    }
}

#[test]
fn bench_reports_timeouts_with_empty_width() {
    let src = tempfile::tempdir().unwrap();
    std::fs::copy(named("holt.gr"), src.path().join("holt.gr")).unwrap();
    let out = src.path().join("r.csv");
    let o = bw(&["bench", "--dir", path_str(src.path()), "--out", path_str(&out), "--algs", "blocks", "--timeout", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&out).unwrap();
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!((row[0], row[3], row[4], row[6]), ("holt.gr", "blocks", "", "timeout"));
}
