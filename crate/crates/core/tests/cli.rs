//! End-to-end runs of the `lcol` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn lcol(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lcol"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn fig1_pipes_into_an_uncolorable_verdict() {
    let g = lcol(&["gen", "fig1", "--k", "4"], "");
    assert_eq!(g.status.code(), Some(0));
    let s = lcol(&["solve"], &stdout(&g));
    assert_eq!(s.status.code(), Some(1));
    assert!(stdout(&s).starts_with("s uncolorable"));
}

#[test]
fn kplus_checks_connectivity_and_minor() {
    let g = lcol(&["gen", "kplus", "--k", "4"], "");
    let c = lcol(&["check", "--kappa", "--minor"], &stdout(&g));
    assert_eq!(c.status.code(), Some(0));
    let out = stdout(&c);
    assert!(out.contains("connectivity: 3"), "{out}");
    assert!(out.contains("k5_minor: none"), "{out}");
}

#[test]
fn minimal_document_solves() {
    let s = lcol(&["solve"], "p lcol 2 1\ne 0 1\nl 0 1\nl 1 2\n");
    assert_eq!(s.status.code(), Some(0));
    assert_eq!(stdout(&s).lines().take(3).collect::<Vec<_>>(), ["s colorable", "v 0 1", "v 1 2"]);
}

#[test]
fn malformed_input_exits_with_two() {
    let s = lcol(&["solve"], "p lcol 2 1\ne 0 5\nl 0 1\nl 1 2\n");
    assert_eq!(s.status.code(), Some(2));
    let err = String::from_utf8(s.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn refuted_claim_exits_with_one() {
    let doc = "# meta claim uncolorable\np lcol 2 1\ne 0 1\nl 0 1\nl 1 2\n";
    let c = lcol(&["check", "--solve"], doc);
    assert_eq!(c.status.code(), Some(1));
    assert!(stdout(&c).contains("claim: colorable (claimed uncolorable: REFUTED)"));
    let g = lcol(&["gen", "thm7", "--k", "5"], "");
    let c = lcol(&["check", "--solve", "--fassign", "5", "--dsk", "5"], &stdout(&g));
    assert_eq!(c.status.code(), Some(0), "{}", stdout(&c));
}

#[test]
fn peel_output_is_a_proper_coloring() {
    let g = lcol(&["gen", "peel", "--k", "8", "--seed", "1"], "");
    let p = lcol(&["peel", "--k", "8"], &stdout(&g));
    assert_eq!(p.status.code(), Some(0));
    let doc = lcol::io::parse_document(&stdout(&g)).unwrap();
    let mut col = vec![None; doc.graph.n()];
    for line in stdout(&p).lines().filter(|l| l.starts_with("v ")) {
        let f: Vec<u32> = line[2..].split_whitespace().map(|x| x.parse().unwrap()).collect();
        col[f[0] as usize] = Some(f[1] as lcol::graph::Color);
    }
    for v in 0..doc.graph.n() {
        assert!(doc.lists.list(v).contains(&col[v].unwrap()));
        for &w in doc.graph.neighbors(v) {
            assert_ne!(col[v], col[w]);
        }
    }
}

#[test]
fn verify_paper_is_deterministic() {
    let a = lcol(&["verify-paper", "--battery", "2"], "");
    let b = lcol(&["verify-paper", "--battery", "2", "--serial"], "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert!(out.contains("status=open"));
    assert!(!out.contains("status=skipped"));
}
