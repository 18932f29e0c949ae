use std::fs;
use std::process::{Command, Output};

use lightsout::covers::tile_cover;
use lightsout::gridmap::{kernel_basis, CellSet};
use lightsout::mcp::CertificateDocument;

fn lightsout(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lightsout"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn nullity_subcommand() {
    let o = lightsout(&["nullity", "5"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "2\n"));
    assert_eq!(stdout(&lightsout(&["nullity", "7"])), "0\n");
    let o = lightsout(&["nullity", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn kernel_subcommand() {
    let o = stdout(&lightsout(&["kernel", "5"]));
    let patterns: Vec<&str> = o.split("\n\n").collect();
    assert_eq!(patterns.len(), 2);
    assert!(patterns.iter().all(|p| p.trim_end().lines().count() == 5));
    assert_eq!(stdout(&lightsout(&["kernel", "3"])), "(empty kernel)\n");
}

#[test]
fn kernel_pbm_for_seventeen_matches_tiled_covers() {
    let o = stdout(&lightsout(&["kernel", "17", "--pbm", "--span"]));
    let images: Vec<&str> = o.split("P1\n").filter(|s| !s.is_empty()).collect();
    assert_eq!(images.len(), 3);
    let mut expected: Vec<String> = kernel_basis(5)
        .nonzero_elements()
        .iter()
        .map(|q| tile_cover(q, 6, 3).unwrap().to_pbm())
        .collect();
    let mut got: Vec<String> = images.iter().map(|i| format!("P1\n{i}")).collect();
    expected.sort();
    got.sort();
    assert_eq!(got, expected);
}

#[test]
fn solve_subcommand_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let all = dir.path().join("all.txt");
    fs::write(&all, CellSet::full(5).to_pattern()).unwrap();
    let o = lightsout(&["solve", all.to_str().unwrap(), "--min"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("clicks: 15\n"), "{text}");
    let witness = CellSet::parse_pattern(text.split_once('\n').unwrap().1).unwrap();
    assert_eq!(witness.len(), 15);

    let empty = dir.path().join("empty.txt");
    fs::write(&empty, CellSet::empty(5).to_pattern()).unwrap();
    assert!(stdout(&lightsout(&["solve", empty.to_str().unwrap()])).starts_with("clicks: 0\n"));

    let single = dir.path().join("single.txt");
    fs::write(&single, "#....\n.....\n.....\n.....\n.....\n").unwrap();
    let o = lightsout(&["solve", single.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), "unsolvable\n");

    let ragged = dir.path().join("ragged.txt");
    fs::write(&ragged, "#..\n..\n...\n").unwrap();
    assert_eq!(lightsout(&["solve", ragged.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn mcp_subcommand() {
    let o = stdout(&lightsout(&["mcp", "5", "--brute"]));
    assert_eq!(o.lines().next(), Some("15"));

    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("k1.json");
    let o = lightsout(&["mcp", "--k", "1", "--certify", "--confirm", "--out", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("15 certified\nmin_clicks by elimination: 15\n"), "{text}");
    let doc = CertificateDocument::from_json(&fs::read_to_string(&cert).unwrap()).unwrap();
    assert!(doc.certified);
    assert_eq!(doc.claimed_min, 15);

    let o = lightsout(&["check-cert", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("certified\n"));

    let o = stdout(&lightsout(&["mcp", "--k", "2", "--certify"]));
    assert_eq!(o.lines().next(), Some("81 upper bound only (nullity 6)"));
}

#[test]
fn tampered_certificate_is_flagged() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("k1.json");
    lightsout(&["mcp", "--k", "1", "--certify", "--out", cert.to_str().unwrap()]);
    let mut doc = CertificateDocument::from_json(&fs::read_to_string(&cert).unwrap()).unwrap();
    doc.witness = CellSet::full(5).to_pattern();
    fs::write(&cert, serde_json::to_string(&doc).unwrap()).unwrap();
    let o = lightsout(&["check-cert", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not certified"));
}

#[test]
fn tile_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let q = kernel_basis(5).elements()[0].clone();
    let file = dir.path().join("q.txt");
    fs::write(&file, q.to_pattern()).unwrap();
    let o = stdout(&lightsout(&["tile", file.to_str().unwrap(), "6", "3"]));
    assert_eq!(o, tile_cover(&q, 6, 3).unwrap().to_pattern());

    fs::write(&file, CellSet::empty(4).to_pattern()).unwrap();
    let o = stdout(&lightsout(&["tile", file.to_str().unwrap(), "5", "2"]));
    assert_eq!(o, CellSet::empty(9).to_pattern());

    fs::write(&file, "#...\n....\n....\n....\n").unwrap();
    assert_eq!(lightsout(&["tile", file.to_str().unwrap(), "5", "2"]).status.code(), Some(1));
}

#[test]
fn scan_subcommand() {
    let o = lightsout(&["scan", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("nullity-2 sizes: 5, 17, 41, 53, 77\n"), "{text}");
    assert!(text.contains("congruence violations: 0\n"));
    assert_eq!(lightsout(&["scan", "0"]).status.code(), Some(1));
}

#[test]
fn scan_writes_resumable_census() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("census.csv");
    let path = out.to_str().unwrap();
    let first = lightsout(&["scan", "300", "--fast", "--out", path]);
    assert_eq!(first.status.code(), Some(0));
    let file = fs::read_to_string(&out).unwrap();
    assert!(file.starts_with("n,nullity\n5,2\n17,2\n29,"), "{file}");

    // Re-running over a completed range reproduces identical output and file.
    let second = lightsout(&["scan", "300", "--fast", "--out", path]);
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(fs::read_to_string(&out).unwrap(), file);

    let jsonl = dir.path().join("census.jsonl");
    lightsout(&["scan", "20", "--out", jsonl.to_str().unwrap()]);
    let text = fs::read_to_string(&jsonl).unwrap();
    assert_eq!(text.lines().count(), 20);
    assert!(text.starts_with("{\"n\":1,\"nullity\":0}\n"));
}

#[test]
fn commands_are_deterministic() {
    for args in [
        &["kernel", "9"][..],
        &["mcp", "--k", "3", "--certify"],
        &["regions", "3"],
        &["conjecture", "--k-max", "4"],
    ] {
        let a = lightsout(args);
        let b = lightsout(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn regions_subcommand() {
    let o = stdout(&lightsout(&["regions", "1"]));
    assert!(o.ends_with("sizes: 4 8 8 5\n"));
    let pbm = stdout(&lightsout(&["regions", "3", "--pbm"]));
    assert_eq!(pbm.matches("P1\n17 17\n").count(), 4);
    assert_eq!(lightsout(&["regions", "2"]).status.code(), Some(1));
}
