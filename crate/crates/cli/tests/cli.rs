use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use momcensus::TetrahedralTriangulation;

const FIRST: &str = "(3,3,4 ; 3,6,8,0,13,19,1,15,2,17,14,18,16,4,10,7,12,9,11,5)";
const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/unidentified_mom4.txt");

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_momcensus")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn sets_lists_polyhedron_sets() {
    let o = run(&["sets", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{3,3}\n{4}\n");
    assert_eq!(stdout(&run(&["sets", "3"])).lines().count(), 3);
    assert_eq!(stdout(&run(&["sets", "4"])).lines().count(), 5);
    assert_eq!(run(&["sets", "7"]).status.code(), Some(1));
}

#[test]
fn analyze_reports_and_rejects() {
    let o = run(&["analyze", FIRST]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("filter: passed"));
    assert!(text.contains("boundary components: 2"));
    assert!(text.contains("deficiency:"));

    let o = run(&["analyze", "--json", FIRST]);
    let record: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(record["description"], FIRST);
    assert_eq!(record["passed"], true);

    let o = run(&["analyze", "(3 ; 0,2,1,4,3,5)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("fixed points"));
    assert_eq!(run(&["analyze", "(3 ; 1,0"]).status.code(), Some(1));
}

#[test]
fn parse_normalizes_and_locates_errors() {
    let o = run(&["parse", FIXTURE]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 34);
    assert_eq!(stdout(&o).lines().next(), Some(FIRST));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, format!("{FIRST}\n(3 ; 1,2,0,4,5,3)\n")).unwrap();
    let o = run(&["parse", path(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":2:"));

    assert_eq!(run(&["parse", path(&dir.path().join("missing.txt"))]).status.code(), Some(2));
}

#[test]
fn export_writes_a_valid_triangulation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("first.tri");
    let pres = dir.path().join("first.pres");
    let o = run(&["export-tri", FIRST, "--out", path(&out), "--presentation", path(&pres)]);
    assert_eq!(o.status.code(), Some(0));
    let tri = TetrahedralTriangulation::parse_text(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(tri.num_tetrahedra(), 10);
    assert!(fs::read_to_string(&pres).unwrap().starts_with("gens: "));

    assert_eq!(run(&["export-tri", "(3 ; 1,0,3,2,5,4)", "--out", path(&out)]).status.code(), Some(1));
    let unwritable = dir.path().join("no/such/dir/x.tri");
    assert_eq!(run(&["export-tri", FIRST, "--out", path(&unwritable)]).status.code(), Some(2));
}

#[test]
fn survey_is_deterministic_and_resumable() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.jsonl");
    let two = dir.path().join("two.jsonl");
    let o = run(&["survey", "2", "--workers", "1", "--out", path(&one)]);
    assert_eq!(o.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let survivors: u64 = summary["specs"].as_array().unwrap().iter().map(|s| s["survivors"].as_u64().unwrap()).sum();
    assert_eq!(survivors, 44);
    assert_eq!(run(&["survey", "2", "--workers", "2", "--out", path(&two)]).status.code(), Some(0));
    assert_eq!(fs::read(&one).unwrap(), fs::read(&two).unwrap());

    let split = dir.path().join("split.jsonl");
    let args = ["survey", "2", "--out", path(&split), "--batch-shards", "1", "--max-batches", "1"];
    assert_eq!(run(&args).status.code(), Some(3));
    assert!(dir.path().join("split.jsonl.checkpoint.json").exists());
    let mut resumed = args.to_vec();
    resumed.truncate(6);
    resumed.push("--resume");
    let mut code = run(&resumed).status.code();
    while code == Some(3) {
        code = run(&[&resumed[..], &["--max-batches", "1"]].concat()).status.code();
    }
    assert_eq!(code, Some(0));
    assert_eq!(fs::read(&one).unwrap(), fs::read(&split).unwrap());

    let stats = stdout(&run(&["stats", path(&one)]));
    assert!(stats.contains("total: records 44 survivors 44"));

    let fresh = dir.path().join("fresh.jsonl");
    assert_eq!(run(&["survey", "2", "--resume", "--out", path(&fresh)]).status.code(), Some(2));
    assert_eq!(run(&["survey", "2", "--spec", "5", "--out", path(&fresh)]).status.code(), Some(1));
    assert_eq!(run(&["stats", path(&dir.path().join("missing"))]).status.code(), Some(2));
}
