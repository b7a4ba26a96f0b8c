use std::path::PathBuf;
use std::process::{Command, Output};

use kekule::bench::read_csv;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn kekule(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kekule"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_cyclohexane() {
    let o = kekule(&["count", "--smiles", "C1CCCCC1", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in ["pm = 2", "hosoya = 18", "ms = 18", "mpoly = (1,6,9,2)", "ipoly = (1,6,9,2)", "entropy = 1.612197 bits"] {
        assert!(text.contains(line), "missing {line:?} in {text}");
    }
}

#[test]
fn count_ethane_csv() {
    let o = kekule(&["count", "--smiles", "CC", "--ms", "--csv", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "id,n,m,width,quantity,value,millis,engine,status\nCC,2,1,1,ms,3,0,dp,ok\n"
    );
}

#[test]
fn count_with_supplied_decomposition() {
    let gr = data("fixtures/caffeine.gr");
    let td = data("fixtures/caffeine.td");
    let o = kekule(&["count", "--gr", gr.to_str().unwrap(), "--td", td.to_str().unwrap(), "--pm"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("width=2"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.td");
    std::fs::write(&bad, "s td 1 2 14\nb 1 1 2\n").unwrap();
    let o = kekule(&["count", "--gr", gr.to_str().unwrap(), "--td", bad.to_str().unwrap(), "--pm"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(kekule(&["count"]).status.code(), Some(1));
    assert_eq!(kekule(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(kekule(&["bench", "--corpus", "x.smi"]).status.code(), Some(1), "seed is required");
    assert_eq!(kekule(&["count", "--smiles", "C[NH4+]"]).status.code(), Some(2));
    assert_eq!(kekule(&["count", "--gr", "/nonexistent.gr"]).status.code(), Some(2));
    assert_eq!(kekule(&["--help"]).status.code(), Some(0));
}

#[test]
fn stats_on_the_bundled_corpus() {
    let o = kekule(&["stats", "--corpus", data("corpus.smi").to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("width,count"));
    let total: usize = lines
        .map(|l| {
            let (w, c) = l.split_once(',').unwrap();
            assert!((1..=4).contains(&w.parse::<i64>().unwrap()));
            c.parse::<usize>().unwrap()
        })
        .sum();
    assert_eq!(total, 100);
}

#[test]
fn bench_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = data("corpus.smi");
    let run = |jobs: &str, out: &str| {
        let path = dir.path().join(out);
        let o = kekule(&[
            "bench", "--corpus", corpus.to_str().unwrap(), "--seed", "11", "--per-size", "2",
            "--max-branches", "20000", "--no-timing", "--jobs", jobs, "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(path).unwrap()
    };
    let one = run("1", "a.csv");
    assert_eq!(one, run("1", "b.csv"));
    assert_eq!(one, run("3", "c.csv"));
    let records = read_csv(one.as_slice()).unwrap();
    assert!(!records.is_empty());
}

#[test]
fn chain_subcommand() {
    let element = data("fixtures/hexagon.chain");
    let o = kekule(&["chain", "--element", element.to_str().unwrap(), "--length", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("pm = 21"), "{text}");
    assert_eq!(stdout(&kekule(&["chain", "--hexagon", "--length", "6"])), text);
    assert_eq!(kekule(&["chain", "--hexagon", "--length", "0"]).status.code(), Some(2));
}
