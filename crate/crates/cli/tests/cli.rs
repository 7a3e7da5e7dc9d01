use std::path::Path;
use std::process::{Command, Output};

fn shellgap(store: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shellgap"))
        .args(args)
        .env("SHELLGAP_STORE", store)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn search_prints_the_log() {
    let dir = tempfile::tempdir().unwrap();
    let o = shellgap(dir.path(), &["search", "7"]);
    assert!(o.status.success());
    let dashes = "-".repeat(36);
    assert_eq!(
        stdout(&o),
        format!(
            "n=7\n{dashes}\n\
             i=1      s_i= 1             n_i=21\n\
             i=3      s_i= 1, 3          n_i=20\n\
             i=5      s_i= 1, 4          n_i=19\n\
             i=21     s_i= 1, 4, 6       n_i=18\n\
             terminated.\n\
             c_7=18 s={{1, 4, 6}} i=21\n"
        )
    );

    let o = shellgap(dir.path(), &["search", "1"]);
    assert!(stdout(&o).ends_with("terminated.\nc_1=0 s={} i=-\n"));
}

#[test]
fn search_output_ignores_jobs_and_is_cached() {
    let dir = tempfile::tempdir().unwrap();
    let one = shellgap(dir.path(), &["--no-store", "search", "10", "--jobs", "1"]);
    let eight = shellgap(dir.path(), &["--no-store", "search", "10", "--jobs", "8"]);
    assert_eq!(one.stdout, eight.stdout);
    assert!(stdout(&one).contains("c_10=35 s={1, 6, 9} i=145"));
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_none());

    let first = shellgap(dir.path(), &["search", "9", "--format", "json"]);
    let second = shellgap(dir.path(), &["search", "9", "--format", "json"]);
    assert_eq!(first.stdout, second.stdout);
    assert!(stderr(&second).contains("cached:"));
    let forced = shellgap(dir.path(), &["search", "9", "--format", "json", "--force"]);
    assert!(!stderr(&forced).contains("cached:"));
    assert_eq!(first.stdout, forced.stdout);
}

#[test]
fn truncated_search_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let o = shellgap(dir.path(), &["search", "8", "--limit", "7"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("incomplete (evaluated through i=7)"));
    assert!(out.contains("complete=false"));
}

#[test]
fn checkpoint_and_resume() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("n9.jsonl");
    let ckpt = ckpt.to_str().unwrap();
    let partial = shellgap(
        dir.path(),
        &["search", "9", "--budget", "50000", "--checkpoint", ckpt],
    );
    assert!(partial.status.success());
    assert!(stdout(&partial).contains("complete=false"));
    let mut last = partial;
    for _ in 0..100 {
        if !stdout(&last).contains("complete=false") {
            break;
        }
        last = shellgap(
            dir.path(),
            &[
                "search",
                "9",
                "--budget",
                "50000",
                "--checkpoint",
                ckpt,
                "--resume",
            ],
        );
        assert!(last.status.success(), "{}", stderr(&last));
    }
    assert!(stdout(&last).ends_with("terminated.\nc_9=29 s={1, 3, 4} i=7\n"));

    std::fs::write(dir.path().join("bad.jsonl"), "garbage\n").unwrap();
    let bad = dir.path().join("bad.jsonl");
    let o = shellgap(
        dir.path(),
        &["search", "9", "--checkpoint", bad.to_str().unwrap(), "--resume"],
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn eval_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = shellgap(dir.path(), &["eval", "16", "--index", "4", "--reduced"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("s={1, 2, 3} i=4"));
    assert!(stdout(&o).contains("worst case: 89"));

    let o = shellgap(dir.path(), &["eval", "6", "--seq", "1,4", "--full"]);
    assert!(stdout(&o).contains("space: full (720 permutations)"));
    assert!(stdout(&o).contains("worst case: 14"));

    let o = shellgap(dir.path(), &["eval", "16", "--seq", "1,15", "--reduced"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("10461394944000"));

    let o = shellgap(dir.path(), &["eval", "5", "--seq", "1,5"]);
    assert_eq!(o.status.code(), Some(1));
    let o = shellgap(dir.path(), &["eval", "5", "--seq", "1,x"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(shellgap(dir.path(), &["bogus"]).status.code(), Some(1));
    assert_eq!(shellgap(dir.path(), &["eval", "5"]).status.code(), Some(1));
    assert_eq!(
        shellgap(dir.path(), &["eval", "5", "--seq", "1", "--index", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(shellgap(dir.path(), &["search", "0"]).status.code(), Some(1));
    assert_eq!(
        shellgap(dir.path(), &["verify", "nothing"]).status.code(),
        Some(1)
    );
    assert!(shellgap(dir.path(), &["--help"]).status.success());
}

#[test]
fn dist_panels() {
    let dir = tempfile::tempdir().unwrap();
    let o = shellgap(dir.path(), &["dist", "6", "--seq", "1,4"]);
    assert_eq!(
        stdout(&o),
        "count,frequency\n7,8\n8,40\n9,104\n10,180\n11,192\n12,128\n13,56\n14,12\n"
    );
    let o = shellgap(dir.path(), &["dist", "6", "--seq", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bins"]["5"], 2);
    assert_eq!(v["bins"]["15"], 32);

    let file = dir.path().join("h.csv");
    let o = shellgap(
        dir.path(),
        &["dist", "6", "--seq", "1", "-o", file.to_str().unwrap()],
    );
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&file)
        .unwrap()
        .starts_with("count,frequency\n5,2\n"));

    let o = shellgap(dir.path(), &["dist", "12", "--seq", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tables() {
    let dir = tempfile::tempdir().unwrap();
    let o = shellgap(dir.path(), &["tables", "optimal", "--max-n", "5"]);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 6);
    for line in out.lines().skip(2) {
        assert_eq!(line.split_whitespace().nth(1), Some("1"), "{line}");
    }

    let o = shellgap(dir.path(), &["tables", "counts", "--n", "16"]);
    let out = stdout(&o);
    assert!(out.contains("4      63063000\n"));
    assert!(out.contains("15     10461394944000\n"));
    assert!(!out.contains('['));

    let o = shellgap(dir.path(), &["tables", "shell-vs-linear", "--max-n", "9"]);
    let improvement = stdout(&o)
        .lines()
        .find(|l| l.starts_with("Improvement"))
        .unwrap()
        .split_whitespace()
        .skip(1)
        .collect::<Vec<_>>()
        .join(",");
    assert_eq!(improvement, "0,0,0,0,0,1,3,5,7");

    let o = shellgap(dir.path(), &["tables", "formulas", "--max-n", "16"]);
    let out = stdout(&o);
    assert!(out.contains("73 [1]"));
    assert!(out.contains("[1] n=14 n4: published value 70, computed 73"));
}

#[test]
fn optimal_table_footnotes_the_printed_index() {
    use shellgap_core::*;
    let dir = tempfile::tempdir().unwrap();
    // a stored n = 12 result stands in for the 90 s search
    let best = GapSequence::new([1, 3, 7, 11]).unwrap();
    let index = best.index().unwrap();
    let h = SearchHistory {
        n: 12,
        records: vec![SearchRecord {
            index,
            sequence: best.clone(),
            worst_case: 48,
            status: RecordStatus::Exact,
        }],
        final_c: Some(48),
        final_sequence: Some(best),
        final_index: Some(index),
        complete: true,
        evaluated_through: 1024,
        engine_version: ENGINE_VERSION.to_string(),
    };
    let stored = serde_json::json!({
        "command": "search",
        "n": 12,
        "index": null,
        "engine_version": ENGINE_VERSION,
        "result": h,
    });
    std::fs::write(
        dir.path().join(format!("search-n12-v{ENGINE_VERSION}.json")),
        stored.to_string(),
    )
    .unwrap();

    let o = shellgap(dir.path(), &["tables", "optimal", "--max-n", "12"]);
    let out = stdout(&o);
    assert!(
        out.contains("12   1, 3, 7, 11            547 [1]    48\n"),
        "{out}"
    );
    assert!(out.contains("[1] n=12 index: published value 543, computed 547"));
    assert_eq!(out.matches('[').count(), 2);
}

#[test]
fn verify_suites() {
    let dir = tempfile::tempdir().unwrap();
    let o = shellgap(dir.path(), &["verify", "gamma"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("17/17 increments match"));

    let o = shellgap(dir.path(), &["verify", "codec"]);
    assert!(o.status.success(), "{}", stdout(&o));

    let o = shellgap(dir.path(), &["verify", "thresholds"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL n3(n) < n2(n) iff n >= 9, n <= 10000 (disagrees at n=[5, 6, 7, 8])"));
}
