//! End-to-end checks against the built binary.

use std::fs;
use std::process::Command;

fn hurwitz(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    };
    let no = write(
        "no.json",
        r#"{"degree":6,"partitions":[[3,3],[3,3],[4,2]]}"#,
    );
    let odd = write("odd.json", r#"{"degree":4,"partitions":[[2,2],[2,2],[4]]}"#);
    let junk = write("junk.json", "not json");

    let (code, out, _) = hurwitz(&["decide", "--datum", &no]);
    assert_eq!(code, 0);
    assert!(out.contains(r#""realizable":false"#));
    let (code, out, err) = hurwitz(&["decide", "--datum", &odd]);
    assert_eq!((code, out.is_empty()), (2, true));
    assert!(err.starts_with("error:"));
    assert_eq!(hurwitz(&["decide", "--datum", &junk]).0, 3);
    assert_eq!(hurwitz(&["analyze", "--witness", &junk]).0, 3);
    assert_eq!(hurwitz(&["verify-theorem", "--h-max", "1"]).0, 2);
    assert_eq!(hurwitz(&["bogus"]).0, 2);
}

#[test]
fn verify_theorem_reports_each_h() {
    let (code, out, _) = hurwitz(&["verify-theorem", "--h-max", "3", "--jobs", "2"]);
    assert_eq!(code, 0);
    let lines: Vec<serde_json::Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["candidates"], 40);
    assert_eq!(lines[1]["candidates"], 2240);
    assert!(lines[..2].iter().all(|l| l["count"] == 0));
    assert_eq!(lines[2]["status"], "PASS");
}

#[test]
fn witness_round_trips_through_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let datum = dir.path().join("d.json");
    fs::write(
        &datum,
        r#"{"degree":9,"partitions":[[3,3,3],[3,3,3],[3,3,3]]}"#,
    )
    .unwrap();
    let (code, decided, _) = hurwitz(&["decide", "--datum", datum.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&decided).unwrap();
    assert_eq!(v["realizable"], true);

    let witness = dir.path().join("w.json");
    fs::write(&witness, serde_json::to_string(&v["witness"]).unwrap()).unwrap();
    let dot = dir.path().join("w.dot");
    let (code, out, err) = hurwitz(&[
        "analyze",
        "--witness",
        witness.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
        "--max-loop-len",
        "4",
    ]);
    assert_eq!(code, 0, "{err}");
    let a: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(a["genus"], 1);
    assert_eq!(a["loop_counts"].as_array().unwrap().len(), 4);
    assert!(a["systole"].as_u64().is_some());
    assert!(fs::read_to_string(dot).unwrap().contains(" -- "));
}
