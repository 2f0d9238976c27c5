use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use diffnet::io::read_manifest;
use diffnet::report::read_feature_table;

fn diffnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffnet"))
        .args(args)
        .env("DIFFNET_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = diffnet(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const EVENTS: &str = r#"{"tweet_id":"1","user":"alice","interaction":"original","url":"https://a.example/x","timestamp":1}
{"tweet_id":"2","user":"bob","target_user":"alice","interaction":"retweet","url":"https://a.example/x","timestamp":2}
{"tweet_id":"3","user":"carol","target_user":"alice","interaction":"quote","url":"https://a.example/x","timestamp":3}
{"tweet_id":"4","user":"dave","target_user":"erin","interaction":"mention","url":"https://b.example/y","timestamp":4}
"#;

#[test]
fn build_writes_networks_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let events = dir.path().join("events.jsonl");
    fs::write(&events, EVENTS).unwrap();
    let labels = dir.path().join("labels.csv");
    fs::write(&labels, "url,label,bias,source\nhttps://a.example/x,disinformation,right,outlet\n").unwrap();
    let out = dir.path().join("nets");
    let stdout = ok(&["build", "--events", s(&events), "--out", s(&out), "--labels", s(&labels)]);
    assert!(stdout.contains("built 2 networks (5 nodes, 3 edges)"), "{stdout}");

    let rows = read_manifest(&out.join("manifest.csv")).unwrap();
    assert_eq!(rows.len(), 2);
    let labeled = rows.iter().find(|r| r.network_id.starts_with("outlet:")).unwrap();
    assert_eq!(labeled.label.as_str(), "disinformation");
    assert_eq!(labeled.tweet_count, 3);
    let edges = fs::read_to_string(out.join(&labeled.path)).unwrap();
    assert!(edges.contains("alice\tbob") && edges.contains("alice\tcarol"), "{edges}");
    assert!(fs::read_to_string(out.join("urls.csv")).unwrap().contains("https://b.example/y"));
}

#[test]
fn build_rejects_empty_input_and_flags_malformed_lines() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.jsonl");
    fs::write(&empty, "").unwrap();
    let out = diffnet(&["build", "--events", s(&empty), "--out", s(&dir.path().join("o"))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no events"));

    let partial = dir.path().join("partial.jsonl");
    fs::write(&partial, format!("{EVENTS}{{not json\n")).unwrap();
    let out = diffnet(&["build", "--events", s(&partial), "--out", s(&dir.path().join("p"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("1 malformed lines skipped"));
}

#[test]
fn generate_features_classify_report_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let nets = dir.path().join("nets");
    let manifest = dir.path().join("manifest.csv");
    for (profile, seed) in [("broadcast", "1"), ("clustered", "2")] {
        ok(&[
            "generate",
            "--profile",
            profile,
            "--count",
            "30",
            "--bucket",
            "D_0_100",
            "--seed",
            seed,
            "--out",
            s(&nets),
            "--manifest",
            s(&manifest),
        ]);
    }
    assert_eq!(read_manifest(&manifest).unwrap().len(), 60);

    let features = dir.path().join("features.csv");
    ok(&["features", "--manifest", s(&manifest), "--out", s(&features), "--min-tweets", "0"]);
    let again = dir.path().join("features2.csv");
    ok(&["features", "--manifest", s(&manifest), "--out", s(&again), "--min-tweets", "0"]);
    assert_eq!(fs::read(&features).unwrap(), fs::read(&again).unwrap());
    let table = read_feature_table(fs::File::open(&features).unwrap()).unwrap();
    assert_eq!(table.len(), 60);

    let report = dir.path().join("lr.json");
    let stdout = ok(&[
        "classify",
        "--features",
        s(&features),
        "--classifier",
        "lr",
        "--bucket",
        "D_0_100",
        "--out",
        s(&report),
    ]);
    assert!(stdout.contains("lr on D_0_100 (60 samples)"), "{stdout}");
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["settings"]["folds"], 10);
    assert_eq!(json["settings"]["k"], 10);
    assert_eq!(json["settings"]["test_fraction"], 0.1);
    assert_eq!(json["report"]["folds"].as_array().unwrap().len(), 10);
    let roc = fs::read_to_string(report.with_extension("roc.csv")).unwrap();
    assert!(roc.starts_with("fold,threshold,fpr,tpr\n"));

    let distances = dir.path().join("portrait.csv");
    ok(&[
        "distances",
        "--manifest",
        s(&manifest),
        "--metric",
        "portrait",
        "--out",
        s(&distances),
        "--min-tweets",
        "0",
        "--cache-dir",
        s(&dir.path().join("cache")),
    ]);
    assert!(fs::read_dir(dir.path().join("cache")).unwrap().count() == 60);
    let knn = dir.path().join("knn.json");
    ok(&[
        "classify",
        "--features",
        s(&features),
        "--distances",
        s(&distances),
        "--classifier",
        "knn-distance",
        "--bucket",
        "D_0_100",
        "--out",
        s(&knn),
    ]);

    let summary = dir.path().join("summary.json");
    let boxes = dir.path().join("boxes.csv");
    ok(&["report", "--features", s(&features), "--out", s(&summary), "--box-csv", s(&boxes)]);
    let text = fs::read_to_string(&boxes).unwrap();
    assert!(text.lines().any(|l| l.starts_with("D_0_100,cc,disinformation,30,")), "{text}");
}

#[test]
fn dgcd_excludes_large_networks_unless_asked() {
    let dir = tempfile::tempdir().unwrap();
    let nets = dir.path().join("nets");
    let manifest = dir.path().join("manifest.csv");
    ok(&[
        "generate",
        "--profile",
        "broadcast",
        "--count",
        "2",
        "--bucket",
        "D_0_100",
        "--out",
        s(&nets),
        "--manifest",
        s(&manifest),
    ]);
    ok(&[
        "generate",
        "--profile",
        "clustered",
        "--count",
        "1",
        "--bucket",
        "D_1000_inf",
        "--out",
        s(&nets),
        "--manifest",
        s(&manifest),
    ]);
    let out = dir.path().join("dgcd.csv");
    let stdout = ok(&[
        "distances",
        "--manifest",
        s(&manifest),
        "--metric",
        "dgcd13",
        "--out",
        s(&out),
        "--min-tweets",
        "0",
    ]);
    assert!(stdout.contains("wrote 2x2 matrix; 1 excluded"), "{stdout}");
    assert!(fs::read_to_string(out.with_extension("excluded.csv"))
        .unwrap()
        .contains("clustered:D_1000_inf:00000"));
    let stdout = ok(&[
        "distances",
        "--manifest",
        s(&manifest),
        "--metric",
        "dgcd13",
        "--out",
        s(&out),
        "--min-tweets",
        "0",
        "--include-large",
    ]);
    assert!(stdout.contains("wrote 3x3 matrix; 0 excluded"), "{stdout}");
}

#[test]
fn features_isolate_failing_networks() {
    let dir = tempfile::tempdir().unwrap();
    let nets = dir.path().join("nets");
    let manifest = dir.path().join("manifest.csv");
    ok(&[
        "generate",
        "--profile",
        "broadcast",
        "--count",
        "3",
        "--bucket",
        "D_0_100",
        "--out",
        s(&nets),
        "--manifest",
        s(&manifest),
    ]);
    let mut text = fs::read_to_string(&manifest).unwrap();
    text.push_str("ghost,missing.edges,mainstream,none,100\n");
    fs::write(&manifest, text).unwrap();
    let table = dir.path().join("f.csv");
    let out = diffnet(&["features", "--manifest", s(&manifest), "--out", s(&table), "--min-tweets", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ghost"));
    assert_eq!(read_feature_table(fs::File::open(&table).unwrap()).unwrap().len(), 3);
}

#[test]
fn invalid_arguments_fail() {
    let dir = tempfile::tempdir().unwrap();
    let out = diffnet(&[
        "classify",
        "--features",
        "nope.csv",
        "--out",
        s(&dir.path().join("r.json")),
        "--k",
        "0",
    ]);
    assert!(!out.status.success());
    let out = diffnet(&["classify", "--features", "nope.csv", "--out", s(&dir.path().join("r.json"))]);
    assert_eq!(out.status.code(), Some(1));
}
