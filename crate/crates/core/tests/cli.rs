use std::process::Command;

use bimusquash::cli::{run, EXIT_BUDGET, EXIT_INVALID_INPUT, EXIT_OK, EXIT_PROPERTY_FAILS};

const TABLE14: &str = include_str!("../fixtures/bimusquash14.tsv");
const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/bimusquash14.tsv");

fn musquash(args: &[&str]) -> bimusquash::cli::CliOutput {
    run(std::iter::once("musquash").chain(args.iter().copied()))
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("{e}: {text}"))
}

fn error_json(stderr: &str) -> serde_json::Value {
    let line = stderr.lines().find(|l| l.starts_with('{')).expect("json error record");
    json(line)
}

#[test]
fn gen_reproduces_the_printed_table_byte_for_byte() {
    let out = musquash(&["gen", "--set", "1", "--p", "7"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, TABLE14);
    let out = musquash(&["gen", "--set", "2", "--p", "7", "--format", "json"]);
    assert_eq!(json(&out.stdout)["schema_version"], 1);
}

#[test]
fn check_reports_the_printed_table() {
    let out = musquash(&["check", FIXTURE]);
    assert_eq!(out.code, EXIT_OK);
    let v = json(&out.stdout);
    assert_eq!(v["bimusquash"], true);
    assert_eq!(v["musquash"], false);
    assert_eq!(v["rotational_symmetry"], 7);
    assert_eq!(v["realizable"], true);
}

#[test]
fn check_fails_on_a_mirrored_set_table() {
    let dir = std::env::temp_dir().join(format!("musquash-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mirror.tsv");
    let table = bimusquash::tables::parse_tsv(TABLE14).unwrap();
    std::fs::write(&path, bimusquash::tables::serialize_tsv(&bimusquash::tables::mirror(&table)))
        .unwrap();
    let out = musquash(&["check", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_PROPERTY_FAILS);
    assert_eq!(json(&out.stdout)["realizable"], false);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn invalid_input_exits_one_with_a_json_record() {
    for args in [
        vec!["check", "/definitely/not/here.tsv"],
        vec!["gen", "--set", "1", "--p", "6"],
        vec!["gen", "--set", "3", "--p", "7"],
        vec!["expand", "--n", "7", "--row1", "3,4"],
        vec!["search", "--n", "7"],
        vec!["frobnicate"],
    ] {
        let out = musquash(&args);
        assert_eq!(out.code, EXIT_INVALID_INPUT, "{args:?}");
        assert!(out.stderr.starts_with("error: "), "{args:?}");
        let e = error_json(&out.stderr);
        assert_eq!(e["schema_version"], 1);
        assert_eq!(e["error"]["kind"], "invalid_input");
        assert_eq!(e["error"]["exit_code"], 1);
    }
}

#[test]
fn realize_distinguishes_words() {
    let out = musquash(&["realize", "--word", "1 1 2 2"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(json(&out.stdout)["witness"].is_object());
    let out = musquash(&["realize", "--word", "1 2 1 2"]);
    assert_eq!(out.code, EXIT_PROPERTY_FAILS);
    assert_eq!(json(&out.stdout)["parity_ok"], false);
}

#[test]
fn exhausted_budget_exits_three() {
    let out = musquash(&["search", "--n", "10", "--max-nodes", "100"]);
    assert_eq!(out.code, EXIT_BUDGET);
    let e = error_json(&out.stderr);
    assert_eq!(e["error"]["kind"], "budget_exhausted");
    assert!(e["error"]["detail"]["nodes_visited"].as_u64().unwrap() >= 100);
}

#[test]
fn verify_octagon_prints_the_verdict() {
    let out = musquash(&["verify", "--n", "8"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.lines().next(), Some("0 bi-musquashes found — consistent with conjecture"));
    let out = musquash(&["verify", "--n", "6", "--json"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(json(&out.stdout)["contains_doubled_triangle"], true);
}

#[test]
fn search_json_is_identical_across_worker_counts() {
    let one = musquash(&["search", "--n", "8", "--workers", "1"]);
    let many = musquash(&["search", "--n", "8", "--workers", "8"]);
    assert_eq!(one.code, EXIT_OK);
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(json(&one.stdout)["schema_version"], 1);
}

#[test]
fn double_and_render_commands() {
    let out = musquash(&["double", "--m", "5"]);
    assert_eq!(out.code, EXIT_OK);
    let d = bimusquash::geometry::parse_drawing(&out.stdout).unwrap();
    assert_eq!(d.n(), 10);
    assert_eq!(musquash(&["double", "--m", "4"]).code, EXIT_INVALID_INPUT);

    let out = musquash(&["render-chords", "--word", "1 2 2 1"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("<svg"));
    let out = musquash(&["render-drawing", "--star", "7", "--doubled"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.matches(r#"class="edge""#).count(), 14);
}

#[test]
fn binary_honours_exit_codes_and_worker_env() {
    let bin = env!("CARGO_BIN_EXE_musquash");
    let status = Command::new(bin)
        .args(["search", "--n", "6"])
        .env("BIMUSQUASH_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let status = Command::new(bin).args(["check", "/no/such/file"]).output().unwrap();
    assert_eq!(status.status.code(), Some(1));
    let status = Command::new(bin)
        .args(["search", "--n", "10", "--max-nodes", "50"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(3));
}
