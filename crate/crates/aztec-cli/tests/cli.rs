//! End-to-end behavior of the `aztec` binary: flags, guards, exit codes,
//! golden stdout lines, and the files it writes.

use std::process::{Command, Output};

use aztec_core::Tiling;

fn aztec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aztec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn expect_code(output: &Output, code: i32) {
    assert_eq!(output.status.code(), Some(code), "stderr: {}", stderr_of(output));
}

#[test]
fn count_prints_bare_decimal_counts() {
    for (args, expected) in [
        (&["count", "--aztec", "4", "--method", "dp"][..], "1024\n"),
        (&["count", "--aztec", "4", "--method", "formula"][..], "1024\n"),
        (&["count", "--aztec", "4", "--method", "enumerate"][..], "1024\n"),
        (&["count", "--aztec", "0"][..], "1\n"),
        (&["count", "--rect", "2x4"][..], "5\n"),
        (&["count", "--rect", "4x4", "--method", "dp"][..], "36\n"),
        (&["count", "--rect", "4x4", "--method", "enumerate"][..], "36\n"),
        (&["count", "--rect", "3x3"][..], "0\n"),
    ] {
        let output = aztec(args);
        expect_code(&output, 0);
        assert_eq!(stdout_of(&output), expected, "args: {args:?}");
    }
}

#[test]
fn kasteleyn_reports_float_exact_and_relative_error() {
    let output = aztec(&["count", "--rect", "6x6", "--method", "kasteleyn"]);
    expect_code(&output, 0);
    let text = stdout_of(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("kasteleyn: 6728"), "{text}");
    assert_eq!(lines[1], "dp: 6728");
    let rel: f64 = lines[2].strip_prefix("relative-error: ").unwrap().parse().unwrap();
    assert!(rel < 1e-6, "{text}");
}

#[test]
fn guards_stop_big_inputs_and_force_lifts_the_dp_guard() {
    let output = aztec(&["count", "--aztec", "17"]);
    expect_code(&output, 2);
    assert!(stderr_of(&output).contains("guard"), "{}", stderr_of(&output));

    let output = aztec(&["count", "--rect", "17x17"]);
    expect_code(&output, 2);
    let output = aztec(&["count", "--rect", "17x17", "--force"]);
    expect_code(&output, 0);
    assert_eq!(stdout_of(&output), "0\n"); // odd cell count

    let output = aztec(&["enumerate", "--aztec", "6", "--out", "/tmp/never-written.json"]);
    expect_code(&output, 2);
    assert!(stderr_of(&output).contains("guard"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["count"][..],                                        // no region
        &["count", "--aztec", "2", "--rect", "2x2"][..],       // both regions
        &["count", "--aztec", "2", "--method", "kasteleyn"][..],
        &["count", "--rect", "2x4", "--method", "formula"][..],
        &["count", "--rect", "2x3", "--method", "kasteleyn"][..], // not square
        &["count", "--rect", "4by4"][..],
        &["hist", "--aztec", "2"][..],                         // no source
        &["hist", "--aztec", "2", "--exact", "--samples", "5"][..],
        &["sample", "--aztec", "2", "--stats"][..],            // --stats needs --count
        &["sample", "--aztec", "2", "--count", "5"][..],       // --count needs --stats
        &["sample", "--aztec", "2", "--out", "/tmp/x.png"][..],
        &["render", "--out", "/tmp/x.svg"][..],                // no subject
        &["no-such-command"][..],
    ] {
        let output = aztec(args);
        expect_code(&output, 2);
    }
}

#[test]
fn enumerate_writes_a_json_array_of_tilings() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("order1.json");
    let output = aztec(&["enumerate", "--aztec", "1", "--out", path.to_str().unwrap()]);
    expect_code(&output, 0);
    assert!(stdout_of(&output).starts_with("wrote 2 tilings to "));
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        body,
        "[\n\
         {\"region\":{\"kind\":\"aztec\",\"order\":1},\"dominoes\":[{\"x\":-1,\"y\":-1,\"o\":\"h\"},{\"x\":-1,\"y\":0,\"o\":\"h\"}]},\n\
         {\"region\":{\"kind\":\"aztec\",\"order\":1},\"dominoes\":[{\"x\":-1,\"y\":-1,\"o\":\"v\"},{\"x\":0,\"y\":-1,\"o\":\"v\"}]}\n\
         ]\n"
    );

    let path = dir.path().join("order3.json");
    let output = aztec(&["enumerate", "--aztec", "3", "--out", path.to_str().unwrap()]);
    expect_code(&output, 0);
    let body = std::fs::read_to_string(&path).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 64);
}

#[test]
fn sample_outputs_are_deterministic_for_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let json_a = dir.path().join("a.json");
    let json_b = dir.path().join("b.json");
    let svg_a = dir.path().join("a.svg");
    let svg_b = dir.path().join("b.svg");
    for (path, _) in [(&json_a, 0), (&json_b, 0), (&svg_a, 1), (&svg_b, 1)] {
        let output =
            aztec(&["sample", "--aztec", "3", "--seed", "5", "--out", path.to_str().unwrap()]);
        expect_code(&output, 0);
    }
    assert_eq!(std::fs::read(&json_a).unwrap(), std::fs::read(&json_b).unwrap());
    assert_eq!(std::fs::read(&svg_a).unwrap(), std::fs::read(&svg_b).unwrap());

    let tiling = Tiling::from_json(&std::fs::read_to_string(&json_a).unwrap()).unwrap();
    assert!(tiling.is_valid());
    assert_eq!(tiling.dominoes().len(), 12);
}

#[test]
fn sample_without_output_prints_a_summary_line() {
    let output = aztec(&["sample", "--aztec", "2", "--seed", "11"]);
    expect_code(&output, 0);
    let text = stdout_of(&output);
    assert!(text.starts_with("order 2 seed 11: 6 dominoes"), "{text}");
}

#[test]
fn sample_stats_writes_summary_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("stats.json");
    let output = aztec(&[
        "sample", "--aztec", "2", "--seed", "3", "--count", "64", "--stats", "--out",
        path.to_str().unwrap(),
    ]);
    expect_code(&output, 0);
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("{\"order\":2,\"count\":64,\"hist\":{"), "{body}");
    assert!(body.contains("\"h_occupancy\":[["));

    // svg extension is rejected in stats mode
    let bad = dir.path().join("stats.svg");
    let output = aztec(&[
        "sample", "--aztec", "2", "--count", "4", "--stats", "--out", bad.to_str().unwrap(),
    ]);
    expect_code(&output, 2);
}

#[test]
fn sample_stats_to_stdout_lists_histogram_lines() {
    let output = aztec(&["sample", "--aztec", "1", "--seed", "9", "--count", "10", "--stats"]);
    expect_code(&output, 0);
    let text = stdout_of(&output);
    assert!(text.starts_with("order 1 count 10 seed 9\n"), "{text}");
    let total: u64 = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(' ').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 10);
}

#[test]
fn verify_prints_an_all_pass_table() {
    let output = aztec(&["verify", "--max-order", "2"]);
    expect_code(&output, 0);
    let text = stdout_of(&output);
    for name in
        ["counts", "recursion", "line-balance", "flip-involution", "histogram", "fibonacci", "kasteleyn"]
    {
        assert!(text.contains(&format!("[pass] {name}:")), "missing {name} in:\n{text}");
    }
    assert!(!text.contains("FAIL"));
    assert!(text.trim_end().ends_with("all 7 checks passed (max order 2)"));
}

#[test]
fn hist_prints_histogram_and_binomial_reference() {
    let output = aztec(&["hist", "--aztec", "2", "--exact"]);
    expect_code(&output, 0);
    assert_eq!(stdout_of(&output), "hist: 1 3 3 1\nbinomial: 1 3 3 1\n");

    let output = aztec(&["hist", "--aztec", "2", "--samples", "100", "--seed", "1"]);
    expect_code(&output, 0);
    let text = stdout_of(&output);
    let hist_line = text.lines().next().unwrap();
    let total: u64 = hist_line
        .strip_prefix("hist: ")
        .unwrap()
        .split(' ')
        .map(|v| v.parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 100);
    assert!(text.ends_with("binomial: 1 3 3 1\n"));
}

#[test]
fn render_draws_tilings_fields_and_overlays() {
    let dir = tempfile::tempdir().unwrap();
    let tiling_json = dir.path().join("t.json");
    let output =
        aztec(&["sample", "--aztec", "2", "--seed", "4", "--out", tiling_json.to_str().unwrap()]);
    expect_code(&output, 0);

    let plain = dir.path().join("plain.svg");
    let output =
        aztec(&["render", "--in", tiling_json.to_str().unwrap(), "--out", plain.to_str().unwrap()]);
    expect_code(&output, 0);
    let svg = std::fs::read_to_string(&plain).unwrap();
    assert!(svg.starts_with("<?xml version=\"1.0\""));
    assert_eq!(svg.matches("class=\"domino").count(), 6);
    assert!(!svg.contains("class=\"arrow\""));

    let arrows = dir.path().join("arrows.svg");
    let output = aztec(&[
        "render", "--in", tiling_json.to_str().unwrap(), "--arrows", "--out",
        arrows.to_str().unwrap(),
    ]);
    expect_code(&output, 0);
    let svg = std::fs::read_to_string(&arrows).unwrap();
    assert_eq!(svg.matches("class=\"arrow\"").count(), 12);

    let tiling = Tiling::from_json(&std::fs::read_to_string(&tiling_json).unwrap()).unwrap();
    let field = aztec_core::ArrowField::from_outer_tiling(&tiling).unwrap();
    let field_json = dir.path().join("f.json");
    std::fs::write(&field_json, field.to_json()).unwrap();
    let field_svg = dir.path().join("field.svg");
    let output = aztec(&[
        "render", "--field", field_json.to_str().unwrap(), "--out", field_svg.to_str().unwrap(),
    ]);
    expect_code(&output, 0);
    let svg = std::fs::read_to_string(&field_svg).unwrap();
    assert_eq!(svg.matches("class=\"cell\"").count(), 12);
    assert_eq!(svg.matches("class=\"bold\"").count(), 1);
}

#[test]
fn render_rejects_bad_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{not json").unwrap();
    let out = dir.path().join("x.svg");
    let output =
        aztec(&["render", "--in", garbage.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    expect_code(&output, 2);
    assert!(!out.exists());

    // structurally fine JSON but not a tiling of its region
    let partial = dir.path().join("partial.json");
    std::fs::write(
        &partial,
        "{\"region\":{\"kind\":\"aztec\",\"order\":1},\"dominoes\":[{\"x\":-1,\"y\":-1,\"o\":\"h\"}]}",
    )
    .unwrap();
    let output =
        aztec(&["render", "--in", partial.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    expect_code(&output, 2);

    let output = aztec(&["render", "--in", partial.to_str().unwrap(), "--out", "/tmp/x.png"]);
    expect_code(&output, 2);
}

#[test]
fn missing_input_file_is_a_usage_error() {
    let output = aztec(&["render", "--in", "/definitely/not/here.json", "--out", "/tmp/y.svg"]);
    expect_code(&output, 2);
    assert!(stderr_of(&output).contains("reading"));
}
