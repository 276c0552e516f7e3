//! End-to-end runs of the binary: output formats, determinism, exit codes.

use sbm_lab::{
    build_block_matrix, inversion_gap_lower_bound, inverted_entropy, parse_csv, parse_graph,
    parse_partition, partition_entropy, planted_entropy, SplitMergeSpec,
};
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sbm-lab"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn repo_config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn entropy_prints_value_and_rounded_display() {
    let out = bin()
        .args(["entropy", "--graph"])
        .arg(fixture("twelve_node.graph"))
        .arg("--partition")
        .arg(fixture("planted.partition"))
        .output()
        .unwrap();
    assert_eq!(stdout_of(&out), "135.769907\t136\n");

    let out = bin()
        .args(["entropy", "--graph"])
        .arg(fixture("twelve_node.graph"))
        .arg("--partition")
        .arg(fixture("inverted.partition"))
        .output()
        .unwrap();
    assert_eq!(stdout_of(&out), "134.926879\t135\n");
}

#[test]
fn compare_names_the_lower_entropy_partition() {
    let out = bin()
        .args(["compare", "--graph"])
        .arg(fixture("twelve_node.graph"))
        .arg("--partition")
        .arg(fixture("planted.partition"))
        .arg("--partition-b")
        .arg(fixture("inverted.partition"))
        .output()
        .unwrap();
    assert_eq!(stdout_of(&out), "second\t0.843027\n");
}

#[test]
fn sample_resamples_a_measured_graph_onto_the_same_counts() {
    let run = || {
        bin()
            .args(["sample", "--graph"])
            .arg(fixture("twelve_node.graph"))
            .arg("--partition")
            .arg(fixture("planted.partition"))
            .args(["--seed", "5"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a.stdout, b.stdout, "same seed must be byte-identical");

    let sampled = parse_graph(&stdout_of(&a)).unwrap();
    let part = parse_partition(&std::fs::read_to_string(fixture("planted.partition")).unwrap()).unwrap();
    let original = parse_graph(&std::fs::read_to_string(fixture("twelve_node.graph")).unwrap()).unwrap();
    assert_eq!(
        build_block_matrix(&sampled, &part).unwrap(),
        build_block_matrix(&original, &part).unwrap()
    );

    let other = bin()
        .args(["sample", "--graph"])
        .arg(fixture("twelve_node.graph"))
        .arg("--partition")
        .arg(fixture("planted.partition"))
        .args(["--seed", "6"])
        .output()
        .unwrap();
    assert_ne!(a.stdout, other.stdout, "different seeds should differ");
}

#[test]
fn sample_from_density_config_writes_suffixed_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("model.json");
    std::fs::write(
        &cfg,
        r#"{ "sizes": [2, 3], "density": [[0.5, 0.2], [0.0, 1.0]] }"#,
    )
    .unwrap();
    let out_path = dir.path().join("draw.graph");
    let out = bin()
        .args(["sample", "--config"])
        .arg(&cfg)
        .args(["--samples", "3", "--seed", "9", "--mode", "iid", "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    // counts: round(4*0.5)=2, round(6*0.2)=1, 0, round(9*1.0)=9 -> 12 edges
    for i in 0..3 {
        let text = std::fs::read_to_string(dir.path().join(format!("draw.graph.{i}"))).unwrap();
        let g = parse_graph(&text).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.total_edges(), 12);
    }
}

#[test]
fn sweep_writes_csv_and_svg_and_ignores_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.json");
    std::fs::write(
        &cfg,
        r#"{
            "sizes": [6, 3, 3],
            "density": [[0.0, 0.1, 0.1], [0.1, 0.9, 0.1], [0.1, 0.1, 0.9]],
            "swept_entry": [0, 0],
            "d_values": [0.1, 0.5, 1.2],
            "samples_per_d": 20,
            "seed": 31,
            "sampler": "uniform",
            "tolerance": 1e-9
        }"#,
    )
    .unwrap();
    let csv_path = dir.path().join("out.csv");
    let svg_path = dir.path().join("out.svg");

    let run = |threads: &str| {
        let out = bin()
            .args(["sweep", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(&csv_path)
            .arg("--svg")
            .arg(&svg_path)
            .env("SBM_LAB_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read_to_string(&csv_path).unwrap()
    };

    let csv1 = run("1");
    let csv4 = run("4");
    assert_eq!(csv1, csv4, "worker count leaked into results");

    let records = parse_csv(&csv1).unwrap();
    assert_eq!(records.len(), 3);
    assert!(records.iter().all(|r| r.n_samples == 20));

    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains("<polyline"));
}

#[test]
fn threshold_reports_crossover_entropies_and_bound() {
    let out = bin()
        .args(["threshold", "--config"])
        .arg(repo_config("threshold_demo.json"))
        .output()
        .unwrap();
    let text = stdout_of(&out);
    let fields: Vec<&str> = text.trim_end().split('\t').collect();
    assert_eq!(fields.len(), 4, "line was {text:?}");
    assert_eq!(fields[0], "8");

    let spec = SplitMergeSpec::new(6, 2, 36, vec![9, 9]).unwrap();
    let s1 = planted_entropy(&spec, 8.0).unwrap().value();
    let s2 = inverted_entropy(&spec, 8.0).unwrap().value();
    let bound = inversion_gap_lower_bound(&spec, 8).unwrap();
    assert_eq!(fields[1], format!("{s1:.6}"));
    assert_eq!(fields[2], format!("{s2:.6}"));
    assert_eq!(fields[3], format!("{bound:.6}"));
}

#[test]
fn search_improves_and_preserves_block_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("best.partition");
    let out = bin()
        .args(["search", "--graph"])
        .arg(fixture("twelve_node.graph"))
        .arg("--partition")
        .arg(fixture("inverted.partition"))
        .args(["--samples", "500", "--seed", "2", "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("entropy"), "progress note missing: {stderr}");

    let g = parse_graph(&std::fs::read_to_string(fixture("twelve_node.graph")).unwrap()).unwrap();
    let start =
        parse_partition(&std::fs::read_to_string(fixture("inverted.partition")).unwrap()).unwrap();
    let found = parse_partition(&std::fs::read_to_string(&out_path).unwrap()).unwrap();

    let mut a = start.sizes().to_vec();
    let mut b = found.sizes().to_vec();
    a.sort_unstable();
    b.sort_unstable();
    assert_eq!(a, b);

    let s_start = partition_entropy(&g, &start).unwrap().value();
    let s_found = partition_entropy(&g, &found).unwrap().value();
    assert!(s_found <= s_start + 1e-9);
}

#[test]
fn exit_codes_distinguish_usage_from_runtime_errors() {
    // unknown flag -> usage error, code 2
    let out = bin().args(["entropy", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // sample without a model source -> usage error, code 2
    let out = bin().args(["sample"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // missing file -> runtime error, code 1, diagnostic on stderr
    let out = bin()
        .args(["entropy", "--graph", "/nonexistent.graph", "--partition"])
        .arg(fixture("planted.partition"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    // malformed config -> runtime error, code 1
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, "{ not json").unwrap();
    let out = bin().args(["sweep", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    // dimension mismatch between graph and partition -> code 1
    let short = dir.path().join("short.partition");
    std::fs::write(&short, "0 1\n").unwrap();
    let out = bin()
        .args(["entropy", "--graph"])
        .arg(fixture("twelve_node.graph"))
        .arg("--partition")
        .arg(&short)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // bad thread cap on an otherwise valid run -> code 1
    let ok_cfg = dir.path().join("ok.json");
    std::fs::write(
        &ok_cfg,
        r#"{ "sizes": [2, 1, 1], "density": [[0,0,0],[0,0,0],[0,0,0]],
             "swept_entry": [0, 0], "d_values": [0.5], "samples_per_d": 1, "seed": 0 }"#,
    )
    .unwrap();
    let run_threads = |threads: &str| {
        bin()
            .args(["sweep", "--config"])
            .arg(&ok_cfg)
            .env("SBM_LAB_THREADS", threads)
            .output()
            .unwrap()
    };
    assert_eq!(run_threads("2").status.code(), Some(0));
    assert_eq!(run_threads("zero").status.code(), Some(1));
    assert_eq!(run_threads("0").status.code(), Some(1));
}
