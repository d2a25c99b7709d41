use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spreadembed"))
        .args(args)
        .output()
        .unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn train_toy(dir: &Path) -> PathBuf {
    let out = dir.join("toy");
    ok(&[
        "train",
        "--edges",
        &data("toy_connected.txt"),
        "--dim",
        "2",
        "--iters",
        "5",
        "--out",
        s(&out),
    ]);
    out
}

#[test]
fn train_writes_embeddings_trace_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = train_toy(dir.path());
    let emb = fs::read_to_string(out.join("embeddings.txt")).unwrap();
    let lines: Vec<&str> = emb.lines().collect();
    assert_eq!(lines[0], "8 2");
    assert_eq!(lines.len(), 9);
    assert!(lines[1..].iter().all(|l| l.split_whitespace().count() == 3));
    assert_eq!(fs::read_to_string(out.join("trace.csv")).unwrap().lines().count(), 7);
    let manifest = fs::read_to_string(out.join("manifest.txt")).unwrap();
    for key in [
        "version=",
        "edges_sha256=",
        "dim=2",
        "iters=5",
        "seed=0",
        "parallel=false",
        "trace=trace.csv",
    ] {
        assert!(manifest.contains(key), "{key} missing from\n{manifest}");
    }
    assert!(!out.join("matrices.txt").exists());
}

#[test]
fn missing_edges_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["train", "--dim", "2", "--out", s(dir.path())]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--edges"));
    assert_eq!(run(&["search"]).status.code(), Some(2));
}

#[test]
fn bad_flag_values_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let edges = data("toy_connected.txt");
    assert_eq!(
        run(&["train", "--edges", &edges, "--dim", "0", "--out", s(dir.path())])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["train", "--edges", &edges, "--lr", "abc", "--out", s(dir.path())])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["train", "--edges", &edges, "--lr=-1", "--out", s(dir.path())])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["train", "--edges", &edges, "--lr", "0", "--out", s(dir.path())])
            .status
            .code(),
        Some(2)
    );
    assert!(!dir.path().join("embeddings.txt").exists());

    let config = dir.path().join("bad.cfg");
    fs::write(&config, "lr=-1\n").unwrap();
    let out = run(&[
        "train",
        "--edges",
        &edges,
        "--config",
        s(&config),
        "--out",
        s(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("learning rate"));
}

#[test]
fn same_seed_gives_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &str| {
        ok(&[
            "train",
            "--edges",
            &data("sbm_edges.txt"),
            "--dim",
            "8",
            "--iters",
            "3",
            "--seed",
            "5",
            "--out",
            out,
        ])
    };
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    args(s(&a));
    args(s(&b));
    for f in ["embeddings.txt", "trace.csv", "manifest.txt"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.cfg");
    fs::write(
        &config,
        format!(
            "# settings\nedges={}\ndim=3\niters=2\nseed=9\n",
            data("toy_connected.txt")
        ),
    )
    .unwrap();
    let out = dir.path().join("o");
    ok(&["train", "--config", s(&config), "--dim", "4", "--out", s(&out)]);
    let manifest = fs::read_to_string(out.join("manifest.txt")).unwrap();
    assert!(manifest.contains("dim=4\n") && manifest.contains("iters=2\n") && manifest.contains("seed=9\n"));

    fs::write(&config, "dimension=3\n").unwrap();
    let err = run(&["train", "--config", s(&config), "--out", s(&out)]);
    assert_eq!(err.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&err.stderr).contains("unknown key"));
}

#[test]
fn manifest_replay_checks_input_digest() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("edges.txt");
    fs::copy(data("toy_connected.txt"), &edges).unwrap();
    let first = dir.path().join("first");
    ok(&[
        "train",
        "--edges",
        s(&edges),
        "--dim",
        "2",
        "--iters",
        "3",
        "--out",
        s(&first),
    ]);
    let manifest = first.join("manifest.txt");
    let replay = dir.path().join("replay");
    ok(&["train", "--config", s(&manifest), "--out", s(&replay)]);
    assert_eq!(
        fs::read(first.join("embeddings.txt")).unwrap(),
        fs::read(replay.join("embeddings.txt")).unwrap()
    );

    fs::write(&edges, "a b\n").unwrap();
    let out = run(&["train", "--config", s(&manifest), "--out", s(&dir.path().join("x"))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not match"));
}

#[test]
fn heterogeneous_training_writes_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h");
    ok(&[
        "train",
        "--edges",
        &data("bipartite_edges.txt"),
        "--types",
        &data("bipartite_types.txt"),
        "--dim",
        "3",
        "--iters",
        "4",
        "--out",
        s(&out),
    ]);
    let m = fs::read_to_string(out.join("matrices.txt")).unwrap();
    let lines: Vec<&str> = m.lines().collect();
    assert_eq!(lines[0], "2 3");
    assert_eq!(lines.len(), 1 + 2 * 4);
    assert!(fs::read_to_string(out.join("manifest.txt"))
        .unwrap()
        .contains("mode=heterogeneous"));

    let report = dir.path().join("r.txt");
    ok(&[
        "eval",
        "--task",
        "link",
        "--edges",
        &data("bipartite_edges.txt"),
        "--types",
        &data("bipartite_types.txt"),
        "--embeddings",
        s(&out.join("embeddings.txt")),
        "--matrices",
        s(&out.join("matrices.txt")),
        "--report",
        s(&report),
    ]);
    assert!(fs::read_to_string(report).unwrap().contains("link_accuracy="));

    let par = run(&[
        "train",
        "--edges",
        &data("bipartite_edges.txt"),
        "--types",
        &data("bipartite_types.txt"),
        "--parallel",
        "--out",
        s(&dir.path().join("p")),
    ]);
    assert_eq!(par.status.code(), Some(1));
}

#[test]
fn eval_link_and_classify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sbm");
    ok(&[
        "train",
        "--edges",
        &data("sbm_edges.txt"),
        "--dim",
        "16",
        "--out",
        s(&out),
    ]);
    let emb = out.join("embeddings.txt");
    let stdout = ok(&[
        "eval",
        "--task",
        "link",
        "--edges",
        &data("sbm_edges.txt"),
        "--embeddings",
        s(&emb),
    ]);
    let acc: f64 = stdout.trim().strip_prefix("link_accuracy ").unwrap().parse().unwrap();
    assert!(acc > 0.6, "{acc}");

    let report = dir.path().join("classify.txt");
    let stdout = ok(&[
        "eval",
        "--task",
        "classify",
        "--edges",
        &data("sbm_edges.txt"),
        "--embeddings",
        s(&emb),
        "--labels",
        &data("sbm_labels.txt"),
        "--report",
        s(&report),
    ]);
    assert!(stdout.starts_with("macro_f1 "));
    assert!(fs::read_to_string(report).unwrap().contains("categories=2"));

    let pairs = dir.path().join("pairs.tsv");
    let a = ok(&[
        "eval",
        "--task",
        "link",
        "--edges",
        &data("sbm_edges.txt"),
        "--embeddings",
        s(&emb),
        "--seed",
        "3",
        "--pairs-out",
        s(&pairs),
    ]);
    let b = ok(&[
        "eval",
        "--task",
        "link",
        "--edges",
        &data("sbm_edges.txt"),
        "--embeddings",
        s(&emb),
        "--pairs-in",
        s(&pairs),
    ]);
    assert_eq!(a, b);
}

#[test]
fn classify_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = train_toy(dir.path());
    let emb = out.join("embeddings.txt");
    let edges = data("toy_connected.txt");
    let absent = run(&[
        "eval",
        "--task",
        "classify",
        "--edges",
        &edges,
        "--embeddings",
        s(&emb),
        "--labels",
        s(&dir.path().join("nope.txt")),
    ]);
    assert_eq!(absent.status.code(), Some(1));
    let no_flag = run(&["eval", "--task", "classify", "--edges", &edges, "--embeddings", s(&emb)]);
    assert_eq!(no_flag.status.code(), Some(2));

    let labels = dir.path().join("labels.txt");
    fs::write(&labels, "a x\nzz y\nqq y\n").unwrap();
    let out = run(&[
        "eval",
        "--task",
        "classify",
        "--edges",
        &edges,
        "--embeddings",
        s(&emb),
        "--labels",
        s(&labels),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("zz, qq"));

    let partial = dir.path().join("partial.txt");
    let text = fs::read_to_string(&emb).unwrap();
    let kept: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with("e ") && !l.starts_with("h "))
        .collect();
    fs::write(&partial, format!("6 2\n{}\n", kept[1..].join("\n"))).unwrap();
    let out = run(&["eval", "--task", "link", "--edges", &edges, "--embeddings", s(&partial)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("e, h"));
}

#[test]
fn trace_report_has_one_row_per_iteration() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("trace.csv");
    ok(&[
        "eval",
        "--task",
        "trace",
        "--edges",
        &data("sbm_edges.txt"),
        "--labels",
        &data("sbm_labels.txt"),
        "--dim",
        "8",
        "--iters",
        "4",
        "--report",
        s(&report),
    ]);
    let text = fs::read_to_string(report).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "iteration,likelihood,link_accuracy,macro_f1");
    assert_eq!(lines.len(), 1 + 4);
    assert!(lines[1].starts_with("1,") && lines[4].starts_with("4,"));
}

#[test]
fn search_dump() {
    let dir = tempfile::tempdir().unwrap();
    let star = dir.path().join("star.txt");
    fs::write(&star, "c l1\nc l2\nc l3\n").unwrap();
    let text = ok(&["search", "--edges", s(&star), "--start", "c"]);
    let blocks: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(blocks[0], "c");
    assert_eq!(blocks[1].lines().count(), 3);

    let two = ok(&["search", "--edges", &data("toy_components.txt"), "--seed", "4"]);
    assert_eq!(two.matches("\n\n\n").count(), 2);
    assert_eq!(
        two,
        ok(&["search", "--edges", &data("toy_components.txt"), "--seed", "4"])
    );
    assert_eq!(two.lines().filter(|l| !l.is_empty()).count(), 11);
}

#[test]
fn export_coordinates_and_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let out = train_toy(dir.path());
    let coords = dir.path().join("coords.csv");
    let edges = dir.path().join("edges.txt");
    ok(&[
        "export",
        "--edges",
        &data("toy_connected.txt"),
        "--embeddings",
        s(&out.join("embeddings.txt")),
        "--coords",
        s(&coords),
        "--edge-list",
        s(&edges),
    ]);
    let c = fs::read_to_string(coords).unwrap();
    assert_eq!(c.lines().next(), Some("label,x,y"));
    assert_eq!(c.lines().count(), 9);
    let original = spreadembed::Graph::from_paths(Path::new(&data("toy_connected.txt")), None).unwrap();
    let reloaded = spreadembed::Graph::from_paths(&edges, None).unwrap();
    assert_eq!(original.labels(), reloaded.labels());
    assert_eq!(
        original.edges().collect::<Vec<_>>(),
        reloaded.edges().collect::<Vec<_>>()
    );

    let nothing = run(&["export", "--edges", &data("toy_connected.txt")]);
    assert_eq!(nothing.status.code(), Some(1));
}
