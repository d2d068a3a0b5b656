use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn renyi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_renyi")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compute_star() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("star.txt");
    std::fs::write(&g, "0 1\n0 2\n0 3\n").unwrap();
    let o = renyi(&["compute", "--graph", path_str(&g), "--alpha", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "alpha,index\n2,0.25\n");
}

#[test]
fn compute_triangle_is_homogeneous() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("tri.txt");
    std::fs::write(&g, "0 1\r\n1 2\r\n# comment\r\n2 0\r\n").unwrap();
    let o = renyi(&["compute", "--graph", path_str(&g), "--alpha", "0.5,1,2,10"]);
    assert_eq!(stdout(&o), "alpha,index\n0.5,0\n1,0\n2,0\n10,0\n");
}

#[test]
fn compute_errors() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("empty.txt");
    std::fs::write(&g, "# n=4\n").unwrap();
    assert_eq!(
        renyi(&["compute", "--graph", path_str(&g), "--alpha", "2"])
            .status
            .code(),
        Some(3)
    );
    std::fs::write(&g, "0 1\n1 x\n").unwrap();
    let o = renyi(&["compute", "--graph", path_str(&g), "--alpha", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(
        renyi(&["compute", "--graph", "/nonexistent/x", "--alpha", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(renyi(&["compute", "--alpha", "2"]).status.code(), Some(2));
}

#[test]
fn generate_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for out in [&a, &b] {
        let o = renyi(&[
            "generate",
            "--model",
            "hetero-er",
            "--n",
            "300",
            "--p",
            "0.2",
            "--kappa",
            "4",
            "--seed",
            "42",
            "--out",
            path_str(out),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("# n=300\n"));
    let o = renyi(&[
        "generate",
        "--model",
        "hetero-er",
        "--n",
        "300",
        "--p",
        "0.2",
        "--kappa",
        "4",
        "--seed",
        "43",
        "--out",
        path_str(&b),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_ne!(text, std::fs::read_to_string(&b).unwrap());
}

#[test]
fn generate_p_zero_is_empty() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("g.txt");
    let o = renyi(&[
        "generate",
        "--model",
        "hetero-er",
        "--n",
        "50",
        "--p",
        "0",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "# n=50\n");
}

#[test]
fn generate_power_law_with_weights() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("pl.txt");
    let o = renyi(&[
        "generate",
        "--model",
        "power-law",
        "--n",
        "1000",
        "--tau",
        "1.5",
        "--p",
        "0.25",
        "--seed",
        "7",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let g = renyi_core::parse_edge_list(&std::fs::read_to_string(&out).unwrap())
        .unwrap()
        .graph;
    // the √n cap pulls the n = 1000 expectation p E[ω̃]² to about 1.75, below
    // the uncapped p (τ/(τ−1))² = 2.25
    let m1 = renyi_core::truncated_pareto_moment(1000, 1.5, 1.0).unwrap();
    let expected = 0.25 * m1 * m1 * 999.0 / 1000.0;
    let mean = 2.0 * g.edge_count() as f64 / 1000.0;
    assert!((mean - expected).abs() / expected < 0.25, "{mean} vs {expected}");
    let weights = std::fs::read_to_string(dir.path().join("pl.txt.weights")).unwrap();
    let w = renyi_core::graph::parse_weights(&weights).unwrap();
    assert_eq!(w.len(), 1000);
    assert!(w.iter().all(|&x| x >= 1.0));
    let o = renyi(&[
        "generate",
        "--model",
        "power-law",
        "--n",
        "100",
        "--tau",
        "2.5",
        "--p",
        "0.25",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn limits() {
    let o = renyi(&["limits", "--kernel", "exp", "--kappa", "4", "--alpha", "0.5"]);
    let text = stdout(&o);
    let v: f64 = text.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((v - 0.238).abs() < 0.002);
    let o = renyi(&["limits", "--kernel", "exp", "--kappa", "25", "--alpha", "1"]);
    let v: f64 = stdout(&o)
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((v - 0.891).abs() < 0.002);
    let o = renyi(&["limits", "--powerlaw", "--tau", "1.5", "--n", "10000"]);
    assert_eq!(stdout(&o), "n,tau,rate\n10000,1.5,0.1\n");
    assert_eq!(
        renyi(&["limits", "--kernel", "exp", "--kappa", "4", "--alpha", "-1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn simulate_bundled_small_table() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("s.csv");
    let o = renyi(&["simulate", "--config", "table1_small", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), renyi_core::sim::CSV_HEADER);
    assert_eq!(lines.count(), 24);
}

#[test]
fn simulate_is_independent_of_jobs() {
    let dir = TempDir::new().unwrap();
    let mut outputs = Vec::new();
    for (jobs, fmt) in [("1", "json"), ("8", "json"), ("1", "csv"), ("8", "csv")] {
        let out = dir.path().join(format!("{jobs}.{fmt}"));
        let o = renyi(&[
            "simulate",
            "--config",
            "table1_small",
            "--out",
            path_str(&out),
            "--jobs",
            jobs,
            "--format",
            fmt,
        ]);
        assert_eq!(o.status.code(), Some(0));
        outputs.push((std::fs::read(&out).unwrap(), o.stdout));
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[2], outputs[3]);
}

#[test]
fn simulate_config_errors() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("bad.toml");
    let out = dir.path().join("o.csv");
    std::fs::write(
        &cfg,
        "master_seed = 1\n[[cells]]\nmodel = \"power-law\"\nn = 100\ntau = 3.0\np = 0.2\nalphas = [2]\n",
    )
    .unwrap();
    let o = renyi(&["simulate", "--config", path_str(&cfg), "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cells[0].tau"));
    std::fs::write(&cfg, "master_seed = 1\nbogus = 2\n").unwrap();
    assert_eq!(
        renyi(&["simulate", "--config", path_str(&cfg), "--out", path_str(&out)])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        renyi(&["simulate", "--config", "no-such-config", "--out", path_str(&out)])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn simulate_empty_graph_abort_exits_4() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("sparse.toml");
    let out = dir.path().join("o.csv");
    std::fs::write(
        &cfg,
        "master_seed = 1\nreplicates = 5\n[[cells]]\nmodel = \"hetero-er\"\nn = 10\np = 0.001\nkernel = \"exp\"\nkappa = 25\nalphas = [2]\n\
         [[cells]]\nmodel = \"hetero-er\"\nn = 50\np = 0.5\nkernel = \"exp\"\nkappa = 1\nalphas = [2]\n",
    )
    .unwrap();
    let o = renyi(&["simulate", "--config", path_str(&cfg), "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(4));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn rate_on_exact_power_law() {
    let dir = TempDir::new().unwrap();
    let summary = dir.path().join("s.csv");
    let mut csv = format!("{}\n", renyi_core::sim::CSV_HEADER);
    for n in [16u32, 256, 4096, 65536] {
        let gap = 1.0 / (n as f64).sqrt();
        csv.push_str(&format!("power-law,{n},1.5,0.25,2,20,{},0.01,1,,{gap}\n", 1.0 - gap));
    }
    std::fs::write(&summary, csv).unwrap();
    let o = renyi(&["rate", "--summary", path_str(&summary)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let slope: f64 = row[header.iter().position(|&h| h == "slope").unwrap()].parse().unwrap();
    assert!((slope + 0.5).abs() <= 1e-12, "{slope}");
    let points = row[header.iter().position(|&h| h == "points").unwrap()];
    assert_eq!(points, "4");
}

#[test]
fn rate_with_two_points_fails() {
    let dir = TempDir::new().unwrap();
    let summary = dir.path().join("s.csv");
    let csv = format!(
        "{}\npower-law,500,1.5,0.25,2,20,0.66,0.02,1,,0.34\npower-law,1000,1.5,0.25,2,20,0.70,0.02,1,,0.30\n",
        renyi_core::sim::CSV_HEADER
    );
    std::fs::write(&summary, csv).unwrap();
    assert_eq!(renyi(&["rate", "--summary", path_str(&summary)]).status.code(), Some(2));
}

#[test]
fn help_lists_flags() {
    for (cmd, flags) in [
        ("compute", &["--graph", "--alpha"][..]),
        (
            "generate",
            &["--model", "--n", "--p", "--kappa", "--tau", "--seed", "--out"][..],
        ),
        (
            "limits",
            &["--kernel", "--kappa", "--alpha", "--powerlaw", "--tau", "--n"][..],
        ),
        ("simulate", &["--config", "--out", "--format", "--jobs"][..]),
        ("rate", &["--summary", "--group"][..]),
    ] {
        let o = renyi(&[cmd, "--help"]);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        for f in flags {
            assert!(text.contains(f), "{cmd} --help lacks {f}");
        }
    }
}
