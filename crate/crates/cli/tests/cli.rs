use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn acss(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acss"))
        .args(args)
        .current_dir(dir)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn build_table(dir: &Path, states: &str) {
    let o = acss(
        &[
            "ctm", "build", "--states", states, "--budget", "200", "--out", "t.ctm",
        ],
        dir,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn ctm_build_writes_a_loadable_table() {
    let dir = tempfile::tempdir().unwrap();
    build_table(dir.path(), "1");
    let text = fs::read_to_string(dir.path().join("t.ctm")).unwrap();
    assert!(text.starts_with("ctm v1 k=1 budget=200 halting=128 run=256 sym=0\n"));
    let table = acss::CtmTable::load(dir.path().join("t.ctm")).unwrap();
    assert_eq!(table.len(), 2);

    let o = acss(
        &[
            "ctm",
            "build",
            "--states",
            "1",
            "--out",
            "s.ctm",
            "--symmetrize",
        ],
        dir.path(),
    );
    assert!(o.status.success());
    let sym = fs::read_to_string(dir.path().join("s.ctm")).unwrap();
    assert!(sym.lines().next().unwrap().ends_with("sym=1"));
}

#[test]
fn bdm_of_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    build_table(dir.path(), "1");
    fs::write(dir.path().join("m.txt"), "2 2\n00\n00\n").unwrap();
    let o = acss(
        &["bdm", "--table", "t.ctm", "--matrix", "m.txt"],
        dir.path(),
    );
    assert!(o.status.success());
    // one absent 2×2 shape with zero entropy: 0 + log2(4) + 1
    let value: f64 = stdout(&o).trim().parse().unwrap();
    assert_eq!(value, 3.0);

    let o = acss(
        &[
            "bdm",
            "--table",
            "t.ctm",
            "--matrix",
            "m.txt",
            "--block",
            "1",
            "--boundary",
            "discard",
        ],
        dir.path(),
    );
    assert!(o.status.success());
    let value: f64 = stdout(&o).trim().parse().unwrap();
    // one distinct 1×1 block seen 4 times
    assert!((value - (1.0 + 2.0)).abs() < 1e-12);
}

#[test]
fn graph_complexity_modes_and_guard() {
    let dir = tempfile::tempdir().unwrap();
    build_table(dir.path(), "1");
    let cube = acss(&["catalog", "cube"], dir.path());
    assert!(cube.status.success());
    fs::write(dir.path().join("cube.edges"), &cube.stdout).unwrap();

    let exact = acss(
        &[
            "graph",
            "complexity",
            "--table",
            "t.ctm",
            "--graph",
            "cube.edges",
            "--exact",
        ],
        dir.path(),
    );
    assert!(exact.status.success());
    let exact: f64 = stdout(&exact).trim().parse().unwrap();
    let sampled = acss(
        &[
            "graph",
            "complexity",
            "--table",
            "t.ctm",
            "--graph",
            "cube.edges",
            "--samples",
            "20",
            "--seed",
            "4",
        ],
        dir.path(),
    );
    let sampled: f64 = stdout(&sampled).trim().parse().unwrap();
    assert!(sampled >= exact);

    let dodeca = acss(&["catalog", "dodecahedron"], dir.path());
    fs::write(dir.path().join("d.edges"), &dodeca.stdout).unwrap();
    let refused = acss(
        &[
            "graph",
            "complexity",
            "--table",
            "t.ctm",
            "--graph",
            "d.edges",
            "--exact",
        ],
        dir.path(),
    );
    assert_eq!(refused.status.code(), Some(3));
    let large = acss(
        &[
            "graph",
            "complexity",
            "--table",
            "t.ctm",
            "--graph",
            "d.edges",
            "--exact",
            "--allow-large",
        ],
        dir.path(),
    );
    assert_eq!(large.status.code(), Some(3));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    build_table(dir.path(), "1");
    fs::write(dir.path().join("m.txt"), "2 2\n00\n0\n").unwrap();
    let cases: &[&[&str]] = &[
        &["bdm", "--table", "missing.ctm", "--matrix", "m.txt"],
        &["bdm", "--table", "t.ctm", "--matrix", "m.txt"],
        &[
            "bdm",
            "--table",
            "t.ctm",
            "--matrix",
            "m.txt",
            "--boundary",
            "wrap",
        ],
        &["experiment", "fig1", "--table", "t.ctm", "--out", "o"],
        &[
            "experiment",
            "hypercube",
            "--table",
            "t.ctm",
            "--out",
            "o",
            "--dims",
            "7",
        ],
        &[
            "experiment",
            "hypercube",
            "--table",
            "t.ctm",
            "--out",
            "o",
            "--samples",
            "0",
        ],
        &["catalog", "prism"],
    ];
    for args in cases {
        let o = acss(args, dir.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn experiments_write_outputs_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    build_table(dir.path(), "2");
    let run = |name: &str, out: &str| {
        let o = acss(
            &[
                "experiment",
                name,
                "--table",
                "t.ctm",
                "--seed",
                "9",
                "--out",
                out,
                "--sizes",
                "5..=7",
                "--trials",
                "2",
                "--samples",
                "10",
                "--dims",
                "2..=4",
            ],
            dir.path(),
        );
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    };
    for name in ["symmetry-breaking", "polyominoes", "polyhedra", "hypercube"] {
        run(name, "a");
        let csv_a = fs::read(dir.path().join("a/results.csv")).unwrap();
        run(name, "b");
        let csv_b = fs::read(dir.path().join("b/results.csv")).unwrap();
        assert_eq!(csv_a, csv_b, "{name}");
        let header = String::from_utf8_lossy(&csv_a)
            .lines()
            .next()
            .unwrap()
            .to_string();
        assert_eq!(
            header,
            "object,representation,measure,size,trial,value,rank"
        );
        let json: String = fs::read_to_string(dir.path().join("a/report.json")).unwrap();
        assert!(json.trim_start().starts_with('{'));
        let plots = fs::read_dir(dir.path().join("a"))
            .unwrap()
            .filter(|e| {
                e.as_ref()
                    .unwrap()
                    .file_name()
                    .to_string_lossy()
                    .starts_with("plot_")
            })
            .count();
        assert!(plots > 0, "{name}");
        fs::remove_dir_all(dir.path().join("a")).unwrap();
        fs::remove_dir_all(dir.path().join("b")).unwrap();
    }
}
