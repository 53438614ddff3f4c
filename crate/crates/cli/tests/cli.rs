use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fault-atlas"));
    cmd.env_remove("FAULT_ATLAS_CACHE");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/golden").join(name);
    fs::read_to_string(path).unwrap()
}

fn solve_to(dir: &Path, topology: &str, a: &str, b: &str) -> PathBuf {
    let path = dir.join(format!("{topology}_{a}x{b}.json"));
    let out = run(&["solve", "--topology", topology, "--a", a, "--b", b, "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn classify_verdicts() {
    let out = run(&["classify", "--topology", "cylinder", "--a", "5", "--b", "6"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("not fault-free tileable"));
    let out = run(&["classify", "--topology", "torus", "--a", "4", "--b", "4"]);
    assert!(stdout(&out).contains(": fault-free tileable"));
    let out = run(&["classify", "--topology", "torus", "--a", "6", "--b", "5", "--explain"]);
    assert!(stdout(&out).contains("min required 14"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["classify", "--topology", "torus", "--a", "0", "--b", "4"])), 2);
    assert_eq!(code(&run(&["classify", "--topology", "torus", "--a", "-2", "--b", "4"])), 2);
    assert_eq!(code(&run(&["classify", "--topology", "klein", "--a", "2", "--b", "4"])), 1);
    assert_eq!(code(&run(&["classify", "--a", "2"])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["census", "--topology", "torus", "--max", "65"])), 2);
    assert_eq!(code(&run(&["census", "--topology", "torus", "--max", "4", "--out", "/nonexistent/dir/chart.txt"])), 2);
    assert_eq!(code(&run(&["verify", "/nonexistent/witness.json"])), 2);
}

#[test]
fn bound_reports() {
    let out = run(&["bound", "--topology", "rectangle", "--a", "6", "--b", "6"]);
    assert!(stdout(&out).contains("min required 20, capacity 18, infeasible"));
    let out = run(&["bound", "--topology", "cylinder", "--a", "6", "--b", "5"]);
    assert!(stdout(&out).contains("min required 12, capacity 15, infeasible"));
    let out = run(&["bound", "--topology", "torus", "--a", "4", "--b", "4"]);
    assert!(stdout(&out).lines().next().unwrap().ends_with(", feasible"));
    assert_eq!(code(&run(&["bound", "--topology", "torus", "--a", "0", "--b", "4"])), 2);
}

#[test]
fn census_matches_golden_charts() {
    for t in ["cylinder", "torus", "mobius"] {
        let out = run(&["census", "--topology", t, "--max", "20"]);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout(&out), golden(&format!("{t}_20.txt")), "{t}");
    }
}

#[test]
fn census_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<PathBuf> = (0..2).map(|i| dir.path().join(format!("chart{i}.txt"))).collect();
    for p in &paths {
        let out = run(&["census", "--topology", "mobius", "--max", "24", "--out", p.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(fs::read(&paths[0]).unwrap(), fs::read(&paths[1]).unwrap());
}

#[test]
fn census_populates_witness_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("witnesses");
    let out = run(&["census", "--topology", "torus", "--max", "12", "--witnesses", cache.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let chart = stdout(&out);
    let xs = chart.chars().filter(|&c| c == 'X').count();
    let files: Vec<PathBuf> = fs::read_dir(&cache).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), xs);
    assert!(cache.join("torus_10x5.json").exists());
    for f in files {
        assert_eq!(code(&run(&["verify", f.to_str().unwrap()])), 0, "{}", f.display());
    }
}

#[test]
fn environment_names_cache() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["solve", "--topology", "mobius", "--a", "4", "--b", "7"])
        .env("FAULT_ATLAS_CACHE", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(dir.path().join("mobius_4x7.json").exists());
}

#[test]
fn solve_refuses_impossible_board() {
    let out = run(&["solve", "--topology", "torus", "--a", "8", "--b", "5"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("not fault-free tileable"));
}

#[test]
fn render_ascii_has_no_unbroken_fold() {
    let dir = tempfile::tempdir().unwrap();
    let file = solve_to(dir.path(), "rectangle", "5", "6");
    let out = run(&["render", file.to_str().unwrap(), "--format", "ascii"]);
    assert_eq!(code(&out), 0);
    let rows: Vec<Vec<char>> = stdout(&out).lines().map(|l| l.chars().collect()).collect();
    assert_eq!(rows.len(), 2 * 5 + 1);
    for l in 1..5 {
        assert!((0..6).any(|c| rows[2 * l][4 * c + 2] == ' '), "row line {l}");
    }
    for j in 1..6 {
        assert!((0..5).any(|r| rows[2 * r + 1][4 * j] == ' '), "column line {j}");
    }
}

#[test]
fn render_svg_draws_wrap_tiles_twice() {
    let dir = tempfile::tempdir().unwrap();
    let file = solve_to(dir.path(), "cylinder", "4", "6");
    let text = fs::read_to_string(&file).unwrap();
    assert!(text.contains(r#"["v",0,"#), "witness should use the seam");
    let out = run(&["render", file.to_str().unwrap(), "--format", "svg"]);
    let svg = stdout(&out);
    let gradients = svg.matches("<linearGradient").count();
    assert!(gradients > 0);
    assert_eq!(svg.matches(r#"class="tile wrap""#).count(), 2 * gradients);
}

#[test]
fn tampered_witness_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let file = solve_to(dir.path(), "cylinder", "4", "6");
    let text = fs::read_to_string(&file).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.remove(2);
    fs::write(&file, lines.join("\n")).unwrap();
    let out = run(&["render", file.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("uncovered cells"));
    assert_eq!(code(&run(&["verify", file.to_str().unwrap()])), 3);
    fs::write(&file, "{\"topology\":").unwrap();
    assert_eq!(code(&run(&["render", file.to_str().unwrap()])), 2);
}

#[test]
fn expand_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let file = solve_to(dir.path(), "mobius", "4", "3");
    let grown = dir.path().join("grown.json");
    let out =
        run(&["expand", file.to_str().unwrap(), "--axis", "rows", "--times", "2", "--out", grown.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["verify", grown.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("mobius 8″×3:"));
}
