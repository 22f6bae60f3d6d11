use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn ceop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ceop")).args(args).env_remove("CRASZE_SEED").output().expect("spawn ceop")
}

fn ok(args: &[&str]) -> Output {
    let out = ceop(args);
    assert!(out.status.success(), "ceop {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = path(dir, name);
    fs::write(&p, text).unwrap();
    p
}

const TWO_DISJOINT: &str = "\
CEOPINST 1
NAME two
KIND CEOP
BUDGET 100
DEPOT_START 0 0
DEPOT_END 0 0
NODES 2
1 10 0 1 5
2 -10 0 1 3
";

// Five circles, two of them overlapping; the budget reaches only some of them.
const TOY: &str = "\
CEOPINST 1
NAME toy
KIND CEOP
BUDGET 30
DEPOT_START 0 0
DEPOT_END 0 0
NODES 5
1 5 0 1 4
2 6 1 1 3
3 -4 3 1 5
4 0 -8 1 6
5 9 9 1 2
";

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn number_after(text: &str, key: &str) -> f64 {
    text.lines().find_map(|l| l.strip_prefix(key)).and_then(|v| v.trim().parse().ok()).unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn generate_is_deterministic_and_sets_radius() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.txt"), path(&dir, "b.txt"));
    for p in [&a, &b] {
        ok(&["generate", "--n", "30", "--radius", "2", "--seed", "9", "--out", p]);
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let rows: Vec<&str> = text.lines().skip_while(|l| !l.starts_with("NODES")).skip(1).filter(|l| !l.trim().is_empty()).collect();
    assert_eq!(rows.len(), 30);
    assert!(rows.iter().all(|r| r.split_whitespace().nth(3) == Some("2")));
}

#[test]
fn generate_seed_from_environment() {
    let dir = TempDir::new().unwrap();
    let a = path(&dir, "a.txt");
    let b = path(&dir, "b.txt");
    ok(&["generate", "--n", "5", "--radius", "1", "--seed", "4", "--out", &a]);
    let out = Command::new(env!("CARGO_BIN_EXE_ceop"))
        .args(["generate", "--n", "5", "--radius", "1", "--out", &b])
        .env("CRASZE_SEED", "4")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn discretize_disjoint_circles() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "two.txt", TWO_DISJOINT);
    let out = path(&dir, "layout.json");
    ok(&["discretize", "--instance", &inst, "--out", &out]);
    let layout: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(layout["zones"].as_array().unwrap().len(), 2);
}

#[test]
fn discretize_is_byte_identical_and_degree_capped() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "g.txt");
    ok(&["generate", "--n", "40", "--overlap-ratio", "0.1", "--seed", "2", "--out", &inst]);
    let (a, b) = (path(&dir, "a.json"), path(&dir, "b.json"));
    ok(&["discretize", "--instance", &inst, "--seed", "5", "--out", &a]);
    ok(&["discretize", "--instance", &inst, "--seed", "5", "--out", &b]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let c = path(&dir, "c.json");
    ok(&["discretize", "--instance", &inst, "--max-degree", "1", "--out", &c]);
    let layout: serde_json::Value = serde_json::from_str(&fs::read_to_string(&c).unwrap()).unwrap();
    assert_eq!(layout["zones"].as_array().unwrap().len(), 40);
}

#[test]
fn solve_writes_solution_and_svg() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "toy.txt", TOY);
    let (json, svg) = (path(&dir, "s.json"), path(&dir, "s.svg"));
    let out = ok(&["solve", "--instance", &inst, "--mode", "ceop", "--seed", "1", "--out", &json, "--svg", &svg]);
    let text = stdout(&out);
    let prize = number_after(&text, "prize ");
    let cost = number_after(&text, "cost ");
    assert!(prize > 0.0 && cost <= 30.0 + 1e-9);

    let sol: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(sol["prize"].as_f64().unwrap(), prize);
    assert_eq!(sol["algorithm"], "rszd-acs-arc");

    let svg = fs::read_to_string(&svg).unwrap();
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    let line = svg.lines().find(|l| l.contains(r#"id="path""#)).expect("path element");
    let points = line.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
    let pts: Vec<&str> = points.split_whitespace().collect();
    assert_eq!(pts.first(), Some(&"0,0"));
    assert_eq!(pts.last(), Some(&"0,0"));
    assert_eq!(pts.len(), sol["sequence"].as_array().unwrap().len() + 2);
}

#[test]
fn solve_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", &TOY.replace("BUDGET 30", "BUDGET -1"));
    assert_eq!(ceop(&["solve", "--instance", &bad]).status.code(), Some(1));
    let short = write(&dir, "short.txt", &TWO_DISJOINT.replace("DEPOT_END 0 0", "DEPOT_END 150 0"));
    let out = ceop(&["solve", "--instance", &short]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("below the direct depot leg"));

    let missing = path(&dir, "nope.txt");
    assert_eq!(ceop(&["solve", "--instance", &missing]).status.code(), Some(2));
    assert_eq!(ceop(&["solve", "--mode", "sideways"]).status.code(), Some(2));

    let toy = write(&dir, "toy.txt", TOY);
    assert_eq!(ceop(&["solve", "--instance", &toy, "--mode", "tddp"]).status.code(), Some(2));

    let tddp = path(&dir, "t.txt");
    ok(&["generate", "--n", "8", "--overlap-ratio", "0.1", "--kind", "tddp", "--budget-level", "1.2", "--out", &tddp]);
    let out = ceop(&["solve", "--instance", &tddp, "--mode", "tddp", "--time-cap", "0", "--out", &path(&dir, "t.json")]);
    assert_eq!(out.status.code(), Some(3));
    let sol: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("t.json")).unwrap()).unwrap();
    assert_eq!(sol["truncated"], true);
}

#[test]
fn oracle_bounds_the_colony() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "toy.txt", TOY);
    let out = ok(&["oracle", "--instance", &inst, "--compare"]);
    let text = stdout(&out);
    let optimum = number_after(&text, "optimal prize ");
    let colony = number_after(&text, "colony prize ");
    assert!(colony <= optimum + 1e-9);
    assert_eq!(colony, optimum);
}

#[test]
fn oracle_refuses_large_instances() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "big.txt");
    ok(&["generate", "--n", "20", "--radius", "0.5", "--out", &inst]);
    let out = ceop(&["oracle", "--instance", &inst]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_csv_shape() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "toy.txt", TOY);
    let b = write(&dir, "two.txt", TWO_DISJOINT);
    let csv_path = path(&dir, "summary.csv");
    ok(&["bench", "--instance", &a, &b, "--mode", "sop", "--seeds", "3", "--out", &csv_path, "--jobs", "2"]);
    let csv = fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "instance,algorithm,budget,prize_avg,prize_sd,cost_avg,cost_sd,time_avg_s,time_sd_s");
    assert_eq!(lines.len(), 3);
    // Both circles fit the budget of `two`, so every seed collects both.
    let two: Vec<&str> = lines.iter().find(|l| l.starts_with("two,")).unwrap().split(',').collect();
    assert_eq!(two[3].parse::<f64>().unwrap(), 8.0);
    assert_eq!(two[4].parse::<f64>().unwrap(), 0.0);
    assert!(Path::new(&csv_path).exists());
}
