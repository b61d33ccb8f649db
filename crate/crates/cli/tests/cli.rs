use std::fs;
use std::path::Path;
use std::process::Command;

use growthpath_cli::{run, EXIT_DATA, EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE};

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn growthpath(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("growthpath").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_xy(path: &Path) -> Vec<Vec<f64>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect()
}

#[test]
fn simulate_writes_paper_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gdpmiddle.csv");
    let r = growthpath(&["simulate", "--scenario", "middle", "--out", path_str(&out)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 99);
    assert!(text.lines().all(|l| l.split(',').count() == 4));
    assert!(text.ends_with('\n'));
}

#[test]
fn naive_catchup_prints_years() {
    let r = growthpath(&["catchup", "--naive", "11", "18", "0.06", "0.03"]);
    assert_eq!(r.code, EXIT_OK);
    let years: f64 = r.stdout.trim().parse().unwrap();
    assert!((years - 17.15).abs() < 0.01);

    let r = growthpath(&["catchup", "--naive", "11", "18", "0.03", "0.06"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.contains("diverging"));

    let r = growthpath(&["catchup", "--naive", "11", "18", "0.03", "0.03"]);
    assert_eq!(r.code, EXIT_DATA);
    assert_eq!(r.stderr.lines().count(), 1);
}

#[test]
fn growth_of_the_two_economy_table() {
    let dir = tempfile::tempdir().unwrap();
    let panel = dir.path().join("china.csv");
    fs::write(&panel, "2000,1,300,5\n2120,1,303,5.15\n").unwrap();
    let r = growthpath(&[
        "growth",
        "--panel",
        path_str(&panel),
        "--method",
        "laspeyres",
        "--start-year",
        "2015",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "year,rate");
    assert_eq!(lines.len(), 2);
    let (year, rate) = lines[1].split_once(',').unwrap();
    assert_eq!(year, "2016");
    assert!((rate.parse::<f64>().unwrap() - 0.038_57).abs() < 1e-5);
}

#[test]
fn gap_report_lines() {
    let dir = tempfile::tempdir().unwrap();
    let panel = dir.path().join("china.csv");
    fs::write(&panel, "2000,1,300,5\n2120,1,303,5.15\n").unwrap();
    let r = growthpath(&["gap", "--panel", path_str(&panel)]);
    assert_eq!(r.code, EXIT_OK);
    let value = |key: &str| -> f64 {
        r.stdout
            .lines()
            .find_map(|l| l.strip_prefix(&format!("{key}=")))
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!((value("national_real_growth") - 0.038_571).abs() < 1e-6);
    assert!((value("national_inflation") - 0.012_504).abs() < 1e-6);
    assert!((value("international_growth") - 0.051_557).abs() < 1e-6);

    let r = growthpath(&["gap", "--panel", path_str(&panel), "--reference-prices", "1,10"]);
    assert!(r.stdout.contains("international_growth=0.03"));
    assert!(r.stdout.contains("international_basis=common_prices:1;10"));
}

#[test]
fn circularity_and_path_integral() {
    let dir = tempfile::tempdir().unwrap();
    let loop_panel = dir.path().join("loop.csv");
    fs::write(&loop_panel, "1,1,1,1\n2,1,1,2\n1,1,1,1\n").unwrap();
    let r = growthpath(&["circularity", "--panel", path_str(&loop_panel)]);
    assert_eq!(r.code, EXIT_OK);
    let residual: f64 = r.stdout.trim().parse().unwrap();
    assert!((residual - 1.125f64.ln()).abs() < 1e-12);

    let open = dir.path().join("open.csv");
    fs::write(&open, "year,Y_A,P_A,Y_B,P_B\n0,1,1,1,1\n1,2,1,1,2\n2,2,1,2,2\n").unwrap();
    let r = growthpath(&["circularity", "--panel", path_str(&open), "--format", "general"]);
    assert_eq!(r.code, EXIT_DATA);
    let r = growthpath(&["path-integral", "--panel", path_str(&open), "--format", "general"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.stdout.trim(), "3");
}

#[test]
fn model_catchup_from_panels() {
    let dir = tempfile::tempdir().unwrap();
    let small = dir.path().join("small.csv");
    let big = dir.path().join("big.csv");
    let mut s = String::from("year,Y_X,P_X\n");
    let mut b = String::from("year,Y_X,P_X\n");
    for t in 0..20 {
        s.push_str(&format!("{t},{},1\n", 1.1f64.powi(t)));
        b.push_str(&format!("{t},2,1\n"));
    }
    fs::write(&small, s).unwrap();
    fs::write(&big, b).unwrap();
    let r = growthpath(&["catchup", "--small", path_str(&small), "--big", path_str(&big)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.contains("crossing_year=8"));
    assert!(r.stdout.contains("naive_years=7.27"));
}

#[test]
fn exit_codes() {
    assert_eq!(growthpath(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(growthpath(&["growth"]).code, EXIT_USAGE);
    assert_eq!(growthpath(&["catchup"]).code, EXIT_USAGE);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "2000,1,300,5\n2120,-1,303,5\n").unwrap();
    let r = growthpath(&["growth", "--panel", path_str(&bad)]);
    assert_eq!(r.code, EXIT_DATA);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);
    assert_eq!(r.stderr.lines().count(), 1);

    let missing = dir.path().join("nope.csv");
    assert_eq!(growthpath(&["growth", "--panel", path_str(&missing)]).code, EXIT_DATA);

    let cfg = dir.path().join("tight.cfg");
    fs::write(&cfg, "N0 = 1.8\n").unwrap();
    let r = growthpath(&["simulate", "--config", path_str(&cfg)]);
    assert_eq!(r.code, EXIT_INFEASIBLE);
    assert!(r.stderr.contains("1900"));

    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "lambda_A = 1.5\n").unwrap();
    assert_eq!(growthpath(&["simulate", "--config", path_str(&cfg)]).code, EXIT_DATA);
}

#[test]
fn demo_files_reproduce_figures() {
    let dir = tempfile::tempdir().unwrap();
    let r = growthpath(&["demo", "--out-dir", path_str(dir.path())]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    for name in ["gdpnorth.csv", "gdpmiddle.csv", "gdpsouth.csv"] {
        let text = fs::read_to_string(dir.path().join(name)).unwrap();
        assert_eq!(text.lines().count(), 99, "{name}");
    }

    let averages = read_xy(&dir.path().join("fig1b_north.csv"));
    assert_eq!(averages.len(), 98);
    let last = averages.last().unwrap();
    assert_eq!(last[0], 1998.0);
    assert!((last[1] - 0.035).abs() < 0.003, "{}", last[1]);

    let fig2 = read_xy(&dir.path().join("fig2_north.csv"));
    assert!(fig2.iter().all(|r| (r[1] - r[2]).abs() < 0.005));

    let middle = read_xy(&dir.path().join("fig1a_middle.csv"));
    assert!(middle.iter().all(|r| (r[1] - 0.030).abs() <= 0.005));
}

#[test]
fn demo_output_feeds_back_through_average() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(growthpath(&["demo", "--out-dir", path_str(dir.path())]).code, EXIT_OK);
    let panel = dir.path().join("gdpsouth.csv");
    let before = fs::read(&panel).unwrap();
    let r = growthpath(&["average", "--panel", path_str(&panel)]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(fs::read(&panel).unwrap(), before, "input mutated");

    let fig1a = fs::read_to_string(dir.path().join("fig1a_south.csv")).unwrap();
    let fig1b = fs::read_to_string(dir.path().join("fig1b_south.csv")).unwrap();
    for ((line, a), b) in r.stdout.lines().skip(1).zip(fig1a.lines().skip(1)).zip(fig1b.lines().skip(1)) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(format!("{},{}", fields[0], fields[1]), a);
        assert_eq!(format!("{},{}", fields[0], fields[2]), b);
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        assert_eq!(growthpath(&["demo", "--out-dir", path_str(d.path())]).code, EXIT_OK);
    }
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 11);
    for name in names {
        assert_eq!(
            fs::read(a.path().join(&name)).unwrap(),
            fs::read(b.path().join(&name)).unwrap(),
            "{name:?}"
        );
    }
}

#[test]
fn binary_exit_code_contract() {
    let bin = env!("CARGO_BIN_EXE_growthpath");
    let ok = Command::new(bin)
        .args(["catchup", "--naive", "11", "18", "0.06", "0.03"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("17.15"));
    let usage = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));
}
