use std::fs;
use std::process::{Command, Output};

const HEADER: &str = "T,H,J,J2,Jm,concurrence,qd,classical_corr,mutual_info,gmqd,gqd1,theta,flags";

fn diamond(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diamond")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column<'a>(line: &'a str, name: &str) -> &'a str {
    let i = HEADER.split(',').position(|c| c == name).unwrap();
    line.split(',').nth(i).unwrap()
}

#[test]
fn point_reports_all_measures() {
    let o = diamond(&["point", "--j", "1", "--j2", "1", "--jm", "0", "--field", "0", "--temp", "0.5"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines, [HEADER, lines[1]]);
    assert_eq!(column(lines[1], "concurrence"), "0.123703844609");
    assert_eq!(column(lines[1], "qd"), "0.179588237441");
    assert_eq!(column(lines[1], "gmqd"), "0.0780174352385");
    assert_eq!(column(lines[1], "gqd1"), "0.485813533262");
}

#[test]
fn point_at_zero_temperature_needs_a_floor() {
    let o = diamond(&["point", "--temp", "0"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("too low") && err.contains("--temp-floor"), "{err}");

    let o = diamond(&["point", "--temp", "0", "--temp-floor", "0.001"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let row = out.lines().nth(1).unwrap();
    assert_eq!(column(row, "T"), "0.001");
    assert!(column(row, "flags").contains("temp_floor"));
}

#[test]
fn point_without_heisenberg_coupling_is_uncorrelated() {
    let o = diamond(&["point", "--j2", "0", "--j", "1.3", "--field", "0.4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let row = out.lines().nth(1).unwrap();
    for m in ["concurrence", "qd", "gmqd"] {
        assert_eq!(column(row, m), "0", "{m}");
    }
}

#[test]
fn measure_selection_prints_na_for_the_rest() {
    let o = diamond(&["point", "--measures", "concurrence"]);
    let out = stdout(&o);
    let row = out.lines().nth(1).unwrap();
    for m in ["qd", "classical_corr", "gmqd", "gqd1"] {
        assert_eq!(column(row, m), "NA", "{m}");
    }
    assert_ne!(column(row, "concurrence"), "NA");
    assert_eq!(diamond(&["point", "--measures", "entropy"]).status.code(), Some(2));
}

#[test]
fn sweep_is_ordered_deterministic_and_complete() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = diamond(&[
            "sweep", "--temp", "0.1:2:4", "--j", "-2:2:3", "--field", "0:1:2", "--jm", "0.5",
            "--out", path.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        fs::read_to_string(path).unwrap()
    };
    let a = run("a.csv");
    assert_eq!(a, run("b.csv"));
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines[0], HEADER);
    assert_eq!(lines.len(), 1 + 4 * 3 * 2);
    let keys: Vec<(f64, f64, f64)> = lines[1..]
        .iter()
        .map(|l| {
            let v: Vec<f64> = l.split(',').take(3).map(|x| x.parse().unwrap()).collect();
            (v[0], v[1], v[2])
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
    assert_eq!(keys, sorted);
    assert!(!a.contains("NaN"));
    // Non-zero field breaks the Bell-diagonal structure.
    assert!(lines[1..].iter().filter(|l| column(l, "H") == "1").all(|l| column(l, "gqd1") == "NA"));
}

#[test]
fn single_point_sweep_matches_point() {
    let args = ["--j", "0.7", "--j2", "1.2", "--jm", "0.3", "--field", "0.2", "--temp", "0.4"];
    let p = diamond(&[&["point"], &args[..]].concat());
    let s = diamond(&[&["sweep"], &args[..]].concat());
    assert_eq!(stdout(&p), stdout(&s));
}

#[test]
fn sweep_rejects_bad_grids() {
    let o = diamond(&["sweep", "--temp", "0.1:1:10000", "--j", "0:1:10000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    assert_eq!(diamond(&["sweep", "--temp", "0.1:1:10", "--grid-cap", "5"]).status.code(), Some(3));
    assert_eq!(diamond(&["sweep", "--temp", "2:1:3"]).status.code(), Some(2));
    assert_eq!(diamond(&["sweep", "--temp", "0:1:0"]).status.code(), Some(2));
    assert_eq!(diamond(&["sweep", "--temp", "abc"]).status.code(), Some(2));
}

#[test]
fn jsonl_rows_carry_the_csv_columns() {
    let o = diamond(&["sweep", "--format", "jsonl", "--temp", "0.5:1:2", "--field", "0.3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 2);
    for row in &rows {
        let keys: Vec<&str> = row.as_object().unwrap().keys().map(String::as_str).collect();
        let mut expected: Vec<&str> = HEADER.split(',').collect();
        expected.sort();
        let mut keys = keys;
        keys.sort();
        assert_eq!(keys, expected);
        assert!(row["gqd1"].is_null());
    }
}

#[test]
fn threshold_outcomes() {
    let o = diamond(&["threshold", "--scan", "T", "--lo", "0.1", "--hi", "5", "--measure", "concurrence"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let x: f64 = out.lines().nth(1).unwrap().rsplit(',').next().unwrap().parse().unwrap();
    assert!(x > 0.6 && x < 0.7, "{x}");

    let o = diamond(&["threshold", "--scan", "T", "--lo", "0.1", "--hi", "10", "--measure", "qd"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("NoThreshold"));

    let o = diamond(&[
        "threshold", "--scan", "H", "--lo", "-4", "--hi", "4", "--j", "2", "--jm", "1.5",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no bracket"));
}

#[test]
fn validate_single_point() {
    let o = diamond(&["validate", "--grid-cap", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("points: 1") && out.contains("failures: 0") && out.contains("result: PASS"));
}

#[test]
fn validate_reports_deviations_separately() {
    let o = diamond(&["validate", "--grid-cap", "40", "--format", "jsonl"]);
    assert!(o.status.success());
    let summary: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(summary["failures"].as_array().unwrap().len(), 0);
    let devs = summary["deviations"].as_array().unwrap();
    assert!(devs.iter().any(|d| d["check"] == "v_element" && d["params"]["j"] != 0.0));

    let o = diamond(&["validate", "--grid-cap", "40", "--use-verbatim-v", "--format", "jsonl"]);
    assert!(o.status.success());
    let summary: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(!summary["warnings"].as_array().unwrap().is_empty());
}

#[cfg(unix)]
#[test]
fn interrupt_flushes_an_ordered_prefix() {
    use std::time::Duration;

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.csv");
    let mut child = Command::new(env!("CARGO_BIN_EXE_diamond"))
        .args(["sweep", "--temp", "0.05:2:2000", "--j", "-2:2:1000", "--out", path.to_str().unwrap()])
        .spawn()
        .unwrap();
    std::thread::sleep(Duration::from_millis(1500));
    let pid = child.id().to_string();
    assert!(Command::new("kill").args(["-INT", &pid]).status().unwrap().success());
    let status = child.wait().unwrap();
    assert!(!status.success());
    assert_eq!(status.code(), Some(130));

    let text = fs::read_to_string(path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], HEADER);
    let rows = &lines[1..];
    assert!(rows.len() < 2_000_000);
    assert_eq!(rows.len() % 256, 0, "only whole chunks are emitted");
    for (i, row) in rows.iter().enumerate() {
        let j: f64 = column(row, "J").parse().unwrap();
        let expected = -2.0 + 4.0 * (i % 1000) as f64 / 999.0;
        assert!((j - expected).abs() < 1e-9, "row {i}: {j} vs {expected}");
    }
}
