use std::process::{Command, Output};

fn gk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gkstates")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn parse_row(line: &str) -> Vec<f64> {
    line.split(',').map(|c| c.parse().unwrap()).collect()
}

#[test]
fn morse_moments_json_summary() {
    let o = gk(&["moments", "--model", "morse", "--mu", "2", "--J", "4", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for (key, want) in [("mean", 1.0), ("variance", 1.0), ("mandel_q", 0.0), ("J", 4.0), ("gamma", 0.0)] {
        assert!((v[key].as_f64().unwrap() - want).abs() < 1e-12, "{key}");
    }
    assert!(v.get("n0").is_none());
    assert!(v.get("t_revival").is_none());
}

#[test]
fn autocorr_csv_layout() {
    let o = gk(&["autocorr", "--model", "quasiharmonic", "--upsilon", "0.1", "--n0", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "t,tau,re_A,im_A,abs2_A,tau_cl");
    let first = parse_row(lines.next().unwrap());
    for (got, want) in first.iter().zip([0.0, 0.0, 1.0, 0.0, 1.0, 0.0]) {
        assert!((got - want).abs() < 1e-12);
    }
    let rows: Vec<Vec<f64>> = lines.map(parse_row).collect();
    // default horizon 1.1 T_rev with T_rev = 200π
    let last = rows.last().unwrap();
    assert!(last[1] >= 1.1 - 1e-9 && last[1] < 1.11);
    for r in &rows {
        assert!(r[4] <= 1.0 + 1e-12);
        assert!((r[2] * r[2] + r[3] * r[3] - r[4]).abs() < 1e-12);
    }
    // every float cell carries 17 significant digits
    let cell = text.lines().nth(2).unwrap().split(',').next().unwrap();
    assert_eq!(cell.split('e').next().unwrap().len(), 18);
}

#[test]
fn revival_rows_labelled() {
    let o = gk(&["revivals", "--model", "qh", "--upsilon", "0.1", "--n0", "20", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "time,tau,abs2,p,q");
    let labelled: Vec<&str> = text.lines().skip(1).filter(|l| !l.ends_with(",,")).collect();
    let pq: Vec<String> = labelled.iter().map(|l| l.rsplitn(3, ',').take(2).collect::<Vec<_>>().join("/")).collect();
    // rsplitn yields q before p
    for want in ["2/1", "3/1", "1/1"] {
        assert!(pq.iter().any(|s| s == want), "{pq:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dist.csv");
    let o = gk(&["dist", "--model", "morse", "--mu", "1", "--J", "2", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,P_n");
    let p0 = parse_row(lines.next().unwrap())[1];
    assert!((p0 - (-2.0f64).exp()).abs() < 1e-15);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["autocorr", "--model", "qh", "--upsilon", "0.2", "--n0", "10", "--format", "json"];
    let a = gk(&args);
    let b = gk(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = gk(&["eigenfunction", "--model", "qh", "--upsilon", "0.3", "--n", "3"]);
    let d = gk(&["eigenfunction", "--model", "qh", "--upsilon", "0.3", "--n", "3"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn solve_j_prints_single_value() {
    let o = gk(&["solve-j", "--model", "morse", "--mu", "0.5", "--n0", "8"]);
    assert!(o.status.success());
    let j: f64 = stdout(&o).trim().parse().unwrap();
    assert!((j - 2.0).abs() < 1e-12);
}

#[test]
fn eigenfunction_two_columns() {
    let o = gk(&["eigenfunction", "--model", "qh", "--upsilon", "0.2", "--n", "2", "--points", "2001"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "rho,psi");
    assert_eq!(text.lines().count(), 2002);
    assert!(text.lines().skip(1).all(|l| l.split(',').count() == 2));
}

#[test]
fn exit_codes() {
    // usage: missing model parameter, both J and n0, unknown flag
    assert_eq!(gk(&["dist", "--model", "qh", "--J", "1"]).status.code(), Some(2));
    assert_eq!(gk(&["dist", "--model", "morse", "--mu", "1", "--J", "1", "--n0", "2"]).status.code(), Some(2));
    assert_eq!(gk(&["dist", "--model", "morse", "--mu", "1", "--J", "1", "--nope"]).status.code(), Some(2));
    // numeric: truncated spectrum, negative J
    let o = gk(&["dist", "--model", "mathews-lakshmanan", "--lambda-tilde", "0.1", "--J", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    assert_eq!(gk(&["moments", "--model", "morse", "--mu", "1", "--J", "-1"]).status.code(), Some(1));
}

#[test]
fn large_upsilon_warns_on_stderr() {
    let o = gk(&["spectrum", "--model", "qh", "--upsilon", "3", "--n-max", "3"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn measure_check_reports_moments() {
    let o = gk(&["verify-measure", "--model", "qh", "--upsilon", "0.5", "--n-max", "3", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["rel_err"].as_f64().unwrap() < 1e-6));
}
