use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphstate")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn star_file() -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "n 4\ne 1 2\ne 1 3\ne 1 4").unwrap();
    f
}

#[test]
fn analyze_text_and_json() {
    let f = star_file();
    let path = f.path().to_str().unwrap();
    let o = run(&["analyze", path, "--p", "2", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("verdict ENTANGLED_NPT"), "{text}");
    assert!(text.contains("concurrence 0.333333333"), "{text}");

    let v = json(&["--json", "analyze", path, "--p", "2", "--q", "2"]);
    assert_eq!(v["graph"]["m"], 3);
    let min = v["separability"]["pt_spectrum"][0].as_f64().unwrap();
    assert!((min - (0.25 - 17f64.sqrt() / 12.0)).abs() < 1e-9, "{min}");
}

#[test]
fn builtin_graphs_parse() {
    let v = json(&["--json", "analyze", "@petersen"]);
    assert_eq!(v["graph"]["n"], 10);
    assert_eq!(v["graph"]["regular_degree"], 3);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "/nonexistent/graph.txt"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    let f = star_file();
    let path = f.path().to_str().unwrap();
    // four vertices do not fit 2x3
    let o = run(&["analyze", path, "--p", "2", "--q", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn census_csv_has_one_row_per_class() {
    let o = run(&["census4", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("class_id,edges"));
    // header plus the ten classes that have edges
    assert_eq!(lines.len(), 11);
}

#[test]
fn channel_keeps_unit_trace() {
    let f = star_file();
    let path = f.path().to_str().unwrap();
    let mut script = tempfile::NamedTempFile::new().unwrap();
    writeln!(script, "del-edge 1 2\nadd-edge 2 3\nadd-vertex\ndel-vertex 5").unwrap();
    let from_script = json(&["--json", "channel", path, "--script", script.path().to_str().unwrap()]);
    let inline = json(&[
        "--json", "channel", path, "-e", "del-edge 1 2", "-e", "add-edge 2 3", "-e", "add-vertex", "-e", "del-vertex 5",
    ]);
    assert_eq!(from_script, inline);
    let steps = inline["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 4);
    for s in steps {
        assert!((s["trace"].as_f64().unwrap() - 1.0).abs() < 1e-10, "{s}");
        assert!(s["deviation"].as_f64().unwrap() < 1e-10, "{s}");
    }
    assert_eq!(inline["end"]["m"], 3);
}

#[test]
fn bad_edit_is_rejected() {
    let f = star_file();
    let o = run(&["channel", f.path().to_str().unwrap(), "-e", "del-edge 2 3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["channel", f.path().to_str().unwrap(), "-e", "remove 1 2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dumped_kraus_operators_are_complete() {
    let f = star_file();
    let v = json(&["--json", "channel", f.path().to_str().unwrap(), "-e", "del-edge 1 2", "--dump-kraus"]);
    let kraus = &v["steps"][0]["kraus"];
    let dim = kraus["input_dim"].as_u64().unwrap() as usize;
    let ops = kraus["operators"].as_array().unwrap();
    assert_eq!(ops.len(), 8);
    // Σ A†A = I, accumulated from the raw JSON entries
    let mut acc = vec![vec![(0.0, 0.0); dim]; dim];
    for a in ops {
        let a = a.as_array().unwrap();
        for i in 0..dim {
            for j in 0..dim {
                for row in a {
                    let x = &row[i];
                    let y = &row[j];
                    let (xr, xi) = (x[0].as_f64().unwrap(), x[1].as_f64().unwrap());
                    let (yr, yi) = (y[0].as_f64().unwrap(), y[1].as_f64().unwrap());
                    acc[i][j].0 += xr * yr + xi * yi;
                    acc[i][j].1 += xr * yi - xi * yr;
                }
            }
        }
    }
    for (i, row) in acc.iter().enumerate() {
        for (j, &(re, im)) in row.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((re - want).abs() < 1e-10 && im.abs() < 1e-10, "({i},{j}) = {re}+{im}i");
        }
    }
}

#[test]
fn sampled_runs_are_reproducible() {
    let a = run(&["--json", "--seed", "7", "search", "@petersen", "--p", "2", "--q", "5", "--budget", "300", "--sample"]);
    let b = run(&["--json", "--seed", "7", "search", "@petersen", "--p", "2", "--q", "5", "--budget", "300", "--sample"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);

    let a = run(&["--json", "--workers", "1", "probe", "--max-n", "4"]);
    let b = run(&["--json", "--workers", "2", "probe", "--max-n", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn circulant_entropy() {
    let v = json(&["--json", "entropy", "--circulant", "12", "1"]);
    let text = v.to_string();
    assert!(text.contains("3.14024"), "{text}");
}
