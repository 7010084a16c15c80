use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dynheight"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn data_lines(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn snap_degrees() {
    let out = stdout(&["snap", "--map", "X^2", "--alpha", "2", "--n", "3"]);
    assert!(out.starts_with("# job: {"));
    assert_eq!(data_lines(&out), ["degree", "1", "1", "2", "2", "4", "4", "4", "4"]);
}

#[test]
fn json_embeds_version_and_job() {
    let out = stdout(&["cyclotomic-degree", "--p", "2", "--b", "8"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["job"]["verb"], "cyclotomic-degree");
    assert_eq!(v["job"]["params"]["b"], "8");
    assert_eq!(v["result"]["degree"], 4);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-verb"]).status.code(), Some(1));
    assert_eq!(run(&["iterate", "--map", "X^2+", "--n", "2"]).status.code(), Some(1));
    assert_eq!(run(&["masser-t", "--AZ", "1", "--M", "1", "--H", "1", "--d", "1"]).status.code(), Some(2));
    let guard = run(&["sweep", "--verb", "order", "--set", "a=2", "--range", "n=3..100", "--max-jobs", "5"]);
    assert_eq!(guard.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&guard.stderr).contains("cap"));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn deterministic_output() {
    let args = ["census", "--function", "lambda", "--height", "8", "--format", "json"];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(a, b);
    let mut with_jobs = args.to_vec();
    with_jobs.extend(["--jobs", "2"]);
    assert_eq!(a, stdout(&with_jobs));
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let args = ["snap", "--map", "X^2 + 1", "--alpha", "1", "--n", "2"];
    let direct = stdout(&args);
    let mut to_file = args.to_vec();
    let p = path.to_str().unwrap();
    to_file.extend(["--output", p]);
    assert_eq!(stdout(&to_file), "");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
}

#[test]
fn sweep_snap_r_column() {
    let out = stdout(&["sweep", "--verb", "snap", "--set", "map=X^2", "--set", "alpha=2", "--range", "n=1..6"]);
    let lines = data_lines(&out);
    assert_eq!(lines[0], "alpha,n,D,r,max_degree,proportion,bound_shape_value");
    let r: Vec<&str> = lines[1..].iter().map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(r, ["2", "3", "4", "5", "6", "7"]);
}

#[test]
fn sweep_delta_over_primes() {
    let out = stdout(&["sweep", "--verb", "delta-v", "--set", "map=X^2 + 1", "--range", "p=2,3,5"]);
    assert_eq!(data_lines(&out), ["p,delta", "2,4", "3,1", "5,1"]);
}

#[test]
fn sweep_empty_range_is_header_only() {
    let out = stdout(&["sweep", "--verb", "snap", "--set", "map=X^2", "--set", "alpha=2", "--range", "n=3..2"]);
    assert_eq!(data_lines(&out), ["alpha,n,D,r,max_degree,proportion,bound_shape_value"]);
}

#[test]
fn config_file_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.conf");
    std::fs::write(&cfg, "# snap defaults\nmap = X^2\nalpha = 2\nn = 2\nformat = json\n").unwrap();
    let c = cfg.to_str().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&["snap", "--config", c])).unwrap();
    assert_eq!(v["job"]["params"]["n"], "2");
    let v: serde_json::Value = serde_json::from_str(&stdout(&["snap", "--config", c, "--n", "3"])).unwrap();
    assert_eq!(v["job"]["params"]["n"], "3");
    assert_eq!(v["job"]["format"], "json");
}

#[test]
fn config_ranges_drive_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.conf");
    std::fs::write(&cfg, "verb = delta-v\nmap = X^2 + 1\nrange.p = 2,3\n").unwrap();
    let out = stdout(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(data_lines(&out), ["p,delta", "2,4", "3,1"]);
}
