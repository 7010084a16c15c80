use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Arg, ArgAction, ArgMatches, Command};

use dynheight_cli::output::Format;
use dynheight_cli::params::parse_config;
use dynheight_cli::verbs::VERBS;
use dynheight_cli::{exit_code, run, JobSpec, DEFAULT_PRECISION};

const GLOBAL_KEYS: [&str; 6] = ["output", "format", "precision", "seed", "jobs", "config"];

fn global_args() -> Vec<Arg> {
    vec![
        Arg::new("output").long("output").short('o').global(true).help("write to this file instead of stdout"),
        Arg::new("format").long("format").global(true).help("json or csv"),
        Arg::new("precision").long("precision").global(true).help("working precision in bits (default 128)"),
        Arg::new("seed").long("seed").global(true).help("seed for internal randomness (default 0)"),
        Arg::new("jobs").long("jobs").short('j').global(true).help("worker threads; never changes results"),
        Arg::new("config").long("config").global(true).help("key = value file merged under explicit flags"),
    ]
}

fn cli() -> Command {
    let mut cmd = Command::new("dynheight")
        .version(dynheight_cli::VERSION)
        .about("Heights, Boettcher coordinates and factor statistics of iterated polynomials")
        .subcommand_required(true)
        .args(global_args());
    for v in VERBS {
        let mut sub = Command::new(v.name).about(v.about);
        for p in v.params {
            let arg = Arg::new(p.key).long(p.key).help(p.help);
            sub = sub.arg(if p.flag { arg.action(ArgAction::SetTrue) } else { arg });
        }
        cmd = cmd.subcommand(sub);
    }
    cmd.subcommand(
        Command::new("sweep")
            .about("run a verb over a grid of parameters and emit one CSV row per job")
            .arg(Arg::new("verb").long("verb").help("verb to sweep"))
            .arg(Arg::new("set").long("set").action(ArgAction::Append).help("fixed parameter key=value"))
            .arg(Arg::new("range").long("range").action(ArgAction::Append).help("swept parameter key=a..b or key=v1,v2"))
            .arg(Arg::new("max-jobs").long("max-jobs").help("cap on the number of jobs (default 10000)")),
    )
}

fn split_kv(s: &str) -> Result<(String, String), String> {
    s.split_once('=').map(|(k, v)| (k.trim().to_string(), v.trim().to_string())).ok_or_else(|| format!("expected key=value, got '{s}'"))
}

fn collect(name: &str, m: &ArgMatches) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    if name == "sweep" {
        for key in ["verb", "max-jobs"] {
            if let Some(v) = m.get_one::<String>(key) {
                out.insert(key.to_string(), v.clone());
            }
        }
        for s in m.get_many::<String>("set").into_iter().flatten() {
            let (k, v) = split_kv(s)?;
            out.insert(k, v);
        }
        for s in m.get_many::<String>("range").into_iter().flatten() {
            let (k, v) = split_kv(s)?;
            out.insert(format!("range.{k}"), v);
        }
        return Ok(out);
    }
    let spec = VERBS.iter().find(|v| v.name == name).expect("subcommand comes from the verb table");
    for p in spec.params {
        if p.flag {
            if m.get_flag(p.key) {
                out.insert(p.key.to_string(), "true".into());
            }
        } else if let Some(v) = m.get_one::<String>(p.key) {
            out.insert(p.key.to_string(), v.clone());
        }
    }
    Ok(out)
}

fn build_spec(m: &ArgMatches) -> Result<(JobSpec, Option<usize>), (i32, String)> {
    let parse_err = |e: String| (1, e);
    let (name, sub) = m.subcommand().expect("subcommand required");
    let mut merged = match m.get_one::<String>("config") {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| (1, format!("cannot read config {path}: {e}")))?;
            parse_config(&text).map_err(|e| (1, e.to_string()))?
        }
        None => BTreeMap::new(),
    };
    merged.extend(collect(name, sub).map_err(parse_err)?);
    for key in GLOBAL_KEYS {
        if let Some(v) = m.get_one::<String>(key) {
            merged.insert(key.to_string(), v.clone());
        }
    }
    let mut take = |k: &str| merged.remove(k);
    let default_format = VERBS.iter().find(|v| v.name == name).map_or(Format::Csv, |v| v.default_format);
    let format = match take("format") {
        Some(f) => f.parse().map_err(|e: dynheight::Error| (1, e.to_string()))?,
        None => default_format,
    };
    let num = |v: Option<String>, what: &str| -> Result<Option<u64>, (i32, String)> {
        v.map(|s| s.parse::<u64>().map_err(|_| (1, format!("--{what} expects a nonnegative integer")))).transpose()
    };
    let precision = num(take("precision"), "precision")?.map_or(DEFAULT_PRECISION, |p| p as u32);
    let seed = num(take("seed"), "seed")?.unwrap_or(0);
    let jobs = num(take("jobs"), "jobs")?.map(|j| j as usize);
    let output = take("output");
    take("config");
    if !(16..=1 << 16).contains(&precision) {
        return Err((1, "--precision must be between 16 and 65536".into()));
    }
    Ok((JobSpec { verb: name.to_string(), params: merged, format, precision, seed, output }, jobs))
}

fn main() -> ExitCode {
    let matches = match cli().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (spec, jobs) = match build_spec(&matches) {
        Ok(s) => s,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(code as u8);
        }
    };
    match run(&spec, jobs) {
        Ok(text) => {
            if let Some(path) = &spec.output {
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("error: cannot write {path}: {e}");
                    return ExitCode::from(1);
                }
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
