//! Command-line front end for `dynheight`: job specs, config files, sweeps
//! and JSON/CSV output.

pub mod output;
pub mod params;
pub mod verbs;

use std::collections::BTreeMap;

use dynheight::exec::{map_collect, with_workers};
use dynheight::{Error, Execution, Result};
use serde::Serialize;
use serde_json::json;

use output::{render_csv, Format, Output, Table};
use params::{expand_range, Params};
use verbs::{run_verb, verb, Ctx};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_PRECISION: u32 = 128;
pub const DEFAULT_MAX_JOBS: usize = 10_000;

/// Everything that determines a run's output. The worker count and the
/// output path are not serialized.
#[derive(Clone, Debug, Serialize)]
pub struct JobSpec {
    pub verb: String,
    pub params: BTreeMap<String, String>,
    pub format: Format,
    pub precision: u32,
    pub seed: u64,
    #[serde(skip)]
    pub output: Option<String>,
}

impl JobSpec {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("job spec serializes")
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 1,
        Error::Domain(_) | Error::NotCertified(_) => 2,
        Error::ResourceGuard(_) => 3,
    }
}

/// Runs a job and renders its output in the requested format.
pub fn run(spec: &JobSpec, workers: Option<usize>) -> Result<String> {
    let ctx = Ctx { prec: spec.precision, seed: spec.seed, exec: Execution::best_available() };
    let ps = Params(spec.params.clone());
    let out = with_workers(workers, || {
        if spec.verb == "sweep" {
            sweep(&ps, &ctx)
        } else {
            if verb(&spec.verb).is_none() {
                return Err(Error::Parse(format!("unknown verb '{}'", spec.verb)));
            }
            run_verb(&spec.verb, &ps, &ctx)
        }
    })?;
    render(spec, &out)
}

pub fn render(spec: &JobSpec, out: &Output) -> Result<String> {
    match spec.format {
        Format::Json => {
            let doc = json!({ "version": VERSION, "job": spec, "result": out.result });
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::Parse(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => render_csv(&spec.to_json_line(), &out.csv_table()),
    }
}

/// Sweep over the cartesian product of `range.<key>` parameters, in key
/// order with the first key outermost. Remaining parameters other than
/// `verb` and `max-jobs` form the template.
pub fn sweep(ps: &Params, ctx: &Ctx) -> Result<Output> {
    let name = ps.req("verb")?;
    let spec = verb(name).ok_or_else(|| Error::Parse(format!("unknown verb '{name}'")))?;
    let max_jobs: usize = ps.int_or("max-jobs", DEFAULT_MAX_JOBS)?;
    let mut template = BTreeMap::new();
    let mut axes: Vec<(String, Vec<String>)> = Vec::new();
    for (k, v) in &ps.0 {
        if let Some(key) = k.strip_prefix("range.") {
            axes.push((key.to_string(), expand_range(v)?));
        } else if k != "verb" && k != "max-jobs" {
            template.insert(k.clone(), v.clone());
        }
    }
    let total = axes.iter().map(|(_, vs)| vs.len()).try_fold(1usize, |acc, n| acc.checked_mul(n));
    let total = total.unwrap_or(usize::MAX);
    if axes.is_empty() {
        return Err(Error::Parse("sweep needs at least one --range key=values".into()));
    }
    if total > max_jobs {
        return Err(Error::ResourceGuard(format!("sweep has {total} jobs, cap is {max_jobs}")));
    }
    let mut jobs: Vec<BTreeMap<String, String>> = vec![template];
    for (key, values) in &axes {
        let mut next = Vec::with_capacity(jobs.len() * values.len());
        for j in &jobs {
            for v in values {
                let mut j = j.clone();
                j.insert(key.clone(), v.clone());
                next.push(j);
            }
        }
        jobs = next;
    }
    let inner = Ctx { prec: ctx.prec, seed: ctx.seed, exec: Execution::Sequential };
    let results = map_collect(ctx.exec, &jobs, |j| run_verb(name, &Params(j.clone()), &inner));
    let mut headers: Vec<String> = axes.iter().map(|(k, _)| k.clone()).filter(|k| !spec.columns.contains(&k.as_str())).collect();
    let swept = headers.len();
    headers.extend(spec.columns.iter().map(|c| c.to_string()));
    let mut table = Table { headers, rows: Vec::new() };
    let mut rows_json = Vec::new();
    for (j, r) in jobs.iter().zip(results) {
        let out = r?;
        let mut row: Vec<String> = table.headers[..swept].iter().map(|k| j[k].clone()).collect();
        for c in spec.columns {
            row.push(out.summary.iter().find(|(k, _)| k == c).map(|(_, v)| v.clone()).unwrap_or_default());
        }
        rows_json.push(json!({ "params": j, "result": out.result }));
        table.push(row);
    }
    let mut out = Output::new(json!({ "verb": name, "jobs": rows_json }))?.with_table(table);
    out.summary = vec![("jobs".to_string(), jobs.len().to_string())];
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(verb: &str, kv: &[(&str, &str)], format: Format) -> JobSpec {
        JobSpec {
            verb: verb.into(),
            params: kv.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            format,
            precision: 128,
            seed: 0,
            output: None,
        }
    }

    #[test]
    fn snap_sweep_r_column() {
        let s = spec("sweep", &[("verb", "snap"), ("map", "X^2"), ("alpha", "2"), ("range.n", "1..6")], Format::Csv);
        let text = run(&s, None).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# job: {"));
        assert_eq!(lines.next().unwrap(), "alpha,n,D,r,max_degree,proportion,bound_shape_value");
        let r: Vec<&str> = lines.map(|l| l.split(',').nth(3).unwrap()).collect();
        assert_eq!(r, ["2", "3", "4", "5", "6", "7"]);
    }

    #[test]
    fn delta_sweep_and_empty_range() {
        let s = spec("sweep", &[("verb", "delta-v"), ("map", "X^2 + 1"), ("range.p", "2,3,5")], Format::Csv);
        let text = run(&s, None).unwrap();
        let rows: Vec<&str> = text.lines().skip(1).collect();
        assert_eq!(rows, ["p,delta", "2,4", "3,1", "5,1"]);
        let s = spec("sweep", &[("verb", "snap"), ("map", "X^2"), ("alpha", "2"), ("range.n", "1..0")], Format::Csv);
        let text = run(&s, None).unwrap();
        assert_eq!(text.lines().count(), 2);
    }

    #[test]
    fn sweep_cap_and_errors() {
        let s = spec("sweep", &[("verb", "order"), ("a", "2"), ("range.n", "3..100"), ("max-jobs", "10")], Format::Csv);
        assert_eq!(exit_code(&run(&s, None).unwrap_err()), 3);
        assert_eq!(exit_code(&run(&spec("nope", &[], Format::Json), None).unwrap_err()), 1);
        assert_eq!(exit_code(&run(&spec("masser-t", &[("AZ", "1"), ("M", "1"), ("H", "1"), ("d", "1")], Format::Json), None).unwrap_err()), 2);
    }

    #[test]
    fn deterministic_across_worker_counts() {
        let s = spec("census", &[("function", "square"), ("height", "9")], Format::Csv);
        assert_eq!(run(&s, Some(1)).unwrap(), run(&s, Some(3)).unwrap());
        let s = spec("iterate", &[("map", "X^2 + 1"), ("n", "2")], Format::Json);
        let a = run(&s, None).unwrap();
        assert!(a.contains("\"version\"") && a.contains("\"job\""));
        assert_eq!(a, run(&s, None).unwrap());
    }
}
