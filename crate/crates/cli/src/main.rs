mod render;
mod template;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use charplane_core::field::FieldCtx;
use charplane_core::invariants::{generic_transversal, invariant_report, line, teissier_bound};
use charplane_core::poly::{parse_poly, BivarPoly, Weight};
use charplane_core::tameness::{merle_verify, tame_report};
use charplane_core::Error;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "charplane", version, about = "Invariants and tameness of plane curve singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// mu, delta, r, c, branches and semigroups.
    Invariants(Opts),
    /// Milnor formula, directly and by every criterion.
    Tame(Opts),
    /// `tame` over a list of primes.
    Sweep(Opts),
    /// `tame` on every line of a file, with a property audit.
    Corpus(Opts),
    /// Decomposition of f_y of a branch by contact ratios.
    Merle(Opts),
    /// Polar identities for a line l.
    Teissier(Opts),
}

#[derive(Args, Clone)]
struct Opts {
    /// Polynomial in x and y, e.g. "(y^2+x^3)^2+x^5*y". `{p+2}` style
    /// placeholders are expanded with the characteristic.
    poly: Option<String>,
    /// Characteristic: 0 or a prime.
    #[arg(short = 'p', long = "char", default_value_t = 0)]
    characteristic: u64,
    /// Weight n,m of x and y.
    #[arg(long, value_parser = parse_pair)]
    weights: Option<(u64, u64)>,
    /// l = -b x + a y given as a,b.
    #[arg(long, value_parser = parse_signed_pair, allow_hyphen_values = true)]
    line: Option<(i64, i64)>,
    /// Comma-separated primes for `sweep`.
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
    /// Named polynomial family instead of POLY.
    #[arg(long)]
    template: Option<String>,
    #[arg(short = 'i', long = "input")]
    input: Option<PathBuf>,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
    #[arg(long, conflicts_with = "table")]
    json: bool,
    #[arg(long)]
    table: bool,
}

fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once(',').ok_or("expected n,m")?;
    let a = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    Ok((a, b))
}

fn parse_signed_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected a,b")?;
    let a = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    Ok((a, b))
}

/// A failed job: 1 for input errors, 2 for failed hypotheses with a partial
/// result in `record`.
struct Failure {
    code: u8,
    message: String,
    record: Option<Value>,
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        Failure {
            code: 1,
            message,
            record: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from(e.to_string())
    }
}

struct Job {
    name: &'static str,
    text: String,
    p: u64,
    weights: Option<(u64, u64)>,
    line: Option<(i64, i64)>,
}

struct Timer {
    last: Instant,
    laps: Vec<(&'static str, u128)>,
}

impl Timer {
    fn new() -> Self {
        Timer {
            last: Instant::now(),
            laps: Vec::new(),
        }
    }

    fn lap(&mut self, name: &'static str) {
        let now = Instant::now();
        self.laps.push((name, (now - self.last).as_micros()));
        self.last = now;
    }

    fn json(&self) -> Value {
        let mut m = serde_json::Map::new();
        for (k, v) in &self.laps {
            m.insert(format!("{k}_us"), Value::String(v.to_string()));
        }
        Value::Object(m)
    }
}

fn record(job: &Job, expanded: &str) -> Value {
    json!({
        "schema": render::SCHEMA,
        "command": job.name,
        "input": {
            "poly": job.text,
            "expanded": expanded,
            "characteristic": job.p.to_string(),
            "weights": job.weights.map(|(n, m)| format!("{n},{m}")),
            "line": job.line.map(|(a, b)| format!("{a},{b}")),
        },
        "status": "ok",
        "error": null,
        "report": null,
        "criteria": [],
        "polar": null,
        "merle": null,
        "audit": null,
        "field_tower": null,
        "timings": {},
    })
}

fn setup(job: &Job) -> Result<(BivarPoly, String, Option<Weight>), Failure> {
    let ctx = FieldCtx::make(job.p, 1)?;
    let expanded = template::expand(&job.text, job.p)?;
    let f = parse_poly(&expanded, &ctx)?;
    let w = match job.weights {
        Some((n, m)) => {
            let conv = |v: u64| u32::try_from(v).map_err(|_| format!("weight {v} too large"));
            Some(Weight::new(conv(n)?, conv(m)?)?)
        }
        None => None,
    };
    Ok((f, expanded, w))
}

fn run(job: &Job) -> Result<Value, Failure> {
    let mut t = Timer::new();
    let (f, expanded, w) = setup(job)?;
    let mut rec = record(job, &expanded);
    t.lap("parse");
    let l = job.line.map(|(a, b)| line(f.ctx(), a, b));
    match job.name {
        "invariants" | "tame" => {
            let rep = invariant_report(&f)?;
            rec["field_tower"] = rep.field_degree.to_string().into();
            rec["report"] = render::report(&rep);
            t.lap("invariants");
            if job.name == "tame" {
                let tr = tame_report(&f, w, l.as_ref())?;
                let mut criteria = vec![render::criterion(&tr.direct)];
                criteria.extend(tr.criteria.iter().map(render::criterion));
                rec["criteria"] = Value::Array(criteria);
                rec["merle"] = tr.merle.as_ref().map_or(Value::Null, render::merle);
                rec["audit"] = json!({
                    "inconsistencies": tr.inconsistencies,
                    "converse_candidate": tr.converse_candidate,
                });
                t.lap("criteria");
            }
        }
        "merle" => match merle_verify(&f) {
            Ok(m) => {
                rec["merle"] = render::merle(&m);
                t.lap("merle");
            }
            Err(e @ Error::HypothesisFailed { .. }) => {
                rec["status"] = "partial".into();
                rec["error"] = e.to_string().into();
                return Err(Failure {
                    code: 2,
                    message: e.to_string(),
                    record: Some(rec),
                });
            }
            Err(e) => return Err(e.into()),
        },
        "teissier" => {
            let l = match l {
                Some(l) => l,
                None => generic_transversal(&f)?,
            };
            match teissier_bound(&f, &l) {
                Ok(p) => {
                    rec["polar"] = render::polar(&p);
                    t.lap("polar");
                }
                Err(Error::HypothesisFailed { reason, partial }) => {
                    rec["status"] = "partial".into();
                    rec["error"] = format!("hypothesis failed: {reason}").into();
                    if let Some(p) = partial {
                        rec["polar"] = render::polar(&p);
                    }
                    t.lap("polar");
                    rec["timings"] = t.json();
                    return Err(Failure {
                        code: 2,
                        message: format!("hypothesis failed: {reason}"),
                        record: Some(rec),
                    });
                }
                Err(e) => return Err(e.into()),
            }
        }
        other => unreachable!("single-job command {other}"),
    }
    rec["timings"] = t.json();
    Ok(rec)
}

fn poly_text(o: &Opts) -> Result<String, String> {
    match (&o.poly, &o.template) {
        (Some(_), Some(_)) => Err("give either POLY or --template, not both".into()),
        (Some(p), None) => Ok(p.clone()),
        (None, Some(t)) => template::lookup(t).map(str::to_string),
        (None, None) => Err("missing POLY (or --template)".into()),
    }
}

fn verdict_of(rec: &Value) -> Option<&str> {
    rec["criteria"].get(0)?["verdict"].as_str()
}

fn sweep(o: &Opts) -> Result<Vec<Value>, String> {
    let text = poly_text(o)?;
    if o.primes.is_empty() {
        return Err("sweep needs --primes".into());
    }
    for &p in &o.primes {
        FieldCtx::make(p, 1).map_err(|e| e.to_string())?;
        if p == 0 {
            return Err("sweep primes must be prime".into());
        }
    }
    let mut out: Vec<Value> = o
        .primes
        .par_iter()
        .map(|&p| {
            let job = Job {
                name: "tame",
                text: text.clone(),
                p,
                weights: o.weights,
                line: o.line,
            };
            run(&job).unwrap_or_else(|f| error_record(&job, f))
        })
        .collect();
    let (mut tame, mut untame, mut errors) = (Vec::new(), Vec::new(), Vec::new());
    for (rec, p) in out.iter().zip(&o.primes) {
        let p = p.to_string();
        match (rec["status"].as_str(), verdict_of(rec)) {
            (Some("ok"), Some("true")) => tame.push(p),
            (Some("ok"), Some("false")) => untame.push(p),
            _ => errors.push(p),
        }
    }
    out.push(json!({
        "summary": { "tame": tame, "untame": untame, "errors": errors }
    }));
    Ok(out)
}

fn error_record(job: &Job, f: Failure) -> Value {
    if let Some(rec) = f.record {
        return rec;
    }
    let mut rec = record(job, "");
    rec["status"] = "error".into();
    rec["error"] = f.message.into();
    rec
}

/// Lines of a corpus file: `(line number, text, characteristic)`.
fn corpus_lines(src: &str, default_p: u64) -> Result<Vec<(usize, String, u64)>, String> {
    let mut p = default_p;
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let directive = |d: &str| -> Result<u64, String> {
            d.trim()
                .parse()
                .map_err(|_| format!("line {}: bad directive @p={d}", i + 1))
        };
        if let Some(d) = body.strip_prefix("@p=") {
            p = directive(d)?;
            continue;
        }
        match body.rsplit_once("@p=") {
            Some((expr, d)) => out.push((i + 1, expr.trim().to_string(), directive(d)?)),
            None => out.push((i + 1, body.to_string(), p)),
        }
    }
    Ok(out)
}

fn corpus(o: &Opts) -> Result<Vec<Value>, String> {
    let path = match (&o.input, &o.poly) {
        (Some(p), _) => p.clone(),
        (None, Some(p)) => PathBuf::from(p),
        (None, None) => return Err("corpus needs -i FILE".into()),
    };
    let src = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let lines = corpus_lines(&src, o.characteristic)?;
    let mut out: Vec<Value> = lines
        .par_iter()
        .map(|(n, text, p)| {
            let job = Job {
                name: "tame",
                text: text.clone(),
                p: *p,
                weights: o.weights,
                line: None,
            };
            let mut rec = run(&job).unwrap_or_else(|f| error_record(&job, f));
            rec["input"]["line_number"] = n.to_string().into();
            rec
        })
        .collect();
    let mut failed = 0u64;
    let mut melle_wall = 0u64;
    let mut inconsistencies = 0u64;
    let mut checks = 0u64;
    let mut converse = 0u64;
    let mut tame = 0u64;
    for rec in &out {
        if rec["status"] != "ok" {
            failed += 1;
            continue;
        }
        let rep = &rec["report"];
        let mu = rep["mu"].as_str().unwrap_or("INF");
        let bar: u64 = rep["mu_bar"].as_str().and_then(|s| s.parse().ok()).unwrap_or(0);
        if let Ok(m) = mu.parse::<u64>() {
            if m < bar {
                melle_wall += 1;
            }
        }
        checks += rep["checks"].as_array().map_or(0, |a| a.len() as u64);
        let audit = &rec["audit"];
        inconsistencies += audit["inconsistencies"].as_array().map_or(0, |a| a.len() as u64);
        converse += u64::from(audit["converse_candidate"] == true);
        tame += u64::from(verdict_of(rec) == Some("true"));
    }
    let total = out.len() as u64;
    out.push(json!({
        "audit": {
            "records": total.to_string(),
            "failed": failed.to_string(),
            "tame": tame.to_string(),
            "melle_wall_violations": melle_wall.to_string(),
            "criterion_inconsistencies": inconsistencies.to_string(),
            "internal_check_failures": checks.to_string(),
            "converse_candidates": converse.to_string(),
        }
    }));
    Ok(out)
}

fn emit(o: &Opts, records: &[Value]) -> Result<(), String> {
    let mut text = String::new();
    for r in records {
        if o.table {
            text.push_str(&render::table(r));
            text.push('\n');
        } else {
            text.push_str(&serde_json::to_string(r).map_err(|e| e.to_string())?);
            text.push('\n');
        }
    }
    match &o.output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, o) = match &cli.command {
        Command::Invariants(o) => ("invariants", o),
        Command::Tame(o) => ("tame", o),
        Command::Sweep(o) => ("sweep", o),
        Command::Corpus(o) => ("corpus", o),
        Command::Merle(o) => ("merle", o),
        Command::Teissier(o) => ("teissier", o),
    };
    let result: Result<Vec<Value>, Failure> = match name {
        "sweep" => sweep(o).map_err(Failure::from),
        "corpus" => corpus(o).map_err(Failure::from),
        _ => poly_text(o).map_err(Failure::from).and_then(|text| {
            run(&Job {
                name,
                text,
                p: o.characteristic,
                weights: o.weights,
                line: o.line,
            })
            .map(|r| vec![r])
        }),
    };
    let (records, code) = match result {
        Ok(r) => (r, 0),
        Err(f) => {
            eprintln!("charplane: {}", f.message);
            match f.record {
                Some(r) => (vec![r], f.code),
                None => return ExitCode::from(f.code),
            }
        }
    };
    if let Err(e) = emit(o, &records) {
        eprintln!("charplane: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
