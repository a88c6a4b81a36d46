//! Command-line front end: identity suites, Λ tables, certificates, oracle moments, ε constants.

pub mod config;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use padic_interp::mellin::*;
use padic_interp::oracle::{coleman_series, kl_reference, mahler_coeffs, mellin_oracle, rational_to_padic};
use padic_interp::{Cyclo, Error, FiniteOrderChar, PadicScalar, WeightChar};

use config::{check_prec, check_prime, parse_scalar, JobConfig};
use suites::{run_suite, Suite};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Compute(#[from] Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "padic-interp", version, about = "p-adic interpolation of twisted moments")]
pub struct Cli {
    /// Odd prime.
    #[arg(short = 'p', global = true)]
    pub p: Option<u32>,
    /// Working precision: values are computed modulo p^M.
    #[arg(short = 'M', global = true)]
    pub prec: Option<i64>,
    /// JSON job descriptor.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for table rows.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Run identity suites; exit status 1 if any identity fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Tabulate Λ values for the characters of a job.
    Lambda,
    /// Convergence certificate for `x^j` twisted by a character of conductor p^m.
    Certify {
        #[arg(long)]
        conductor: Option<u32>,
        #[arg(long, default_value_t = 1)]
        j: i64,
        #[arg(long, default_value_t = 1)]
        m_delta: u32,
        #[arg(long)]
        target: Option<i64>,
    },
    /// Restricted moments of the Coleman measure, by Mahler pairing.
    Mellin {
        #[arg(long, default_value_t = 2)]
        c: i64,
        #[arg(long, value_delimiter = ',', default_values_t = vec![1u32, 3, 5, 7])]
        j: Vec<u32>,
    },
    /// Functional-equation constants.
    Epsilon {
        #[arg(long, default_value_t = 0)]
        conductor: u32,
        #[arg(long, default_value_t = 0)]
        tame: u64,
        #[arg(long, default_value_t = 0)]
        wild: u64,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0i64])]
        j: Vec<i64>,
        #[arg(long, default_value_t = 2)]
        k: i64,
        #[arg(long, default_value = "1")]
        omega: String,
        #[arg(long, default_value = "1")]
        eps_p: String,
        /// `l:value` pairs.
        #[arg(long, value_delimiter = ',')]
        eps_tame: Vec<String>,
    },
}

/// Parses `args` and runs the command; returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, ok)) => match emit(&cli, &text) {
            Ok(()) => i32::from(!ok),
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// The rendered output and whether every identity held.
pub fn execute(cli: &Cli) -> Result<(String, bool), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Config(format!("threads: {e}")))?;
    let data = !matches!(cli.command, Command::Verify { .. });
    if data && cli.format == Some(Format::Text) {
        let csv = Cli { format: Some(Format::Csv), ..cli.clone() };
        let (out, ok) = execute(&csv)?;
        return Ok((align_columns(&out), ok));
    }
    pool.install(|| match &cli.command {
        Command::Verify { suite } => verify(cli, *suite),
        Command::Lambda => lambda(cli),
        Command::Certify { conductor, j, m_delta, target } => certify(cli, *conductor, *j, *m_delta, *target),
        Command::Mellin { c, j } => mellin(cli, *c, j),
        Command::Epsilon { conductor, tame, wild, j, k, omega, eps_p, eps_tame } => {
            epsilon(cli, (*conductor, *tame, *wild), j, *k, omega, eps_p, eps_tame)
        }
    })
}

fn prime_and_prec(cli: &Cli, p: u32, m: i64) -> Result<(u32, i64), CliError> {
    let p = cli.p.unwrap_or(p);
    let m = cli.prec.unwrap_or(m);
    check_prime(p)?;
    check_prec(m)?;
    Ok((p, m))
}

fn describe(e: &FiniteOrderChar) -> String {
    format!("eta[n={},tame={},wild={}]", e.conductor_exp(), e.tame_index, e.wild_exponent)
}

fn render(x: &Cyclo, k: i64) -> String {
    x.with_prec(k).to_string()
}

fn modulus(p: u32, k: i64) -> String {
    format!("{p}^{k}")
}

fn q_str(q: padic_interp::Q) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap();
    s.push('\n');
    s
}

/// Semicolon-separated rows as space-padded columns.
fn align_columns(csv: &str) -> String {
    let rows: Vec<Vec<&str>> = csv.lines().map(|l| l.split(';').collect()).collect();
    let mut widths: Vec<usize> = Vec::new();
    for r in &rows {
        for (i, c) in r.iter().enumerate() {
            let w = c.chars().count();
            match widths.get_mut(i) {
                Some(x) => *x = (*x).max(w),
                None => widths.push(w),
            }
        }
    }
    let mut s = String::new();
    for r in &rows {
        let line: Vec<String> = r.iter().enumerate().map(|(i, c)| format!("{c:<w$}", w = widths[i])).collect();
        s.push_str(line.join("  ").trim_end());
        s.push('\n');
    }
    s
}

/// CSV with the columns `char;component;value;certified_mod`.
fn csv_text(rows: &[[String; 4]]) -> String {
    let mut s = String::from("char;component;value;certified_mod\n");
    for r in rows {
        s.push_str(&r.join(";"));
        s.push('\n');
    }
    s
}

fn verify(cli: &Cli, suite: Suite) -> Result<(String, bool), CliError> {
    let (p, m) = prime_and_prec(cli, 3, 20)?;
    let checks = run_suite(suite, p, m);
    let ok = checks.iter().all(|c| c.pass);
    let verdict = |b: bool| if b { "PASS" } else { "FAIL" };
    let text = match cli.format.unwrap_or(Format::Text) {
        Format::Text => {
            let mut s = String::new();
            for c in &checks {
                s.push_str(&format!("[{}] {}: {}  ({})\n", c.suite, c.name, verdict(c.pass), c.anchor));
            }
            s.push_str(&format!(
                "{} of {} identities hold at p={p}, M={m}\n",
                checks.iter().filter(|c| c.pass).count(),
                checks.len()
            ));
            s
        }
        Format::Json => json_text(&json!({
            "command": "verify",
            "suite": suite.name(),
            "p": p,
            "M": m,
            "checks": checks.iter().map(|c| json!({
                "suite": c.suite, "identity": c.name, "anchor": c.anchor, "result": verdict(c.pass)
            })).collect::<Vec<_>>(),
            "ok": ok,
        })),
        Format::Csv => {
            let mut s = String::from("suite;identity;anchor;result\n");
            for c in &checks {
                s.push_str(&format!("{};{};{};{}\n", c.suite, c.name, c.anchor, verdict(c.pass)));
            }
            s
        }
    };
    Ok((text, ok))
}

enum Row {
    Value { components: Vec<Cyclo>, certified: i64, cert: ConvergenceCertificate },
    Outside(String),
    Failed(String),
}

fn lambda(cli: &Cli) -> Result<(String, bool), CliError> {
    let path = cli.config.as_ref().ok_or_else(|| CliError::Config("lambda needs --config".into()))?;
    let cfg = JobConfig::load(path)?;
    let p = cfg.p;
    let base = path.parent().unwrap_or(Path::new("."));
    let alphas = cfg.alphas()?;
    let d = CrisData::new(alphas, cfg.crisdata.as_ref().and_then(|c| c.hodge_tate.clone()))?;
    let z = IwasawaVector::new(cfg.series(base)?);
    z.check_eigen(&d)?;
    let chars = cfg.characters()?;
    let weights = cfg.weights()?;
    let jobs: Vec<(&FiniteOrderChar, &(String, WeightChar))> =
        chars.iter().flat_map(|e| weights.iter().map(move |w| (e, w))).collect();
    let target = cfg.target();
    let rows: Vec<Row> = jobs
        .par_iter()
        .map(|(e, (_, k))| match lambda_value(&d, &z, e, k, cfg.m_delta, target) {
            Ok(v) => Row::Value { components: v.components, certified: v.certified, cert: v.cert },
            Err(err @ (Error::NotAdmissible | Error::NoAdmissibleN { .. })) => Row::Outside(err.to_string()),
            Err(err) => Row::Failed(err.to_string()),
        })
        .collect();
    let ok = !rows.iter().any(|r| matches!(r, Row::Failed(_)));
    let names: Vec<String> = jobs.iter().map(|(e, (w, _))| format!("{}*{}", describe(e), w)).collect();
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let mut out = Vec::new();
            for (name, row) in names.iter().zip(&rows) {
                match row {
                    Row::Value { components, certified, .. } => {
                        for (i, c) in components.iter().enumerate() {
                            out.push([name.clone(), i.to_string(), render(c, *certified), modulus(p, *certified)]);
                        }
                    }
                    Row::Outside(_) => out.push([name.clone(), "-".into(), "outside U_D".into(), "-".into()]),
                    Row::Failed(m) => out.push([name.clone(), "-".into(), format!("error: {m}"), "-".into()]),
                }
            }
            csv_text(&out)
        }
        _ => {
            let rows: Vec<Value> = names
                .iter()
                .zip(&rows)
                .map(|(name, row)| match row {
                    Row::Value { components, certified, cert } => json!({
                        "char": name,
                        "status": "ok",
                        "components": components.iter().map(|c| render(c, *certified)).collect::<Vec<_>>(),
                        "certified_mod": modulus(p, *certified),
                        "certificate": {"N": cert.n, "J": cert.terms, "slope": q_str(cert.slope)},
                    }),
                    Row::Outside(m) => json!({"char": name, "status": "outside U_D", "reason": m}),
                    Row::Failed(m) => json!({"char": name, "status": "error", "reason": m}),
                })
                .collect();
            json_text(&json!({"command": "lambda", "p": p, "M": cfg.prec, "target_precision": target, "rows": rows}))
        }
    };
    Ok((text, ok))
}

fn certificate_json(c: &ConvergenceCertificate, target: Option<i64>) -> Value {
    let mut v = json!({
        "p": c.p,
        "m": c.m,
        "m_delta": c.m_delta,
        "admissible": c.admissible,
        "N": c.n,
        "slope": q_str(c.slope),
        "C_kappa": q_str(c.c_kappa),
        "N_D": format!("{:.4}", c.n_d),
    });
    if let (Some(t), true) = (target, c.admissible) {
        v["J"] = json!(c.terms_for(padic_interp::Q::from_integer(0), t));
        v["target_precision"] = json!(t);
    }
    v
}

fn certify(
    cli: &Cli,
    conductor: Option<u32>,
    j: i64,
    m_delta: u32,
    target: Option<i64>,
) -> Result<(String, bool), CliError> {
    let mut entries: Vec<(String, Result<ConvergenceCertificate, Error>)> = Vec::new();
    let p;
    if let Some(path) = &cli.config {
        let cfg = JobConfig::load(path)?;
        p = cfg.p;
        let mut ms: Vec<u32> = cfg.characters()?.iter().map(|e| e.conductor_exp()).collect();
        ms.dedup();
        for m in ms {
            for (name, k) in cfg.weights()? {
                entries.push((format!("p^{m}*{name}"), convergence_certificate(&k, m, cfg.m_delta)));
            }
        }
    } else {
        let (pp, prec) = prime_and_prec(cli, 3, 20)?;
        p = pp;
        let m = conductor.ok_or_else(|| CliError::Config("certify needs --conductor or --config".into()))?;
        let k = WeightChar::power(p, j, prec);
        entries.push((format!("p^{m}*x^{j}"), convergence_certificate(&k, m, m_delta)));
    }
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let mut s = String::from("char;admissible;N;slope;C_kappa;N_D\n");
            for (name, c) in &entries {
                match c {
                    Ok(c) => s.push_str(&format!(
                        "{name};{};{};{};{};{:.4}\n",
                        c.admissible,
                        c.n,
                        q_str(c.slope),
                        q_str(c.c_kappa),
                        c.n_d
                    )),
                    Err(e) => s.push_str(&format!("{name};false;-;-;-;{e}\n")),
                }
            }
            s
        }
        _ => {
            let rows: Vec<Value> = entries
                .iter()
                .map(|(name, c)| match c {
                    Ok(c) => {
                        let mut v = certificate_json(c, target);
                        v["char"] = json!(name);
                        v
                    }
                    Err(e) => json!({"char": name, "admissible": false, "reason": e.to_string()}),
                })
                .collect();
            json_text(&json!({"command": "certify", "p": p, "certificates": rows}))
        }
    };
    Ok((text, true))
}

fn mellin(cli: &Cli, c: i64, js: &[u32]) -> Result<(String, bool), CliError> {
    let (p, m) = prime_and_prec(cli, 5, 20)?;
    let units = coleman_series(p, c, 30 * m as usize, m)?.restrict_units()?;
    let rows: Vec<Result<(u32, PadicScalar, PadicScalar), Error>> = js
        .par_iter()
        .map(|&j| {
            let exp = mahler_coeffs(
                |x| {
                    let v = if x % p as u64 == 0 { BigInt::from(0) } else { BigInt::from(x).pow(j) };
                    PadicScalar::from_bigint(p, &v, m)
                },
                20_000,
                (p * p) as usize,
                m,
            )?;
            let v = mellin_oracle(&units, &exp)?;
            Ok((j, v, rational_to_padic(p, &kl_reference(p, c, j), m)))
        })
        .collect();
    let rows: Vec<(u32, PadicScalar, PadicScalar)> = rows.into_iter().collect::<Result<_, _>>()?;
    let ok = rows.iter().all(|(_, v, r)| v == r);
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Csv => csv_text(
            &rows
                .iter()
                .map(|(j, v, _)| [format!("x^{j}"), "0".into(), v.to_string(), modulus(p, v.prec())])
                .collect::<Vec<_>>(),
        ),
        _ => json_text(&json!({
            "command": "mellin",
            "p": p,
            "c": c,
            "rows": rows.iter().map(|(j, v, r)| json!({
                "char": format!("x^{j}"),
                "value": v.to_string(),
                "kl_reference": kl_reference(p, c, *j).to_string(),
                "agrees": v == r,
                "certified_mod": modulus(p, v.prec()),
            })).collect::<Vec<_>>(),
        })),
    };
    Ok((text, ok))
}

fn epsilon(
    cli: &Cli,
    eta: (u32, u64, u64),
    js: &[i64],
    k: i64,
    omega: &str,
    eps_p: &str,
    eps_tame: &[String],
) -> Result<(String, bool), CliError> {
    let (p, m, chars, js, k, omega, eps) = if let Some(path) = &cli.config {
        let cfg = JobConfig::load(path)?;
        let spec = cfg.epsilon.as_ref().ok_or_else(|| CliError::Config("field `epsilon`: missing".into()))?;
        let (p, m) = (cfg.p, cfg.prec);
        let tame = spec
            .eps_tame
            .iter()
            .enumerate()
            .map(|(i, (l, v))| Ok((*l, parse_scalar(&format!("epsilon.eps_tame[{i}]"), v, p, m)?)))
            .collect::<Result<_, CliError>>()?;
        let eps = LocalEpsilons { eps_p: parse_scalar("epsilon.eps_p", &spec.eps_p, p, m)?, eps_tame: tame };
        let mut chars = cfg.characters()?;
        if chars.is_empty() {
            chars.push(FiniteOrderChar::trivial(p));
        }
        (p, m, chars, spec.j.clone(), spec.k, parse_scalar("epsilon.omega", &spec.omega, p, m)?, eps)
    } else {
        let (p, m) = prime_and_prec(cli, 3, 20)?;
        let e = FiniteOrderChar::new(p, eta.0, eta.1, eta.2)?;
        let tame = eps_tame
            .iter()
            .map(|s| {
                let (l, v) = s
                    .split_once(':')
                    .ok_or_else(|| CliError::Config(format!("--eps-tame: expected l:value, got `{s}`")))?;
                let l: u64 = l.parse().map_err(|_| CliError::Config(format!("--eps-tame: bad prime `{l}`")))?;
                Ok((l, parse_scalar("--eps-tame", v, p, m)?))
            })
            .collect::<Result<_, CliError>>()?;
        let eps = LocalEpsilons { eps_p: parse_scalar("--eps-p", eps_p, p, m)?, eps_tame: tame };
        (p, m, vec![e], js.to_vec(), k, parse_scalar("--omega", omega, p, m)?, eps)
    };
    let mut rows = Vec::new();
    for e in &chars {
        for &j in &js {
            let c = fe_constant(&omega, e, j, k, &eps, m)?;
            rows.push((describe(e), j, c));
        }
    }
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Csv => csv_text(
            &rows
                .iter()
                .map(|(n, j, c)| {
                    let k = c.algebraic.prec();
                    let value = format!("p^({})*{}", q_str(c.p_exponent), render(&c.algebraic, k));
                    [format!("{n}:j={j}"), "0".into(), value, modulus(p, k)]
                })
                .collect::<Vec<_>>(),
        ),
        _ => json_text(&json!({
            "command": "epsilon",
            "p": p,
            "rows": rows.iter().map(|(n, j, c)| {
                let cm = c.algebraic.prec();
                json!({
                    "char": n,
                    "j": j,
                    "k": k,
                    "p_exponent": q_str(c.p_exponent),
                    "algebraic": render(&c.algebraic, cm),
                    "certified_mod": modulus(p, cm),
                })
            }).collect::<Vec<_>>(),
        })),
    };
    Ok((text, true))
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod guide {}
