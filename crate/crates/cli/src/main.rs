use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::json;

use betafin::classify::{self, PropertyReport};
use betafin::family::{self, FamilyCheck, CHECK_NAMES};
use betafin::srs::{export_graph, GraphFormat, Srs, SrsVector};
use betafin::{BetaField, BetaSystem, Budgets, FieldElement, SignedWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Parser)]
#[command(name = "betafin", version, about = "Exact beta-expansions and finiteness properties")]
struct Cli {
    /// Minimal polynomial of β, e.g. "x^3-x^2-x-1".
    #[arg(long, global = true)]
    poly: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    budget_orbit: Option<usize>,
    #[arg(long, global = true)]
    budget_closure: Option<usize>,
    #[arg(long, global = true)]
    box_pad: Option<i64>,
    #[arg(long, global = true)]
    n_sweep: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// TOML file with the same settings; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// β-expansion of a nonnegative element of Q(β).
    Expand {
        /// Digits with exponent, "L:d1 d2 ..." meaning Σ d_n β^{L-n}
        /// (or "L:d1d2..." for one-character digits).
        #[arg(long, conflicts_with = "x_coords")]
        x: Option<String>,
        /// Rational coordinates on 1, β, β², ...: "q0,q1,...".
        #[arg(long)]
        x_coords: Option<String>,
    },
    /// Shift radix system queries.
    Srs {
        #[command(subcommand)]
        cmd: SrsCmd,
    },
    /// Three-valued (F), (PF), (F1) report.
    Classify,
    /// Check every claim about x^3 - 2t x^2 + 2t x - t for t in a range.
    VerifyFamily {
        #[arg(long, default_value_t = 2)]
        t_min: i64,
        #[arg(long, default_value_t = 10)]
        t_max: i64,
    },
}

#[derive(Subcommand)]
enum SrsCmd {
    /// The τ-graph on Q_β.
    Graph,
    /// Q_β.
    Qset,
    /// Nonzero periodic points of Q_β.
    Pset,
    /// Whether the τ-orbit of a vector reaches 0.
    Fcheck {
        #[arg(long = "vec", allow_hyphen_values = true)]
        vec: String,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    poly: Option<String>,
    budgets: Option<Budgets>,
    output: Option<Format>,
    seed: Option<u64>,
}

struct RunConfig {
    poly: Option<String>,
    budgets: Budgets,
    format: Format,
    seed: u64,
}

impl RunConfig {
    fn resolve(cli: &Cli) -> Result<Self> {
        let file = match &cli.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                toml::from_str::<FileConfig>(&text).with_context(|| format!("parsing {}", path.display()))?
            }
            None => FileConfig::default(),
        };
        let mut budgets = file.budgets.unwrap_or_default();
        if let Some(v) = cli.budget_orbit {
            budgets.orbit_cap = v;
        }
        if let Some(v) = cli.budget_closure {
            budgets.closure_cap = v;
        }
        if let Some(v) = cli.box_pad {
            budgets.box_pad = v;
        }
        if let Some(v) = cli.n_sweep {
            budgets.n_sweep_max = v;
        }
        if budgets.orbit_cap == 0 || budgets.closure_cap == 0 || budgets.n_sweep_max == 0 || budgets.box_pad < 0 {
            bail!("budgets must be positive");
        }
        Ok(RunConfig {
            poly: cli.poly.clone().or(file.poly),
            budgets,
            format: cli.format.or(file.output).unwrap_or(Format::Text),
            seed: cli.seed.or(file.seed).unwrap_or(0),
        })
    }

    fn field(&self) -> Result<Arc<BetaField>> {
        let spec = self.poly.as_deref().ok_or_else(|| anyhow!("--poly is required"))?;
        BetaField::parse(spec).with_context(|| format!("polynomial {spec:?}"))
    }

    fn system(&self) -> Result<BetaSystem> {
        Ok(BetaSystem::with_budgets(self.field()?, self.budgets)?)
    }
}

fn main() -> ExitCode {
    // Die quietly when piped into `head` and the like.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` when a requested check failed.
fn run(cli: &Cli) -> Result<bool> {
    let cfg = RunConfig::resolve(cli)?;
    match &cli.cmd {
        Cmd::Expand { x, x_coords } => cmd_expand(&cfg, x.as_deref(), x_coords.as_deref()),
        Cmd::Srs { cmd } => cmd_srs(&cfg, cmd),
        Cmd::Classify => cmd_classify(&cfg),
        Cmd::VerifyFamily { t_min, t_max } => cmd_verify_family(&cfg, *t_min, *t_max),
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d = BigInt::from_str(d.trim())?;
            if d == BigInt::from(0) {
                bail!("zero denominator in {s:?}");
            }
            Ok(BigRational::new(BigInt::from_str(n.trim())?, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s)?)),
    }
}

/// `"L:digits"`: digits separated by spaces/commas, or one character each.
fn parse_digit_literal(field: &Arc<BetaField>, s: &str) -> Result<FieldElement> {
    let (l, digits) = s.split_once(':').ok_or_else(|| anyhow!("expected L:digits, got {s:?}"))?;
    let l: i64 = l.trim().parse().context("exponent L")?;
    let body = digits.trim();
    let digits: Vec<i64> = if body.contains(|c: char| c.is_whitespace() || c == ',') {
        body.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().with_context(|| format!("digit {t:?}")))
            .collect::<Result<_>>()?
    } else {
        body.chars()
            .map(|c| c.to_digit(10).map(i64::from).ok_or_else(|| anyhow!("digit {c:?}")))
            .collect::<Result<_>>()?
    };
    let mut x = FieldElement::zero(field);
    for (n, d) in digits.iter().enumerate() {
        x = &x + &FieldElement::beta_pow(field, l - 1 - n as i64).scale_int(*d);
    }
    Ok(x)
}

fn parse_x(field: &Arc<BetaField>, x: Option<&str>, coords: Option<&str>) -> Result<FieldElement> {
    match (x, coords) {
        (Some(s), None) if s.contains(':') => parse_digit_literal(field, s),
        (Some(s), None) | (None, Some(s)) => {
            let q = s.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
            if q.len() > field.degree() {
                bail!("{} coordinates for a degree-{} field", q.len(), field.degree());
            }
            Ok(FieldElement::new(field, q))
        }
        (None, None) => bail!("one of --x or --x-coords is required"),
        (Some(_), Some(_)) => bail!("--x and --x-coords are exclusive"),
    }
}

/// `111`, `(2 1)^∞`-style words; digits run together when all are `< 10`.
fn compact(w: &SignedWord) -> String {
    let small = w.preperiod().iter().chain(w.period()).all(|d| (0..10).contains(d));
    let join = |ds: &[i64]| {
        let parts: Vec<String> = ds.iter().map(i64::to_string).collect();
        parts.join(if small { "" } else { " " })
    };
    if w.is_zero() {
        return "0".into();
    }
    let mut s = join(w.preperiod());
    if !w.is_finite() {
        if !s.is_empty() && !small {
            s.push(' ');
        }
        s.push_str(&format!("({})^∞", join(w.period())));
    }
    s
}

fn cmd_expand(cfg: &RunConfig, x: Option<&str>, coords: Option<&str>) -> Result<bool> {
    let sys = cfg.system()?;
    let value = parse_x(sys.field(), x, coords)?;
    if value.sign() < 0 {
        bail!("x must be nonnegative");
    }
    let e = sys.beta_expand(&value)?;
    let exact = sys.reconstruct(&e) == value;
    let d1 = sys.d_beta_one()?;
    match cfg.format {
        Format::Json => {
            let out = json!({
                "poly": sys.field().poly().to_symbolic(),
                "x": value.coord_strings(),
                "L": e.exponent,
                "expansion": e.radix_string(),
                "preperiod": e.word.preperiod(),
                "period": e.word.period(),
                "finite": e.is_finite(),
                "reconstruction_exact": exact,
                "d_beta_1": compact(d1.as_signed()),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        _ => {
            let kind = if e.is_finite() { "finite" } else { "infinite" };
            println!("{}, {kind}", e.radix_string());
            println!("L(x) = {}", e.exponent);
            println!("reconstruction: {}", if exact { "exact" } else { "MISMATCH" });
            println!("d_beta(1) = {}", compact(d1.as_signed()));
        }
    }
    Ok(exact)
}

fn vec_list(set: &BTreeSet<SrsVector>) -> Vec<String> {
    set.iter().map(|l| format!("({l})")).collect()
}

fn cmd_srs(cfg: &RunConfig, cmd: &SrsCmd) -> Result<bool> {
    let srs = Srs::from_field(cfg.field()?, cfg.budgets);
    match cmd {
        SrsCmd::Graph => {
            let g = srs.q_set()?;
            let format = if cfg.format == Format::Json { GraphFormat::Json } else { GraphFormat::Dot };
            print!("{}", export_graph(&g, format));
        }
        SrsCmd::Qset => {
            let q = srs.q_set()?.node_set();
            if cfg.format == Format::Json {
                println!("{}", json!({ "count": q.len(), "nodes": q }));
            } else {
                println!("#Q_beta = {}", q.len());
                for l in vec_list(&q) {
                    println!("{l}");
                }
            }
        }
        SrsCmd::Pset => {
            let p = srs.q_set()?.p_set();
            let delta = betafin::srs::delta(&p);
            if cfg.format == Format::Json {
                println!("{}", json!({ "count": p.len(), "nodes": p, "delta": delta }));
            } else {
                println!("#P_beta = {}", p.len());
                for l in vec_list(&p) {
                    println!("{l}");
                }
                println!("delta = {delta}");
            }
        }
        SrsCmd::Fcheck { vec } => {
            let l: SrsVector = vec.parse().map_err(|e| anyhow!("{e}"))?;
            srs.check_dim(&l)?;
            let orbit = srs.orbit(&l)?;
            let in_f = srs.in_f_beta(&l)?;
            let path: Vec<String> = orbit.iter().map(|v| format!("({v})")).collect();
            if cfg.format == Format::Json {
                println!("{}", json!({ "vec": l, "in_f_beta": in_f, "orbit": orbit }));
            } else {
                let verdict = if in_f {
                    format!("in F_beta (reaches 0 after {} steps)", orbit.len() - 1)
                } else {
                    "not in F_beta (cycle)".to_string()
                };
                println!("({l}): {verdict}");
                println!("orbit: {}", path.join(" -> "));
            }
        }
    }
    Ok(true)
}

fn print_report(r: &PropertyReport) {
    println!("poly: {}", r.poly);
    println!("pisot: {}", r.pisot);
    println!("F: {}", r.f);
    println!("PF: {}", r.pf);
    println!("F1: {}", r.f1);
    println!("d_beta(1): {}", r.d_beta_1.as_deref().unwrap_or("unknown"));
    println!("evidence:");
    for e in &r.evidence {
        match &e.data {
            Some(d) => println!("  {} [{}] {} ({d})", e.claim, e.rule, e.cite),
            None => println!("  {} [{}] {}", e.claim, e.rule, e.cite),
        }
    }
}

fn cmd_classify(cfg: &RunConfig) -> Result<bool> {
    let report = classify::classify(cfg.field()?, cfg.budgets)?;
    if cfg.format == Format::Json {
        println!("{}", serde_json::to_string_pretty(&report.to_json())?);
    } else {
        print_report(&report);
    }
    Ok(report.is_lattice_consistent())
}

fn cmd_verify_family(cfg: &RunConfig, t_min: i64, t_max: i64) -> Result<bool> {
    if t_min < 2 {
        bail!("t_min must be at least 2");
    }
    if t_max < t_min {
        bail!("t_max must be at least t_min");
    }
    let rows: Vec<FamilyCheck> = (t_min..=t_max)
        .into_par_iter()
        .map(|t| family::verify_member(t, cfg.budgets, cfg.seed))
        .collect();
    let ok = rows.iter().all(FamilyCheck::passed);
    if cfg.format == Format::Json {
        println!("{}", serde_json::to_string_pretty(&json!({ "rows": rows, "all_passed": ok }))?);
        return Ok(ok);
    }
    let mut header = format!("{:>4}", "t");
    for name in CHECK_NAMES {
        header.push_str(&format!(" {name:>10}"));
    }
    println!("{header}  result");
    for row in &rows {
        let mut line = format!("{:>4}", row.t);
        for (_, pass) in &row.checks {
            line.push_str(&format!(" {:>10}", if *pass { "ok" } else { "FAIL" }));
        }
        for _ in row.checks.len()..CHECK_NAMES.len() {
            line.push_str(&format!(" {:>10}", "-"));
        }
        line.push_str(if row.passed() { "  PASS" } else { "  FAIL" });
        if let Some(e) = &row.error {
            line.push_str(&format!(" ({e})"));
        }
        println!("{line}");
    }
    println!("{} of {} passed", rows.iter().filter(|r| r.passed()).count(), rows.len());
    Ok(ok)
}
