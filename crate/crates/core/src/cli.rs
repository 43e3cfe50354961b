//! Command-line front end: tables, verification reports and cache management.
//!
//! JSON is the canonical output. Two runs with the same arguments produce
//! byte-identical JSON apart from `generated_at`.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::{DiskCache, CACHE_DIR_ENV};
use crate::error::{Error, Result};
use crate::gwtheory::{gw_extract_with, GWTable};
use crate::rationality::{fit_auto, DenomSpec, FunctionalReport, RationalFit, MIN_SURPLUS};
use crate::series::{RSeries, Series};
use crate::suite::{self, CheckResult};
use crate::vertex::{pt_invariants, PtInvariant, Vertex};

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "localvertex",
    version,
    about = "Exact PT/GW computations for local Hirzebruch surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Directory of the on-disk vertex cache.
    #[arg(long, env = CACHE_DIR_ENV, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Compute everything in memory, ignoring any cache directory.
    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Surfaces {
    /// Hirzebruch index; repeat for several surfaces.
    #[arg(long = "r", default_values_t = [0u32])]
    pub r: Vec<u32>,

    /// Truncation order in the fiber variable Q.
    #[arg(long = "Q-order", default_value_t = 10, value_parser = clap::value_parser!(i64).range(1..))]
    pub q_order: i64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// PT invariants PT_{mc+jb, n} and the series PT_{mc}(q, Q).
    Pt {
        #[command(flatten)]
        surfaces: Surfaces,
        /// Section multiple m.
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Largest n reported in PT_{beta, n}.
        #[arg(long, default_value_t = 10)]
        n_max: i64,
    },
    /// GW invariants GW_{g, mc+jb}.
    Gw {
        #[command(flatten)]
        surfaces: Surfaces,
        #[arg(long, default_value_t = 2)]
        m_max: u32,
        #[arg(long, default_value_t = 3)]
        g_max: u32,
    },
    /// Rational fits and Weyl exponents of the GW columns j -> GW_{g, mc+jb}.
    Fit {
        #[command(flatten)]
        surfaces: Surfaces,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 2)]
        g_max: u32,
        /// Exponent e of the denominator (1-Q)^e; by default the smallest that fits.
        #[arg(long)]
        denom_exp: Option<u32>,
    },
    /// Verification report; nonzero exit if any check fails.
    Verify {
        #[command(flatten)]
        surfaces: Surfaces,
        #[arg(long, default_value_t = 2)]
        m_max: u32,
        /// Highest u-degree in the membership check for the corrected PT_0.
        #[arg(long, default_value_t = 8)]
        u_order: i64,
        /// Also run the full acceptance suite at its fixed bounds.
        #[arg(long)]
        all: bool,
    },
    /// Oracle-equivalence and symmetry checks; no surface input.
    Selftest,
    /// Inspect or clear the vertex cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum CacheAction {
    Stats,
    Clear,
}

/// Parses the process arguments, runs, and maps the outcome to an exit status:
/// 0 on success, 1 if a check failed, 2 on errors.
pub fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Runs one command and writes its report; `Ok(false)` means a check failed.
pub fn run(cli: &Cli) -> Result<bool> {
    if let Some(jobs) = cli.common.jobs {
        // Fails only if a pool already exists, in which case it is reused.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    let disk = match (&cli.common.cache_dir, cli.common.no_cache) {
        (Some(dir), false) => Some(DiskCache::new(dir)?),
        _ => None,
    };
    let report = match &cli.command {
        Command::Cache { action } => cache_command(disk, *action)?,
        cmd => {
            let v = Vertex::with_cache(disk);
            execute(&v, cmd)?
        }
    };
    let text = render(&report, cli.common.format)?;
    match &cli.common.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(report.passed)
}

/// A finished command: its JSON body plus a CSV/text projection.
struct Report {
    command: &'static str,
    params: Value,
    results: Value,
    passed: bool,
    csv: String,
    text: String,
}

fn render(r: &Report, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let generated_at = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            let doc = json!({
                "schema": SCHEMA,
                "generated_at": generated_at,
                "command": r.command,
                "params": r.params,
                "passed": r.passed,
                "results": r.results,
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Csv => r.csv.clone(),
        Format::Text => r.text.clone(),
    })
}

fn execute(v: &Vertex, cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Pt { surfaces, m, n_max } => pt_command(v, surfaces, *m, *n_max),
        Command::Gw { surfaces, m_max, g_max } => gw_command(v, surfaces, *m_max, *g_max),
        Command::Fit {
            surfaces,
            m,
            g_max,
            denom_exp,
        } => fit_command(v, surfaces, *m, *g_max, *denom_exp),
        Command::Verify {
            surfaces,
            m_max,
            u_order,
            all,
        } => verify_command(v, surfaces, *m_max, *u_order, *all),
        Command::Selftest => Ok(checks_report("selftest", json!({}), suite::selftest())),
        Command::Cache { .. } => unreachable!("handled without a vertex engine"),
    }
}

#[derive(Serialize)]
struct PtResult {
    r: u32,
    m: u32,
    /// `[Q^j] PT_{mc}` as a rational function of `q^(1/2)` (written in `t`).
    series: Vec<(i64, String)>,
    invariants: Vec<PtInvariant>,
}

fn pt_command(v: &Vertex, s: &Surfaces, m: u32, n_max: i64) -> Result<Report> {
    let mut results = Vec::new();
    let mut csv = String::from("r,m,j,n,value\n");
    let mut text = String::new();
    for &r in &s.r {
        let z = v.pt_series(r, m, s.q_order)?;
        let invariants = pt_invariants(&z, n_max)?;
        let _ = writeln!(text, "PT_(mc+jb, n) on F_{r}, m = {m}");
        for inv in &invariants {
            let _ = writeln!(csv, "{r},{m},{},{},{}", inv.j, inv.n, inv.value);
            let _ = writeln!(text, "  j = {:>2}  n = {:>3}  {}", inv.j, inv.n, inv.value);
        }
        let series = z.iter().map(|(j, c)| (j, c.to_string())).collect();
        results.push(PtResult {
            r,
            m,
            series,
            invariants,
        });
    }
    let params = json!({ "r": s.r, "m": m, "Q_order": s.q_order, "n_max": n_max });
    Ok(Report {
        command: "pt",
        params,
        results: serde_json::to_value(results)?,
        passed: true,
        csv,
        text,
    })
}

fn gw_command(v: &Vertex, s: &Surfaces, m_max: u32, g_max: u32) -> Result<Report> {
    let tables: Vec<GWTable> =
        s.r.iter()
            .map(|&r| gw_extract_with(v, r, m_max, s.q_order, g_max))
            .collect::<Result<_>>()?;
    let mut csv = String::from("r,");
    csv.push_str(
        tables
            .first()
            .map(|t| t.to_csv())
            .unwrap_or_default()
            .lines()
            .next()
            .unwrap_or(""),
    );
    csv.push('\n');
    let mut text = String::new();
    for t in &tables {
        for line in t.to_csv().lines().skip(1) {
            let _ = writeln!(csv, "{},{line}", t.r);
        }
        let _ = writeln!(text, "GW_(g, mc+jb) on F_{}", t.r);
        for ((g, m, j), val) in &t.entries {
            let _ = writeln!(text, "  g = {g}  m = {m}  j = {j:>2}  {val}");
        }
    }
    let params = json!({ "r": s.r, "m_max": m_max, "g_max": g_max, "Q_order": s.q_order });
    Ok(Report {
        command: "gw",
        params,
        results: serde_json::to_value(&tables)?,
        passed: true,
        csv,
        text,
    })
}

/// The smallest `(1-Q)^e` that fits with the required surplus.
fn fit_smallest(series: &RSeries) -> Result<RationalFit<num_rational::BigRational>> {
    let max_e = (series.order() - MIN_SURPLUS).max(0) as u32;
    for e in 0..=max_e {
        match fit_auto(series, &DenomSpec::one_minus_q_pow(e)) {
            Ok(fit) => return Ok(fit),
            Err(Error::NotRational { .. } | Error::InsufficientSurplus { .. }) => continue,
            Err(err) => return Err(err),
        }
    }
    Err(Error::NotRational { degree: series.order() })
}

fn fit_command(v: &Vertex, s: &Surfaces, m: u32, g_max: u32, denom_exp: Option<u32>) -> Result<Report> {
    let mut reports = Vec::new();
    let mut csv = String::from("case,denominator,surplus,e_found,anticanonical_e\n");
    let mut text = String::new();
    let mut passed = true;
    for &r in &s.r {
        let t = gw_extract_with(v, r, m, s.q_order, g_max)?;
        for g in 0..=g_max {
            let col = Series::from_coeffs((0..=t.j_max).map(|j| (j, t.get(g, m, j))), t.j_max);
            let case = format!("r={r}, m={m}, g={g}");
            let fit = match denom_exp {
                Some(e) => fit_auto(&col, &DenomSpec::one_minus_q_pow(e)),
                None => fit_smallest(&col),
            };
            let fit = match fit {
                Ok(f) => f,
                Err(e) => {
                    passed = false;
                    let _ = writeln!(text, "{case}: no fit ({e})");
                    continue;
                }
            };
            let rep = FunctionalReport::new(case.clone(), &fit, r, m, None)?;
            let e = rep.e_found.map(|x| x.to_string()).unwrap_or_default();
            let _ = writeln!(
                csv,
                "\"{case}\",{},{},{e},{}",
                rep.denom_spec, rep.surplus, rep.a_anticanonical
            );
            let _ = writeln!(
                text,
                "{case}: denominator {}, surplus {}, f(1/Q) = Q^e f(Q) with e = {}, -K.beta = {}",
                rep.denom_spec,
                rep.surplus,
                if e.is_empty() { "none" } else { &e },
                rep.a_anticanonical
            );
            reports.push(rep);
        }
    }
    let params = json!({ "r": s.r, "m": m, "g_max": g_max, "Q_order": s.q_order, "denom_exp": denom_exp });
    Ok(Report {
        command: "fit",
        params,
        results: serde_json::to_value(reports)?,
        passed,
        csv,
        text,
    })
}

fn verify_command(v: &Vertex, s: &Surfaces, m_max: u32, u_order: i64, all: bool) -> Result<Report> {
    let ms: Vec<u32> = (1..=m_max).collect();
    // The u^h coefficient has denominator (1-Q)^h; a fit with surplus 3 needs Q-order h + 3.
    let h_max = u_order.min(s.q_order - MIN_SURPLUS);
    let mut checks = vec![
        suite::run(1, "PT_0 identity", || suite::pt0_identity(v, &s.r, s.q_order)),
        suite::run(2, "parity and integrality of PT_mc", || {
            for &r in &s.r {
                v.z_hirzebruch(r, m_max, s.q_order)?;
            }
            Ok((
                true,
                format!("r in {:?}, m <= {m_max}, Q^{}", s.r, s.q_order),
                Value::Null,
            ))
        }),
        suite::run(3, "q-inversion of PT_mc / PT_0", || {
            suite::q_inversion(v, &s.r, &ms, s.q_order)
        }),
        suite::run(4, "tilde PT_0 in R_{0,0}", || {
            let (ok, summary, data) = suite::exceptional_membership(s.q_order, h_max)?;
            let note = if h_max < u_order {
                format!(" (capped from {u_order}: u^h needs Q-order >= h + 3)")
            } else {
                String::new()
            };
            Ok((ok, summary + &note, data))
        }),
    ];
    if all {
        for mut c in suite::acceptance(v) {
            c.id += 100;
            checks.push(c);
        }
    }
    let params = json!({ "r": s.r, "m_max": m_max, "Q_order": s.q_order, "u_order": u_order, "all": all });
    Ok(checks_report("verify", params, checks))
}

fn checks_report(command: &'static str, params: Value, checks: Vec<CheckResult>) -> Report {
    let passed = checks.iter().all(|c| c.passed);
    let mut csv = String::from("id,name,passed,summary\n");
    let mut text = String::new();
    for c in &checks {
        let _ = writeln!(
            csv,
            "{},\"{}\",{},\"{}\"",
            c.id,
            c.name,
            c.passed,
            c.summary.replace('"', "'")
        );
        let _ = writeln!(
            text,
            "{} [{:>3}] {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            c.summary
        );
    }
    let results = serde_json::to_value(&checks).unwrap_or(Value::Null);
    Report {
        command,
        params,
        results,
        passed,
        csv,
        text,
    }
}

fn cache_command(disk: Option<DiskCache>, action: CacheAction) -> Result<Report> {
    let disk = disk
        .ok_or_else(|| Error::InvalidInput(format!("no cache directory: pass --cache-dir or set {CACHE_DIR_ENV}")))?;
    let dir = disk.dir().display().to_string();
    let (results, csv, text) = match action {
        CacheAction::Stats => {
            let (entries, bytes) = disk.stats()?;
            (
                json!({ "dir": dir, "entries": entries, "bytes": bytes }),
                format!("dir,entries,bytes\n\"{dir}\",{entries},{bytes}\n"),
                format!("{dir}: {entries} entries, {bytes} bytes\n"),
            )
        }
        CacheAction::Clear => {
            let removed = disk.clear()?;
            (
                json!({ "dir": dir, "removed": removed }),
                format!("dir,removed\n\"{dir}\",{removed}\n"),
                format!("{dir}: removed {removed} entries\n"),
            )
        }
    };
    Ok(Report {
        command: "cache",
        params: json!({ "action": format!("{action:?}").to_lowercase() }),
        results,
        passed: true,
        csv,
        text,
    })
}
