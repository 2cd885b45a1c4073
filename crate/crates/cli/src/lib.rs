//! The `azw` command line: monoid schemes, explicit families, elliptic curve
//! sweeps, ceiling/floor verification, zeta algebra and the reproduction suite.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use azw_core::arith::{is_prime, DomainKind, PrimePowerDomain};
use azw_core::elliptic::{parse_curves_csv, EllipticCurve};
use azw_core::fit::{
    reject_linear_family, search_polynomial, verify_mode, Mode, Sequence, SourceSpec, Verdict, DEFAULT_LIMIT,
    DEFAULT_WITNESS_THRESHOLD,
};
use azw_core::repro;
use azw_core::schemes::Family;
use azw_core::zeta::soule_zeta;
use azw_core::{FormalProduct, MonoidScheme, PuiseuxPoly, Rational};

/// Exit status for malformed input.
pub const EXIT_MALFORMED: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "azw", version, about = "Point counts, ceiling/floor polynomials and absolute zeta functions")]
pub struct Cli {
    /// Worker threads for sweeps (default: AZW_THREADS, else all logical CPUs)
    #[arg(long, global = true, env = "AZW_THREADS")]
    pub threads: Option<usize>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Counts, envelopes and zeta products of a monoid scheme given as JSON
    Monoid(MonoidArgs),
    /// Sweeps over the punctured lines A_n, punctured tori G_n and Pell conics
    Family(FamilyArgs),
    /// Point counts, prime classification and census for curves from a CSV file
    Curve(CurveArgs),
    /// Verify or search ceiling and floor polynomials of a sequence
    Fit {
        #[command(subcommand)]
        action: FitAction,
    },
    /// Formal-product algebra on absolute zeta functions
    Zeta {
        #[command(subcommand)]
        action: ZetaAction,
    },
    /// Run the acceptance suite
    Repro {
        /// Comma-separated criterion numbers (default: all)
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Debug, Args)]
pub struct MonoidArgs {
    /// Monoid scheme JSON: {"label": ..., "points": [{"r": 1, "torsion": [2]}, ...]}
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Excluded primes S
    #[arg(long, global = true, value_delimiter = ',')]
    pub exclude: Vec<u64>,
    #[command(subcommand)]
    pub action: MonoidAction,
}

#[derive(Debug, Subcommand)]
pub enum MonoidAction {
    /// #X_Z(F_q) for prime powers q <= limit outside S
    Counts {
        #[arg(long, default_value_t = 100)]
        limit: u64,
    },
    /// Ceiling and floor polynomials over Z[S^-1], with those of the F_1 counts and the Q-fibre
    Envelopes,
    /// Absolute zeta functions of the ceiling and floor polynomials
    Zeta,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Family spec: An:n=3, Gn:n=5 or pell:delta=5
    #[arg(long, global = true)]
    pub spec: Option<String>,
    /// Excluded primes S
    #[arg(long, global = true, value_delimiter = ',')]
    pub exclude: Vec<u64>,
    #[command(subcommand)]
    pub action: FamilyAction,
}

#[derive(Debug, Subcommand)]
pub enum FamilyAction {
    /// Formula counts as CSV rows p,m,q,count
    Counts {
        #[arg(long, default_value_t = 100)]
        limit: u64,
    },
    /// Ceiling and floor polynomials over Z[S^-1]
    Envelopes,
    /// Compare the formula with exhaustive enumeration for q <= limit
    Check {
        #[arg(long, default_value_t = 200)]
        limit: u64,
    },
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Curve CSV with lines label,a,b
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Curve label to select (optional when the file holds one curve)
    #[arg(long, global = true)]
    pub label: Option<String>,
    #[command(subcommand)]
    pub action: CurveAction,
}

#[derive(Debug, Subcommand)]
pub enum CurveAction {
    /// #E(F_{p^m}) by the trace recursion
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Champion, trailing, supersingular or other, with the local zeta factor
    Classify {
        #[arg(long)]
        p: u64,
    },
    /// Champion/trailing/supersingular primes up to xmax
    Census {
        #[arg(long)]
        xmax: u64,
        /// Primes to skip besides the bad ones
        #[arg(long, value_delimiter = ',')]
        exclude: Vec<u64>,
        /// Write PREFIX.csv and PREFIX.json
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Sequence: An:n=3, Gn:n=5, pell:delta=5, curve:a=-1,b=0, projective:n=1, affine:n=2, torus:n=1, f1n:n=3
    #[arg(long, conflicts_with = "monoid")]
    pub source: Option<String>,
    /// Use #X_Z(F_q) of a monoid scheme JSON file as the sequence
    #[arg(long)]
    pub monoid: Option<PathBuf>,
    /// Scan prime powers q <= limit
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    pub limit: u64,
    /// Witnesses needed before a bound counts as verified
    #[arg(long, default_value_t = DEFAULT_WITNESS_THRESHOLD)]
    pub witnesses: usize,
    /// Excluded primes S
    #[arg(long, value_delimiter = ',')]
    pub exclude: Vec<u64>,
    /// Restrict the domain to primes
    #[arg(long)]
    pub primes_only: bool,
}

#[derive(Debug, Subcommand)]
pub enum FitAction {
    /// Check one candidate; exit 0 verified, 2 violated, 3 too few witnesses
    Verify {
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        /// Compare floor/ceiling values and require f(1) to be an integer
        #[arg(long)]
        puiseux: bool,
        #[arg(long)]
        candidate: String,
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Exhaustive search over integer polynomials with coefficients in [min, max]
    Search {
        #[arg(long)]
        degree: u32,
        #[arg(long, allow_negative_numbers = true)]
        min: i128,
        #[arg(long, allow_negative_numbers = true)]
        max: i128,
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Try every t + c for c in [cmin, cmax] as ceiling and floor
    RejectLinear {
        #[arg(long, allow_negative_numbers = true)]
        cmin: i128,
        #[arg(long, allow_negative_numbers = true)]
        cmax: i128,
        #[command(flatten)]
        source: SourceArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum ZetaAction {
    /// Absolute zeta function of a Puiseux polynomial in t
    Soule { expr: String },
    /// Modified Kurokawa tensor product of two formal products in s
    Tensor { left: String, right: String },
    /// Substitute s -> d - s; prints the sign and the reflected product
    Reflect {
        expr: String,
        #[arg(long, allow_negative_numbers = true)]
        d: String,
    },
    /// Check Z(d - s) = +-Z(s)
    Funceq {
        expr: String,
        #[arg(long, allow_negative_numbers = true)]
        d: String,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse().map_err(|_| anyhow!("'{s}' is not a rational number"))
}

fn excluded_set(primes: &[u64]) -> Result<BTreeSet<u64>> {
    if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
        bail!("excluded entry {bad} is not a prime");
    }
    Ok(primes.iter().copied().collect())
}

fn positive(name: &str, value: u64) -> Result<u64> {
    if value == 0 {
        bail!("--{name} must be positive");
    }
    Ok(value)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_monoid(path: &Path) -> Result<MonoidScheme> {
    MonoidScheme::from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn json(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("json value serializes")
}

/// Parses arguments and runs, returning the process exit code. Errors go to `err`.
pub fn main_with_args<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { 0 };
            if e.use_stderr() {
                let _ = write!(err, "{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_MALFORMED
        }
    }
}

/// Runs a parsed command line inside a pool of the requested size.
pub fn run(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<i32> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            bail!("--threads must be positive");
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().context("building the worker pool")?;
    pool.install(|| dispatch(cli, out))
}

fn dispatch(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<i32> {
    match &cli.command {
        Command::Monoid(args) => monoid(args, cli.format, out),
        Command::Family(args) => family(args, cli.format, out),
        Command::Curve(args) => curve(args, cli.format, out),
        Command::Fit { action } => fit(action, cli.format, out),
        Command::Zeta { action } => zeta(action, cli.format, out),
        Command::Repro { only } => run_repro(only, cli.format, out),
    }
}

fn prime_power_domain(excluded: &BTreeSet<u64>, limit: u64) -> Result<PrimePowerDomain> {
    Ok(PrimePowerDomain::prime_powers(excluded.iter().copied(), limit)?)
}

fn monoid(args: &MonoidArgs, format: Format, out: &mut (dyn Write + Send)) -> Result<i32> {
    let path = args.input.as_ref().ok_or_else(|| anyhow!("--in <FILE> is required"))?;
    let x = load_monoid(path)?;
    let excluded = excluded_set(&args.exclude)?;
    match &args.action {
        MonoidAction::Counts { limit } => {
            let limit = positive("limit", *limit)?;
            let rows: Vec<(u64, i128)> = prime_power_domain(&excluded, limit.max(2))?
                .enumerate()
                .into_iter()
                .map(|q| (q.q, x.count_f1n(q.q - 1)))
                .collect();
            match format {
                Format::Json => {
                    let rows: Vec<_> = rows.iter().map(|(q, c)| serde_json::json!({"q": q, "count": c.to_string()})).collect();
                    writeln!(out, "{}", json(&serde_json::json!({"label": x.label, "counts": rows})))?;
                }
                _ => {
                    writeln!(out, "q,count")?;
                    for (q, c) in rows {
                        writeln!(out, "{q},{c}")?;
                    }
                }
            }
        }
        MonoidAction::Envelopes => {
            let ceiling = x.ceiling_poly();
            let floor = x.floor_poly(&excluded);
            let (f1_ceiling, f1_floor) = x.f1_ceiling_floor();
            let (q_ceiling, q_floor) = x.qfiber_ceiling_floor();
            match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    json(&serde_json::json!({
                        "label": x.label,
                        "excluded": excluded,
                        "ceiling": ceiling.to_string(),
                        "floor": floor.to_string(),
                        "f1_ceiling": f1_ceiling.to_string(),
                        "f1_floor": f1_floor.to_string(),
                        "qfiber_ceiling": q_ceiling.to_string(),
                        "qfiber_floor": q_floor.to_string(),
                    }))
                )?,
                _ => {
                    writeln!(out, "ceiling: {ceiling}")?;
                    writeln!(out, "floor: {floor}")?;
                    writeln!(out, "f1 ceiling: {f1_ceiling}")?;
                    writeln!(out, "f1 floor: {f1_floor}")?;
                    writeln!(out, "qfiber ceiling: {q_ceiling}")?;
                    writeln!(out, "qfiber floor: {q_floor}")?;
                }
            }
        }
        MonoidAction::Zeta => {
            let ceiling = x.zeta_product();
            let floor = x.zeta_floor_product(&excluded);
            match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    json(&serde_json::json!({"ceiling_zeta": ceiling.to_string(), "floor_zeta": floor.to_string()}))
                )?,
                _ => {
                    writeln!(out, "ceiling zeta: {ceiling}")?;
                    writeln!(out, "floor zeta: {floor}")?;
                }
            }
        }
    }
    Ok(0)
}

fn family(args: &FamilyArgs, format: Format, out: &mut (dyn Write + Send)) -> Result<i32> {
    let spec = args.spec.as_ref().ok_or_else(|| anyhow!("--spec is required"))?;
    let fam: Family = spec.parse()?;
    let excluded = excluded_set(&args.exclude)?;
    match &args.action {
        FamilyAction::Counts { limit } => {
            let limit = positive("limit", *limit)?;
            writeln!(out, "p,m,q,count")?;
            for q in prime_power_domain(&excluded, limit.max(2))?.enumerate() {
                let b = q.base.expect("prime power");
                writeln!(out, "{},{},{},{}", b.p, b.m, q.q, fam.count(b.p, b.m)?)?;
            }
            Ok(0)
        }
        FamilyAction::Envelopes => {
            let (ceiling, floor) = fam.envelopes(&excluded)?;
            match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    json(&serde_json::json!({"family": fam.to_string(), "excluded": excluded, "ceiling": ceiling.to_string(), "floor": floor.to_string()}))
                )?,
                _ => {
                    writeln!(out, "ceiling: {ceiling}")?;
                    writeln!(out, "floor: {floor}")?;
                }
            }
            Ok(0)
        }
        FamilyAction::Check { limit } => {
            let limit = positive("limit", *limit)?;
            let mut mismatches = 0;
            let mut checked = 0;
            for q in prime_power_domain(&excluded, limit.max(2))?.enumerate() {
                let b = q.base.expect("prime power");
                let (formula, oracle) = (fam.count(b.p, b.m)?, fam.count_oracle(b.p, b.m)?);
                checked += 1;
                if formula != oracle {
                    mismatches += 1;
                    writeln!(out, "mismatch q={}: formula {formula}, enumeration {oracle}", q.q)?;
                }
            }
            writeln!(out, "{fam}: {checked} prime powers checked, {mismatches} mismatches")?;
            Ok(if mismatches == 0 { 0 } else { 2 })
        }
    }
}

fn select_curve(args: &CurveArgs) -> Result<EllipticCurve> {
    let path = args.input.as_ref().ok_or_else(|| anyhow!("--in <FILE> is required"))?;
    let curves = parse_curves_csv(&read(path)?)?;
    match &args.label {
        Some(label) => curves
            .into_iter()
            .find(|c| c.label() == label)
            .ok_or_else(|| anyhow!("no curve labelled '{label}' in {}", path.display())),
        None if curves.is_empty() => bail!("{} holds no curves", path.display()),
        None if curves.len() == 1 => Ok(curves.into_iter().next().expect("one curve")),
        None => bail!("{} holds {} curves; pick one with --label", path.display(), curves.len()),
    }
}

fn curve(args: &CurveArgs, format: Format, out: &mut (dyn Write + Send)) -> Result<i32> {
    let e = select_curve(args)?;
    match &args.action {
        CurveAction::Count { p, m } => {
            let count = e.count_extension(*p, *m)?;
            match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    json(&serde_json::json!({"label": e.label(), "p": p, "m": m, "count": count.to_string()}))
                )?,
                _ => writeln!(out, "{count}")?,
            }
        }
        CurveAction::Classify { p } => {
            let data = e.trace_data(*p)?;
            let class = e.classify_prime(*p)?;
            let zeta = e.local_zeta(*p)?;
            match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    json(&serde_json::json!({"label": e.label(), "p": p, "a_p": data.a_p.to_string(), "class": class.as_str(), "local_zeta": zeta.to_string()}))
                )?,
                Format::Csv => writeln!(out, "p,a_p,class\n{p},{},{class}", data.a_p)?,
                Format::Plain => {
                    writeln!(out, "a_p: {}", data.a_p)?;
                    writeln!(out, "class: {class}")?;
                    writeln!(out, "local zeta: {zeta}")?;
                }
            }
        }
        CurveAction::Census { xmax, exclude, out: prefix } => {
            if *xmax < 10 {
                bail!("--xmax must be at least 10");
            }
            let report = e.census(*xmax, &excluded_set(exclude)?);
            if let Some(prefix) = prefix {
                let csv = prefix.with_extension("csv");
                let summary = prefix.with_extension("json");
                fs::write(&csv, report.to_csv()).with_context(|| format!("writing {}", csv.display()))?;
                fs::write(&summary, report.summary_json() + "\n").with_context(|| format!("writing {}", summary.display()))?;
            }
            match format {
                Format::Csv => write!(out, "{}", report.to_csv())?,
                _ => writeln!(out, "{}", report.summary_json())?,
            }
        }
    }
    Ok(0)
}

fn sample(source: &SourceArgs) -> Result<Sequence> {
    let spec = match (&source.source, &source.monoid) {
        (Some(s), None) => s.parse::<SourceSpec>()?,
        (None, Some(path)) => SourceSpec::Monoid(load_monoid(path)?),
        _ => bail!("give exactly one of --source or --monoid"),
    };
    let limit = positive("limit", source.limit)?;
    if limit < 2 {
        bail!("--limit must be at least 2");
    }
    let kind = if source.primes_only {
        DomainKind::PrimesOnly
    } else {
        DomainKind::PrimePowers
    };
    Ok(spec.build(kind, &excluded_set(&source.exclude)?, limit)?.sample())
}

fn write_verdict(v: &Verdict, format: Format, out: &mut (dyn Write + Send)) -> Result<()> {
    if format == Format::Json {
        writeln!(out, "{}", v.to_json())?;
        return Ok(());
    }
    writeln!(out, "status: {}", v.status)?;
    writeln!(out, "mode: {}{}", v.mode, if v.puiseux_mode { " (puiseux)" } else { "" })?;
    writeln!(out, "candidate: {}", v.candidate)?;
    writeln!(out, "source: {}", v.source)?;
    writeln!(out, "excluded: {:?}", v.excluded)?;
    writeln!(out, "scanned limit: {}", v.scanned_limit)?;
    writeln!(out, "witness threshold: {}", v.witness_threshold)?;
    let shown: Vec<String> = v.witnesses.iter().take(20).map(u64::to_string).collect();
    let more = if v.witnesses.len() > 20 { ", ..." } else { "" };
    writeln!(out, "witnesses ({}): {}{more}", v.witnesses.len(), shown.join(", "))?;
    match &v.violation {
        Some(viol) if viol.f_exact => writeln!(out, "violation: n={} A_n={} f(n)={}", viol.n, viol.value, viol.f_floor)?,
        Some(viol) => writeln!(
            out,
            "violation: n={} A_n={} {} < f(n) < {}",
            viol.n, viol.value, viol.f_floor, viol.f_ceil
        )?,
        None => writeln!(out, "violation: none")?,
    }
    Ok(())
}

fn fit(action: &FitAction, format: Format, out: &mut (dyn Write + Send)) -> Result<i32> {
    match action {
        FitAction::Verify { mode, puiseux, candidate, source } => {
            let f: PuiseuxPoly = candidate.parse().with_context(|| format!("parsing candidate '{candidate}'"))?;
            let seq = sample(source)?;
            let verdict = verify_mode(*mode, &f, &seq, source.witnesses, *puiseux);
            write_verdict(&verdict, format, out)?;
            Ok(verdict.status.exit_code())
        }
        FitAction::Search { degree, min, max, source } => {
            let seq = sample(source)?;
            let report = search_polynomial(&seq, *degree, *min, *max, source.witnesses)?;
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
                _ => {
                    writeln!(out, "candidates tested: {}", report.candidates_tested)?;
                    writeln!(out, "ceilings: {}", report.ceilings.join("; "))?;
                    writeln!(out, "floors: {}", report.floors.join("; "))?;
                    if report.ambiguous {
                        writeln!(out, "ambiguous: more than one candidate passed; raise --limit")?;
                    }
                }
            }
            Ok(0)
        }
        FitAction::RejectLinear { cmin, cmax, source } => {
            if cmin > cmax {
                bail!("--cmin must not exceed --cmax");
            }
            let seq = sample(source)?;
            let rows = reject_linear_family(&seq, *cmin, *cmax, source.witnesses);
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
                _ => {
                    writeln!(out, "c,ceiling,ceiling_at,floor,floor_at")?;
                    let at = |v: &Verdict| v.violation.as_ref().map_or(String::new(), |x| x.n.to_string());
                    for r in rows {
                        writeln!(out, "{},{},{},{},{}", r.c, r.ceiling.status, at(&r.ceiling), r.floor.status, at(&r.floor))?;
                    }
                }
            }
            Ok(0)
        }
    }
}

fn zeta(action: &ZetaAction, format: Format, out: &mut (dyn Write + Send)) -> Result<i32> {
    let product = |s: &str| -> Result<FormalProduct> { s.parse().with_context(|| format!("parsing '{s}'")) };
    match action {
        ZetaAction::Soule { expr } => {
            let f: PuiseuxPoly = expr.parse().with_context(|| format!("parsing '{expr}'"))?;
            let z = soule_zeta(&f);
            match format {
                Format::Json => writeln!(out, "{}", json(&serde_json::json!({"poly": f.to_string(), "zeta": z.to_string()})))?,
                _ => writeln!(out, "{z}")?,
            }
        }
        ZetaAction::Tensor { left, right } => {
            let z = product(left)?.tensor(&product(right)?);
            writeln!(out, "{z}")?;
        }
        ZetaAction::Reflect { expr, d } => {
            let (sign, z) = product(expr)?.reflect(parse_rational(d)?);
            let sign = sign.map_or("undefined".to_string(), |s| format!("{s:+}"));
            match format {
                Format::Json => writeln!(out, "{}", json(&serde_json::json!({"sign": sign, "reflected": z.to_string()})))?,
                _ => {
                    writeln!(out, "sign: {sign}")?;
                    writeln!(out, "reflected: {z}")?;
                }
            }
        }
        ZetaAction::Funceq { expr, d } => {
            let fe = product(expr)?.check_functional_equation(parse_rational(d)?);
            let sign = fe.sign.map_or("undefined".to_string(), |s| format!("{s:+}"));
            match format {
                Format::Json => writeln!(out, "{}", json(&serde_json::json!({"symmetric": fe.symmetric, "sign": sign})))?,
                _ => {
                    writeln!(out, "symmetric: {}", fe.symmetric)?;
                    writeln!(out, "sign: {sign}")?;
                }
            }
        }
    }
    Ok(0)
}

fn run_repro(only: &[u8], format: Format, out: &mut (dyn Write + Send)) -> Result<i32> {
    let ids: Vec<u8> = if only.is_empty() { (1..=repro::CRITERIA).collect() } else { only.to_vec() };
    let mut reports = Vec::new();
    for id in ids {
        let report = repro::run_criterion(id).ok_or_else(|| anyhow!("no criterion {id}"))?;
        if format != Format::Json {
            writeln!(out, "{report}")?;
        }
        reports.push(report);
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    if format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
    } else {
        writeln!(out, "{passed}/{} criteria passed", reports.len())?;
    }
    Ok(if passed == reports.len() { 0 } else { 2 })
}
