use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use wonderful_core::algebra::rational::to_fraction_string;
use wonderful_core::algebra::Series;
use wonderful_core::forest_series::SeriesBundle;
use wonderful_core::oracle::{self, ChainRecord, OracleLimits};
use wonderful_core::poincare::{self, ModelType, PoincarePolynomial, QTPoly};
use wonderful_core::{Error, Execution};

#[derive(Parser, Debug)]
#[command(
    name = "wonderful",
    version,
    about = "Poincaré polynomials of maximal wonderful models for root arrangements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Poincaré polynomial of one model.
    Compute(ComputeArgs),
    /// Poincaré series through a given power of t.
    Series(SeriesArgs),
    /// Compare the series pipeline with brute-force chain enumeration.
    Verify(VerifyArgs),
    /// Dump intermediate data.
    Dump(DumpArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

fn parse_type(s: &str) -> Result<ModelType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_h(s: &str) -> Result<u32, String> {
    match s.trim().parse::<u32>() {
        Ok(h) if h >= 1 => Ok(h),
        _ => Err(format!("h must be a positive integer, got {s:?}")),
    }
}

#[derive(Args, Debug)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl Output {
    fn emit(&self, text: &str) -> Result<()> {
        match &self.output {
            Some(path) => {
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))
            }
            None => {
                io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }
}

#[derive(Args, Debug)]
struct ComputeArgs {
    /// Root system type: A, B, C (same as B) or D.
    #[arg(long = "type", short = 't', value_parser = parse_type)]
    model: ModelType,
    /// Rank (A) or n (B, D).
    #[arg(long, short = 'n', alias = "n")]
    rank: u32,
    #[arg(long, default_value = "1", value_parser = parse_h)]
    h: u32,
    #[arg(long, short, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[arg(long = "type", short = 't', value_parser = parse_type)]
    model: ModelType,
    /// Highest power of t.
    #[arg(long, short)]
    degree: u32,
    #[arg(long, default_value = "1", value_parser = parse_h)]
    h: u32,
    #[arg(long, short, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long = "type", short = 't', value_parser = parse_type)]
    model: ModelType,
    /// Largest rank (A) or n (B, D) to check.
    #[arg(long)]
    n_max: u32,
    /// Comma-separated values of h.
    #[arg(long, value_delimiter = ',', default_value = "1", value_parser = parse_h)]
    h: Vec<u32>,
    /// Ignore the enumeration caps.
    #[arg(long)]
    force: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct DumpArgs {
    #[command(subcommand)]
    what: DumpWhat,
}

#[derive(Subcommand, Debug)]
enum DumpWhat {
    /// A forest-counting series as JSON (monomial -> "num/den").
    Series {
        #[arg(value_enum)]
        name: SeriesName,
        #[arg(long, short)]
        degree: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Every chain of a poset as CSV (chain, jumps, contribution).
    Chains {
        #[arg(long = "type", short = 't', value_parser = parse_type)]
        model: ModelType,
        #[arg(long, short)]
        n: u32,
        #[arg(long, default_value = "1", value_parser = parse_h)]
        h: u32,
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SeriesName {
    TreeA,
    ForestA,
    ForestAHalved,
    StrongStep,
    StrongTreeB,
    SeriesB,
    StrongTreeD,
    SeriesD,
}

impl SeriesName {
    fn pick(self, b: &SeriesBundle) -> &Series {
        match self {
            SeriesName::TreeA => &b.tree_a,
            SeriesName::ForestA => &b.forest_a,
            SeriesName::ForestAHalved => &b.forest_a_halved,
            SeriesName::StrongStep => &b.strong_step,
            SeriesName::StrongTreeB => &b.strong_tree_b,
            SeriesName::SeriesB => &b.series_b,
            SeriesName::StrongTreeD => &b.strong_tree_d,
            SeriesName::SeriesD => &b.series_d,
        }
    }
}

/// Failures that map to exit code 1 rather than 2.
#[derive(Debug)]
struct VerificationFailed(usize);

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} instance(s) failed verification", self.0)
    }
}

impl std::error::Error for VerificationFailed {}

fn polynomial_json(p: &PoincarePolynomial) -> Value {
    let coefficients: Vec<String> = p
        .polynomial
        .integer_coefficients()
        .expect("normalized polynomials are integral")
        .iter()
        .map(|c| c.to_string())
        .collect();
    json!({
        "type": p.model.to_string(),
        "rank": p.rank,
        "h": p.h,
        "coefficients": coefficients,
    })
}

fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn compute(args: &ComputeArgs) -> Result<()> {
    let p = poincare::poincare_polynomial(args.model, args.rank, args.h)?;
    if let Some(flag) = p.flag {
        eprintln!("warning: {flag}");
    }
    let text = match args.format {
        Format::Text => format!("{}\n", p.polynomial),
        Format::Latex => format!("{}\n", p.polynomial.to_latex()),
        Format::Json => to_json_text(&polynomial_json(&p)),
    };
    args.out.emit(&text)
}

fn series_json(model: ModelType, h: u32, s: &QTPoly) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|((t, q), c)| json!({"t": t, "q": q, "coefficient": to_fraction_string(c)}))
        .collect();
    json!({"type": model.to_string(), "h": h, "degree": s.t_truncation(), "terms": terms})
}

fn series(args: &SeriesArgs) -> Result<()> {
    let s = poincare::phi(args.model, args.h, args.degree)?;
    let text = match args.format {
        Format::Text => format!("{s}\n"),
        Format::Latex => s.to_latex(&format!("\\phi_{}(q,t)", args.model)),
        Format::Json => to_json_text(&series_json(args.model, args.h, &s)),
    };
    args.out.emit(&text)
}

fn verify(args: &VerifyArgs) -> Result<()> {
    let limits = if args.force {
        OracleLimits::unlimited()
    } else {
        OracleLimits::from_env()
    };
    let first = match args.model {
        ModelType::D => 2,
        _ => 1,
    };
    if args.n_max < first {
        return Err(Error::Domain(format!("type {} needs --n-max >= {first}", args.model)).into());
    }
    let leaves = |rank: u32| {
        if args.model == ModelType::A {
            rank + 1
        } else {
            rank
        }
    };
    // refuse before doing any work
    limits.check(args.model, leaves(args.n_max))?;

    let mut h_values = args.h.clone();
    h_values.sort_unstable();
    h_values.dedup();

    let mut report = String::new();
    report.push_str(&format!(
        "{:<4} {:>3} {:>3}  {:<6} {:<40} {}\n",
        "type", "n", "h", "status", "pipeline", "oracle"
    ));
    let mut failures = 0;
    let mut notes = Vec::new();
    for &h in &h_values {
        let pipeline = poincare::poincare_polynomials(args.model, first..=args.n_max, h)?;
        for p in pipeline {
            let expected = oracle::oracle_poincare_with(
                args.model,
                leaves(p.rank),
                h,
                limits,
                Execution::default(),
            )?;
            let status = match (expected == p.polynomial, p.flag) {
                (true, None) => "PASS",
                (true, Some(flag)) => {
                    notes.push(format!("note: {}{} h={h}: {flag}", args.model, p.rank));
                    "INFO"
                }
                (false, _) => {
                    failures += 1;
                    "FAIL"
                }
            };
            report.push_str(&format!(
                "{:<4} {:>3} {:>3}  {:<6} {:<40} {}\n",
                args.model.to_string(),
                p.rank,
                h,
                status,
                p.polynomial.to_string(),
                expected
            ));
        }
    }
    for note in notes {
        report.push_str(&note);
        report.push('\n');
    }
    args.out.emit(&report)?;
    if failures > 0 {
        return Err(VerificationFailed(failures).into());
    }
    Ok(())
}

fn dump(args: &DumpArgs) -> Result<()> {
    match &args.what {
        DumpWhat::Series { name, degree, out } => {
            let bundle = SeriesBundle::compute(*degree)?;
            let s = name.pick(&bundle);
            let name_str = name
                .to_possible_value()
                .expect("no skipped variants")
                .get_name()
                .to_string();
            let mut obj = Map::new();
            obj.insert("name".into(), Value::String(name_str));
            obj.insert("degree".into(), json!(s.truncation().degree));
            obj.insert("max_index".into(), json!(s.truncation().max_index));
            obj.insert("terms".into(), s.to_json());
            out.emit(&to_json_text(&Value::Object(obj)))
        }
        DumpWhat::Chains {
            model,
            n,
            h,
            force,
            out,
        } => {
            let limits = if *force {
                OracleLimits::unlimited()
            } else {
                OracleLimits::from_env()
            };
            let poset = oracle::Poset::build_with(*model, *n, limits, Execution::default())?;
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(["chain", "jumps", "contribution"])?;
            for chain in poset.chains() {
                let r = ChainRecord::new(&chain, *h);
                writer.write_record([&r.chain, &r.jumps, &r.contribution])?;
            }
            let bytes = writer.into_inner().context("flushing CSV")?;
            out.emit(&String::from_utf8(bytes).context("CSV is UTF-8")?)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<VerificationFailed>().is_some() {
        return 1;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Domain(_) | Error::Contract(_) | Error::ResourceGuard { .. }) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(a) => compute(a),
        Command::Series(a) => series(a),
        Command::Verify(a) => verify(a),
        Command::Dump(a) => dump(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if let Some(Error::ResourceGuard { .. }) = err.downcast_ref::<Error>() {
                eprintln!(
                    "hint: pass --force or set {} to enumerate anyway",
                    oracle::CAP_ENV
                );
            }
            ExitCode::from(exit_code(&err))
        }
    }
}
