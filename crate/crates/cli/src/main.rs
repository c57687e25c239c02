use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use jordanparts::closedform::{applicable, decompose_closed};
use jordanparts::iima::{decompose_iima, delta_sequence, det_dk};
use jordanparts::numtheory::is_prime;
use jordanparts::oracle::{decompose_oracle_with_cap, rank_sequence, DEFAULT_CAP};
use jordanparts::renaud::decompose_renaud;
use jordanparts::verify::{cross_check, CrossCheckOptions};
use jordanparts::Decomposition;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "jordanparts",
    version,
    about = "Jordan partitions of tensor products of Jordan blocks"
)]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Largest r·s the matrix oracle will attempt.
    #[arg(long, global = true, env = "JORDANPARTS_ORACLE_CAP", default_value_t = DEFAULT_CAP)]
    oracle_cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose V_r ⊗ V_s in characteristic p.
    Decompose {
        #[arg(short)]
        r: u64,
        #[arg(short)]
        s: u64,
        #[arg(short)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
        algorithm: Algorithm,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Tabulate λ(r, s, p) for r ≤ rmax, r ≤ s ≤ smax.
    Table {
        #[arg(long)]
        rmax: u64,
        #[arg(long)]
        smax: u64,
        #[arg(short)]
        p: u64,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Print δ_0 … δ_r and the indices where δ_k = 1.
    Delta {
        #[arg(short)]
        r: u64,
        #[arg(short)]
        s: u64,
        #[arg(short)]
        p: u64,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Print the binomial determinants D_0(r, s) … D_r(r, s).
    Det {
        #[arg(short)]
        r: u64,
        #[arg(short)]
        s: u64,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Cross-check every algorithm and law over a grid.
    Verify {
        #[arg(long)]
        rmax: u64,
        #[arg(long)]
        smax: u64,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u64>,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Decompose by ranks of powers of the nilpotent part over F_p.
    Oracle {
        #[arg(short)]
        r: u64,
        #[arg(short)]
        s: u64,
        #[arg(short)]
        p: u64,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Auto,
    Renaud,
    Iima,
    Closedform,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

/// Bad input rather than a failed computation; exits with status 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return usage(format!("p = {p} is not prime"));
    }
    Ok(())
}

fn check_positive(r: u64, s: u64) -> Result<()> {
    if r == 0 || s == 0 {
        return usage("r and s must be at least 1");
    }
    Ok(())
}

/// Result of a subcommand: what to print and whether every check passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl From<String> for Outcome {
    fn from(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string(value)? + "\n")
}

fn decompose(r: u64, s: u64, p: u64, algorithm: Algorithm, cap: u64) -> Result<Decomposition> {
    check_positive(r, s)?;
    check_prime(p)?;
    let forms = applicable(r, s, p);
    let d = match algorithm {
        Algorithm::Auto => match forms.first() {
            Some(&form) => decompose_closed(form, r, s, p)?,
            None => decompose_iima(r, s, p)?,
        },
        Algorithm::Renaud => decompose_renaud(r, s, p)?,
        Algorithm::Iima => decompose_iima(r, s, p)?,
        Algorithm::Closedform => match forms.first() {
            Some(&form) => decompose_closed(form, r, s, p)?,
            None => return usage(format!("no closed form applies to ({r}, {s}, {p})")),
        },
        Algorithm::Oracle => decompose_oracle_with_cap(r, s, p, cap)?,
    };
    Ok(d)
}

fn cmd_table(rmax: u64, smax: u64, p: u64, format: TableFormat) -> Result<Outcome> {
    if rmax == 0 || smax == 0 {
        return usage("--rmax and --smax must be at least 1");
    }
    check_prime(p)?;
    let mut rows = Vec::new();
    for r in 1..=rmax.min(smax) {
        for s in r..=smax {
            rows.push(decompose_renaud(r, s, p)?);
        }
    }
    if format == TableFormat::Json {
        return Ok(json(&rows)?.into());
    }
    let mut text = String::from("r,s,p,partition\n");
    for d in &rows {
        writeln!(text, "{},{},{},{}", d.r(), d.s(), d.p(), d.to_partition())?;
    }
    Ok(text.into())
}

#[derive(Serialize)]
struct DeltaOutput {
    r: u64,
    s: u64,
    p: u64,
    bits: String,
    k: Vec<u64>,
}

fn cmd_delta(r: u64, s: u64, p: u64, format: TextFormat) -> Result<Outcome> {
    check_positive(r, s)?;
    check_prime(p)?;
    if r > s {
        return usage(format!("delta needs r <= s, got r = {r}, s = {s}"));
    }
    let ds = delta_sequence(r, s, p)?;
    let out = DeltaOutput {
        r,
        s,
        p,
        bits: ds.bit_string(),
        k: ds.ones().to_vec(),
    };
    if format == TextFormat::Json {
        return Ok(json(&out)?.into());
    }
    let ks: Vec<String> = out.k.iter().map(u64::to_string).collect();
    Ok(format!("{}  k: {}\n", out.bits, ks.join(" ")).into())
}

fn cmd_det(r: u64, s: u64, format: TextFormat) -> Result<Outcome> {
    check_positive(r, s)?;
    if r > s {
        return usage(format!("det needs r <= s, got r = {r}, s = {s}"));
    }
    let values = (0..=r)
        .map(|k| det_dk(r, s, k).map(|d| d.to_string()))
        .collect::<jordanparts::Result<Vec<_>>>()?;
    if format == TextFormat::Json {
        return Ok(json(&values)?.into());
    }
    let mut text = String::new();
    for (k, value) in values.iter().enumerate() {
        writeln!(text, "D_{k}({r},{s}) = {value}")?;
    }
    Ok(text.into())
}

fn cmd_verify(
    rmax: u64,
    smax: u64,
    primes: &[u64],
    format: TextFormat,
    cap: u64,
) -> Result<Outcome> {
    if primes.is_empty() {
        return usage("--primes must list at least one prime");
    }
    for &p in primes {
        check_prime(p)?;
    }
    let options = CrossCheckOptions {
        oracle_cap: (cap > 0).then_some(cap),
    };
    let mut reports = Vec::new();
    for &p in primes {
        for r in 1..=rmax.min(smax) {
            for s in r..=smax {
                reports.push(cross_check(r, s, p, &options));
            }
        }
    }
    let failures: Vec<_> = reports.iter().filter(|report| !report.passed()).collect();
    for report in &failures {
        if let Err(e) = report.ensure_ok() {
            eprintln!("{e}");
        }
    }
    let text = match format {
        TextFormat::Json => json(&reports)?,
        TextFormat::Text => format!(
            "checked {} cells, {} failures\n",
            reports.len(),
            failures.len()
        ),
    };
    Ok(Outcome {
        text,
        ok: failures.is_empty(),
    })
}

#[derive(Serialize)]
struct OracleOutput {
    ranks: Vec<usize>,
    decomposition: Decomposition,
}

fn cmd_oracle(r: u64, s: u64, p: u64, format: TextFormat, cap: u64) -> Result<Outcome> {
    check_positive(r, s)?;
    check_prime(p)?;
    let out = OracleOutput {
        ranks: rank_sequence(r, s, p, cap)?,
        decomposition: decompose_oracle_with_cap(r, s, p, cap)?,
    };
    if format == TextFormat::Json {
        return Ok(json(&out)?.into());
    }
    let ranks: Vec<String> = out.ranks.iter().map(usize::to_string).collect();
    Ok(format!("ranks: {}\n{}\n", ranks.join(" "), out.decomposition).into())
}

fn run(cli: &Cli) -> Result<Outcome> {
    let cap = cli.oracle_cap;
    match cli.command {
        Command::Decompose {
            r,
            s,
            p,
            algorithm,
            format,
        } => {
            let d = decompose(r, s, p, algorithm, cap)?;
            Ok(match format {
                TextFormat::Json => json(&d)?,
                TextFormat::Text => format!("{d}\n"),
            }
            .into())
        }
        Command::Table {
            rmax,
            smax,
            p,
            format,
        } => cmd_table(rmax, smax, p, format),
        Command::Delta { r, s, p, format } => cmd_delta(r, s, p, format),
        Command::Det { r, s, format } => cmd_det(r, s, format),
        Command::Verify {
            rmax,
            smax,
            ref primes,
            format,
        } => cmd_verify(rmax, smax, primes, format, cap),
        Command::Oracle { r, s, p, format } => cmd_oracle(r, s, p, format, cap),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|outcome| {
        emit(&cli, &outcome.text)?;
        if !outcome.ok {
            bail!("verification failed");
        }
        Ok(())
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
