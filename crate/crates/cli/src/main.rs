use std::io::{self, Write};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::Context;
use chebmin::cheb_factor::{factor, ChebKind};
use chebmin::identities::run_suite;
use chebmin::minpoly::{
    barnes_expr, clear_caches, default_precision_bits, psi_expr, NUMERIC_CEILING,
};
use chebmin::{psi, psi_barnes, psi_numeric, psi_wz, Error, IntPoly, PsiExpr, PsiRecord, TableRow};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PRECISION: u8 = 3;

#[derive(Parser)]
#[command(name = "chebmin", version, about = "Minimal polynomials of 2cos(2pi/n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute psi_n, the minimal polynomial of 2cos(2pi/n).
    Psi {
        n: u64,
        #[arg(long, value_enum, default_value_t = Method::Main)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Print the symbolic quotient instead of the expanded polynomial.
        #[arg(long)]
        expr: bool,
        /// Fixed-point precision for the numeric method.
        #[arg(long)]
        bits: Option<u32>,
    },
    /// Print the table of psi_n for n <= max.
    Table {
        #[arg(long, default_value_t = 120)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include the expanded polynomials.
        #[arg(long)]
        expand: bool,
    },
    /// Split t_n (T), p-_n (V) or p+_n (W) into psi factors.
    Factor {
        kind: ChebKind,
        n: u64,
        /// Multiply the factors back and compare with the target.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run every identity and cross-method sweep up to max.
    Verify {
        #[arg(long, default_value_t = 50)]
        max: u64,
        /// Also write the reports as JSON to this file.
        #[arg(long)]
        json: Option<std::path::PathBuf>,
    },
    /// Time the methods against each other.
    Bench {
        #[arg(long, default_value_t = 120)]
        max: u64,
        #[arg(long, value_delimiter = ',', default_value = "main,wz,barnes,numeric")]
        methods: Vec<Method>,
        /// Timed repetitions per n; the median is reported.
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Main,
    Wz,
    Barnes,
    Numeric,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Main => "main",
            Method::Wz => "wz",
            Method::Barnes => "barnes",
            Method::Numeric => "numeric",
        }
    }

    fn applies_to(self, n: u64) -> bool {
        match self {
            Method::Barnes => n >= 3,
            Method::Numeric => n <= NUMERIC_CEILING,
            _ => true,
        }
    }

    fn compute(self, n: u64, bits: Option<u32>) -> chebmin::Result<IntPoly> {
        match self {
            Method::Main => psi(n),
            Method::Wz => psi_wz(n),
            Method::Barnes => psi_barnes(n),
            Method::Numeric => psi_numeric(n, bits.unwrap_or_else(|| default_precision_bits(n))),
        }
    }

    fn expr(self, n: u64) -> chebmin::Result<Option<PsiExpr>> {
        match self {
            Method::Main => psi_expr(n),
            Method::Barnes if n >= 3 => barnes_expr(n).map(Some),
            _ => Ok(None),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Failure with a fixed exit code.
#[derive(Debug)]
struct Exit {
    code: u8,
    message: String,
}

impl Exit {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PrecisionExceeded(_) => EXIT_PRECISION,
            Error::InvalidInput(_)
            | Error::IndexOutOfRange { .. }
            | Error::NotIrreducible { .. }
            | Error::OutOfRange { .. }
            | Error::Parse(_) => EXIT_USAGE,
            Error::NotDivisible | Error::DivideByZero => EXIT_VERIFY,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<anyhow::Error> for Exit {
    fn from(e: anyhow::Error) -> Self {
        Self {
            code: EXIT_VERIFY,
            message: format!("{e:#}"),
        }
    }
}

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn positive(n: u64, what: &str) -> Result<(), Exit> {
    if n == 0 {
        Err(Exit::usage(format!("{what} must be at least 1")))
    } else {
        Ok(())
    }
}

fn cmd_psi(
    out: &mut impl Write,
    n: u64,
    method: Method,
    format: Format,
    expr: bool,
    bits: Option<u32>,
) -> Result<(), Exit> {
    positive(n, "n")?;
    if expr && matches!(method, Method::Wz | Method::Numeric) {
        return Err(Exit::usage(format!(
            "method {} has no closed expression",
            method.name()
        )));
    }
    let symbolic = method.expr(n)?;
    match format {
        Format::Json => {
            let poly = method.compute(n, bits)?;
            let record = PsiRecord::from_poly(n, symbolic, &poly);
            writeln!(out, "{}", serde_json::to_string(&record).map_err(anyhow::Error::from)?)?;
        }
        Format::Text if expr => match symbolic {
            Some(e) => writeln!(out, "{e}")?,
            None => writeln!(out, "{}", psi(n)?)?,
        },
        Format::Text => writeln!(out, "{}", method.compute(n, bits)?)?,
    }
    Ok(())
}

fn cmd_table(out: &mut impl Write, max: u64, format: Format, expand: bool) -> Result<(), Exit> {
    positive(max, "--max")?;
    let rows = (1..=max)
        .into_par_iter()
        .map(|n| TableRow::new(n, expand))
        .collect::<chebmin::Result<Vec<_>>>()?;
    match format {
        Format::Text => {
            for row in rows {
                writeln!(out, "{row}")?;
            }
        }
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|r| {
                    let mut v = json!({"n": r.n, "expr": r.expr, "text": r.expr_text()});
                    if let Some(p) = &r.expanded {
                        v["coeffs"] = p.coeffs().iter().rev().map(|c| c.to_string()).collect();
                    }
                    v
                })
                .collect();
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&items).map_err(anyhow::Error::from)?
            )?;
        }
    }
    Ok(())
}

fn cmd_factor(
    out: &mut impl Write,
    kind: ChebKind,
    n: u64,
    check: bool,
    format: Format,
) -> Result<(), Exit> {
    positive(n, "n")?;
    let list = factor(kind, n)?;
    match format {
        Format::Text => writeln!(out, "{list}")?,
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&list).map_err(anyhow::Error::from)?
        )?,
    }
    if check {
        if list.check()? {
            if format == Format::Text {
                writeln!(out, "check: ok")?;
            }
        } else {
            return Err(Exit {
                code: EXIT_VERIFY,
                message: format!("product of factors differs from {kind}_{n}"),
            });
        }
    }
    Ok(())
}

fn cmd_verify(
    out: &mut impl Write,
    max: u64,
    json_path: Option<std::path::PathBuf>,
) -> Result<(), Exit> {
    let reports = run_suite(max);
    if reports.is_empty() {
        writeln!(out, "no checks run")?;
    }
    for r in &reports {
        writeln!(out, "{r}")?;
    }
    if let Some(path) = json_path {
        let text = serde_json::to_string_pretty(&reports).map_err(anyhow::Error::from)?;
        std::fs::write(&path, text)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        return Err(Exit {
            code: EXIT_VERIFY,
            message: format!("{failed} check(s) failed"),
        });
    }
    Ok(())
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort_unstable();
    xs.get(xs.len() / 2).copied().unwrap_or_default()
}

fn cmd_bench(out: &mut impl Write, max: u64, methods: Vec<Method>, reps: usize) -> Result<(), Exit> {
    positive(max, "--max")?;
    if methods.is_empty() {
        return Err(Exit::usage("no methods selected"));
    }
    let reps = reps.max(1);
    let mut per_method: Vec<Vec<Duration>> = vec![Vec::new(); methods.len()];
    let mut mismatches = Vec::new();

    let header: Vec<String> = methods.iter().map(|m| format!("{:>12}", m.name())).collect();
    writeln!(out, "{:>6} {}   (median us per n)", "n", header.join(" "))?;
    for n in 1..=max {
        let mut cells = Vec::with_capacity(methods.len());
        let mut reference: Option<IntPoly> = None;
        for (i, &m) in methods.iter().enumerate() {
            if !m.applies_to(n) {
                cells.push(format!("{:>12}", "-"));
                continue;
            }
            let mut times = Vec::with_capacity(reps);
            let mut value = None;
            for _ in 0..reps {
                clear_caches();
                let start = Instant::now();
                let p = m.compute(n, None)?;
                times.push(start.elapsed());
                value = Some(p);
            }
            let value = value.expect("reps >= 1");
            match &reference {
                None => reference = Some(value),
                Some(r) if *r != value => mismatches.push((n, m.name())),
                Some(_) => {}
            }
            let t = median(times);
            per_method[i].push(t);
            cells.push(format!("{:>12.1}", t.as_secs_f64() * 1e6));
        }
        writeln!(out, "{n:>6} {}", cells.join(" "))?;
    }
    for (m, times) in methods.iter().zip(&per_method) {
        let total: Duration = times.iter().sum();
        writeln!(
            out,
            "total {:<8} {:>10.3} ms over {} values, median {:.1} us",
            m.name(),
            total.as_secs_f64() * 1e3,
            times.len(),
            median(times.clone()).as_secs_f64() * 1e6
        )?;
    }
    if mismatches.is_empty() {
        writeln!(out, "outputs: identical across methods")?;
        Ok(())
    } else {
        Err(Exit {
            code: EXIT_VERIFY,
            message: format!("methods disagree at {mismatches:?}"),
        })
    }
}

fn run(cli: Cli) -> Result<(), Exit> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Psi {
            n,
            method,
            format,
            expr,
            bits,
        } => cmd_psi(&mut out, n, method, format, expr, bits),
        Command::Table {
            max,
            format,
            expand,
        } => cmd_table(&mut out, max, format, expand),
        Command::Factor {
            kind,
            n,
            check,
            format,
        } => cmd_factor(&mut out, kind, n, check, format),
        Command::Verify { max, json } => cmd_verify(&mut out, max, json),
        Command::Bench { max, methods, reps } => cmd_bench(&mut out, max, methods, reps),
    };
    out.flush()?;
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
