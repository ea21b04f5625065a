//! `zetapoly` command-line front end.
//!
//! Exit status: 0 when every check passes, 1 when a mathematical check
//! fails, 2 on bad usage or input.

mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use zetapoly::BigReal;

#[derive(Parser)]
#[command(name = "zetapoly", version, about = "Zeta-polynomials of period polynomials")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, default_value_t = 128)]
    prec: u32,
    /// Tolerance as a decimal string; each command has its own default.
    #[arg(long, global = true)]
    tol: Option<String>,
    /// Largest term index for the truncated triple sum.
    #[arg(long, global = true, default_value_t = 400)]
    kmax: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Relation {
    Fricke,
    Res1,
    Res2,
    Es1,
    Es2,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum RootMode {
    /// Roots of a polynomial in `s` against `Re s = 1/2`.
    CriticalLine,
    /// Roots of a polynomial in `X` against `|X| = 1`.
    UnitCircle,
}

#[derive(Subcommand)]
enum Cmd {
    /// Transform a polynomial in X into its zeta-polynomial.
    RvForward { input: PathBuf },
    /// Recover the polynomial in X from a zeta-polynomial.
    RvInverse { input: PathBuf },
    /// Test one of the linear relations on a polynomial in X.
    Check {
        #[arg(value_enum)]
        relation: Relation,
        input: PathBuf,
        /// Fricke sign, required for `fricke`.
        #[arg(long, allow_negative_numbers = true)]
        eps: Option<i8>,
    },
    /// Evaluate the truncated triple-sum identity for each n.
    Thm2 {
        /// Polynomial in X or zeta-polynomial in s.
        input: PathBuf,
        /// Values of n, as a comma list with optional ranges such as `1..5`.
        #[arg(long, default_value = "1")]
        n: String,
    },
    /// Rebuild the discriminant example from its critical values.
    Delta,
    /// Exact basis of the period-polynomial space of weight w.
    Wspace { w: usize },
    /// Critical values of a completed L-function.
    Lvalues {
        /// Newform JSON file; the discriminant form when omitted.
        newform: Option<PathBuf>,
    },
    /// Roots of a polynomial file with critical-line or unit-circle diagnostics.
    Roots {
        input: PathBuf,
        /// Defaults to the critical line for `s` and the unit circle for `X`.
        #[arg(long, value_enum)]
        mode: Option<RootMode>,
    },
}

/// Validated global settings.
pub struct RunConfig {
    pub prec: u32,
    tol: Option<BigReal>,
    pub k_max: usize,
    pub format: Format,
}

impl RunConfig {
    fn new(g: &Global) -> anyhow::Result<Self> {
        if g.prec < 64 {
            bail!("--prec must be at least 64, got {}", g.prec);
        }
        let tol = match &g.tol {
            None => None,
            Some(t) => {
                let v = BigReal::parse_decimal(t, g.prec).with_context(|| format!("invalid --tol {t:?}"))?;
                if v.is_negative() || v.is_zero() {
                    bail!("--tol must be positive, got {t}");
                }
                Some(v)
            }
        };
        Ok(RunConfig {
            prec: g.prec,
            tol,
            k_max: g.kmax,
            format: g.format,
        })
    }

    pub fn tol_or(&self, default: &str) -> BigReal {
        self.tol
            .clone()
            .unwrap_or_else(|| BigReal::parse_decimal(default, self.prec).expect("valid default"))
    }
}

/// Result of a command: the rendered report and whether its checks passed.
pub struct Outcome {
    pub pass: bool,
    pub json: serde_json::Value,
    pub text: String,
}

fn dispatch(cmd: &Cmd, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    match cmd {
        Cmd::RvForward { input } => commands::rv_forward(&commands::read(input)?),
        Cmd::RvInverse { input } => commands::rv_inverse(&commands::read(input)?),
        Cmd::Check { relation, input, eps } => commands::check(*relation, &commands::read(input)?, *eps),
        Cmd::Thm2 { input, n } => commands::thm2(&commands::read(input)?, &commands::parse_n_list(n)?, cfg),
        Cmd::Delta => commands::delta(cfg),
        Cmd::Wspace { w } => commands::wspace(*w),
        Cmd::Lvalues { newform } => {
            let text = newform.as_ref().map(commands::read).transpose()?;
            commands::lvalues(text.as_deref(), cfg)
        }
        Cmd::Roots { input, mode } => commands::roots(&commands::read(input)?, *mode, cfg),
    }
}

fn emit(out: &Outcome, cfg: &RunConfig, path: Option<&PathBuf>) -> anyhow::Result<()> {
    let mut body = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&out.json)?,
        Format::Text => out.text.trim_end().to_string(),
    };
    body.push('\n');
    match path {
        Some(p) => std::fs::write(p, body).with_context(|| format!("cannot write {}", p.display()))?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || -> anyhow::Result<bool> {
        let cfg = RunConfig::new(&cli.global)?;
        let out = dispatch(&cli.cmd, &cfg)?;
        emit(&out, &cfg, cli.global.out.as_ref())?;
        Ok(out.pass)
    };
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
