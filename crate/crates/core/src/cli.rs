//! The `pf` command line.

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::matching::enumerate_pfaff;
use crate::pfaffian::{symbolic_pfaffian, AnyArray, AnyScalar, ArrayFile, Settings};
use crate::poly::Poly;
use crate::suite::{run_suite, Check, Outcome, SuiteOptions};
use crate::symmetry::{symmetry_group_with, ActionMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenMode {
    Symmetric,
    Skew,
}

impl From<GenMode> for ActionMode {
    fn from(m: GenMode) -> Self {
        match m {
            GenMode::Symmetric => ActionMode::SymmetricGens,
            GenMode::Skew => ActionMode::SkewGens,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "pf", version, about = "Pfaffians, their symmetry groups, and identity checks")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Use the parallel enumeration paths.
    #[arg(long, global = true)]
    pub parallel: bool,
    /// Raise the verification limits past the default CI budget.
    #[arg(long, global = true)]
    pub expensive: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pfaffian of an array file.
    Eval { file: PathBuf },
    /// Symbolic pfaffian of the generic array of order TWO_N.
    Expand { two_n: usize },
    /// List the perfect matchings of 1..TWO_N with their signs.
    Matchings { two_n: usize },
    /// Determinant of the matrix completed from an array file.
    Det { file: PathBuf },
    /// Symmetry group of a pfaffian or a polynomial.
    Sym {
        /// Array file; its pfaffian is the target polynomial.
        file: Option<PathBuf>,
        /// Use the generic pfaffian of this order instead of a file.
        #[arg(long, conflicts_with_all = ["file", "poly"])]
        builtin: Option<usize>,
        /// Polynomial in text form; needs --degree.
        #[arg(long, conflicts_with = "file", requires = "degree")]
        poly: Option<String>,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value = "symmetric")]
        mode: GenMode,
        /// Keep p with act(p, f) = sign(p) f instead of act(p, f) = f.
        #[arg(long)]
        signed: bool,
        /// Also print every group element.
        #[arg(long)]
        elements: bool,
    },
    /// Run named checks (or `all`) over a range of n.
    Verify {
        check: String,
        /// `a..b`, `a..=b` (both inclusive), or a single `n`.
        #[arg(long, default_value = "1..3", value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the default tolerance of floating checks.
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}

/// Parses `argv` (program name first) and runs the command. Returns the
/// process exit code: 0 on success, 1 when a check fails, 2 on bad input.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(all_passed) => i32::from(!all_passed),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Parse(format!("i/o: {e}"))
}

fn read_array(path: &PathBuf) -> Result<AnyArray> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    ArrayFile::parse(&text)
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(value)?).map_err(io)
}

/// Runs a parsed command; `Ok(false)` means some check failed.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    let settings = Settings {
        caps: Caps::from_env(),
        parallel: cli.parallel,
    };
    match &cli.command {
        Command::Eval { file } | Command::Det { file } => {
            let arr = read_array(file)?;
            let (key, value) = if matches!(cli.command, Command::Eval { .. }) {
                ("pfaffian", arr.pfaffian(&settings)?)
            } else {
                ("determinant", arr.determinant()?)
            };
            match cli.format {
                Format::Text => writeln!(out, "{}", value.to_text()).map_err(io)?,
                Format::Json => emit_json(
                    out,
                    &json!({"two_n": arr.order(), "mode": arr.mode(), key: value.to_json()}),
                )?,
            }
        }
        Command::Expand { two_n } => {
            let pf = symbolic_pfaffian(*two_n, &settings)?;
            match cli.format {
                Format::Text => writeln!(out, "{}", pf.pretty()).map_err(io)?,
                Format::Json => emit_json(out, &json!({"two_n": two_n, "terms": pf.len(), "pfaffian": pf}))?,
            }
        }
        Command::Matchings { two_n } => {
            let iter = enumerate_pfaff(*two_n, settings.caps.pfaff)?;
            match cli.format {
                Format::Text => {
                    for (m, sign) in iter {
                        writeln!(out, "{} {m}", if sign > 0 { '+' } else { '-' }).map_err(io)?;
                    }
                }
                Format::Json => {
                    let all: Vec<_> = iter.map(|(m, sign)| json!({"pairs": m, "sign": sign})).collect();
                    emit_json(out, &serde_json::Value::Array(all))?;
                }
            }
        }
        Command::Sym {
            file,
            builtin,
            poly,
            degree,
            mode,
            signed,
            elements,
        } => {
            let (target, m) = match (file, builtin, poly) {
                (Some(path), _, _) => {
                    let arr = read_array(path)?;
                    let target = match arr.pfaffian(&settings)? {
                        AnyScalar::Symbolic(p) => p,
                        AnyScalar::Rational(c) => Poly::constant(c),
                        AnyScalar::Float(_) => {
                            return Err(Error::Parse("sym needs exact or symbolic entries".into()))
                        }
                    };
                    (target, arr.order())
                }
                (None, Some(two_n), _) => (symbolic_pfaffian(*two_n, &settings)?, *two_n),
                (None, None, Some(text)) => (text.parse::<Poly>()?, degree.expect("clap requires degree")),
                (None, None, None) => {
                    return Err(Error::Parse("sym needs an array file, --builtin, or --poly".into()))
                }
            };
            let report = symmetry_group_with(&target, m, (*mode).into(), *signed, &settings)?;
            match cli.format {
                Format::Text => {
                    writeln!(out, "{}", report.summary()).map_err(io)?;
                    if *elements {
                        for p in &report.elements {
                            writeln!(out, "  {p}").map_err(io)?;
                        }
                    }
                }
                Format::Json => {
                    let mut value = serde_json::to_value(&report)?;
                    if !elements {
                        value.as_object_mut().expect("report is an object").remove("elements");
                    }
                    emit_json(out, &value)?;
                }
            }
        }
        Command::Verify { check, n, seed, tol } => {
            let checks: Vec<Check> = if check == "all" {
                Check::ALL.to_vec()
            } else {
                check
                    .split(',')
                    .map(|c| c.trim().parse())
                    .collect::<Result<_>>()?
            };
            let opts = SuiteOptions {
                seed: *seed,
                tol: *tol,
                expensive: cli.expensive,
                settings,
            };
            let outcomes = run_suite(&checks, n.clone(), &opts)?;
            let (mut ran, mut failed, mut skipped) = (0, 0, 0);
            for o in &outcomes {
                match o {
                    Outcome::Ran(r) => {
                        ran += 1;
                        failed += usize::from(!r.pass);
                        match cli.format {
                            Format::Text => writeln!(out, "{r}").map_err(io)?,
                            Format::Json => emit_json(out, &serde_json::to_value(r)?)?,
                        }
                    }
                    Outcome::Skipped { check, n, reason } => {
                        skipped += 1;
                        writeln!(err, "skipped {check} n={n}: {reason}").map_err(io)?;
                    }
                }
            }
            writeln!(err, "{ran} run, {failed} failed, {skipped} skipped (seed {seed})").map_err(io)?;
            return Ok(failed == 0);
        }
    }
    Ok(true)
}
