//! Command-line front end: `coeffs`, `table`, `errors`, `ln`, `beta`.
//!
//! Exit codes: 0 on success, 2 for usage errors (including rejected
//! parameter values), 3 when the quadrature reference fails to converge,
//! 1 for I/O failures.

pub mod format;
pub mod reports;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::series::Summation;

pub use reports::{
    beta_rows, cmd_beta, cmd_coeffs, cmd_errors, cmd_ln, cmd_table, error_rows, BetaPoint,
    BetaSpec, CoeffStyle, ConvergenceTable, ErrorPoint, ErrorsSpec, LnSpec, OutputFormat,
    TableSpec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "binseries",
    version,
    about = "Accelerated negative binomial series: coefficient rows, convergence tables and error curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print coefficient row c_{0j} .. c_{2j,j}.
    Coeffs {
        #[arg(long)]
        j: usize,
        #[arg(long, value_enum, default_value_t = CoeffFormatArg::Decimal)]
        format: CoeffFormatArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Grid of partial sums s^j(n) for (q+1)^r.
    Table {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_real)]
        r: f64,
        #[arg(long, value_parser = parse_real)]
        q: f64,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        j_max: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Relative truncation errors of s^0(n) and s^j(j) as CSV.
    Errors {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_real)]
        r: f64,
        /// Comma-separated ascending list of q values.
        #[arg(long, default_value = "0.1,0.5,0.9,1", value_parser = parse_list)]
        q: RealList,
        #[arg(long, default_value_t = 20)]
        j_max: usize,
        #[arg(long, default_value_t = 90)]
        n_max: usize,
        /// Evaluate in exact rational arithmetic (integer r only).
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// ln(1+q): exact, Taylor polynomial and accelerated expansion.
    Ln {
        #[command(flatten)]
        grid: GridArgs<QAxis>,
        /// Term budget shared by both expansions; must be odd.
        #[arg(long, default_value_t = 5)]
        terms: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Incomplete beta function B_x(a, b) by three expansions and quadrature.
    Beta {
        #[arg(long, default_value = "1/sqrt(2)", value_parser = parse_real)]
        a: f64,
        #[arg(long, default_value = "1/sqrt(3)", value_parser = parse_real)]
        b: f64,
        #[command(flatten)]
        grid: GridArgs<XAxis>,
        /// Term budget shared by all three approximations; must be odd.
        #[arg(long, default_value_t = 7)]
        terms: usize,
        /// Quadrature tolerance, within [1e-14, 1e-6].
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoeffFormatArg {
    Rational,
    Decimal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Table,
}

#[derive(Debug, Clone, Args)]
pub struct OutArg {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 6)]
    pub digits: usize,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Accumulate sums in double-double instead of plain ascending order.
    #[arg(long)]
    pub compensated: bool,
    #[command(flatten)]
    pub out: OutArg,
}

impl CommonArgs {
    fn format_or(&self, default: OutputFormat) -> OutputFormat {
        match self.format {
            Some(FormatArg::Csv) => OutputFormat::Csv,
            Some(FormatArg::Table) => OutputFormat::Table,
            None => default,
        }
    }

    fn summation(&self) -> Summation {
        if self.compensated {
            Summation::Compensated
        } else {
            Summation::Ascending
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealList(pub Vec<f64>);

/// Names and defaults of a sampling axis for [`GridArgs`].
pub trait Axis: Clone + Send + Sync + 'static {
    const LIST: &'static str;
    const FROM: &'static str;
    const TO: &'static str;
    const STEP: &'static str;
    const DEFAULT: (f64, f64, f64);
}

#[derive(Debug, Clone)]
pub struct QAxis;

impl Axis for QAxis {
    const LIST: &'static str = "q";
    const FROM: &'static str = "q-from";
    const TO: &'static str = "q-to";
    const STEP: &'static str = "q-step";
    const DEFAULT: (f64, f64, f64) = (0.0, 2.0, 0.05);
}

#[derive(Debug, Clone)]
pub struct XAxis;

impl Axis for XAxis {
    const LIST: &'static str = "x";
    const FROM: &'static str = "x-from";
    const TO: &'static str = "x-to";
    const STEP: &'static str = "x-step";
    const DEFAULT: (f64, f64, f64) = (0.0, 1.0, 0.01);
}

/// Either an explicit list or an evenly spaced range.
#[derive(Debug, Clone)]
pub struct GridArgs<A: Axis> {
    pub list: Option<RealList>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub step: Option<f64>,
    _axis: std::marker::PhantomData<A>,
}

impl<A: Axis> clap::FromArgMatches for GridArgs<A> {
    fn from_arg_matches(m: &clap::ArgMatches) -> Result<Self, clap::Error> {
        Ok(GridArgs {
            list: m.get_one::<RealList>(A::LIST).cloned(),
            from: m.get_one::<f64>(A::FROM).copied(),
            to: m.get_one::<f64>(A::TO).copied(),
            step: m.get_one::<f64>(A::STEP).copied(),
            _axis: std::marker::PhantomData,
        })
    }

    fn update_from_arg_matches(&mut self, m: &clap::ArgMatches) -> Result<(), clap::Error> {
        *self = Self::from_arg_matches(m)?;
        Ok(())
    }
}

impl<A: Axis> Args for GridArgs<A> {
    fn augment_args(cmd: clap::Command) -> clap::Command {
        use clap::Arg;
        cmd.arg(
            Arg::new(A::LIST)
                .long(A::LIST)
                .value_parser(parse_list)
                .conflicts_with_all([A::FROM, A::TO, A::STEP])
                .help("Comma-separated ascending list of sample points"),
        )
        .arg(
            Arg::new(A::FROM)
                .long(A::FROM)
                .value_parser(parse_real)
                .help(format!("First sample point [default: {}]", A::DEFAULT.0)),
        )
        .arg(
            Arg::new(A::TO)
                .long(A::TO)
                .value_parser(parse_real)
                .help(format!("Last sample point [default: {}]", A::DEFAULT.1)),
        )
        .arg(
            Arg::new(A::STEP)
                .long(A::STEP)
                .value_parser(parse_real)
                .help(format!("Spacing [default: {}]", A::DEFAULT.2)),
        )
    }

    fn augment_args_for_update(cmd: clap::Command) -> clap::Command {
        Self::augment_args(cmd)
    }
}

impl<A: Axis> GridArgs<A> {
    pub fn points(&self) -> Result<Vec<f64>, Error> {
        if let Some(list) = &self.list {
            return Ok(list.0.clone());
        }
        let (d_from, d_to, d_step) = A::DEFAULT;
        linspace(
            self.from.unwrap_or(d_from),
            self.to.unwrap_or(d_to),
            self.step.unwrap_or(d_step),
        )
    }
}

/// `from, from + step, ...` up to `to` inclusive, each point snapped to 12
/// decimals so printed grids read `0.15` rather than `0.15000000000000002`.
pub fn linspace(from: f64, to: f64, step: f64) -> Result<Vec<f64>, Error> {
    if step.is_nan() || step <= 0.0 || !from.is_finite() || !to.is_finite() || to < from {
        return Err(Error::Domain(format!(
            "invalid range from={from} to={to} step={step}"
        )));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| ((from + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

/// Real number, optionally written as `[c*]sqrt(v)` or `[c/]sqrt(v)`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if let Ok(v) = s.parse::<f64>() {
        return Ok(v);
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim()),
        None => (1.0, s),
    };
    let root = |t: &str| -> Result<f64, String> {
        let inner = t
            .trim()
            .strip_prefix("sqrt(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| format!("cannot parse '{s}' as a number"))?;
        let v: f64 = inner
            .trim()
            .parse()
            .map_err(|_| format!("cannot parse '{inner}' inside sqrt"))?;
        Ok(v.sqrt())
    };
    let number = |t: &str| -> Result<f64, String> {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("cannot parse '{s}' as a number"))
    };
    let value = if let Some((c, r)) = body.split_once('*') {
        number(c)? * root(r)?
    } else if let Some((c, r)) = body.split_once('/') {
        number(c)? / root(r)?
    } else {
        root(body)?
    };
    Ok(sign * value)
}

pub fn parse_list(s: &str) -> Result<RealList, String> {
    let values = s
        .split(',')
        .map(parse_real)
        .collect::<Result<Vec<_>, _>>()?;
    reports::check_grid("list", &values).map_err(|e| e.to_string())?;
    Ok(RealList(values))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::QuadratureFailed { .. } => EXIT_ORACLE,
        _ => EXIT_USAGE,
    }
}

/// Produces the report text for a parsed command line, plus its destination.
pub fn execute(cli: &Cli) -> Result<(String, Option<PathBuf>), Error> {
    match &cli.command {
        Command::Coeffs { j, format, out } => {
            let style = match format {
                CoeffFormatArg::Rational => CoeffStyle::Rational,
                CoeffFormatArg::Decimal => CoeffStyle::Decimal,
            };
            Ok((cmd_coeffs(*j, style)?, out.out.clone()))
        }
        Command::Table {
            r,
            q,
            n_max,
            j_max,
            common,
        } => {
            let spec = TableSpec {
                r: *r,
                q: *q,
                n_max: *n_max,
                j_max: *j_max,
                digits: common.digits,
                format: common.format_or(OutputFormat::Table),
                summation: common.summation(),
            };
            Ok((cmd_table(&spec)?, common.out.out.clone()))
        }
        Command::Errors {
            r,
            q,
            j_max,
            n_max,
            exact,
            common,
        } => {
            let spec = ErrorsSpec {
                r: *r,
                qs: q.0.clone(),
                j_max: *j_max,
                n_max: *n_max,
                digits: common.digits,
                exact: *exact,
                summation: common.summation(),
                format: common.format_or(OutputFormat::Csv),
            };
            Ok((cmd_errors(&spec)?, common.out.out.clone()))
        }
        Command::Ln {
            grid,
            terms,
            common,
        } => {
            let spec = LnSpec {
                qs: grid.points()?,
                terms: *terms,
                digits: common.digits,
                format: common.format_or(OutputFormat::Csv),
            };
            Ok((cmd_ln(&spec)?, common.out.out.clone()))
        }
        Command::Beta {
            a,
            b,
            grid,
            terms,
            tol,
            common,
        } => {
            let spec = BetaSpec {
                a: *a,
                b: *b,
                xs: grid.points()?,
                terms: *terms,
                tol: *tol,
                digits: common.digits,
                format: common.format_or(OutputFormat::Csv),
            };
            Ok((cmd_beta(&spec)?, common.out.out.clone()))
        }
    }
}

/// Full program: parse, run, write, and map failures to exit codes.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let (text, out) = match execute(&cli) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let written = match out {
        Some(path) => std::fs::write(&path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_IO
        }
    }
}
