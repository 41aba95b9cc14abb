//! The report generators behind each subcommand. Every function returns the
//! complete output text so it can be checked without spawning the binary.

use num_traits::{Signed, ToPrimitive};

use crate::coeff::{CoefficientTable, Rational};
use crate::error::{Error, Result};
use crate::series::{self, exact, Method, PartialSumGrid, Summation};
use crate::special::{self, BetaParams, CfDepth};

use super::format::{align, csv, fixed, scientific};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoeffStyle {
    Rational,
    #[default]
    Decimal,
}

fn render(rows: &[Vec<String>], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => csv(rows),
        OutputFormat::Table => align(rows),
    }
}

pub fn check_digits(digits: usize) -> Result<()> {
    if !(1..=15).contains(&digits) {
        return Err(Error::Domain(format!("digits must be in 1..=15, got {digits}")));
    }
    Ok(())
}

pub fn check_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Domain(format!("{name} grid is empty")));
    }
    if grid.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain(format!("{name} grid has non-finite values")));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain(format!("{name} grid must be strictly ascending")));
    }
    Ok(())
}

/// Row `j` of the coefficient table, comma separated.
pub fn cmd_coeffs(j: usize, style: CoeffStyle) -> Result<String> {
    let table = CoefficientTable::build(j)?;
    let row = table.row(j)?;
    let cells: Vec<String> = match style {
        CoeffStyle::Rational => row.iter().map(Rational::to_string).collect(),
        CoeffStyle::Decimal => row.iter().map(|c| c.to_f64().to_string()).collect(),
    };
    Ok(format!("{}\n", cells.join(", ")))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableSpec {
    pub r: f64,
    pub q: f64,
    pub n_max: usize,
    pub j_max: usize,
    pub digits: usize,
    pub format: OutputFormat,
    pub summation: Summation,
}

/// Rows `n = 0 ..= n_max` of the `s^j(n)` grid for `j = 0 ..= j_max`.
///
/// Entry `(n, j)` is shown whenever `n >= j`; enough extra level-0 terms are
/// summed internally that every such entry exists.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub exact: f64,
    pub n_max: usize,
    pub j_max: usize,
    grid: PartialSumGrid,
}

impl ConvergenceTable {
    pub fn build(r: f64, q: f64, n_max: usize, j_max: usize, summation: Summation) -> Result<Self> {
        let grid = PartialSumGrid::build_with(q, r, n_max + j_max, j_max, summation)?;
        Ok(ConvergenceTable {
            exact: (q + 1.0).powf(r),
            n_max,
            j_max,
            grid,
        })
    }

    pub fn get(&self, n: usize, j: usize) -> Option<f64> {
        if n > self.n_max || j > self.j_max {
            return None;
        }
        self.grid.get(j, n)
    }

    /// First `n` where `s^0(n)` matches `(q+1)^r` at `digits` decimals.
    pub fn level0_converged(&self, digits: usize) -> Option<usize> {
        let target = fixed(self.exact, digits);
        (0..=self.n_max).find(|&n| self.get(n, 0).map(|v| fixed(v, digits)) == Some(target.clone()))
    }

    /// First `j` where the diagonal `s^j(j)` matches at `digits` decimals.
    pub fn diagonal_converged(&self, digits: usize) -> Option<usize> {
        let target = fixed(self.exact, digits);
        (0..=self.j_max.min(self.n_max))
            .find(|&j| self.get(j, j).map(|v| fixed(v, digits)) == Some(target.clone()))
    }

    fn marks(&self, n: usize, digits: usize) -> Vec<usize> {
        let mut out = Vec::new();
        if self.level0_converged(digits) == Some(n) {
            out.push(0);
        }
        if let Some(j) = self.diagonal_converged(digits) {
            if j == n && j != 0 {
                out.push(j);
            }
        }
        out
    }
}

pub fn cmd_table(spec: &TableSpec) -> Result<String> {
    check_digits(spec.digits)?;
    let table = ConvergenceTable::build(spec.r, spec.q, spec.n_max, spec.j_max, spec.summation)?;
    let digits = spec.digits;

    match spec.format {
        OutputFormat::Csv => {
            let mut rows = Vec::with_capacity(spec.n_max + 2);
            let mut header = vec!["n".to_string()];
            header.extend((0..=spec.j_max).map(|j| format!("s{j}")));
            header.push("first_converged".to_string());
            rows.push(header);
            for n in 0..=spec.n_max {
                let mut row = vec![n.to_string()];
                row.extend(
                    (0..=spec.j_max).map(|j| table.get(n, j).map(|v| fixed(v, digits)).unwrap_or_default()),
                );
                row.push(
                    table
                        .marks(n, digits)
                        .iter()
                        .map(|j| format!("s{j}"))
                        .collect::<Vec<_>>()
                        .join(";"),
                );
                rows.push(row);
            }
            Ok(csv(&rows))
        }
        OutputFormat::Table => {
            let cell = |n: usize, j: usize| table.get(n, j).map(|v| fixed(v, digits)).unwrap_or_default();
            let width = (0..=spec.n_max)
                .flat_map(|n| (0..=spec.j_max).map(move |j| (n, j)))
                .map(|(n, j)| cell(n, j).len())
                .chain((0..=spec.j_max).map(|j| format!("S^{j}(n)").len()))
                .max()
                .unwrap_or(0);
            let mut out = format!(
                "# r = {}, q = {}, (q+1)^r = {}; * marks first {}-decimal agreement\n",
                spec.r,
                spec.q,
                fixed(table.exact, digits),
                digits
            );
            let mut header = format!("{:>4}", "n");
            for j in 0..=spec.j_max {
                header.push_str(&format!("  {:>width$} ", format!("S^{j}(n)")));
            }
            out.push_str(header.trim_end());
            out.push('\n');
            for n in 0..=spec.n_max {
                let marks = table.marks(n, digits);
                let mut line = format!("{n:>4}");
                for j in 0..=spec.j_max {
                    let cell = cell(n, j);
                    let mark = if marks.contains(&j) { '*' } else { ' ' };
                    line.push_str(&format!("  {cell:>width$}{mark}"));
                }
                out.push_str(line.trim_end());
                out.push('\n');
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorsSpec {
    pub r: f64,
    pub qs: Vec<f64>,
    pub j_max: usize,
    pub n_max: usize,
    pub digits: usize,
    pub exact: bool,
    pub summation: Summation,
    pub format: OutputFormat,
}

/// One row of [`error_rows`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorPoint {
    pub q: f64,
    pub index: usize,
    pub method: Method,
    pub relative_error: f64,
}

fn integer_exponent(r: f64) -> Result<i64> {
    if r.fract() != 0.0 || r.abs() > i32::MAX as f64 {
        return Err(Error::Domain(format!("exact mode needs an integer exponent, got r={r}")));
    }
    Ok(r as i64)
}

/// Relative truncation errors of `s^0(n)` and `s^j(j)` for every `q`.
pub fn error_rows(spec: &ErrorsSpec) -> Result<Vec<ErrorPoint>> {
    check_grid("q", &spec.qs)?;
    if spec.qs.iter().any(|&q| q < 0.0) {
        return Err(Error::Domain("q must be nonnegative".into()));
    }
    let table = CoefficientTable::build(spec.j_max)?;
    let exact_r = if spec.exact {
        Some(integer_exponent(spec.r)?)
    } else {
        None
    };

    let mut out = Vec::new();
    for &q in &spec.qs {
        match exact_r {
            Some(r) => {
                let qr = exact::rational_from_f64(q)?;
                let reference = exact::reference_exact(&qr, r)?;
                let rel = |s: num_rational::BigRational| {
                    ((s - &reference).abs() / &reference).to_f64().unwrap_or(f64::NAN)
                };
                for n in 0..=spec.n_max {
                    let s = exact::partial_sum_level0_exact(&qr, r, n);
                    out.push(ErrorPoint { q, index: n, method: Method::Level0, relative_error: rel(s) });
                }
                for j in 0..=spec.j_max {
                    let s = exact::accelerated_sum_exact(&qr, r, j, &table)?;
                    out.push(ErrorPoint { q, index: j, method: Method::Accelerated, relative_error: rel(s) });
                }
            }
            None => {
                for n in 0..=spec.n_max {
                    let res = series::level0_sum(q, spec.r, n, spec.summation);
                    out.push(ErrorPoint {
                        q,
                        index: n,
                        method: Method::Level0,
                        relative_error: res.relative_truncation_error.unwrap_or(f64::NAN),
                    });
                }
                for j in 0..=spec.j_max {
                    let res = series::accelerated_sum_with(q, spec.r, j, &table, spec.summation)?;
                    out.push(ErrorPoint {
                        q,
                        index: j,
                        method: Method::Accelerated,
                        relative_error: res.relative_truncation_error.unwrap_or(f64::NAN),
                    });
                }
            }
        }
    }
    Ok(out)
}

pub fn cmd_errors(spec: &ErrorsSpec) -> Result<String> {
    check_digits(spec.digits)?;
    let points = error_rows(spec)?;
    let mut rows = vec![vec![
        "q".to_string(),
        "index".to_string(),
        "method".to_string(),
        "relative_error".to_string(),
    ]];
    rows.extend(points.iter().map(|p| {
        vec![
            p.q.to_string(),
            p.index.to_string(),
            p.method.as_str().to_string(),
            scientific(p.relative_error, spec.digits),
        ]
    }));
    Ok(render(&rows, spec.format))
}

fn odd_terms(terms: usize) -> Result<usize> {
    if terms.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "term budget must be odd (2j+1) for the accelerated form, got {terms}"
        )));
    }
    Ok((terms - 1) / 2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LnSpec {
    pub qs: Vec<f64>,
    pub terms: usize,
    pub digits: usize,
    pub format: OutputFormat,
}

pub fn cmd_ln(spec: &LnSpec) -> Result<String> {
    check_digits(spec.digits)?;
    check_grid("q", &spec.qs)?;
    if spec.qs.iter().any(|&q| q < 0.0) {
        return Err(Error::Domain("q must be nonnegative".into()));
    }
    let j = odd_terms(spec.terms)?;
    let table = CoefficientTable::build(j)?;
    let d = spec.digits;
    let mut rows = vec![["q", "exact", "taylor", "accelerated"].map(String::from).to_vec()];
    for &q in &spec.qs {
        let taylor = special::ln1p_taylor(q, spec.terms - 1).value;
        let accelerated = special::ln1p_accelerated(q, j, &table)?.value;
        rows.push(vec![q.to_string(), fixed(q.ln_1p(), d), fixed(taylor, d), fixed(accelerated, d)]);
    }
    Ok(render(&rows, spec.format))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BetaSpec {
    pub a: f64,
    pub b: f64,
    pub xs: Vec<f64>,
    pub terms: usize,
    pub tol: f64,
    pub digits: usize,
    pub format: OutputFormat,
}

/// One row of [`beta_rows`]. `None` marks a continued fraction that hit a
/// zero denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaPoint {
    pub x: f64,
    pub oracle: f64,
    pub binomial: f64,
    pub continued_fraction: Option<f64>,
    pub accelerated: f64,
}

fn relative_to(approx: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        approx.abs()
    } else {
        (approx - reference).abs() / reference.abs()
    }
}

impl BetaPoint {
    pub fn err_binomial(&self) -> f64 {
        relative_to(self.binomial, self.oracle)
    }

    pub fn err_cf(&self) -> Option<f64> {
        self.continued_fraction.map(|v| relative_to(v, self.oracle))
    }

    pub fn err_accelerated(&self) -> f64 {
        relative_to(self.accelerated, self.oracle)
    }
}

/// All three fixed-budget approximations and the quadrature reference.
///
/// A budget of `terms` means `n = terms - 1` for the binomial expansion,
/// `d_1 ..= d_terms` for the continued fraction and `j = (terms - 1) / 2`
/// for the accelerated form.
pub fn beta_rows(spec: &BetaSpec) -> Result<Vec<BetaPoint>> {
    check_grid("x", &spec.xs)?;
    let j = odd_terms(spec.terms)?;
    let table = CoefficientTable::build(j)?;
    let depth = CfDepth::new(spec.terms)?;
    spec.xs
        .iter()
        .map(|&x| {
            let p = BetaParams::new(spec.a, spec.b, x)?;
            let continued_fraction = match special::beta_continued_fraction(&p, depth) {
                Ok(v) => Some(v.value),
                Err(Error::DegenerateContinuedFraction { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(BetaPoint {
                x,
                oracle: special::beta_quadrature_oracle(&p, spec.tol)?,
                binomial: special::beta_binomial_expansion(&p, spec.terms - 1).value,
                continued_fraction,
                accelerated: special::beta_accelerated(&p, j, &table)?.value,
            })
        })
        .collect()
}

pub fn cmd_beta(spec: &BetaSpec) -> Result<String> {
    check_digits(spec.digits)?;
    let points = beta_rows(spec)?;
    let d = spec.digits;
    let mut rows = vec![[
        "x",
        "oracle",
        "binomial",
        "continued_fraction",
        "accelerated",
        "err_binomial",
        "err_cf",
        "err_accelerated",
    ]
    .map(String::from)
    .to_vec()];
    for p in &points {
        rows.push(vec![
            p.x.to_string(),
            fixed(p.oracle, d),
            fixed(p.binomial, d),
            p.continued_fraction.map(|v| fixed(v, d)).unwrap_or_else(|| "nan".into()),
            fixed(p.accelerated, d),
            scientific(p.err_binomial(), d),
            p.err_cf().map(|e| scientific(e, d)).unwrap_or_else(|| "nan".into()),
            scientific(p.err_accelerated(), d),
        ]);
    }
    Ok(render(&rows, spec.format))
}
