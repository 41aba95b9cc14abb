//! Binomial-series terms, plain and level-`j` partial sums, and the
//! accelerated sum `s^j(j)`.
//!
//! Everything is expressed for `(q+1)^r`; a general `(x+y)^r` is reduced to
//! that case through `q = x/y` in [`binomial_power`].

mod compensated;
pub mod exact;

use crate::coeff::CoefficientTable;
use crate::error::{Error, Result};

use compensated::DoubleDouble;

/// Accumulation strategy for sums of series terms.
///
/// `Ascending` is plain left-to-right `f64` addition in increasing `k` and is
/// what every table and golden file uses. `Compensated` carries a
/// double-double accumulator (with error-free products for the coefficient
/// dot product), so the result is the correctly rounded value of the exact
/// combination of the same `f64` terms up to a few ulp.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Summation {
    #[default]
    Ascending,
    Compensated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Plain truncation `s^0(n)`.
    Level0,
    /// Transformed sum `s^j(j)`.
    Accelerated,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Level0 => "level0",
            Method::Accelerated => "accelerated",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    /// Number of series terms `a_k` consumed: `n+1` or `2j+1`.
    pub terms_used: usize,
    pub method: Method,
    pub relative_truncation_error: Option<f64>,
    /// Set when `q > 1` or `r >= 0`, outside the region the transformation
    /// is meant for. The value is still computed.
    pub out_of_scope: bool,
}

fn out_of_scope(q: f64, r: f64) -> bool {
    q > 1.0 || r >= 0.0
}

/// `r (r-1) ... (r-k+1)`, with the empty product for `k = 0`.
pub fn falling_factorial(r: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (r - i as f64))
}

/// Iterator over the terms `a_k = (r)_k / k! · q^k` of `(q+1)^r`.
///
/// Terms are produced by the ratio `a_k = a_{k-1} (r-k+1) q / k`, so
/// factorials never overflow. For integer `r` and `q = 1` every term is an
/// exactly representable integer while it stays below `2^53`.
#[derive(Debug, Clone)]
pub struct Terms {
    q: f64,
    r: f64,
    k: usize,
    current: f64,
}

impl Iterator for Terms {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.current;
        self.k += 1;
        let k = self.k as f64;
        self.current = self.current * (self.r - k + 1.0) * self.q / k;
        Some(out)
    }
}

pub fn terms(q: f64, r: f64) -> Terms {
    Terms {
        q,
        r,
        k: 0,
        current: 1.0,
    }
}

/// Single term `a_k`; built incrementally like [`terms`].
pub fn term(q: f64, r: f64, k: usize) -> f64 {
    terms(q, r).nth(k).unwrap_or(0.0)
}

/// `s^0(n) = a_0 + ... + a_n`, summed in increasing `k`.
pub fn partial_sum_level0(q: f64, r: f64, n: usize) -> f64 {
    partial_sum_level0_with(q, r, n, Summation::Ascending)
}

pub fn partial_sum_level0_with(q: f64, r: f64, n: usize, summation: Summation) -> f64 {
    let it = terms(q, r).take(n + 1);
    match summation {
        Summation::Ascending => it.fold(0.0, |acc, a| acc + a),
        Summation::Compensated => it.fold(DoubleDouble::ZERO, |acc, a| acc + a).to_f64(),
    }
}

/// Plain truncation packaged like [`accelerated_sum`], with its error
/// against `(q+1)^r`.
pub fn level0_sum(q: f64, r: f64, n: usize, summation: Summation) -> EvalResult {
    let value = partial_sum_level0_with(q, r, n, summation);
    EvalResult {
        value,
        terms_used: n + 1,
        method: Method::Level0,
        relative_truncation_error: Some(relative_truncation_error(value, q, r)),
        out_of_scope: out_of_scope(q, r),
    }
}

/// `|approx - (q+1)^r| / (q+1)^r`, with `powf` as the reference.
pub fn relative_truncation_error(approx: f64, q: f64, r: f64) -> f64 {
    let exact = (q + 1.0).powf(r);
    (approx - exact).abs() / exact
}

/// The two-dimensional table of `s^j(n)`.
///
/// Level 0 is stored for `n = 0 ..= n_max`; level `j` for
/// `n = j ..= n_max - j`, since each stencil step consumes one neighbour on
/// either side.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSumGrid {
    q: f64,
    r: f64,
    n_max: usize,
    // levels[j][i] holds s^j(j + i)
    levels: Vec<Vec<f64>>,
}

impl PartialSumGrid {
    pub fn build(q: f64, r: f64, n_max: usize, j_max: usize) -> Result<Self> {
        Self::build_with(q, r, n_max, j_max, Summation::Ascending)
    }

    pub fn build_with(
        q: f64,
        r: f64,
        n_max: usize,
        j_max: usize,
        summation: Summation,
    ) -> Result<Self> {
        if n_max < 2 * j_max {
            return Err(Error::GridTooShort {
                n_max,
                j_max,
                needed: 2 * j_max,
            });
        }
        let levels = match summation {
            Summation::Ascending => {
                let mut acc = 0.0;
                let level0: Vec<f64> = terms(q, r)
                    .take(n_max + 1)
                    .map(|a| {
                        acc += a;
                        acc
                    })
                    .collect();
                stencil_levels(level0, j_max, |c, lo, hi| {
                    0.5 * c + 0.25 * lo + 0.25 * hi
                })
            }
            Summation::Compensated => {
                let mut acc = DoubleDouble::ZERO;
                let level0: Vec<DoubleDouble> = terms(q, r)
                    .take(n_max + 1)
                    .map(|a| {
                        acc = acc + a;
                        acc
                    })
                    .collect();
                stencil_levels(level0, j_max, |c, lo, hi| {
                    c.scale_pow2(0.5) + lo.scale_pow2(0.25) + hi.scale_pow2(0.25)
                })
                .into_iter()
                .map(|row| row.into_iter().map(DoubleDouble::to_f64).collect())
                .collect()
            }
        };
        Ok(PartialSumGrid {
            q,
            r,
            n_max,
            levels,
        })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn j_max(&self) -> usize {
        self.levels.len() - 1
    }

    /// `s^j(n)` if it lies inside the computed trapezoid.
    pub fn get(&self, j: usize, n: usize) -> Option<f64> {
        if n < j {
            return None;
        }
        self.levels.get(j)?.get(n - j).copied()
    }

    /// Range of `n` stored at level `j` (empty past `j_max`).
    pub fn level_range(&self, j: usize) -> std::ops::RangeInclusive<usize> {
        match self.levels.get(j) {
            Some(row) if !row.is_empty() => j..=j + row.len() - 1,
            #[allow(clippy::reversed_empty_ranges)]
            _ => 1..=0,
        }
    }

    /// The accelerated sums `s^j(j)`, `j = 0 ..= j_max`.
    pub fn diagonal(&self) -> Vec<f64> {
        self.levels.iter().map(|row| row[0]).collect()
    }
}

fn stencil_levels<T: Copy>(
    level0: Vec<T>,
    j_max: usize,
    stencil: impl Fn(T, T, T) -> T,
) -> Vec<Vec<T>> {
    let mut levels = Vec::with_capacity(j_max + 1);
    levels.push(level0);
    for _ in 1..=j_max {
        let prev = levels.last().expect("level 0 present");
        // prev[i] is s^{j-1}(j-1+i); s^j(j+i) needs prev[i], prev[i+1], prev[i+2]
        let next: Vec<T> = prev
            .windows(3)
            .map(|w| stencil(w[1], w[0], w[2]))
            .collect();
        levels.push(next);
    }
    levels
}

pub fn build_grid(q: f64, r: f64, n_max: usize, j_max: usize) -> Result<PartialSumGrid> {
    PartialSumGrid::build(q, r, n_max, j_max)
}

/// `s^j(j) = Σ_{k=0}^{2j} c_{kj} a_k` using row `j` of `table`.
pub fn accelerated_sum(q: f64, r: f64, j: usize, table: &CoefficientTable) -> Result<EvalResult> {
    accelerated_sum_with(q, r, j, table, Summation::Ascending)
}

pub fn accelerated_sum_with(
    q: f64,
    r: f64,
    j: usize,
    table: &CoefficientTable,
    summation: Summation,
) -> Result<EvalResult> {
    let row = table.float_row(j)?;
    let products = row.iter().zip(terms(q, r));
    let value = match summation {
        Summation::Ascending => products.fold(0.0, |acc, (c, a)| acc + c * a),
        Summation::Compensated => products
            .fold(DoubleDouble::ZERO, |acc, (&c, a)| {
                acc + DoubleDouble::product(c, a)
            })
            .to_f64(),
    };
    Ok(EvalResult {
        value,
        terms_used: row.len(),
        method: Method::Accelerated,
        relative_truncation_error: Some(relative_truncation_error(value, q, r)),
        out_of_scope: out_of_scope(q, r),
    })
}

/// `(x, y, r)` for `(x+y)^r`, with `x` and `y` of the same sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomialInput {
    x: f64,
    y: f64,
    r: f64,
}

impl BinomialInput {
    pub fn new(x: f64, y: f64, r: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && r.is_finite()) {
            return Err(Error::Domain(format!(
                "non-finite binomial input x={x}, y={y}, r={r}"
            )));
        }
        if y == 0.0 {
            return Err(Error::Domain("y must be nonzero".into()));
        }
        if x / y < 0.0 {
            return Err(Error::Domain(format!(
                "x={x} and y={y} have opposite signs"
            )));
        }
        if y < 0.0 && r.fract() != 0.0 {
            return Err(Error::Domain(format!(
                "y={y} < 0 with non-integer exponent r={r}"
            )));
        }
        Ok(BinomialInput { x, y, r })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn q(&self) -> f64 {
        self.x / self.y
    }
}

/// `(x+y)^r ≈ y^r · s^j(j)` evaluated at `q = x/y`.
pub fn binomial_power(
    input: &BinomialInput,
    j: usize,
    table: &CoefficientTable,
) -> Result<EvalResult> {
    let scale = input.y.powf(input.r);
    let reduced = accelerated_sum(input.q(), input.r, j, table)?;
    Ok(EvalResult {
        value: scale * reduced.value,
        ..reduced
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(j: usize) -> CoefficientTable {
        CoefficientTable::build(j).unwrap()
    }

    fn round6(x: f64) -> String {
        format!("{x:.6}")
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(-1.0, 3), -6.0);
        assert_eq!(falling_factorial(5.5, 0), 1.0);
        assert_eq!(falling_factorial(-0.5, 2), 0.75);
    }

    #[test]
    fn term_examples() {
        assert!((term(0.1, -1.0, 1) + 0.1).abs() < 1e-16);
        for k in 0..12 {
            assert_eq!(term(1.0, -1.0, k), if k % 2 == 0 { 1.0 } else { -1.0 });
        }
        assert!((term(0.9, -1.0, 2) - 0.81).abs() < 1e-15);
        assert_eq!(term(0.3, -2.5, 0), 1.0);
    }

    #[test]
    fn terms_match_falling_factorial() {
        let mut fact = 1.0;
        for k in 0..15 {
            if k > 0 {
                fact *= k as f64;
            }
            let direct = falling_factorial(-2.7, k) / fact * 0.6f64.powi(k as i32);
            let t = term(0.6, -2.7, k);
            assert!((t - direct).abs() <= 1e-14 * direct.abs(), "k={k}");
        }
    }

    #[test]
    fn level0_examples() {
        assert_eq!(round6(partial_sum_level0(0.5, -1.0, 1)), "0.500000");
        assert_eq!(round6(partial_sum_level0(0.9, -1.0, 15)), "0.428788");
        assert_eq!(partial_sum_level0(0.37, -4.2, 0), 1.0);
        for n in 0..20 {
            let expect = if n % 2 == 0 { 1.0 } else { 0.0 };
            assert_eq!(partial_sum_level0(1.0, -1.0, n), expect);
        }
    }

    #[test]
    fn grid_diagonals() {
        let g = build_grid(0.1, -1.0, 6, 3).unwrap();
        assert_eq!(round6(g.get(1, 1).unwrap()), "0.927500");
        assert_eq!(round6(g.get(2, 2).unwrap()), "0.912819");
        assert_eq!(round6(g.get(3, 3).unwrap()), "0.909846");

        let g = build_grid(0.5, -1.0, 10, 5).unwrap();
        assert_eq!(round6(g.get(5, 5).unwrap()), "0.666667");

        let g = build_grid(1.0, -1.0, 12, 4).unwrap();
        for j in 1..=4 {
            for n in g.level_range(j) {
                assert_eq!(g.get(j, n), Some(0.5));
            }
        }
    }

    #[test]
    fn grid_trapezoid() {
        let g = build_grid(0.3, -2.0, 6, 3).unwrap();
        assert_eq!(g.level_range(0), 0..=6);
        assert_eq!(g.level_range(1), 1..=5);
        assert_eq!(g.level_range(3), 3..=3);
        assert!(g.level_range(4).is_empty());
        assert_eq!(g.get(3, 4), None);
        assert_eq!(g.get(2, 1), None);
        assert_eq!(g.get(0, 7), None);
        assert_eq!(g.j_max(), 3);
        assert_eq!(g.diagonal().len(), 4);
    }

    #[test]
    fn grid_too_short() {
        assert_eq!(
            build_grid(0.5, -1.0, 5, 3).unwrap_err(),
            Error::GridTooShort {
                n_max: 5,
                j_max: 3,
                needed: 6
            }
        );
    }

    #[test]
    fn accelerated_examples() {
        let t = table(5);
        let res = accelerated_sum(0.9, -1.0, 3, &t).unwrap();
        assert_eq!(round6(res.value), "0.526316");
        assert_eq!(res.terms_used, 7);
        assert_eq!(res.method, Method::Accelerated);
        assert!(!res.out_of_scope);

        assert_eq!(accelerated_sum(1.0, -1.0, 1, &t).unwrap().value, 0.5);
        let r10 = accelerated_sum(1.0, -10.0, 5, &t).unwrap();
        assert_eq!(r10.value, 0.0009765625);
        assert_eq!(r10.relative_truncation_error, Some(0.0));
    }

    #[test]
    fn accelerated_beyond_table() {
        let t = table(2);
        assert_eq!(
            accelerated_sum(0.5, -1.0, 3, &t).unwrap_err(),
            Error::LevelBeyondTable { level: 3, max: 2 }
        );
    }

    #[test]
    fn out_of_scope_flag() {
        let t = table(2);
        assert!(accelerated_sum(1.5, -1.0, 2, &t).unwrap().out_of_scope);
        assert!(accelerated_sum(0.5, 0.5, 2, &t).unwrap().out_of_scope);
        assert!(!accelerated_sum(1.0, -0.5, 2, &t).unwrap().out_of_scope);
    }

    #[test]
    fn binomial_power_examples() {
        let t = table(5);
        for j in 0..=5 {
            let v = binomial_power(&BinomialInput::new(0.0, 2.0, -1.0).unwrap(), j, &t).unwrap();
            assert_eq!(v.value, 0.5);
        }
        let v = binomial_power(&BinomialInput::new(1.0, 2.0, -1.0).unwrap(), 5, &t).unwrap();
        assert_eq!(round6(v.value), "0.333333");
        let v = binomial_power(&BinomialInput::new(3.0, 3.0, -1.0).unwrap(), 1, &t).unwrap();
        assert!((v.value - 1.0 / 6.0).abs() < 1e-16);
        assert_eq!(round6(v.value), "0.166667");
    }

    #[test]
    fn binomial_power_negative_pair() {
        let t = table(6);
        let v = binomial_power(&BinomialInput::new(-1.0, -2.0, -2.0).unwrap(), 6, &t).unwrap();
        assert!((v.value - 1.0 / 9.0).abs() < 1e-6);
    }

    #[test]
    fn binomial_input_domain() {
        assert!(BinomialInput::new(1.0, 0.0, -1.0).is_err());
        assert!(BinomialInput::new(1.0, -2.0, -1.0).is_err());
        assert!(BinomialInput::new(-1.0, -2.0, -0.5).is_err());
        assert!(BinomialInput::new(f64::NAN, 2.0, -1.0).is_err());
        assert!(BinomialInput::new(-1.0, -2.0, -3.0).is_ok());
    }

    #[test]
    fn truncation_error_examples() {
        assert_eq!(relative_truncation_error(1.1f64.powf(-1.0), 0.1, -1.0), 0.0);
        let e = relative_truncation_error(0.9275, 0.1, -1.0);
        assert!((e - 0.02025).abs() < 1e-12, "{e}");
        let e = relative_truncation_error(partial_sum_level0(0.9, -1.0, 90), 0.9, -1.0);
        // geometric remainder: the relative error of s^0(n) is q^(n+1)
        assert!((e - 0.9f64.powi(91)).abs() < 1e-12, "{e}");
        assert!((e - 6.9e-5).abs() < 0.1e-5, "{e}");
    }

    #[test]
    fn compensated_matches_ascending_when_well_conditioned() {
        let t = table(6);
        let a = accelerated_sum(0.3, -0.5, 6, &t).unwrap().value;
        let c = accelerated_sum_with(0.3, -0.5, 6, &t, Summation::Compensated)
            .unwrap()
            .value;
        assert!((a - c).abs() <= 4.0 * f64::EPSILON * c);
        let g = PartialSumGrid::build_with(0.3, -0.5, 12, 6, Summation::Compensated).unwrap();
        assert!((g.get(6, 6).unwrap() - c).abs() <= 2.0 * f64::EPSILON * c);
        assert!(
            (partial_sum_level0_with(0.3, -0.5, 20, Summation::Compensated)
                - partial_sum_level0(0.3, -0.5, 20))
            .abs()
                < 1e-15
        );
    }

    #[test]
    fn level0_sum_reports_error() {
        let res = level0_sum(0.5, -1.0, 20, Summation::Ascending);
        assert_eq!(res.terms_used, 21);
        assert_eq!(res.method, Method::Level0);
        assert!(res.relative_truncation_error.unwrap() < 1e-6);
    }
}
