//! Incomplete beta function `B_x(a, b) = ∫_0^x t^{a-1} (1-t)^{b-1} dt`.
//!
//! Three fixed-budget approximations are provided: the truncated binomial
//! expansion of `(1-t)^{b-1}`, the classical continued fraction evaluated at
//! a fixed depth, and the accelerated expansion of `(1+u)^{-a-b}` in the
//! variable `u = x / (1-x)`. [`beta_quadrature_oracle`] gives an independent
//! reference by direct integration.

use crate::coeff::CoefficientTable;
use crate::error::{Error, Result};

use super::quadrature::{tanh_sinh, TanhSinhOptions};
use super::Approx;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaParams {
    a: f64,
    b: f64,
    x: f64,
}

impl BetaParams {
    pub fn new(a: f64, b: f64, x: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) || !(b > 0.0 && b.is_finite()) {
            return Err(Error::Domain(format!(
                "beta parameters must be positive, got a={a}, b={b}"
            )));
        }
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("x={x} is outside [0, 1]")));
        }
        Ok(BetaParams { a, b, x })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    /// `x / (1-x)`; infinite at `x = 1`.
    pub fn u(&self) -> f64 {
        self.x / (1.0 - self.x)
    }
}

/// Number of partial-fraction coefficients `d_1 ..= d_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CfDepth(usize);

impl CfDepth {
    pub fn new(n_coeffs: usize) -> Result<Self> {
        if n_coeffs == 0 {
            return Err(Error::Domain("continued fraction needs at least d_1".into()));
        }
        Ok(CfDepth(n_coeffs))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// `x^a Σ_{k=0}^{n} (-1)^k (b-1)_k / k! · x^k / (k+a)`.
pub fn beta_binomial_expansion(p: &BetaParams, n: usize) -> Approx {
    let BetaParams { a, b, x } = *p;
    let mut coeff = 1.0;
    let mut power = 1.0;
    let mut sum = 0.0;
    let mut terms = 0;
    for k in 0..=n {
        if k > 0 {
            let kf = k as f64;
            // (-1)^k (b-1)_k / k! from its predecessor
            coeff *= (kf - b) / kf;
            power *= x;
        }
        sum += coeff * power / (k as f64 + a);
        terms += 1;
    }
    Approx {
        value: x.powf(a) * sum,
        terms,
        out_of_scope: x == 1.0,
    }
}

/// `d_i` of the continued fraction, `i >= 1`.
fn cf_coefficient(a: f64, b: f64, x: f64, i: usize) -> f64 {
    let m = (i / 2) as f64;
    if i % 2 == 1 {
        -(a + m) * (a + b + m) * x / ((a + 2.0 * m) * (a + 2.0 * m + 1.0))
    } else {
        m * (b - m) * x / ((a + 2.0 * m - 1.0) * (a + 2.0 * m))
    }
}

/// `x^a (1-x)^b / a · 1/(1+ d_1/(1+ d_2/(1+ ...)))` truncated after `d_n`,
/// evaluated from the bottom up.
pub fn beta_continued_fraction(p: &BetaParams, depth: CfDepth) -> Result<Approx> {
    let BetaParams { a, b, x } = *p;
    let n = depth.get();
    let mut acc = 1.0 + cf_coefficient(a, b, x, n);
    for i in (1..n).rev() {
        if acc == 0.0 {
            return Err(Error::DegenerateContinuedFraction { index: i + 1 });
        }
        acc = 1.0 + cf_coefficient(a, b, x, i) / acc;
    }
    if acc == 0.0 {
        return Err(Error::DegenerateContinuedFraction { index: 1 });
    }
    let prefactor = x.powf(a) * (1.0 - x).powf(b) / a;
    Ok(Approx {
        value: prefactor / acc,
        terms: n,
        out_of_scope: x == 1.0,
    })
}

/// Which form of the accelerated expansion to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaBranch {
    /// `Σ c_{kj} (-a-b)_k/k! · u^{a+k}/(k+a)`, for `u <= 1`.
    SmallU,
    /// `Σ c_{kj} (-a-b)_k/k! · (1/(k+a) + 1/(k+b) - u^{-(b+k)}/(k+b))`,
    /// for `u > 1`.
    LargeU,
}

/// Accelerated expansion, choosing [`BetaBranch::SmallU`] for `x <= 1/2`
/// (`u <= 1`) and [`BetaBranch::LargeU`] otherwise. At `x = 1` the
/// `u^{-(b+k)}` terms vanish.
pub fn beta_accelerated(p: &BetaParams, j: usize, table: &CoefficientTable) -> Result<Approx> {
    let branch = if p.u() <= 1.0 {
        BetaBranch::SmallU
    } else {
        BetaBranch::LargeU
    };
    beta_accelerated_branch(p, j, table, branch)
}

/// Accelerated expansion with an explicit branch. Both branches are
/// algebraically equal at `u = 1`; away from it only the natural one
/// converges.
pub fn beta_accelerated_branch(
    p: &BetaParams,
    j: usize,
    table: &CoefficientTable,
    branch: BetaBranch,
) -> Result<Approx> {
    let BetaParams { a, b, x } = *p;
    let row = table.float_row(j)?;
    let ln_u = x.ln() - (1.0 - x).ln();

    let mut weight = 1.0;
    let mut sum = 0.0;
    let mut terms = 0;
    for (k, c) in row.iter().enumerate() {
        let kf = k as f64;
        if k > 0 {
            // (-a-b)_k / k!
            weight *= (-a - b - kf + 1.0) / kf;
        }
        let integrated = match branch {
            BetaBranch::SmallU => ((a + kf) * ln_u).exp() / (kf + a),
            // 1 - u^{-(b+k)} without cancellation near u = 1
            BetaBranch::LargeU => 1.0 / (kf + a) - (-(b + kf) * ln_u).exp_m1() / (kf + b),
        };
        sum += c * weight * integrated;
        terms += 1;
    }
    Ok(Approx {
        value: sum,
        terms,
        out_of_scope: false,
    })
}

/// Reference `B_x(a, b)` by tanh-sinh quadrature of the defining integral.
///
/// `tol` must lie in `[1e-14, 1e-6]`. Intended for `a, b` of order one; the
/// endpoint singularities for `a < 1` or `b < 1` are handled by the
/// quadrature's node clustering.
pub fn beta_quadrature_oracle(p: &BetaParams, tol: f64) -> Result<f64> {
    if !(1e-14..=1e-6).contains(&tol) {
        return Err(Error::Domain(format!(
            "quadrature tolerance {tol:e} outside [1e-14, 1e-6]"
        )));
    }
    let BetaParams { a, b, x } = *p;
    if x == 0.0 {
        return Ok(0.0);
    }
    let one_minus_x = 1.0 - x;
    let integrand = |_t: f64, from_zero: f64, to_x: f64| {
        // 1 - t, exact at the right end when x = 1
        let complement = one_minus_x + to_x;
        from_zero.powf(a - 1.0) * complement.powf(b - 1.0)
    };
    let opts = TanhSinhOptions {
        tol,
        ..Default::default()
    };
    tanh_sinh(integrand, 0.0, x, &opts).map(|q| q.value)
}
