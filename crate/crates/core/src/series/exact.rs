//! Exact rational evaluation for rational `q` and integer `r`.
//!
//! Used to confirm that the accelerated sum terminates exactly, for example
//! `s^5(5) = 2^-10` at `q = 1, r = -10`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::CoefficientTable;
use crate::error::{Error, Result};

/// Exact rational image of a finite `f64`.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::Domain(format!("{x} is not finite")))
}

/// `a_0 ..= a_{count-1}` of `(q+1)^r` in exact arithmetic.
pub fn terms_exact(q: &BigRational, r: i64, count: usize) -> Vec<BigRational> {
    let r = BigInt::from(r);
    let mut out = Vec::with_capacity(count);
    let mut a = BigRational::one();
    for k in 0..count {
        if k > 0 {
            let kk = BigInt::from(k);
            a = a * BigRational::new(&r - &kk + 1, kk) * q;
        }
        out.push(a.clone());
    }
    out
}

pub fn accelerated_sum_exact(
    q: &BigRational,
    r: i64,
    j: usize,
    table: &CoefficientTable,
) -> Result<BigRational> {
    let row = table.row(j)?;
    Ok(row
        .iter()
        .zip(terms_exact(q, r, row.len()))
        .fold(BigRational::zero(), |acc, (c, a)| {
            acc + c.as_big_rational() * a
        }))
}

pub fn partial_sum_level0_exact(q: &BigRational, r: i64, n: usize) -> BigRational {
    terms_exact(q, r, n + 1)
        .into_iter()
        .fold(BigRational::zero(), |acc, a| acc + a)
}

/// `(q+1)^r` exactly. Requires `q > -1`.
pub fn reference_exact(q: &BigRational, r: i64) -> Result<BigRational> {
    let base = q + BigRational::one();
    if base <= BigRational::zero() {
        return Err(Error::Domain(format!("q + 1 = {base} must be positive")));
    }
    let exp = i32::try_from(r).map_err(|_| Error::Domain(format!("exponent {r} too large")))?;
    Ok(num_traits::pow::Pow::pow(&base, exp))
}
