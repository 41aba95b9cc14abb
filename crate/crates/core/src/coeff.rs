//! Exact transformation coefficients `c_{kj}`.
//!
//! Row `j` holds the weights with which the accelerated sum `s^j(j)`
//! combines the series terms `a_0 ..= a_{2j}`. Rows are built by applying
//! the `½ / ¼ / ¼` stencil directly to the previous row, using the fact that
//! the coefficient of `a_k` in `s^{j-1}(n)` only depends on `k - n`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest level accepted by [`CoefficientTable::build`] and the oracle.
///
/// Denominators grow as `4^j`; 64 keeps every numerator below `2^128`.
pub const MAX_LEVEL: usize = 64;

/// Exact fraction with a positive denominator, always kept reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big_rational(self) -> BigRational {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        coefficient_as_float(self)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Nearest `f64` to `num / den`.
///
/// Coefficient denominators are powers of two, where the conversion reduces
/// to a correctly rounded integer conversion followed by an exact scaling.
pub fn coefficient_as_float(c: &Rational) -> f64 {
    let (num, den) = (c.numer(), c.denom());
    let den_bits = den.bits();
    if den_bits > 0 && den.trailing_zeros() == Some(den_bits - 1) {
        let shift = (den_bits - 1) as i32;
        let n = num.to_f64().unwrap_or(f64::NAN);
        // shift ≤ 128 here, so a single powi stays in the normal range
        return n * 2f64.powi(-shift);
    }
    c.0.to_f64().unwrap_or(f64::NAN)
}

fn check_level(level: usize) -> Result<()> {
    if level > MAX_LEVEL {
        return Err(Error::LevelTooLarge {
            level,
            limit: MAX_LEVEL,
        });
    }
    Ok(())
}

/// Triangular table of `c_{kj}` for `j = 0 ..= max_level`, `k = 0 ..= 2j`.
///
/// Immutable once built; the `f64` images of every row are cached alongside
/// the exact values.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    rows: Vec<Vec<Rational>>,
    float_rows: Vec<Vec<f64>>,
}

impl CoefficientTable {
    pub fn build(max_level: usize) -> Result<Self> {
        check_level(max_level)?;

        // numerators over 4^j
        let mut numerators: Vec<Vec<BigInt>> = Vec::with_capacity(max_level + 1);
        numerators.push(vec![BigInt::one()]);
        for j in 1..=max_level {
            let prev = &numerators[j - 1];
            let full = BigInt::one() << (2 * (j - 1));
            // coefficient of a_m in s^{j-1}(j-1), extended to all integers m
            let at = |m: isize| -> BigInt {
                if m < 0 {
                    full.clone()
                } else {
                    prev.get(m as usize).cloned().unwrap_or_else(BigInt::zero)
                }
            };
            let row = (0..=2 * j as isize)
                .map(|k| (at(k - 1) << 1) + at(k) + at(k - 2))
                .collect();
            numerators.push(row);
        }

        let rows: Vec<Vec<Rational>> = numerators
            .into_iter()
            .enumerate()
            .map(|(j, row)| {
                let den = BigInt::one() << (2 * j);
                row.into_iter()
                    .map(|n| Rational::new(n, den.clone()))
                    .collect()
            })
            .collect();
        let float_rows = rows
            .iter()
            .map(|row| row.iter().map(coefficient_as_float).collect())
            .collect();

        Ok(CoefficientTable { rows, float_rows })
    }

    pub fn max_level(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, level: usize) -> Result<&[Rational]> {
        self.rows
            .get(level)
            .map(Vec::as_slice)
            .ok_or(Error::LevelBeyondTable {
                level,
                max: self.max_level(),
            })
    }

    pub fn float_row(&self, level: usize) -> Result<&[f64]> {
        self.float_rows
            .get(level)
            .map(Vec::as_slice)
            .ok_or(Error::LevelBeyondTable {
                level,
                max: self.max_level(),
            })
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.rows.iter().map(Vec::as_slice)
    }
}

/// Coefficients of `s^j(j)` obtained by literally expanding the level sums.
///
/// Every `s^0(n)` for `n ≤ 2j` is written as a vector over the term basis
/// `a_0 ..= a_{2j}` and the stencil is applied level by level over the whole
/// trapezoid. This shares nothing with [`CoefficientTable::build`] and costs
/// `O(j³)`; it exists to cross-check the table.
pub fn definitional_coefficient_oracle(level: usize) -> Result<Vec<Rational>> {
    check_level(level)?;
    let width = 2 * level + 1;
    let half = BigRational::new(1.into(), 2.into());
    let quarter = BigRational::new(1.into(), 4.into());

    // sums[n] is s^l(n) as a coefficient vector, valid for l <= n <= 2j - l
    let mut sums: Vec<Vec<BigRational>> = (0..width)
        .map(|n| {
            (0..width)
                .map(|k| {
                    if k <= n {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();

    for l in 1..=level {
        let next: Vec<Vec<BigRational>> = (l..=2 * level - l)
            .map(|n| {
                (0..width)
                    .map(|k| {
                        &half * &sums[n][k]
                            + &quarter * &sums[n - 1][k]
                            + &quarter * &sums[n + 1][k]
                    })
                    .collect()
            })
            .collect();
        for (offset, v) in next.into_iter().enumerate() {
            sums[l + offset] = v;
        }
    }

    Ok(sums.swap_remove(level).into_iter().map(Rational).collect())
}

/// `true` when `den` divides `4^level`.
pub fn denominator_divides_power_of_four(c: &Rational, level: usize) -> bool {
    let pow = BigInt::one() << (2 * level);
    c.denom().is_positive() && pow.is_multiple_of(c.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn level_zero_is_unit() {
        let t = CoefficientTable::build(0).unwrap();
        assert_eq!(t.max_level(), 0);
        assert_eq!(t.row(0).unwrap(), &[r(1, 1)]);
    }

    #[test]
    fn level_one_matches_worked_example() {
        let t = CoefficientTable::build(1).unwrap();
        assert_eq!(t.row(1).unwrap(), &[r(1, 1), r(3, 4), r(1, 4)]);
    }

    #[test]
    fn level_two_row() {
        let t = CoefficientTable::build(2).unwrap();
        assert_eq!(
            t.row(2).unwrap(),
            &[r(1, 1), r(15, 16), r(11, 16), r(5, 16), r(1, 16)]
        );
    }

    #[test]
    fn oracle_small_levels() {
        assert_eq!(definitional_coefficient_oracle(0).unwrap(), vec![r(1, 1)]);
        assert_eq!(
            definitional_coefficient_oracle(1).unwrap(),
            vec![r(1, 1), r(3, 4), r(1, 4)]
        );
        let row3 = definitional_coefficient_oracle(3).unwrap();
        assert_eq!(row3.len(), 7);
        assert_eq!(row3[6], r(1, 64));
    }

    #[test]
    fn builder_agrees_with_oracle() {
        let t = CoefficientTable::build(10).unwrap();
        for j in 0..=10 {
            assert_eq!(
                t.row(j).unwrap(),
                definitional_coefficient_oracle(j).unwrap().as_slice(),
                "row {j}"
            );
        }
    }

    #[test]
    fn row_shape_and_bounds() {
        let t = CoefficientTable::build(MAX_LEVEL).unwrap();
        for (j, row) in t.rows().enumerate() {
            assert_eq!(row.len(), 2 * j + 1);
            assert_eq!(row[0], r(1, 1));
            assert_eq!(row[2 * j], Rational::new(1, BigInt::one() << (2 * j)));
            for w in row.windows(2) {
                assert!(w[0] >= w[1]);
            }
            for c in row {
                assert!(c.numer().is_positive());
                assert!(denominator_divides_power_of_four(c, j));
            }
        }
    }

    #[test]
    fn rejects_levels_past_limit() {
        assert_eq!(
            CoefficientTable::build(MAX_LEVEL + 1).unwrap_err(),
            Error::LevelTooLarge {
                level: MAX_LEVEL + 1,
                limit: MAX_LEVEL
            }
        );
        assert!(definitional_coefficient_oracle(MAX_LEVEL + 1).is_err());
    }

    #[test]
    fn row_lookup_past_table() {
        let t = CoefficientTable::build(3).unwrap();
        assert_eq!(
            t.row(4).unwrap_err(),
            Error::LevelBeyondTable { level: 4, max: 3 }
        );
        assert!(t.float_row(4).is_err());
    }

    #[test]
    fn float_conversion() {
        assert_eq!(coefficient_as_float(&r(3, 4)), 0.75);
        assert_eq!(coefficient_as_float(&r(1, 4)), 0.25);
        assert_eq!(coefficient_as_float(&r(11, 16)), 0.6875);
        assert_eq!(coefficient_as_float(&r(1, 3)), 1.0 / 3.0);
        // 2^60 + 1 over 2^62 needs rounding of the numerator
        let big = Rational::new((BigInt::one() << 60) + 1, BigInt::one() << 62);
        assert_eq!(coefficient_as_float(&big), 0.25);
        let tiny = Rational::new(1, BigInt::one() << 128);
        assert_eq!(coefficient_as_float(&tiny), 2f64.powi(-128));
    }

    #[test]
    fn display() {
        assert_eq!(r(3, 4).to_string(), "3/4");
        assert_eq!(r(4, 4).to_string(), "1");
    }
}
