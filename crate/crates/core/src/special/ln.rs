//! `ln(1+q)` from term-wise integration of `(1+t)^-1` over `[0, q]`.

use crate::coeff::CoefficientTable;
use crate::error::Result;

use super::Approx;

// q^{k+1} / (k+1) with alternating sign, i.e. (-1)_k / k! · q^{k+1} / (k+1)
fn integrated_terms(q: f64) -> impl Iterator<Item = f64> {
    let mut power = q;
    let mut sign = 1.0;
    (0..).map(move |k: usize| {
        let t = sign * power / (k + 1) as f64;
        power *= q;
        sign = -sign;
        t
    })
}

/// Taylor polynomial `Σ_{k=0}^{n} (-1)^k q^{k+1}/(k+1)` (`n+1` terms).
pub fn ln1p_taylor(q: f64, n: usize) -> Approx {
    let mut terms = 0;
    let value = integrated_terms(q).take(n + 1).fold(0.0, |acc, t| {
        terms += 1;
        acc + t
    });
    Approx {
        value,
        terms,
        out_of_scope: q > 1.0,
    }
}

/// Transformed expansion `Σ_{k=0}^{2j} c_{kj} (-1)^k q^{k+1}/(k+1)`.
pub fn ln1p_accelerated(q: f64, j: usize, table: &CoefficientTable) -> Result<Approx> {
    let row = table.float_row(j)?;
    let mut terms = 0;
    let value = row
        .iter()
        .zip(integrated_terms(q))
        .fold(0.0, |acc, (c, t)| {
            terms += 1;
            acc + c * t
        });
    Ok(Approx::new(value, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_argument() {
        let t = CoefficientTable::build(4).unwrap();
        for n in 0..6 {
            assert_eq!(ln1p_taylor(0.0, n).value, 0.0);
        }
        for j in 0..=4 {
            assert_eq!(ln1p_accelerated(0.0, j, &t).unwrap().value, 0.0);
        }
    }

    #[test]
    fn taylor_five_terms() {
        let v = ln1p_taylor(1.0, 4);
        let expect = 1.0 - 1.0 / 2.0 + 1.0 / 3.0 - 1.0 / 4.0 + 1.0 / 5.0;
        assert!((v.value - expect).abs() < 1e-15);
        assert_eq!(format!("{:.6}", v.value), "0.783333");
        assert_eq!(v.terms, 5);
        assert!((ln1p_taylor(0.1, 4).value - 1.1f64.ln()).abs() < 2e-7);
    }

    #[test]
    fn accelerated_five_terms() {
        let t = CoefficientTable::build(2).unwrap();
        let v = ln1p_accelerated(1.0, 2, &t).unwrap();
        let expect = 1.0 - (15.0 / 16.0) / 2.0 + (11.0 / 16.0) / 3.0 - (5.0 / 16.0) / 4.0
            + (1.0 / 16.0) / 5.0;
        assert!((v.value - expect).abs() < 1e-15);
        assert_eq!(format!("{:.6}", v.value), "0.694792");
        assert_eq!(v.terms, 5);
        assert!(ln1p_accelerated(1.0, 3, &t).is_err());
    }

    #[test]
    fn accelerated_past_unit_argument() {
        let t = CoefficientTable::build(2).unwrap();
        let v = ln1p_accelerated(1.5, 2, &t).unwrap().value;
        assert!(v.is_finite());
        assert!((v - 2.5f64.ln()).abs() < 2e-2);
    }
}
