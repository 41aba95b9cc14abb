//! Applications of the accelerated expansion: `ln(1+q)` and the
//! incomplete beta function `B_x(a, b)`.

pub mod beta;
pub mod ln;
pub mod quadrature;

pub use beta::{
    beta_accelerated, beta_accelerated_branch, beta_binomial_expansion, beta_continued_fraction,
    beta_quadrature_oracle, BetaBranch, BetaParams, CfDepth,
};
pub use ln::{ln1p_accelerated, ln1p_taylor};

/// Value of a truncated expansion and the number of series terms it used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Approx {
    pub value: f64,
    pub terms: usize,
    /// Input outside the range where the expansion is meaningful (e.g. the
    /// plain binomial expansion at `x = 1`).
    pub out_of_scope: bool,
}

impl Approx {
    pub(crate) fn new(value: f64, terms: usize) -> Self {
        Approx {
            value,
            terms,
            out_of_scope: false,
        }
    }
}
