//! Linear acceleration of the negative binomial series.
//!
//! The level-`j` partial sums `s^j(n)` are obtained from the plain partial
//! sums of `(q+1)^r` by repeatedly applying the `½ / ¼ / ¼` stencil
//! `s^j(n) = ½ s^{j-1}(n) + ¼ s^{j-1}(n-1) + ¼ s^{j-1}(n+1)`.
//! The first element `s^j(j)` is a fixed linear combination of the first
//! `2j+1` series terms, `Σ c_{kj} a_k`, whose coefficients are tabulated
//! exactly by [`coeff::CoefficientTable`].
//!
//! * [`coeff`]: exact coefficient rows plus a definitional oracle.
//! * [`series`]: terms, partial sums, the stencil grid and the accelerated sum.
//! * [`special`]: `ln(1+q)` and the incomplete beta function, with the
//!   competitor expansions and a tanh-sinh quadrature reference.
//! * [`cli`]: report generation behind the `binseries` executable.

pub mod cli;
pub mod coeff;
pub mod error;
pub mod series;
pub mod special;

pub use coeff::{CoefficientTable, Rational};
pub use error::{Error, Result};
pub use series::{EvalResult, PartialSumGrid};
