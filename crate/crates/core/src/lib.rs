//! Exact computation of the sequence `a_n = sum_{k<n} k! (n-k-1)!`, Stirling,
//! Bernoulli and Genocchi numbers, and executable checks of the identities
//! that tie them together.
//!
//! All arithmetic is over arbitrary-precision integers and reduced rationals.

pub mod cache;
pub mod error;
pub mod identity;
pub mod report;
pub mod sequence;
pub mod series;
pub mod stirling;
pub mod valuation;

pub use error::{Error, Result};
pub use report::{Record, Row, Value, VerificationReport};
pub use sequence::{egf_coefficients, power_over_k_sum, EgfKind, Engine, GenocchiRoute};
pub use series::SeriesPoly;
pub use stirling::{check_orthogonality, falling_factorial_coeffs, StirlingKind, StirlingTable};
pub use valuation::{
    digit_sum, floor_log2, lcm_binomial_row, lcm_range, legendre_valuation, vp_int, vp_rat,
    Integer, Prime, Rational,
};
