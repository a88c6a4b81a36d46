//! Precision-tracked arithmetic in Q_p.

mod functions;
mod scalar;

pub use functions::{
    binomial_valuation_bound, factorial_valuation, ilog, padic_binomial, pexp, plog, teichmuller, valuation_of,
};
pub use scalar::{int_valuation, PadicScalar};
