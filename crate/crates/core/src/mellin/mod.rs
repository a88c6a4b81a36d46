//! Interpolation of twisted moments along weight space: `κ(∂)`, the map `Λ` and `exp*`.

mod certificate;
mod constants;
mod kappa;
mod lambda;

pub use certificate::{c_kappa, convergence_certificate, surconvergence_constant, ConvergenceCertificate};
pub use constants::{
    fe_constant, gamma_star, interpolation_factor, nabla_transfer_factor, rational_in_l0, LocalEpsilons,
};
pub use kappa::{kappa_partial, kappa_partial_with_reps, kappa_terms, KappaPartial};
pub use lambda::{
    exp_star_value, gauss_normalized_twist, lambda_from_units, lambda_special, lambda_value, twisted_sum, CrisData,
    IwasawaVector, LambdaEntry, LambdaValue,
};
