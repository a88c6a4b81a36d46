//! Cyclotomic fields Q_p(ζ_{p^n}) and their tensor squares.

mod elem;
mod level;

pub(crate) use elem::reduce_zeta;
pub use elem::{Cyclo, CycloElem, RenderCoeff, Tensor};
pub use level::{is_odd_prime, CycloLevel};
