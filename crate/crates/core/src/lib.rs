pub mod cyclotomic;
pub mod error;
pub mod mellin;
pub mod oracle;
pub mod padic;
pub mod poly;
pub mod ring;
pub mod series;
pub mod weight;

pub use cyclotomic::{Cyclo, CycloElem, CycloLevel, Tensor};
pub use error::{Error, Result};
pub use padic::PadicScalar;
pub use ring::{Coeff, Q};
pub use series::{Envelope, PlusSeries, ScalarSeries};
pub use weight::{Ball, Distance, FiniteOrderChar, PPowerTimes, WeightChar};

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    mod scalars {}
    #[doc = include_str!("../../../book/src/cyclotomic.md")]
    mod cyclotomic {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/weights.md")]
    mod weights {}
    #[doc = include_str!("../../../book/src/interpolation.md")]
    mod interpolation {}
}
