//! Exact arithmetic for a family of theta-derived quasimodular forms.
//!
//! Everything here works over truncated formal series with `BigRational`
//! coefficients; nothing is floating point. The pipeline: enumerate integer
//! partitions and their hook-balance weights ([`partitions`]), assemble the
//! weighted generating series ([`forms`]), expand them in the Eisenstein
//! monomial basis ([`eisenstein`]), and probe coefficient congruences and
//! p-adic valuations ([`checks`]). [`report`] pins the JSON shapes used by
//! the command line front end.

pub mod checks;
pub mod eisenstein;
pub mod error;
pub mod forms;
pub mod partitions;
pub mod report;
pub mod series;
pub mod xseries;
pub mod zeta;

pub use error::{Error, Result};
pub use series::{eta_like_product, rat, QSeries, Rat};
pub use xseries::XSeries;
