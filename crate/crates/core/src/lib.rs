//! Desingularized multiple zeta-functions: exact special values at
//! non-positive integers, the desingularizing coefficient tables, and
//! double-precision evaluation of the desingularized double zeta-function.

pub mod coeffs;
pub mod cyclotomic;
pub mod error;
pub mod exact;
pub mod numeric;
pub mod poly;
pub mod series;
pub mod special_values;
pub mod verify;

pub use error::{Error, Result};
