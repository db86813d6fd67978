pub mod audit;
pub mod cancellation;
pub mod error;
pub mod farey;
pub mod heckoid;
pub mod slope;
pub mod words;

pub use error::{Error, Result};
pub use slope::{cf_from_slope, cf_value, normalize_into_unit, ContinuedFraction, Slope};
