//! Symmetric three-interval exchanges over real quadratic fields.
//!
//! Everything is computed exactly in `Q(sqrt(d))`: orbit points, Keane
//! points, cylinders and the parameters recovered from substitutions.

pub mod bridge;
pub mod error;
pub mod iet;
pub mod morph;
pub mod induct;
pub mod qfield;
pub mod wordstat;

pub use error::{Error, Result};
pub use iet::{Direction, Interval, Letter, TernaryWord, ThreeIET};
pub use qfield::{FieldTag, QuadraticNumber};
