//! Computer algebra for higher secant varieties over prime fields.

pub mod classify;
pub mod error;
pub mod families;
pub mod field;
pub mod geometry;
pub mod groebner;
pub mod harness;
pub mod invariants;
pub mod io;
pub mod pei;
pub mod linalg;
pub mod par;
pub mod ring;

pub use error::{Error, Result};
pub use field::PrimeField;
