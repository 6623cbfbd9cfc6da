//! Exact computations on 2-class groups of real quadratic fields and of the
//! biquadratic fields Q(√2, √d), with an independent form-based class group
//! oracle to check every prediction against.

pub mod arith;
pub mod biquad;
pub mod classify;
pub mod error;
pub mod forms;
pub mod genus;
pub mod quadfield;
pub mod redei;

pub use error::{Error, Result};
