//! Exact arithmetic toolkit for heights, radicals, S-unit equations,
//! explicit bound formulas, Mason's theorem and Belyi maps on P¹.
pub mod abc;
pub mod arith;
pub mod belyi;
pub mod bounds;
pub mod cli;
pub mod config;
pub mod error;
pub mod heights;
pub mod mason;
pub mod parse;
pub mod real;
pub use error::{Error, Result};
