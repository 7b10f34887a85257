//! 2-adic valuations and parities of degrees of determinantal varieties and
//! of plane partition box counts.

pub mod box_parity;
pub mod cli;
pub mod digit_core;
pub mod error;
pub mod exact;
pub mod oracles;
pub mod theta_engine;
pub mod variety_degrees;

pub use error::{Error, Result};
