pub mod arith;
pub mod drc;
pub mod embed;
pub mod error;
pub mod hypercore;
pub mod oracle;
pub mod reduction;
pub mod rng;
pub mod selftest;
pub mod steppingup;

pub use error::{Error, Result};
