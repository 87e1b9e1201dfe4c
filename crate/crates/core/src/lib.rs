pub mod caps;
pub mod error;
pub mod matching;
pub mod perm;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};
pub mod pfaffian;
pub mod models;
pub mod report;
pub mod symmetry;
pub mod suite;
pub mod cli;
