//! Exact arithmetic and decision procedures for lattices in solvable Lie
//! groups built from Salem numbers and oscillator-type extensions.

pub mod cli;
pub mod criteria;
pub mod error;
pub mod groups;
pub mod interval;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod salem;
pub mod sympmat;
pub mod symbolic;

pub use error::{Error, Result};
