pub mod amplitude;
pub mod bound;
pub mod cli;
pub mod error;
pub mod ode;
pub mod physics;
pub mod smatrix;
pub mod specfun;

pub use error::{Error, Result};
