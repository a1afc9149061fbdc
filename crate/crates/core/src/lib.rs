//! Exact Dirichlet series counting A4 and S4 quartic fields by cubic
//! resolvent, and the brute-force field enumeration used to check them.

pub mod dirichlet;
pub mod enumerate;
pub mod error;
pub mod exactmath;
pub mod numfield;
pub mod resolvent;
pub mod verify;
mod parallel;

pub use error::{Error, Result};
pub use parallel::Parallelism;
