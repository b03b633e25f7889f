pub mod cache;
pub mod cli;
pub mod conjecture;
mod error;
pub mod exactla;
pub mod hwmodule;
pub mod linvariant;
pub mod rootsystem;
pub mod satake;
pub mod w0action;

pub use error::{Error, Result};
