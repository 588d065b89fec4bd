pub mod asm6v;
pub mod cli;
pub mod density;
pub mod error;
pub mod exact;
pub mod lambdadet;
pub mod network;
pub mod tsystem;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};

/// Enumeration cap: `LAMBDADET_CAP` when set to an integer, else `default`.
pub fn enumeration_cap(default: usize) -> usize {
    std::env::var("LAMBDADET_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}
