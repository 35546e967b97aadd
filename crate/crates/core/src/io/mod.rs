//! File formats, generators and the benchmark harness.

pub mod bench;
pub mod format;
pub mod gen;

use crate::Limits;

/// Environment variable overriding the default exhaustive-search cap.
pub const CAP_ENV: &str = "RECONF_CAP";

/// [`Limits`] from `RECONF_CAP` when set to an integer, else the default.
pub fn default_limits() -> Limits {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .map(Limits::new)
        .unwrap_or_default()
}
