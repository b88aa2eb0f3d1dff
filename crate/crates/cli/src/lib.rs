//! Command implementations behind the `bernpoly` binary. Each command
//! returns its full output as a string so it can be tested without
//! spawning a process.

mod error;
pub mod extremals;
pub mod render;
pub mod report;
pub mod sigma_cm;
pub mod sweep;
pub mod verify;

pub use error::CliError;

use bernpoly_core::rational::parse_canonical;
use bernpoly_core::MarginParam;

/// Parses `--p`: a canonical `"s/t"` rational in `(0, 1/2]`.
pub fn parse_p(text: &str) -> Result<MarginParam, CliError> {
    let p = parse_canonical(text).map_err(|e| CliError::Usage(e.to_string()))?;
    MarginParam::from_rational(p).map_err(CliError::from)
}
