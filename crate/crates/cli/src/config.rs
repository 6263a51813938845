use clap::ValueEnum;
use serde::Serialize;

use mellin_core::mpcore::MIN_PREC;

pub const PRECISION_ENV: &str = "MELLIN_PRECISION";
pub const TIMING_ENV: &str = "MELLIN_REPORT_TIMING";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub precision_bits: u32,
    /// Default case tolerance is `10^tolerance_exponent`.
    pub tolerance_exponent: i32,
    pub max_n: u32,
    pub output_format: OutputFormat,
    pub seed: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.precision_bits < MIN_PREC {
            return Err(format!("precision must be at least {MIN_PREC} bits, got {}", self.precision_bits));
        }
        if self.tolerance_exponent >= 0 {
            return Err(format!("tolerance exponent must be negative, got {}", self.tolerance_exponent));
        }
        Ok(())
    }

    pub fn tolerance(&self) -> f64 {
        10f64.powi(self.tolerance_exponent)
    }
}

pub fn report_timing() -> bool {
    std::env::var(TIMING_ENV).is_ok_and(|v| v == "1")
}
