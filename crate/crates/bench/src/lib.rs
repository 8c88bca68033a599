//! Shared fixtures for the benchmarks.

use ubi_core::calibration::preset_us_2025;
use ubi_core::CalibrationPreset;

pub fn baseline() -> CalibrationPreset {
    preset_us_2025()
}

/// Firm counts for a dense competition sweep.
pub fn firm_counts(max: u32) -> Vec<u32> {
    (1..=max).collect()
}

/// Yearly evaluation points over `[from, to]`.
pub fn years(from: i32, to: i32) -> Vec<f64> {
    (from..=to).map(f64::from).collect()
}
