//! Capability thresholds for a basic income financed by public capture of AI
//! capital rents, in a task-automation growth model with CES aggregation.
//!
//! The crate is organised bottom-up:
//!
//! - [`economy`]: technology, capital share, Solow accumulation, steady-state ratio
//! - [`thresholds`]: competitive and oligopoly thresholds, elasticities, two-country gap
//! - [`dynamics`]: capability scenarios, transition paths, crossing years
//! - [`calibration`]: the U.S. 2025 preset, derivation helpers, parameter files
//! - [`scenarios`] and [`emit`]: sweeps and their CSV/JSON tables
//!
//! All functions are pure over `Copy` parameter blocks and evaluate in 64-bit
//! floating point.
//!
//! ```
//! use ubi_core::{calibration::preset_us_2025, thresholds::gamma_star};
//!
//! let p = preset_us_2025();
//! let report = gamma_star(&p.econ, &p.fiscal, 2025.0);
//! assert!(report.gamma_star > 5.0 && report.gamma_star < 6.0);
//! ```

pub mod calibration;
pub mod dynamics;
pub mod economy;
pub mod emit;
pub mod error;
pub mod scenarios;
pub mod thresholds;

pub use calibration::{preset_us_2025, CalibrationPreset};
pub use dynamics::{CapabilityScenario, CrossingResult, PathRecord, SimulationPath};
pub use economy::{EconomyInputs, EconomyParams, EconomyState};
pub use emit::{Destination, Format};
pub use error::{Error, Result, Violation};
pub use scenarios::{ResultTable, SweepSpec};
pub use thresholds::{
    Elasticities, FiscalInputs, FiscalParams, MarketStructure, Perturbation, ThresholdReport,
};
