use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

/// A single violated parameter bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub field: &'static str,
    pub value: f64,
    pub bound: &'static str,
}

impl Violation {
    pub fn new(field: &'static str, value: f64, bound: &'static str) -> Self {
        Self { field, value, bound }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {} violates {}", self.field, self.value, self.bound)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// One or more parameters fall outside their admissible range.
    #[error("invalid parameters: {}", join(.0))]
    Invalid(Vec<Violation>),

    #[error("market shares sum to {sum}, expected 1")]
    SharesSum { sum: f64 },

    #[error("ownership shares must satisfy theta1 < theta2, got theta1 = {theta1}, theta2 = {theta2}")]
    ShareOrdering { theta1: f64, theta2: f64 },

    #[error("year {year} precedes the scenario start year {start}")]
    BeforeStart { year: f64, start: f64 },

    #[error("horizon year {horizon} must lie after the start year {start}")]
    Horizon { horizon: f64, start: f64 },

    #[error("{what}: ratio {ratio} must lie in (0, 1)")]
    Implausible { what: &'static str, ratio: f64 },

    #[error("invalid sweep: {0}")]
    Sweep(String),

    #[error("no balanced starting capital: capital share at the steady-state ratio is {share}, which must be below 1")]
    NoBalancedStart { share: f64 },

    #[error("{origin}: {message}")]
    Parse { origin: String, message: String },

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn single(field: &'static str, value: f64, bound: &'static str) -> Self {
        Error::Invalid(vec![Violation::new(field, value, bound)])
    }

    /// True for failures caused by the filesystem rather than by the inputs.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Accumulates bound violations so that every offending field is reported at once.
#[derive(Debug, Default)]
pub(crate) struct Checker {
    violations: Vec<Violation>,
}

impl Checker {
    pub fn require(&mut self, ok: bool, field: &'static str, value: f64, bound: &'static str) {
        // NaN fails every comparison, so `ok` is already false for it.
        if !ok {
            self.violations.push(Violation::new(field, value, bound));
        }
    }

    pub fn extend(&mut self, other: Checker) {
        self.violations.extend(other.violations);
    }

    pub fn finish(self) -> Result<()> {
        if self.violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(self.violations))
        }
    }
}
