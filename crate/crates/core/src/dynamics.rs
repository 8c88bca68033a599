//! Capability trajectories, transition paths and threshold crossings.

// Negated comparisons below also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::economy::{EconomyParams, EconomyState};
use crate::error::{Checker, Error, Result};
use crate::thresholds::{gamma_star, is_solvent, FiscalParams, ThresholdReport};

/// Paths stop once capital or output passes this magnitude.
pub const OVERFLOW_GUARD: f64 = 1e300;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioInputs {
    pub gamma0: f64,
    pub doubling_years: f64,
    pub start_year: f64,
}

/// Exponential capability growth `gamma0 * 2^((year - start_year) / doubling_years)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScenarioInputs", into = "ScenarioInputs")]
pub struct CapabilityScenario {
    inputs: ScenarioInputs,
}

impl TryFrom<ScenarioInputs> for CapabilityScenario {
    type Error = Error;

    fn try_from(i: ScenarioInputs) -> Result<Self> {
        Self::new(i.gamma0, i.doubling_years, i.start_year)
    }
}

impl From<CapabilityScenario> for ScenarioInputs {
    fn from(s: CapabilityScenario) -> Self {
        s.inputs
    }
}

impl ScenarioInputs {
    pub(crate) fn check(&self) -> Checker {
        let mut c = Checker::default();
        c.require(self.gamma0 >= 1.0 && self.gamma0.is_finite(), "gamma0", self.gamma0, "gamma0 >= 1");
        c.require(
            self.doubling_years > 0.0 && self.doubling_years.is_finite(),
            "doubling_years",
            self.doubling_years,
            "doubling_years > 0",
        );
        c.require(self.start_year.is_finite(), "start_year", self.start_year, "finite year");
        c
    }
}

impl CapabilityScenario {
    pub fn new(gamma0: f64, doubling_years: f64, start_year: f64) -> Result<Self> {
        let inputs = ScenarioInputs { gamma0, doubling_years, start_year };
        inputs.check().finish()?;
        Ok(Self { inputs })
    }

    pub fn gamma0(&self) -> f64 {
        self.inputs.gamma0
    }
    pub fn doubling_years(&self) -> f64 {
        self.inputs.doubling_years
    }
    pub fn start_year(&self) -> f64 {
        self.inputs.start_year
    }

    /// Continuous growth rate of capability, `ln 2 / T_d`.
    pub fn growth_rate(&self) -> f64 {
        LN_2 / self.inputs.doubling_years
    }

    /// Capability at `year`; no backcasting before the start year.
    pub fn gamma_at(&self, year: f64) -> Result<f64> {
        if !(year >= self.inputs.start_year) {
            return Err(Error::BeforeStart { year, start: self.inputs.start_year });
        }
        Ok(self.inputs.gamma0 * ((year - self.inputs.start_year) / self.inputs.doubling_years).exp2())
    }
}

/// Continuous growth rate of the threshold, `(1 - sigma) g`.
pub fn threshold_growth_rate(econ: &EconomyParams) -> f64 {
    (1.0 - econ.sigma()) * econ.g()
}

/// Thresholds at unit steps from `year_from` through `year_to`.
pub fn threshold_series(
    econ: &EconomyParams,
    fiscal: &FiscalParams,
    year_from: f64,
    year_to: f64,
) -> Result<Vec<ThresholdReport>> {
    if !(year_from <= year_to) || !year_from.is_finite() || !year_to.is_finite() {
        return Err(Error::Horizon { horizon: year_to, start: year_from });
    }
    let steps = (year_to - year_from).floor() as usize;
    Ok((0..=steps)
        .map(|i| gamma_star(econ, fiscal, year_from + i as f64))
        .collect())
}

/// Where capability first meets the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossingResult {
    pub continuous_year: Option<f64>,
    pub first_integer_year: Option<i64>,
    pub threshold_at_crossing: Option<f64>,
}

impl CrossingResult {
    const NOT_FOUND: Self = Self { continuous_year: None, first_integer_year: None, threshold_at_crossing: None };

    pub fn found(&self) -> bool {
        self.continuous_year.is_some()
    }

    /// Continuous crossing rounded to the nearest calendar year.
    pub fn nearest_year(&self) -> Option<i64> {
        self.continuous_year.map(|t| t.round() as i64)
    }
}

/// Solves `gamma_t = gamma*_t` in closed form. Both sides are exponential in
/// time, so the log-gap is linear in `t`.
pub fn crossing_year(
    scenario: &CapabilityScenario,
    econ: &EconomyParams,
    fiscal: &FiscalParams,
    horizon_year: f64,
) -> Result<CrossingResult> {
    let start = scenario.start_year();
    if !(horizon_year > start) {
        return Err(Error::Horizon { horizon: horizon_year, start });
    }
    let threshold0 = unclamped(econ, fiscal, start);
    let log_gap = threshold0.ln() - scenario.gamma0().ln();
    let t = if log_gap <= 0.0 {
        start
    } else {
        let closing = scenario.growth_rate() - threshold_growth_rate(econ);
        if closing <= 0.0 {
            return Ok(CrossingResult::NOT_FOUND);
        }
        start + log_gap / closing
    };
    if t > horizon_year {
        return Ok(CrossingResult::NOT_FOUND);
    }
    Ok(CrossingResult {
        continuous_year: Some(t),
        first_integer_year: Some(t.ceil() as i64),
        threshold_at_crossing: Some(gamma_star(econ, fiscal, t).gamma_star),
    })
}

/// Bisection on the log-gap between capability and threshold, independent of
/// the closed form in [`crossing_year`]. Returns `None` if there is no crossing
/// before `horizon_year`.
pub fn crossing_year_bisect(
    scenario: &CapabilityScenario,
    econ: &EconomyParams,
    fiscal: &FiscalParams,
    horizon_year: f64,
) -> Result<Option<f64>> {
    let start = scenario.start_year();
    if !(horizon_year > start) {
        return Err(Error::Horizon { horizon: horizon_year, start });
    }
    let surplus = |t: f64| -> Result<f64> { Ok(scenario.gamma_at(t)?.ln() - unclamped(econ, fiscal, t).ln()) };
    if surplus(start)? >= 0.0 {
        return Ok(Some(start));
    }
    if surplus(horizon_year)? < 0.0 {
        return Ok(None);
    }
    let (mut lo, mut hi) = (start, horizon_year);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if surplus(mid)? >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

fn unclamped(econ: &EconomyParams, fiscal: &FiscalParams, year: f64) -> f64 {
    gamma_star(econ, fiscal, year).unclamped.expect("competitive threshold is finite")
}

/// One simulated year.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathRecord {
    pub year: f64,
    pub productivity: f64,
    pub gamma: f64,
    pub capital: f64,
    pub output: f64,
    /// Realized capital-output ratio `K / Y`.
    pub q: f64,
    /// Capital income share at the realized ratio `q`.
    pub capital_share: f64,
    /// `phi Theta (1 - c)` times the realized capital share.
    pub public_rent_ratio: f64,
    /// Steady-state threshold for this year.
    pub gamma_star: f64,
    /// `gamma >= gamma_star`, evaluated through the steady-state budget.
    pub solvent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationPath {
    pub records: Vec<PathRecord>,
    /// Set when the overflow guard stopped the path early.
    pub truncated: bool,
}

/// Capital stock at which `K / Y` equals the steady-state ratio for the given
/// capability and year. Fails when the capital share at that ratio would be
/// one or more, in which case no such stock exists.
pub fn balanced_capital(econ: &EconomyParams, gamma: f64, year: f64) -> Result<f64> {
    let kappa = econ.steady_state_kappa();
    let share = econ.capital_share(gamma, kappa, year)?;
    if share >= 1.0 {
        return Err(Error::NoBalancedStart { share });
    }
    let rho = econ.rho();
    // K^rho (kappa^-rho - A^rho a gamma^(1-rho)) = A^rho b L^rho
    let a_rho = econ.productivity(year).powf(rho);
    let k_rho = a_rho * econ.labor_weight() * econ.labor().powf(rho) / (kappa.powf(-rho) * (1.0 - share));
    Ok(k_rho.powf(1.0 / rho))
}

/// Iterates Solow accumulation with CES output for `years` annual steps,
/// starting at the scenario's start year. The path holds `years + 1` records.
/// Without an explicit `initial_capital` the path starts on the balanced ratio.
pub fn simulate_path(
    econ: &EconomyParams,
    fiscal: &FiscalParams,
    scenario: &CapabilityScenario,
    initial_capital: Option<f64>,
    years: usize,
) -> Result<SimulationPath> {
    if years == 0 {
        return Err(Error::single("years", 0.0, "years >= 1"));
    }
    let start = scenario.start_year();
    let mut capital = match initial_capital {
        Some(k) => {
            if !(k > 0.0 && k.is_finite()) {
                return Err(Error::single("K0", k, "K0 > 0"));
            }
            k
        }
        None => balanced_capital(econ, scenario.gamma0(), start)?,
    };
    let mut records = Vec::with_capacity(years + 1);
    let mut truncated = false;
    for step in 0..=years {
        let year = start + step as f64;
        let gamma = scenario.gamma_at(year)?;
        if !(gamma <= OVERFLOW_GUARD && capital <= OVERFLOW_GUARD) {
            truncated = true;
            break;
        }
        let output = econ.output(&EconomyState::new(year, capital, gamma)?);
        let q = capital / output;
        // Output shrinks as capability inflates the automated weight, and can underflow.
        if !(output > 0.0 && output <= OVERFLOW_GUARD && q.is_finite()) {
            truncated = true;
            break;
        }
        let share = econ.capital_share(gamma, q, year)?;
        records.push(PathRecord {
            year,
            productivity: econ.productivity(year),
            gamma,
            capital,
            output,
            q,
            capital_share: share,
            public_rent_ratio: fiscal.net_capture() * share,
            gamma_star: gamma_star(econ, fiscal, year).gamma_star,
            solvent: is_solvent(econ, fiscal, gamma, year)?,
        });
        capital = econ.solow_step(capital, output);
        if !(capital > 0.0) {
            truncated = true;
            break;
        }
    }
    Ok(SimulationPath { records, truncated })
}

/// `n` applications of the ratio map, returned with the starting value first.
pub fn q_iterate(econ: &EconomyParams, q0: f64, n: usize) -> Result<Vec<f64>> {
    if !(q0 > 0.0 && q0.is_finite()) {
        return Err(Error::single("q0", q0, "q0 > 0"));
    }
    Ok(std::iter::successors(Some(q0), |&q| Some(econ.q_update(q)))
        .take(n + 1)
        .collect())
}
