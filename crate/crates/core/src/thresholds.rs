//! Capability thresholds at which public capture of capital rents covers a
//! transfer worth a fixed share of output.
//!
//! The competitive threshold is `gamma* = Z^sigma` with
//! `Z = (B/Y) / (phi Theta (1 - c) alpha_bar^(1-rho) A^rho kappa^rho)`, evaluated
//! at the steady-state capital-output ratio. Oligopoly pricing adds a pure
//! profit share `theta / epsilon` to the public rent base and lowers the bar.

use serde::{Deserialize, Serialize};

use crate::economy::EconomyParams;
use crate::error::{Checker, Error, Result};

/// Relative slack applied to the budget comparison in [`is_solvent`] so that
/// evaluating exactly at the threshold is not lost to rounding.
pub const BOUNDARY_RTOL: f64 = 1e-12;

/// Tolerance on the sum of market shares.
pub const SHARE_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiscalInputs {
    pub theta_pub: f64,
    pub c: f64,
    pub b_ratio: f64,
    #[serde(default = "full_capture")]
    pub phi: f64,
}

fn full_capture() -> f64 {
    1.0
}

impl FiscalInputs {
    pub(crate) fn check(&self) -> Checker {
        let mut c = Checker::default();
        c.require(
            self.theta_pub > 0.0 && self.theta_pub <= 1.0,
            "theta_pub",
            self.theta_pub,
            "0 < theta_pub <= 1",
        );
        c.require(self.c >= 0.0 && self.c < 1.0, "c", self.c, "0 <= c < 1");
        c.require(self.b_ratio > 0.0 && self.b_ratio.is_finite(), "b_ratio", self.b_ratio, "b_ratio > 0");
        c.require(self.phi > 0.0 && self.phi <= 1.0, "phi", self.phi, "0 < phi <= 1");
        c
    }
}

/// Validated policy block: public share, operating-cost share, transfer ratio
/// and profit-capture rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FiscalInputs", into = "FiscalInputs")]
pub struct FiscalParams {
    inputs: FiscalInputs,
}

impl TryFrom<FiscalInputs> for FiscalParams {
    type Error = Error;

    fn try_from(inputs: FiscalInputs) -> Result<Self> {
        Self::new(inputs)
    }
}

impl From<FiscalParams> for FiscalInputs {
    fn from(p: FiscalParams) -> Self {
        p.inputs
    }
}

impl FiscalParams {
    pub fn new(inputs: FiscalInputs) -> Result<Self> {
        inputs.check().finish()?;
        Ok(Self { inputs })
    }

    pub fn with(&self, edit: impl FnOnce(&mut FiscalInputs)) -> Result<Self> {
        let mut inputs = self.inputs;
        edit(&mut inputs);
        Self::new(inputs)
    }

    pub fn inputs(&self) -> FiscalInputs {
        self.inputs
    }
    pub fn theta_pub(&self) -> f64 {
        self.inputs.theta_pub
    }
    pub fn c(&self) -> f64 {
        self.inputs.c
    }
    pub fn b_ratio(&self) -> f64 {
        self.inputs.b_ratio
    }
    pub fn phi(&self) -> f64 {
        self.inputs.phi
    }

    /// Fraction of gross capital income that reaches the public budget.
    pub fn net_capture(&self) -> f64 {
        self.inputs.phi * self.inputs.theta_pub * (1.0 - self.inputs.c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarketInputs {
    pub epsilon: f64,
    pub conduct: f64,
}

/// Demand elasticity (absolute value) and conduct parameter of the AI-capital sector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MarketInputs", into = "MarketInputs")]
pub struct MarketStructure {
    inputs: MarketInputs,
}

impl TryFrom<MarketInputs> for MarketStructure {
    type Error = Error;

    fn try_from(inputs: MarketInputs) -> Result<Self> {
        Self::new(inputs.epsilon, inputs.conduct)
    }
}

impl From<MarketStructure> for MarketInputs {
    fn from(m: MarketStructure) -> Self {
        m.inputs
    }
}

impl MarketStructure {
    /// Negative elasticities are rejected rather than negated.
    pub fn new(epsilon: f64, conduct: f64) -> Result<Self> {
        let inputs = MarketInputs { epsilon, conduct };
        inputs.check().finish()?;
        Ok(Self { inputs })
    }

    pub fn competitive(epsilon: f64) -> Result<Self> {
        Self::new(epsilon, 0.0)
    }

    /// `m` symmetric Cournot firms, conduct `1/m`.
    pub fn symmetric(epsilon: f64, firms: u32) -> Result<Self> {
        if firms == 0 {
            return Err(Error::single("m", 0.0, "m >= 1"));
        }
        Self::new(epsilon, 1.0 / f64::from(firms))
    }

    pub fn from_shares(epsilon: f64, shares: &[f64]) -> Result<Self> {
        Self::new(epsilon, conduct_from_shares(shares)?)
    }

    pub fn inputs(&self) -> MarketInputs {
        self.inputs
    }
    pub fn epsilon(&self) -> f64 {
        self.inputs.epsilon
    }
    pub fn conduct(&self) -> f64 {
        self.inputs.conduct
    }

    /// Lerner index `theta / epsilon`, the pure-profit share of output.
    pub fn lerner(&self) -> f64 {
        self.inputs.conduct / self.inputs.epsilon
    }
}

impl MarketInputs {
    pub(crate) fn check(&self) -> Checker {
        let mut c = Checker::default();
        c.require(
            self.epsilon > 0.0 && self.epsilon.is_finite(),
            "epsilon",
            self.epsilon,
            "epsilon > 0 (absolute elasticity)",
        );
        c.require(
            (0.0..=1.0).contains(&self.conduct),
            "conduct",
            self.conduct,
            "0 <= conduct <= 1",
        );
        c
    }
}

/// Herfindahl-type conduct parameter `sum s_i^2`.
pub fn conduct_from_shares(shares: &[f64]) -> Result<f64> {
    let mut c = Checker::default();
    for &s in shares {
        c.require(s >= 0.0 && s.is_finite(), "share", s, "share >= 0");
    }
    c.finish()?;
    let sum: f64 = shares.iter().sum();
    if (sum - 1.0).abs() > SHARE_SUM_TOL {
        return Err(Error::SharesSum { sum });
    }
    Ok(shares.iter().map(|s| s * s).sum())
}

/// Threshold evaluation at one year, with the pieces that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub year: f64,
    /// Reported threshold, never below 1.
    pub gamma_star: f64,
    /// Closed-form value before clamping; `None` when the oligopoly base is non-positive.
    pub unclamped: Option<f64>,
    pub z_factor: f64,
    /// `phi Theta (1 - c) alpha_bar^(1-rho) A^rho kappa^rho`.
    pub rent_denominator: f64,
    /// `(theta / epsilon) / (alpha_bar^(1-rho) A^rho kappa^rho)`, zero when competitive.
    pub profit_offset: f64,
    pub always_solvent: bool,
}

/// Capital share per unit of `gamma^(1-rho)`: `alpha_bar^(1-rho) A^rho kappa^rho`.
pub fn rent_scale(econ: &EconomyParams, kappa: f64, year: f64) -> f64 {
    econ.capital_share_unchecked(1.0, kappa, year)
}

pub fn z_factor(econ: &EconomyParams, fiscal: &FiscalParams, year: f64) -> f64 {
    fiscal.b_ratio() / (fiscal.net_capture() * rent_scale(econ, econ.steady_state_kappa(), year))
}

/// Competitive threshold at the steady-state capital-output ratio.
pub fn gamma_star(econ: &EconomyParams, fiscal: &FiscalParams, year: f64) -> ThresholdReport {
    gamma_star_at(econ, fiscal, econ.steady_state_kappa(), year)
}

/// Competitive threshold at an explicit capital-output ratio, for sensitivity work.
pub fn gamma_star_with_kappa(
    econ: &EconomyParams,
    fiscal: &FiscalParams,
    kappa: f64,
    year: f64,
) -> Result<ThresholdReport> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::single("kappa", kappa, "kappa > 0"));
    }
    Ok(gamma_star_at(econ, fiscal, kappa, year))
}

fn gamma_star_at(econ: &EconomyParams, fiscal: &FiscalParams, kappa: f64, year: f64) -> ThresholdReport {
    let denom = fiscal.net_capture() * rent_scale(econ, kappa, year);
    let z = fiscal.b_ratio() / denom;
    let raw = z.powf(econ.sigma());
    ThresholdReport {
        year,
        gamma_star: raw.max(1.0),
        unclamped: Some(raw),
        z_factor: z,
        rent_denominator: denom,
        profit_offset: 0.0,
        always_solvent: raw <= 1.0,
    }
}

/// Threshold when the AI-capital sector earns Cournot markups.
pub fn gamma_star_oligo(
    econ: &EconomyParams,
    fiscal: &FiscalParams,
    market: &MarketStructure,
    year: f64,
) -> ThresholdReport {
    let scale = rent_scale(econ, econ.steady_state_kappa(), year);
    let denom = fiscal.net_capture() * scale;
    let z = fiscal.b_ratio() / denom;
    let offset = market.lerner() / scale;
    let base = z - offset;
    let unclamped = (base > 0.0).then(|| base.powf(econ.sigma()));
    let always_solvent = unclamped.is_none_or(|v| v <= 1.0);
    ThresholdReport {
        year,
        gamma_star: unclamped.map_or(1.0, |v| v.max(1.0)),
        unclamped,
        z_factor: z,
        rent_denominator: denom,
        profit_offset: offset,
        always_solvent,
    }
}

/// Whether net public rent at capability `gamma` covers the transfer share.
pub fn is_solvent(econ: &EconomyParams, fiscal: &FiscalParams, gamma: f64, year: f64) -> Result<bool> {
    let share = econ.capital_share(gamma, econ.steady_state_kappa(), year)?;
    Ok(fiscal.net_capture() * share >= fiscal.b_ratio() * (1.0 - BOUNDARY_RTOL))
}

/// First-order sensitivities of the unclamped competitive threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Elasticities {
    pub gamma_star: f64,
    pub d_theta: f64,
    pub d_c: f64,
    pub d_s: f64,
    pub d_sigma: f64,
    /// False when the reported threshold is clamped at 1; the derivatives then
    /// describe the closed form only, not the reported value.
    pub interior: bool,
}

impl Elasticities {
    /// Bracketed coefficient on `d sigma` in the log-differential.
    pub fn sigma_coefficient(&self) -> f64 {
        self.d_sigma / self.gamma_star
    }
}

pub fn elasticities(econ: &EconomyParams, fiscal: &FiscalParams, year: f64) -> Elasticities {
    let report = gamma_star(econ, fiscal, year);
    let g = report.unclamped.expect("competitive threshold is always finite");
    let sigma = econ.sigma();
    let rho = econ.rho();
    Elasticities {
        gamma_star: g,
        d_theta: -g * sigma / fiscal.theta_pub(),
        d_c: g * sigma / (1.0 - fiscal.c()),
        d_s: -g * sigma * rho / econ.s(),
        d_sigma: g * sigma_log_coefficient(econ, report.z_factor, year),
        interior: !report.always_solvent,
    }
}

fn sigma_log_coefficient(econ: &EconomyParams, z: f64, year: f64) -> f64 {
    let weakest_link = econ.alpha_bar() / (econ.productivity(year) * econ.steady_state_kappa());
    z.ln() + weakest_link.ln() / econ.sigma()
}

/// Small changes in the four threshold drivers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    pub d_theta: f64,
    pub d_c: f64,
    pub d_s: f64,
    pub d_sigma: f64,
}

/// First-order relative change `d gamma* / gamma*` for the given perturbation.
pub fn log_differential(econ: &EconomyParams, fiscal: &FiscalParams, year: f64, dx: Perturbation) -> f64 {
    let sigma = econ.sigma();
    let z = z_factor(econ, fiscal, year);
    -sigma * dx.d_theta / fiscal.theta_pub() + sigma * dx.d_c / (1.0 - fiscal.c())
        - sigma * econ.rho() * dx.d_s / econ.s()
        + sigma_log_coefficient(econ, z, year) * dx.d_sigma
}

/// Thresholds of two economies that differ only in their public share.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountryGap {
    /// `C_t`, the threshold at a public share of one.
    pub common_factor: f64,
    pub threshold_low_share: f64,
    pub threshold_high_share: f64,
    pub gap: f64,
}

/// Threshold gap between a low-share economy `theta1` and a high-share
/// economy `theta2`. The profit-capture rate of `fiscal` applies to both.
pub fn cross_country_gap(
    econ: &EconomyParams,
    fiscal: &FiscalParams,
    theta1: f64,
    theta2: f64,
    year: f64,
) -> Result<CountryGap> {
    let mut c = Checker::default();
    c.require(theta1 > 0.0 && theta1 <= 1.0, "theta1", theta1, "0 < theta1 <= 1");
    c.require(theta2 > 0.0 && theta2 <= 1.0, "theta2", theta2, "0 < theta2 <= 1");
    c.finish()?;
    if theta1 >= theta2 {
        return Err(Error::ShareOrdering { theta1, theta2 });
    }
    let sigma = econ.sigma();
    let scale = rent_scale(econ, econ.steady_state_kappa(), year);
    let common = (fiscal.b_ratio() / (fiscal.phi() * (1.0 - fiscal.c()) * scale)).powf(sigma);
    let low = common * theta1.powf(-sigma);
    let high = common * theta2.powf(-sigma);
    Ok(CountryGap {
        common_factor: common,
        threshold_low_share: low,
        threshold_high_share: high,
        gap: common * (theta1.powf(-sigma) - theta2.powf(-sigma)),
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::economy::tests::baseline;

    pub(crate) fn fiscal() -> FiscalParams {
        FiscalParams::new(FiscalInputs { theta_pub: 0.145, c: 0.6, b_ratio: 0.11, phi: 1.0 }).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    /// Factor-by-factor evaluation kept apart from the library path.
    fn z_by_hand(theta: f64, c: f64, b: f64, year: f64) -> f64 {
        let sigma: f64 = 0.66;
        let rho = (sigma - 1.0) / sigma;
        let kappa = 0.22 / (0.011f64.exp() - 1.0 + 0.056);
        let a_t = 1.068 * (0.011 * (year - 2024.0)).exp();
        let alpha_term = 0.42f64.powf(1.0 - rho);
        let a_term = a_t.powf(rho);
        let k_term = kappa.powf(rho);
        b / (theta * (1.0 - c) * alpha_term * a_term * k_term)
    }

    #[test]
    fn z_factor_baseline() {
        let z = z_factor(&baseline(), &fiscal(), 2025.0);
        assert!(rel(z, z_by_hand(0.145, 0.6, 0.11, 2025.0)) < 1e-13);
        assert!((z - 13.545).abs() < 1e-3, "{z}");
        let half = fiscal().with(|f| f.theta_pub = 0.0725).unwrap();
        assert!(rel(z_factor(&baseline(), &half, 2025.0), 2.0 * z) < 1e-14);
    }

    #[test]
    fn unit_z_gives_unit_threshold() {
        let econ = baseline();
        let denom = gamma_star(&econ, &fiscal(), 2025.0).rent_denominator;
        let f = fiscal().with(|f| f.b_ratio = denom).unwrap();
        let r = gamma_star(&econ, &f, 2025.0);
        assert!((r.z_factor - 1.0).abs() < 1e-14);
        assert_eq!(r.gamma_star, 1.0);
        assert!(r.always_solvent);
    }

    #[test]
    fn baseline_threshold_and_cost_regimes() {
        let econ = baseline();
        let g = gamma_star(&econ, &fiscal(), 2025.0).gamma_star;
        assert!(g > 5.0 && g < 6.0, "{g}");
        let at = |theta: f64, c: f64| {
            gamma_star(&econ, &fiscal().with(|f| {
                f.theta_pub = theta;
                f.c = c;
            }).unwrap(), 2025.0)
            .gamma_star
        };
        assert_eq!(at(0.145, 0.5).round(), 5.0);
        assert_eq!(at(0.145, 0.75).round(), 8.0);
        assert_eq!(at(1.0 / 3.0, 0.5).round(), 3.0);
        assert!((at(1.0 / 3.0, 0.75) - 5.0).abs() < 0.61);
    }

    #[test]
    fn clamping_keeps_unclamped_value() {
        let econ = baseline();
        let f = fiscal().with(|f| {
            f.b_ratio = 0.001;
            f.theta_pub = 1.0;
        })
        .unwrap();
        let r = gamma_star(&econ, &f, 2025.0);
        assert_eq!(r.gamma_star, 1.0);
        assert!(r.always_solvent);
        assert!(r.unclamped.unwrap() < 1.0);
        assert!(!elasticities(&econ, &f, 2025.0).interior);
    }

    #[test]
    fn solvency_boundary() {
        let econ = baseline();
        let g = gamma_star(&econ, &fiscal(), 2025.0).gamma_star;
        assert!(is_solvent(&econ, &fiscal(), g, 2025.0).unwrap());
        assert!(!is_solvent(&econ, &fiscal(), g * (1.0 - 1e-9), 2025.0).unwrap());
        assert!(is_solvent(&econ, &fiscal(), 8.0, 2025.0).unwrap());
        assert!(!is_solvent(&econ, &fiscal(), 5.0, 2025.0).unwrap());
        assert!(is_solvent(&econ, &fiscal(), 0.5, 2025.0).is_err());
    }

    #[test]
    fn elasticity_closed_forms_match_finite_differences() {
        let econ = baseline();
        let f = fiscal();
        let e = elasticities(&econ, &f, 2025.0);
        assert!(e.interior);
        assert!(e.d_theta < 0.0 && e.d_c > 0.0 && e.d_s > 0.0);
        assert!(rel(e.d_theta, -e.gamma_star * 0.66 / 0.145) < 1e-14);
        assert!(rel(e.d_c, e.gamma_star * 0.66 / 0.4) < 1e-14);

        let g = |econ: &EconomyParams, f: &FiscalParams| gamma_star(econ, f, 2025.0).unclamped.unwrap();
        let h = 1e-6;
        let fd_theta = (g(&econ, &f.with(|x| x.theta_pub *= 1.0 + h).unwrap())
            - g(&econ, &f.with(|x| x.theta_pub *= 1.0 - h).unwrap()))
            / (2.0 * h * 0.145);
        let fd_c = (g(&econ, &f.with(|x| x.c *= 1.0 + h).unwrap()) - g(&econ, &f.with(|x| x.c *= 1.0 - h).unwrap()))
            / (2.0 * h * 0.6);
        let fd_s = (g(&econ.with(|x| x.s *= 1.0 + h).unwrap(), &f) - g(&econ.with(|x| x.s *= 1.0 - h).unwrap(), &f))
            / (2.0 * h * 0.22);
        let fd_sigma = (g(&econ.with(|x| x.sigma *= 1.0 + h).unwrap(), &f)
            - g(&econ.with(|x| x.sigma *= 1.0 - h).unwrap(), &f))
            / (2.0 * h * 0.66);
        assert!(rel(e.d_theta, fd_theta) < 1e-4);
        assert!(rel(e.d_c, fd_c) < 1e-4);
        assert!(rel(e.d_s, fd_s) < 1e-4);
        assert!(rel(e.d_sigma, fd_sigma) < 1e-4);
    }

    #[test]
    fn log_differential_examples() {
        let econ = baseline();
        let f = fiscal();
        assert_eq!(log_differential(&econ, &f, 2025.0, Perturbation::default()), 0.0);
        let d = log_differential(&econ, &f, 2025.0, Perturbation { d_theta: 0.01 * 0.145, ..Default::default() });
        assert!(rel(d, -0.01 * 0.66) < 1e-14);

        // Equal relative increases in Theta and (1 - c) move ln gamma* equally.
        let up_theta = log_differential(&econ, &f, 2025.0, Perturbation { d_theta: 0.01 * 0.145, ..Default::default() });
        let up_one_minus_c = log_differential(&econ, &f, 2025.0, Perturbation { d_c: -0.01 * 0.4, ..Default::default() });
        assert!(rel(up_theta, up_one_minus_c) < 1e-14);

        let ds = 1e-4;
        let base = gamma_star(&econ, &f, 2025.0).unclamped.unwrap();
        let bumped = gamma_star(&econ.with(|x| x.sigma += ds).unwrap(), &f, 2025.0).unclamped.unwrap();
        let fd = bumped.ln() - base.ln();
        let d = log_differential(&econ, &f, 2025.0, Perturbation { d_sigma: ds, ..Default::default() });
        assert!(rel(d, fd) < 1e-3, "{d} vs {fd}");
    }

    #[test]
    fn conduct_examples() {
        assert_eq!(conduct_from_shares(&[1.0]).unwrap(), 1.0);
        assert!((conduct_from_shares(&[0.2; 5]).unwrap() - 0.2).abs() < 1e-15);
        assert!((conduct_from_shares(&[0.5, 0.3, 0.2]).unwrap() - 0.38).abs() < 1e-15);
        match conduct_from_shares(&[0.5, 0.3]) {
            Err(Error::SharesSum { sum }) => assert!((sum - 0.8).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        assert!(conduct_from_shares(&[1.2, -0.2]).is_err());
        assert!(conduct_from_shares(&[]).is_err());
    }

    #[test]
    fn market_validation() {
        assert!(MarketStructure::new(-1.0, 0.5).is_err());
        assert!(MarketStructure::new(1.0, 1.5).is_err());
        assert!(MarketStructure::symmetric(1.0, 0).is_err());
        let m = MarketStructure::new(2.0, 0.5).unwrap();
        assert_eq!(m.lerner(), 0.25);
    }

    #[test]
    fn oligopoly_threshold() {
        let econ = baseline();
        let comp = gamma_star(&econ, &fiscal(), 2025.0);
        let zero = gamma_star_oligo(&econ, &fiscal(), &MarketStructure::competitive(1.0).unwrap(), 2025.0);
        assert_eq!(zero.gamma_star, comp.gamma_star);
        assert_eq!(zero.unclamped, comp.unclamped);

        let mono = gamma_star_oligo(&econ, &fiscal(), &MarketStructure::new(1.0, 1.0).unwrap(), 2025.0);
        // Z - 1/scale, raised to sigma; frozen from the by-hand factors above.
        let scale = z_by_hand(1.0, 0.0, 1.0, 2025.0).recip();
        let expect = (z_by_hand(0.145, 0.6, 0.11, 2025.0) - 1.0 / scale).powf(0.66);
        assert!(rel(mono.gamma_star, expect) < 1e-12);
        assert!((mono.gamma_star - 3.406).abs() < 1e-3, "{}", mono.gamma_star);
        assert!(mono.gamma_star < comp.gamma_star);

        let mut last = 0.0;
        for m in 1..=10 {
            let r = gamma_star_oligo(&econ, &fiscal(), &MarketStructure::symmetric(1.0, m).unwrap(), 2025.0);
            assert!(r.gamma_star > last && r.gamma_star < comp.gamma_star);
            last = r.gamma_star;
        }
    }

    #[test]
    fn oligopoly_non_positive_base() {
        let econ = baseline();
        let f = fiscal().with(|f| f.b_ratio = 0.01).unwrap();
        let r = gamma_star_oligo(&econ, &f, &MarketStructure::new(0.5, 1.0).unwrap(), 2025.0);
        assert!(r.unclamped.is_none());
        assert!(r.always_solvent);
        assert_eq!(r.gamma_star, 1.0);
    }

    #[test]
    fn profit_capture_scaling() {
        let econ = baseline();
        let full = gamma_star(&econ, &fiscal(), 2025.0).unclamped.unwrap();
        let leaky = gamma_star(&econ, &fiscal().with(|f| f.phi = 0.7).unwrap(), 2025.0).unclamped.unwrap();
        assert!(rel(leaky / full, 0.7f64.powf(-0.66)) < 1e-12);
    }

    #[test]
    fn cross_country_examples() {
        let econ = baseline();
        let gap = cross_country_gap(&econ, &fiscal(), 0.145, 1.0 / 3.0, 2025.0).unwrap();
        let direct = |theta: f64| gamma_star(&econ, &fiscal().with(|f| f.theta_pub = theta).unwrap(), 2025.0).unclamped.unwrap();
        assert!(rel(gap.threshold_low_share, direct(0.145)) < 1e-10);
        assert!(rel(gap.threshold_high_share, direct(1.0 / 3.0)) < 1e-10);
        assert!(gap.gap > 0.0);
        assert!(rel(gap.gap, direct(0.145) - direct(1.0 / 3.0)) < 1e-10);

        let doubled = cross_country_gap(&econ, &fiscal(), 0.29, 2.0 / 3.0, 2025.0).unwrap();
        let k = 2f64.powf(-0.66);
        assert!(rel(doubled.threshold_low_share, k * gap.threshold_low_share) < 1e-12);
        assert!(rel(doubled.threshold_high_share, k * gap.threshold_high_share) < 1e-12);
        assert!(doubled.gap > 0.0);

        assert!(matches!(
            cross_country_gap(&econ, &fiscal(), 0.3, 0.3, 2025.0),
            Err(Error::ShareOrdering { .. })
        ));
        assert!(cross_country_gap(&econ, &fiscal(), 0.5, 0.3, 2025.0).is_err());
    }

    #[test]
    fn fiscal_validation_names_every_bound() {
        let err = FiscalParams::new(FiscalInputs { theta_pub: 0.0, c: 1.0, b_ratio: -0.1, phi: 1.5 }).unwrap_err();
        let msg = err.to_string();
        for bound in ["0 < theta_pub <= 1", "0 <= c < 1", "b_ratio > 0", "0 < phi <= 1"] {
            assert!(msg.contains(bound), "{msg}");
        }
    }
}
