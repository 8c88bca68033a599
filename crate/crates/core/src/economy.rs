//! CES task-automation technology with an AI capability shifter.
//!
//! Output aggregates a fixed share `alpha_bar` of automated tasks run on capital
//! and the remaining tasks run on labor, with elasticity of substitution
//! `sigma < 1` (gross complements). Capability `gamma` scales the CES weight of
//! the automated block, so it enters as `gamma^(1 - rho)` rather than being
//! crushed by `rho < 0`. Allocation across tasks is always the uniform one, which
//! lets the task integral collapse to a two-block aggregate.

use serde::{Deserialize, Serialize};

use crate::error::{Checker, Error, Result};

/// CES curvature `(sigma - 1) / sigma` for an elasticity of substitution in (0, 1).
pub fn rho_of(sigma: f64) -> Result<f64> {
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(Error::single("sigma", sigma, "0 < sigma < 1"));
    }
    Ok((sigma - 1.0) / sigma)
}

/// Unchecked technology and preference inputs, as they appear in config files.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EconomyInputs {
    pub s: f64,
    pub g: f64,
    pub delta: f64,
    pub alpha_bar: f64,
    pub sigma: f64,
    #[serde(rename = "A0")]
    pub a0: f64,
    pub base_year: f64,
    #[serde(rename = "L")]
    pub labor: f64,
}

impl EconomyInputs {
    pub(crate) fn check(&self) -> Checker {
        let mut c = Checker::default();
        c.require(self.s > 0.0 && self.s < 1.0, "s", self.s, "0 < s < 1");
        c.require(self.g >= 0.0 && self.g.is_finite(), "g", self.g, "g >= 0");
        c.require(self.delta > 0.0 && self.delta <= 1.0, "delta", self.delta, "0 < delta <= 1");
        c.require(
            self.alpha_bar > 0.0 && self.alpha_bar < 1.0,
            "alpha_bar",
            self.alpha_bar,
            "0 < alpha_bar < 1",
        );
        c.require(self.sigma > 0.0 && self.sigma < 1.0, "sigma", self.sigma, "0 < sigma < 1");
        c.require(self.a0 > 0.0 && self.a0.is_finite(), "A0", self.a0, "A0 > 0");
        c.require(self.base_year.is_finite(), "base_year", self.base_year, "finite year");
        c.require(self.labor > 0.0 && self.labor.is_finite(), "L", self.labor, "L > 0");
        c
    }
}

/// Validated technology block. Construct through [`EconomyParams::new`]; the
/// curvature `rho` is always derived from `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "EconomyInputs", into = "EconomyInputs")]
pub struct EconomyParams {
    inputs: EconomyInputs,
}

impl TryFrom<EconomyInputs> for EconomyParams {
    type Error = Error;

    fn try_from(inputs: EconomyInputs) -> Result<Self> {
        Self::new(inputs)
    }
}

impl From<EconomyParams> for EconomyInputs {
    fn from(p: EconomyParams) -> Self {
        p.inputs
    }
}

impl EconomyParams {
    pub fn new(inputs: EconomyInputs) -> Result<Self> {
        inputs.check().finish()?;
        Ok(Self { inputs })
    }

    /// Copy with some inputs changed; the result is revalidated.
    pub fn with(&self, edit: impl FnOnce(&mut EconomyInputs)) -> Result<Self> {
        let mut inputs = self.inputs;
        edit(&mut inputs);
        Self::new(inputs)
    }

    pub fn inputs(&self) -> EconomyInputs {
        self.inputs
    }

    pub fn s(&self) -> f64 {
        self.inputs.s
    }
    pub fn g(&self) -> f64 {
        self.inputs.g
    }
    pub fn delta(&self) -> f64 {
        self.inputs.delta
    }
    pub fn alpha_bar(&self) -> f64 {
        self.inputs.alpha_bar
    }
    pub fn sigma(&self) -> f64 {
        self.inputs.sigma
    }
    pub fn a0(&self) -> f64 {
        self.inputs.a0
    }
    pub fn base_year(&self) -> f64 {
        self.inputs.base_year
    }
    pub fn labor(&self) -> f64 {
        self.inputs.labor
    }

    pub fn rho(&self) -> f64 {
        let sigma = self.inputs.sigma;
        (sigma - 1.0) / sigma
    }

    /// Hicks-neutral productivity `A0 * exp(g * (year - base_year))`.
    /// Years before the base year extrapolate backwards.
    pub fn productivity(&self, year: f64) -> f64 {
        self.inputs.a0 * (self.inputs.g * (year - self.inputs.base_year)).exp()
    }

    /// Weight of the automated block before capability: `alpha_bar^(1 - rho)`.
    pub fn automated_weight(&self) -> f64 {
        self.inputs.alpha_bar.powf(1.0 - self.rho())
    }

    /// Weight of the human block: `(1 - alpha_bar)^(1 - rho)`.
    pub fn labor_weight(&self) -> f64 {
        (1.0 - self.inputs.alpha_bar).powf(1.0 - self.rho())
    }

    /// Aggregate output at the given state.
    pub fn output(&self, state: &EconomyState) -> f64 {
        self.aggregate(state, self.inputs.labor)
    }

    /// Output with effective labor `psi * L` in the human block.
    pub fn output_augmented(&self, state: &EconomyState, psi: f64) -> Result<f64> {
        if !(psi >= 1.0 && psi.is_finite()) {
            return Err(Error::single("psi", psi, "psi >= 1"));
        }
        Ok(self.aggregate(state, psi * self.inputs.labor))
    }

    fn aggregate(&self, state: &EconomyState, effective_labor: f64) -> f64 {
        let rho = self.rho();
        let automated = self.automated_weight() * state.gamma.powf(1.0 - rho) * state.capital.powf(rho);
        let human = self.labor_weight() * effective_labor.powf(rho);
        self.productivity(state.year) * (automated + human).powf(1.0 / rho)
    }

    /// Limit of output as capital grows without bound: `A (1 - alpha_bar)^((1-rho)/rho) L`.
    pub fn output_ceiling(&self, year: f64) -> f64 {
        let rho = self.rho();
        self.productivity(year) * (1.0 - self.inputs.alpha_bar).powf((1.0 - rho) / rho) * self.inputs.labor
    }

    /// Capital income share `r K / Y` at capability `gamma` and capital-output ratio `kappa`.
    pub fn capital_share(&self, gamma: f64, kappa: f64, year: f64) -> Result<f64> {
        let mut c = Checker::default();
        c.require(gamma >= 1.0 && gamma.is_finite(), "gamma", gamma, "gamma >= 1");
        c.require(kappa > 0.0 && kappa.is_finite(), "kappa", kappa, "kappa > 0");
        c.finish()?;
        Ok(self.capital_share_unchecked(gamma, kappa, year))
    }

    pub(crate) fn capital_share_unchecked(&self, gamma: f64, kappa: f64, year: f64) -> f64 {
        let rho = self.rho();
        self.automated_weight() * gamma.powf(1.0 - rho) * self.productivity(year).powf(rho) * kappa.powf(rho)
    }

    /// Solow limit of the capital-output ratio, `s / (e^g - 1 + delta)`.
    pub fn steady_state_kappa(&self) -> f64 {
        self.inputs.s / (self.inputs.g.exp_m1() + self.inputs.delta)
    }

    /// Next-period capital `s Y + (1 - delta) K`.
    pub fn solow_step(&self, capital: f64, output: f64) -> f64 {
        self.inputs.s * output + (1.0 - self.inputs.delta) * capital
    }

    /// Slope of the capital-output ratio map, `(1 - delta) / e^g`.
    pub fn contraction_factor(&self) -> f64 {
        (1.0 - self.inputs.delta) / self.inputs.g.exp()
    }

    /// One step of the balanced-growth ratio map `q -> (s + (1 - delta) q) / e^g`.
    pub fn q_update(&self, q: f64) -> f64 {
        (self.inputs.s + (1.0 - self.inputs.delta) * q) / self.inputs.g.exp()
    }
}

/// Capital stock and capability at a (possibly fractional) calendar year.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EconomyState {
    pub year: f64,
    pub capital: f64,
    pub gamma: f64,
}

impl EconomyState {
    pub fn new(year: f64, capital: f64, gamma: f64) -> Result<Self> {
        let mut c = Checker::default();
        c.require(year.is_finite(), "year", year, "finite year");
        c.require(capital > 0.0 && capital.is_finite(), "K", capital, "K > 0");
        c.require(gamma >= 1.0 && gamma.is_finite(), "gamma", gamma, "gamma >= 1");
        c.finish()?;
        Ok(Self { year, capital, gamma })
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn baseline() -> EconomyParams {
        EconomyParams::new(EconomyInputs {
            s: 0.22,
            g: 0.011,
            delta: 0.056,
            alpha_bar: 0.42,
            sigma: 0.66,
            a0: 1.068,
            base_year: 2024.0,
            labor: 1.0,
        })
        .unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn rho_examples() {
        assert!((rho_of(0.66).unwrap() - (-0.515_151_515_151_515_1)).abs() < 1e-15);
        assert_eq!(rho_of(0.5).unwrap(), -1.0);
        let near_one = rho_of(1.0 - 1e-12).unwrap();
        assert!(near_one < 0.0 && near_one > -1e-11);
        for bad in [0.0, 1.0, 1.2, -0.3, f64::NAN] {
            let err = rho_of(bad).unwrap_err();
            assert!(err.to_string().contains("0 < sigma < 1"), "{err}");
        }
    }

    #[test]
    fn sigma_identity_holds() {
        for sigma in [0.05, 0.3, 0.45, 0.66, 0.87, 0.99] {
            let rho = rho_of(sigma).unwrap();
            assert!((1.0 / (1.0 - rho) - sigma).abs() < 1e-15);
        }
    }

    #[test]
    fn productivity_examples() {
        let p = baseline();
        assert_eq!(p.productivity(2024.0), 1.068);
        // 1.068 * e^0.011
        assert!((p.productivity(2025.0) - 1.079_812_851_570_960_4).abs() < 1e-12);
        let flat = p.with(|i| i.g = 0.0).unwrap();
        assert_eq!(flat.productivity(2090.5), 1.068);
        assert_eq!(flat.productivity(1990.0), 1.068);
    }

    #[test]
    fn equalized_inputs_give_unit_output() {
        // Both blocks carry weight share^(1 - rho), so K = alpha_bar and
        // L = 1 - alpha_bar put one unit of input on every task.
        let p = baseline().with(|i| {
            i.a0 = 1.0;
            i.g = 0.0;
            i.labor = 1.0 - 0.42;
        })
        .unwrap();
        let y = p.output(&EconomyState::new(2030.0, p.alpha_bar(), 1.0).unwrap());
        assert!((y - 1.0).abs() < 1e-14, "{y}");
        let scaled = p.with(|i| i.a0 = 2.5).unwrap();
        assert!((scaled.output(&EconomyState::new(2030.0, 0.42, 1.0).unwrap()) - 2.5).abs() < 1e-14);
    }

    #[test]
    fn joint_scaling_examples() {
        let p = baseline();
        let state = EconomyState::new(2031.0, 3.7, 2.5).unwrap();
        let y = p.output(&state);
        for big_g in [2.0_f64, 10.0] {
            let scaled = EconomyState::new(
                2031.0,
                3.7 * big_g.powf(1.0 / (1.0 - p.sigma())),
                2.5 * big_g,
            )
            .unwrap();
            assert!(rel(p.output(&scaled), y) < 1e-12);
        }
    }

    #[test]
    fn augmented_output() {
        let p = baseline();
        let st = EconomyState::new(2025.0, 3.0, 1.0).unwrap();
        assert_eq!(p.output_augmented(&st, 1.0).unwrap(), p.output(&st));
        let y114 = p.output_augmented(&st, 1.14).unwrap();
        let y14 = p.output_augmented(&st, 1.4).unwrap();
        assert!(y14 > y114 && y114 > p.output(&st));
        assert!(p.output_augmented(&st, 0.9).is_err());
    }

    #[test]
    fn capital_share_baseline() {
        let p = baseline();
        let kappa = p.steady_state_kappa();
        let r = p.capital_share(1.0, kappa, 2025.0).unwrap();
        // Frozen from a separate factor-by-factor evaluation.
        assert!((r - 0.140_020_410_676_890_2).abs() < 1e-12, "{r}");
        let r2 = p.capital_share(2.0, kappa, 2025.0).unwrap();
        assert!(rel(r2 / r, 2f64.powf(1.0 - p.rho())) < 1e-14);
        assert!(p.capital_share(1.0, 0.0, 2025.0).is_err());
        assert!(p.capital_share(0.5, 1.0, 2025.0).is_err());
    }

    #[test]
    fn steady_state_examples() {
        let p = baseline();
        assert!(rel(p.steady_state_kappa(), 0.22 / (0.011f64.exp() - 1.0 + 0.056)) < 1e-13);
        assert!((p.steady_state_kappa() - 3.280_608_856_866_31).abs() < 1e-12);
        let q = p.with(|i| {
            i.g = 0.0;
            i.s = 0.2;
            i.delta = 0.1;
        })
        .unwrap();
        assert_eq!(q.steady_state_kappa(), 2.0);
        let thrifty = p.with(|i| i.s = 0.4).unwrap();
        assert!((thrifty.steady_state_kappa() - 5.965).abs() < 1e-3);
    }

    #[test]
    fn solow_step_examples() {
        let p = baseline();
        assert!((p.solow_step(100.0, 30.0) - 101.0).abs() < 1e-12);
        let full = p.with(|i| i.delta = 1.0).unwrap();
        assert_eq!(full.solow_step(123.0, 30.0), 0.22 * 30.0);
        let flat = p.with(|i| i.g = 0.0).unwrap();
        let y = 7.0;
        let k = flat.steady_state_kappa() * y;
        assert!(rel(flat.solow_step(k, y), k) < 1e-15);
    }

    #[test]
    fn q_update_contracts_affinely() {
        let p = baseline();
        let kbar = p.steady_state_kappa();
        assert!(rel(p.q_update(kbar), kbar) < 1e-15);
        for q in [0.1, 1.0, 10.0, 100.0] {
            let lhs = (p.q_update(q) - kbar).abs();
            let rhs = p.contraction_factor() * (q - kbar).abs();
            assert!(rel(lhs, rhs) < 1e-12);
        }
    }

    #[test]
    fn rejects_every_bad_field_at_once() {
        let err = baseline()
            .with(|i| {
                i.s = 1.5;
                i.sigma = 1.2;
                i.labor = 0.0;
            })
            .unwrap_err();
        let Error::Invalid(v) = err else { panic!("wrong error") };
        let fields: Vec<_> = v.iter().map(|v| v.field).collect();
        assert_eq!(fields, ["s", "sigma", "L"]);
    }

    #[test]
    fn state_rejects_degenerate_inputs() {
        assert!(EconomyState::new(2025.0, 0.0, 1.0).is_err());
        assert!(EconomyState::new(2025.0, -1.0, 1.0).is_err());
        assert!(EconomyState::new(2025.0, 1.0, 0.99).is_err());
    }

    prop_compose! {
        fn valid_params()(
            s in 0.05..0.6f64, g in 0.0..0.05f64, delta in 0.01..0.3f64,
            alpha_bar in 0.05..0.95f64, sigma in 0.1..0.95f64, a0 in 0.5..2.0f64,
            labor in 0.2..5.0f64,
        ) -> EconomyParams {
            EconomyParams::new(EconomyInputs { s, g, delta, alpha_bar, sigma, a0, base_year: 2024.0, labor }).unwrap()
        }
    }

    #[test]
    fn output_strictly_monotone_at_baseline() {
        let p = baseline();
        let y = |p: &EconomyParams, k: f64, gamma: f64| p.output(&EconomyState::new(2025.0, k, gamma).unwrap());
        let base = y(&p, 3.0, 2.0);
        assert!(y(&p, 3.3, 2.0) > base);
        assert!(y(&p, 3.0, 2.2) < base);
        assert!(y(&p.with(|i| i.labor = 1.1).unwrap(), 3.0, 2.0) > base);
    }

    proptest! {
        #[test]
        fn output_is_monotone(p in valid_params(), k in 0.01..100.0f64, gamma in 1.0..50.0f64, bump in 1.001..3.0f64, year in 2000.0..2100.0f64) {
            let base = p.output(&EconomyState::new(year, k, gamma).unwrap());
            prop_assert!(base > 0.0);
            // Weak inequalities: at low sigma one block can fall below an ulp of the other.
            prop_assert!(p.output(&EconomyState::new(year, k * bump, gamma).unwrap()) >= base);
            // With rho < 0 a heavier automated weight lowers the aggregate at fixed K.
            prop_assert!(p.output(&EconomyState::new(year, k, gamma * bump).unwrap()) <= base);
            let more_labor = p.with(|i| i.labor *= bump).unwrap();
            prop_assert!(more_labor.output(&EconomyState::new(year, k, gamma).unwrap()) >= base);
        }

        #[test]
        fn unit_capability_is_the_baseline_aggregate(p in valid_params(), k in 0.01..100.0f64, year in 2000.0..2100.0f64) {
            // Two-block CES written out directly.
            let rho = (p.sigma() - 1.0) / p.sigma();
            let a = p.alpha_bar();
            let direct = p.a0() * (p.g() * (year - 2024.0)).exp()
                * (a.powf(1.0 - rho) * k.powf(rho) + (1.0 - a).powf(1.0 - rho) * p.labor().powf(rho)).powf(1.0 / rho);
            let y = p.output(&EconomyState::new(year, k, 1.0).unwrap());
            prop_assert!(rel(y, direct) <= 1e-12);
        }
    }
}
