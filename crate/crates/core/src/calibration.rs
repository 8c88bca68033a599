//! The U.S. 2025 calibration, helpers that derive parameters from published
//! aggregates, and loading of flat TOML parameter files.
//!
//! A parameter file is a flat TOML document whose keys are exactly the names in
//! [`PARAM_KEYS`]. Missing keys fall back to [`preset_us_2025`]; unknown keys are
//! rejected. `doubling_years` may be a single number or an array, one capability
//! scenario per entry.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::dynamics::{CapabilityScenario, ScenarioInputs};
use crate::economy::{EconomyInputs, EconomyParams};
use crate::error::{Checker, Error, Result};
use crate::thresholds::{FiscalInputs, FiscalParams, MarketInputs, MarketStructure};

/// Every key accepted in a parameter file, in canonical order.
pub const PARAM_KEYS: [&str; 17] = [
    "s",
    "g",
    "delta",
    "alpha_bar",
    "sigma",
    "A0",
    "base_year",
    "L",
    "theta_pub",
    "c",
    "b_ratio",
    "phi",
    "epsilon",
    "conduct",
    "gamma0",
    "doubling_years",
    "start_year",
];

/// Operating-cost share of the efficient-operations regime.
pub const LOW_COST: f64 = 0.50;
/// Operating-cost share under heavy oversight.
pub const HIGH_COST: f64 = 0.75;
/// Current U.S. public revenue share of capital rents.
pub const CURRENT_PUBLIC_SHARE: f64 = 0.145;
/// Published range of U.S. capital-labor substitution elasticities.
pub const SIGMA_SURVEY_RANGE: (f64, f64) = (0.45, 0.87);

const DEFAULT_DOUBLING_YEARS: [f64; 4] = [1.0, 2.0, 5.0, 10.0];

/// Provenance tag for values that came from a parameter file or override.
pub fn user_provenance(origin: &str) -> String {
    format!("user-supplied ({origin})")
}

/// A complete, validated parameter set with one citation per parameter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CalibrationPreset {
    pub econ: EconomyParams,
    pub fiscal: FiscalParams,
    pub market: MarketStructure,
    pub scenarios: Vec<CapabilityScenario>,
    pub provenance: BTreeMap<String, String>,
}

impl CalibrationPreset {
    /// Parameter values by key, in [`PARAM_KEYS`] order. Scenario keys come from
    /// the first scenario, except `doubling_years`, which lists them all.
    pub fn values(&self) -> Vec<(&'static str, ParamValue)> {
        let e = self.econ.inputs();
        let f = self.fiscal.inputs();
        let m = self.market.inputs();
        let first = self.scenarios[0];
        let one = ParamValue::Number;
        vec![
            ("s", one(e.s)),
            ("g", one(e.g)),
            ("delta", one(e.delta)),
            ("alpha_bar", one(e.alpha_bar)),
            ("sigma", one(e.sigma)),
            ("A0", one(e.a0)),
            ("base_year", one(e.base_year)),
            ("L", one(e.labor)),
            ("theta_pub", one(f.theta_pub)),
            ("c", one(f.c)),
            ("b_ratio", one(f.b_ratio)),
            ("phi", one(f.phi)),
            ("epsilon", one(m.epsilon)),
            ("conduct", one(m.conduct)),
            ("gamma0", one(first.gamma0())),
            (
                "doubling_years",
                ParamValue::List(self.scenarios.iter().map(CapabilityScenario::doubling_years).collect()),
            ),
            ("start_year", one(first.start_year())),
        ]
    }

    /// Flat TOML document that [`load_params_str`] reads back to the same parameters.
    /// Provenance is written as comments.
    pub fn to_toml(&self) -> String {
        let mut out = String::new();
        for (key, value) in self.values() {
            if let Some(p) = self.provenance.get(key) {
                let _ = writeln!(out, "# {p}");
            }
            let _ = writeln!(out, "{key} = {}", value.to_toml());
        }
        out
    }

    /// Same calibration with every parameter block revalidated after `edit`.
    pub fn with_fiscal(&self, edit: impl FnOnce(&mut FiscalInputs)) -> Result<Self> {
        Ok(Self { fiscal: self.fiscal.with(edit)?, ..self.clone() })
    }

    pub fn with_econ(&self, edit: impl FnOnce(&mut EconomyInputs)) -> Result<Self> {
        Ok(Self { econ: self.econ.with(edit)?, ..self.clone() })
    }

    /// Returns true when every key in [`PARAM_KEYS`] carries a non-empty citation.
    pub fn provenance_complete(&self) -> bool {
        PARAM_KEYS
            .iter()
            .all(|k| self.provenance.get(*k).is_some_and(|p| !p.trim().is_empty()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ParamValue {
    Number(f64),
    List(Vec<f64>),
}

impl ParamValue {
    fn to_toml(&self) -> String {
        match self {
            ParamValue::Number(x) => fmt_float(*x),
            ParamValue::List(xs) => {
                let parts: Vec<_> = xs.iter().map(|x| fmt_float(*x)).collect();
                format!("[{}]", parts.join(", "))
            }
        }
    }
}

impl std::fmt::Display for ParamValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamValue::Number(x) => write!(f, "{x}"),
            ParamValue::List(xs) => {
                let parts: Vec<_> = xs.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join(";"))
            }
        }
    }
}

// `{:?}` is the shortest representation that parses back to the same f64, and
// always carries a decimal point or exponent, which TOML needs for a float.
fn fmt_float(x: f64) -> String {
    format!("{x:?}")
}

/// The U.S. calibration anchored at 2025.
pub fn preset_us_2025() -> CalibrationPreset {
    let econ = EconomyParams::new(EconomyInputs {
        s: 0.22,
        g: 0.011,
        delta: 0.056,
        alpha_bar: 0.42,
        sigma: 0.66,
        a0: 1.068,
        base_year: 2024.0,
        labor: 1.0,
    })
    .expect("preset economy is valid");
    let fiscal = FiscalParams::new(FiscalInputs {
        theta_pub: CURRENT_PUBLIC_SHARE,
        c: 0.6,
        b_ratio: 0.11,
        phi: 1.0,
    })
    .expect("preset fiscal block is valid");
    let market = MarketStructure::competitive(1.0).expect("preset market is valid");
    let scenarios = DEFAULT_DOUBLING_YEARS
        .iter()
        .map(|&td| CapabilityScenario::new(1.0, td, 2025.0).expect("preset scenario is valid"))
        .collect();

    let provenance = [
        ("s", "World Bank gross capital formation, U.S. 2023: 22% of GDP"),
        ("g", "CBO potential TFP growth, nonfarm business sector, 2024-2034: 1.1% per year"),
        ("delta", "BEA 2023 current-cost depreciation of private fixed assets / year-end net stock: 3.81 / 68.10, rounded to 0.056"),
        ("alpha_bar", "WEF Future of Jobs 2023: 42% of business tasks expected to be automated by 2027"),
        ("sigma", "midpoint of the surveyed U.S. capital-labor substitution range [0.45, 0.87]"),
        ("A0", "BLS nonfarm business multifactor productivity (FRED MFPNFBS, 2017 = 100), 2024 reading 106.847 / 100, rounded to 1.068"),
        ("base_year", "year of the productivity index reading used for A0"),
        ("L", "labor endowment normalized to one; thresholds do not depend on it"),
        ("theta_pub", "GAO effective federal corporate tax rate 13-16%, midpoint"),
        ("c", "reported ~40% gross margin at a frontier AI lab, so operating costs of ~60% of gross rents; alternates 0.50 and 0.75"),
        ("b_ratio", "UBI of $12k per adult per year (~$3.1T) over 2024Q3 GDP of $29.35T = 0.1056, rounded to 0.11"),
        ("phi", "full profit capture; values below one model leakage"),
        ("epsilon", "absolute demand elasticity of 1, midpoint of the 0.5-1.5 range for consumer-technology markets"),
        ("conduct", "competitive benchmark (no pure profit)"),
        ("gamma0", "no aggregate AI boost over pre-AI automation in 2025"),
        ("doubling_years", "capability doubling every 1, 2, 5 or 10 years"),
        ("start_year", "capability scenarios start in 2025"),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect();

    CalibrationPreset { econ, fiscal, market, scenarios, provenance }
}

/// The 2025 calibration with `sigma` moved to an endpoint of the surveyed range.
pub fn preset_us_2025_sigma(sigma: f64) -> Result<CalibrationPreset> {
    let mut preset = preset_us_2025().with_econ(|e| e.sigma = sigma)?;
    preset.provenance.insert(
        "sigma".into(),
        format!("substitution elasticity set to {sigma}; surveyed U.S. range is [0.45, 0.87]"),
    );
    Ok(preset)
}

pub fn preset_sigma_low() -> CalibrationPreset {
    preset_us_2025_sigma(SIGMA_SURVEY_RANGE.0).expect("low endpoint is valid")
}

pub fn preset_sigma_high() -> CalibrationPreset {
    preset_us_2025_sigma(SIGMA_SURVEY_RANGE.1).expect("high endpoint is valid")
}

fn require_positive(pairs: &[(&'static str, f64)]) -> Result<()> {
    let mut c = Checker::default();
    for &(name, v) in pairs {
        c.require(v > 0.0 && v.is_finite(), name, v, "must be positive");
    }
    c.finish()
}

/// Depreciation rate from a depreciation flow and the net stock it wears down.
pub fn derive_delta(depreciation_flow: f64, net_stock: f64) -> Result<f64> {
    require_positive(&[("depreciation_flow", depreciation_flow), ("net_stock", net_stock)])?;
    let ratio = depreciation_flow / net_stock;
    if ratio >= 1.0 {
        return Err(Error::Implausible { what: "depreciation rate", ratio });
    }
    Ok(ratio)
}

/// Productivity level from an index reading and its base value.
pub fn derive_a0(index_value: f64, index_base: f64) -> Result<f64> {
    require_positive(&[("index_value", index_value), ("index_base", index_base)])?;
    Ok(index_value / index_base)
}

/// Transfer-to-output ratio from the annual transfer cost and GDP in the same units.
pub fn derive_b_ratio(transfer_cost: f64, gdp: f64) -> Result<f64> {
    require_positive(&[("transfer_cost", transfer_cost), ("gdp", gdp)])?;
    let ratio = transfer_cost / gdp;
    if ratio >= 1.0 {
        return Err(Error::Implausible { what: "transfer share of output", ratio });
    }
    Ok(ratio)
}

/// Reads and validates a parameter file.
pub fn load_params(path: impl AsRef<Path>) -> Result<CalibrationPreset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    load_params_str(&text, &path.display().to_string())
}

/// Parses a parameter document; `origin` names it in errors and provenance.
pub fn load_params_str(text: &str, origin: &str) -> Result<CalibrationPreset> {
    let table = parse_table(text, origin)?;
    preset_from_table(&table, origin)
}

/// Parses TOML text into a table without interpreting the keys.
pub fn parse_table(text: &str, origin: &str) -> Result<toml::Table> {
    text.parse::<toml::Table>().map_err(|e| Error::Parse {
        origin: origin.to_string(),
        message: e.to_string().trim_end().to_string(),
    })
}

/// Parses a `key=value` override, where the value uses the parameter-file syntax.
pub fn parse_assignment(assignment: &str) -> Result<(String, toml::Value)> {
    let bad = |message: String| Error::Parse { origin: "--set".into(), message };
    let (key, value) = assignment
        .split_once('=')
        .ok_or_else(|| bad(format!("expected key=value, got `{assignment}`")))?;
    let key = key.trim();
    if !PARAM_KEYS.contains(&key) {
        return Err(bad(format!("unknown key `{key}`; expected one of {}", PARAM_KEYS.join(", "))));
    }
    let doc = format!("v = {}", value.trim());
    let mut table = doc
        .parse::<toml::Table>()
        .map_err(|e| bad(format!("value for `{key}`: {}", e.message())))?;
    let value = table.remove("v").expect("single-key document");
    Ok((key.to_string(), value))
}

/// Builds a preset from a parsed table, filling gaps from [`preset_us_2025`].
/// Type problems and unknown keys are reported before bounds; bound violations
/// are all reported together.
pub fn preset_from_table(table: &toml::Table, origin: &str) -> Result<CalibrationPreset> {
    let unknown: Vec<_> = table.keys().filter(|k| !PARAM_KEYS.contains(&k.as_str())).cloned().collect();
    if !unknown.is_empty() {
        return Err(Error::Parse {
            origin: origin.to_string(),
            message: format!("unknown key(s) {}; expected one of {}", unknown.join(", "), PARAM_KEYS.join(", ")),
        });
    }

    let defaults = preset_us_2025();
    let mut provenance = defaults.provenance.clone();
    let mut numbers = BTreeMap::new();
    let mut doubling = None;
    let mut type_errors = Vec::new();
    for (key, value) in table {
        provenance.insert(key.clone(), user_provenance(origin));
        if key == "doubling_years" {
            match value {
                toml::Value::Array(items) => {
                    let parsed: Option<Vec<f64>> = items.iter().map(as_number).collect();
                    match parsed {
                        Some(v) if !v.is_empty() => doubling = Some(v),
                        _ => type_errors.push(format!("`{key}` must be a number or a non-empty array of numbers")),
                    }
                }
                other => match as_number(other) {
                    Some(x) => doubling = Some(vec![x]),
                    None => type_errors.push(format!("`{key}` must be a number or a non-empty array of numbers")),
                },
            }
        } else {
            match as_number(value) {
                Some(x) => {
                    numbers.insert(key.as_str(), x);
                }
                None => type_errors.push(format!("`{key}` must be a number, got {}", value.type_str())),
            }
        }
    }
    if !type_errors.is_empty() {
        return Err(Error::Parse { origin: origin.to_string(), message: type_errors.join("; ") });
    }

    let get = |key: &str, default: f64| numbers.get(key).copied().unwrap_or(default);
    let e = defaults.econ.inputs();
    let econ = EconomyInputs {
        s: get("s", e.s),
        g: get("g", e.g),
        delta: get("delta", e.delta),
        alpha_bar: get("alpha_bar", e.alpha_bar),
        sigma: get("sigma", e.sigma),
        a0: get("A0", e.a0),
        base_year: get("base_year", e.base_year),
        labor: get("L", e.labor),
    };
    let f = defaults.fiscal.inputs();
    let fiscal = FiscalInputs {
        theta_pub: get("theta_pub", f.theta_pub),
        c: get("c", f.c),
        b_ratio: get("b_ratio", f.b_ratio),
        phi: get("phi", f.phi),
    };
    let m = defaults.market.inputs();
    let market = MarketInputs { epsilon: get("epsilon", m.epsilon), conduct: get("conduct", m.conduct) };
    let first = defaults.scenarios[0];
    let gamma0 = get("gamma0", first.gamma0());
    let start_year = get("start_year", first.start_year());
    let doubling = doubling.unwrap_or_else(|| defaults.scenarios.iter().map(|s| s.doubling_years()).collect());
    let scenario_inputs: Vec<_> = doubling
        .iter()
        .map(|&doubling_years| ScenarioInputs { gamma0, doubling_years, start_year })
        .collect();

    let mut checker = econ.check();
    checker.extend(fiscal.check());
    checker.extend(market.check());
    for s in &scenario_inputs {
        checker.extend(s.check());
    }
    checker.finish()?;

    Ok(CalibrationPreset {
        econ: EconomyParams::new(econ)?,
        fiscal: FiscalParams::new(fiscal)?,
        market: MarketStructure::try_from(market)?,
        scenarios: scenario_inputs
            .into_iter()
            .map(CapabilityScenario::try_from)
            .collect::<Result<_>>()?,
        provenance,
    })
}

fn as_number(v: &toml::Value) -> Option<f64> {
    match v {
        toml::Value::Float(x) => Some(*x),
        toml::Value::Integer(i) => Some(*i as f64),
        _ => None,
    }
}
