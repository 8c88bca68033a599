//! Parameter sweeps behind the timeline, competition and ownership tables.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::calibration::{CalibrationPreset, CURRENT_PUBLIC_SHARE, HIGH_COST, LOW_COST};
use crate::dynamics::{crossing_year, threshold_series};
use crate::error::{Error, Result};
use crate::thresholds::{gamma_star, gamma_star_oligo, MarketStructure};

pub const TOOL_VERSION: &str = concat!("ubi-core ", env!("CARGO_PKG_VERSION"));

/// Rectangular numeric table with a string metadata block.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultTable {
    pub metadata: BTreeMap<String, String>,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl ResultTable {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            metadata: BTreeMap::new(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Appends a row; it must match the column count and hold only finite values.
    pub fn push_row(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::Sweep(format!(
                "row has {} cells, table has {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        if let Some(bad) = row.iter().find(|x| !x.is_finite()) {
            return Err(Error::Sweep(format!("non-finite cell {bad}")));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl ToString) {
        self.metadata.insert(key.into(), value.to_string());
    }

    /// Records every effective parameter with its provenance, plus the tool version.
    pub fn echo_preset(&mut self, preset: &CalibrationPreset) {
        for (key, value) in preset.values() {
            self.meta(format!("param.{key}"), value);
            if let Some(p) = preset.provenance.get(key) {
                self.meta(format!("provenance.{key}"), p);
            }
        }
        self.meta("tool", TOOL_VERSION);
    }
}

/// Which sweep to run and over what grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SweepSpec {
    Timeline { year_from: f64, year_to: f64 },
    Competition { firms: Vec<u32>, years: Vec<f64> },
    Ownership { thetas: Vec<f64>, costs: Vec<f64>, year: f64 },
}

impl SweepSpec {
    /// Yearly steps over 2025-2060.
    pub fn default_timeline() -> Self {
        SweepSpec::Timeline { year_from: 2025.0, year_to: 2060.0 }
    }

    /// One to thirty symmetric firms plus 50, 100 and 1000, at 2028, 2038 and 2052.
    pub fn default_competition() -> Self {
        let firms = (1..=30).chain([50, 100, 1000]).collect();
        SweepSpec::Competition { firms, years: vec![2028.0, 2038.0, 2052.0] }
    }

    /// Public share on a 0.005 grid over (0, 1], both cost regimes, 2025.
    pub fn default_ownership() -> Self {
        SweepSpec::Ownership { thetas: share_grid(200), costs: vec![LOW_COST, HIGH_COST], year: 2025.0 }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SweepSpec::Timeline { year_from, year_to } => {
                if !(year_from.is_finite() && year_to.is_finite() && year_from <= year_to) {
                    return Err(Error::Sweep(format!("year range {year_from}..{year_to} is empty")));
                }
            }
            SweepSpec::Competition { firms, years } => {
                let as_f64: Vec<_> = firms.iter().map(|&m| f64::from(m)).collect();
                increasing("firm counts", &as_f64)?;
                if firms.first() == Some(&0) {
                    return Err(Error::Sweep("firm counts must be at least 1".into()));
                }
                increasing("evaluation years", years)?;
            }
            SweepSpec::Ownership { thetas, costs, year } => {
                increasing("public shares", thetas)?;
                if thetas.iter().any(|t| !(*t > 0.0 && *t <= 1.0)) {
                    return Err(Error::Sweep("public shares must lie in (0, 1]".into()));
                }
                increasing("cost shares", costs)?;
                if costs.iter().any(|c| !(*c >= 0.0 && *c < 1.0)) {
                    return Err(Error::Sweep("cost shares must lie in [0, 1)".into()));
                }
                if !year.is_finite() {
                    return Err(Error::Sweep(format!("evaluation year {year} is not finite")));
                }
            }
        }
        Ok(())
    }

    pub fn run(&self, preset: &CalibrationPreset) -> Result<ResultTable> {
        match self {
            SweepSpec::Timeline { year_from, year_to } => run_timeline(preset, *year_from, *year_to),
            SweepSpec::Competition { firms, years } => run_competition_sweep(preset, firms, years),
            SweepSpec::Ownership { thetas, costs, year } => run_ownership_sweep(preset, thetas, costs, *year),
        }
    }
}

/// `k / n` for `k = 1..=n`.
pub fn share_grid(n: u32) -> Vec<f64> {
    (1..=n).map(|k| f64::from(k) / f64::from(n)).collect()
}

fn increasing(what: &str, xs: &[f64]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::Sweep(format!("{what} grid is empty")));
    }
    if xs.iter().any(|x| !x.is_finite()) || xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Sweep(format!("{what} grid must be finite and strictly increasing")));
    }
    Ok(())
}

/// Evaluates `f` over the grid, in parallel or not, preserving grid order.
fn rows_over<T, F>(grid: &[T], parallel: bool, f: F) -> Vec<Vec<f64>>
where
    T: Sync,
    F: Fn(&T) -> Vec<f64> + Sync + Send,
{
    if parallel {
        grid.par_iter().map(&f).collect()
    } else {
        grid.iter().map(&f).collect()
    }
}

fn fill(table: &mut ResultTable, rows: Vec<Vec<f64>>) -> Result<()> {
    rows.into_iter().try_for_each(|r| table.push_row(r))
}

fn td_label(td: f64) -> String {
    format!("gamma_td{td}")
}

/// Threshold and every scenario's capability by year, with each scenario's
/// crossing in the metadata under `crossing.td<T_d>`. Before a scenario's start
/// year its column holds `gamma0`.
pub fn run_timeline(preset: &CalibrationPreset, year_from: f64, year_to: f64) -> Result<ResultTable> {
    SweepSpec::Timeline { year_from, year_to }.validate()?;
    for s in &preset.scenarios {
        if !(year_from <= s.start_year() && s.start_year() <= year_to) {
            return Err(Error::Sweep(format!(
                "year range {year_from}..{year_to} excludes the scenario start year {}",
                s.start_year()
            )));
        }
    }
    let mut columns = vec!["year".to_string(), "gamma_star".to_string()];
    columns.extend(preset.scenarios.iter().map(|s| td_label(s.doubling_years())));
    let mut table = ResultTable::new(columns);
    table.echo_preset(preset);
    table.meta("sweep.kind", "timeline");
    table.meta("sweep.year_from", year_from);
    table.meta("sweep.year_to", year_to);

    for report in threshold_series(&preset.econ, &preset.fiscal, year_from, year_to)? {
        let mut row = vec![report.year, report.gamma_star];
        for s in &preset.scenarios {
            row.push(s.gamma_at(report.year.max(s.start_year()))?);
        }
        table.push_row(row)?;
    }

    for s in &preset.scenarios {
        let label = format!("crossing.td{}", s.doubling_years());
        let horizon = year_to.max(s.start_year() + 1.0);
        let crossing = crossing_year(s, &preset.econ, &preset.fiscal, horizon)?;
        match (crossing.continuous_year, crossing.first_integer_year) {
            (Some(t), Some(first)) => {
                table.meta(format!("{label}.continuous"), t);
                table.meta(format!("{label}.first_year"), first);
            }
            _ => table.meta(format!("{label}.continuous"), "none"),
        }
    }
    Ok(table)
}

/// Oligopoly thresholds for `m` symmetric firms (conduct `1/m`) at each
/// evaluation year. Competitive benchmarks go in the metadata under `benchmark.<year>`.
pub fn run_competition_sweep(preset: &CalibrationPreset, firms: &[u32], years: &[f64]) -> Result<ResultTable> {
    competition(preset, firms, years, true)
}

fn competition(preset: &CalibrationPreset, firms: &[u32], years: &[f64], parallel: bool) -> Result<ResultTable> {
    SweepSpec::Competition { firms: firms.to_vec(), years: years.to_vec() }.validate()?;
    let mut columns = vec!["m".to_string(), "theta".to_string()];
    columns.extend(years.iter().map(|y| format!("gamma_star_oligo_{y}")));
    let mut table = ResultTable::new(columns);
    table.echo_preset(preset);
    table.meta("sweep.kind", "competition");
    table.meta("sweep.epsilon", preset.market.epsilon());
    for &y in years {
        table.meta(format!("benchmark.{y}"), gamma_star(&preset.econ, &preset.fiscal, y).gamma_star);
    }
    let markets = firms
        .iter()
        .map(|&m| MarketStructure::symmetric(preset.market.epsilon(), m).map(|mk| (m, mk)))
        .collect::<Result<Vec<_>>>()?;
    let rows = rows_over(&markets, parallel, |(m, market)| {
        let mut row = vec![f64::from(*m), market.conduct()];
        row.extend(
            years
                .iter()
                .map(|&y| gamma_star_oligo(&preset.econ, &preset.fiscal, market, y).gamma_star),
        );
        row
    });
    fill(&mut table, rows)?;
    Ok(table)
}

/// Competitive thresholds over a public-share grid, one column per cost share.
/// The current U.S. share is always present and flagged in `current_stake`.
pub fn run_ownership_sweep(
    preset: &CalibrationPreset,
    thetas: &[f64],
    costs: &[f64],
    year: f64,
) -> Result<ResultTable> {
    ownership(preset, thetas, costs, year, true)
}

fn ownership(preset: &CalibrationPreset, thetas: &[f64], costs: &[f64], year: f64, parallel: bool) -> Result<ResultTable> {
    SweepSpec::Ownership { thetas: thetas.to_vec(), costs: costs.to_vec(), year }.validate()?;
    let mut grid = thetas.to_vec();
    if !grid.contains(&CURRENT_PUBLIC_SHARE) {
        let at = grid.partition_point(|&t| t < CURRENT_PUBLIC_SHARE);
        grid.insert(at, CURRENT_PUBLIC_SHARE);
    }
    let mut columns = vec!["theta".to_string()];
    columns.extend(costs.iter().map(|c| format!("gamma_star_c{c}")));
    columns.push("current_stake".into());
    let mut table = ResultTable::new(columns);
    table.echo_preset(preset);
    table.meta("sweep.kind", "ownership");
    table.meta("sweep.year", year);

    let fiscals = costs
        .iter()
        .map(|&c| {
            grid.iter()
                .map(|&theta| {
                    preset.fiscal.with(|f| {
                        f.c = c;
                        f.theta_pub = theta;
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let indices: Vec<usize> = (0..grid.len()).collect();
    let rows = rows_over(&indices, parallel, |&i| {
        let mut row = vec![grid[i]];
        row.extend(fiscals.iter().map(|fs| gamma_star(&preset.econ, &fs[i], year).gamma_star));
        row.push(if grid[i] == CURRENT_PUBLIC_SHARE { 1.0 } else { 0.0 });
        row
    });
    fill(&mut table, rows)?;
    Ok(table)
}
