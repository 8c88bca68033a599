//! Command-line front end. [`run`] takes the full argument vector and returns
//! the process exit code: 0 on success, 1 on usage or validation errors, 2 on
//! I/O failures.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use ubi_core::calibration::{self, user_provenance, CalibrationPreset};
use ubi_core::dynamics::{crossing_year, simulate_path};
use ubi_core::emit::{render, write_bytes, Destination, Format};
use ubi_core::scenarios::{run_competition_sweep, run_ownership_sweep, run_timeline, share_grid, ResultTable};
use ubi_core::thresholds::{elasticities, gamma_star_oligo, is_solvent, MarketStructure};
use ubi_core::{CapabilityScenario, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_IO: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ubi", version, about = "Capability thresholds for a rent-financed basic income")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Parameter file (flat TOML); missing keys use the U.S. 2025 preset.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, default_value = "csv", value_parser = parse_format)]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Evaluation year.
    #[arg(long, global = true, default_value_t = 2025.0)]
    year: f64,
    /// Parameter override, same syntax as the parameter file. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Threshold report for one year (oligopoly form when conduct > 0).
    Threshold {
        /// Firm market shares; overrides the conduct parameter with their sum of squares.
        #[arg(long, value_delimiter = ',')]
        shares: Option<Vec<f64>>,
    },
    /// Whether a capability level finances the transfer in the given year.
    Solvency {
        #[arg(long)]
        gamma: f64,
    },
    /// Sensitivities of the competitive threshold.
    Elasticities,
    /// Threshold and capability scenarios by year, with crossing years.
    Timeline {
        #[arg(long, default_value_t = 2025.0)]
        from: f64,
        #[arg(long, default_value_t = 2060.0)]
        to: f64,
    },
    /// Oligopoly thresholds against the number of symmetric firms.
    SweepCompetition {
        /// Firm counts [default: 1..=30, 50, 100, 1000]
        #[arg(long, value_delimiter = ',')]
        firms: Option<Vec<u32>>,
        /// Evaluation years.
        #[arg(long, value_delimiter = ',', default_value = "2028,2038,2052")]
        years: Vec<f64>,
    },
    /// Thresholds over a public-share grid for several cost shares (at --year).
    SweepOwnership {
        /// Number of grid points over (0, 1].
        #[arg(long, default_value_t = 200)]
        points: u32,
        #[arg(long, value_delimiter = ',', default_value = "0.5,0.75")]
        costs: Vec<f64>,
    },
    /// Transition path of capital and output under one capability scenario.
    Simulate {
        /// Doubling time; defaults to the first scenario of the preset.
        #[arg(long)]
        doubling_years: Option<f64>,
        /// Initial capital; defaults to the balanced capital-output ratio.
        #[arg(long)]
        k0: Option<f64>,
        #[arg(long, default_value_t = 50)]
        years: usize,
    },
    /// Year each capability scenario crosses the threshold.
    Crossing {
        #[arg(long, default_value_t = 2200.0)]
        horizon: f64,
    },
    /// Dump the effective parameters with their provenance.
    Preset {
        /// Write a parameter file instead of a table.
        #[arg(long)]
        toml: bool,
    },
}

/// Runs the tool on `args` (program name first).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            } else {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_INVALID
            };
        }
    };
    match execute(&cli) {
        Ok(bytes) => {
            let written = match &cli.common.out {
                Some(path) => write_bytes(&bytes, &Destination::File(path.clone())),
                None => stdout
                    .write_all(&bytes)
                    .and_then(|_| stdout.flush())
                    .map_err(|source| Error::Io { path: "<stdout>".into(), source }),
            };
            match written {
                Ok(()) => EXIT_OK,
                Err(e) => report(stderr, &e),
            }
        }
        Err(e) => report(stderr, &e),
    }
}

fn report(stderr: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(stderr, "error: {e}");
    if e.is_io() {
        EXIT_IO
    } else {
        EXIT_INVALID
    }
}

/// Effective parameters: the parameter file (or the preset), then `--set` overrides.
pub fn effective_preset(config: Option<&PathBuf>, overrides: &[String]) -> ubi_core::Result<CalibrationPreset> {
    let (text, origin) = match config {
        Some(path) => (
            std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.clone(), source })?,
            path.display().to_string(),
        ),
        None => (String::new(), "--set".to_string()),
    };
    let mut table = calibration::parse_table(&text, &origin)?;
    let mut set_keys = Vec::new();
    for assignment in overrides {
        let (key, value) = calibration::parse_assignment(assignment)?;
        table.insert(key.clone(), value);
        set_keys.push(key);
    }
    let mut preset = calibration::preset_from_table(&table, &origin)?;
    for key in set_keys {
        preset.provenance.insert(key, user_provenance("--set"));
    }
    Ok(preset)
}

fn execute(cli: &Cli) -> ubi_core::Result<Vec<u8>> {
    let common = &cli.common;
    let preset = effective_preset(common.config.as_ref(), &common.overrides)?;
    let year = common.year;
    let table = match &cli.command {
        Command::Threshold { shares } => {
            let market = match shares {
                Some(s) => MarketStructure::from_shares(preset.market.epsilon(), s)?,
                None => preset.market,
            };
            let r = gamma_star_oligo(&preset.econ, &preset.fiscal, &market, year);
            let mut t = ResultTable::new([
                "year",
                "gamma_star",
                "gamma_star_unclamped",
                "z_factor",
                "rent_denominator",
                "profit_offset",
                "conduct",
                "epsilon",
                "always_solvent",
            ]);
            if r.unclamped.is_none() {
                t.meta("note", "oligopoly base is non-positive; unclamped threshold reported as 0");
            }
            t.push_row(vec![
                r.year,
                r.gamma_star,
                r.unclamped.unwrap_or(0.0),
                r.z_factor,
                r.rent_denominator,
                r.profit_offset,
                market.conduct(),
                market.epsilon(),
                flag(r.always_solvent),
            ])?;
            t
        }
        Command::Solvency { gamma } => {
            let solvent = is_solvent(&preset.econ, &preset.fiscal, *gamma, year)?;
            let threshold = ubi_core::thresholds::gamma_star(&preset.econ, &preset.fiscal, year);
            let share = preset.econ.capital_share(*gamma, preset.econ.steady_state_kappa(), year)?;
            let mut t = ResultTable::new(["year", "gamma", "gamma_star", "public_rent_ratio", "b_ratio", "solvent"]);
            t.push_row(vec![
                year,
                *gamma,
                threshold.gamma_star,
                preset.fiscal.net_capture() * share,
                preset.fiscal.b_ratio(),
                flag(solvent),
            ])?;
            t
        }
        Command::Elasticities => {
            let e = elasticities(&preset.econ, &preset.fiscal, year);
            let mut t = ResultTable::new(["year", "gamma_star_unclamped", "d_theta", "d_c", "d_s", "d_sigma", "interior"]);
            t.push_row(vec![year, e.gamma_star, e.d_theta, e.d_c, e.d_s, e.d_sigma, flag(e.interior)])?;
            t
        }
        Command::Timeline { from, to } => run_timeline(&preset, *from, *to)?,
        Command::SweepCompetition { firms, years } => {
            let firms = firms.clone().unwrap_or_else(|| (1..=30).chain([50, 100, 1000]).collect());
            run_competition_sweep(&preset, &firms, years)?
        }
        Command::SweepOwnership { points, costs } => {
            if *points == 0 {
                return Err(Error::Sweep("--points must be at least 1".into()));
            }
            run_ownership_sweep(&preset, &share_grid(*points), costs, year)?
        }
        Command::Simulate { doubling_years, k0, years } => {
            let base = preset.scenarios[0];
            let scenario = match doubling_years {
                Some(td) => CapabilityScenario::new(base.gamma0(), *td, base.start_year())?,
                None => base,
            };
            let path = simulate_path(&preset.econ, &preset.fiscal, &scenario, *k0, *years)?;
            let mut t = ResultTable::new([
                "year",
                "productivity",
                "gamma",
                "capital",
                "output",
                "q",
                "capital_share",
                "public_rent_ratio",
                "gamma_star",
                "solvent",
            ]);
            t.meta("simulate.doubling_years", scenario.doubling_years());
            t.meta("simulate.truncated", path.truncated);
            for r in &path.records {
                t.push_row(vec![
                    r.year,
                    r.productivity,
                    r.gamma,
                    r.capital,
                    r.output,
                    r.q,
                    r.capital_share,
                    r.public_rent_ratio,
                    r.gamma_star,
                    flag(r.solvent),
                ])?;
            }
            t
        }
        Command::Crossing { horizon } => {
            let mut t = ResultTable::new(["doubling_years", "crossing_year", "first_year", "nearest_year", "gamma_star_at_crossing"]);
            for s in &preset.scenarios {
                let c = crossing_year(s, &preset.econ, &preset.fiscal, *horizon)?;
                match (c.continuous_year, c.first_integer_year, c.nearest_year(), c.threshold_at_crossing) {
                    (Some(y), Some(first), Some(nearest), Some(g)) => {
                        t.push_row(vec![s.doubling_years(), y, first as f64, nearest as f64, g])?
                    }
                    _ => t.meta(format!("no_crossing.td{}", s.doubling_years()), format!("before {horizon}")),
                }
            }
            t
        }
        Command::Preset { toml } => return Ok(preset_output(&preset, *toml, common.format)),
    };
    let mut table = table;
    table.echo_preset(&preset);
    table.meta("year", year);
    render(&table, common.format)
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

fn preset_output(preset: &CalibrationPreset, as_toml: bool, format: Format) -> Vec<u8> {
    if as_toml {
        return preset.to_toml().into_bytes();
    }
    let provenance = |k: &str| preset.provenance.get(k).cloned().unwrap_or_default();
    match format {
        Format::Json => {
            let params: Vec<_> = preset
                .values()
                .into_iter()
                .map(|(k, v)| json!({ "key": k, "value": v, "provenance": provenance(k) }))
                .collect();
            let mut out = serde_json::to_vec_pretty(&json!({ "parameters": params })).expect("json values serialize");
            out.push(b'\n');
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let _ = w.write_record(["key", "value", "provenance"]);
            for (k, v) in preset.values() {
                let _ = w.write_record([k.to_string(), v.to_string(), provenance(k)]);
            }
            w.into_inner().expect("writing to a Vec cannot fail")
        }
    }
}
