//! `resmass`: exact Newton numbers, directional Lelong numbers, mixed
//! masses, Milnor bounds and their sampling-based verification, from JSON
//! descriptions of indicators and polynomial mappings.
//!
//! Exit codes: 0 success, 2 input or precondition error, 3 internal
//! invariant violation (a kernel bug, never expected).

mod input;
mod render;
mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::complex::Complex64;
use resmass_core::{
    analyze, estimate_directional_lelong, milnor_lower_bound, milnor_lower_bound_opt, mixed_mass,
    monte_carlo_theta_volume, product_bound, tangent_convergence_check, theta_volume, to_f64,
    Error as CoreError, NewtonComplex, SamplingPlan, SimplexSearchConfig, Statistic, Weight,
};

use input::InputDoc;
use report::{
    table_rows, BoundsPayload, BoundsRow, EstimatePayload, EstimateRow, LelongPayload,
    LelongValue, MilnorPayload, MilnorValue, MixedPayload, NewtonPayload, OraclePayload, Payload,
    PlanEcho, Report, TangentBlock, Versions,
};

#[derive(Debug)]
pub struct CliError {
    message: String,
    code: i32,
}

impl CliError {
    fn input(message: String) -> Self {
        Self { message, code: 2 }
    }

    fn internal(message: String) -> Self {
        Self { message, code: 3 }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let code = if e.is_internal() { 3 } else { 2 };
        Self {
            message: e.to_string(),
            code,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "resmass",
    version,
    about = "Exact Newton numbers, Lelong numbers and residual-mass bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Input JSON file (indicator, mapping, or indicator list).
    #[arg(long)]
    input: PathBuf,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Copy, Clone, ValueEnum)]
enum StatisticArg {
    Sup,
    Mean,
}

#[derive(Subcommand)]
enum Command {
    /// Newton number with the full bound chain and witness.
    Newton {
        #[command(flatten)]
        common: Common,
        /// Seed for the simplex-bound witness search.
        #[arg(long, default_value_t = 0x5eed_cafe)]
        seed: u64,
    },
    /// Exact directional Lelong numbers at the given weights.
    Lelong {
        #[command(flatten)]
        common: Common,
        /// Weight as comma-separated positive rationals, repeatable.
        #[arg(long = "weight")]
        weights: Vec<String>,
    },
    /// Mixed Monge-Ampere mass of an indicator tuple (or the component
    /// indicators of a mapping).
    Mixed {
        #[command(flatten)]
        common: Common,
        /// Regularize non-convenient inputs.
        #[arg(long)]
        regularize: bool,
        /// Maximum regularization level before giving up.
        #[arg(long, default_value_t = 64)]
        max_level: u32,
    },
    /// Milnor lower bound of a function over weights and hull candidates.
    Milnor {
        #[command(flatten)]
        common: Common,
        #[arg(long = "weight")]
        weights: Vec<String>,
    },
    /// Product-bound sweep over the supplied weights.
    Bounds {
        #[command(flatten)]
        common: Common,
        #[arg(long = "weight")]
        weights: Vec<String>,
    },
    /// Directional Lelong estimates by torus sampling, with optional
    /// tangent-convergence table.
    Estimate {
        #[command(flatten)]
        common: Common,
        #[arg(long = "weight")]
        weights: Vec<String>,
        /// Radius exponents for the sampling tori.
        #[arg(long, default_value = "5,10,15,20,25")]
        scales: String,
        /// Angle samples per scale.
        #[arg(long, default_value_t = 4096)]
        samples: usize,
        #[arg(long, default_value_t = 0x1e10)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = StatisticArg::Sup)]
        statistic: StatisticArg,
        /// Moduli of a tangent-check sample point, e.g. "0.5,0.5".
        #[arg(long)]
        tangent_point: Option<String>,
        /// Largest tangent order m for the tangent table.
        #[arg(long, default_value_t = 30)]
        m_max: u32,
    },
    /// Cross-check the exact theta volume against Monte-Carlo sampling.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, default_value_t = 0xacc)]
        seed: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}

fn parse_weights(texts: &[String], dimension: usize) -> Result<Vec<Weight>, CliError> {
    if texts.is_empty() {
        return Ok(vec![Weight::uniform(dimension)]);
    }
    texts
        .iter()
        .map(|t| {
            let w = Weight::parse(t).map_err(CliError::from)?;
            if w.dim() != dimension {
                return Err(CliError::input(format!(
                    "weight {t:?} has {} coordinates, input has dimension {dimension}",
                    w.dim()
                )));
            }
            Ok(w)
        })
        .collect()
}

fn parse_f64_list(text: &str, what: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::input(format!("bad {what} entry {s:?}")))
        })
        .collect()
}

fn run(command: Command) -> Result<(), CliError> {
    let start = Instant::now();
    let (common, name, seed, payload) = match command {
        Command::Newton { common, seed } => {
            let doc = InputDoc::load(&common.input)?;
            let psi = doc.as_single_indicator()?;
            let config = SimplexSearchConfig {
                seed,
                ..SimplexSearchConfig::default()
            };
            let report = analyze(&psi, &config).map_err(CliError::from)?;
            (
                common,
                "newton",
                Some(seed),
                (Payload::Newton(NewtonPayload::from(&report)), doc),
            )
        }
        Command::Lelong { common, weights } => {
            let doc = InputDoc::load(&common.input)?;
            let psi = doc.as_single_indicator()?;
            let weights = parse_weights(&weights, psi.dimension())?;
            let values = weights
                .iter()
                .map(|w| {
                    psi.directional_lelong(w)
                        .map(|v| LelongValue::new(w, &v))
                        .map_err(CliError::from)
                })
                .collect::<Result<Vec<_>, _>>()?;
            (
                common,
                "lelong",
                None,
                (Payload::Lelong(LelongPayload { values }), doc),
            )
        }
        Command::Mixed {
            common,
            regularize,
            max_level,
        } => {
            let doc = InputDoc::load(&common.input)?;
            let tuple = doc.as_indicator_tuple()?;
            let result = mixed_mass(&tuple, regularize, max_level).map_err(CliError::from)?;
            (
                common,
                "mixed",
                None,
                (Payload::Mixed(MixedPayload::from(&result)), doc),
            )
        }
        Command::Milnor { common, weights } => {
            let doc = InputDoc::load(&common.input)?;
            let support = doc.as_function_support()?;
            let dimension = doc.dimension();
            let weights = parse_weights(&weights, dimension)?;
            let per_weight = weights
                .iter()
                .map(|w| {
                    milnor_lower_bound(&support, w)
                        .map(|b| MilnorValue::new(w, &b))
                        .map_err(CliError::from)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let (best_value, best_weight) =
                milnor_lower_bound_opt(&support, &weights).map_err(CliError::from)?;
            (
                common,
                "milnor",
                None,
                (
                    Payload::Milnor(MilnorPayload {
                        per_weight,
                        best: MilnorValue::new(&best_weight, &best_value),
                    }),
                    doc,
                ),
            )
        }
        Command::Bounds { common, weights } => {
            let doc = InputDoc::load(&common.input)?;
            let tuple = doc.as_indicator_tuple()?;
            let dimension = tuple[0].dimension();
            let weights = parse_weights(&weights, dimension)?;
            let sweep = weights
                .iter()
                .map(|w| {
                    let bound = product_bound(&tuple, w).map_err(CliError::from)?;
                    let lelongs = tuple
                        .iter()
                        .map(|psi| {
                            psi.directional_lelong(w)
                                .map(|v| resmass_core::RatPair::from(&v))
                        })
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(CliError::from)?;
                    Ok(BoundsRow {
                        weight: w.coords().iter().map(resmass_core::RatPair::from).collect(),
                        product_bound: resmass_core::RatPair::from(&bound),
                        component_lelong_numbers: lelongs,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            (
                common,
                "bounds",
                None,
                (Payload::Bounds(BoundsPayload { sweep }), doc),
            )
        }
        Command::Estimate {
            common,
            weights,
            scales,
            samples,
            seed,
            statistic,
            tangent_point,
            m_max,
        } => {
            let doc = InputDoc::load(&common.input)?;
            let mapping = doc.as_mapping()?.clone();
            let weights = parse_weights(&weights, mapping.n_vars())?;
            let plan = SamplingPlan {
                scales: parse_f64_list(&scales, "scale")?,
                angle_samples: samples,
                seed,
                statistic: match statistic {
                    StatisticArg::Sup => Statistic::Sup,
                    StatisticArg::Mean => Statistic::Mean,
                },
            };
            let estimates = weights
                .iter()
                .map(|w| {
                    let exact = mapping.index(w).map_err(CliError::from)?;
                    let (estimate, table) =
                        estimate_directional_lelong(&mapping, w, &plan).map_err(CliError::from)?;
                    let exact_float = to_f64(&exact);
                    Ok(EstimateRow {
                        weight: w.coords().iter().map(resmass_core::RatPair::from).collect(),
                        exact_index: resmass_core::RatPair::from(&exact),
                        estimate,
                        relative_error: (estimate - exact_float).abs()
                            / exact_float.abs().max(1e-12),
                        table: table_rows(&table),
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let tangent = match tangent_point {
                Some(text) => {
                    let moduli = parse_f64_list(&text, "tangent point")?;
                    if moduli.len() != mapping.n_vars() {
                        return Err(CliError::input(format!(
                            "tangent point has {} moduli, mapping has {} variables",
                            moduli.len(),
                            mapping.n_vars()
                        )));
                    }
                    let z: Vec<Complex64> =
                        moduli.iter().map(|&r| Complex64::new(r, 0.0)).collect();
                    let table = tangent_convergence_check(&mapping, &z, m_max, &plan)
                        .map_err(CliError::from)?;
                    Some(TangentBlock {
                        point_moduli: moduli,
                        m_max,
                        table: table_rows(&table),
                    })
                }
                None => None,
            };
            (
                common,
                "estimate",
                Some(seed),
                (
                    Payload::Estimate(EstimatePayload {
                        plan: PlanEcho::from(&plan),
                        estimates,
                        tangent,
                    }),
                    doc,
                ),
            )
        }
        Command::Oracle {
            common,
            samples,
            seed,
        } => {
            let doc = InputDoc::load(&common.input)?;
            let psi = doc.as_single_indicator()?;
            let complex = NewtonComplex::lower_hull(psi.generators(), psi.dimension())
                .map_err(CliError::from)?;
            let exact = theta_volume(&complex).map_err(CliError::from)?;
            let (estimate, std_error) =
                monte_carlo_theta_volume(&complex, samples, seed).map_err(CliError::from)?;
            let exact_float = to_f64(&exact.volume);
            let z_score = if std_error > 0.0 {
                (estimate - exact_float).abs() / std_error
            } else {
                0.0
            };
            let within = z_score <= 4.0;
            let payload = Payload::Oracle(OraclePayload {
                exact_volume: resmass_core::RatPair::from(&exact.volume),
                exact_volume_float: exact_float,
                estimate,
                std_error,
                z_score,
                within_four_std_errors: within,
                samples,
            });
            if !within {
                // The exact kernel and its oracle must agree; disagreement
                // is surfaced as a hard failure, never averaged away.
                finish(common, "oracle", Some(seed), payload, doc, start)?;
                return Err(CliError::internal(format!(
                    "monte-carlo oracle disagrees with the exact volume (z = {z_score:.2})"
                )));
            }
            (common, "oracle", Some(seed), (payload, doc))
        }
    };
    let (payload, doc) = payload;
    finish(common, name, seed, payload, doc, start)?;
    Ok(())
}

fn finish(
    common: Common,
    name: &str,
    seed: Option<u64>,
    payload: Payload,
    doc: InputDoc,
    start: Instant,
) -> Result<(), CliError> {
    let report = Report {
        tool: "resmass",
        versions: Versions {
            cli: env!("CARGO_PKG_VERSION"),
            core: resmass_core::version(),
        },
        subcommand: name.to_string(),
        seed,
        timing_ms: start.elapsed().as_millis() as u64,
        input: doc,
        payload,
    };
    let rendered = match common.format {
        Format::Json => render::to_json(&report),
        Format::Csv => render::to_csv(&report),
        Format::Md => render::to_markdown(&report),
    };
    match &common.output {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(())
}
