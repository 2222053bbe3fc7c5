//! Report payloads. Every rational is serialized as `[numerator,
//! denominator]`; floats appear only in estimator and oracle payloads.
//! Struct field order is the stable key order of the emitted JSON.

use resmass_core::{
    BoundReport, ConvergenceTable, MixedMassResult, Rat, RatPair, SamplingPlan, Statistic, Weight,
};
use serde::Serialize;

use crate::input::InputDoc;

#[derive(Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub versions: Versions,
    pub subcommand: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub timing_ms: u64,
    pub input: InputDoc,
    pub payload: Payload,
}

#[derive(Serialize)]
pub struct Versions {
    pub cli: &'static str,
    pub core: &'static str,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum Payload {
    Newton(NewtonPayload),
    Lelong(LelongPayload),
    Mixed(MixedPayload),
    Milnor(MilnorPayload),
    Bounds(BoundsPayload),
    Estimate(EstimatePayload),
    Oracle(OraclePayload),
}

fn weight_pairs(w: &Weight) -> Vec<RatPair> {
    w.coords().iter().map(RatPair::from).collect()
}

#[derive(Serialize)]
pub struct NewtonPayload {
    pub newton_number: RatPair,
    pub simplex_bound: RatPair,
    pub simplex_bound_float: f64,
    pub simplex_witness: Vec<RatPair>,
    pub standard_bound: RatPair,
    pub upper_bound: RatPair,
    pub triangulation_simplices: usize,
    pub optimizer_trace: String,
}

impl From<&BoundReport> for NewtonPayload {
    fn from(report: &BoundReport) -> Self {
        Self {
            newton_number: RatPair::from(&report.newton_number),
            simplex_bound: RatPair::from(&report.simplex_bound),
            simplex_bound_float: resmass_core::to_f64(&report.simplex_bound),
            simplex_witness: weight_pairs(&report.simplex_witness),
            standard_bound: RatPair::from(&report.standard_bound),
            upper_bound: RatPair::from(&report.upper_bound),
            triangulation_simplices: report.triangulation_simplices,
            optimizer_trace: report.optimizer_trace.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct LelongPayload {
    pub values: Vec<LelongValue>,
}

#[derive(Serialize)]
pub struct LelongValue {
    pub weight: Vec<RatPair>,
    pub lelong_number: RatPair,
}

impl LelongValue {
    pub fn new(weight: &Weight, value: &Rat) -> Self {
        Self {
            weight: weight_pairs(weight),
            lelong_number: RatPair::from(value),
        }
    }
}

#[derive(Serialize)]
pub struct MixedPayload {
    pub value: RatPair,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regularization_level: Option<u32>,
    pub terms: Vec<MixedTerm>,
}

#[derive(Serialize)]
pub struct MixedTerm {
    pub subset: Vec<usize>,
    pub newton_number: RatPair,
}

impl From<&MixedMassResult> for MixedPayload {
    fn from(result: &MixedMassResult) -> Self {
        Self {
            value: RatPair::from(&result.value),
            regularization_level: result.regularization_level,
            terms: result
                .terms
                .iter()
                .map(|t| MixedTerm {
                    subset: t.subset.clone(),
                    newton_number: RatPair::from(&t.newton_number),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct MilnorPayload {
    pub per_weight: Vec<MilnorValue>,
    pub best: MilnorValue,
}

#[derive(Serialize)]
pub struct MilnorValue {
    pub weight: Vec<RatPair>,
    pub bound: RatPair,
}

impl MilnorValue {
    pub fn new(weight: &Weight, bound: &Rat) -> Self {
        Self {
            weight: weight_pairs(weight),
            bound: RatPair::from(bound),
        }
    }
}

#[derive(Serialize)]
pub struct BoundsPayload {
    pub sweep: Vec<BoundsRow>,
}

#[derive(Serialize)]
pub struct BoundsRow {
    pub weight: Vec<RatPair>,
    pub product_bound: RatPair,
    pub component_lelong_numbers: Vec<RatPair>,
}

#[derive(Serialize)]
pub struct EstimatePayload {
    pub plan: PlanEcho,
    pub estimates: Vec<EstimateRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tangent: Option<TangentBlock>,
}

#[derive(Serialize)]
pub struct PlanEcho {
    pub scales: Vec<f64>,
    pub angle_samples: usize,
    pub seed: u64,
    pub statistic: &'static str,
}

impl From<&SamplingPlan> for PlanEcho {
    fn from(plan: &SamplingPlan) -> Self {
        Self {
            scales: plan.scales.clone(),
            angle_samples: plan.angle_samples,
            seed: plan.seed,
            statistic: match plan.statistic {
                Statistic::Sup => "sup",
                Statistic::Mean => "mean",
            },
        }
    }
}

#[derive(Serialize)]
pub struct EstimateRow {
    pub weight: Vec<RatPair>,
    pub exact_index: RatPair,
    pub estimate: f64,
    pub relative_error: f64,
    pub table: Vec<TableRow>,
}

#[derive(Serialize)]
pub struct TangentBlock {
    pub point_moduli: Vec<f64>,
    pub m_max: u32,
    pub table: Vec<TableRow>,
}

#[derive(Serialize)]
pub struct TableRow {
    pub parameter: f64,
    pub sampled: f64,
    pub reference: f64,
    pub relative_error: f64,
    pub std_error: f64,
}

pub fn table_rows(table: &ConvergenceTable) -> Vec<TableRow> {
    table
        .rows
        .iter()
        .map(|r| TableRow {
            parameter: r.parameter,
            sampled: r.sampled,
            reference: r.reference,
            relative_error: r.relative_error,
            std_error: r.std_error,
        })
        .collect()
}

#[derive(Serialize)]
pub struct OraclePayload {
    pub exact_volume: RatPair,
    pub exact_volume_float: f64,
    pub estimate: f64,
    pub std_error: f64,
    pub z_score: f64,
    pub within_four_std_errors: bool,
    pub samples: usize,
}
