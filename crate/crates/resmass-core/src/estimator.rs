//! Numerical verification of the analytic definitions: directional Lelong
//! numbers by shrinking-torus sampling and the monotone convergence of the
//! logarithmic tangents `m^{-1} u(z^m)` toward the indicator.
//!
//! All sampling is seeded and drawn from per-row RNG substreams, so tables
//! are bit-identical for a fixed plan regardless of evaluation order.

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::indicator::Weight;
use crate::mapping::PolynomialMapping;
use crate::rational::to_f64;

/// Which torus statistic drives the slope fit. The polydisk supremum of
/// `log|f|` sits on the distinguished boundary, so `Sup` is the default;
/// the circle mean converges to the same slope.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistic {
    Sup,
    Mean,
}

/// Sampling schedule for the torus estimators.
#[derive(Clone, Debug)]
pub struct SamplingPlan {
    /// Radius exponents: the torus at scale `s` has `|z_k| = e^{-s a_k}`.
    pub scales: Vec<f64>,
    pub angle_samples: usize,
    pub seed: u64,
    pub statistic: Statistic,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        Self {
            scales: vec![5.0, 10.0, 15.0, 20.0, 25.0],
            angle_samples: 4096,
            seed: 0x1e10,
            statistic: Statistic::Sup,
        }
    }
}

impl SamplingPlan {
    pub fn validate(&self) -> Result<()> {
        if self.scales.len() < 3 {
            return Err(Error::InvalidPlan(
                "need at least 3 scales for the least-squares slope".into(),
            ));
        }
        if !self
            .scales
            .windows(2)
            .all(|w| w[0] < w[1] && w[0].is_finite())
        {
            return Err(Error::InvalidPlan(
                "scales must be strictly increasing".into(),
            ));
        }
        if self.scales[0] <= 0.0 {
            return Err(Error::InvalidPlan("scales must be positive".into()));
        }
        if self.angle_samples < 16 {
            return Err(Error::InvalidPlan(
                "need at least 16 angle samples".into(),
            ));
        }
        Ok(())
    }
}

/// One row of a convergence table.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    /// The running parameter: the scale `s` or the tangent order `m`.
    pub parameter: f64,
    pub sampled: f64,
    pub reference: f64,
    pub relative_error: f64,
    /// Monte-Carlo standard error of the sampled column.
    pub std_error: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
}

fn relative_error(sampled: f64, exact: f64) -> f64 {
    (sampled - exact).abs() / exact.abs().max(1e-12)
}

/// Fraction of zero-set hits tolerated before the run aborts.
const MAX_DISCARD_FRACTION: f64 = 0.01;

struct TorusSample {
    values: Vec<f64>,
    discarded: usize,
}

/// Draws `count` uniform phase tuples on the torus of the given radii and
/// evaluates `log|f|`, discarding exact zero-set hits.
fn sample_torus(
    mapping: &PolynomialMapping,
    radii: &[f64],
    count: usize,
    rng: &mut ChaCha8Rng,
) -> TorusSample {
    let n = radii.len();
    let mut values = Vec::with_capacity(count);
    let mut discarded = 0usize;
    let mut z = vec![Complex64::new(0.0, 0.0); n];
    for _ in 0..count {
        for k in 0..n {
            let theta = rng.gen::<f64>() * std::f64::consts::TAU;
            z[k] = Complex64::from_polar(radii[k], theta);
        }
        let v = mapping.evaluate_log_modulus(&z);
        if v == f64::NEG_INFINITY {
            discarded += 1;
        } else {
            values.push(v);
        }
    }
    TorusSample { values, discarded }
}

fn mean_and_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Estimates the directional Lelong number of `log|f|` at the origin with
/// respect to `a` by fitting `statistic(s) ~ -nu * s + c` over the plan's
/// scales. The table compares the per-scale normalized value `-stat/s`
/// against the exact weighted index.
pub fn estimate_directional_lelong(
    mapping: &PolynomialMapping,
    a: &Weight,
    plan: &SamplingPlan,
) -> Result<(f64, ConvergenceTable)> {
    plan.validate()?;
    mapping.validate_recentered()?;
    let exact = to_f64(&mapping.index(a)?);
    let weight = a.to_f64_vec();

    let mut rows = Vec::with_capacity(plan.scales.len());
    let mut stats = Vec::with_capacity(plan.scales.len());
    let mut discarded_total = 0usize;
    let mut samples_total = 0usize;
    for (row, &s) in plan.scales.iter().enumerate() {
        let radii: Vec<f64> = weight.iter().map(|ak| (-s * ak).exp()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
        rng.set_stream(row as u64 + 1);
        let sample = sample_torus(mapping, &radii, plan.angle_samples, &mut rng);
        discarded_total += sample.discarded;
        samples_total += plan.angle_samples;
        if sample.values.is_empty() {
            return Err(Error::MeasureZeroViolated {
                discarded: discarded_total,
                total: samples_total,
            });
        }
        let (mean, std) = mean_and_std(&sample.values);
        let stat = match plan.statistic {
            Statistic::Sup => sample.values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            Statistic::Mean => mean,
        };
        stats.push(stat);
        let normalized = -stat / s;
        rows.push(ConvergenceRow {
            parameter: s,
            sampled: normalized,
            reference: exact,
            relative_error: relative_error(normalized, exact),
            std_error: std / (s * (sample.values.len() as f64).sqrt()),
        });
    }
    if (discarded_total as f64) > MAX_DISCARD_FRACTION * samples_total as f64 {
        return Err(Error::MeasureZeroViolated {
            discarded: discarded_total,
            total: samples_total,
        });
    }

    // Least-squares slope of stat against s; the estimate is its negative.
    let n = plan.scales.len() as f64;
    let mean_s = plan.scales.iter().sum::<f64>() / n;
    let mean_y = stats.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (&s, &y) in plan.scales.iter().zip(&stats) {
        num += (s - mean_s) * (y - mean_y);
        den += (s - mean_s) * (s - mean_s);
    }
    let estimate = -num / den;
    Ok((estimate, ConvergenceTable { rows }))
}

/// Tabulates the circle means `M(T_m u, |z|) = m^{-1} * mean(log|f|)` at
/// radii `|z_k|^m` for `m = 1..=m_max` against the exact indicator value at
/// `Log|z|`. The means increase to the reference as `m` grows.
pub fn tangent_convergence_check(
    mapping: &PolynomialMapping,
    z: &[Complex64],
    m_max: u32,
    plan: &SamplingPlan,
) -> Result<ConvergenceTable> {
    if plan.angle_samples < 16 {
        return Err(Error::InvalidPlan("need at least 16 angle samples".into()));
    }
    if m_max == 0 {
        return Err(Error::InvalidPlan("m_max must be at least 1".into()));
    }
    mapping.validate_recentered()?;
    if z.len() != mapping.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: mapping.n_vars(),
            got: z.len(),
        });
    }
    let moduli: Vec<f64> = z.iter().map(|zk| zk.norm()).collect();
    if moduli.iter().any(|&r| r <= 0.0 || r >= 1.0) {
        return Err(Error::InvalidArgument(
            "sample point must lie in the open unit polydisk with nonzero coordinates".into(),
        ));
    }
    let psi = mapping.union_indicator()?;
    let log_moduli: Vec<f64> = moduli.iter().map(|r| r.ln()).collect();
    let reference = psi.evaluate_f64(&log_moduli);

    let mut rows = Vec::with_capacity(m_max as usize);
    let mut discarded_total = 0usize;
    let mut samples_total = 0usize;
    for m in 1..=m_max {
        let radii: Vec<f64> = moduli.iter().map(|r| r.powi(m as i32)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
        rng.set_stream(u64::from(m));
        let sample = sample_torus(mapping, &radii, plan.angle_samples, &mut rng);
        discarded_total += sample.discarded;
        samples_total += plan.angle_samples;
        if sample.values.is_empty() {
            return Err(Error::MeasureZeroViolated {
                discarded: discarded_total,
                total: samples_total,
            });
        }
        let (mean, std) = mean_and_std(&sample.values);
        let value = mean / f64::from(m);
        rows.push(ConvergenceRow {
            parameter: f64::from(m),
            sampled: value,
            reference,
            relative_error: relative_error(value, reference),
            std_error: std / (f64::from(m) * (sample.values.len() as f64).sqrt()),
        });
    }
    if (discarded_total as f64) > MAX_DISCARD_FRACTION * samples_total as f64 {
        return Err(Error::MeasureZeroViolated {
            discarded: discarded_total,
            total: samples_total,
        });
    }
    Ok(ConvergenceTable { rows })
}

/// Additive slack granted to the sampled boundary supremum in the
/// domination check; the finite boundary sample can only underestimate the
/// true supremum.
const DOMINATION_SLACK: f64 = 0.1;

/// Samples the polydisk of polyradius `r` and verifies the indicator
/// domination `u(z) <= Psi(r^{-1} z) + sup_{D_r} u + slack`, with the
/// supremum estimated on the distinguished boundary. Returns whether every
/// sample satisfied the inequality.
pub fn indicator_domination_check(
    mapping: &PolynomialMapping,
    r: &[f64],
    samples: usize,
    seed: u64,
) -> Result<bool> {
    mapping.validate_recentered()?;
    if r.len() != mapping.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: mapping.n_vars(),
            got: r.len(),
        });
    }
    if r.iter().any(|&rk| rk <= 0.0 || rk >= 1.0) {
        return Err(Error::InvalidArgument(
            "polyradius coordinates must lie in (0, 1)".into(),
        ));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let psi = mapping.union_indicator()?;
    let n = r.len();

    // Boundary supremum on |z_k| = r_k.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let boundary = sample_torus(mapping, r, samples.max(1024), &mut rng);
    let sup_estimate = boundary
        .values
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    if sup_estimate == f64::NEG_INFINITY {
        return Err(Error::MeasureZeroViolated {
            discarded: boundary.discarded,
            total: samples.max(1024),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(2);
    let mut z = vec![Complex64::new(0.0, 0.0); n];
    let mut t = vec![0.0f64; n];
    for _ in 0..samples {
        for k in 0..n {
            let modulus = r[k] * rng.gen::<f64>().sqrt();
            let theta = rng.gen::<f64>() * std::f64::consts::TAU;
            z[k] = Complex64::from_polar(modulus, theta);
            t[k] = (z[k].norm() / r[k]).ln();
        }
        let u = mapping.evaluate_log_modulus(&z);
        if u == f64::NEG_INFINITY {
            continue; // -inf satisfies any upper bound
        }
        let bound = psi.evaluate_f64(&t) + sup_estimate + DOMINATION_SLACK;
        if u > bound {
            return Ok(false);
        }
    }
    Ok(true)
}
