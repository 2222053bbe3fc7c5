//! Newton numbers and the residual-mass bound lattice: the standard bound,
//! the simplex bound with witness search, the axis-multiplicity upper
//! bound, mixed masses by polarization, product bounds and Milnor bounds.

use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{theta_volume, NewtonComplex, RationalPoint};
use crate::indicator::{PolyhedralIndicator, Weight};
use crate::rational::{approx_rat, factorial, rat_int, Rat};

/// All bounds of the chain `standard <= simplex <= newton <= upper` for one
/// convenient indicator, with diagnostics from the volume triangulation and
/// the witness search.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub newton_number: Rat,
    pub simplex_bound: Rat,
    pub simplex_witness: Weight,
    pub standard_bound: Rat,
    pub upper_bound: Rat,
    pub triangulation_simplices: usize,
    pub optimizer_trace: String,
}

/// Mixed Monge-Ampere mass with its audit trail: one Newton number per
/// nonempty index subset of the polarization formula.
#[derive(Clone, Debug)]
pub struct MixedMassResult {
    pub value: Rat,
    /// Regularization level at which three consecutive values agreed;
    /// `None` when all inputs were convenient and no regularization ran.
    pub regularization_level: Option<u32>,
    pub terms: Vec<MixedMassTerm>,
}

#[derive(Clone, Debug)]
pub struct MixedMassTerm {
    pub subset: Vec<usize>,
    pub newton_number: Rat,
}

/// Tuning for the simplex-bound witness search. The exact candidate
/// evaluations make the result a sound lower bound regardless of these
/// settings; they only affect how hard the float refinement tries.
#[derive(Clone, Debug)]
pub struct SimplexSearchConfig {
    pub multistarts: usize,
    pub iterations: usize,
    pub seed: u64,
    pub max_denominator: u64,
}

impl Default for SimplexSearchConfig {
    fn default() -> Self {
        Self {
            multistarts: 6,
            iterations: 200,
            seed: 0x5eed_cafe,
            max_denominator: 1_000_000,
        }
    }
}

fn require_convenient(psi: &PolyhedralIndicator) -> Result<()> {
    match psi.axis_multiplicities().first_unbounded_axis() {
        Some(axis) => Err(Error::NotConvenient { axis }),
        None => Ok(()),
    }
}

/// Newton number `n! * Vol(theta)` of a convenient indicator; exact.
pub fn newton_number(psi: &PolyhedralIndicator) -> Result<Rat> {
    require_convenient(psi)?;
    let hull = NewtonComplex::lower_hull(psi.generators(), psi.dimension())?;
    Ok(theta_volume(&hull)?.normalized)
}

/// Upper bound: the product of the axis multiplicities.
pub fn residual_upper_bound(psi: &PolyhedralIndicator) -> Result<Rat> {
    psi.axis_multiplicities().product()
}

/// The standard bound: the Lelong number to the n-th power.
pub fn standard_bound(psi: &PolyhedralIndicator) -> Rat {
    let nu = psi.lelong_number();
    let mut acc = rat_int(1);
    for _ in 0..psi.dimension() {
        acc *= &nu;
    }
    acc
}

/// Simplex bound: maximizes `nu(a)^n / (a_1 ... a_n)` over positive
/// weights. Exact evaluation at the candidate weights (compact facet
/// normals, the uniform weight, the reciprocal-axis weight) guarantees a
/// sound lower bound; a derivative-free search in log-weight coordinates
/// then tries to refine the best candidate. Returns the best exact value
/// found and its witness weight.
pub fn simplex_bound(
    psi: &PolyhedralIndicator,
    config: &SimplexSearchConfig,
) -> Result<(Rat, Weight)> {
    require_convenient(psi)?;
    let hull = NewtonComplex::lower_hull(psi.generators(), psi.dimension())?;
    let newton = theta_volume(&hull)?.normalized;
    let outcome = simplex_search(psi, &hull, &newton, config)?;
    Ok((outcome.value, outcome.witness))
}

struct SimplexSearchOutcome {
    value: Rat,
    witness: Weight,
    trace: String,
}

/// Exact objective `nu(a)^n / prod(a)`.
fn simplex_objective(psi: &PolyhedralIndicator, a: &Weight) -> Rat {
    let nu = psi
        .directional_lelong(a)
        .expect("weight dimension checked by caller");
    let mut value = rat_int(1);
    for _ in 0..psi.dimension() {
        value *= &nu;
    }
    for c in a.coords() {
        value /= c;
    }
    value
}

/// Scales a weight to coprime integer coordinates, keeping the ray.
fn normalize_witness(w: &Weight) -> Weight {
    use num::Integer;
    let mut lcm = num::BigInt::from(1);
    for c in w.coords() {
        lcm = lcm.lcm(c.denom());
    }
    let mut gcd = num::BigInt::from(0);
    for c in w.coords() {
        gcd = gcd.gcd(&(c.numer() * &lcm / c.denom()));
    }
    if gcd.is_zero() {
        return w.clone();
    }
    let scale = Rat::new(lcm, gcd);
    w.scale(&scale).expect("positive scale keeps positivity")
}

fn simplex_search(
    psi: &PolyhedralIndicator,
    hull: &NewtonComplex,
    newton: &Rat,
    config: &SimplexSearchConfig,
) -> Result<SimplexSearchOutcome> {
    let n = psi.dimension();
    let nu = psi.axis_multiplicities();

    let mut candidates: Vec<(Weight, &'static str)> =
        vec![(Weight::uniform(n), "uniform")];
    if let Ok(product) = nu.product() {
        if product.is_positive() {
            let coords: Vec<Rat> = (0..n)
                .map(|k| nu.get(k).expect("convenient").recip())
                .collect();
            candidates.push((Weight::new(coords)?, "reciprocal-axis"));
        }
    }
    for facet in hull.compact_facets() {
        let coords = facet.normal().coords().to_vec();
        candidates.push((Weight::new(coords)?, "facet-normal"));
    }

    let mut scored: Vec<(Rat, Weight, &'static str)> = candidates
        .into_iter()
        .map(|(w, label)| (simplex_objective(psi, &w), w, label))
        .collect();
    let candidate_count = scored.len();
    // Stable ordering: best value first, earlier candidate wins ties.
    scored.sort_by(|a, b| b.0.cmp(&a.0));
    let (mut best_value, mut best_witness, mut best_source) = scored[0].clone();

    // Float refinement in log-weight coordinates around the top candidates.
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut starts: Vec<Vec<f64>> = scored
        .iter()
        .take(config.multistarts.min(scored.len()))
        .map(|(_, w, _)| w.to_f64_vec().iter().map(|x| x.ln()).collect())
        .collect();
    while starts.len() < config.multistarts {
        let base: Vec<f64> = best_witness.to_f64_vec().iter().map(|x| x.ln()).collect();
        starts.push(
            base.iter()
                .map(|y| y + rng.gen_range(-1.0..1.0))
                .collect(),
        );
    }

    let gens_f64: Vec<Vec<f64>> = psi
        .generators()
        .iter()
        .map(|p| p.to_f64_vec())
        .collect();
    let log_objective = |y: &[f64]| -> f64 {
        let a: Vec<f64> = y.iter().map(|v| v.exp()).collect();
        let nu = gens_f64
            .iter()
            .map(|p| p.iter().zip(&a).map(|(pk, ak)| pk * ak).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        if nu <= 0.0 {
            return f64::NEG_INFINITY;
        }
        n as f64 * nu.ln() - y.iter().sum::<f64>()
    };

    let mut evaluations = 0usize;
    let mut refined = false;
    for start in &starts {
        let mut y = start.clone();
        let mut value = log_objective(&y);
        let mut step = 0.25f64;
        for _ in 0..config.iterations {
            let mut improved = false;
            for k in 0..n {
                for dir in [step, -step] {
                    let mut trial = y.clone();
                    trial[k] += dir;
                    let v = log_objective(&trial);
                    evaluations += 1;
                    if v > value {
                        y = trial;
                        value = v;
                        improved = true;
                    }
                }
            }
            if !improved {
                step *= 0.5;
                if step < 1e-7 {
                    break;
                }
            }
        }
        // Rationalize and re-check exactly; only a strict exact improvement
        // replaces the incumbent.
        let coords: Option<Vec<Rat>> = y
            .iter()
            .map(|v| approx_rat(v.exp(), config.max_denominator).filter(|r| r.is_positive()))
            .collect();
        if let Some(coords) = coords {
            if let Ok(w) = Weight::new(coords) {
                let exact = simplex_objective(psi, &w);
                if exact > best_value {
                    best_value = exact;
                    best_witness = w;
                    best_source = "refined";
                    refined = true;
                }
            }
        }
    }

    if &best_value > newton {
        return Err(Error::Internal(format!(
            "simplex bound {best_value} exceeds newton number {newton}"
        )));
    }
    let witness = normalize_witness(&best_witness);
    debug_assert_eq!(simplex_objective(psi, &witness), best_value);
    let trace = format!(
        "{candidate_count} exact candidates, {} starts x {} iterations ({evaluations} float evals), best from {best_source}{}",
        starts.len(),
        config.iterations,
        if refined { "" } else { " (refinement did not improve)" },
    );
    Ok(SimplexSearchOutcome {
        value: best_value,
        witness,
        trace,
    })
}

/// Mixed mass of `n` indicators in dimension `n` by the polarization
/// inclusion-exclusion over Newton numbers of subset sums.
///
/// Convenient inputs evaluate directly. Non-convenient inputs require
/// `regularize`; each indicator is then capped with `sup(psi, N * sup_j
/// log|z_j|)` for increasing `N` until the value is constant over three
/// consecutive levels, and the detection level is reported.
pub fn mixed_mass(
    indicators: &[PolyhedralIndicator],
    regularize: bool,
    max_level: u32,
) -> Result<MixedMassResult> {
    let n = indicators.len();
    if n == 0 {
        return Err(Error::InvalidArgument("no indicators given".into()));
    }
    for psi in indicators {
        if psi.dimension() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: psi.dimension(),
            });
        }
    }

    let all_convenient = indicators.iter().all(PolyhedralIndicator::is_convenient);
    if all_convenient {
        let (value, terms) = polarization_value(indicators)?;
        return Ok(MixedMassResult {
            value,
            regularization_level: None,
            terms,
        });
    }
    if !regularize {
        let offender = indicators
            .iter()
            .find_map(|p| p.axis_multiplicities().first_unbounded_axis())
            .expect("some indicator is not convenient");
        return Err(Error::NotConvenient { axis: offender });
    }

    let unit = PolyhedralIndicator::unit_vectors(n);
    let mut history: Vec<(Rat, Vec<MixedMassTerm>)> = Vec::new();
    for level in 1..=max_level {
        let cap = unit.scale(&rat_int(i64::from(level)))?;
        let capped: Vec<PolyhedralIndicator> = indicators
            .iter()
            .map(|psi| psi.sup(&cap))
            .collect::<Result<_>>()?;
        let (value, terms) = polarization_value(&capped)?;
        history.push((value, terms));
        if history.len() >= 3 {
            let k = history.len();
            if history[k - 1].0 == history[k - 2].0 && history[k - 2].0 == history[k - 3].0 {
                let (value, terms) = history.pop().expect("nonempty");
                return Ok(MixedMassResult {
                    value,
                    regularization_level: Some(level),
                    terms,
                });
            }
        }
    }
    Err(Error::DidNotStabilize { max_level })
}

/// `(-1)^n / n! * sum_j (-1)^j sum_{i1<...<ij} N(psi_{i1} + ... + psi_{ij})`
/// over all nonempty index subsets; inputs must be convenient.
fn polarization_value(
    indicators: &[PolyhedralIndicator],
) -> Result<(Rat, Vec<MixedMassTerm>)> {
    let n = indicators.len();
    let mut acc = Rat::zero();
    let mut terms = Vec::with_capacity((1usize << n) - 1);
    for mask in 1u32..(1u32 << n) {
        let subset: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
        let mut sum = indicators[subset[0]].clone();
        for &k in &subset[1..] {
            sum = sum.sum(&indicators[k])?;
        }
        let newton = newton_number(&sum)?;
        let sign_positive = (n + subset.len()) % 2 == 0;
        if sign_positive {
            acc += &newton;
        } else {
            acc -= &newton;
        }
        terms.push(MixedMassTerm {
            subset,
            newton_number: newton,
        });
    }
    Ok((acc / factorial(n), terms))
}

/// Product bound `prod_j nu(psi_j, a) / prod_k a_k`; exact, no convenience
/// requirement.
pub fn product_bound(indicators: &[PolyhedralIndicator], a: &Weight) -> Result<Rat> {
    if indicators.is_empty() {
        return Err(Error::InvalidArgument("no indicators given".into()));
    }
    let mut value = rat_int(1);
    for psi in indicators {
        value *= psi.directional_lelong(a)?;
    }
    for c in a.coords() {
        value /= c;
    }
    Ok(value)
}

/// Milnor lower bound `prod_k max(I/a_k - 1, 0)` where `I` is the weighted
/// index `min_p <a, p>` over the support. Negative factors are clamped at
/// zero: a vacuous bound at a smooth point, never a negative one.
pub fn milnor_lower_bound(support: &[RationalPoint], a: &Weight) -> Result<Rat> {
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    let point = a.as_point();
    let index = support
        .iter()
        .map(|p| p.dot(&point))
        .min()
        .expect("nonempty support");
    let mut value = rat_int(1);
    for ak in a.coords() {
        let factor = &index / ak - rat_int(1);
        if !factor.is_positive() {
            return Ok(Rat::zero());
        }
        value *= factor;
    }
    Ok(value)
}

/// Maximizes the Milnor lower bound over the compact facet normals of the
/// support hull, the uniform weight, and any extra candidate weights.
pub fn milnor_lower_bound_opt(
    support: &[RationalPoint],
    extra_candidates: &[Weight],
) -> Result<(Rat, Weight)> {
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    let n = support[0].dim();
    let mut candidates = vec![Weight::uniform(n)];
    let hull = NewtonComplex::lower_hull(support, n)?;
    for facet in hull.compact_facets() {
        candidates.push(Weight::new(facet.normal().coords().to_vec())?);
    }
    candidates.extend(extra_candidates.iter().cloned());

    let mut best: Option<(Rat, Weight)> = None;
    for w in candidates {
        let value = milnor_lower_bound(support, &w)?;
        match &best {
            Some((v, _)) if *v >= value => {}
            _ => best = Some((value, w)),
        }
    }
    Ok(best.expect("at least the uniform candidate"))
}

/// Computes the whole bound report for one convenient indicator and checks
/// the chain `standard <= simplex <= newton <= upper` exactly before
/// returning. A chain violation is a kernel bug and reported as internal.
pub fn analyze(psi: &PolyhedralIndicator, config: &SimplexSearchConfig) -> Result<BoundReport> {
    require_convenient(psi)?;
    let hull = NewtonComplex::lower_hull(psi.generators(), psi.dimension())?;
    let volume = theta_volume(&hull)?;
    let newton = volume.normalized.clone();
    let standard = standard_bound(psi);
    let upper = residual_upper_bound(psi)?;
    let search = simplex_search(psi, &hull, &newton, config)?;

    if !(standard <= search.value && search.value <= newton && newton <= upper) {
        return Err(Error::Internal(format!(
            "bound chain violated: standard {standard}, simplex {}, newton {newton}, upper {upper}",
            search.value
        )));
    }

    Ok(BoundReport {
        newton_number: newton,
        simplex_bound: search.value,
        simplex_witness: search.witness,
        standard_bound: standard,
        upper_bound: upper,
        triangulation_simplices: volume.simplex_count,
        optimizer_trace: search.trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ind(rows: &[&[i64]], n: usize) -> PolyhedralIndicator {
        PolyhedralIndicator::from_int_support(rows, n).unwrap()
    }

    fn w(xs: &[i64]) -> Weight {
        Weight::new(xs.iter().map(|&x| rat_int(x)).collect()).unwrap()
    }

    #[test]
    fn newton_numbers_of_the_worked_examples() {
        assert_eq!(newton_number(&ind(&[&[2, 0], &[0, 1]], 2)).unwrap(), rat_int(2));
        assert_eq!(
            newton_number(&ind(&[&[2, 0], &[0, 1], &[0, 3]], 2)).unwrap(),
            rat_int(2)
        );
        assert_eq!(newton_number(&ind(&[&[3, 0], &[0, 2]], 2)).unwrap(), rat_int(6));
        let err = newton_number(&ind(&[&[0, 3]], 2)).unwrap_err();
        assert!(matches!(err, Error::NotConvenient { axis: 0 }));
    }

    #[test]
    fn upper_and_standard_bounds() {
        let psi = ind(&[&[2, 0], &[0, 1], &[0, 3]], 2);
        assert_eq!(residual_upper_bound(&psi).unwrap(), rat_int(2));
        assert_eq!(standard_bound(&psi), rat_int(1));
        let psi32 = ind(&[&[3, 0], &[0, 2]], 2);
        assert_eq!(residual_upper_bound(&psi32).unwrap(), rat_int(6));
        assert_eq!(standard_bound(&psi32), rat_int(4));
        let units = PolyhedralIndicator::unit_vectors(3);
        assert_eq!(residual_upper_bound(&units).unwrap(), rat_int(1));
        assert_eq!(standard_bound(&units), rat_int(1));
    }

    #[test]
    fn simplex_bound_examples() {
        let config = SimplexSearchConfig::default();
        let (value, witness) = simplex_bound(&ind(&[&[3, 0], &[0, 2]], 2), &config).unwrap();
        assert_eq!(value, rat_int(6));
        // Witness proportional to (1/3, 1/2), normalized to integers.
        assert_eq!(witness, w(&[2, 3]));

        let (value, _) = simplex_bound(&ind(&[&[2, 0], &[0, 1], &[0, 3]], 2), &config).unwrap();
        assert_eq!(value, rat_int(2));

        let (value, witness) = simplex_bound(&PolyhedralIndicator::unit_vectors(3), &config).unwrap();
        assert_eq!(value, rat_int(1));
        assert_eq!(witness, w(&[1, 1, 1]));
    }

    #[test]
    fn analyze_fills_the_chain() {
        let report = analyze(&ind(&[&[3, 0], &[0, 2]], 2), &SimplexSearchConfig::default()).unwrap();
        assert_eq!(report.newton_number, rat_int(6));
        assert_eq!(report.simplex_bound, rat_int(6));
        assert_eq!(report.standard_bound, rat_int(4));
        assert_eq!(report.upper_bound, rat_int(6));
        assert_eq!(report.triangulation_simplices, 1);

        let report = analyze(
            &ind(&[&[2, 0], &[0, 1], &[0, 3]], 2),
            &SimplexSearchConfig::default(),
        )
        .unwrap();
        assert_eq!(report.newton_number, rat_int(2));
        assert_eq!(report.simplex_bound, rat_int(2));
        assert_eq!(report.standard_bound, rat_int(1));
        assert_eq!(report.upper_bound, rat_int(2));
    }

    #[test]
    fn mixed_mass_diagonal_and_weighted_pairs() {
        let unit = PolyhedralIndicator::unit_vectors(2);
        let result = mixed_mass(&[unit.clone(), unit], false, 8).unwrap();
        assert_eq!(result.value, rat_int(1));
        assert_eq!(result.regularization_level, None);
        assert_eq!(result.terms.len(), 3);

        for (k1, k2) in [(1i64, 1i64), (2, 3), (3, 2), (4, 1)] {
            let a = ind(&[&[k1, 0], &[0, k1]], 2);
            let b = ind(&[&[k2, 0], &[0, k2]], 2);
            let result = mixed_mass(&[a, b], false, 8).unwrap();
            assert_eq!(result.value, rat_int(k1 * k2), "k1={k1} k2={k2}");
        }
    }

    #[test]
    fn mixed_mass_regularizes_the_paper_mapping() {
        let psi1 = ind(&[&[2, 0], &[0, 1]], 2);
        let psi2 = ind(&[&[0, 3]], 2);
        assert!(matches!(
            mixed_mass(&[psi1.clone(), psi2.clone()], false, 16),
            Err(Error::NotConvenient { axis: 0 })
        ));
        let result = mixed_mass(&[psi1, psi2], true, 16).unwrap();
        assert_eq!(result.value, rat_int(6));
        let level = result.regularization_level.unwrap();
        assert!((7..=10).contains(&level), "level {level}");
    }

    #[test]
    fn mixed_mass_that_never_needs_high_levels() {
        // Components of a mapping whose second entry is already a coordinate.
        let psi1 = ind(&[&[2, 0], &[0, 1]], 2);
        let psi2 = ind(&[&[0, 1]], 2);
        let result = mixed_mass(&[psi1, psi2], true, 16).unwrap();
        assert_eq!(result.value, rat_int(2));
        assert!(result.regularization_level.unwrap() <= 10);
    }

    #[test]
    fn product_bound_examples() {
        let psi1 = ind(&[&[2, 0], &[0, 1]], 2);
        let psi2 = ind(&[&[0, 3]], 2);
        assert_eq!(
            product_bound(&[psi1.clone(), psi2.clone()], &w(&[1, 2])).unwrap(),
            rat_int(6)
        );
        assert_eq!(
            product_bound(&[psi1.clone(), psi2], &w(&[1, 1])).unwrap(),
            rat_int(3)
        );
        let nu = psi1.lelong_number();
        assert_eq!(
            product_bound(&[psi1.clone(), psi1], &w(&[1, 1])).unwrap(),
            &nu * &nu
        );
    }

    #[test]
    fn milnor_bounds() {
        let cubic = [
            RationalPoint::from_ints(&[3, 0]),
            RationalPoint::from_ints(&[0, 3]),
        ];
        assert_eq!(milnor_lower_bound(&cubic, &w(&[1, 1])).unwrap(), rat_int(4));

        let morse = [
            RationalPoint::from_ints(&[2, 0]),
            RationalPoint::from_ints(&[0, 2]),
        ];
        assert_eq!(milnor_lower_bound(&morse, &w(&[1, 1])).unwrap(), rat_int(1));

        let smooth = [
            RationalPoint::from_ints(&[2, 0]),
            RationalPoint::from_ints(&[0, 1]),
        ];
        assert_eq!(milnor_lower_bound(&smooth, &w(&[1, 2])).unwrap(), Rat::zero());

        let (best, witness) = milnor_lower_bound_opt(&cubic, &[]).unwrap();
        assert_eq!(best, rat_int(4));
        assert_eq!(milnor_lower_bound(&cubic, &witness).unwrap(), rat_int(4));
    }

    #[test]
    fn mixed_mass_requires_matching_dimension() {
        let psi = ind(&[&[1, 0], &[0, 1]], 2);
        assert!(mixed_mass(&[psi], false, 4).is_err());
    }
}
