//! Acceptance suite: every release-gating check, one test per criterion,
//! each printing a PASS line with the measured numbers. Tolerances are
//! pinned here, not configurable.

mod util;

use std::time::Instant;

use num::complex::Complex64;
use rand::Rng;
use resmass_core::{
    analyze, estimate_directional_lelong, milnor_lower_bound, mixed_mass, monte_carlo_theta_volume,
    newton_number, product_bound, rat_int, standard_bound, tangent_convergence_check,
    theta_volume, to_f64, Component, ComplexRat, NewtonComplex, PolyhedralIndicator,
    PolynomialMapping, Rat, RationalPoint, SamplingPlan, SimplexSearchConfig, Term, Weight,
};

fn term(exponent: &[u32], re: i64) -> Term {
    Term {
        exponent: exponent.to_vec(),
        coeff: ComplexRat::new(rat_int(re), num::Zero::zero()),
    }
}

fn mapping(components: Vec<Vec<Term>>, n: usize) -> PolynomialMapping {
    PolynomialMapping::new(
        n,
        components.into_iter().map(Component::new).collect(),
        vec![num::Zero::zero(); n],
    )
    .unwrap()
}

/// f = (z1^2 + z2, z2)
fn mapping_two() -> PolynomialMapping {
    mapping(
        vec![vec![term(&[2, 0], 1), term(&[0, 1], 1)], vec![term(&[0, 1], 1)]],
        2,
    )
}

/// f = (z1^2 + z2, z2^3)
fn mapping_three() -> PolynomialMapping {
    mapping(
        vec![vec![term(&[2, 0], 1), term(&[0, 1], 1)], vec![term(&[0, 3], 1)]],
        2,
    )
}

/// f = (z1^3, z2^2)
fn mapping_weighted_monomials() -> PolynomialMapping {
    mapping(vec![vec![term(&[3, 0], 1)], vec![term(&[0, 2], 1)]], 2)
}

#[test]
fn criterion_01_weighted_monomial_indicator() {
    let psi = PolyhedralIndicator::from_int_support(&[&[3, 0], &[0, 2]], 2).unwrap();
    let newton = newton_number(&psi).unwrap();
    let standard = standard_bound(&psi);
    assert_eq!(newton, rat_int(6));
    assert_eq!(standard, rat_int(4));
    assert!(standard < newton);
    println!("PASS criterion 01: newton = {newton}, standard = {standard} (exact)");
}

#[test]
fn criterion_02_mapping_with_linear_second_component() {
    let f = mapping_two();
    let psi = f.union_indicator().unwrap();
    let newton = newton_number(&psi).unwrap();
    assert_eq!(newton, rat_int(2));

    let uniform = Weight::uniform(2);
    let components = f.component_indicators().unwrap();
    let product: Rat = components
        .iter()
        .map(|c| c.directional_lelong(&uniform).unwrap())
        .product();
    assert_eq!(product, rat_int(1));
    assert!(product < newton);
    println!("PASS criterion 02: newton = {newton}, component product = {product} (exact)");
}

#[test]
fn criterion_03_mapping_with_cubic_second_component() {
    let f = mapping_three();
    let newton = newton_number(&f.union_indicator().unwrap()).unwrap();
    assert_eq!(newton, rat_int(2));

    let components = f.component_indicators().unwrap();
    let uniform = Weight::uniform(2);
    let product: Rat = components
        .iter()
        .map(|c| c.directional_lelong(&uniform).unwrap())
        .product();
    assert_eq!(product, rat_int(3));

    let w12 = Weight::parse("1,2").unwrap();
    let bound = product_bound(&components, &w12).unwrap();
    assert_eq!(bound, rat_int(6));

    let mixed = mixed_mass(&components, true, 16).unwrap();
    assert_eq!(mixed.value, rat_int(6));
    let level = mixed.regularization_level.expect("regularization ran");
    assert!(level <= 10, "stabilized at level {level} > 10");
    println!(
        "PASS criterion 03: newton = {newton}, product(1,1) = {product}, \
         product bound(1,2) = {bound}, mixed = {} at level {level} (exact)",
        mixed.value
    );
}

#[test]
fn criterion_04_bound_chain_on_random_indicators() {
    let start = Instant::now();
    let config = SimplexSearchConfig::default();
    let mut rng = util::rng(0xC4A11);
    let mut checked = 0usize;
    for n in 2..=4usize {
        let max_extra = if n == 4 { 4 } else { 6 };
        for _ in 0..500 {
            let psi = util::random_convenient_indicator(&mut rng, n, 6, max_extra);
            let report = analyze(&psi, &config).unwrap();
            assert!(
                report.standard_bound <= report.simplex_bound
                    && report.simplex_bound <= report.newton_number
                    && report.newton_number <= report.upper_bound,
                "chain violated for {:?}",
                psi.generators()
            );
            // The witness must reproduce the reported value exactly.
            let nu = psi.directional_lelong(&report.simplex_witness).unwrap();
            let mut value = rat_int(1);
            for _ in 0..n {
                value *= &nu;
            }
            for c in report.simplex_witness.coords() {
                value /= c;
            }
            assert_eq!(value, report.simplex_bound, "witness re-evaluation drifted");
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() <= 120.0,
        "bound-chain suite took {elapsed:?}, budget is 2 minutes"
    );
    println!("PASS criterion 04: {checked} random indicators satisfied the chain in {elapsed:?}");
}

#[test]
fn criterion_05_monte_carlo_oracle_equivalence() {
    let mut rng = util::rng(0x0AC1E);
    let mut worst_z = 0.0f64;
    for round in 0..50 {
        let n = if round % 2 == 0 { 2 } else { 3 };
        let psi = util::random_convenient_indicator(&mut rng, n, 6, 5);
        let complex = NewtonComplex::lower_hull(psi.generators(), n).unwrap();
        let exact = to_f64(&theta_volume(&complex).unwrap().volume);
        let seed = rng.gen::<u64>();
        let (estimate, se) = monte_carlo_theta_volume(&complex, 1_000_000, seed).unwrap();
        assert!(se > 0.0, "degenerate standard error");
        let z = (estimate - exact).abs() / se;
        worst_z = worst_z.max(z);
        assert!(
            z <= 4.0,
            "oracle disagreement: exact {exact}, estimate {estimate}, z = {z:.2} \
             (generators {:?})",
            psi.generators()
        );
    }
    println!("PASS criterion 05: 50 complexes within 4 standard errors (worst z = {worst_z:.2})");
}

#[test]
fn criterion_06_polarization_identities() {
    let mut rng = util::rng(0x906A1);

    // Diagonal on 100 random convenient indicators.
    for round in 0..100 {
        let n = if round % 2 == 0 { 2 } else { 3 };
        let psi = util::random_convenient_indicator(&mut rng, n, 5, 3);
        let tuple: Vec<PolyhedralIndicator> = vec![psi.clone(); n];
        let diag = mixed_mass(&tuple, false, 8).unwrap();
        assert_eq!(diag.value, newton_number(&psi).unwrap(), "diagonal failed");
    }

    // Symmetry, multilinear scaling and the two mass inequalities on 100
    // random convenient tuples.
    for round in 0..100 {
        let n = if round % 2 == 0 { 2 } else { 3 };
        let tuple: Vec<PolyhedralIndicator> = (0..n)
            .map(|_| util::random_convenient_indicator(&mut rng, n, 4, 2))
            .collect();
        let value = mixed_mass(&tuple, false, 8).unwrap().value;

        let mut reversed = tuple.clone();
        reversed.reverse();
        assert_eq!(
            mixed_mass(&reversed, false, 8).unwrap().value,
            value,
            "permutation symmetry failed"
        );

        let c = resmass_core::rat(rng.gen_range(1..=6), rng.gen_range(1..=3));
        let mut scaled = tuple.clone();
        scaled[0] = scaled[0].scale(&c).unwrap();
        assert_eq!(
            mixed_mass(&scaled, false, 8).unwrap().value,
            &c * &value,
            "scaling multilinearity failed"
        );

        // Mass of the supremum never exceeds the mixed mass.
        let sup = tuple
            .iter()
            .skip(1)
            .fold(tuple[0].clone(), |acc, psi| acc.sup(psi).unwrap());
        assert!(
            newton_number(&sup).unwrap() <= value,
            "sup mass exceeded the mixed mass"
        );

        // Product bound from 100 random weights.
        for _ in 0..100 {
            let a = util::random_weight(&mut rng, n);
            let bound = product_bound(&tuple, &a).unwrap();
            assert!(bound <= value, "product bound {bound} exceeded mass {value}");
        }
    }
    println!("PASS criterion 06: diagonal, symmetry, scaling and both mass inequalities held");
}

#[test]
fn criterion_07_milnor_bounds_against_the_gradient_oracle() {
    let uniform = Weight::uniform(2);

    // F = z1^3 + z2^3: gradient support {(2,0),(0,2)} gives the oracle.
    let cubic = [
        RationalPoint::from_ints(&[3, 0]),
        RationalPoint::from_ints(&[0, 3]),
    ];
    let bound = milnor_lower_bound(&cubic, &uniform).unwrap();
    let gradient = PolyhedralIndicator::from_int_support(&[&[2, 0], &[0, 2]], 2).unwrap();
    let oracle = newton_number(&gradient).unwrap();
    assert_eq!(bound, rat_int(4));
    assert_eq!(bound, oracle);

    // F = z1^2 + z2^2: a Morse point.
    let morse = [
        RationalPoint::from_ints(&[2, 0]),
        RationalPoint::from_ints(&[0, 2]),
    ];
    assert_eq!(milnor_lower_bound(&morse, &uniform).unwrap(), rat_int(1));
    println!("PASS criterion 07: milnor bounds 4 and 1, gradient oracle agreed (exact)");
}

#[test]
fn criterion_08_estimator_accuracy() {
    let start = Instant::now();
    let plan = SamplingPlan::default();
    let weights = ["1,1", "1,2", "2,1", "1,3"];

    let mappings = [mapping_two(), mapping_three(), mapping_weighted_monomials()];
    for f in &mappings {
        for w in weights {
            let a = Weight::parse(w).unwrap();
            let exact = to_f64(&f.index(&a).unwrap());
            let (estimate, _) = estimate_directional_lelong(f, &a, &plan).unwrap();
            let rel = (estimate - exact).abs() / exact;
            assert!(
                rel <= 0.05,
                "estimate {estimate} vs exact {exact} (rel {rel:.4}) at weight {w}"
            );
        }
    }

    let monomials = [
        mapping(vec![vec![term(&[1, 1], 1)]], 2),
        mapping(vec![vec![term(&[3, 1], 1)]], 2),
    ];
    for f in &monomials {
        for w in weights {
            let a = Weight::parse(w).unwrap();
            let exact = to_f64(&f.index(&a).unwrap());
            let (estimate, _) = estimate_directional_lelong(f, &a, &plan).unwrap();
            assert!(
                (estimate - exact).abs() <= 1e-9,
                "monomial estimate {estimate} vs exact {exact} at weight {w}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() <= 60.0, "estimator suite took {elapsed:?}");
    println!(
        "PASS criterion 08: directional estimates within 5% (monomials within 1e-9) in {elapsed:?}"
    );
}

#[test]
fn criterion_09_tangent_convergence() {
    let f = mapping(vec![vec![term(&[2, 0], 1), term(&[0, 1], 1)]], 2);
    let z = [Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)];
    let plan = SamplingPlan::default();
    let table = tangent_convergence_check(&f, &z, 30, &plan).unwrap();
    assert_eq!(table.rows.len(), 30);

    for pair in table.rows.windows(2) {
        let slack = 2.0 * (pair[0].std_error + pair[1].std_error);
        assert!(
            pair[1].sampled >= pair[0].sampled - slack,
            "means decreased beyond noise at m = {}",
            pair[1].parameter
        );
    }
    let last = table.rows.last().unwrap();
    let reference = -(2.0f64.ln());
    assert!((last.reference - reference).abs() < 1e-12);
    assert!(
        last.relative_error <= 0.05,
        "final relative error {} exceeds 5%",
        last.relative_error
    );
    println!(
        "PASS criterion 09: tangent means nondecreasing, final value {:.6} vs -log 2 = {:.6}",
        last.sampled, reference
    );
}

#[test]
fn criterion_10_comparison_inequalities_randomized() {
    let mut rng = util::rng(0xC0417);
    for _ in 0..10_000 {
        let n = rng.gen_range(2..=3);
        let psi = util::random_indicator(&mut rng, n, 6, 6);
        let a = util::random_weight(&mut rng, n);
        let b = util::random_weight(&mut rng, n);
        let bound = psi.weight_comparison_bound(&a, &b).unwrap();
        assert!(
            bound.holds,
            "weight comparison failed: lhs {}, rhs {}",
            bound.lhs, bound.rhs
        );
    }
    for _ in 0..10_000 {
        let n = rng.gen_range(2..=3);
        let psi = util::random_indicator(&mut rng, n, 6, 6);
        let t = util::random_negative_point(&mut rng, n);
        let t0 = util::random_negative_point(&mut rng, n);
        assert!(
            psi.phi_comparison_check(&t, &t0).unwrap(),
            "phi comparison failed at t {t:?}, t0 {t0:?}"
        );
    }
    println!("PASS criterion 10: 10000 + 10000 randomized comparison draws, zero violations");
}
