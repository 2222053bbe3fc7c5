//! Polynomial mappings: ingestion, exact recentering, supports, weighted
//! indices and numerically stable evaluation of `log|f|`.

use std::collections::BTreeMap;

use num::complex::Complex64;
use num::{BigInt, One, Zero};
use serde::de::Error as DeError;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::RationalPoint;
use crate::indicator::{PolyhedralIndicator, Weight};
use crate::rational::{to_f64, Rat, RatPair, RatRepr};

/// Exact complex scalar: real and imaginary parts are rationals. Decimal
/// coefficient inputs are promoted to exact rationals on ingestion, so
/// zero/nonzero decisions in supports are always exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexRat {
    pub re: Rat,
    pub im: Rat,
}

impl ComplexRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self {
            re: Rat::zero(),
            im: Rat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.re += &other.re;
        self.im += &other.im;
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        Self {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
}

/// One monomial term `coeff * z^exponent`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub exponent: Vec<u32>,
    pub coeff: ComplexRat,
}

/// One polynomial component, stored with distinct exponents and no zero
/// coefficients, sorted by exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    terms: Vec<Term>,
}

impl Component {
    /// Merges duplicate exponents and drops exact zeros.
    pub fn new(terms: Vec<Term>) -> Self {
        let mut merged: BTreeMap<Vec<u32>, ComplexRat> = BTreeMap::new();
        for term in terms {
            merged
                .entry(term.exponent)
                .and_modify(|c| c.add_assign(&term.coeff))
                .or_insert(term.coeff);
        }
        Self {
            terms: merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(exponent, coeff)| Term { exponent, coeff })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn constant_term(&self) -> Option<&Term> {
        self.terms
            .iter()
            .find(|t| t.exponent.iter().all(|&e| e == 0))
    }
}

/// A polynomial mapping `f = (f_1, ..., f_N)` with an expansion point.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialMapping {
    n_vars: usize,
    components: Vec<Component>,
    base_point: Vec<Rat>,
}

impl PolynomialMapping {
    pub fn new(
        n_vars: usize,
        components: Vec<Component>,
        base_point: Vec<Rat>,
    ) -> Result<Self> {
        if n_vars == 0 {
            return Err(Error::InvalidArgument("n_vars must be at least 1".into()));
        }
        if components.is_empty() {
            return Err(Error::InvalidArgument(
                "mapping needs at least one component".into(),
            ));
        }
        if base_point.len() != n_vars {
            return Err(Error::DimensionMismatch {
                expected: n_vars,
                got: base_point.len(),
            });
        }
        for component in &components {
            for term in component.terms() {
                if term.exponent.len() != n_vars {
                    return Err(Error::DimensionMismatch {
                        expected: n_vars,
                        got: term.exponent.len(),
                    });
                }
            }
        }
        Ok(Self {
            n_vars,
            components,
            base_point,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn base_point(&self) -> &[Rat] {
        &self.base_point
    }

    /// Exact multinomial re-expansion around `x`: the result is the same
    /// mapping in coordinates `w = z - x`, with base point zero.
    pub fn shift_to_point(&self, x: &[Rat]) -> Result<Self> {
        if x.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: x.len(),
            });
        }
        let components = self
            .components
            .iter()
            .map(|component| {
                let mut out: Vec<Term> = Vec::new();
                for term in component.terms() {
                    expand_term(term, x, &mut out);
                }
                Component::new(out)
            })
            .collect();
        Self::new(self.n_vars, components, vec![Rat::zero(); self.n_vars])
    }

    /// Shifts the mapping to its own base point.
    pub fn recenter(&self) -> Result<Self> {
        if self.base_point.iter().all(Rat::is_zero) {
            return Ok(self.clone());
        }
        self.shift_to_point(&self.base_point.clone())
    }

    /// Every component must be nonzero and vanish at the expansion point;
    /// otherwise the singularity analysis is vacuous.
    pub fn validate_recentered(&self) -> Result<()> {
        for (component, c) in self.components.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::ZeroComponent { component });
            }
            if c.constant_term().is_some() {
                return Err(Error::NonvanishingAtBasePoint { component });
            }
        }
        Ok(())
    }

    /// Union of the component supports, as exponent-space points.
    pub fn union_support(&self) -> Result<Vec<RationalPoint>> {
        self.validate_recentered()?;
        let mut support = std::collections::BTreeSet::new();
        for component in &self.components {
            for term in component.terms() {
                support.insert(exponent_point(&term.exponent));
            }
        }
        Ok(support.into_iter().collect())
    }

    /// Support of component `j`.
    pub fn component_support(&self, j: usize) -> Result<Vec<RationalPoint>> {
        self.validate_recentered()?;
        let component = self
            .components
            .get(j)
            .ok_or_else(|| Error::InvalidArgument(format!("no component {j}")))?;
        Ok(component
            .terms()
            .iter()
            .map(|t| exponent_point(&t.exponent))
            .collect())
    }

    /// The indicator generated by the union support.
    pub fn union_indicator(&self) -> Result<PolyhedralIndicator> {
        PolyhedralIndicator::from_support(&self.union_support()?, self.n_vars)
    }

    /// Per-component indicators, for mixed masses and product bounds.
    pub fn component_indicators(&self) -> Result<Vec<PolyhedralIndicator>> {
        (0..self.components.len())
            .map(|j| {
                PolyhedralIndicator::from_support(&self.component_support(j)?, self.n_vars)
            })
            .collect()
    }

    /// Weighted index `I(f, 0, a) = min over the union support of <a, p>`;
    /// agrees with the directional Lelong number of the union indicator.
    pub fn index(&self, a: &Weight) -> Result<Rat> {
        if a.dim() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: a.dim(),
            });
        }
        let point = a.as_point();
        Ok(self
            .union_support()?
            .iter()
            .map(|p| p.dot(&point))
            .min()
            .expect("validated support is nonempty"))
    }

    /// `log ||f(z)||` (Euclidean norm over components), computed stably for
    /// tiny moduli: each component factors out its largest term magnitude
    /// in log space, so radii like `e^{-25}` never underflow. Returns
    /// `f64::NEG_INFINITY` when the value is exactly zero.
    pub fn evaluate_log_modulus(&self, z: &[Complex64]) -> f64 {
        debug_assert_eq!(z.len(), self.n_vars);
        let moduli: Vec<f64> = z.iter().map(|zk| zk.norm()).collect();
        let log_abs: Vec<f64> = moduli.iter().map(|r| r.ln()).collect();
        let units: Vec<Complex64> = z
            .iter()
            .zip(&moduli)
            .map(|(zk, &r)| if r == 0.0 { *zk } else { zk / r })
            .collect();

        let mut component_logs = Vec::with_capacity(self.components.len());
        for component in &self.components {
            // Log-magnitude and exact unit factor of each term; zero terms
            // drop out. Multiplying the actual phase units (instead of
            // summing angles) keeps sign cancellations exact.
            let mut entries: Vec<(f64, Complex64)> = Vec::with_capacity(component.terms().len());
            for term in component.terms() {
                let c = term.coeff.to_complex64();
                let c_norm = c.norm();
                if c_norm == 0.0 {
                    continue;
                }
                let mut log_mag = c_norm.ln();
                let mut unit = c / c_norm;
                let mut vanishes = false;
                for (k, &e) in term.exponent.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if moduli[k] == 0.0 {
                        vanishes = true;
                        break;
                    }
                    log_mag += f64::from(e) * log_abs[k];
                    unit *= units[k].powu(e);
                }
                if !vanishes {
                    entries.push((log_mag, unit));
                }
            }
            if entries.is_empty() {
                component_logs.push(f64::NEG_INFINITY);
                continue;
            }
            let max_log = entries
                .iter()
                .map(|e| e.0)
                .fold(f64::NEG_INFINITY, f64::max);
            let mut sum = Complex64::new(0.0, 0.0);
            for (log_mag, unit) in &entries {
                sum += unit * (log_mag - max_log).exp();
            }
            let reduced = sum.norm();
            if reduced == 0.0 {
                component_logs.push(f64::NEG_INFINITY);
            } else {
                component_logs.push(max_log + reduced.ln());
            }
        }

        // log ||f|| = (1/2) logsumexp(2 * component logs).
        let max_log = component_logs
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        if max_log == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        let sum: f64 = component_logs
            .iter()
            .map(|&l| (2.0 * (l - max_log)).exp())
            .sum();
        max_log + 0.5 * sum.ln()
    }
}

fn exponent_point(exponent: &[u32]) -> RationalPoint {
    RationalPoint::new(
        exponent
            .iter()
            .map(|&e| Rat::from_integer(BigInt::from(e)))
            .collect(),
    )
}

/// Expands `coeff * z^p` with `z = w + x` into terms in `w`, appending to
/// `out`.
fn expand_term(term: &Term, x: &[Rat], out: &mut Vec<Term>) {
    let n = x.len();
    // Per-variable binomial rows: (w + x_k)^{p_k}.
    let mut q = vec![0u32; n];
    loop {
        let mut coeff = term.coeff.clone();
        for k in 0..n {
            let p = term.exponent[k];
            let e = q[k];
            if e == p {
                continue;
            }
            let factor = binomial(p, e) * power(&x[k], p - e);
            coeff = coeff.mul_rat(&factor);
        }
        if !coeff.is_zero() {
            out.push(Term {
                exponent: q.clone(),
                coeff,
            });
        }
        // Mixed-radix increment of q over 0..=p componentwise.
        let mut k = 0;
        loop {
            if k == n {
                return;
            }
            if q[k] < term.exponent[k] {
                q[k] += 1;
                break;
            }
            q[k] = 0;
            k += 1;
        }
    }
}

fn binomial(n: u32, k: u32) -> Rat {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k.min(n - k) {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Rat::new(num, den)
}

fn power(x: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl Serialize for PolynomialMapping {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct TermDoc {
            exponent: Vec<u32>,
            coeff: (RatPair, RatPair),
        }
        #[derive(Serialize)]
        struct ComponentDoc {
            terms: Vec<TermDoc>,
        }
        let mut st = serializer.serialize_struct("PolynomialMapping", 3)?;
        st.serialize_field("n_vars", &self.n_vars)?;
        let base: Vec<RatPair> = self.base_point.iter().map(RatPair::from).collect();
        st.serialize_field("base_point", &base)?;
        let components: Vec<ComponentDoc> = self
            .components
            .iter()
            .map(|c| ComponentDoc {
                terms: c
                    .terms()
                    .iter()
                    .map(|t| TermDoc {
                        exponent: t.exponent.clone(),
                        coeff: (RatPair::from(&t.coeff.re), RatPair::from(&t.coeff.im)),
                    })
                    .collect(),
            })
            .collect();
        st.serialize_field("components", &components)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for PolynomialMapping {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct TermDoc {
            exponent: Vec<u32>,
            coeff: Vec<RatRepr>,
        }
        #[derive(Deserialize)]
        struct ComponentDoc {
            terms: Vec<TermDoc>,
        }
        #[derive(Deserialize)]
        struct Doc {
            n_vars: usize,
            #[serde(default)]
            base_point: Option<Vec<RatRepr>>,
            components: Vec<ComponentDoc>,
        }
        let doc = Doc::deserialize(deserializer)?;
        let base_point: Vec<Rat> = match doc.base_point {
            Some(reprs) => reprs
                .iter()
                .map(|r| r.to_rat())
                .collect::<Result<_>>()
                .map_err(D::Error::custom)?,
            None => vec![Rat::zero(); doc.n_vars],
        };
        let components = doc
            .components
            .into_iter()
            .map(|c| {
                let terms = c
                    .terms
                    .into_iter()
                    .map(|t| {
                        let re = t
                            .coeff
                            .first()
                            .map(|r| r.to_rat())
                            .transpose()?
                            .unwrap_or_else(Rat::zero);
                        let im = t
                            .coeff
                            .get(1)
                            .map(|r| r.to_rat())
                            .transpose()?
                            .unwrap_or_else(Rat::zero);
                        Ok(Term {
                            exponent: t.exponent,
                            coeff: ComplexRat::new(re, im),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Component::new(terms))
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        PolynomialMapping::new(doc.n_vars, components, base_point).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn term(exponent: &[u32], re: i64) -> Term {
        Term {
            exponent: exponent.to_vec(),
            coeff: ComplexRat::new(rat_int(re), rat_int(0)),
        }
    }

    /// f = (z1^2 + z2, z2^3)
    fn paper_mapping() -> PolynomialMapping {
        PolynomialMapping::new(
            2,
            vec![
                Component::new(vec![term(&[2, 0], 1), term(&[0, 1], 1)]),
                Component::new(vec![term(&[0, 3], 1)]),
            ],
            vec![Rat::zero(); 2],
        )
        .unwrap()
    }

    #[test]
    fn shift_matches_the_binomial_expansion() {
        // f = z1^2 + z2 at x = (1, -1):
        // (w1+1)^2 + (w2-1) = w1^2 + 2 w1 + w2, constant cancels.
        let f = PolynomialMapping::new(
            2,
            vec![Component::new(vec![term(&[2, 0], 1), term(&[0, 1], 1)])],
            vec![Rat::zero(); 2],
        )
        .unwrap();
        let shifted = f.shift_to_point(&[rat_int(1), rat_int(-1)]).unwrap();
        let expected = Component::new(vec![term(&[2, 0], 1), term(&[1, 0], 2), term(&[0, 1], 1)]);
        assert_eq!(shifted.components()[0], expected);
        assert!(shifted.validate_recentered().is_ok());
        let support = shifted.union_support().unwrap();
        let expected_support: Vec<RationalPoint> = [[0, 1], [1, 0], [2, 0]]
            .iter()
            .map(|r| RationalPoint::from_ints(&r.map(i64::from)))
            .collect();
        assert_eq!(support, expected_support);
    }

    #[test]
    fn shift_at_origin_is_identity_and_round_trips() {
        let f = paper_mapping();
        assert_eq!(f.shift_to_point(&[rat_int(0), rat_int(0)]).unwrap(), f);
        let x = [rat(1, 2), rat_int(-2)];
        let back = f
            .shift_to_point(&x)
            .unwrap()
            .shift_to_point(&[-x[0].clone(), -x[1].clone()])
            .unwrap();
        assert_eq!(back.components(), f.components());
    }

    #[test]
    fn nonvanishing_base_point_is_flagged() {
        // f = z1^2 expanded at (1, 0) keeps a constant term 1.
        let f = PolynomialMapping::new(
            2,
            vec![Component::new(vec![term(&[2, 0], 1)])],
            vec![Rat::zero(); 2],
        )
        .unwrap();
        let shifted = f.shift_to_point(&[rat_int(1), rat_int(0)]).unwrap();
        assert!(matches!(
            shifted.validate_recentered(),
            Err(Error::NonvanishingAtBasePoint { component: 0 })
        ));
        assert!(shifted.union_support().is_err());
    }

    #[test]
    fn union_supports_of_the_worked_mappings() {
        let f = paper_mapping();
        let support = f.union_support().unwrap();
        let expected: Vec<RationalPoint> = [[0, 1], [0, 3], [2, 0]]
            .iter()
            .map(|r| RationalPoint::from_ints(&r.map(i64::from)))
            .collect();
        assert_eq!(support, expected);

        let identity = PolynomialMapping::new(
            3,
            vec![
                Component::new(vec![term(&[1, 0, 0], 1)]),
                Component::new(vec![term(&[0, 1, 0], 1)]),
                Component::new(vec![term(&[0, 0, 1], 1)]),
            ],
            vec![Rat::zero(); 3],
        )
        .unwrap();
        assert_eq!(identity.union_support().unwrap().len(), 3);
    }

    #[test]
    fn zero_component_is_an_error() {
        let f = PolynomialMapping::new(
            2,
            vec![
                Component::new(vec![term(&[1, 0], 1)]),
                Component::new(vec![term(&[0, 1], 1), term(&[0, 1], -1)]),
            ],
            vec![Rat::zero(); 2],
        )
        .unwrap();
        assert!(matches!(
            f.union_support(),
            Err(Error::ZeroComponent { component: 1 })
        ));
    }

    #[test]
    fn index_agrees_with_the_union_indicator() {
        let f = paper_mapping();
        let w12 = Weight::parse("1,2").unwrap();
        let w11 = Weight::parse("1,1").unwrap();
        assert_eq!(f.index(&w12).unwrap(), rat_int(2));
        assert_eq!(f.index(&w11).unwrap(), rat_int(1));
        let psi = f.union_indicator().unwrap();
        assert_eq!(psi.directional_lelong(&w12).unwrap(), f.index(&w12).unwrap());
    }

    #[test]
    fn monomial_log_modulus_is_exact_in_log_space() {
        // f = z1 z2 at |z1| = |z2| = e^{-10}.
        let f = PolynomialMapping::new(
            2,
            vec![Component::new(vec![term(&[1, 1], 1)])],
            vec![Rat::zero(); 2],
        )
        .unwrap();
        let r = (-10.0f64).exp();
        let z = [
            Complex64::from_polar(r, 0.7),
            Complex64::from_polar(r, -1.2),
        ];
        let v = f.evaluate_log_modulus(&z);
        assert!((v + 20.0).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn norm_of_a_linear_mapping() {
        let f = PolynomialMapping::new(
            2,
            vec![
                Component::new(vec![term(&[1, 0], 1)]),
                Component::new(vec![term(&[0, 1], 1)]),
            ],
            vec![Rat::zero(); 2],
        )
        .unwrap();
        let z = [Complex64::new(3.0, 0.0), Complex64::new(4.0, 0.0)];
        assert!((f.evaluate_log_modulus(&z) - 5.0f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn exact_cancellation_returns_the_marker() {
        // f = z1^2 + z2 on the curve z2 = -z1^2.
        let f = PolynomialMapping::new(
            2,
            vec![Component::new(vec![term(&[2, 0], 1), term(&[0, 1], 1)])],
            vec![Rat::zero(); 2],
        )
        .unwrap();
        let t = 0.5f64;
        let z = [Complex64::new(t, 0.0), Complex64::new(-t * t, 0.0)];
        assert_eq!(f.evaluate_log_modulus(&z), f64::NEG_INFINITY);
    }

    #[test]
    fn json_schema_round_trip() {
        let src = r#"{
            "n_vars": 2,
            "base_point": [0, 0],
            "components": [
                {"terms": [{"exponent": [2, 0], "coeff": [1, 0]},
                            {"exponent": [0, 1], "coeff": ["0.5", 0]}]},
                {"terms": [{"exponent": [0, 3], "coeff": [[1, 3], 0]}]}
            ]
        }"#;
        let f: PolynomialMapping = serde_json::from_str(src).unwrap();
        assert_eq!(f.components()[0].terms()[0].coeff.re, rat(1, 2));
        assert_eq!(f.components()[1].terms()[0].coeff.re, rat(1, 3));
        let json = serde_json::to_string(&f).unwrap();
        let back: PolynomialMapping = serde_json::from_str(&json).unwrap();
        assert_eq!(f, back);
    }
}
