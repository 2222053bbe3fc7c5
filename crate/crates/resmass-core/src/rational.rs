//! Exact rational scalars, parsing, and the `[numerator, denominator]` wire
//! form used by every serialized rational in this workspace.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the kernel. No operation in the
/// exact modules ever rounds one of these.
pub type Rat = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exact rational.
pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Nearest-representable float view of an exact rational (NaN if the value
/// overflows f64, which does not happen at desk scale).
pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational equal to the given finite float (floats are dyadic).
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    BigRational::from_float(x)
}

/// n! as an exact rational.
pub fn factorial(n: usize) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

/// Parses `"3"`, `"-3"`, `"3/2"` or a plain decimal like `"0.25"` into an
/// exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let sign = if int_part.trim_start().starts_with('-') {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let int_digits = int_part.trim().trim_start_matches(['+', '-']);
        let int_val: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad decimal in {s:?}")))?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal in {s:?}")));
        }
        let frac_val: BigInt = frac_part
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal in {s:?}")))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let unsigned = int_val * &scale + frac_val;
        return Ok(BigRational::new(sign * unsigned, scale));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer in {s:?}")))?;
    Ok(BigRational::from_integer(n))
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// via the continued-fraction convergents. Returns `None` for non-finite
/// input.
pub fn approx_rat(x: f64, max_den: u64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let exact = rat_from_f64(x)?;
    let limit = BigInt::from(max_den.max(1));
    if exact.denom() <= &limit {
        return Some(exact);
    }
    // Convergents h_k / k_k of the continued fraction of |x|.
    let neg = x < 0.0;
    let mut frac = exact.abs();
    let (mut h0, mut k0) = (BigInt::zero(), BigInt::one());
    let (mut h1, mut k1) = (BigInt::one(), BigInt::zero());
    loop {
        let a = frac.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if k2 > limit {
            break;
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let rem = &frac - BigRational::from_integer(a);
        if rem.is_zero() {
            break;
        }
        frac = rem.recip();
    }
    if k1.is_zero() {
        return Some(Rat::zero());
    }
    let approx = BigRational::new(h1, k1);
    Some(if neg { -approx } else { approx })
}

/// Wire form of an exact rational: always serialized as the two-element
/// array `[numerator, denominator]`, never floated.
#[derive(Clone, Debug, PartialEq)]
pub struct RatPair(pub Rat);

impl From<Rat> for RatPair {
    fn from(r: Rat) -> Self {
        RatPair(r)
    }
}

impl From<&Rat> for RatPair {
    fn from(r: &Rat) -> Self {
        RatPair(r.clone())
    }
}

impl Serialize for RatPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match (self.0.numer().to_i64(), self.0.denom().to_i64()) {
            (Some(n), Some(d)) => (n, d).serialize(serializer),
            // Beyond-i64 rationals fall back to decimal strings.
            _ => (self.0.numer().to_string(), self.0.denom().to_string()).serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for RatPair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = RatRepr::deserialize(deserializer)?;
        repr.to_rat().map(RatPair).map_err(D::Error::custom)
    }
}

/// Accepted JSON spellings of a rational scalar: a bare integer, a
/// `[num, den]` pair (numbers or strings), or a string like `"3/2"`/`"0.25"`.
#[derive(Deserialize)]
#[serde(untagged)]
pub enum RatRepr {
    Int(i64),
    Pair(i64, i64),
    Str(String),
    StrPair(String, String),
}

impl RatRepr {
    pub fn to_rat(&self) -> Result<Rat> {
        match self {
            RatRepr::Int(n) => Ok(BigRational::from_integer(BigInt::from(*n))),
            RatRepr::Pair(n, d) => {
                if *d == 0 {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(BigRational::new(BigInt::from(*n), BigInt::from(*d)))
            }
            RatRepr::Str(s) => parse_rat(s),
            RatRepr::StrPair(n, d) => {
                let n: BigInt = n
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad numerator {n:?}")))?;
                let d: BigInt = d
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad denominator {d:?}")))?;
                if d.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(BigRational::new(n, d))
            }
        }
    }
}
