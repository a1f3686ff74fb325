//! Model parameters and exact rational helpers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational used for every exact computation.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `"num/den"` rendering used in reports; integers print without a denominator.
pub fn rat_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// For `#[serde(serialize_with = "...")]` on exact fields.
pub fn serialize_rational<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rat_string(x))
}

/// Parses `"a/b"`, an integer, or a finite decimal such as `"0.25"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::Parse {
        what: "rational",
        input: s.to_string(),
    };
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{whole}{frac}");
    let n: BigInt = digits.parse().map_err(|_| err())?;
    let d = num_traits::pow(BigInt::from(10), frac.len());
    let v = Rational::new(n, d);
    Ok(if neg { -v } else { v })
}

/// Trap probability `p`, target probability `q` and open probability `r = 1 - p - q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    p: Rational,
    q: Rational,
    r: Rational,
}

impl Params {
    /// Requires `p, q >= 0` and `p + q <= 1`. The all-open point `p = q = 0`
    /// is constructible; see [`Params::in_region`].
    pub fn new(p: Rational, q: Rational) -> Result<Self> {
        if p.is_negative() || q.is_negative() {
            return Err(Error::InvalidParams(format!(
                "negative probability (p = {p}, q = {q})"
            )));
        }
        let r = Rational::one() - &p - &q;
        if r.is_negative() {
            return Err(Error::InvalidParams(format!("p + q = {} > 1", &p + &q)));
        }
        Ok(Self { p, q, r })
    }

    pub fn from_ratios(p: (i64, i64), q: (i64, i64)) -> Result<Self> {
        Self::new(rat(p.0, p.1), rat(q.0, q.1))
    }

    pub fn parse(p: &str, q: &str) -> Result<Self> {
        Self::new(parse_rational(p)?, parse_rational(q)?)
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    /// Membership in the region `0 < p + q <= 1`.
    pub fn in_region(&self) -> bool {
        !(self.p.is_zero() && self.q.is_zero())
    }

    pub fn require_region(&self) -> Result<()> {
        if self.in_region() {
            Ok(())
        } else {
            Err(Error::OutsideRegion)
        }
    }

    pub fn to_f64(&self) -> (f64, f64, f64) {
        (to_f64(&self.p), to_f64(&self.q), to_f64(&self.r))
    }
}

impl serde::Serialize for Params {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("p", &rat_string(&self.p))?;
        m.serialize_entry("q", &rat_string(&self.q))?;
        m.serialize_entry("r", &rat_string(&self.r))?;
        m.end()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, q={})", self.p, self.q)
    }
}

impl FromStr for Params {
    type Err = Error;

    /// `"p,q"`, e.g. `"1/5,3/10"`.
    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s.split_once(',').ok_or_else(|| Error::Parse {
            what: "parameter pair",
            input: s.to_string(),
        })?;
        Self::parse(p, q)
    }
}
