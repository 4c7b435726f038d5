use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{rational_to_f64, ArithError};

/// Default number of decimal digits used for named irrational constants.
pub const DEFAULT_DECIMAL_DIGITS: usize = 60;

/// A rotation parameter, either exact or known through a certified enclosure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Theta {
    Exact(BigRational),
    /// The true value lies in the closed interval `[lo, hi]`.
    Interval { lo: BigRational, hi: BigRational },
}

impl Theta {
    pub fn exact(numer: i64, denom: i64) -> Result<Self, ArithError> {
        if denom == 0 {
            return Err(ArithError::InvalidInput("zero denominator".into()));
        }
        Ok(Theta::Exact(BigRational::new(numer.into(), denom.into())))
    }

    /// `(√5 − 1)/2`, enclosed to `digits` decimal places.
    pub fn golden(digits: usize) -> Self {
        quadratic_enclosure(&BigInt::from(-1), 5, &BigInt::from(2), digits)
            .expect("golden ratio enclosure is well formed")
    }

    /// A decimal string read as a truncation of the true value: the value lies in
    /// `[x, x + 10^-d]` (for negative inputs `[x - 10^-d, x]`), `d` the number of
    /// fractional digits.
    pub fn truncated_decimal(s: &str) -> Result<Self, ArithError> {
        let (value, digits) = parse_decimal(s)?;
        let ulp = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits as u32));
        Ok(if value.is_negative() || s.trim_start().starts_with('-') {
            Theta::Interval { lo: &value - &ulp, hi: value }
        } else {
            Theta::Interval { hi: &value + &ulp, lo: value }
        })
    }

    /// A decimal string with an explicit precision: the true value lies within
    /// `10^-precision` of the written value.
    pub fn decimal_with_precision(s: &str, precision: usize) -> Result<Self, ArithError> {
        let (value, _) = parse_decimal(s)?;
        let tol = BigRational::new(BigInt::one(), BigInt::from(10).pow(precision as u32));
        Ok(Theta::Interval { lo: &value - &tol, hi: &value + &tol })
    }

    /// Parse a command-line style θ.
    ///
    /// Accepted forms: `m/n`, an integer, an exact decimal (`0.5`), a truncated
    /// decimal marked by a trailing `...`, and the name `golden`.
    pub fn parse(s: &str, golden_digits: usize) -> Result<Self, ArithError> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("golden") {
            return Ok(Theta::golden(golden_digits));
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| ArithError::InvalidInput(format!("bad numerator in {s:?}")))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| ArithError::InvalidInput(format!("bad denominator in {s:?}")))?;
            if d.is_zero() {
                return Err(ArithError::InvalidInput("zero denominator".into()));
            }
            return Ok(Theta::Exact(BigRational::new(n, d)));
        }
        if let Some(body) = s.strip_suffix("...") {
            return Theta::truncated_decimal(body);
        }
        let (value, _) = parse_decimal(s)?;
        Ok(Theta::Exact(value))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Theta::Exact(_))
    }

    pub fn lower(&self) -> &BigRational {
        match self {
            Theta::Exact(r) => r,
            Theta::Interval { lo, .. } => lo,
        }
    }

    pub fn upper(&self) -> &BigRational {
        match self {
            Theta::Exact(r) => r,
            Theta::Interval { hi, .. } => hi,
        }
    }

    /// Midpoint of the enclosure.
    pub fn midpoint(&self) -> BigRational {
        match self {
            Theta::Exact(r) => r.clone(),
            Theta::Interval { lo, hi } => (lo + hi) / BigInt::from(2),
        }
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }

    /// Width of the enclosure (zero for exact values).
    pub fn width(&self) -> BigRational {
        self.upper() - self.lower()
    }

    /// Numerator/denominator if θ is an exact rational.
    pub fn as_fraction(&self) -> Option<(BigInt, BigInt)> {
        match self {
            Theta::Exact(r) => Some((r.numer().clone(), r.denom().clone())),
            Theta::Interval { .. } => None,
        }
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theta::Exact(r) => write!(f, "{r}"),
            Theta::Interval { .. } => write!(f, "~{:.17}", self.to_f64()),
        }
    }
}

impl Serialize for Theta {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        match self {
            Theta::Exact(r) => {
                m.serialize_entry("exact", &r.to_string())?;
            }
            Theta::Interval { lo, hi } => {
                m.serialize_entry("lo", &lo.to_string())?;
                m.serialize_entry("hi", &hi.to_string())?;
            }
        }
        m.end()
    }
}

/// Parse an optionally signed decimal literal into an exact rational, returning
/// the number of fractional digits.
fn parse_decimal(s: &str) -> Result<(BigRational, usize), ArithError> {
    let s = s.trim();
    let bad = || ArithError::InvalidInput(format!("not a decimal number: {s:?}"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mag = BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(bad)?;
    let mag = if neg { -mag } else { mag };
    let den = BigInt::from(10).pow(frac_part.len() as u32);
    Ok((BigRational::new(mag, den), frac_part.len()))
}

/// Certified enclosure of `(p + √d)/q` to `digits` decimal places.
///
/// `d` must be a positive non-square; `q` nonzero.
pub fn quadratic_enclosure(
    p: &BigInt,
    d: u64,
    q: &BigInt,
    digits: usize,
) -> Result<Theta, ArithError> {
    if q.is_zero() {
        return Err(ArithError::InvalidInput("zero denominator".into()));
    }
    let root = (d as f64).sqrt() as u64;
    if (root.saturating_sub(1)..=root + 1).any(|r| r * r == d) {
        return Err(ArithError::InvalidInput(format!("{d} is a perfect square")));
    }
    let scale = BigInt::from(10).pow(digits as u32);
    let s = (BigInt::from(d) * &scale * &scale).sqrt();
    // s ≤ √d·10^k < s + 1
    let lo_root = BigRational::new(s.clone(), scale.clone());
    let hi_root = BigRational::new(s + 1, scale);
    let pr = BigRational::from_integer(p.clone());
    let qr = BigRational::from_integer(q.clone());
    let a = (&pr + lo_root) / &qr;
    let b = (&pr + hi_root) / &qr;
    let (lo, hi) = if q.sign() == Sign::Minus { (b, a) } else { (a, b) };
    Ok(Theta::Interval { lo, hi })
}
