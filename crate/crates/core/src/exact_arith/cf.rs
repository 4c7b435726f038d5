use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{ArithError, Theta};

/// A (possibly truncated) simple continued fraction `[a0; a1, ..., aN]`.
///
/// `terminating` marks a complete expansion of a rational number; otherwise the
/// digits are a certified prefix of a longer (possibly infinite) expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfExpansion {
    a0: BigInt,
    digits: Vec<BigInt>,
    terminating: bool,
}

impl CfExpansion {
    /// Validate and build an expansion.
    ///
    /// Every digit after `a0` must be ≥ 1, and a terminating expansion may not
    /// end in a 1 (the `[..., a, 1] = [..., a + 1]` ambiguity is normalised away).
    pub fn new(a0: BigInt, digits: Vec<BigInt>, terminating: bool) -> Result<Self, ArithError> {
        if let Some((i, _)) = digits.iter().enumerate().find(|(_, d)| !d.is_positive()) {
            return Err(ArithError::InvalidInput(format!("digit a_{} must be ≥ 1", i + 1)));
        }
        if terminating && digits.last().is_some_and(|d| d.is_one()) {
            return Err(ArithError::NonCanonical(
                "terminating expansion ends with digit 1".into(),
            ));
        }
        Ok(CfExpansion { a0, digits, terminating })
    }

    /// Convenience constructor from machine integers (a truncated prefix).
    pub fn from_digits(a0: i64, digits: &[u64]) -> Result<Self, ArithError> {
        Self::new(a0.into(), digits.iter().map(|&d| BigInt::from(d)).collect(), false)
    }

    pub fn a0(&self) -> &BigInt {
        &self.a0
    }

    /// The digits `a_1, a_2, ...`.
    pub fn digits(&self) -> &[BigInt] {
        &self.digits
    }

    /// Digit `a_n` with `a_0` at index 0.
    pub fn digit(&self, n: usize) -> Option<&BigInt> {
        if n == 0 {
            Some(&self.a0)
        } else {
            self.digits.get(n - 1)
        }
    }

    pub fn is_terminating(&self) -> bool {
        self.terminating
    }

    /// Number of digits after `a0`.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Evaluate the nested fraction exactly (right to left).
    pub fn value(&self) -> BigRational {
        let mut acc: Option<BigRational> = None;
        for d in self.digits.iter().rev() {
            let d = BigRational::from_integer(d.clone());
            acc = Some(match acc {
                None => d,
                Some(tail) => d + tail.recip(),
            });
        }
        let a0 = BigRational::from_integer(self.a0.clone());
        match acc {
            None => a0,
            Some(tail) => a0 + tail.recip(),
        }
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.a0)?;
        for (i, d) in self.digits.iter().enumerate() {
            write!(f, "{}{d}", if i == 0 { "; " } else { ", " })?;
        }
        write!(f, "]")
    }
}

impl Serialize for CfExpansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("a0", &self.a0.to_string())?;
        let digits: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        m.serialize_entry("digits", &digits)?;
        m.serialize_entry("terminating", &self.terminating)?;
        m.end()
    }
}

fn floor(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

/// Expand θ into at most `depth` digits after `a0`.
///
/// Exact rationals run the Euclidean algorithm and may stop early (terminating
/// expansion). Enclosures are expanded by iterating the Gauss map on both
/// endpoints; a digit is emitted only when both endpoints agree on it, and the
/// expansion fails with [`ArithError::PrecisionExhausted`] otherwise.
pub fn cf_expand(theta: &Theta, depth: usize) -> Result<CfExpansion, ArithError> {
    if depth == 0 {
        return Err(ArithError::InvalidInput("depth must be ≥ 1".into()));
    }
    match theta {
        Theta::Exact(r) => Ok(expand_exact(r, depth)),
        Theta::Interval { lo, hi } if lo == hi => Ok(expand_exact(lo, depth)),
        Theta::Interval { lo, hi } => expand_interval(lo.clone(), hi.clone(), depth),
    }
}

fn expand_exact(r: &BigRational, depth: usize) -> CfExpansion {
    // Euclid on (numer, denom); denom > 0 by normalisation.
    let mut num = r.numer().clone();
    let mut den = r.denom().clone();
    let a0 = num_integer::Integer::div_floor(&num, &den);
    let mut rem = &num - &a0 * &den;
    let mut digits = Vec::new();
    while !rem.is_zero() && digits.len() < depth {
        num = den;
        den = rem;
        let q = num_integer::Integer::div_floor(&num, &den);
        rem = &num - &q * &den;
        digits.push(q);
    }
    CfExpansion { a0, digits, terminating: rem.is_zero() }
}

fn expand_interval(
    mut lo: BigRational,
    mut hi: BigRational,
    depth: usize,
) -> Result<CfExpansion, ArithError> {
    debug_assert!(lo <= hi);
    let a0 = floor(&lo);
    if floor(&hi) != a0 {
        return Err(ArithError::PrecisionExhausted { produced: 0 });
    }
    let mut digits = Vec::new();
    loop {
        let a = if digits.is_empty() { a0.clone() } else { digits.last().cloned().unwrap() };
        let a = BigRational::from_integer(a);
        let flo = &lo - &a;
        let fhi = &hi - &a;
        if digits.len() == depth {
            break;
        }
        if flo.is_zero() {
            // The enclosure touches the integer itself: the next digit could be
            // anything (or the expansion could terminate here).
            return Err(ArithError::PrecisionExhausted { produced: digits.len() });
        }
        // x ↦ 1/x reverses the interval.
        let (nlo, nhi) = (fhi.recip(), flo.recip());
        let d = floor(&nlo);
        if floor(&nhi) != d {
            return Err(ArithError::PrecisionExhausted { produced: digits.len() });
        }
        digits.push(d);
        lo = nlo;
        hi = nhi;
    }
    Ok(CfExpansion { a0, digits, terminating: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u64]) -> Vec<BigInt> {
        v.iter().map(|&d| BigInt::from(d)).collect()
    }

    /// Independent oracle: Euclid on machine integers.
    fn euclid(mut m: i64, mut n: i64) -> Vec<i64> {
        let mut out = Vec::new();
        while n != 0 {
            out.push(m.div_euclid(n));
            let r = m.rem_euclid(n);
            m = n;
            n = r;
        }
        out
    }

    #[test]
    fn fifteen_elevenths() {
        assert_eq!(euclid(15, 11), vec![1, 2, 1, 3]);
        let cf = cf_expand(&Theta::exact(15, 11).unwrap(), 8).unwrap();
        assert_eq!(cf.a0(), &BigInt::from(1));
        assert_eq!(cf.digits(), big(&[2, 1, 3]).as_slice());
        assert!(cf.is_terminating());
        assert_eq!(cf.to_string(), "[1; 2, 1, 3]");
    }

    #[test]
    fn one_half() {
        let cf = cf_expand(&Theta::exact(1, 2).unwrap(), 8).unwrap();
        assert_eq!(cf.a0(), &BigInt::from(0));
        assert_eq!(cf.digits(), big(&[2]).as_slice());
    }

    #[test]
    fn golden_to_fifty_digits() {
        let cf = cf_expand(&Theta::golden(50), 5).unwrap();
        assert_eq!(cf.a0(), &BigInt::from(0));
        assert_eq!(cf.digits(), big(&[1, 1, 1, 1, 1]).as_slice());
        assert!(!cf.is_terminating());
    }

    #[test]
    fn depth_zero_rejected() {
        assert!(matches!(
            cf_expand(&Theta::exact(1, 2).unwrap(), 0),
            Err(ArithError::InvalidInput(_))
        ));
    }

    #[test]
    fn coarse_enclosure_runs_out_of_precision() {
        // 0.6180 ± 10^-4 certifies only a handful of golden digits.
        let t = Theta::decimal_with_precision("0.6180", 4).unwrap();
        match cf_expand(&t, 30) {
            Err(ArithError::PrecisionExhausted { produced }) => assert!((3..30).contains(&produced)),
            other => panic!("expected PrecisionExhausted, got {other:?}"),
        }
        // An enclosure around 1/2 straddles the 1|2 boundary for a1.
        let t = Theta::decimal_with_precision("0.5", 3).unwrap();
        assert_eq!(cf_expand(&t, 3), Err(ArithError::PrecisionExhausted { produced: 0 }));
    }

    #[test]
    fn negative_and_integer_inputs() {
        let cf = cf_expand(&Theta::exact(-7, 3).unwrap(), 10).unwrap();
        assert_eq!(cf.a0(), &BigInt::from(-3));
        assert_eq!(cf.value(), BigRational::new((-7).into(), 3.into()));
        let cf = cf_expand(&Theta::exact(4, 1).unwrap(), 10).unwrap();
        assert!(cf.is_empty() && cf.is_terminating());
    }

    #[test]
    fn canonical_form_enforced() {
        assert!(CfExpansion::new(0.into(), big(&[2, 1]), true).is_err());
        assert!(CfExpansion::new(0.into(), big(&[2, 1]), false).is_ok());
        assert!(CfExpansion::new(0.into(), vec![BigInt::from(0)], false).is_err());
    }

    #[test]
    fn value_matches_nested_fraction() {
        let cf = CfExpansion::new(1.into(), big(&[2, 1, 3]), true).unwrap();
        assert_eq!(cf.value(), BigRational::new(15.into(), 11.into()));
    }
}
