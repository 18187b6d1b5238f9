//! Arbitrary-precision rationals and their canonical text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical serialization: `p` for integers, `p/q` (lowest terms, q > 0) otherwise.
pub fn format(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p` or `p/q` with optional leading sign. Decimal points and
/// exponents are refused: callers want exact input.
pub fn parse(text: &str) -> Result<Q> {
    parse_at(text, 0)
}

pub(crate) fn parse_at(text: &str, base_offset: usize) -> Result<Q> {
    let trimmed = text.trim();
    let lead = text.len() - text.trim_start().len();
    if trimmed.is_empty() {
        return Err(Error::parse(base_offset, "empty rational"));
    }
    if let Some(pos) = trimmed.find(['.', 'e', 'E']) {
        return Err(Error::parse(
            base_offset + lead + pos,
            "floating-point syntax is not accepted; use p/q",
        ));
    }
    let (num_text, den_text, den_offset) = match trimmed.split_once('/') {
        Some((n, d)) => (n, Some(d), n.len() + 1),
        None => (trimmed, None, 0),
    };
    let num: BigInt = num_text
        .parse()
        .map_err(|_| Error::parse(base_offset + lead, format!("invalid integer `{num_text}`")))?;
    let den: BigInt = match den_text {
        Some(d) => d.parse().map_err(|_| {
            Error::parse(
                base_offset + lead + den_offset,
                format!("invalid denominator `{d}`"),
            )
        })?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(Error::parse(base_offset + lead + den_offset, "zero denominator"));
    }
    Ok(Q::new(num, den))
}

pub(crate) mod serde_q {
    use super::{format, Q};
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(q))
    }

    pub fn serialize_vec<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&format(q))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_format() {
        assert_eq!(format(&frac(6, 4)), "3/2");
        assert_eq!(format(&frac(-4, 2)), "-2");
        assert_eq!(format(&frac(1, -3)), "-1/3");
    }

    #[test]
    fn parse_accepts_fractions() {
        assert_eq!(parse("-3/6").unwrap(), frac(-1, 2));
        assert_eq!(parse(" 7 ").unwrap(), int(7));
    }

    #[test]
    fn parse_refuses_floats() {
        let err = parse("0.5").unwrap_err();
        assert_eq!(err, Error::parse(1, "floating-point syntax is not accepted; use p/q"));
        assert!(parse("1e3").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }
}
