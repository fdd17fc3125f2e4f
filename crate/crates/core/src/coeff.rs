//! Exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::str::FromStr;

pub type Coeff = BigRational;

pub fn int(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn one() -> Coeff {
    Coeff::one()
}

pub fn zero() -> Coeff {
    Coeff::zero()
}

/// Parses `3`, `-2`, `1/2`, `+4`.
pub fn parse(s: &str) -> Option<Coeff> {
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit() || c == '-' || c == '/') {
        return None;
    }
    let r = BigRational::from_str(s).ok()?;
    Some(r)
}

pub(crate) mod serde_str {
    use super::Coeff;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(c: &Coeff, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&c.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Coeff, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).ok_or_else(|| D::Error::custom(format!("bad rational `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse("3"), Some(int(3)));
        assert_eq!(parse("-1/2"), Some(int(-1) / int(2)));
        assert_eq!(parse("+4"), Some(int(4)));
        assert_eq!(parse("a"), None);
        assert_eq!(parse("1/0"), None);
    }
}
