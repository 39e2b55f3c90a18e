//! Text form of rationals: always `num/den`, integers included.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::{Error, Rat, Result};

pub fn to_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `a/b` or a bare integer; normalizes the result.
pub fn parse(s: &str) -> Result<Rat> {
    let bad = || Error::Schema(format!("not an exact rational: `{s}`"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Decimal expansion truncated to `places` digits, for display only.
pub fn to_decimal(x: &Rat, places: usize) -> String {
    let sign = if x.is_negative() { "-" } else { "" };
    let (mut q, mut r) = x.numer().abs().div_rem(x.denom());
    let int_part = q.to_string();
    let mut digits = String::new();
    for _ in 0..places {
        r *= 10;
        (q, r) = r.div_rem(x.denom());
        digits.push_str(&q.to_string());
    }
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{digits}")
    }
}

/// Serde adapter for `Rat` fields.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Option<Rat>` fields.
pub mod serde_opt_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_str(&to_string(x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rat>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["3/7", "-16/7", "9/1", "0/1", "1/96"] {
            assert_eq!(to_string(&parse(s).unwrap()), s);
        }
        assert_eq!(to_string(&parse("9").unwrap()), "9/1");
        assert_eq!(to_string(&parse("6/14").unwrap()), "3/7");
        assert!(parse("1/0").is_err());
        assert!(parse("0.5").is_err());
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&parse("3/7").unwrap(), 4), "0.4285");
        assert_eq!(to_decimal(&parse("-16/7").unwrap(), 2), "-2.28");
        assert_eq!(to_decimal(&parse("9").unwrap(), 0), "9");
    }
}
