//! Exact rationals and their canonical `"num/den"` text form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num/den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical text form. Integers are still written with a denominator
/// (`"1/1"`, `"0/1"`).
pub fn to_canonical(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the canonical `"num/den"` form.
///
/// Rejects anything [`to_canonical`] would not produce: missing slash,
/// signs on the denominator, leading `+`, leading zeros, `-0`, and
/// fractions not in lowest terms.
pub fn parse_canonical(input: &str) -> Result<Rational> {
    let fail = |reason: &str| Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let (num, den) = input.split_once('/').ok_or_else(|| fail("expected num/den"))?;
    let (negative, digits) = match num.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, num),
    };
    if !is_plain_digits(digits) {
        return Err(fail("numerator must be an optionally negative decimal integer"));
    }
    if !is_plain_digits(den) {
        return Err(fail("denominator must be a positive decimal integer"));
    }
    let mut n: BigInt = digits.parse().map_err(|_| fail("bad numerator"))?;
    let d: BigInt = den.parse().map_err(|_| fail("bad denominator"))?;
    if d.is_zero() {
        return Err(fail("zero denominator"));
    }
    if negative {
        if n.is_zero() {
            return Err(fail("negative zero"));
        }
        n = -n;
    }
    let r = Rational::new(n.clone(), d.clone());
    if r.numer() != &n || r.denom() != &d {
        return Err(fail("not in lowest terms"));
    }
    Ok(r)
}

fn is_plain_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'))
}

/// Display-only decimal rendering, rounded half away from zero.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (r * Rational::from_integer(scale.clone())).abs();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let rounded = (scaled + half).floor().to_integer();
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    let sign = if r.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>digits$}")
    }
}

/// Serde adapter writing a [`Rational`] as its canonical string.
pub mod serde_canonical {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_canonical, to_canonical, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_canonical(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_canonical(&text).map_err(serde::de::Error::custom)
    }
}

/// Same as [`serde_canonical`] for vectors.
pub mod serde_canonical_vec {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_canonical, to_canonical, Rational};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(to_canonical))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|t| parse_canonical(t).map_err(serde::de::Error::custom))
            .collect()
    }
}
