//! Small exact-arithmetic helpers shared by the formula modules.

use num_rational::Rational64;

/// `n choose 2`, zero for `n < 2`.
pub fn binom2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// Floor of `a / b` for `b > 0`.
pub fn floor_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

/// Ceiling of `a / b` for `b > 0`.
pub fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    -(-a).div_euclid(b)
}

/// Exact integer square root, if `n` is a perfect square.
pub fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let s = num_integer::Roots::sqrt(&n);
    (s * s == n).then_some(s)
}

pub fn ratio(numer: i64, denom: i64) -> Rational64 {
    Rational64::new(numer, denom)
}

/// Serde adapter writing a rational as `"p/q"` (or `"p"` when integral).
pub mod rational_str {
    use num_rational::Rational64;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        let text = String::deserialize(d)?;
        text.parse::<Rational64>().map_err(D::Error::custom)
    }

    pub mod option {
        use num_rational::Rational64;
        use serde::{de::Error, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(value: &Option<Rational64>, s: S) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => s.serialize_some(&v.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational64>, D::Error> {
            let text = Option::<String>::deserialize(d)?;
            text.map(|t| t.parse::<Rational64>().map_err(D::Error::custom))
                .transpose()
        }
    }
}
