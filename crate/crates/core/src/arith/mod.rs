//! Exact scalar, Laurent-polynomial and power-series arithmetic.

pub mod laurent;
pub mod polyz;
pub mod rational_fn;
pub mod series;

pub use laurent::HalfLaurent;
pub use polyz::PolyZ;
pub use rational_fn::RationalFn;
pub use series::{
    a_const, g_coefficients, log_t_series, series_expand_rationalfn, series_from_half_laurent,
    TruncSeries,
};

/// Exact rational numbers in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Serde adapter writing a [`Rational`] as the string `"p/q"` (or `"p"`).
pub mod rational_str {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(|_| D::Error::custom(format!("invalid rational {text:?}")))
    }

    /// The same for `Option<Rational>`, with `null` for `None`.
    pub mod option {
        use serde::{de::Error, Deserialize, Deserializer, Serializer};

        use super::super::Rational;

        pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(x) => s.collect_str(x),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            match Option::<String>::deserialize(d)? {
                None => Ok(None),
                Some(text) => text
                    .parse()
                    .map(Some)
                    .map_err(|_| D::Error::custom(format!("invalid rational {text:?}"))),
            }
        }
    }
}
