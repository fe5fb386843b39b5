//! Serde adapters: big numbers travel as decimal strings.

pub mod rationals {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|q| q.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| crate::linalg::parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Ascending coefficient list.
pub mod polynomial {
    use crate::poly::IntPolynomial;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(p: &IntPolynomial, s: S) -> Result<S::Ok, S::Error> {
        p.to_decimal_strings().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IntPolynomial, D::Error> {
        IntPolynomial::from_decimal_strings(&Vec::<String>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
