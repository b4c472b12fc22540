//! JSON encoding of exact integers and rationals.
//!
//! Big integers are written as bare JSON numbers (the `arbitrary_precision`
//! feature of `serde_json` keeps every digit). Rationals are `{"num", "den"}`.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    let number = serde_json::Number::from_str(&n.to_string()).map_err(serde::ser::Error::custom)?;
    number.serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    let number = serde_json::Number::deserialize(d)?;
    BigUint::from_str(&number.to_string()).map_err(D::Error::custom)
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(n: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match n {
            Some(n) => super::serialize(n, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        let number = Option::<serde_json::Number>::deserialize(d)?;
        number
            .map(|n| BigUint::from_str(&n.to_string()).map_err(D::Error::custom))
            .transpose()
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        let numbers = v
            .iter()
            .map(|n| serde_json::Number::from_str(&n.to_string()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::ser::Error::custom)?;
        numbers.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<serde_json::Number>::deserialize(d)?
            .iter()
            .map(|n| BigUint::from_str(&n.to_string()).map_err(D::Error::custom))
            .collect()
    }
}

/// An exact rational in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRational {
    #[serde(with = "int")]
    pub num: BigInt,
    #[serde(with = "int")]
    pub den: BigInt,
}

impl From<&BigRational> for ExactRational {
    fn from(r: &BigRational) -> Self {
        ExactRational {
            num: r.numer().clone(),
            den: r.denom().clone(),
        }
    }
}

impl From<&ExactRational> for BigRational {
    fn from(r: &ExactRational) -> Self {
        BigRational::new(r.num.clone(), r.den.clone())
    }
}

mod int {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        let number =
            serde_json::Number::from_str(&n.to_string()).map_err(serde::ser::Error::custom)?;
        number.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let number = serde_json::Number::deserialize(d)?;
        BigInt::from_str(&number.to_string()).map_err(D::Error::custom)
    }
}
