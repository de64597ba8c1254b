//! JSON encoding for arbitrary-precision coefficients: a plain number when it
//! fits in `i64`, a decimal string otherwise.

use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::intlinalg::Int;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Wire {
    Small(i64),
    Big(String),
}

pub fn serialize<S: Serializer>(x: &Int, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => Wire::Small(v),
        None => Wire::Big(x.to_string()),
    }
    .serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
    match Wire::deserialize(d)? {
        Wire::Small(v) => Ok(Int::from(v)),
        Wire::Big(s) => s.parse().map_err(serde::de::Error::custom),
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Int], s: S) -> Result<S::Ok, S::Error> {
        let wire: Vec<Wire> = xs
            .iter()
            .map(|x| x.to_i64().map_or_else(|| Wire::Big(x.to_string()), Wire::Small))
            .collect();
        wire.serialize(s)
    }
}
