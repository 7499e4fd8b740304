//! Serde adapters: big integers travel as decimal strings, rationals as `"num/den"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

pub fn big<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

pub fn big_vec<S: Serializer>(values: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|v| v.to_string()))
}

pub fn big_rows<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(
        rows.iter()
            .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
    )
}

pub fn rational_string(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn rational<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(value))
}

pub fn rational_vec<S: Serializer>(values: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(rational_string))
}

/// Wrapper so an exact rational can sit inside derived `Serialize` types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub BigRational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rational(&self.0, s)
    }
}
