//! JSON encoding of exact rationals: bare integers when the denominator is 1,
//! otherwise strings `"p/q"`. Decoding also accepts integer strings.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{shape, Result};
use crate::exactlin::{MatrixQ, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QJson(pub Rational);

impl Serialize for QJson {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let r = &self.0;
        if r.denom().is_one() {
            if let Some(i) = r.numer().to_i64() {
                return s.serialize_i64(i);
            }
            return s.serialize_str(&r.numer().to_string());
        }
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

struct QVisitor;

impl Visitor<'_> for QVisitor {
    type Value = QJson;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a string \"p/q\"")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<QJson, E> {
        Ok(QJson(Rational::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<QJson, E> {
        Ok(QJson(Rational::from_integer(v.into())))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<QJson, E> {
        Err(E::custom(format!(
            "floating point value {v} is not allowed; write rationals as \"p/q\""
        )))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<QJson, E> {
        parse_rational(v)
            .map(QJson)
            .ok_or_else(|| E::custom(format!("malformed rational {v:?}")))
    }
}

impl<'de> Deserialize<'de> for QJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<QJson, D::Error> {
        d.deserialize_any(QVisitor)
    }
}

pub type VecJson = Vec<QJson>;
pub type MatrixJson = Vec<Vec<QJson>>;

pub fn vec_to_json(v: &[Rational]) -> VecJson {
    v.iter().cloned().map(QJson).collect()
}

pub fn vec_from_json(v: &[QJson]) -> Vec<Rational> {
    v.iter().map(|x| x.0.clone()).collect()
}

pub fn matrix_to_json(m: &MatrixQ) -> MatrixJson {
    (0..m.rows()).map(|i| vec_to_json(m.row(i))).collect()
}

/// Decodes a matrix; `cols` is used when the matrix has no rows.
pub fn matrix_from_json(m: &MatrixJson, cols: usize) -> Result<MatrixQ> {
    let width = m.first().map_or(cols, Vec::len);
    if width != cols {
        return Err(shape(format!("matrix has {width} columns, expected {cols}")));
    }
    MatrixQ::from_rows(m.iter().map(|r| vec_from_json(r)).collect(), cols)
}
