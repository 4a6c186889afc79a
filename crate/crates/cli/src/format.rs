//! The JSON file formats for lattices and quadratic functions.
//!
//! Integers may be given as JSON numbers or decimal strings, rationals as `"p/q"` strings or
//! integers. Output always uses numbers for integers that fit in `i64` and `"p/q"` for rationals.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use torquad_core::lattice::{canonical_char, BilinearLattice, CharacteristicForm, Triple};
use torquad_core::torsion::{FiniteAbelianGroup, StructuredQuadratic, TorsionBilinear};
use torquad_core::{parse_rational, Error, IntMatrix, QmodZ};

use crate::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn integer(&self, field: &str) -> Result<BigInt, CliError> {
        match self {
            Scalar::Int(v) => Ok(BigInt::from(*v)),
            Scalar::Text(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::input(field, format!("expected an integer, got {s:?}"))),
        }
    }

    fn rational(&self, field: &str) -> Result<QmodZ, CliError> {
        match self {
            Scalar::Int(v) => Ok(QmodZ::new(BigInt::from(*v).into())),
            Scalar::Text(s) => parse_rational(s)
                .map(QmodZ::new)
                .map_err(|_| CliError::input(field, format!("expected a rational \"p/q\", got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LatticeFile {
    pub gram: Vec<Vec<Scalar>>,
    pub char: Option<Vec<Scalar>>,
}

#[derive(Clone, Debug)]
pub struct QuadFile {
    pub orders: Vec<u64>,
    pub b: Vec<Vec<Scalar>>,
    pub q: Option<Vec<Scalar>>,
    pub divisible_rank: Option<usize>,
    pub kernel_hom: Option<Vec<Scalar>>,
}

type Object = serde_json::Map<String, Value>;

fn field<T: DeserializeOwned>(obj: &Object, name: &str) -> Result<Option<T>, CliError> {
    match obj.get(name) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => T::deserialize(v).map(Some).map_err(|e| CliError::input(name, e.to_string())),
    }
}

fn required<T: DeserializeOwned>(obj: &Object, name: &str) -> Result<T, CliError> {
    field(obj, name)?.ok_or_else(|| CliError::input(name, "missing field".into()))
}

fn object<'a>(origin: &str, value: &'a Value) -> Result<&'a Object, CliError> {
    value.as_object().ok_or_else(|| CliError::input(origin, "expected a JSON object".into()))
}

impl LatticeFile {
    pub fn from_value(origin: &str, value: &Value) -> Result<Self, CliError> {
        let obj = object(origin, value)?;
        Ok(LatticeFile { gram: required(obj, "gram")?, char: field(obj, "char")? })
    }
}

impl QuadFile {
    pub fn from_value(origin: &str, value: &Value) -> Result<Self, CliError> {
        let obj = object(origin, value)?;
        Ok(QuadFile {
            orders: required(obj, "orders")?,
            b: required(obj, "b")?,
            q: field(obj, "q")?,
            divisible_rank: field(obj, "divisible_rank")?,
            kernel_hom: field(obj, "kernel_hom")?,
        })
    }
}

/// A JSON integer, or its decimal string when it does not fit in `i64`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum IntOut {
    Int(i64),
    Text(String),
}

impl From<&BigInt> for IntOut {
    fn from(v: &BigInt) -> Self {
        v.to_i64().map(IntOut::Int).unwrap_or_else(|| IntOut::Text(v.to_string()))
    }
}

pub fn ints(v: &[BigInt]) -> Vec<IntOut> {
    v.iter().map(IntOut::from).collect()
}

pub fn matrix_rows(m: &IntMatrix) -> Vec<Vec<IntOut>> {
    m.to_rows().iter().map(|r| ints(r)).collect()
}

pub fn rationals(v: &[QmodZ]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Canonical serialization of a quadratic function.
#[derive(Clone, Debug, Serialize)]
pub struct QuadOut {
    pub orders: Vec<u64>,
    pub b: Vec<Vec<String>>,
    pub q: Vec<String>,
    pub divisible_rank: usize,
    pub kernel_hom: Vec<IntOut>,
}

impl From<&StructuredQuadratic> for QuadOut {
    fn from(q: &StructuredQuadratic) -> Self {
        QuadOut {
            orders: q.group().orders().to_vec(),
            b: q.pairing().matrix().iter().map(|r| rationals(r)).collect(),
            q: rationals(q.gen_values()),
            divisible_rank: q.divisible_rank(),
            kernel_hom: ints(q.kernel_hom()),
        }
    }
}

pub fn read_value(path: &str) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(path, format!("cannot read file: {e}")))?;
    parse_value(path, &text)
}

pub fn parse_value(origin: &str, text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::input(origin, format!("malformed document: {e}")))
}

pub fn read_lattice(path: &str) -> Result<Triple, CliError> {
    LatticeFile::from_value(path, &read_value(path)?)?.to_triple()
}

pub fn read_quad(path: &str) -> Result<QuadFile, CliError> {
    QuadFile::from_value(path, &read_value(path)?)
}

impl LatticeFile {
    pub fn to_triple(&self) -> Result<Triple, CliError> {
        let n = self.gram.len();
        let mut rows = Vec::with_capacity(n);
        for (i, row) in self.gram.iter().enumerate() {
            if row.len() != n {
                return Err(CliError::input(&format!("gram[{i}]"), format!("row has length {}, expected {n}", row.len())));
            }
            rows.push(
                row.iter()
                    .enumerate()
                    .map(|(j, x)| x.integer(&format!("gram[{i}][{j}]")))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        let gram = if n == 0 { IntMatrix::zeros(0, 0) } else { IntMatrix::from_big_rows(&rows).map_err(|e| CliError::input("gram", e.to_string()))? };
        let lattice = BilinearLattice::new(gram).map_err(|e| CliError::input("gram", e.to_string()))?;
        let char = match &self.char {
            None => canonical_char(&lattice),
            Some(c) => {
                if c.len() != n {
                    return Err(CliError::input("char", format!("has length {}, expected {n}", c.len())));
                }
                let coeffs = c
                    .iter()
                    .enumerate()
                    .map(|(i, x)| x.integer(&format!("char[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                CharacteristicForm::new(&lattice, coeffs).map_err(|e| match e {
                    Error::InvalidCharacteristic { index } => CliError::input(
                        &format!("char[{index}]"),
                        "parity differs from the diagonal of the gram matrix".to_string(),
                    ),
                    other => CliError::input("char", other.to_string()),
                })?
            }
        };
        Ok(Triple { lattice, char })
    }
}

impl QuadFile {
    pub fn to_pairing(&self) -> Result<TorsionBilinear, CliError> {
        let k = self.orders.len();
        if let Some(i) = self.orders.iter().position(|&n| n < 2) {
            return Err(CliError::input(&format!("orders[{i}]"), "cyclic factors must have order at least 2".into()));
        }
        let group = FiniteAbelianGroup::new(self.orders.clone()).map_err(|e| CliError::input("orders", e.to_string()))?;
        if self.b.len() != k {
            return Err(CliError::input("b", format!("has {} rows, expected {k}", self.b.len())));
        }
        let mut matrix = Vec::with_capacity(k);
        for (i, row) in self.b.iter().enumerate() {
            if row.len() != k {
                return Err(CliError::input(&format!("b[{i}]"), format!("row has length {}, expected {k}", row.len())));
            }
            matrix.push(
                row.iter()
                    .enumerate()
                    .map(|(j, x)| x.rational(&format!("b[{i}][{j}]")))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        for i in 0..k {
            for j in 0..k {
                if matrix[i][j] != matrix[j][i] {
                    return Err(CliError::input(&format!("b[{i}][{j}]"), "pairing is not symmetric".into()));
                }
                let g = num_integer::gcd(self.orders[i], self.orders[j]) as i64;
                if !matrix[i][j].mul_i64(g).is_zero() {
                    return Err(CliError::input(
                        &format!("b[{i}][{j}]"),
                        format!("value {} is not killed by the orders of generators {i} and {j}", matrix[i][j]),
                    ));
                }
            }
        }
        TorsionBilinear::new(group, matrix).map_err(|e| CliError::input("b", e.to_string()))
    }

    pub fn to_quadratic(&self) -> Result<StructuredQuadratic, CliError> {
        let pairing = self.to_pairing()?;
        let k = self.orders.len();
        let q = self.q.as_ref().ok_or_else(|| CliError::input("q", "missing field".into()))?;
        if q.len() != k {
            return Err(CliError::input("q", format!("has length {}, expected {k}", q.len())));
        }
        let gen_values = q
            .iter()
            .enumerate()
            .map(|(i, x)| x.rational(&format!("q[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let kernel_hom = match (&self.kernel_hom, self.divisible_rank) {
            (Some(w), s) => {
                if s.is_some_and(|s| s != w.len()) {
                    return Err(CliError::input(
                        "kernel_hom",
                        format!("has length {}, but divisible_rank is {}", w.len(), s.unwrap_or(0)),
                    ));
                }
                w.iter()
                    .enumerate()
                    .map(|(i, x)| x.integer(&format!("kernel_hom[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?
            }
            (None, s) => vec![BigInt::from(0); s.unwrap_or(0)],
        };
        StructuredQuadratic::new(pairing, gen_values, kernel_hom).map_err(|e| match e {
            Error::InconsistentGenerator { index, detail } => CliError::input(&format!("q[{index}]"), detail),
            other => CliError::input("q", other.to_string()),
        })
    }
}

/// Reads and serializes a quadratic function file in canonical form.
pub fn canonical_quad(text: &str) -> Result<String, CliError> {
    let q = QuadFile::from_value("input", &parse_value("input", text)?)?.to_quadratic()?;
    Ok(serde_json::to_string(&QuadOut::from(&q)).expect("serializable"))
}
