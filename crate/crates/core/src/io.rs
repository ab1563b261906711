//! JSON form of ADHM data and monads.
//!
//! A datum is `{"c":2,"r":1,"B1":[[lf,lf],[lf,lf]],"B2":…,"i":…,"j":…}` where
//! a linear form `lf` is `{"x0":"<scalar>","x1":"<scalar>"}` and absent keys
//! mean zero. Monad entries use the keys `x0..x3`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::adhm::{AdhmDatum, Pencil};
use crate::matrix::Matrix;
use crate::monad::Monad;
use crate::poly::{Monomial, Poly, Var};
use crate::polymatrix::PolyMatrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearForm {
    #[serde(default = "Scalar::zero", skip_serializing_if = "Scalar::is_zero")]
    pub x0: Scalar,
    #[serde(default = "Scalar::zero", skip_serializing_if = "Scalar::is_zero")]
    pub x1: Scalar,
}

type FormMatrix = Vec<Vec<LinearForm>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumJson {
    pub c: usize,
    pub r: usize,
    #[serde(rename = "B1")]
    pub b1: FormMatrix,
    #[serde(rename = "B2")]
    pub b2: FormMatrix,
    pub i: FormMatrix,
    pub j: FormMatrix,
}

fn forms(p: &Pencil) -> FormMatrix {
    (0..p.rows())
        .map(|a| {
            (0..p.cols())
                .map(|b| LinearForm {
                    x0: p.at_x0[(a, b)].clone(),
                    x1: p.at_x1[(a, b)].clone(),
                })
                .collect()
        })
        .collect()
}

fn pencil(name: &str, m: &FormMatrix, rows: usize, cols: usize) -> Result<Pencil, String> {
    if m.len() != rows || m.iter().any(|row| row.len() != cols) {
        let got_cols = m.first().map_or(0, Vec::len);
        return Err(format!(
            "{name} must be {rows}x{cols}, got {} rows (first row has {got_cols} entries)",
            m.len()
        ));
    }
    let at = |f: fn(&LinearForm) -> &Scalar| Matrix::from_fn(rows, cols, |a, b| f(&m[a][b]).clone());
    Pencil::new(at(|l| &l.x0), at(|l| &l.x1)).map_err(|e| e.to_string())
}

impl From<&AdhmDatum> for DatumJson {
    fn from(x: &AdhmDatum) -> Self {
        DatumJson {
            c: x.c(),
            r: x.r(),
            b1: forms(x.b1()),
            b2: forms(x.b2()),
            i: forms(x.i()),
            j: forms(x.j()),
        }
    }
}

impl TryFrom<&DatumJson> for AdhmDatum {
    type Error = String;

    fn try_from(d: &DatumJson) -> Result<Self, String> {
        let (c, r) = (d.c, d.r);
        AdhmDatum::new(
            c,
            r,
            pencil("B1", &d.b1, c, c)?,
            pencil("B2", &d.b2, c, c)?,
            pencil("i", &d.i, c, r)?,
            pencil("j", &d.j, r, c)?,
        )
        .map_err(|e| e.to_string())
    }
}

/// A schema violation with the position where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonError {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for JsonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for JsonError {}

#[derive(Deserialize)]
#[serde(try_from = "DatumJson")]
struct Checked(AdhmDatum);

impl TryFrom<DatumJson> for Checked {
    type Error = String;

    fn try_from(d: DatumJson) -> Result<Self, String> {
        AdhmDatum::try_from(&d).map(Checked)
    }
}

pub fn parse_datum(text: &str) -> Result<AdhmDatum, JsonError> {
    serde_json::from_str::<Checked>(text)
        .map(|c| c.0)
        .map_err(|e| JsonError {
            message: e.to_string(),
            line: e.line(),
            column: e.column(),
        })
}

pub fn datum_to_value(x: &AdhmDatum) -> serde_json::Value {
    serde_json::to_value(DatumJson::from(x)).expect("serializable")
}

pub fn print_datum(x: &AdhmDatum) -> String {
    serde_json::to_string_pretty(&DatumJson::from(x)).expect("serializable")
}

/// Coefficients of a linear form in `x0..x3`, nonzero keys only.
pub fn projective_form(p: &Poly) -> BTreeMap<&'static str, Scalar> {
    Var::PROJECTIVE
        .iter()
        .filter_map(|&v| {
            let c = p.coeff(&Monomial::var(v));
            (!c.is_zero()).then(|| (v.name(), c))
        })
        .collect()
}

fn projective_matrix(m: &PolyMatrix) -> Vec<Vec<BTreeMap<&'static str, Scalar>>> {
    (0..m.rows())
        .map(|a| (0..m.cols()).map(|b| projective_form(&m[(a, b)])).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonadJson {
    pub c: usize,
    pub r: usize,
    pub alpha: Vec<Vec<BTreeMap<&'static str, Scalar>>>,
    pub beta: Vec<Vec<BTreeMap<&'static str, Scalar>>>,
}

impl From<&Monad> for MonadJson {
    fn from(m: &Monad) -> Self {
        MonadJson {
            c: m.c,
            r: m.r,
            alpha: projective_matrix(&m.alpha),
            beta: projective_matrix(&m.beta),
        }
    }
}
