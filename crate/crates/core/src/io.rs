//! JSON and CSV formats for pairs, systems and scalar tables.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::leonard::LeonardData;
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};
use crate::system::{RelationParameters, TridiagonalSystem};

pub const SCHEMA: u64 = 1;

/// A matrix pair as read from an input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairInput {
    pub field: Field,
    pub a: Matrix,
    pub astar: Matrix,
}

fn parse_error<T>(what: impl Into<String>) -> Result<T> {
    Err(Error::Parse(what.into()))
}

fn parse_field(v: Option<&Value>) -> Result<Field> {
    match v {
        None => Ok(Field::Rational),
        Some(Value::String(s)) => s.parse(),
        Some(obj @ Value::Object(_)) => {
            serde_json::from_value(obj.clone()).map_err(|e| Error::InvalidField(e.to_string()))
        }
        Some(other) => Err(Error::InvalidField(format!("unexpected field value {other}"))),
    }
}

fn parse_scalar(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => field.parse(&n.to_string()),
        Value::Number(n) => parse_error(format!("{n} is not an integer; write fractions as strings like \"1/2\"")),
        other => parse_error(format!("expected a scalar, found {other}")),
    }
}

fn parse_matrix(field: Field, v: Option<&Value>, name: &str) -> Result<Matrix> {
    let rows = match v {
        Some(Value::Array(rows)) => rows,
        Some(_) => return parse_error(format!("{name} must be an array of rows")),
        None => return parse_error(format!("missing {name}")),
    };
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let Value::Array(entries) = row else {
            return parse_error(format!("{name} must be an array of rows"));
        };
        out.push(entries.iter().map(|e| parse_scalar(field, e)).collect::<Result<Vec<_>>>()?);
    }
    if out.is_empty() {
        return parse_error(format!("{name} is empty"));
    }
    Matrix::from_rows(field, out)
}

/// Reads `{"schema":1, "field":…, "A":[[…]], "Astar":[[…]]}`. Other keys are
/// ignored, so system files written by [`system_json`] are valid input.
pub fn parse_pair_input(text: &str) -> Result<PairInput> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let Value::Object(obj) = v else {
        return parse_error("input must be a JSON object");
    };
    if let Some(s) = obj.get("schema") {
        if s.as_u64() != Some(SCHEMA) {
            return parse_error(format!("unsupported schema {s}"));
        }
    }
    let field = parse_field(obj.get("field"))?;
    let a = parse_matrix(field, obj.get("A"), "A")?;
    let astar = parse_matrix(field, obj.get("Astar"), "Astar")?;
    Ok(PairInput { field, a, astar })
}

pub fn field_json(field: Field) -> Value {
    serde_json::to_value(field).expect("field serializes")
}

pub fn scalars_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|s| Value::String(s.to_string())).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    json!(m.to_strings())
}

pub fn system_json(sys: &TridiagonalSystem) -> Value {
    json!({
        "schema": SCHEMA,
        "field": field_json(sys.field()),
        "A": matrix_json(sys.a()),
        "Astar": matrix_json(sys.astar()),
        "theta": scalars_json(sys.theta()),
        "thetastar": scalars_json(sys.thetastar()),
        "shape": sys.shape(),
    })
}

pub fn parameters_json(p: &RelationParameters) -> Value {
    json!({
        "beta": p.beta.to_string(),
        "gamma": p.gamma.to_string(),
        "gammastar": p.gammastar.to_string(),
        "rho": p.rho.to_string(),
        "rhostar": p.rhostar.to_string(),
    })
}

pub fn leonard_json(data: &LeonardData) -> Value {
    let mut obj = Map::new();
    obj.insert("d".into(), json!(data.d));
    for (name, first, values) in data.sequences() {
        obj.insert(name.into(), json!({ "first-index": first, "values": scalars_json(values) }));
    }
    Value::Object(obj)
}

/// One `sequence,index,value` row per entry.
pub fn leonard_csv(data: &LeonardData) -> String {
    let mut out = String::from("sequence,index,value\n");
    for (name, first, values) in data.sequences() {
        for (k, v) in values.iter().enumerate() {
            out.push_str(&format!("{name},{},{v}\n", first + k));
        }
    }
    out
}
