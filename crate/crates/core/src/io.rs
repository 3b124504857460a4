//! JSON input files and the scalar/vector/matrix encoding shared by input
//! and reports. Rational scalars are `"p/q"` strings (integers may also be
//! given as JSON numbers); prime-field scalars are integers in `[0, p)`.

use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{Extension, FDAlgebra};
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::group::GroupData;
use crate::linalg::{unit_vector, Matrix, Vector};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Name(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub order: usize,
    pub cayley: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    Table {
        dim: usize,
        mult: Vec<Vec<Vec<ScalarSpec>>>,
        unit: Vec<ScalarSpec>,
    },
    Group {
        group: GroupSpec,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SubalgebraSpec {
    Basis { basis: Vec<Vec<ScalarSpec>> },
    Subgroup { subgroup: Vec<usize> },
    /// `"ground"` for `K 1` or `"whole"` for `A` itself.
    Named(String),
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ModuleSide {
    Left,
    Right,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub name: String,
    pub side: ModuleSide,
    /// `"regular"`, `"random"` (an ideal generated by a seeded element) or
    /// `"explicit"` (the default, requiring `dim` and `actions`).
    #[serde(default)]
    pub kind: Option<String>,
    #[serde(default)]
    pub dim: Option<usize>,
    /// One matrix (list of rows) per basis element of `A`.
    #[serde(default)]
    pub actions: Option<Vec<Vec<Vec<ScalarSpec>>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealSpec {
    pub name: String,
    pub generators: Vec<Vec<ScalarSpec>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub field: FieldSpec,
    pub algebra: AlgebraSpec,
    pub subalgebra: SubalgebraSpec,
    #[serde(default)]
    pub modules: Vec<ModuleSpec>,
    #[serde(default)]
    pub ideals: Vec<IdealSpec>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// A parsed input file, keeping the document for the report echo.
#[derive(Clone, Debug)]
pub struct Input {
    pub document: Value,
    pub spec: InputSpec,
    pub field: Field,
    pub ext: Extension,
    pub group: Option<GroupData>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Input(format!("malformed JSON: {e}"))
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(json_error)
}

pub fn parse_field(spec: &FieldSpec) -> Result<Field> {
    match spec {
        FieldSpec::Name(n) if n == "Q" => Ok(Field::Rational),
        FieldSpec::Name(n) => Err(Error::Input(format!("unknown field {n:?}, expected \"Q\" or {{\"Fp\": p}}"))),
        FieldSpec::Prime { fp } => Field::prime(*fp),
    }
}

pub fn field_json(field: Field) -> Value {
    match field {
        Field::Rational => json!("Q"),
        Field::Prime(p) => json!({ "Fp": p }),
    }
}

pub fn parse_scalar(field: Field, s: &ScalarSpec) -> Result<Scalar> {
    match s {
        ScalarSpec::Int(v) => Ok(field.from_i64(*v)),
        ScalarSpec::Text(t) => field.parse(t),
    }
}

pub fn parse_vector(field: Field, v: &[ScalarSpec], len: usize, what: &str) -> Result<Vector> {
    if v.len() != len {
        return Err(Error::DimensionMismatch(format!("{what}: expected {len} entries, found {}", v.len())));
    }
    v.iter().map(|s| parse_scalar(field, s)).collect()
}

/// A matrix given as a list of rows.
pub fn parse_matrix(field: Field, rows: &[Vec<ScalarSpec>], shape: (usize, usize), what: &str) -> Result<Matrix> {
    if rows.len() != shape.0 {
        return Err(Error::DimensionMismatch(format!("{what}: expected {} rows, found {}", shape.0, rows.len())));
    }
    let rows: Vec<Vector> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vector(field, r, shape.1, &format!("{what} row {i}")))
        .collect::<Result<_>>()?;
    Matrix::from_rows(field, &rows).map(|m| if shape.0 == 0 { Matrix::zeros(field, 0, shape.1) } else { m })
}

pub fn scalar_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(_) => Value::String(s.to_string()),
        Scalar::Prime { residue, .. } => json!(residue),
    }
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_json(m.row(i))).collect())
}

/// Re-reads a scalar written by [`scalar_json`].
pub fn scalar_from_json(field: Field, v: &Value) -> Result<Scalar> {
    let spec: ScalarSpec = serde_json::from_value(v.clone()).map_err(json_error)?;
    parse_scalar(field, &spec)
}

pub fn vector_from_json(field: Field, v: &Value, len: usize, what: &str) -> Result<Vector> {
    let spec: Vec<ScalarSpec> = serde_json::from_value(v.clone()).map_err(json_error)?;
    parse_vector(field, &spec, len, what)
}

pub fn matrix_from_json(field: Field, v: &Value, shape: (usize, usize), what: &str) -> Result<Matrix> {
    let spec: Vec<Vec<ScalarSpec>> = serde_json::from_value(v.clone()).map_err(json_error)?;
    parse_matrix(field, &spec, shape, what)
}

pub fn parse_group(spec: &GroupSpec) -> Result<GroupData> {
    if spec.cayley.len() != spec.order {
        return Err(Error::InvalidGroup(format!(
            "order {} but {} table rows",
            spec.order,
            spec.cayley.len()
        )));
    }
    GroupData::new(spec.cayley.clone())
}

fn build_algebra(field: Field, spec: &AlgebraSpec) -> Result<(FDAlgebra, Option<GroupData>)> {
    match spec {
        AlgebraSpec::Table { dim, mult, unit } => {
            if mult.len() != *dim || mult.iter().any(|row| row.len() != *dim) {
                return Err(Error::DimensionMismatch(format!("mult must be {dim} x {dim}")));
            }
            let table = mult
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, v)| parse_vector(field, v, *dim, &format!("mult[{i}][{j}]")))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let unit = parse_vector(field, unit, *dim, "unit")?;
            Ok((FDAlgebra::new(field, *dim, table, unit)?, None))
        }
        AlgebraSpec::Group { group } => {
            let g = parse_group(group)?;
            Ok((FDAlgebra::group_algebra(&g, field), Some(g)))
        }
    }
}

pub fn parse_input(text: &str) -> Result<Input> {
    let document = parse_json(text)?;
    input_from_value(document)
}

pub fn input_from_value(document: Value) -> Result<Input> {
    let spec: InputSpec = serde_json::from_value(document.clone()).map_err(|e| Error::Input(format!("input schema: {e}")))?;
    let field = parse_field(&spec.field)?;
    let (a, group) = build_algebra(field, &spec.algebra)?;
    let a = Arc::new(a);
    let ext = match &spec.subalgebra {
        SubalgebraSpec::Basis { basis } => {
            let vs = basis
                .iter()
                .enumerate()
                .map(|(i, v)| parse_vector(field, v, a.dim(), &format!("subalgebra basis {i}")))
                .collect::<Result<Vec<_>>>()?;
            Extension::subalgebra(a, &vs)?
        }
        SubalgebraSpec::Subgroup { subgroup } => {
            let g = group
                .as_ref()
                .ok_or_else(|| Error::Input("a subgroup needs a group algebra".into()))?;
            Extension::from_subgroup(g, field, subgroup)?
        }
        SubalgebraSpec::Named(n) if n == "ground" => Extension::over_ground(a),
        SubalgebraSpec::Named(n) if n == "whole" => Extension::identity(a),
        SubalgebraSpec::Named(n) => {
            return Err(Error::Input(format!("unknown subalgebra {n:?}, expected \"ground\" or \"whole\"")))
        }
    };
    Ok(Input {
        document,
        spec,
        field,
        ext,
        group,
    })
}

/// Builds a declared module as a left or right `A`-module.
pub fn build_module(input: &Input, spec: &ModuleSpec, seed: u64) -> Result<Bimodule> {
    let a = input.ext.a();
    let kind = spec.kind.as_deref().unwrap_or("explicit");
    match (kind, spec.side) {
        ("regular", ModuleSide::Left) => Ok(Bimodule::left_regular(a)),
        ("regular", ModuleSide::Right) => Ok(Bimodule::right_regular(a)),
        ("random", ModuleSide::Left) => crate::equivalences::random_left_module(a, seed),
        ("random", ModuleSide::Right) => crate::equivalences::random_right_module(a, seed),
        ("explicit", side) => {
            let dim = spec
                .dim
                .ok_or_else(|| Error::Input(format!("module {}: missing dim", spec.name)))?;
            let actions = spec
                .actions
                .as_ref()
                .ok_or_else(|| Error::Input(format!("module {}: missing actions", spec.name)))?;
            if actions.len() != a.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "module {}: expected {} action matrices",
                    spec.name,
                    a.dim()
                )));
            }
            let mats = actions
                .iter()
                .enumerate()
                .map(|(i, m)| parse_matrix(input.field, m, (dim, dim), &format!("module {} action {i}", spec.name)))
                .collect::<Result<Vec<_>>>()?;
            match side {
                ModuleSide::Left => Bimodule::left_module(a, dim, mats),
                ModuleSide::Right => Bimodule::right_module(a, dim, mats),
            }
        }
        (other, _) => Err(Error::Input(format!("module {}: unknown kind {other:?}", spec.name))),
    }
}

pub fn ideal_generators(input: &Input, spec: &IdealSpec) -> Result<Vec<Vector>> {
    let n = input.ext.a().dim();
    spec.generators
        .iter()
        .enumerate()
        .map(|(i, g)| parse_vector(input.field, g, n, &format!("ideal {} generator {i}", spec.name)))
        .collect()
}

/// Serializes an extension as an input document (structure constants for
/// `A`, either a subgroup or a subalgebra basis for `B`).
pub fn extension_document(name: &str, ext: &Extension, group: Option<(&GroupData, &[usize])>, seed: u64) -> Value {
    let a = ext.a();
    let field = field_json(a.field());
    let (algebra, subalgebra) = match group {
        Some((g, sub)) => (
            json!({ "group": { "order": g.order(), "cayley": g.cayley() } }),
            json!({ "subgroup": sub }),
        ),
        None => {
            let mult: Vec<Value> = a
                .mult_table()
                .iter()
                .map(|row| Value::Array(row.iter().map(|v| vector_json(v)).collect()))
                .collect();
            let algebra = json!({ "dim": a.dim(), "mult": mult, "unit": vector_json(a.unit()) });
            let sub = if ext.is_trivial() {
                json!("whole")
            } else if ext.b().dim() == 1 {
                json!("ground")
            } else {
                json!({ "basis": ext.image_basis().iter().map(|v| vector_json(v)).collect::<Vec<_>>() })
            };
            (algebra, sub)
        }
    };
    json!({
        "name": name,
        "field": field,
        "algebra": algebra,
        "subalgebra": subalgebra,
        "modules": [
            { "name": "random-left", "side": "left", "kind": "random" },
            { "name": "random-right", "side": "right", "kind": "random" }
        ],
        "seed": seed,
    })
}

/// Unit vectors `e_i` as generator lists, handy for samples.
pub fn basis_generators(field: Field, n: usize) -> Vec<Vector> {
    (0..n).map(|i| unit_vector(field, n, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars_round_trip() {
        let q = Field::Rational;
        let x = q.parse("-3/4").unwrap();
        assert_eq!(scalar_json(&x), json!("-3/4"));
        assert_eq!(scalar_from_json(q, &json!("-3/4")).unwrap(), x);
        assert_eq!(scalar_from_json(q, &json!(2)).unwrap(), q.from_i64(2));
        let f = Field::prime(7).unwrap();
        assert_eq!(scalar_json(&f.from_i64(-1)), json!(6));
    }

    #[test]
    fn malformed_json_reports_location() {
        let err = parse_input("{\n  \"field\": \"Q\",\n  oops\n}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3"), "{msg}");
    }

    #[test]
    fn group_input() {
        let text = r#"{"field": {"Fp": 2}, "algebra": {"group": {"order": 2, "cayley": [[0,1],[1,0]]}}, "subalgebra": "ground"}"#;
        let input = parse_input(text).unwrap();
        assert_eq!(input.ext.a().dim(), 2);
        assert_eq!(input.ext.b().dim(), 1);
    }

    #[test]
    fn non_associative_table_is_rejected() {
        let ok = r#"{"field": "Q", "algebra": {"dim": 2, "unit": [1, 0],
            "mult": [[[1,0],[0,1]],[[0,1],[1,1]]]}, "subalgebra": "ground"}"#;
        assert!(parse_input(ok).is_ok());
        // x x = y, y y = x, x y = y x = 0: (x x) y = x but x (x y) = 0
        let broken = r#"{"field": "Q", "algebra": {"dim": 3, "unit": [1, 0, 0],
            "mult": [[[1,0,0],[0,1,0],[0,0,1]],[[0,1,0],[0,0,1],[0,0,0]],[[0,0,1],[0,0,0],[0,1,0]]]}, "subalgebra": "ground"}"#;
        assert!(matches!(input_err(broken), Error::NonAssociative(..)));
    }

    fn input_err(text: &str) -> Error {
        parse_input(text).unwrap_err()
    }
}
