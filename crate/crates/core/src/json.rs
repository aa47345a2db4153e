//! JSON encoding of fields, elements, matrices, representations and reports.
//!
//! Prime-field elements are integers, extension elements are ascending
//! coefficient arrays, a field is `{"p": int, "modulus": [int, ...]}` with the
//! modulus omitted for prime fields. Decoding errors carry a JSON path.

use serde_json::{json, Map, Value};

use crate::canonical::CanonicalForm;
use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor, FieldElem};
use crate::heisenberg::{InvariantTuple, ModuleParams, Representation};
use crate::matrix::Matrix;
use crate::module_theory::CompositionSeries;
use crate::poly::Poly;
use crate::subspace::SubspaceBasis;

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn key<'a>(v: &'a Value, name: &str, path: &str) -> Result<&'a Value> {
    let obj = v.as_object().ok_or_else(|| schema(path, "expected an object"))?;
    obj.get(name)
        .ok_or_else(|| schema(path, format!("missing key \"{name}\"")))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn uint(v: &Value, path: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| schema(path, "expected a non-negative integer"))
}

pub fn field_to_json(field: &Field) -> Value {
    serde_json::to_value(field.descriptor()).expect("descriptor serializes")
}

pub fn field_from_json(v: &Value, path: &str) -> Result<Field> {
    let desc: FieldDescriptor = serde_json::from_value(v.clone()).map_err(|e| schema(path, e.to_string()))?;
    Field::from_descriptor(&desc).map_err(|e| schema(path, e.to_string()))
}

pub fn elem_to_json(e: &FieldElem) -> Value {
    if e.field().is_prime_field() {
        json!(e.value())
    } else {
        json!(e.coeffs())
    }
}

pub fn elem_from_json(field: &Field, v: &Value, path: &str) -> Result<FieldElem> {
    let p = field.characteristic();
    if field.is_prime_field() {
        let x = uint(v, path)?;
        if x >= p {
            return Err(schema(path, format!("{x} is not a residue mod {p}")));
        }
        return Ok(field.elem(x).expect("in range"));
    }
    let items = array(v, path)?;
    if items.is_empty() || items.len() > field.degree() {
        return Err(schema(path, format!("expected 1..={} coefficients", field.degree())));
    }
    let coeffs = items
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let x = uint(c, &format!("{path}[{i}]"))?;
            if x >= p {
                return Err(schema(&format!("{path}[{i}]"), format!("{x} is not a residue mod {p}")));
            }
            Ok(x)
        })
        .collect::<Result<Vec<_>>>()?;
    field.from_coeffs(&coeffs).map_err(|e| schema(path, e.to_string()))
}

pub fn poly_to_json(f: &Poly) -> Value {
    Value::Array(f.coeffs().iter().map(elem_to_json).collect())
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| elem_to_json(&m.elem(i, j))).collect()))
        .collect();
    json!({
        "field": field_to_json(m.field()),
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": entries,
    })
}

pub fn matrix_from_json(v: &Value, path: &str) -> Result<Matrix> {
    let field = field_from_json(key(v, "field", path)?, &format!("{path}.field"))?;
    let rows = uint(key(v, "rows", path)?, &format!("{path}.rows"))? as usize;
    let cols = uint(key(v, "cols", path)?, &format!("{path}.cols"))? as usize;
    let entries_path = format!("{path}.entries");
    let entries = array(key(v, "entries", path)?, &entries_path)?;
    if entries.len() != rows {
        return Err(schema(
            &entries_path,
            format!("expected {rows} rows, found {}", entries.len()),
        ));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in entries.iter().enumerate() {
        let row_path = format!("{entries_path}[{i}]");
        let row = array(row, &row_path)?;
        if row.len() != cols {
            return Err(schema(
                &row_path,
                format!("expected {cols} entries, found {}", row.len()),
            ));
        }
        for (j, x) in row.iter().enumerate() {
            data.push(elem_from_json(&field, x, &format!("{row_path}[{j}]"))?.value());
        }
    }
    Matrix::from_values(&field, rows, cols, data).map_err(|e| schema(path, e.to_string()))
}

pub fn rep_to_json(r: &Representation) -> Value {
    json!({
        "n": r.rank(),
        "field": field_to_json(r.field()),
        "x": r.x().iter().map(matrix_to_json).collect::<Vec<_>>(),
        "y": r.y().iter().map(matrix_to_json).collect::<Vec<_>>(),
        "z": matrix_to_json(r.z()),
    })
}

pub fn rep_from_json(v: &Value) -> Result<Representation> {
    let n = uint(key(v, "n", "$")?, "$.n")? as usize;
    let field = field_from_json(key(v, "field", "$")?, "$.field")?;
    let list = |name: &str| -> Result<Vec<Matrix>> {
        let path = format!("$.{name}");
        let items = array(key(v, name, "$")?, &path)?;
        if items.len() != n {
            return Err(schema(&path, format!("expected {n} matrices, found {}", items.len())));
        }
        items
            .iter()
            .enumerate()
            .map(|(i, m)| matrix_from_json(m, &format!("{path}[{i}]")))
            .collect()
    };
    let x = list("x")?;
    let y = list("y")?;
    let z = matrix_from_json(key(v, "z", "$")?, "$.z")?;
    for (name, m) in x
        .iter()
        .map(|m| ("x", m))
        .chain(y.iter().map(|m| ("y", m)))
        .chain(std::iter::once(("z", &z)))
    {
        if m.field() != &field {
            return Err(schema(
                &format!("$.{name}"),
                "matrix field differs from the representation field",
            ));
        }
    }
    Representation::new(x, y, z).map_err(|e| schema("$", e.to_string()))
}

pub fn params_to_json(p: &ModuleParams) -> Value {
    json!({
        "alpha": elem_to_json(&p.alpha),
        "betas": p.betas.iter().map(elem_to_json).collect::<Vec<_>>(),
        "gammas": p.gammas.iter().map(elem_to_json).collect::<Vec<_>>(),
    })
}

pub fn params_from_json(field: &Field, v: &Value) -> Result<ModuleParams> {
    let alpha = elem_from_json(field, key(v, "alpha", "$")?, "$.alpha")?;
    let list = |name: &str| -> Result<Vec<FieldElem>> {
        let path = format!("$.{name}");
        array(key(v, name, "$")?, &path)?
            .iter()
            .enumerate()
            .map(|(i, e)| elem_from_json(field, e, &format!("{path}[{i}]")))
            .collect()
    };
    ModuleParams::new(alpha, list("betas")?, list("gammas")?).map_err(|e| schema("$", e.to_string()))
}

pub fn invariants_to_json(t: &InvariantTuple) -> Value {
    json!({
        "alpha": elem_to_json(&t.alpha),
        "deltas": t.deltas.iter().map(elem_to_json).collect::<Vec<_>>(),
        "epsilons": t.epsilons.iter().map(elem_to_json).collect::<Vec<_>>(),
    })
}

/// Basis vectors as arrays of elements.
pub fn subspace_to_json(s: &SubspaceBasis) -> Value {
    let f = s.field();
    Value::Array(
        s.vectors()
            .iter()
            .map(|v| {
                Value::Array(
                    v.iter()
                        .map(|&x| elem_to_json(&f.elem(x).expect("valid element")))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn series_to_json(s: &CompositionSeries) -> Value {
    json!({
        "chain_dims": s.chain_dims(),
        "factors": s.factors.iter().map(|f| json!({
            "dim": f.dim,
            "invariants": f.invariants.as_ref().map_or(Value::Null, invariants_to_json),
        })).collect::<Vec<_>>(),
    })
}

pub fn canonical_form_to_json(c: &CanonicalForm) -> Value {
    json!({
        "invariant_factors": c.invariant_factors.iter().map(poly_to_json).collect::<Vec<_>>(),
        "transform": matrix_to_json(&c.transform),
    })
}

/// Inserts `extra` into a JSON object.
pub fn with_fields(mut base: Value, extra: Map<String, Value>) -> Value {
    if let Value::Object(obj) = &mut base {
        obj.extend(extra);
    }
    base
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::{build_standard, build_v, HeisenbergAlgebra};

    #[test]
    fn representation_round_trip() {
        let k = Field::extension(3, &[1, 0, 1]).unwrap();
        let w = k.generator().unwrap();
        let params = ModuleParams::new(w.clone(), vec![k.one()], vec![w.pow(3)]).unwrap();
        let r = build_v(&HeisenbergAlgebra::new(1, &k).unwrap(), &params).unwrap();
        let text = serde_json::to_string(&rep_to_json(&r)).unwrap();
        let back = rep_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, r);
        assert_eq!(params_from_json(&k, &params_to_json(&params)).unwrap(), params);
    }

    #[test]
    fn prime_field_encoding() {
        let f = Field::prime(3).unwrap();
        let r = build_standard(&HeisenbergAlgebra::new(1, &f).unwrap());
        let v = rep_to_json(&r);
        assert_eq!(v["field"], json!({"p": 3}));
        assert_eq!(v["z"]["entries"], json!([[0, 0, 1], [0, 0, 0], [0, 0, 0]]));
    }

    #[test]
    fn schema_errors_carry_paths() {
        let f = Field::prime(3).unwrap();
        let r = build_standard(&HeisenbergAlgebra::new(1, &f).unwrap());
        let mut v = rep_to_json(&r);
        v["x"][0]["entries"][1][2] = json!(7);
        match rep_from_json(&v).unwrap_err() {
            Error::Schema { path, .. } => assert_eq!(path, "$.x[0].entries[1][2]"),
            other => panic!("unexpected {other:?}"),
        }
        v["x"][0]["entries"][1] = json!([0]);
        match rep_from_json(&v).unwrap_err() {
            Error::Schema { path, .. } => assert_eq!(path, "$.x[0].entries[1]"),
            other => panic!("unexpected {other:?}"),
        }
        let missing = json!({"n": 1, "field": {"p": 3}, "x": [], "y": []});
        assert!(matches!(rep_from_json(&missing), Err(Error::Schema { .. })));
        let bad_field = json!({"n": 1, "field": {"p": 4}});
        match rep_from_json(&bad_field).unwrap_err() {
            Error::Schema { path, .. } => assert_eq!(path, "$.field"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
