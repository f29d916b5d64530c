//! JSON input formats with field-path error reporting.
//!
//! Group elements are written either as an array of exponents or, in cyclic
//! groups, as a bare integer. Matrices are arrays of rows whose entries use
//! the textual scalar form (`"1/2"`, `"z3^1"`) or plain integers.

use std::collections::BTreeMap;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::cyclotomic::CycNumber;
use crate::embedding::{ChainSpec, ChainStep};
use crate::equivalence::{DefiningSequence, Multiplicity, Signature};
use crate::graded::{ElementaryTuple, GradedAlgebra, GradingError};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

impl FormatError {
    fn at(path: &str, message: impl Into<String>) -> Self {
        FormatError::Field {
            path: if path.is_empty() { "$".into() } else { path.into() },
            message: message.into(),
        }
    }

    pub fn path(&self) -> Option<&str> {
        match self {
            FormatError::Field { path, .. } => Some(path),
            FormatError::Syntax { .. } => None,
        }
    }
}

pub fn parse_json(text: &str) -> Result<Value, FormatError> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
        }
    })
}

pub fn child_path(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

pub fn item_path(path: &str, i: usize) -> String {
    format!("{}[{i}]", if path.is_empty() { "$" } else { path })
}

pub fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, FormatError> {
    v.as_object().ok_or_else(|| FormatError::at(path, "expected an object"))
}

pub fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, FormatError> {
    v.as_array().ok_or_else(|| FormatError::at(path, "expected an array"))
}

pub fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value, FormatError> {
    obj.get(key)
        .ok_or_else(|| FormatError::at(&child_path(path, key), "missing field"))
}

pub fn integer(v: &Value, path: &str) -> Result<i64, FormatError> {
    v.as_i64().ok_or_else(|| FormatError::at(path, "expected an integer"))
}

pub fn count(v: &Value, path: &str) -> Result<usize, FormatError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| FormatError::at(path, "expected a nonnegative integer"))
}

pub fn kind<'a>(obj: &'a Map<String, Value>, path: &str) -> Result<&'a str, FormatError> {
    field(obj, path, "kind")?
        .as_str()
        .ok_or_else(|| FormatError::at(&child_path(path, "kind"), "expected a string"))
}

fn grading(path: &str) -> impl Fn(GradingError) -> FormatError + '_ {
    move |e| FormatError::at(path, e.to_string())
}

/// `{"factors":[n1,…]}`, a bare array of factors, or a single integer.
pub fn group_from_value(v: &Value, path: &str) -> Result<FiniteAbelianGroup, FormatError> {
    let factors_value = match v {
        Value::Object(obj) => field(obj, path, "factors")?,
        other => other,
    };
    let factors: Vec<i64> = match factors_value {
        Value::Number(_) => vec![integer(factors_value, path)?],
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, x)| integer(x, &item_path(path, i)))
            .collect::<Result<_, _>>()?,
        _ => return Err(FormatError::at(path, "expected a group")),
    };
    FiniteAbelianGroup::new(&factors).map_err(|e| FormatError::at(path, e.to_string()))
}

/// Accepts JSON or the shorthand `2x2` / `2,2`.
pub fn group_from_str(text: &str) -> Result<FiniteAbelianGroup, FormatError> {
    let trimmed = text.trim();
    if let Ok(v) = serde_json::from_str::<Value>(trimmed) {
        return group_from_value(&v, "group");
    }
    let factors: Result<Vec<i64>, _> = trimmed
        .split(['x', ',', '×'])
        .map(|s| s.trim().parse::<i64>())
        .collect();
    let factors = factors.map_err(|_| FormatError::at("group", format!("cannot read {trimmed:?} as a group")))?;
    FiniteAbelianGroup::new(&factors).map_err(|e| FormatError::at("group", e.to_string()))
}

pub fn element_from_value(group: &FiniteAbelianGroup, v: &Value, path: &str) -> Result<GroupElement, FormatError> {
    let exponents: Vec<i64> = match v {
        Value::Number(_) if group.rank() == 1 => vec![integer(v, path)?],
        Value::Number(_) => {
            return Err(FormatError::at(path, format!("expected an array of {} exponents", group.rank())))
        }
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, x)| integer(x, &item_path(path, i)))
            .collect::<Result<_, _>>()?,
        _ => return Err(FormatError::at(path, "expected a group element")),
    };
    group.element(&exponents).map_err(|e| FormatError::at(path, e.to_string()))
}

/// Component keys: `"(1,0)"`, `"[1,0]"`, `"1,0"` or `"1"`.
fn element_from_key(group: &FiniteAbelianGroup, key: &str, path: &str) -> Result<GroupElement, FormatError> {
    let inner = key.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    let exponents: Result<Vec<i64>, _> = inner.split(',').map(|s| s.trim().parse::<i64>()).collect();
    let exponents = exponents.map_err(|_| FormatError::at(path, format!("cannot read {key:?} as a group element")))?;
    group.element(&exponents).map_err(|e| FormatError::at(path, e.to_string()))
}

pub fn tuple_from_value(group: &FiniteAbelianGroup, v: &Value, path: &str) -> Result<ElementaryTuple, FormatError> {
    let items = array(v, path)?;
    if items.is_empty() {
        return Err(FormatError::at(path, "an elementary tuple must be nonempty"));
    }
    let degrees = items
        .iter()
        .enumerate()
        .map(|(i, x)| element_from_value(group, x, &item_path(path, i)))
        .collect::<Result<_, _>>()?;
    Ok(ElementaryTuple(degrees))
}

pub fn scalar_from_value(v: &Value, path: &str) -> Result<CycNumber, FormatError> {
    match v {
        Value::Number(_) => Ok(CycNumber::from_integer(integer(v, path)?)),
        Value::String(s) => s.parse().map_err(|e: crate::ScalarError| FormatError::at(path, e.to_string())),
        _ => Err(FormatError::at(path, "expected a scalar")),
    }
}

pub fn matrix_from_value(v: &Value, path: &str) -> Result<Matrix, FormatError> {
    let rows = array(v, path)?;
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let p = item_path(path, i);
            array(row, &p)?
                .iter()
                .enumerate()
                .map(|(j, x)| scalar_from_value(x, &item_path(&p, j)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(parsed).ok_or_else(|| FormatError::at(path, "expected a nonempty square matrix"))
}

pub fn matrices_from_value(v: &Value, path: &str) -> Result<Vec<Matrix>, FormatError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, m)| matrix_from_value(m, &item_path(path, i)))
        .collect()
}

fn resolve_group(
    obj: &Map<String, Value>,
    path: &str,
    inherited: Option<&FiniteAbelianGroup>,
) -> Result<Option<FiniteAbelianGroup>, FormatError> {
    match (obj.get("group"), inherited) {
        (Some(v), Some(outer)) => {
            let own = group_from_value(v, &child_path(path, "group"))?;
            if &own != outer {
                return Err(FormatError::at(
                    &child_path(path, "group"),
                    format!("group {:?} does not match the enclosing group {:?}", own.factors(), outer.factors()),
                ));
            }
            Ok(Some(own))
        }
        (Some(v), None) => Ok(Some(group_from_value(v, &child_path(path, "group"))?)),
        (None, outer) => Ok(outer.cloned()),
    }
}

fn require_group(group: Option<FiniteAbelianGroup>, path: &str) -> Result<FiniteAbelianGroup, FormatError> {
    group.ok_or_else(|| FormatError::at(&child_path(path, "group"), "missing field"))
}

/// A grading spec: `elementary`, `epsilon`, `tensor` or `explicit`. A
/// `group` given on an outer spec is inherited by nested ones.
pub fn grading_from_value(
    v: &Value,
    path: &str,
    inherited: Option<&FiniteAbelianGroup>,
) -> Result<GradedAlgebra, FormatError> {
    let obj = object(v, path)?;
    let group = resolve_group(obj, path, inherited)?;
    match kind(obj, path)? {
        "elementary" => {
            let group = require_group(group, path)?;
            let tuple_path = child_path(path, "tuple");
            let tuple = tuple_from_value(&group, field(obj, path, "tuple")?, &tuple_path)?;
            GradedAlgebra::elementary(&group, tuple).map_err(grading(&tuple_path))
        }
        "epsilon" => {
            let n_path = child_path(path, "n");
            let n = integer(field(obj, path, "n")?, &n_path)?;
            match group {
                None => GradedAlgebra::epsilon(n).map_err(grading(&n_path)),
                Some(group) => {
                    if n <= 0 {
                        return Err(FormatError::at(&n_path, "matrix size must be positive"));
                    }
                    let a = element_from_value(&group, field(obj, path, "a")?, &child_path(path, "a"))?;
                    let b = element_from_value(&group, field(obj, path, "b")?, &child_path(path, "b"))?;
                    GradedAlgebra::epsilon_in(&group, n as usize, &a, &b).map_err(grading(path))
                }
            }
        }
        "tensor" => {
            let left_path = child_path(path, "left");
            let right_path = child_path(path, "right");
            let left = grading_from_value(field(obj, path, "left")?, &left_path, group.as_ref())?;
            let right = grading_from_value(field(obj, path, "right")?, &right_path, Some(left.group()))?;
            GradedAlgebra::induced_tensor(&left, &right).map_err(grading(&left_path))
        }
        "explicit" => {
            let group = require_group(group, path)?;
            let comp_path = child_path(path, "components");
            let comps = object(field(obj, path, "components")?, &comp_path)?;
            let mut components = BTreeMap::new();
            let mut size = None;
            for (key, basis) in comps {
                let key_path = child_path(&comp_path, key);
                let g = element_from_key(&group, key, &key_path)?;
                let basis = matrices_from_value(basis, &key_path)?;
                if let Some(first) = basis.first() {
                    size.get_or_insert(first.n());
                }
                if components.insert(g, basis).is_some() {
                    return Err(FormatError::at(&key_path, "duplicate component"));
                }
            }
            let n = match obj.get("n") {
                Some(v) => count(v, &child_path(path, "n"))?,
                None => size.ok_or_else(|| FormatError::at(&comp_path, "no matrices given"))?,
            };
            GradedAlgebra::explicit(&group, n, components).map_err(grading(&comp_path))
        }
        other => Err(FormatError::at(&child_path(path, "kind"), format!("unknown grading kind {other:?}"))),
    }
}

pub fn multiplicity_from_value(v: &Value, path: &str) -> Result<Multiplicity, FormatError> {
    match v {
        Value::String(s) if s == "omega" || s == "ω" => Ok(Multiplicity::Omega),
        Value::Number(_) => Ok(Multiplicity::Finite(count(v, path)? as u64)),
        _ => Err(FormatError::at(path, "expected a count or \"omega\"")),
    }
}

/// A tuple (array) or `{"signature":[{"element":…,"count":…|"omega"}]}`.
pub fn defining_sequence_from_value(
    group: &FiniteAbelianGroup,
    v: &Value,
    path: &str,
) -> Result<DefiningSequence, FormatError> {
    match v {
        Value::Array(_) => Ok(DefiningSequence::Finite(tuple_from_value(group, v, path)?)),
        Value::Object(obj) => {
            let sig_path = child_path(path, "signature");
            let mut signature = Signature::default();
            for (i, entry) in array(field(obj, path, "signature")?, &sig_path)?.iter().enumerate() {
                let p = item_path(&sig_path, i);
                let e = object(entry, &p)?;
                let g = element_from_value(group, field(e, &p, "element")?, &child_path(&p, "element"))?;
                let m = multiplicity_from_value(field(e, &p, "count")?, &child_path(&p, "count"))?;
                signature.add(g, m);
            }
            Ok(DefiningSequence::Finitary(signature))
        }
        _ => Err(FormatError::at(path, "expected a tuple or a signature object")),
    }
}

fn step_from_value(group: &FiniteAbelianGroup, v: &Value, path: &str) -> Result<ChainStep, FormatError> {
    let obj = object(v, path)?;
    match kind(obj, path)? {
        "double" => Ok(ChainStep::Double),
        "twist" => Ok(ChainStep::Twist {
            a: element_from_value(group, field(obj, path, "a")?, &child_path(path, "a"))?,
        }),
        "block" => Ok(ChainStep::Block {
            k: count(field(obj, path, "k")?, &child_path(path, "k"))?,
            m: count(field(obj, path, "m")?, &child_path(path, "m"))?,
            r: count(field(obj, path, "r")?, &child_path(path, "r"))?,
            tuple: tuple_from_value(group, field(obj, path, "tuple")?, &child_path(path, "tuple"))?,
        }),
        "append" => {
            let elements_path = child_path(path, "elements");
            let items = array(field(obj, path, "elements")?, &elements_path)?;
            let elements = items
                .iter()
                .enumerate()
                .map(|(i, x)| element_from_value(group, x, &item_path(&elements_path, i)))
                .collect::<Result<_, _>>()?;
            Ok(ChainStep::Append { elements })
        }
        other => Err(FormatError::at(&child_path(path, "kind"), format!("unknown step kind {other:?}"))),
    }
}

pub fn chain_from_value(v: &Value, path: &str) -> Result<ChainSpec, FormatError> {
    let obj = object(v, path)?;
    let group = group_from_value(field(obj, path, "group")?, &child_path(path, "group"))?;
    let base = tuple_from_value(&group, field(obj, path, "base")?, &child_path(path, "base"))?;
    let steps_path = child_path(path, "steps");
    let steps = array(field(obj, path, "steps")?, &steps_path)?
        .iter()
        .enumerate()
        .map(|(i, s)| step_from_value(&group, s, &item_path(&steps_path, i)))
        .collect::<Result<_, _>>()?;
    let spec = ChainSpec { group, base, steps };
    spec.validate().map_err(|e| FormatError::at(&steps_path, e.to_string()))?;
    Ok(spec)
}

pub fn matrix_to_value(m: &Matrix) -> Value {
    serde_json::to_value(m).expect("matrices serialize")
}
