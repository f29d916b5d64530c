//! Re-checking of the certificates printed by `equiv` and `embed`.

use gmk_core::embedding::block_diagonal_embedding;
use gmk_core::equivalence::{find_shift, PairedClass};
use gmk_core::format::{
    array, count, defining_sequence_from_value, element_from_value, field, group_from_value, kind,
    matrices_from_value, multiplicity_from_value, object, tuple_from_value,
};
use gmk_core::{
    build_isomorphism, graded_homomorphism_check, ClassPairing, DefiningSequence, ElementaryTuple,
    FiniteAbelianGroup, GradedAlgebra, GroupElement, LinearMap, Matrix, Signature,
};
use serde_json::{json, Map, Value};

use crate::{CliError, Config, Format, Report, Status};

/// Indices per class when a class pairing is checked on a finite window.
const PAIRING_WINDOW: u64 = 2;

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn flag(obj: &Map<String, Value>, key: &str) -> Result<bool, CliError> {
    field(obj, "", key)?
        .as_bool()
        .ok_or_else(|| CliError::Input(format!("{key}: expected a boolean")))
}

pub(crate) fn verify(value: &Value, format: Option<Format>, config: &Config) -> Result<Report, CliError> {
    let format = format.unwrap_or(Format::Json);
    if format == Format::Dot {
        return Err(CliError::UnsupportedFormat(format));
    }
    let obj = object(value, "")?;
    let name = field(obj, "", "certificate")?
        .as_str()
        .ok_or_else(|| CliError::Input("certificate: expected a string".into()))?;
    let checks = match name {
        "equivalence" => equivalence(obj, config)?,
        "block_embedding" => block_embedding(obj, config)?,
        other => return Err(CliError::Input(format!("certificate: unknown kind {other:?}"))),
    };
    let pass = checks.values().all(|v| v.as_bool() != Some(false));
    let status = if pass { Status::Success } else { Status::Negative };
    let word = if pass { "pass" } else { "fail" };
    if format == Format::Text {
        return Ok(Report::text(status, format!("{word}\n")));
    }
    let out = json!({ "certificate": name, "result": word, "checks": checks });
    Ok(Report::json(status, &out))
}

fn elementary(group: &FiniteAbelianGroup, tuple: &ElementaryTuple) -> Result<GradedAlgebra, CliError> {
    GradedAlgebra::elementary(group, tuple.clone()).map_err(input)
}

/// `E_ij ↦ E_{β(i)β(j)}` is a graded isomorphism between the two tuples.
fn permutation_is_graded(
    group: &FiniteAbelianGroup,
    source: &ElementaryTuple,
    target: &ElementaryTuple,
    beta: &[usize],
) -> Result<bool, CliError> {
    let iso = build_isomorphism(beta);
    let report = graded_homomorphism_check(&iso, &elementary(group, source)?, &elementary(group, target)?);
    Ok(report.passed())
}

fn is_bijection(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter()
        .all(|&i| i < seen.len() && !std::mem::replace(&mut seen[i], true))
}

fn equivalence(obj: &Map<String, Value>, config: &Config) -> Result<Map<String, Value>, CliError> {
    let group = group_from_value(field(obj, "", "group")?, "group")?;
    let tau = defining_sequence_from_value(&group, field(obj, "", "tau")?, "tau")?;
    let tau_prime = defining_sequence_from_value(&group, field(obj, "", "tau_prime")?, "tau_prime")?;
    let (s, s_prime) = (tau.signature(), tau_prime.signature());
    let mut checks = Map::new();
    if !flag(obj, "equivalent")? {
        checks.insert("no_shift_exists".into(), json!(find_shift(&group, &s, &s_prime).is_none()));
        return Ok(checks);
    }
    let shift = element_from_value(&group, field(obj, "", "shift")?, "shift")?;
    checks.insert(
        "signatures_match_under_shift".into(),
        json!(s.matches_under_shift(&s_prime, &group, &shift)),
    );
    let beta = object(field(obj, "", "beta")?, "beta")?;
    match kind(beta, "beta")? {
        "permutation" => {
            let (DefiningSequence::Finite(t), DefiningSequence::Finite(tp)) = (&tau, &tau_prime) else {
                return Err(input("beta: a permutation needs two finite tuples"));
            };
            let map: Vec<usize> = array(field(beta, "beta", "map")?, "beta.map")?
                .iter()
                .enumerate()
                .map(|(i, v)| count(v, &format!("beta.map[{i}]")))
                .collect::<Result<_, _>>()?;
            config.check_dim(map.len(), "permutation")?;
            let bijective = map.len() == t.len() && t.len() == tp.len() && is_bijection(&map);
            checks.insert("bijective".into(), json!(bijective));
            if bijective {
                let shifted = (0..t.len()).all(|i| *tp.get(map[i]) == group.compose(&shift, t.get(i)).expect("checked"));
                checks.insert("degrees_shifted".into(), json!(shifted));
                checks.insert("graded_isomorphism".into(), json!(permutation_is_graded(&group, t, tp, &map)?));
            }
        }
        "pairing" => {
            let pairing = pairing_from_value(&group, beta)?;
            checks.insert("shift_agrees".into(), json!(pairing.shift == shift));
            checks.insert("classes_consistent".into(), json!(classes_consistent(&group, &pairing, &s, &s_prime)));
            let window = pairing.window(PAIRING_WINDOW);
            config.check_dim(window.source.len(), "pairing window")?;
            checks.insert(
                "window_graded_isomorphism".into(),
                json!(
                    window.source.len() == window.target.len()
                        && !window.source.is_empty()
                        && permutation_is_graded(&group, &window.source, &window.target, &window.beta)?
                ),
            );
        }
        other => return Err(CliError::Input(format!("beta.kind: unknown kind {other:?}"))),
    }
    Ok(checks)
}

fn pairing_from_value(group: &FiniteAbelianGroup, beta: &Map<String, Value>) -> Result<ClassPairing, CliError> {
    let shift = element_from_value(group, field(beta, "beta", "shift")?, "beta.shift")?;
    let classes = array(field(beta, "beta", "classes")?, "beta.classes")?
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let path = format!("beta.classes[{i}]");
            let c = object(c, &path)?;
            Ok(PairedClass {
                source: element_from_value(group, field(c, &path, "source")?, &format!("{path}.source"))?,
                target: element_from_value(group, field(c, &path, "target")?, &format!("{path}.target"))?,
                count: multiplicity_from_value(field(c, &path, "count")?, &format!("{path}.count"))?,
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(ClassPairing { shift, classes })
}

/// Every class of `τ` appears once, goes to `g₀·g` and has the same size on
/// both sides.
fn classes_consistent(group: &FiniteAbelianGroup, pairing: &ClassPairing, s: &Signature, s_prime: &Signature) -> bool {
    let sources: Vec<&GroupElement> = pairing.classes.iter().map(|c| &c.source).collect();
    let expected: Vec<&GroupElement> = s.counts().keys().collect();
    sources == expected
        && pairing.classes.iter().all(|c| {
            c.target == group.compose(&pairing.shift, &c.source).expect("checked")
                && s.get(&c.source) == c.count
                && s_prime.get(&c.target) == c.count
        })
}

fn block_embedding(obj: &Map<String, Value>, config: &Config) -> Result<Map<String, Value>, CliError> {
    let group = group_from_value(field(obj, "", "group")?, "group")?;
    let source = tuple_from_value(&group, field(obj, "", "source")?, "source")?;
    let target = tuple_from_value(&group, field(obj, "", "target")?, "target")?;
    let m = count(field(obj, "", "m")?, "m")?;
    let r = count(field(obj, "", "r")?, "r")?;
    config.check_dim(target.len(), "target")?;
    let source_algebra = elementary(&group, &source)?;
    let mut checks = Map::new();
    if !flag(obj, "accepted")? {
        let rejected = block_diagonal_embedding(&source_algebra, m, r, &target).is_err();
        checks.insert("rejection_reproduced".into(), json!(rejected));
        return Ok(checks);
    }
    let k = source.len();
    let images = matrices_from_value(field(obj, "", "images")?, "images")?;
    let n = target.len();
    let shapes = images.len() == k * k && images.iter().all(|x| x.n() == n);
    checks.insert("shapes".into(), json!(shapes));
    if !shapes {
        return Ok(checks);
    }
    let map = LinearMap::on_units(k, images);
    let report = graded_homomorphism_check(&map, &source_algebra, &elementary(&group, &target)?);
    checks.insert("graded_homomorphism".into(), json!(report.passed()));
    let e = map.apply(&Matrix::identity(k)).expect("units span M_k");
    let corner = map.images().iter().all(|x| &(&e * x) * &e == *x);
    checks.insert("image_in_corner".into(), json!(corner));
    Ok(checks)
}
