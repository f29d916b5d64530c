use std::path::Path;

use gmk_core::embedding::{
    block_diagonal_embedding, bratteli_of_chain_bounded, diagrams_equal, first_difference,
    regularize_decomposition, split_module_decomposition, steinitz_signature, BratteliDiagram,
    ChainSpec, ChainStep, DecompositionPair, EmbeddingError,
};
use gmk_core::format::{
    chain_from_value, child_path, count, defining_sequence_from_value, element_from_value, field,
    grading_from_value, group_from_str, group_from_value, matrices_from_value, matrix_to_value, object,
    tuple_from_value,
};
use gmk_core::{
    decide_equivalence, DefiningSequence, ElementaryTuple, FiniteAbelianGroup, GradedAlgebra,
    GradedVectorSpace, GradingError, GroupElement, LinearMap, Matrix, Verdict,
};
use serde_json::{json, Value};

use crate::{certificate, read_inline, read_spec, CliError, Config, Format, Report, Status};

/// Closure violations beyond this many are only counted.
const SHOWN_VIOLATIONS: usize = 8;

fn pick(format: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::UnsupportedFormat(f))
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

pub(crate) fn sequence_json(seq: &DefiningSequence) -> Value {
    match seq {
        DefiningSequence::Finite(t) => to_json(t),
        DefiningSequence::Finitary(s) => json!({ "signature": s }),
    }
}

fn pass_word(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

pub(crate) fn verify(spec: &Path, format: Option<Format>, config: &Config) -> Result<Report, CliError> {
    let value = read_spec(spec)?;
    if value.get("certificate").is_some() {
        return certificate::verify(&value, format, config);
    }
    let format = pick(format, Format::Json, &[Format::Json, Format::Text])?;
    let algebra = grading_from_value(&value, "", None)?;
    config.check_dim(algebra.n(), "grading")?;
    let report = algebra.verify();
    let pass = report.passed();
    if format == Format::Text {
        let body = if pass {
            "pass\n".to_string()
        } else {
            format!(
                "fail: {} closure violations, direct sum {}\n",
                report.violations.len(),
                report.is_direct_sum()
            )
        };
        return Ok(Report::text(Status::from_pass(pass), body));
    }
    let violations: Vec<Value> = report
        .violations
        .iter()
        .take(SHOWN_VIOLATIONS)
        .map(|v| {
            json!({
                "left": v.left,
                "right": v.right,
                "left_index": v.left_index,
                "right_index": v.right_index,
            })
        })
        .collect();
    let components: Vec<Value> = algebra
        .components()
        .iter()
        .map(|(g, basis)| json!({ "degree": g, "dimension": basis.len() }))
        .collect();
    let mut out = json!({
        "result": pass_word(pass),
        "n": algebra.n(),
        "group": algebra.group(),
        "dimension": report.dimension,
        "total_dimension": report.total_dimension,
        "rank": report.rank,
        "direct_sum": report.is_direct_sum(),
        "violation_count": report.violations.len(),
        "violations": violations,
        "components": components,
    });
    if pass {
        out["support"] = to_json(&algebra.support());
        out["fine"] = json!(algebra.is_fine());
        out["support_is_subgroup"] = json!(algebra.support_is_subgroup());
        out["elementary"] = json!(algebra.is_elementary());
        if let Ok(ideals) = algebra.identity_component_ideals() {
            out["identity_component_ideals"] = to_json(&ideals);
        }
    }
    Ok(Report::json(Status::from_pass(pass), &out))
}

pub(crate) fn equiv(args: &crate::EquivArgs, format: Option<Format>) -> Result<Report, CliError> {
    let format = pick(format, Format::Json, &[Format::Json, Format::Text])?;
    let group = group_from_str(&args.group)?;
    let tau = defining_sequence_from_value(&group, &read_inline(&args.tau)?, "tau")?;
    let tau_prime = defining_sequence_from_value(&group, &read_inline(&args.tau_prime)?, "tau_prime")?;
    let verdict = decide_equivalence(&group, &tau, &tau_prime).map_err(input)?;
    let status = Status::from_pass(verdict.is_equivalent());
    if format == Format::Text {
        let body = match &verdict {
            Verdict::Equivalent(w) => format!("equivalent, shift {}\n", w.shift),
            Verdict::NotEquivalent => "not equivalent\n".to_string(),
        };
        return Ok(Report::text(status, body));
    }
    let mut out = json!({
        "certificate": "equivalence",
        "group": group,
        "tau": sequence_json(&tau),
        "tau_prime": sequence_json(&tau_prime),
        "equivalent": verdict.is_equivalent(),
        "shift": verdict.witness().map(|w| to_json(&w.shift)),
    });
    if let Some(w) = verdict.witness() {
        out["beta"] = to_json(&w.beta);
    }
    Ok(Report::json(status, &out))
}

pub(crate) fn embed(spec: &Path, format: Option<Format>, config: &Config) -> Result<Report, CliError> {
    pick(format, Format::Json, &[Format::Json])?;
    let value = read_spec(spec)?;
    let obj = object(&value, "")?;
    let group = group_from_value(field(obj, "", "group")?, "group")?;
    match obj.get("kind").and_then(Value::as_str).unwrap_or("block") {
        "block" => embed_block(obj, group, config),
        "split" => embed_split(obj, group, config),
        other => Err(input(format!("kind: unknown embedding kind {other:?}"))),
    }
}

fn embed_block(
    obj: &serde_json::Map<String, Value>,
    group: FiniteAbelianGroup,
    config: &Config,
) -> Result<Report, CliError> {
    let source = tuple_from_value(&group, field(obj, "", "source")?, "source")?;
    let target = tuple_from_value(&group, field(obj, "", "target")?, "target")?;
    let m = count(field(obj, "", "m")?, "m")?;
    let r = match obj.get("r") {
        Some(v) => count(v, "r")?,
        None => 0,
    };
    config.check_dim(target.len(), "target")?;
    let k = source.len();
    let source_algebra = GradedAlgebra::elementary(&group, source.clone()).map_err(input)?;
    let mut out = json!({
        "certificate": "block_embedding",
        "group": group,
        "source": source,
        "target": target,
        "k": k,
        "m": m,
        "r": r,
    });
    match block_diagonal_embedding(&source_algebra, m, r, &target) {
        Ok(embedding) => {
            let report = embedding.check();
            let corner = embedding.image_in_corner();
            let pass = report.passed() && corner;
            out["accepted"] = json!(pass);
            out["homomorphism"] = json!({ "passed": report.passed(), "failures": report.failures });
            out["image_in_corner"] = json!(corner);
            out["full_corner"] = json!(embedding.image_is_full_corner());
            out["images"] = Value::Array(embedding.map.images().iter().map(matrix_to_value).collect());
            Ok(Report::json(Status::from_pass(pass), &out))
        }
        Err(EmbeddingError::BlockCondition(v)) => {
            out["accepted"] = json!(false);
            out["reason"] = json!("block condition");
            out["violation"] = to_json(&v);
            Ok(Report::json(Status::Negative, &out))
        }
        Err(EmbeddingError::PrefixMismatch { i, j }) => {
            out["accepted"] = json!(false);
            out["reason"] = json!("prefix mismatch");
            out["entry"] = json!([i, j]);
            Ok(Report::json(Status::Negative, &out))
        }
        Err(e) => Err(input(e)),
    }
}

fn embed_split(
    obj: &serde_json::Map<String, Value>,
    group: FiniteAbelianGroup,
    config: &Config,
) -> Result<Report, CliError> {
    let degrees = tuple_from_value(&group, field(obj, "", "degrees")?, "degrees")?;
    config.check_dim(degrees.len(), "module")?;
    let units = matrices_from_value(field(obj, "", "units")?, "units")?;
    let space = GradedVectorSpace::new(degrees.degrees().to_vec());
    let split = split_module_decomposition(&group, &space, &units).map_err(input)?;
    let out = json!({
        "k": split.k,
        "multiplicity": split.multiplicity(),
        "annihilated_dimension": split.annihilated.len(),
        "degrees": split.degrees,
        "tuple": split.tuple(&group),
        "change_of_basis": matrix_to_value(&split.change_of_basis),
    });
    Ok(Report::json(Status::Success, &out))
}

/// `x ↦ χ∗x` placed in the top left corner of `M_n2`.
fn corner_map(r1: &GradedAlgebra, n2: usize, chi: Option<&GroupElement>) -> Result<LinearMap, GradingError> {
    let n1 = r1.n();
    let character = chi.map(|a| r1.group().character(a));
    let mut images = Vec::with_capacity(n1 * n1);
    for u in 0..n1 * n1 {
        let unit = Matrix::unit(n1, u / n1, u % n1);
        let x = match &character {
            Some(c) => r1.character_action(c, &unit)?,
            None => unit,
        };
        let mut y = Matrix::zeros(n2);
        for (i, j) in x.support() {
            y.set(i, j, x.get(i, j).clone());
        }
        images.push(y);
    }
    Ok(LinearMap::on_units(n1, images))
}

pub(crate) fn regularize(spec: &Path, format: Option<Format>, config: &Config) -> Result<Report, CliError> {
    pick(format, Format::Json, &[Format::Json])?;
    let value = read_spec(spec)?;
    let obj = object(&value, "")?;
    let group = group_from_value(field(obj, "", "group")?, "group")?;
    let fine = object(field(obj, "", "fine")?, "fine")?;
    let q = count(field(fine, "fine", "n")?, "fine.n")?;
    let a = element_from_value(&group, field(fine, "fine", "a")?, "fine.a")?;
    let b = element_from_value(&group, field(fine, "fine", "b")?, "fine.b")?;
    let source = tuple_from_value(&group, field(obj, "", "source")?, "source")?;
    let target = tuple_from_value(&group, field(obj, "", "target")?, "target")?;
    let (n1, n2) = (source.len() * q, target.len() * q);
    config.check_dim(n2, "target algebra")?;

    let d = GradedAlgebra::epsilon_in(&group, q, &a, &b).map_err(|e| input(format!("fine: {e}")))?;
    let c1 = GradedAlgebra::elementary(&group, source.clone()).map_err(input)?;
    let c2 = GradedAlgebra::elementary(&group, target.clone()).map_err(input)?;
    let r1 = DecompositionPair::tensor(&c1, &d).map_err(input)?;
    let r2 = DecompositionPair::tensor(&c2, &d).map_err(input)?;

    let map = object(field(obj, "", "map")?, "map")?;
    let phi = match map.get("kind").and_then(Value::as_str) {
        Some("corner") => {
            let chi = map
                .get("character")
                .map(|v| element_from_value(&group, v, "map.character"))
                .transpose()?;
            if n1 > n2 {
                return Err(input("map: source is larger than target"));
            }
            corner_map(&r1.algebra, n2, chi.as_ref()).map_err(input)?
        }
        Some("identity") if n1 == n2 => LinearMap::identity(n1),
        Some("identity") => return Err(input("map: identity needs equal sizes")),
        Some("images") => {
            let images = matrices_from_value(field(map, "map", "images")?, "map.images")?;
            LinearMap::on_units(n1, images)
        }
        _ => return Err(input(format!("{}: expected corner, identity or images", child_path("map", "kind")))),
    };

    let regularization = match regularize_decomposition(&phi, &r1, &r2) {
        Ok(reg) => reg,
        Err(EmbeddingError::NotGradedInjection(report)) => {
            let out = json!({
                "result": "fail",
                "reason": "map is not a graded injective homomorphism",
                "failures": report.failures,
            });
            return Ok(Report::json(Status::Negative, &out));
        }
        Err(e @ EmbeddingError::SolveInconsistent { .. }) => {
            let out = json!({ "result": "fail", "reason": e.to_string() });
            return Ok(Report::json(Status::Negative, &out));
        }
        Err(e) => return Err(input(e)),
    };
    let report = regularization.verify(&phi, &r1, &r2);
    let by_degree = |m: &std::collections::BTreeMap<GroupElement, Matrix>| -> Vec<Value> {
        m.iter()
            .map(|(t, x)| json!({ "degree": t, "matrix": matrix_to_value(x) }))
            .collect()
    };
    let out = json!({
        "result": pass_word(report.passed()),
        "checks": report,
        "a": by_degree(&regularization.a),
        "d_tilde": by_degree(&regularization.d_tilde),
        "c_tilde": {
            "dimension": regularization.c_tilde.dim(),
            "degrees": regularization.c_tilde.degrees,
        },
    });
    Ok(Report::json(Status::from_pass(report.passed()), &out))
}

pub(crate) fn bratteli(spec: &Path, depth: usize, format: Option<Format>, config: &Config) -> Result<Report, CliError> {
    let format = pick(format, Format::Json, &[Format::Json, Format::Dot])?;
    let chain = chain_from_value(&read_spec(spec)?, "")?;
    let diagram = bratteli_of_chain_bounded(&chain, depth, config.max_dim).map_err(input)?;
    let status = Status::from_pass(diagram.bookkeeping_holds());
    if format == Format::Dot {
        return Ok(Report::text(status, diagram.to_dot("chain")));
    }
    let out = json!({
        "depth": depth,
        "signature": steinitz_signature(&chain).map_err(input)?,
        "corner": chain.is_corner(),
        "bookkeeping": diagram.bookkeeping_holds(),
        "diagram": diagram,
    });
    Ok(Report::json(status, &out))
}

/// The chains `τ ↦ (τ,τ)` and `τ ↦ (τ,aτ)` from `(e,a)` over `Z₂`.
pub fn doubling_and_twisting_chains() -> (ChainSpec, ChainSpec) {
    let group = FiniteAbelianGroup::cyclic(2);
    let a = group.element(&[1]).expect("1 lies in Z2");
    let base = ElementaryTuple(vec![group.identity(), a.clone()]);
    let double = ChainSpec {
        group: group.clone(),
        base: base.clone(),
        steps: vec![ChainStep::Double],
    };
    let twist = ChainSpec {
        group,
        base,
        steps: vec![ChainStep::Twist { a }],
    };
    (double, twist)
}

pub(crate) fn demo_doubling_twisting(depth: usize, format: Option<Format>, config: &Config) -> Result<Report, CliError> {
    let format = pick(format, Format::Text, &[Format::Json, Format::Dot, Format::Text])?;
    let (double, twist) = doubling_and_twisting_chains();
    let unfold = |c: &ChainSpec| -> Result<(BratteliDiagram, Value), CliError> {
        let d = bratteli_of_chain_bounded(c, depth, config.max_dim).map_err(input)?;
        let s = steinitz_signature(c).map_err(input)?;
        Ok((d, to_json(&s)))
    };
    let (double_diagram, double_sig) = unfold(&double)?;
    let (twist_diagram, twist_sig) = unfold(&twist)?;
    let double_dot = double_diagram.to_dot("double");
    let twist_dot = twist_diagram.to_dot("twist");
    let steinitz_equal = double_sig == twist_sig;
    let equal = diagrams_equal(&double_diagram, &twist_diagram);
    let status = Status::from_pass(steinitz_equal && !equal);
    let summary = json!({
        "depth": depth,
        "steinitz_equal": steinitz_equal,
        "diagrams_equal": equal,
        "first_difference_level": first_difference(&double_diagram, &twist_diagram).map(|i| i + 1),
    });
    match format {
        Format::Dot => Ok(Report::text(status, format!("{double_dot}{twist_dot}"))),
        Format::Text => {
            let mut body = format!("{double_dot}{twist_dot}");
            body.push_str(&crate::to_json_text(&summary));
            Ok(Report::text(status, body))
        }
        Format::Json => {
            let mut out = summary;
            out["double"] = json!({ "signature": double_sig, "diagram": double_diagram, "dot": double_dot });
            out["twist"] = json!({ "signature": twist_sig, "diagram": twist_diagram, "dot": twist_dot });
            Ok(Report::json(status, &out))
        }
    }
}

pub(crate) fn cocycle(spec: &Path, format: Option<Format>, config: &Config) -> Result<Report, CliError> {
    pick(format, Format::Json, &[Format::Json])?;
    let algebra = grading_from_value(&read_spec(spec)?, "", None)?;
    config.check_dim(algebra.n(), "grading")?;
    let cocycle = match algebra.extract_cocycle() {
        Ok(c) => c,
        Err(e @ (GradingError::NotFine | GradingError::SupportNotSubgroup)) => return Err(input(e)),
        Err(e) => {
            let out = json!({ "result": "fail", "reason": e.to_string() });
            return Ok(Report::json(Status::Negative, &out));
        }
    };
    let group = algebra.group();
    let violations = cocycle.identity_violations(group);
    let values: Vec<Value> = cocycle
        .values()
        .iter()
        .map(|((t, s), alpha)| json!({ "t": t, "s": s, "alpha": alpha }))
        .collect();
    let pass = violations.is_empty();
    let out = json!({
        "result": pass_word(pass),
        "support": cocycle.support(),
        "normalized": cocycle.is_normalized(group),
        "identity_violations": violations.len(),
        "values": values,
    });
    Ok(Report::json(Status::from_pass(pass), &out))
}
