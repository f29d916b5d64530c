use std::collections::BTreeSet;

use serde::Serialize;

use super::block::block_condition_violation;
use super::EmbeddingError;
use crate::equivalence::{signature_of, DefiningSequence, Multiplicity, Signature};
use crate::graded::ElementaryTuple;
use crate::group::{FiniteAbelianGroup, GroupElement};

/// One extension `C_i ⊂ C_{i+1}` of a chain of elementary gradings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainStep {
    /// `τ ↦ (τ, τ)` via `X ↦ diag{X, X}`.
    Double,
    /// `τ ↦ (τ, aτ)` via `X ↦ diag{X, X}`.
    Twist { a: GroupElement },
    /// An explicit `diag{X,…,X,0}` step with `m` copies and `r` zero rows
    /// into the grading of `tuple`.
    Block {
        k: usize,
        m: usize,
        r: usize,
        tuple: ElementaryTuple,
    },
    /// `τ ↦ (τ, elements)` via the corner embedding `X ↦ diag{X, 0}`.
    Append { elements: Vec<GroupElement> },
}

impl ChainStep {
    /// Whether `C_i = e_i C_{i+1} e_i`.
    pub fn is_corner(&self) -> bool {
        match self {
            ChainStep::Double | ChainStep::Twist { .. } => false,
            ChainStep::Block { m, .. } => *m == 1,
            ChainStep::Append { .. } => true,
        }
    }

    /// Whether a final step of this kind is applied indefinitely.
    pub fn repeats(&self) -> bool {
        !matches!(self, ChainStep::Block { .. })
    }
}

/// A chain `C_1 ⊂ C_2 ⊂ …` of elementary gradings. After the listed steps
/// the last one keeps being applied, unless it is an explicit block step,
/// in which case the chain stops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainSpec {
    pub group: FiniteAbelianGroup,
    pub base: ElementaryTuple,
    pub steps: Vec<ChainStep>,
}

/// One algebra of an unfolded chain together with the shape of the
/// embedding that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLevel {
    pub tuple: ElementaryTuple,
    /// `(k, m, r)` of the embedding from the previous level.
    pub shape: Option<(usize, usize, usize)>,
}

impl ChainLevel {
    pub fn is_unital(&self) -> bool {
        self.shape.is_none_or(|(_, _, r)| r == 0)
    }
}

impl ChainSpec {
    pub fn validate(&self) -> Result<(), EmbeddingError> {
        self.base.check(&self.group)?;
        for step in &self.steps {
            match step {
                ChainStep::Double => {}
                ChainStep::Twist { a } => self.group.check(a)?,
                ChainStep::Block { tuple, .. } => tuple.check(&self.group)?,
                ChainStep::Append { elements } => {
                    for g in elements {
                        self.group.check(g)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// The step producing level `i + 2` from level `i + 1`.
    pub fn step_at(&self, i: usize) -> Option<&ChainStep> {
        match self.steps.get(i) {
            Some(step) => Some(step),
            None => self.steps.last().filter(|s| s.repeats()),
        }
    }

    pub fn is_corner(&self) -> bool {
        self.steps.iter().all(ChainStep::is_corner)
    }

    pub fn is_finite(&self) -> bool {
        self.steps.last().is_none_or(|s| !s.repeats())
    }

    fn apply(&self, step: &ChainStep, tau: &ElementaryTuple) -> Result<ChainLevel, EmbeddingError> {
        let group = &self.group;
        let k = tau.len();
        let (tuple, m, r) = match step {
            ChainStep::Double => {
                let mut t = tau.0.clone();
                t.extend(tau.0.iter().cloned());
                (ElementaryTuple(t), 2, 0)
            }
            ChainStep::Twist { a } => {
                let mut t = tau.0.clone();
                t.extend(tau.translate(group, a).0);
                (ElementaryTuple(t), 2, 0)
            }
            ChainStep::Append { elements } => {
                let mut t = tau.0.clone();
                t.extend(elements.iter().cloned());
                (ElementaryTuple(t), 1, elements.len())
            }
            ChainStep::Block { k: bk, m, r, tuple } => {
                if *bk != k {
                    return Err(EmbeddingError::SizeMismatch {
                        n: tuple.len(),
                        k,
                        m: *m,
                        r: *r,
                    });
                }
                for i in 0..k.min(tuple.len()) {
                    for j in 0..k.min(tuple.len()) {
                        if tau.unit_degree(group, i, j) != tuple.unit_degree(group, i, j) {
                            return Err(EmbeddingError::PrefixMismatch { i: i + 1, j: j + 1 });
                        }
                    }
                }
                // Translate so the first k entries coincide with τ.
                let shift = group.quotient(&tuple.0[0], &tau.0[0]);
                (tuple.translate(group, &shift), *m, *r)
            }
        };
        if let Some(v) = block_condition_violation(group, &tuple, k, m, r)? {
            return Err(EmbeddingError::BlockCondition(v));
        }
        Ok(ChainLevel {
            tuple,
            shape: Some((k, m, r)),
        })
    }

    /// The first `depth` levels (fewer if the chain stops). Fails once a
    /// level would exceed `max_dim`.
    pub fn unfold_bounded(&self, depth: usize, max_dim: usize) -> Result<Vec<ChainLevel>, EmbeddingError> {
        self.validate()?;
        if self.base.len() > max_dim {
            return Err(EmbeddingError::TooLarge { level: 1, n: self.base.len(), max: max_dim });
        }
        let mut levels = vec![ChainLevel {
            tuple: self.base.clone(),
            shape: None,
        }];
        while levels.len() < depth {
            let i = levels.len() - 1;
            let Some(step) = self.step_at(i) else { break };
            let next = self
                .apply(step, &levels[i].tuple)
                .map_err(|e| EmbeddingError::StepFailed {
                    step: i + 1,
                    source: Box::new(e),
                })?;
            if next.tuple.len() > max_dim {
                return Err(EmbeddingError::TooLarge {
                    level: i + 2,
                    n: next.tuple.len(),
                    max: max_dim,
                });
            }
            levels.push(next);
        }
        Ok(levels)
    }

    pub fn unfold(&self, depth: usize) -> Result<Vec<ChainLevel>, EmbeddingError> {
        self.unfold_bounded(depth, usize::MAX)
    }
}

/// The limiting counting function of the chain, with `ω` wherever counts
/// grow without bound.
pub fn steinitz_signature(spec: &ChainSpec) -> Result<Signature, EmbeddingError> {
    let explicit = spec.unfold(spec.steps.len() + 1)?;
    let last = &explicit.last().expect("at least the base level").tuple;
    let finite = signature_of(last);
    let Some(rule) = spec.steps.last().filter(|s| s.repeats()) else {
        return Ok(finite);
    };
    let group = &spec.group;
    // Every repeating rule adds a nonnegative increment whose support only
    // grows, so an element is unbounded iff it ever receives an increment.
    let mut support: BTreeSet<GroupElement> = finite.counts().keys().cloned().collect();
    let mut unbounded = BTreeSet::new();
    for _ in 0..=group.order() {
        let increment: BTreeSet<GroupElement> = match rule {
            ChainStep::Double => support.clone(),
            ChainStep::Twist { a } => support.iter().map(|g| group.add(a, g)).collect(),
            ChainStep::Append { elements } => elements.iter().cloned().collect(),
            ChainStep::Block { .. } => unreachable!("block steps do not repeat"),
        };
        let before = (support.len(), unbounded.len());
        unbounded.extend(increment.iter().cloned());
        support.extend(increment);
        if (support.len(), unbounded.len()) == before {
            break;
        }
    }
    Ok(Signature::new(support.into_iter().map(|g| {
        let count = if unbounded.contains(&g) { Multiplicity::Omega } else { finite.get(&g) };
        (g, count)
    })))
}

/// The union of a chain, observed through its first levels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitaryGrading {
    pub group: FiniteAbelianGroup,
    /// `(g_1,…,g_{n_i})` for each unfolded level.
    pub prefixes: Vec<ElementaryTuple>,
    pub signature: Signature,
    /// Whether every embedding is a corner embedding.
    pub corner: bool,
}

impl FinitaryGrading {
    /// Each prefix is an initial segment of the next.
    pub fn prefixes_nested(&self) -> bool {
        self.prefixes
            .windows(2)
            .all(|w| w[1].degrees().starts_with(w[0].degrees()))
    }

    /// `(g_1,…,g_n)` when some unfolded level is that long.
    pub fn truncation(&self, n: usize) -> Option<ElementaryTuple> {
        self.prefixes
            .iter()
            .find(|p| p.len() >= n)
            .map(|p| ElementaryTuple(p.degrees()[..n].to_vec()))
    }

    /// The counting form of the sequence; only corner chains define the
    /// algebra of finitary matrices.
    pub fn defining_sequence(&self) -> Result<DefiningSequence, EmbeddingError> {
        if !self.corner {
            return Err(EmbeddingError::NotFinitary);
        }
        Ok(DefiningSequence::Finitary(self.signature.clone()))
    }
}

pub fn chain_union_finitary(spec: &ChainSpec, depth: usize) -> Result<FinitaryGrading, EmbeddingError> {
    let levels = spec.unfold(depth)?;
    Ok(FinitaryGrading {
        group: spec.group.clone(),
        prefixes: levels.into_iter().map(|l| l.tuple).collect(),
        signature: steinitz_signature(spec)?,
        corner: spec.is_corner(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(2)
    }

    fn tuple(xs: &[i64]) -> ElementaryTuple {
        let g = z2();
        ElementaryTuple(xs.iter().map(|&x| g.element(&[x]).unwrap()).collect())
    }

    fn spec(base: &[i64], steps: Vec<ChainStep>) -> ChainSpec {
        ChainSpec {
            group: z2(),
            base: tuple(base),
            steps,
        }
    }

    fn a() -> GroupElement {
        z2().element(&[1]).unwrap()
    }

    #[test]
    fn doubling_trivial_base() {
        let s = spec(&[0], vec![ChainStep::Double]);
        let f = chain_union_finitary(&s, 4).unwrap();
        assert_eq!(f.prefixes[3], tuple(&[0; 8]));
        assert!(f.prefixes_nested());
        assert_eq!(f.signature, Signature::new([(z2().identity(), Multiplicity::Omega)]));
        assert_eq!(f.defining_sequence(), Err(EmbeddingError::NotFinitary));
    }

    #[test]
    fn double_and_twist_prefixes() {
        let double = chain_union_finitary(&spec(&[0, 1], vec![ChainStep::Double]), 3).unwrap();
        assert_eq!(double.prefixes[1], tuple(&[0, 1, 0, 1]));
        let twist = chain_union_finitary(&spec(&[0, 1], vec![ChainStep::Twist { a: a() }]), 3).unwrap();
        assert_eq!(twist.prefixes[1], tuple(&[0, 1, 1, 0]));
        assert_eq!(twist.prefixes[2], tuple(&[0, 1, 1, 0, 1, 0, 0, 1]));
        let both = Signature::new([(z2().identity(), Multiplicity::Omega), (a(), Multiplicity::Omega)]);
        assert_eq!(double.signature, both);
        assert_eq!(twist.signature, both);
    }

    #[test]
    fn corner_chains_are_finitary() {
        let s = spec(&[0], vec![ChainStep::Append { elements: vec![a()] }]);
        let f = chain_union_finitary(&s, 4).unwrap();
        assert_eq!(f.prefixes[3], tuple(&[0, 1, 1, 1]));
        assert_eq!(
            f.defining_sequence().unwrap(),
            DefiningSequence::Finitary(Signature::new([
                (z2().identity(), Multiplicity::Finite(1)),
                (a(), Multiplicity::Omega)
            ]))
        );
        assert_eq!(f.truncation(3), Some(tuple(&[0, 1, 1])));
    }

    #[test]
    fn explicit_block_steps_terminate_and_normalize() {
        let g = z2();
        let s = spec(
            &[0, 1],
            vec![ChainStep::Block {
                k: 2,
                m: 2,
                r: 1,
                tuple: tuple(&[1, 0, 1, 0, 0]),
            }],
        );
        let levels = s.unfold(5).unwrap();
        assert_eq!(levels.len(), 2);
        assert_eq!(levels[1].tuple, tuple(&[0, 1, 0, 1, 1]));
        let sig = steinitz_signature(&s).unwrap();
        assert_eq!(sig.get(&g.identity()), Multiplicity::Finite(2));
        assert_eq!(sig.get(&a()), Multiplicity::Finite(3));
    }

    #[test]
    fn failing_step_is_named() {
        let s = spec(
            &[0, 1],
            vec![
                ChainStep::Double,
                ChainStep::Block {
                    k: 4,
                    m: 2,
                    r: 0,
                    tuple: tuple(&[0, 1, 0, 1, 0, 1, 1, 1]),
                },
            ],
        );
        let err = s.unfold(3).unwrap_err();
        assert!(matches!(err, EmbeddingError::StepFailed { step: 2, .. }), "{err:?}");
    }

    #[test]
    fn bounded_unfolding() {
        let s = spec(&[0, 1], vec![ChainStep::Double]);
        assert!(matches!(
            s.unfold_bounded(10, 64),
            Err(EmbeddingError::TooLarge { level: 7, n: 128, max: 64 })
        ));
    }
}
