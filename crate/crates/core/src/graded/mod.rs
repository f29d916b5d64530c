//! Group-graded matrix algebras.
//!
//! A grading on `M_n` is stored as an explicit map from group elements to
//! bases of the homogeneous components, so elementary, fine and tensor
//! gradings share one type. Elementary gradings additionally remember the
//! tuple `(g₁,…,g_n)` with `deg E_ij = g_i⁻¹g_j`.

mod algebra;
mod cocycle;
mod duality;
mod homomorphism;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::ScalarError;
use crate::group::{FiniteAbelianGroup, GroupElement, GroupError};
use crate::matrix::Matrix;

pub use algebra::{
    subalgebra_is_elementary, ClosureViolation, GradedAlgebra, GradingReport, SubalgebraBasis,
};
pub use cocycle::Cocycle;
pub use homomorphism::{graded_homomorphism_check, HomomorphismFailure, HomomorphismReport, LinearMap};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GradingError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("an elementary tuple must be nonempty")]
    EmptyTuple,
    #[error("matrix size must be positive, got {0}")]
    InvalidSize(i64),
    #[error("expected {expected}x{expected} matrices, found {found}x{found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands are graded by different groups")]
    GroupMismatch,
    #[error("the zero matrix has no degree")]
    ZeroMatrix,
    #[error("operation needs an elementary grading with a known tuple")]
    NotElementary,
    #[error("grading is not fine")]
    NotFine,
    #[error("support is not a subgroup")]
    SupportNotSubgroup,
    #[error("generators {a} and {b} do not give {n}^2 distinct degrees")]
    DegenerateGenerators { a: GroupElement, b: GroupElement, n: usize },
    #[error("X_{left}·X_{right} is not a nonzero multiple of X_(left+right)")]
    CocycleInconsistent { left: GroupElement, right: GroupElement },
    #[error("matrix is not in the span of the homogeneous components")]
    NotInSpan,
}

/// `(g₁,…,g_n)` defining `deg E_ij = g_i⁻¹g_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementaryTuple(pub Vec<GroupElement>);

impl ElementaryTuple {
    pub fn new(degrees: Vec<GroupElement>) -> Self {
        Self(degrees)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &GroupElement {
        &self.0[i]
    }

    /// Degree of `E_ij` (zero-based).
    pub fn unit_degree(&self, group: &FiniteAbelianGroup, i: usize, j: usize) -> GroupElement {
        group.quotient(&self.0[i], &self.0[j])
    }

    /// `(a·g₁,…,a·g_n)`; defines the same grading.
    pub fn translate(&self, group: &FiniteAbelianGroup, a: &GroupElement) -> Self {
        Self(self.0.iter().map(|g| group.add(a, g)).collect())
    }

    pub fn check(&self, group: &FiniteAbelianGroup) -> Result<(), GradingError> {
        if self.0.is_empty() {
            return Err(GradingError::EmptyTuple);
        }
        for g in &self.0 {
            group.check(g)?;
        }
        Ok(())
    }
}

/// A vector space with a homogeneous basis `v₁,…,v_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedVectorSpace {
    degrees: Vec<GroupElement>,
}

impl GradedVectorSpace {
    pub fn new(degrees: Vec<GroupElement>) -> Self {
        Self { degrees }
    }

    /// The space whose basis has `deg v_i = g_i⁻¹`, inducing the elementary
    /// grading of `tuple` on `End V`.
    pub fn from_tuple(group: &FiniteAbelianGroup, tuple: &ElementaryTuple) -> Self {
        Self {
            degrees: tuple.degrees().iter().map(|g| group.inverse(g)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn tuple(&self, group: &FiniteAbelianGroup) -> ElementaryTuple {
        ElementaryTuple(self.degrees.iter().map(|d| group.inverse(d)).collect())
    }

    /// Degree of a vector whose nonzero coordinates all sit on basis vectors
    /// of one degree; `None` for zero or non-homogeneous vectors.
    pub fn vector_degree(&self, v: &[crate::CycNumber]) -> Option<GroupElement> {
        let degrees: BTreeSet<&GroupElement> = v
            .iter()
            .zip(&self.degrees)
            .filter(|(x, _)| !x.is_zero())
            .map(|(_, d)| d)
            .collect();
        (degrees.len() == 1).then(|| (*degrees.iter().next().unwrap()).clone())
    }
}

/// The simple ideal of the identity component spanned by the `E_ij` with
/// `τ(i) = τ(j) = label`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityComponentIdeal {
    pub label: GroupElement,
    /// Zero-based row/column indices of the class `τ⁻¹(label)`.
    pub indices: Vec<usize>,
    pub block_dimension: usize,
}

impl IdentityComponentIdeal {
    /// The ideals of the elementary grading defined by `tuple`, ordered by
    /// label.
    pub fn of_tuple(tuple: &ElementaryTuple) -> Vec<IdentityComponentIdeal> {
        let mut classes: std::collections::BTreeMap<&GroupElement, Vec<usize>> = Default::default();
        for (i, g) in tuple.degrees().iter().enumerate() {
            classes.entry(g).or_default().push(i);
        }
        classes
            .into_iter()
            .map(|(label, indices)| IdentityComponentIdeal {
                label: label.clone(),
                block_dimension: indices.len(),
                indices,
            })
            .collect()
    }

    pub fn basis(&self, n: usize) -> Vec<Matrix> {
        let mut out = Vec::with_capacity(self.indices.len() * self.indices.len());
        for &i in &self.indices {
            for &j in &self.indices {
                out.push(Matrix::unit(n, i, j));
            }
        }
        out
    }

    /// Sum of the diagonal units of the class.
    pub fn unit_element(&self, n: usize) -> Matrix {
        let mut out = Matrix::zeros(n);
        for &i in &self.indices {
            out.set(i, i, crate::CycNumber::one());
        }
        out
    }
}
