//! Embeddings between elementary gradings and the direct limits they form.

mod block;
mod bratteli;
mod chain;
mod regularize;

use thiserror::Error;

use crate::graded::{GradingError, HomomorphismReport};
use crate::group::{GroupElement, GroupError};

pub use block::{
    block_condition_violation, block_diagonal_embedding, block_diagonal_map, check_block_condition,
    BlockEmbedding, BlockViolation, ModuleDecomposition, split_module_decomposition,
};
pub use bratteli::{
    bratteli_of_chain, bratteli_of_chain_bounded, diagrams_equal, first_difference, BratteliDiagram,
    BratteliEdge, BratteliNode, Transition,
};
pub use chain::{
    chain_union_finitary, steinitz_signature, ChainLevel, ChainSpec, ChainStep, FinitaryGrading,
};
pub use regularize::{
    regularize_decomposition, DecompositionPair, Regularization, RegularizationReport,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("a tuple of length {n} cannot be split as {k}·{m} + {r}")]
    SizeMismatch { n: usize, k: usize, m: usize, r: usize },
    #[error("block shape needs k ≥ 1 and m ≥ 1, got k = {k}, m = {m}")]
    InvalidBlockShape { k: usize, m: usize },
    #[error("block condition fails at position {} of block {}", .0.index, .0.block)]
    BlockCondition(BlockViolation),
    #[error("degree of E_{i},{j} differs between source and target prefix")]
    PrefixMismatch { i: usize, j: usize },
    #[error("operation needs an elementary grading with a known tuple")]
    NotElementary,
    #[error("E_{i}{j}·E_{k}{l} violates the matrix unit relations")]
    NotMatrixUnits { i: usize, j: usize, k: usize, l: usize },
    #[error("matrix unit {index} is not homogeneous")]
    NotHomogeneous { index: usize },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("map is not a graded injective homomorphism ({} failures)", .0.failures.len())]
    NotGradedInjection(HomomorphismReport),
    #[error("the fine parts have different supports")]
    SupportMismatch,
    #[error("the fine parts have different cocycles")]
    CocycleMismatch,
    #[error("no identity-degree solution for the generator of degree {t}")]
    SolveInconsistent { t: GroupElement },
    #[error("chain step {step} failed: {source}")]
    StepFailed { step: usize, source: Box<EmbeddingError> },
    #[error("level {level} has size {n}, above the limit {max}")]
    TooLarge { level: usize, n: usize, max: usize },
    #[error("chain is unital, so its union has no finitary defining sequence")]
    NotFinitary,
    #[error("depth must be at least 1")]
    InvalidDepth,
}
