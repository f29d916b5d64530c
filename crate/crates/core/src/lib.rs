//! Exact construction and comparison of group gradings on matrix algebras.

pub mod cyclotomic;
pub mod embedding;
pub mod equivalence;
pub mod format;
pub mod graded;
pub mod group;
pub mod linalg;
pub mod matrix;

pub use cyclotomic::{CycNumber, ScalarError};
pub use graded::{
    graded_homomorphism_check, Cocycle, ElementaryTuple, GradedAlgebra, GradedVectorSpace,
    GradingError, GradingReport, HomomorphismFailure, HomomorphismReport, IdentityComponentIdeal,
    LinearMap, SubalgebraBasis,
};
pub use group::{Character, FiniteAbelianGroup, GroupElement, GroupError};
pub use matrix::Matrix;
pub use equivalence::{
    build_isomorphism, construct_beta, decide_equivalence, exhaustive_monomial_oracle, signature_of,
    Beta, ClassPairing, DefiningSequence, EquivalenceError, EquivalenceWitness, Multiplicity,
    Signature, Verdict,
};
pub use embedding::{
    block_diagonal_embedding, bratteli_of_chain, chain_union_finitary, check_block_condition,
    diagrams_equal, regularize_decomposition, split_module_decomposition, steinitz_signature,
    BlockEmbedding, BratteliDiagram, ChainSpec, ChainStep, DecompositionPair, EmbeddingError,
    FinitaryGrading, ModuleDecomposition, Regularization, RegularizationReport,
};
pub use format::FormatError;
