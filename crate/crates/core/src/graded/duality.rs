use super::{GradedAlgebra, GradingError};
use crate::group::Character;
use crate::linalg::Span;
use crate::matrix::Matrix;

impl GradedAlgebra {
    /// `χ∗m = Σ_g χ(g)·m_g` over the homogeneous parts of `m`.
    pub fn character_action(&self, chi: &Character, m: &Matrix) -> Result<Matrix, GradingError> {
        let mut out = Matrix::zeros(self.n());
        for (g, part) in self.homogeneous_parts(m)? {
            out.add_scaled(&chi.eval(&g), &part);
        }
        Ok(out)
    }

    /// Whether `V = ⊕_g (V ∩ R^(g))` for `V = span(basis)`.
    pub fn is_graded_subspace(&self, basis: &[Matrix]) -> Result<bool, GradingError> {
        let span = Span::from_matrices(self.n(), basis);
        for v in basis {
            for part in self.homogeneous_parts(v)?.values() {
                if !span.contains_matrix(part) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether `span(basis)` is stable under every character of the group.
    pub fn is_invariant_subspace(&self, basis: &[Matrix]) -> Result<bool, GradingError> {
        let span = Span::from_matrices(self.n(), basis);
        for chi in self.group().characters() {
            for v in basis {
                if !span.contains_matrix(&self.character_action(&chi, v)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
