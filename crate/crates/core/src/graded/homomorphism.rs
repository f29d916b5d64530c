use std::sync::OnceLock;

use serde::Serialize;

use super::GradedAlgebra;
use crate::group::GroupElement;
use crate::linalg::{combine, Span};
use crate::matrix::Matrix;

/// A linear map given by the images of a spanning family of the domain.
#[derive(Debug)]
pub struct LinearMap {
    domain_basis: Vec<Matrix>,
    images: Vec<Matrix>,
    span: OnceLock<Span>,
}

impl Clone for LinearMap {
    fn clone(&self) -> Self {
        Self::new(self.domain_basis.clone(), self.images.clone())
    }
}

impl PartialEq for LinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.domain_basis == other.domain_basis && self.images == other.images
    }
}

impl LinearMap {
    pub fn new(domain_basis: Vec<Matrix>, images: Vec<Matrix>) -> Self {
        Self {
            domain_basis,
            images,
            span: OnceLock::new(),
        }
    }

    /// The map with `E_ij ↦ images[i·n + j]` on `M_n`.
    pub fn on_units(n: usize, images: Vec<Matrix>) -> Self {
        let units = (0..n * n).map(|k| Matrix::unit(n, k / n, k % n)).collect();
        Self::new(units, images)
    }

    pub fn identity(n: usize) -> Self {
        let units: Vec<Matrix> = (0..n * n).map(|k| Matrix::unit(n, k / n, k % n)).collect();
        Self::new(units.clone(), units)
    }

    pub fn domain_basis(&self) -> &[Matrix] {
        &self.domain_basis
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    fn domain_n(&self) -> Option<usize> {
        self.domain_basis.first().map(Matrix::n)
    }

    fn target_n(&self) -> Option<usize> {
        self.images.first().map(Matrix::n)
    }

    fn span(&self) -> &Span {
        self.span.get_or_init(|| {
            let n = self.domain_n().unwrap_or(0);
            Span::from_matrices(n, &self.domain_basis)
        })
    }

    /// `φ(x)`, or `None` when `x` lies outside the span of the domain family.
    pub fn apply(&self, x: &Matrix) -> Option<Matrix> {
        let target = self.target_n()?;
        let coords = self.span().coordinates(x.as_vector())?;
        Some(combine(target, &coords, &self.images))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LinearMap) -> Option<LinearMap> {
        let images = self
            .images
            .iter()
            .map(|y| other.apply(y))
            .collect::<Option<Vec<_>>>()?;
        Some(LinearMap::new(self.domain_basis.clone(), images))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum HomomorphismFailure {
    /// Wrong matrix sizes or unequal numbers of basis elements and images.
    Shape { detail: String },
    /// A dependent basis element whose image is not the matching
    /// combination of earlier images.
    InconsistentLinearity { index: usize },
    /// The domain family does not span the source algebra.
    NotSpanning { rank: usize, dimension: usize },
    NotMultiplicative { left: usize, right: usize },
    NotInjective { rank: usize, dimension: usize },
    DegreeNotPreserved {
        degree: GroupElement,
        index: usize,
        image_degree: Option<GroupElement>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomomorphismReport {
    pub failures: Vec<HomomorphismFailure>,
}

impl HomomorphismReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn degree_preserving(&self) -> bool {
        !self
            .failures
            .iter()
            .any(|f| matches!(f, HomomorphismFailure::DegreeNotPreserved { .. }))
    }
}

/// Checks linearity consistency, multiplicativity, injectivity and
/// `φ(R₁^(g)) ⊆ R₂^(g)`. Multiplicativity witnesses index the independent
/// members of the domain family.
pub fn graded_homomorphism_check(
    map: &LinearMap,
    source: &GradedAlgebra,
    target: &GradedAlgebra,
) -> HomomorphismReport {
    let mut failures = Vec::new();
    let (n1, n2) = (source.n(), target.n());
    let shape_error = if map.domain_basis.len() != map.images.len() {
        Some(format!(
            "{} basis elements but {} images",
            map.domain_basis.len(),
            map.images.len()
        ))
    } else if map.domain_basis.iter().any(|m| m.n() != n1) {
        Some(format!("domain matrices must be {n1}x{n1}"))
    } else if map.images.iter().any(|m| m.n() != n2) {
        Some(format!("images must be {n2}x{n2}"))
    } else if map.domain_basis.is_empty() {
        Some("empty domain family".to_string())
    } else if source.group() != target.group() {
        Some("source and target are graded by different groups".to_string())
    } else {
        None
    };
    if let Some(detail) = shape_error {
        failures.push(HomomorphismFailure::Shape { detail });
        return HomomorphismReport { failures };
    }

    // Linearity consistency and an independent subfamily.
    let mut span = Span::new(n1 * n1);
    let mut independent = Vec::new();
    for (k, x) in map.domain_basis.iter().enumerate() {
        if let Some(coords) = span.coordinates(x.as_vector()) {
            let expected = combine(n2, &coords, &map.images[..k]);
            if expected != map.images[k] {
                failures.push(HomomorphismFailure::InconsistentLinearity { index: k });
            }
        } else {
            independent.push(k);
        }
        span.push(x.as_vector());
    }
    if span.rank() != n1 * n1 {
        failures.push(HomomorphismFailure::NotSpanning {
            rank: span.rank(),
            dimension: n1 * n1,
        });
        return HomomorphismReport { failures };
    }

    'outer: for &i in &independent {
        for &j in &independent {
            let product = &map.domain_basis[i] * &map.domain_basis[j];
            let lhs = map.apply(&product).expect("domain family spans the source");
            if lhs != &map.images[i] * &map.images[j] {
                failures.push(HomomorphismFailure::NotMultiplicative { left: i, right: j });
                if failures.len() > 16 {
                    break 'outer;
                }
            }
        }
    }

    let image_rank = Span::from_matrices(n2, independent.iter().map(|&k| &map.images[k])).rank();
    if image_rank != n1 * n1 {
        failures.push(HomomorphismFailure::NotInjective {
            rank: image_rank,
            dimension: n1 * n1,
        });
    }

    for (g, basis) in source.components() {
        for (index, x) in basis.iter().enumerate() {
            let image = map.apply(x).expect("domain family spans the source");
            if image.is_zero() {
                continue;
            }
            let image_degree = target.degree_of(&image).ok().flatten();
            if image_degree.as_ref() != Some(g) {
                failures.push(HomomorphismFailure::DegreeNotPreserved {
                    degree: g.clone(),
                    index,
                    image_degree,
                });
            }
        }
    }
    HomomorphismReport { failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::ElementaryTuple;
    use crate::group::FiniteAbelianGroup;

    #[test]
    fn identity_passes() {
        let r = GradedAlgebra::epsilon(2).unwrap();
        let report = graded_homomorphism_check(&LinearMap::identity(2), &r, &r);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn relabeled_target_breaks_degrees() {
        let g = FiniteAbelianGroup::cyclic(3);
        let tuple = ElementaryTuple((0..3).map(|k| g.element(&[k]).unwrap()).collect());
        let r = GradedAlgebra::elementary(&g, tuple).unwrap();
        let one = g.element(&[1]).unwrap();
        let shifted = r.relabel(|x| g.add(x, &one));
        let report = graded_homomorphism_check(&LinearMap::identity(3), &r, &shifted);
        assert!(!report.degree_preserving());
        assert!(report
            .failures
            .iter()
            .all(|f| matches!(f, HomomorphismFailure::DegreeNotPreserved { .. })));
    }

    #[test]
    fn transpose_is_not_multiplicative() {
        let g = FiniteAbelianGroup::cyclic(1);
        let r = GradedAlgebra::elementary(&g, ElementaryTuple(vec![g.identity(); 2])).unwrap();
        let images = (0..4).map(|k| Matrix::unit(2, k % 2, k / 2)).collect();
        let report = graded_homomorphism_check(&LinearMap::on_units(2, images), &r, &r);
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, HomomorphismFailure::NotMultiplicative { .. })));
        assert!(report.degree_preserving());
    }

    #[test]
    fn inconsistent_and_zero_maps() {
        let g = FiniteAbelianGroup::cyclic(1);
        let r = GradedAlgebra::elementary(&g, ElementaryTuple(vec![g.identity()])).unwrap();
        let one = Matrix::identity(1);
        let two = one.scale(&crate::CycNumber::from_integer(2));
        let map = LinearMap::new(vec![one.clone(), one.clone()], vec![one.clone(), two]);
        let report = graded_homomorphism_check(&map, &r, &r);
        assert!(report
            .failures
            .contains(&HomomorphismFailure::InconsistentLinearity { index: 1 }));
        let zero = LinearMap::new(vec![one.clone()], vec![Matrix::zeros(1)]);
        let report = graded_homomorphism_check(&zero, &r, &r);
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, HomomorphismFailure::NotInjective { .. })));
    }
}
