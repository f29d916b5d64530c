use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::EmbeddingError;
use crate::graded::{
    graded_homomorphism_check, subalgebra_is_elementary, Cocycle, GradedAlgebra, LinearMap,
    SubalgebraBasis,
};
use crate::group::GroupElement;
use crate::linalg::{commuting_combinations, Span};
use crate::matrix::Matrix;

/// A graded matrix algebra `R = CD ≅ C ⊗ D` with `C` elementary and `D`
/// fine, `D` given by a basis `X_t` with `X_e = 1`.
#[derive(Debug, Clone)]
pub struct DecompositionPair {
    pub algebra: GradedAlgebra,
    pub c: SubalgebraBasis,
    pub d: BTreeMap<GroupElement, Matrix>,
}

impl DecompositionPair {
    /// Validates commutation, `dim C · dim D = dim R`, `Supp C ∩ Supp D = {e}`
    /// and the homogeneity of both bases.
    pub fn new(
        algebra: GradedAlgebra,
        c: SubalgebraBasis,
        d: BTreeMap<GroupElement, Matrix>,
    ) -> Result<Self, EmbeddingError> {
        let invalid = |msg: &str| Err(EmbeddingError::InvalidDecomposition(msg.to_string()));
        let n = algebra.n();
        let group = algebra.group().clone();
        let Some(c_degrees) = &c.degrees else {
            return invalid("C must be given by a homogeneous basis");
        };
        for (x, g) in c.elements.iter().zip(c_degrees) {
            if algebra.degree_of(x)?.as_ref() != Some(g) {
                return invalid("C basis element has the wrong degree");
            }
        }
        for (t, x) in &d {
            if algebra.degree_of(x)?.as_ref() != Some(t) {
                return invalid("D basis element has the wrong degree");
            }
        }
        if d.get(&group.identity()).is_none_or(|x| !x.is_identity()) {
            return invalid("D must contain X_e = 1");
        }
        if c.elements.len() * d.len() != n * n
            || Span::from_matrices(n, &c.elements).rank() != c.elements.len()
        {
            return invalid("dim C · dim D must equal n²");
        }
        for x in &c.elements {
            if d.values().any(|y| !x.commutes_with(y)) {
                return invalid("C and D must commute");
            }
        }
        let supp_c: BTreeSet<&GroupElement> = c_degrees.iter().collect();
        if d.keys().any(|t| *t != group.identity() && supp_c.contains(t)) {
            return invalid("Supp C ∩ Supp D must be trivial");
        }
        Ok(Self { algebra, c, d })
    }

    /// `C ⊗ D` with `C` elementary and `D` fine, both over the same group.
    pub fn tensor(c: &GradedAlgebra, d: &GradedAlgebra) -> Result<Self, EmbeddingError> {
        if !d.is_fine() {
            return Err(crate::graded::GradingError::NotFine.into());
        }
        let algebra = GradedAlgebra::induced_tensor(c, d)?;
        let tuple = c.elementary_tuple().ok_or(EmbeddingError::NotElementary)?;
        let (p, q) = (c.n(), d.n());
        let mut elements = Vec::with_capacity(p * p);
        let mut degrees = Vec::with_capacity(p * p);
        for i in 0..p {
            for j in 0..p {
                elements.push(Matrix::unit(p, i, j).kron(&Matrix::identity(q)));
                degrees.push(tuple.unit_degree(c.group(), i, j));
            }
        }
        let fine = d
            .components()
            .iter()
            .map(|(t, b)| (t.clone(), Matrix::identity(p).kron(&b[0])))
            .collect();
        Self::new(
            algebra,
            SubalgebraBasis {
                elements,
                degrees: Some(degrees),
            },
            fine,
        )
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.algebra.n())
    }

    pub fn cocycle(&self) -> Result<Cocycle, EmbeddingError> {
        Ok(Cocycle::from_basis(self.algebra.group(), &self.d)?)
    }

    pub fn fine_support(&self) -> BTreeSet<GroupElement> {
        self.d.keys().cloned().collect()
    }
}

/// Output of the regularization: the new fine factor `D̃₂ = span{X_t″}`,
/// its centralizer `C̃₂`, and `ψ: X_t ↦ X_t″`.
#[derive(Debug, Clone)]
pub struct Regularization {
    /// `A_t` with `φ(X_t) = A_t X_t′`.
    pub a: BTreeMap<GroupElement, Matrix>,
    pub d_tilde: BTreeMap<GroupElement, Matrix>,
    pub c_tilde: SubalgebraBasis,
    pub psi: LinearMap,
    /// `φ(e₁)`.
    pub phi_identity: Matrix,
}

/// Checks of the regularization's guarantees, each computed exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularizationReport {
    pub identity_recovered: bool,
    pub cocycle_matches: bool,
    pub c_tilde_elementary: bool,
    pub supports_meet_trivially: bool,
    pub tensor_dimension: bool,
    pub c_tilde_meets_d_tilde_in_scalars: bool,
    pub phi_c1_in_c_tilde: bool,
    pub corner_hypothesis: bool,
    /// Only evaluated under the corner hypothesis.
    pub corner_equality: Option<bool>,
    pub psi_compatible: bool,
}

impl RegularizationReport {
    pub fn passed(&self) -> bool {
        self.identity_recovered
            && self.cocycle_matches
            && self.c_tilde_elementary
            && self.supports_meet_trivially
            && self.tensor_dimension
            && self.c_tilde_meets_d_tilde_in_scalars
            && self.phi_c1_in_c_tilde
            && self.corner_equality.unwrap_or(true)
            && self.psi_compatible
    }
}

/// Replaces the fine factor of `r2` by one that `φ` maps `D₁` onto in the
/// corner `φ(e₁)R₂φ(e₁)`, so that `φ(C₁)` lands in its centralizer.
pub fn regularize_decomposition(
    phi: &LinearMap,
    r1: &DecompositionPair,
    r2: &DecompositionPair,
) -> Result<Regularization, EmbeddingError> {
    let report = graded_homomorphism_check(phi, &r1.algebra, &r2.algebra);
    if !report.passed() {
        return Err(EmbeddingError::NotGradedInjection(report));
    }
    if r1.fine_support() != r2.fine_support() {
        return Err(EmbeddingError::SupportMismatch);
    }
    if r1.cocycle()? != r2.cocycle()? {
        return Err(EmbeddingError::CocycleMismatch);
    }
    let group = r1.algebra.group();
    let e = group.identity();
    let n2 = r2.algebra.n();
    let e2 = Matrix::identity(n2);
    let phi_e1 = phi.apply(&r1.identity()).expect("graded check passed");
    let c2_span = Span::from_matrices(n2, &r2.c.elements);
    let complement = &e2 - &phi_e1;

    let mut a = BTreeMap::new();
    let mut d_tilde = BTreeMap::new();
    for (t, xt) in &r1.d {
        let xt_prime = &r2.d[t];
        let image = phi.apply(xt).expect("graded check passed");
        let inverse = xt_prime.inverse().ok_or_else(|| EmbeddingError::SolveInconsistent { t: t.clone() })?;
        let at = &image * &inverse;
        let homogeneous = r2.algebra.degree_of(&at).ok().flatten().as_ref() == Some(&e);
        if !homogeneous || !c2_span.contains_matrix(&at) {
            return Err(EmbeddingError::SolveInconsistent { t: t.clone() });
        }
        let at_prime = &(&at * &phi_e1) + &complement;
        d_tilde.insert(t.clone(), &at_prime * xt_prime);
        a.insert(t.clone(), at);
    }
    let d_list: Vec<Matrix> = d_tilde.values().cloned().collect();
    let c_tilde = r2.algebra.centralizer(&d_list)?;
    let psi = LinearMap::new(r1.d.values().cloned().collect(), d_list);
    Ok(Regularization {
        a,
        d_tilde,
        c_tilde,
        psi,
        phi_identity: phi_e1,
    })
}

impl Regularization {
    pub fn verify(&self, phi: &LinearMap, r1: &DecompositionPair, r2: &DecompositionPair) -> RegularizationReport {
        let group = r1.algebra.group();
        let e = group.identity();
        let (n1, n2) = (r1.algebra.n(), r2.algebra.n());
        let apply = |x: &Matrix| phi.apply(x).expect("phi is defined on R1");

        let identity_recovered = self.d_tilde.get(&e).is_some_and(Matrix::is_identity);
        let cocycle_matches = match (Cocycle::from_basis(group, &self.d_tilde), r1.cocycle()) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        };
        let c_tilde_elementary = subalgebra_is_elementary(&self.c_tilde, &e);
        let supports_meet_trivially = self.c_tilde.degrees.as_ref().is_some_and(|d| {
            d.iter().all(|g| *g == e || !self.d_tilde.contains_key(g))
        });
        let tensor_dimension = self.c_tilde.dim() * self.d_tilde.len() == n2 * n2;
        let d_list: Vec<Matrix> = self.d_tilde.values().cloned().collect();
        let c_tilde_meets_d_tilde_in_scalars = commuting_combinations(&d_list, &d_list).len() == 1;

        let c_span = Span::from_matrices(n2, &self.c_tilde.elements);
        let phi_c1: Vec<Matrix> = r1.c.elements.iter().map(apply).collect();
        let phi_c1_in_c_tilde = phi_c1.iter().all(|x| c_span.contains_matrix(x));

        // φ(R₁) sits inside the corner and has dimension n₁², so equality is
        // a rank count on the idempotent φ(e₁).
        let rows = self.phi_identity.rows();
        let corner_rank = Span::from_vectors(n2, rows.iter().map(Vec::as_slice)).rank();
        let corner_hypothesis = corner_rank * corner_rank == n1 * n1;
        let corner_equality = corner_hypothesis.then(|| {
            let cornered: Vec<Matrix> = self
                .c_tilde
                .elements
                .iter()
                .map(|x| &(&self.phi_identity * x) * &self.phi_identity)
                .collect();
            Span::from_matrices(n2, &cornered).same_span(&Span::from_matrices(n2, &phi_c1))
        });

        let units: Vec<Matrix> = (0..n1 * n1).map(|k| Matrix::unit(n1, k / n1, k % n1)).collect();
        let psi_compatible = units.iter().all(|a| {
            let phi_a = apply(a);
            r1.d.values().all(|d| {
                let psi_d = self.psi.apply(d).expect("psi is defined on D1");
                &phi_a * &psi_d == &phi_a * &apply(d)
            })
        });

        RegularizationReport {
            identity_recovered,
            cocycle_matches,
            c_tilde_elementary,
            supports_meet_trivially,
            tensor_dimension,
            c_tilde_meets_d_tilde_in_scalars,
            phi_c1_in_c_tilde,
            corner_hypothesis,
            corner_equality,
            psi_compatible,
        }
    }
}
