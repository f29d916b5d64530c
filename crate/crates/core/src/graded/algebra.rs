use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::Serialize;

use super::{ElementaryTuple, GradingError, IdentityComponentIdeal};
use crate::cyclotomic::CycNumber;
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::linalg::{commuting_combinations, Span};
use crate::matrix::Matrix;

/// A grading `M_n = ⊕ R^(g)` given by a basis of each nonzero component.
#[derive(Debug)]
pub struct GradedAlgebra {
    n: usize,
    group: FiniteAbelianGroup,
    components: BTreeMap<GroupElement, Vec<Matrix>>,
    tuple: Option<ElementaryTuple>,
    index: OnceLock<ComponentIndex>,
}

#[derive(Debug)]
struct ComponentIndex {
    union: Span,
    owners: Vec<GroupElement>,
    spans: BTreeMap<GroupElement, Span>,
}

impl Clone for GradedAlgebra {
    fn clone(&self) -> Self {
        Self {
            n: self.n,
            group: self.group.clone(),
            components: self.components.clone(),
            tuple: self.tuple.clone(),
            index: OnceLock::new(),
        }
    }
}

impl PartialEq for GradedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.group == other.group && self.components == other.components
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureViolation {
    pub left: GroupElement,
    pub right: GroupElement,
    pub left_index: usize,
    pub right_index: usize,
    pub product: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    /// `n²`.
    pub dimension: usize,
    /// Sum of the component dimensions.
    pub total_dimension: usize,
    /// Rank of the union of the component bases.
    pub rank: usize,
    pub violations: Vec<ClosureViolation>,
}

impl GradingReport {
    pub fn is_direct_sum(&self) -> bool {
        self.total_dimension == self.dimension && self.rank == self.total_dimension
    }

    pub fn passed(&self) -> bool {
        self.is_direct_sum() && self.violations.is_empty()
    }
}

/// Basis of a subalgebra, homogeneous when `degrees` is present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraBasis {
    pub elements: Vec<Matrix>,
    pub degrees: Option<Vec<GroupElement>>,
}

impl SubalgebraBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn is_graded(&self) -> bool {
        self.degrees.is_some()
    }

    /// Elements of degree `g`; empty for ungraded bases.
    pub fn component(&self, g: &GroupElement) -> Vec<Matrix> {
        match &self.degrees {
            Some(d) => self
                .elements
                .iter()
                .zip(d)
                .filter(|(_, h)| *h == g)
                .map(|(m, _)| m.clone())
                .collect(),
            None => Vec::new(),
        }
    }
}

fn epsilon_generators(n: usize) -> Result<(Matrix, Matrix), GradingError> {
    let eps = CycNumber::root_of_unity(n as i64, 1)?;
    let diag = (0..n)
        .map(|k| eps.pow((n - 1 - k) as i64))
        .collect::<Result<Vec<_>, _>>()?;
    let xa = Matrix::diagonal(diag);
    let mut xb = Matrix::zeros(n);
    for k in 0..n {
        xb.set(k, (k + 1) % n, CycNumber::one());
    }
    Ok((xa, xb))
}

impl GradedAlgebra {
    fn from_parts(
        n: usize,
        group: FiniteAbelianGroup,
        components: BTreeMap<GroupElement, Vec<Matrix>>,
        tuple: Option<ElementaryTuple>,
    ) -> Self {
        Self {
            n,
            group,
            components,
            tuple,
            index: OnceLock::new(),
        }
    }

    /// `deg E_ij = g_i⁻¹g_j`.
    pub fn elementary(group: &FiniteAbelianGroup, tuple: ElementaryTuple) -> Result<Self, GradingError> {
        tuple.check(group)?;
        let n = tuple.len();
        let mut components: BTreeMap<GroupElement, Vec<Matrix>> = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                components
                    .entry(tuple.unit_degree(group, i, j))
                    .or_default()
                    .push(Matrix::unit(n, i, j));
            }
        }
        Ok(Self::from_parts(n, group.clone(), components, Some(tuple)))
    }

    /// The ε-grading on `M_n` by `Z_n × Z_n` with generators `a = (1,0)`,
    /// `b = (0,1)`.
    pub fn epsilon(n: i64) -> Result<Self, GradingError> {
        if n <= 0 {
            return Err(GradingError::InvalidSize(n));
        }
        let group = FiniteAbelianGroup::new(&[n, n])?;
        let a = group.element(&[1, 0])?;
        let b = group.element(&[0, 1])?;
        Self::epsilon_in(&group, n as usize, &a, &b)
    }

    /// The ε-grading on `M_n` with `deg X_a = a`, `deg X_b = b` inside an
    /// arbitrary group; `a` and `b` must produce `n²` distinct degrees
    /// `a^i b^j`, `0 ≤ i,j < n`.
    pub fn epsilon_in(
        group: &FiniteAbelianGroup,
        n: usize,
        a: &GroupElement,
        b: &GroupElement,
    ) -> Result<Self, GradingError> {
        if n == 0 {
            return Err(GradingError::InvalidSize(0));
        }
        group.check(a)?;
        group.check(b)?;
        let (xa, xb) = epsilon_generators(n)?;
        let mut components = BTreeMap::new();
        let mut xa_i = Matrix::identity(n);
        for i in 0..n {
            let mut x = xa_i.clone();
            for j in 0..n {
                let degree = group.add(&group.power(a, i as i64), &group.power(b, j as i64));
                if components.insert(degree, vec![x.clone()]).is_some() {
                    return Err(GradingError::DegenerateGenerators {
                        a: a.clone(),
                        b: b.clone(),
                        n,
                    });
                }
                x = &x * &xb;
            }
            xa_i = &xa_i * &xa;
        }
        Ok(Self::from_parts(n, group.clone(), components, None))
    }

    /// `deg(E_ij ⊗ x) = g_i⁻¹·h·g_j` for `x ∈ B^(h)`, using the Kronecker
    /// product with `A` as the outer factor.
    pub fn induced_tensor(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<Self, GradingError> {
        if a.group != b.group {
            return Err(GradingError::GroupMismatch);
        }
        let tuple = a.tuple.as_ref().ok_or(GradingError::NotElementary)?;
        let group = &a.group;
        let (p, q) = (a.n, b.n);
        let mut components: BTreeMap<GroupElement, Vec<Matrix>> = BTreeMap::new();
        for i in 0..p {
            for j in 0..p {
                let unit = Matrix::unit(p, i, j);
                let outer = tuple.unit_degree(group, i, j);
                for (h, basis) in &b.components {
                    let degree = group.add(&outer, h);
                    let slot = components.entry(degree).or_default();
                    slot.extend(basis.iter().map(|x| unit.kron(x)));
                }
            }
        }
        let combined = b.tuple.as_ref().map(|inner| {
            let mut degrees = Vec::with_capacity(p * q);
            for gi in tuple.degrees() {
                for hk in inner.degrees() {
                    degrees.push(group.add(gi, hk));
                }
            }
            ElementaryTuple(degrees)
        });
        Ok(Self::from_parts(p * q, group.clone(), components, combined))
    }

    /// Arbitrary component bases; only shapes and group membership are
    /// checked here, the grading axioms are left to [`Self::verify`].
    pub fn explicit(
        group: &FiniteAbelianGroup,
        n: usize,
        components: BTreeMap<GroupElement, Vec<Matrix>>,
    ) -> Result<Self, GradingError> {
        if n == 0 {
            return Err(GradingError::InvalidSize(0));
        }
        for (g, basis) in &components {
            group.check(g)?;
            if let Some(m) = basis.iter().find(|m| m.n() != n) {
                return Err(GradingError::DimensionMismatch {
                    expected: n,
                    found: m.n(),
                });
            }
        }
        let components = components.into_iter().filter(|(_, b)| !b.is_empty()).collect();
        Ok(Self::from_parts(n, group.clone(), components, None))
    }

    /// Moves every component `R^(g)` to degree `f(g)`, merging collisions.
    pub fn relabel(&self, f: impl Fn(&GroupElement) -> GroupElement) -> Self {
        let mut components: BTreeMap<GroupElement, Vec<Matrix>> = BTreeMap::new();
        for (g, basis) in &self.components {
            components.entry(f(g)).or_default().extend(basis.iter().cloned());
        }
        Self::from_parts(self.n, self.group.clone(), components, None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn components(&self) -> &BTreeMap<GroupElement, Vec<Matrix>> {
        &self.components
    }

    pub fn component(&self, g: &GroupElement) -> &[Matrix] {
        self.components.get(g).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dimension_of(&self, g: &GroupElement) -> usize {
        self.component(g).len()
    }

    pub fn total_dimension(&self) -> usize {
        self.components.values().map(Vec::len).sum()
    }

    pub fn elementary_tuple(&self) -> Option<&ElementaryTuple> {
        self.tuple.as_ref()
    }

    /// All basis elements with their degrees, in component order.
    pub fn basis(&self) -> Vec<(GroupElement, Matrix)> {
        self.components
            .iter()
            .flat_map(|(g, b)| b.iter().map(move |m| (g.clone(), m.clone())))
            .collect()
    }

    fn index(&self) -> &ComponentIndex {
        self.index.get_or_init(|| {
            let mut union = Span::new(self.n * self.n);
            let mut owners = Vec::new();
            let mut spans = BTreeMap::new();
            for (g, basis) in &self.components {
                for m in basis {
                    union.push(m.as_vector());
                    owners.push(g.clone());
                }
                spans.insert(g.clone(), Span::from_matrices(self.n, basis));
            }
            ComponentIndex { union, owners, spans }
        })
    }

    pub fn verify(&self) -> GradingReport {
        let index = self.index();
        let mut violations = Vec::new();
        for (g, left) in &self.components {
            for (h, right) in &self.components {
                let target = self.group.add(g, h);
                let span = index.spans.get(&target);
                for (li, x) in left.iter().enumerate() {
                    for (ri, y) in right.iter().enumerate() {
                        let product = x * y;
                        if product.is_zero() {
                            continue;
                        }
                        if !span.is_some_and(|s| s.contains_matrix(&product)) {
                            violations.push(ClosureViolation {
                                left: g.clone(),
                                right: h.clone(),
                                left_index: li,
                                right_index: ri,
                                product,
                            });
                        }
                    }
                }
            }
        }
        GradingReport {
            dimension: self.n * self.n,
            total_dimension: self.total_dimension(),
            rank: index.union.rank(),
            violations,
        }
    }

    pub fn support(&self) -> BTreeSet<GroupElement> {
        self.components.keys().cloned().collect()
    }

    fn check_shape(&self, m: &Matrix) -> Result<(), GradingError> {
        if m.n() != self.n {
            return Err(GradingError::DimensionMismatch {
                expected: self.n,
                found: m.n(),
            });
        }
        Ok(())
    }

    /// The degree `g` with `m ∈ R^(g)`, or `None` when `m` is not
    /// homogeneous.
    pub fn degree_of(&self, m: &Matrix) -> Result<Option<GroupElement>, GradingError> {
        self.check_shape(m)?;
        if m.is_zero() {
            return Err(GradingError::ZeroMatrix);
        }
        if let Some(tuple) = &self.tuple {
            let degrees: BTreeSet<GroupElement> = m
                .support()
                .map(|(i, j)| tuple.unit_degree(&self.group, i, j))
                .collect();
            return Ok((degrees.len() == 1).then(|| degrees.into_iter().next().unwrap()));
        }
        Ok(self
            .index()
            .spans
            .iter()
            .find(|(_, s)| s.contains_matrix(m))
            .map(|(g, _)| g.clone()))
    }

    /// Decomposition `m = Σ_g m_g` with `m_g ∈ R^(g)`; zero parts omitted.
    pub fn homogeneous_parts(&self, m: &Matrix) -> Result<BTreeMap<GroupElement, Matrix>, GradingError> {
        self.check_shape(m)?;
        let mut parts: BTreeMap<GroupElement, Matrix> = BTreeMap::new();
        if let Some(tuple) = &self.tuple {
            for (i, j) in m.support() {
                parts
                    .entry(tuple.unit_degree(&self.group, i, j))
                    .or_insert_with(|| Matrix::zeros(self.n))
                    .set(i, j, m.get(i, j).clone());
            }
            return Ok(parts);
        }
        let index = self.index();
        let coords = index
            .union
            .coordinates(m.as_vector())
            .ok_or(GradingError::NotInSpan)?;
        let basis = self.components.values().flatten();
        for ((c, g), b) in coords.iter().zip(&index.owners).zip(basis) {
            if !c.is_zero() {
                parts
                    .entry(g.clone())
                    .or_insert_with(|| Matrix::zeros(self.n))
                    .add_scaled(c, b);
            }
        }
        parts.retain(|_, p| !p.is_zero());
        Ok(parts)
    }

    pub fn is_fine(&self) -> bool {
        self.components.values().all(|b| b.len() == 1)
    }

    pub fn support_is_subgroup(&self) -> bool {
        self.group.is_subgroup(&self.support())
    }

    /// Whether the grading is isomorphic to an elementary one: the
    /// centralizer of `R^(e)` must lie in `R^(e)`.
    pub fn is_elementary(&self) -> bool {
        let e = self.group.identity();
        let identity_component = self.component(&e).to_vec();
        self.components
            .iter()
            .filter(|(g, _)| **g != e)
            .all(|(_, basis)| commuting_combinations(basis, &identity_component).is_empty())
    }

    /// `{x ∈ M_n : xs = sx for all s}`. Homogeneous `s` give a homogeneous
    /// basis.
    pub fn centralizer(&self, set: &[Matrix]) -> Result<SubalgebraBasis, GradingError> {
        for s in set {
            self.check_shape(s)?;
        }
        let nonzero: Vec<Matrix> = set.iter().filter(|s| !s.is_zero()).cloned().collect();
        let mut all_homogeneous = true;
        for s in &nonzero {
            if self.degree_of(s)?.is_none() {
                all_homogeneous = false;
                break;
            }
        }
        if all_homogeneous && self.verify().passed() {
            let mut elements = Vec::new();
            let mut degrees = Vec::new();
            for (g, basis) in &self.components {
                for m in commuting_combinations(basis, &nonzero) {
                    elements.push(m);
                    degrees.push(g.clone());
                }
            }
            return Ok(SubalgebraBasis {
                elements,
                degrees: Some(degrees),
            });
        }
        let units: Vec<Matrix> = (0..self.n * self.n)
            .map(|k| Matrix::unit(self.n, k / self.n, k % self.n))
            .collect();
        Ok(SubalgebraBasis {
            elements: commuting_combinations(&units, &nonzero),
            degrees: None,
        })
    }

    /// One ideal per value of the tuple, ordered by label.
    pub fn identity_component_ideals(&self) -> Result<Vec<IdentityComponentIdeal>, GradingError> {
        let tuple = self.tuple.as_ref().ok_or(GradingError::NotElementary)?;
        Ok(IdentityComponentIdeal::of_tuple(tuple))
    }
}

/// The elementary test of [`GradedAlgebra::is_elementary`] for a graded
/// subalgebra given by a homogeneous basis.
pub fn subalgebra_is_elementary(basis: &SubalgebraBasis, identity: &GroupElement) -> bool {
    let Some(degrees) = &basis.degrees else {
        return false;
    };
    let identity_component = basis.component(identity);
    let others: BTreeSet<&GroupElement> = degrees.iter().filter(|g| *g != identity).collect();
    others
        .into_iter()
        .all(|g| commuting_combinations(&basis.component(g), &identity_component).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(2)
    }

    fn el(group: &FiniteAbelianGroup, xs: &[i64]) -> GroupElement {
        group.element(xs).unwrap()
    }

    fn tuple(group: &FiniteAbelianGroup, xs: &[i64]) -> ElementaryTuple {
        ElementaryTuple(xs.iter().map(|&x| el(group, &[x])).collect())
    }

    fn int(v: i64) -> CycNumber {
        CycNumber::from_integer(v)
    }

    #[test]
    fn elementary_degrees_on_m2() {
        let g = z2();
        let r = GradedAlgebra::elementary(&g, tuple(&g, &[0, 1])).unwrap();
        let a = el(&g, &[1]);
        let e = g.identity();
        assert_eq!(r.degree_of(&Matrix::unit(2, 0, 1)).unwrap(), Some(a.clone()));
        assert_eq!(r.degree_of(&Matrix::unit(2, 1, 0)).unwrap(), Some(a.clone()));
        assert_eq!(r.degree_of(&Matrix::unit(2, 0, 0)).unwrap(), Some(e.clone()));
        assert_eq!(r.degree_of(&Matrix::identity(2)).unwrap(), Some(e.clone()));
        let mixed = &Matrix::unit(2, 0, 0) + &Matrix::unit(2, 0, 1);
        assert_eq!(r.degree_of(&mixed).unwrap(), None);
        assert_eq!(r.degree_of(&Matrix::zeros(2)), Err(GradingError::ZeroMatrix));
        assert_eq!(r.support(), [e, a].into_iter().collect());
        assert!(r.verify().passed());
        assert!(!r.is_fine());
    }

    #[test]
    fn z3_component_of_one() {
        let g = FiniteAbelianGroup::cyclic(3);
        let r = GradedAlgebra::elementary(&g, tuple(&g, &[0, 1, 2])).unwrap();
        let one = el(&g, &[1]);
        let expected = vec![Matrix::unit(3, 0, 1), Matrix::unit(3, 1, 2), Matrix::unit(3, 2, 0)];
        assert_eq!(r.component(&one), expected.as_slice());
    }

    #[test]
    fn trivial_tuple_is_trivial_grading() {
        let g = z2();
        let r = GradedAlgebra::elementary(&g, tuple(&g, &[0, 0, 0])).unwrap();
        assert_eq!(r.support().len(), 1);
        assert_eq!(r.dimension_of(&g.identity()), 9);
        assert!(r.is_elementary());
    }

    #[test]
    fn epsilon_two() {
        let r = GradedAlgebra::epsilon(2).unwrap();
        let g = r.group().clone();
        let xa = r.component(&el(&g, &[1, 0]))[0].clone();
        let xb = r.component(&el(&g, &[0, 1]))[0].clone();
        assert_eq!(xa, Matrix::diagonal(vec![int(-1), int(1)]));
        assert_eq!(xb, Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap());
        let conj = &(&xa * &xb) * &xa.inverse().unwrap();
        assert_eq!(conj, -&xb);
        assert!(r.is_fine());
        assert!(r.support_is_subgroup());
        assert_eq!(r.support().len(), 4);
        assert!(r.verify().passed());
        assert!(!r.is_elementary());
    }

    #[test]
    fn epsilon_three_relations() {
        let r = GradedAlgebra::epsilon(3).unwrap();
        let g = r.group().clone();
        let xa = r.component(&el(&g, &[1, 0]))[0].clone();
        let xb = r.component(&el(&g, &[0, 1]))[0].clone();
        assert!(xa.pow(3).is_identity());
        assert!(xb.pow(3).is_identity());
        let eps = CycNumber::root_of_unity(3, 1).unwrap();
        assert_eq!(&xa * &xb, (&xb * &xa).scale(&eps));
        let report = r.verify();
        assert_eq!(report.rank, 9);
        assert!(report.passed());
    }

    #[test]
    fn epsilon_rejects_nonpositive() {
        assert_eq!(GradedAlgebra::epsilon(0).unwrap_err(), GradingError::InvalidSize(0));
        let one = GradedAlgebra::epsilon(1).unwrap();
        assert!(one.is_fine());
        assert_eq!(one.n(), 1);
    }

    #[test]
    fn mislabeled_components_fail() {
        let g = z2();
        let r = GradedAlgebra::elementary(&g, tuple(&g, &[0, 1])).unwrap();
        let swapped = r.relabel(|x| g.add(x, &el(&g, &[1])));
        let report = swapped.verify();
        assert!(report.is_direct_sum());
        assert!(!report.passed());
        let e12_e21 = Matrix::unit(2, 0, 0);
        assert!(report.violations.iter().any(|v| v.product == e12_e21));
    }

    #[test]
    fn tensor_with_trivial_m1_keeps_grading() {
        let g = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        let a = GradedAlgebra::elementary(&g, ElementaryTuple(vec![g.identity()])).unwrap();
        let b = GradedAlgebra::epsilon_in(&g, 2, &el(&g, &[1, 0]), &el(&g, &[0, 1])).unwrap();
        let t = GradedAlgebra::induced_tensor(&a, &b).unwrap();
        assert_eq!(t, b);
    }

    #[test]
    fn tensor_degree_and_restrictions() {
        let g = FiniteAbelianGroup::new(&[2, 2, 2]).unwrap();
        let g1 = el(&g, &[0, 0, 1]);
        let a = GradedAlgebra::elementary(&g, ElementaryTuple(vec![g.identity(), g1.clone()])).unwrap();
        let b = GradedAlgebra::epsilon_in(&g, 2, &el(&g, &[1, 0, 0]), &el(&g, &[0, 1, 0])).unwrap();
        let t = GradedAlgebra::induced_tensor(&a, &b).unwrap();
        assert!(t.verify().passed());
        let xb = b.component(&el(&g, &[0, 1, 0]))[0].clone();
        let x = Matrix::unit(2, 0, 1).kron(&xb);
        assert_eq!(t.degree_of(&x).unwrap(), Some(el(&g, &[0, 1, 1])));
        for (h, basis) in b.components() {
            for y in basis {
                let lifted = Matrix::identity(2).kron(y);
                assert_eq!(t.degree_of(&lifted).unwrap().as_ref(), Some(h));
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                let u = Matrix::unit(2, i, j);
                let lifted = u.kron(&Matrix::identity(2));
                assert_eq!(t.degree_of(&lifted).unwrap(), a.degree_of(&u).unwrap());
            }
        }
        assert!(!t.is_elementary());
    }

    #[test]
    fn centralizer_examples() {
        let eps = GradedAlgebra::epsilon(2).unwrap();
        let all = eps.centralizer(&[Matrix::identity(2)]).unwrap();
        assert_eq!(all.dim(), 4);
        let d: Vec<Matrix> = eps.components().values().flatten().cloned().collect();
        let scalars = eps.centralizer(&d).unwrap();
        assert_eq!(scalars.dim(), 1);
        assert!(scalars.is_graded());

        let g = eps.group().clone();
        let c = GradedAlgebra::elementary(&g, ElementaryTuple(vec![g.identity(), g.identity()])).unwrap();
        let m4 = GradedAlgebra::induced_tensor(&c, &eps).unwrap();
        let lifted: Vec<Matrix> = d.iter().map(|x| Matrix::identity(2).kron(x)).collect();
        let cent = m4.centralizer(&lifted).unwrap();
        assert_eq!(cent.dim(), 4);
        let expected = Span::from_matrices(
            4,
            &(0..4).map(|k| Matrix::unit(2, k / 2, k % 2).kron(&Matrix::identity(2))).collect::<Vec<_>>(),
        );
        assert!(Span::from_matrices(4, &cent.elements).same_span(&expected));
    }

    #[test]
    fn ideals_partition_indices() {
        let g = z2();
        let r = GradedAlgebra::elementary(&g, tuple(&g, &[0, 1, 0, 1])).unwrap();
        let ideals = r.identity_component_ideals().unwrap();
        assert_eq!(ideals.len(), 2);
        assert_eq!(ideals[0].indices, vec![0, 2]);
        assert_eq!(ideals[1].indices, vec![1, 3]);
        assert!(ideals.iter().all(|i| i.block_dimension == 2));
        for x in ideals[0].basis(4) {
            for y in ideals[1].basis(4) {
                assert!((&x * &y).is_zero());
            }
        }
        let eps = GradedAlgebra::epsilon(2).unwrap();
        assert_eq!(eps.identity_component_ideals(), Err(GradingError::NotElementary));
    }
}
