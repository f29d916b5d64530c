use serde::Serialize;

use super::EmbeddingError;
use crate::cyclotomic::CycNumber;
use crate::graded::{
    graded_homomorphism_check, ElementaryTuple, GradedAlgebra, GradedVectorSpace, HomomorphismReport,
    LinearMap,
};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::linalg::Span;
use crate::matrix::Matrix;

/// First position where the ratio pattern breaks: `h_α⁻¹h_{α+1}` in block
/// `block` differs from the same ratio in the first block (both 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockViolation {
    pub index: usize,
    pub block: usize,
}

fn check_shape(len: usize, k: usize, m: usize, r: usize) -> Result<(), EmbeddingError> {
    if k == 0 || m == 0 {
        return Err(EmbeddingError::InvalidBlockShape { k, m });
    }
    if len != k * m + r {
        return Err(EmbeddingError::SizeMismatch { n: len, k, m, r });
    }
    Ok(())
}

/// Looks for a break in `h_α⁻¹h_{α+1} = h_{α+k}⁻¹h_{α+k+1} = …` across the
/// `m` blocks, for `1 ≤ α ≤ k−1`.
pub fn block_condition_violation(
    group: &FiniteAbelianGroup,
    h: &ElementaryTuple,
    k: usize,
    m: usize,
    r: usize,
) -> Result<Option<BlockViolation>, EmbeddingError> {
    check_shape(h.len(), k, m, r)?;
    h.check(group)?;
    for alpha in 0..k.saturating_sub(1) {
        let first = h.unit_degree(group, alpha, alpha + 1);
        for block in 1..m {
            let at = alpha + block * k;
            if h.unit_degree(group, at, at + 1) != first {
                return Ok(Some(BlockViolation {
                    index: alpha + 1,
                    block: block + 1,
                }));
            }
        }
    }
    Ok(None)
}

pub fn check_block_condition(
    group: &FiniteAbelianGroup,
    h: &ElementaryTuple,
    k: usize,
    m: usize,
    r: usize,
) -> Result<bool, EmbeddingError> {
    Ok(block_condition_violation(group, h, k, m, r)?.is_none())
}

/// `E_ij ↦ Σ_c E_{i+ck, j+ck}` on `M_k → M_n`, `n = km + r`.
pub fn block_diagonal_map(k: usize, m: usize, r: usize) -> LinearMap {
    let n = k * m + r;
    let images = (0..k * k)
        .map(|u| {
            let (i, j) = (u / k, u % k);
            let mut x = Matrix::zeros(n);
            for c in 0..m {
                x.set(i + c * k, j + c * k, CycNumber::one());
            }
            x
        })
        .collect();
    LinearMap::on_units(k, images)
}

/// The embedding `X ↦ diag{X,…,X,0}` between elementary gradings.
#[derive(Debug, Clone)]
pub struct BlockEmbedding {
    pub k: usize,
    pub m: usize,
    pub r: usize,
    pub source: GradedAlgebra,
    pub target: GradedAlgebra,
    pub map: LinearMap,
}

impl BlockEmbedding {
    /// `e′ = φ(1)`.
    pub fn idempotent(&self) -> Matrix {
        self.map
            .apply(&Matrix::identity(self.k))
            .expect("units span the source")
    }

    pub fn check(&self) -> HomomorphismReport {
        graded_homomorphism_check(&self.map, &self.source, &self.target)
    }

    /// Every image `x` satisfies `e′xe′ = x`.
    pub fn image_in_corner(&self) -> bool {
        let e = self.idempotent();
        self.map.images().iter().all(|x| &(&e * x) * &e == *x)
    }

    /// `φ(M_k) = e′M_ne′`; holds exactly when `m = 1`.
    pub fn image_is_full_corner(&self) -> bool {
        let rank = self.m * self.k;
        let image_dim = Span::from_matrices(self.target.n(), self.map.images()).rank();
        self.image_in_corner() && image_dim == rank * rank
    }
}

/// Realizes the elementary `source` inside `M_n` graded by `target` as
/// `diag{X,…,X,0}` with `m` copies and `r` trailing zero rows.
pub fn block_diagonal_embedding(
    source: &GradedAlgebra,
    m: usize,
    r: usize,
    target: &ElementaryTuple,
) -> Result<BlockEmbedding, EmbeddingError> {
    let group = source.group();
    let tuple = source.elementary_tuple().ok_or(EmbeddingError::NotElementary)?;
    let k = source.n();
    if let Some(violation) = block_condition_violation(group, target, k, m, r)? {
        return Err(EmbeddingError::BlockCondition(violation));
    }
    for i in 0..k {
        for j in 0..k {
            if tuple.unit_degree(group, i, j) != target.unit_degree(group, i, j) {
                return Err(EmbeddingError::PrefixMismatch { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(BlockEmbedding {
        k,
        m,
        r,
        source: source.clone(),
        target: GradedAlgebra::elementary(group, target.clone())?,
        map: block_diagonal_map(k, m, r),
    })
}

/// `V = V₁ ⊕ … ⊕ V_m ⊕ V₀` for an elementary `M_k` acting on `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleDecomposition {
    pub k: usize,
    /// Each summand's basis `v_1,…,v_k` with `v_i = E_ik v`.
    pub summands: Vec<Vec<Vec<CycNumber>>>,
    /// Homogeneous basis of the annihilated part.
    pub annihilated: Vec<Vec<CycNumber>>,
    /// Columns are the concatenated bases above.
    pub change_of_basis: Matrix,
    /// Degree of each new basis vector.
    pub degrees: Vec<GroupElement>,
}

impl ModuleDecomposition {
    pub fn multiplicity(&self) -> usize {
        self.summands.len()
    }

    /// The tuple `(h_1,…,h_n)` with `deg v_i = h_i⁻¹` in the new basis.
    pub fn tuple(&self, group: &FiniteAbelianGroup) -> ElementaryTuple {
        GradedVectorSpace::new(self.degrees.clone()).tuple(group)
    }
}

fn column(m: &Matrix, c: usize) -> Vec<CycNumber> {
    (0..m.n()).map(|r| m.get(r, c).clone()).collect()
}

fn mat_vec(m: &Matrix, v: &[CycNumber]) -> Vec<CycNumber> {
    let n = m.n();
    (0..n)
        .map(|i| {
            let mut acc = CycNumber::zero();
            for (j, x) in v.iter().enumerate() {
                let a = m.get(i, j);
                if !a.is_zero() && !x.is_zero() {
                    acc = &acc + &(a * x);
                }
            }
            acc
        })
        .collect()
}

/// Splits `V` under the action of matrix units `units[i·k + j] = E_ij` of a
/// graded subalgebra of `End V`.
pub fn split_module_decomposition(
    group: &FiniteAbelianGroup,
    space: &GradedVectorSpace,
    units: &[Matrix],
) -> Result<ModuleDecomposition, EmbeddingError> {
    let n = space.dim();
    let k = num_integer::Roots::sqrt(&units.len());
    if k == 0 || k * k != units.len() {
        return Err(EmbeddingError::InvalidDecomposition(format!(
            "{} matrix units do not form a square system",
            units.len()
        )));
    }
    if let Some(u) = units.iter().find(|u| u.n() != n) {
        return Err(EmbeddingError::InvalidDecomposition(format!(
            "units must act on a {n}-dimensional space, found {}x{}",
            u.n(),
            u.n()
        )));
    }
    let e = |i: usize, j: usize| &units[i * k + j];
    for i in 0..k {
        for j in 0..k {
            for a in 0..k {
                for b in 0..k {
                    let product = e(i, j) * e(a, b);
                    let expected = if j == a { e(i, b).clone() } else { Matrix::zeros(n) };
                    if product != expected {
                        return Err(EmbeddingError::NotMatrixUnits {
                            i: i + 1,
                            j: j + 1,
                            k: a + 1,
                            l: b + 1,
                        });
                    }
                }
            }
        }
    }
    let ambient = GradedAlgebra::elementary(group, space.tuple(group))?;
    for (index, u) in units.iter().enumerate() {
        if ambient.degree_of(u)?.is_none() {
            return Err(EmbeddingError::NotHomogeneous { index });
        }
    }

    let last = e(k - 1, k - 1);
    let mut heads = Span::new(n);
    let mut summands = Vec::new();
    for s in 0..n {
        let v = column(last, s);
        if v.iter().all(CycNumber::is_zero) || !heads.push(&v) {
            continue;
        }
        summands.push((0..k).map(|i| mat_vec(e(i, k - 1), &v)).collect::<Vec<_>>());
    }
    let mut unit_sum = Matrix::zeros(n);
    for i in 0..k {
        unit_sum = &unit_sum + e(i, i);
    }
    let complement = &Matrix::identity(n) - &unit_sum;
    let mut kernel = Span::new(n);
    let mut annihilated = Vec::new();
    for s in 0..n {
        let v = column(&complement, s);
        if !v.iter().all(CycNumber::is_zero) && kernel.push(&v) {
            annihilated.push(v);
        }
    }

    let columns: Vec<&Vec<CycNumber>> = summands.iter().flatten().chain(&annihilated).collect();
    let mut degrees = Vec::with_capacity(n);
    for v in &columns {
        degrees.push(space.vector_degree(v).ok_or_else(|| {
            EmbeddingError::InvalidDecomposition("constructed basis vector is not homogeneous".into())
        })?);
    }
    let mut change = Matrix::zeros(n);
    for (c, v) in columns.iter().enumerate() {
        for (r, x) in v.iter().enumerate() {
            change.set(r, c, x.clone());
        }
    }
    if columns.len() != n || change.inverse().is_none() {
        return Err(EmbeddingError::InvalidDecomposition(
            "summands do not span the space".into(),
        ));
    }
    Ok(ModuleDecomposition {
        k,
        summands,
        annihilated,
        change_of_basis: change,
        degrees,
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

    #[test]
    fn block_condition_examples() {
        let g = z2();
        assert!(check_block_condition(&g, &tuple(&[0, 1, 0, 1]), 2, 2, 0).unwrap());
        assert!(check_block_condition(&g, &tuple(&[0, 1, 1]), 1, 3, 0).unwrap());
        assert_eq!(
            block_condition_violation(&g, &tuple(&[0, 1, 0, 0]), 2, 2, 0).unwrap(),
            Some(BlockViolation { index: 1, block: 2 })
        );
        assert_eq!(
            check_block_condition(&g, &tuple(&[0, 1, 0]), 2, 2, 0),
            Err(EmbeddingError::SizeMismatch { n: 3, k: 2, m: 2, r: 0 })
        );
    }

    #[test]
    fn trivial_into_m2() {
        let g = z2();
        let source = GradedAlgebra::elementary(&g, tuple(&[0])).unwrap();
        let emb = block_diagonal_embedding(&source, 2, 0, &tuple(&[0, 0])).unwrap();
        assert!(emb.idempotent().is_identity());
        assert!(emb.check().passed());
    }

    #[test]
    fn m2_into_m4_and_m5() {
        let g = z2();
        let source = GradedAlgebra::elementary(&g, tuple(&[0, 1])).unwrap();
        let emb = block_diagonal_embedding(&source, 2, 0, &tuple(&[0, 1, 0, 1])).unwrap();
        assert_eq!(
            emb.map.apply(&Matrix::unit(2, 0, 0)).unwrap(),
            &Matrix::unit(4, 0, 0) + &Matrix::unit(4, 2, 2)
        );
        assert!(emb.check().passed());
        assert!(emb.image_in_corner());
        assert!(!emb.image_is_full_corner());

        let emb = block_diagonal_embedding(&source, 2, 1, &tuple(&[0, 1, 0, 1, 1])).unwrap();
        assert!(emb.check().passed());
        let e = emb.idempotent();
        assert!((0..5).all(|j| e.get(4, j).is_zero() && e.get(j, 4).is_zero()));
        assert!(emb.image_in_corner());

        let corner = block_diagonal_embedding(&source, 1, 2, &tuple(&[1, 0, 0, 1])).unwrap();
        assert!(corner.check().passed());
        assert!(corner.image_is_full_corner());
    }

    #[test]
    fn rejections() {
        let g = z2();
        let source = GradedAlgebra::elementary(&g, tuple(&[0, 1])).unwrap();
        assert_eq!(
            block_diagonal_embedding(&source, 2, 0, &tuple(&[0, 1, 0, 0])).unwrap_err(),
            EmbeddingError::BlockCondition(BlockViolation { index: 1, block: 2 })
        );
        assert_eq!(
            block_diagonal_embedding(&source, 2, 0, &tuple(&[0, 0, 0, 0])).unwrap_err(),
            EmbeddingError::PrefixMismatch { i: 1, j: 2 }
        );
    }

    fn units_of(map: &LinearMap) -> Vec<Matrix> {
        map.images().to_vec()
    }

    #[test]
    fn split_full_algebra() {
        let g = z2();
        let space = GradedVectorSpace::new(vec![g.identity(), g.element(&[1]).unwrap()]);
        let units = units_of(&LinearMap::identity(2));
        let d = split_module_decomposition(&g, &space, &units).unwrap();
        assert_eq!(d.multiplicity(), 1);
        assert!(d.annihilated.is_empty());
    }

    #[test]
    fn split_diagonal_copies_and_kernel() {
        let g = z2();
        let h = tuple(&[0, 1, 0, 1, 1]);
        let space = GradedVectorSpace::from_tuple(&g, &h);
        let units = units_of(&block_diagonal_map(2, 2, 1));
        let d = split_module_decomposition(&g, &space, &units).unwrap();
        assert_eq!(d.multiplicity(), 2);
        assert_eq!(d.annihilated.len(), 1);
        let p = &d.change_of_basis;
        let p_inv = p.inverse().unwrap();
        for (u, x) in units.iter().enumerate() {
            let expected = block_diagonal_map(2, 2, 1).images()[u].clone();
            assert_eq!(&(&p_inv * x) * p, expected);
        }
        let new_tuple = d.tuple(&g);
        assert!(check_block_condition(&g, &new_tuple, 2, 2, 1).unwrap());

        let units = units_of(&block_diagonal_map(2, 2, 0));
        let space = GradedVectorSpace::from_tuple(&g, &tuple(&[0, 1, 0, 1]));
        let d = split_module_decomposition(&g, &space, &units).unwrap();
        assert_eq!(d.multiplicity(), 2);
        assert!(d.annihilated.is_empty());
    }

    #[test]
    fn split_rejects_non_units() {
        let g = z2();
        let space = GradedVectorSpace::new(vec![g.identity(); 2]);
        let mut units = units_of(&LinearMap::identity(2));
        units[1] = Matrix::unit(2, 1, 0);
        assert!(matches!(
            split_module_decomposition(&g, &space, &units),
            Err(EmbeddingError::NotMatrixUnits { .. })
        ));
    }
}
