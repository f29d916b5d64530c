//! Exact Gaussian elimination over cyclotomic fields.

use crate::cyclotomic::CycNumber;
use crate::matrix::Matrix;

/// `dst -= c·src`, skipping zero entries of `src`.
fn sub_scaled(dst: &mut [CycNumber], c: &CycNumber, src: &[CycNumber]) {
    if c.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = &*d - &(s * c);
        }
    }
}

/// Like [`sub_scaled`] but `dst` may be shorter than `src`.
fn sub_scaled_growing(dst: &mut Vec<CycNumber>, c: &CycNumber, src: &[CycNumber]) {
    if dst.len() < src.len() {
        dst.resize(src.len(), CycNumber::zero());
    }
    sub_scaled(dst, c, src);
}

#[derive(Debug, Clone)]
struct EchelonRow {
    pivot: usize,
    /// Normalized so that `vector[pivot] = 1`; zero at every earlier pivot.
    vector: Vec<CycNumber>,
    /// Coefficients over the pushed generators reproducing `vector`.
    combination: Vec<CycNumber>,
}

/// Incrementally maintained span of vectors in `F^d`, remembering how each
/// echelon row was formed so that membership queries also return coordinates
/// with respect to the generators pushed so far.
#[derive(Debug, Clone)]
pub struct Span {
    ambient: usize,
    generators: usize,
    rows: Vec<EchelonRow>,
}

impl Span {
    pub fn new(ambient: usize) -> Self {
        Self {
            ambient,
            generators: 0,
            rows: Vec::new(),
        }
    }

    pub fn from_vectors<'a>(ambient: usize, vectors: impl IntoIterator<Item = &'a [CycNumber]>) -> Self {
        let mut span = Self::new(ambient);
        for v in vectors {
            span.push(v);
        }
        span
    }

    pub fn from_matrices<'a>(n: usize, ms: impl IntoIterator<Item = &'a Matrix>) -> Self {
        Self::from_vectors(n * n, ms.into_iter().map(Matrix::as_vector))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Returns `(residual, combination)` with
    /// `v = Σ combination[i]·generator[i] + residual`.
    fn reduce(&self, v: &[CycNumber]) -> (Vec<CycNumber>, Vec<CycNumber>) {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut residual = v.to_vec();
        let mut combo = Vec::new();
        for row in &self.rows {
            let c = residual[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            sub_scaled(&mut residual, &c, &row.vector);
            sub_scaled_growing(&mut combo, &-&c, &row.combination);
        }
        combo.resize(self.generators, CycNumber::zero());
        (residual, combo)
    }

    /// Adds a generator. Returns whether it was independent of the previous
    /// ones.
    pub fn push(&mut self, v: &[CycNumber]) -> bool {
        let (mut residual, combo) = self.reduce(v);
        let index = self.generators;
        self.generators += 1;
        let Some(pivot) = residual.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let p_inv = residual[pivot].inv().expect("pivot is nonzero");
        for x in residual.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &p_inv;
            }
        }
        // row = (g_index - Σ combo_i g_i) / p
        let mut combination: Vec<CycNumber> = combo.iter().map(|c| -&(c * &p_inv)).collect();
        combination.resize(index + 1, CycNumber::zero());
        combination[index] = p_inv;
        self.rows.push(EchelonRow {
            pivot,
            vector: residual,
            combination,
        });
        true
    }

    pub fn contains(&self, v: &[CycNumber]) -> bool {
        self.reduce(v).0.iter().all(CycNumber::is_zero)
    }

    pub fn contains_matrix(&self, m: &Matrix) -> bool {
        self.contains(m.as_vector())
    }

    /// Coefficients over the generators when `v` lies in the span. Dependent
    /// generators receive zero coefficients.
    pub fn coordinates(&self, v: &[CycNumber]) -> Option<Vec<CycNumber>> {
        let (residual, combo) = self.reduce(v);
        residual.iter().all(CycNumber::is_zero).then_some(combo)
    }

    pub fn contains_span(&self, other: &Span) -> bool {
        other.rows.iter().all(|r| self.contains(&r.vector))
    }

    pub fn same_span(&self, other: &Span) -> bool {
        self.ambient == other.ambient
            && self.rank() == other.rank()
            && self.contains_span(other)
    }

    /// A basis of the span (the echelon rows).
    pub fn basis(&self) -> impl Iterator<Item = &[CycNumber]> {
        self.rows.iter().map(|r| r.vector.as_slice())
    }
}

/// Basis of `{x : A x = 0}` for `A` given by rows of length `ncols`.
pub fn nullspace(rows: &[Vec<CycNumber>], ncols: usize) -> Vec<Vec<CycNumber>> {
    // Row space in echelon form, then full back-substitution.
    let span = Span::from_vectors(ncols, rows.iter().map(Vec::as_slice));
    let mut echelon: Vec<(usize, Vec<CycNumber>)> = span
        .rows
        .iter()
        .map(|r| (r.pivot, r.vector.clone()))
        .collect();
    // Make the echelon form fully reduced: clear each pivot column in the
    // other rows.
    for i in 0..echelon.len() {
        let (pivot, row) = echelon[i].clone();
        for (j, (_, other)) in echelon.iter_mut().enumerate() {
            if j != i {
                let c = other[pivot].clone();
                sub_scaled(other, &c, &row);
            }
        }
    }
    let pivots: Vec<usize> = echelon.iter().map(|(p, _)| *p).collect();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![CycNumber::zero(); ncols];
            x[free] = CycNumber::one();
            for (pivot, row) in &echelon {
                x[*pivot] = -&row[free];
            }
            x
        })
        .collect()
}

/// Nonzero combinations `Σ c_k b_k` of the given matrices that commute with
/// every matrix in `with`.
pub fn commuting_combinations(basis: &[Matrix], with: &[Matrix]) -> Vec<Matrix> {
    let Some(n) = basis.first().map(Matrix::n) else {
        return Vec::new();
    };
    let mut equations: Vec<Vec<CycNumber>> = Vec::new();
    for s in with {
        let columns: Vec<Matrix> = basis.iter().map(|b| b.commutator(s)).collect();
        for entry in 0..n * n {
            let row: Vec<CycNumber> = columns.iter().map(|c| c.as_vector()[entry].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                equations.push(row);
            }
        }
    }
    nullspace(&equations, basis.len())
        .into_iter()
        .map(|coeffs| combine(n, &coeffs, basis))
        .collect()
}

/// `Σ coeffs[k]·ms[k]`.
pub fn combine(n: usize, coeffs: &[CycNumber], ms: &[Matrix]) -> Matrix {
    let mut out = Matrix::zeros(n);
    for (c, m) in coeffs.iter().zip(ms) {
        out.add_scaled(c, m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<CycNumber> {
        xs.iter().map(|&x| CycNumber::from_integer(x)).collect()
    }

    #[test]
    fn span_rank_and_coordinates() {
        let gens = [v(&[1, 1, 0]), v(&[0, 1, 1]), v(&[1, 2, 1]), v(&[0, 0, 1])];
        let mut span = Span::new(3);
        let independent: Vec<bool> = gens.iter().map(|g| span.push(g)).collect();
        assert_eq!(independent, vec![true, true, false, true]);
        assert_eq!(span.rank(), 3);
        let target = v(&[2, 5, 7]);
        let coords = span.coordinates(&target).unwrap();
        assert_eq!(coords.len(), 4);
        assert!(coords[2].is_zero());
        let mut rebuilt = vec![CycNumber::zero(); 3];
        for (c, g) in coords.iter().zip(&gens) {
            for (r, x) in rebuilt.iter_mut().zip(g) {
                *r = &*r + &(c * x);
            }
        }
        assert_eq!(rebuilt, target);
    }

    #[test]
    fn membership() {
        let span = Span::from_vectors(3, [v(&[1, 0, 1]).as_slice()]);
        assert!(span.contains(&v(&[3, 0, 3])));
        assert!(!span.contains(&v(&[1, 0, 0])));
        assert!(span.coordinates(&v(&[0, 1, 0])).is_none());
    }

    #[test]
    fn nullspace_small() {
        // x + y + z = 0, y - z = 0  →  (-2, 1, 1)
        let ns = nullspace(&[v(&[1, 1, 1]), v(&[0, 1, -1])], 3);
        assert_eq!(ns, vec![v(&[-2, 1, 1])]);
        assert_eq!(nullspace(&[], 2).len(), 2);
    }

    #[test]
    fn commuting_with_diagonal() {
        let n = 2;
        let units: Vec<Matrix> = (0..4).map(|k| Matrix::unit(n, k / 2, k % 2)).collect();
        let d = Matrix::diagonal(v(&[1, 2]));
        let comm = commuting_combinations(&units, &[d]);
        assert_eq!(comm.len(), 2);
        let span = Span::from_matrices(n, &comm);
        assert!(span.contains_matrix(&Matrix::unit(2, 0, 0)));
        assert!(span.contains_matrix(&Matrix::unit(2, 1, 1)));
    }
}
