//! Dense square matrices over cyclotomic numbers.
//!
//! Most matrices in this crate are monomial or matrix units, so the kernels
//! skip zero entries instead of switching representation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::CycNumber;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    entries: Vec<CycNumber>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![CycNumber::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = CycNumber::one();
        }
        m
    }

    /// Matrix unit `E_ij` (zero-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        assert!(i < n && j < n, "matrix unit ({i},{j}) out of range for n={n}");
        let mut m = Self::zeros(n);
        m.entries[i * n + j] = CycNumber::one();
        m
    }

    pub fn diagonal(diag: Vec<CycNumber>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    /// Returns `None` when the rows do not form a square array.
    pub fn from_rows(rows: Vec<Vec<CycNumber>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Row-major flattening inverse.
    pub fn from_vector(n: usize, entries: Vec<CycNumber>) -> Self {
        assert_eq!(entries.len(), n * n);
        Self { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNumber {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNumber) {
        self.entries[i * self.n + j] = v;
    }

    /// Row-major entries, the coordinate vector of the matrix in the basis
    /// of matrix units.
    pub fn as_vector(&self) -> &[CycNumber] {
        &self.entries
    }

    pub fn into_vector(self) -> Vec<CycNumber> {
        self.entries
    }

    pub fn rows(&self) -> Vec<Vec<CycNumber>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycNumber::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Positions of nonzero entries, row-major.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, _)| (k / self.n, k % self.n))
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        if c.is_zero() {
            return Self::zeros(self.n);
        }
        Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|v| if v.is_zero() { CycNumber::zero() } else { v * c })
                .collect(),
        }
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, c: &CycNumber, other: &Matrix) {
        assert_eq!(self.n, other.n);
        if c.is_zero() {
            return;
        }
        for (dst, src) in self.entries.iter_mut().zip(&other.entries) {
            if !src.is_zero() {
                *dst = &*dst + &(src * c);
            }
        }
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (p, q) = (self.n, other.n);
        let mut out = Matrix::zeros(p * q);
        for (i, j) in self.support().collect::<Vec<_>>() {
            let a = self.get(i, j);
            for (k, l) in other.support() {
                out.set(i * q + k, j * q + l, a * other.get(k, l));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self·other - other·self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    pub fn commutes_with(&self, other: &Matrix) -> bool {
        self * other == other * self
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = Matrix::identity(n).rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].inv().ok()?;
            for v in a[col].iter_mut().chain(inv[col].iter_mut()) {
                if !v.is_zero() {
                    *v = &*v * &p;
                }
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                let (src_a, src_i) = (a[col].clone(), inv[col].clone());
                for (dst, src) in a[r].iter_mut().zip(&src_a) {
                    if !src.is_zero() {
                        *dst = &*dst - &(src * &f);
                    }
                }
                for (dst, src) in inv[r].iter_mut().zip(&src_i) {
                    if !src.is_zero() {
                        *dst = &*dst - &(src * &f);
                    }
                }
            }
        }
        Matrix::from_rows(inv)
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix product");
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        let slot = &mut out.entries[i * n + j];
                        *slot = &*slot + &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn add(self, rhs: &'a Matrix) -> Matrix {
        let mut out = self.clone();
        out.add_scaled(&CycNumber::one(), rhs);
        out
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &'a Matrix) -> Matrix {
        let mut out = self.clone();
        out.add_scaled(&CycNumber::from_integer(-1), rhs);
        out
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(|v| -v).collect(),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}", self.n, self.n)?;
        f.debug_list().entries(self.rows()).finish()
    }
}

/// Serialized as an array of rows of cyclotomic strings.
impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<CycNumber>>::deserialize(deserializer)?;
        Matrix::from_rows(rows).ok_or_else(|| serde::de::Error::custom("matrix must be square"))
    }
}
