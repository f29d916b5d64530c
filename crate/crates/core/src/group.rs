//! Finite abelian groups presented as products of cyclic groups.
//!
//! Elements are exponent tuples, written additively internally. The
//! multiplicative notation of the surrounding algebra (`g⁻¹h`) maps to
//! `h - g` here. Enumeration order is lexicographic on exponent tuples and
//! is the tie-breaking order used by every downstream search.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::CycNumber;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("cyclic factor orders must be positive, got {0:?}")]
    InvalidFactors(Vec<i64>),
    #[error("element has {found} components but the group has {expected} factors")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("element {element} is not reduced for factors {factors:?}")]
    NotReduced { element: GroupElement, factors: Vec<u32> },
}

/// `Z_{n1} × … × Z_{nk}`. The empty product is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupSpec", into = "GroupSpec")]
pub struct FiniteAbelianGroup {
    factors: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct GroupSpec {
    factors: Vec<i64>,
}

impl TryFrom<GroupSpec> for FiniteAbelianGroup {
    type Error = GroupError;

    fn try_from(spec: GroupSpec) -> Result<Self, Self::Error> {
        FiniteAbelianGroup::new(&spec.factors)
    }
}

impl From<FiniteAbelianGroup> for GroupSpec {
    fn from(group: FiniteAbelianGroup) -> Self {
        GroupSpec {
            factors: group.factors.iter().map(|&n| n as i64).collect(),
        }
    }
}

/// An exponent tuple, each entry reduced modulo its factor order.
///
/// Ordering is lexicographic on the tuple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<u32>);

impl GroupElement {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl FiniteAbelianGroup {
    pub fn new(factors: &[i64]) -> Result<Self, GroupError> {
        if factors.iter().any(|&n| n < 1 || n > u32::MAX as i64) {
            return Err(GroupError::InvalidFactors(factors.to_vec()));
        }
        Ok(Self {
            factors: factors.iter().map(|&n| n as u32).collect(),
        })
    }

    /// `Z_n`.
    pub fn cyclic(n: u32) -> Self {
        assert!(n >= 1, "cyclic group order must be positive");
        Self { factors: vec![n] }
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&n| n as u64).product()
    }

    /// Least common multiple of the factor orders; characters take values
    /// in the cyclotomic field of this level.
    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1u64, |acc, &n| acc.lcm(&(n as u64)))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.factors.len()])
    }

    /// Reduces arbitrary integers modulo the factor orders.
    pub fn element(&self, exponents: &[i64]) -> Result<GroupElement, GroupError> {
        self.check_len(exponents.len())?;
        Ok(GroupElement(
            exponents
                .iter()
                .zip(&self.factors)
                .map(|(&e, &n)| e.rem_euclid(n as i64) as u32)
                .collect(),
        ))
    }

    /// Validates an already reduced tuple.
    pub fn check(&self, g: &GroupElement) -> Result<(), GroupError> {
        self.check_len(g.len())?;
        if g.0.iter().zip(&self.factors).any(|(&e, &n)| e >= n) {
            return Err(GroupError::NotReduced {
                element: g.clone(),
                factors: self.factors.clone(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.check(g).is_ok()
    }

    fn check_len(&self, len: usize) -> Result<(), GroupError> {
        if len != self.factors.len() {
            return Err(GroupError::ShapeMismatch {
                expected: self.factors.len(),
                found: len,
            });
        }
        Ok(())
    }

    /// The group law.
    pub fn compose(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.add(g, h))
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&self.factors)
                .map(|(&e, &n)| (n - e) % n)
                .collect(),
        )
    }

    /// Smallest `k ≥ 1` with `k·g = 0`.
    pub fn order_of(&self, g: &GroupElement) -> u64 {
        g.0.iter().zip(&self.factors).fold(1u64, |acc, (&e, &n)| {
            let n = n as u64;
            acc.lcm(&(n / n.gcd(&(e as u64))))
        })
    }

    /// `k·g`, with `k` possibly negative.
    pub fn power(&self, g: &GroupElement, k: i64) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&self.factors)
                .map(|(&e, &n)| ((e as i128 * k as i128).rem_euclid(n as i128)) as u32)
                .collect(),
        )
    }

    // Unchecked arithmetic for callers that already validated their inputs.
    pub(crate) fn add(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        debug_assert_eq!(g.len(), self.factors.len());
        debug_assert_eq!(h.len(), self.factors.len());
        GroupElement(
            g.0.iter()
                .zip(&h.0)
                .zip(&self.factors)
                .map(|((&a, &b), &n)| ((a as u64 + b as u64) % n as u64) as u32)
                .collect(),
        )
    }

    /// `h - g`, i.e. `g⁻¹h` multiplicatively.
    pub(crate) fn quotient(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.add(&self.inverse(g), h)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let order = self.order();
        (0..order).map(move |idx| self.element_at(idx))
    }

    /// The `idx`-th element in lexicographic order (last coordinate fastest).
    pub fn element_at(&self, mut idx: u64) -> GroupElement {
        let mut exps = vec![0u32; self.factors.len()];
        for (slot, &n) in exps.iter_mut().zip(&self.factors).rev() {
            *slot = (idx % n as u64) as u32;
            idx /= n as u64;
        }
        GroupElement(exps)
    }

    pub fn index_of(&self, g: &GroupElement) -> u64 {
        g.0.iter()
            .zip(&self.factors)
            .fold(0u64, |acc, (&e, &n)| acc * n as u64 + e as u64)
    }

    /// Whether a finite subset is a subgroup. Closure under the group law
    /// suffices for finite sets.
    pub fn is_subgroup(&self, set: &BTreeSet<GroupElement>) -> bool {
        if !set.contains(&self.identity()) {
            return false;
        }
        set.iter()
            .all(|g| set.iter().all(|h| set.contains(&self.add(g, h))))
    }

    /// Subgroup generated by the given elements.
    pub fn generated_subgroup(&self, gens: &[GroupElement]) -> BTreeSet<GroupElement> {
        let mut set = BTreeSet::from([self.identity()]);
        let mut frontier = vec![self.identity()];
        while let Some(g) = frontier.pop() {
            for s in gens {
                let next = self.add(&g, s);
                if set.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        set
    }

    /// The dual group, indexed by elements: `χ_a(g) = ζ_N^{Σ (N/nᵢ)·aᵢ·gᵢ}`.
    pub fn characters(&self) -> Vec<Character> {
        self.elements().map(|a| self.character(&a)).collect()
    }

    pub fn character(&self, a: &GroupElement) -> Character {
        Character {
            exponents: a.clone(),
            factors: self.factors.clone(),
            level: self.exponent(),
        }
    }
}

/// A multiplicative character of a finite abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    exponents: GroupElement,
    factors: Vec<u32>,
    level: u64,
}

impl Character {
    pub fn index(&self) -> &GroupElement {
        &self.exponents
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// The exponent `k` with `χ(g) = ζ_N^k`, `0 ≤ k < N`.
    pub fn exponent_at(&self, g: &GroupElement) -> u64 {
        let n = self.level;
        let total = self
            .exponents
            .0
            .iter()
            .zip(&g.0)
            .zip(&self.factors)
            .fold(0u128, |acc, ((&a, &x), &f)| {
                acc + (n / f as u64) as u128 * a as u128 * x as u128
            });
        (total % n as u128) as u64
    }

    pub fn eval(&self, g: &GroupElement) -> CycNumber {
        debug_assert_eq!(g.len(), self.factors.len());
        CycNumber::root_of_unity(self.level as i64, self.exponent_at(g) as i64)
            .expect("character level is positive")
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.0.iter().all(|&e| e == 0)
    }

    /// Pointwise inverse (complex conjugate) character.
    pub fn conjugate(&self) -> Character {
        Character {
            exponents: GroupElement(
                self.exponents
                    .0
                    .iter()
                    .zip(&self.factors)
                    .map(|(&e, &n)| (n - e) % n)
                    .collect(),
            ),
            factors: self.factors.clone(),
            level: self.level,
        }
    }
}
