use std::collections::BTreeMap;

use super::{GradedAlgebra, GradingError};
use crate::cyclotomic::CycNumber;
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::matrix::Matrix;

/// The 2-cocycle `α` of a homogeneous basis `{X_t}` of a fine grading,
/// defined by `X_t X_s = α(t,s) X_{ts}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    support: Vec<GroupElement>,
    values: BTreeMap<(GroupElement, GroupElement), CycNumber>,
}

impl Cocycle {
    /// Computes `α` from one basis matrix per support element. The support
    /// must be a subgroup of `group`.
    pub fn from_basis(
        group: &FiniteAbelianGroup,
        basis: &BTreeMap<GroupElement, Matrix>,
    ) -> Result<Self, GradingError> {
        let support: Vec<GroupElement> = basis.keys().cloned().collect();
        if !group.is_subgroup(&basis.keys().cloned().collect()) {
            return Err(GradingError::SupportNotSubgroup);
        }
        let mut values = BTreeMap::new();
        for (t, xt) in basis {
            for (s, xs) in basis {
                let product = xt * xs;
                let ts = group.add(t, s);
                let target = &basis[&ts];
                let inconsistent = || GradingError::CocycleInconsistent {
                    left: t.clone(),
                    right: s.clone(),
                };
                let (i, j) = target.support().next().ok_or_else(inconsistent)?;
                let alpha = product.get(i, j).checked_div(target.get(i, j))?;
                if alpha.is_zero() || target.scale(&alpha) != product {
                    return Err(inconsistent());
                }
                values.insert((t.clone(), s.clone()), alpha);
            }
        }
        Ok(Self { support, values })
    }

    pub fn support(&self) -> &[GroupElement] {
        &self.support
    }

    pub fn value(&self, t: &GroupElement, s: &GroupElement) -> Option<&CycNumber> {
        self.values.get(&(t.clone(), s.clone()))
    }

    pub fn values(&self) -> &BTreeMap<(GroupElement, GroupElement), CycNumber> {
        &self.values
    }

    /// Triples `(t,s,u)` where `α(t,s)α(ts,u) ≠ α(t,su)α(s,u)`.
    pub fn identity_violations(
        &self,
        group: &FiniteAbelianGroup,
    ) -> Vec<(GroupElement, GroupElement, GroupElement)> {
        let mut out = Vec::new();
        for t in &self.support {
            for s in &self.support {
                for u in &self.support {
                    let lhs = self.values[&(t.clone(), s.clone())].clone()
                        * self.values[&(group.add(t, s), u.clone())].clone();
                    let rhs = self.values[&(t.clone(), group.add(s, u))].clone()
                        * self.values[&(s.clone(), u.clone())].clone();
                    if lhs != rhs {
                        out.push((t.clone(), s.clone(), u.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn satisfies_identity(&self, group: &FiniteAbelianGroup) -> bool {
        self.identity_violations(group).is_empty()
    }

    /// `α(e,t) = α(t,e) = 1` for all `t`.
    pub fn is_normalized(&self, group: &FiniteAbelianGroup) -> bool {
        let e = group.identity();
        self.support.iter().all(|t| {
            self.value(&e, t).is_some_and(CycNumber::is_one)
                && self.value(t, &e).is_some_and(CycNumber::is_one)
        })
    }
}

impl GradedAlgebra {
    /// The cocycle of the stored basis of a fine grading whose support is a
    /// subgroup.
    pub fn extract_cocycle(&self) -> Result<Cocycle, GradingError> {
        if !self.is_fine() {
            return Err(GradingError::NotFine);
        }
        let basis = self
            .components()
            .iter()
            .map(|(g, b)| (g.clone(), b[0].clone()))
            .collect();
        Cocycle::from_basis(self.group(), &basis)
    }
}
