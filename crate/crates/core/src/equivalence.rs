//! Deciding isomorphism of elementary gradings through their counting
//! functions, and building the explicit graded isomorphism.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graded::{ElementaryTuple, LinearMap};
use crate::group::{FiniteAbelianGroup, GroupElement, GroupError};
use crate::matrix::Matrix;

/// Largest size accepted by [`exhaustive_monomial_oracle`].
pub const ORACLE_MAX_SIZE: usize = 6;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EquivalenceError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("signatures do not match under shift {shift}")]
    SignatureMismatch { shift: GroupElement },
    #[error("exhaustive search is limited to n <= {ORACLE_MAX_SIZE}, got {0}")]
    TooLarge(usize),
    #[error("a permutation needs two finite defining sequences")]
    NotFinite,
}

/// A count in `N ∪ {ω}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Omega,
}

impl Multiplicity {
    pub fn is_zero(self) -> bool {
        self == Multiplicity::Finite(0)
    }

    pub fn is_omega(self) -> bool {
        self == Multiplicity::Omega
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(k) => Some(k),
            Multiplicity::Omega => None,
        }
    }

    /// `min(self, k)`.
    pub fn truncate(self, k: u64) -> u64 {
        match self {
            Multiplicity::Finite(c) => c.min(k),
            Multiplicity::Omega => k,
        }
    }
}

impl std::ops::Add for Multiplicity {
    type Output = Multiplicity;

    fn add(self, rhs: Multiplicity) -> Multiplicity {
        match (self, rhs) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => Multiplicity::Finite(a + b),
            _ => Multiplicity::Omega,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(k) => write!(f, "{k}"),
            Multiplicity::Omega => write!(f, "omega"),
        }
    }
}

/// Finite counts serialize as numbers, `ω` as the string `"omega"`.
impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(k) => serializer.serialize_u64(*k),
            Multiplicity::Omega => serializer.serialize_str("omega"),
        }
    }
}

impl<'de> Deserialize<'de> for Multiplicity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(u64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Count(k) => Ok(Multiplicity::Finite(k)),
            Raw::Text(s) if s == "omega" || s == "ω" => Ok(Multiplicity::Omega),
            Raw::Text(s) => Err(serde::de::Error::custom(format!(
                "expected a count or \"omega\", found {s:?}"
            ))),
        }
    }
}

/// The counting function `S(g)` of a defining sequence. Zero counts are not
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    counts: BTreeMap<GroupElement, Multiplicity>,
}

impl Signature {
    pub fn new(counts: impl IntoIterator<Item = (GroupElement, Multiplicity)>) -> Self {
        let mut out = Self::default();
        for (g, m) in counts {
            out.add(g, m);
        }
        out
    }

    pub fn add(&mut self, g: GroupElement, m: Multiplicity) {
        if m.is_zero() {
            return;
        }
        let slot = self.counts.entry(g).or_insert(Multiplicity::Finite(0));
        *slot = *slot + m;
    }

    pub fn get(&self, g: &GroupElement) -> Multiplicity {
        self.counts.get(g).copied().unwrap_or(Multiplicity::Finite(0))
    }

    pub fn counts(&self) -> &BTreeMap<GroupElement, Multiplicity> {
        &self.counts
    }

    pub fn is_finite(&self) -> bool {
        self.counts.values().all(|m| !m.is_omega())
    }

    /// `Σ_g S(g)`.
    pub fn total(&self) -> Multiplicity {
        self.counts.values().fold(Multiplicity::Finite(0), |acc, &m| acc + m)
    }

    /// `g ↦ S(g₀⁻¹g)`, the signature of the translated sequence `g₀·τ`.
    pub fn translate(&self, group: &FiniteAbelianGroup, g0: &GroupElement) -> Signature {
        Signature {
            counts: self
                .counts
                .iter()
                .map(|(g, &m)| (group.add(g0, g), m))
                .collect(),
        }
    }

    /// `S(g) = other(g₀·g)` for every `g`.
    pub fn matches_under_shift(&self, other: &Signature, group: &FiniteAbelianGroup, g0: &GroupElement) -> bool {
        self.counts.len() == other.counts.len()
            && self.counts.iter().all(|(g, &m)| other.get(&group.add(g0, g)) == m)
    }
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.counts.len()))?;
        for (g, m) in &self.counts {
            seq.serialize_element(&SignatureEntry {
                element: g.clone(),
                count: *m,
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let entries = Vec::<SignatureEntry>::deserialize(deserializer)?;
        Ok(Signature::new(entries.into_iter().map(|e| (e.element, e.count))))
    }
}

#[derive(Serialize, Deserialize)]
struct SignatureEntry {
    element: GroupElement,
    count: Multiplicity,
}

/// A finite tuple `τ` or the counting form of a finitary sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DefiningSequence {
    Finite(ElementaryTuple),
    Finitary(Signature),
}

impl DefiningSequence {
    pub fn signature(&self) -> Signature {
        match self {
            DefiningSequence::Finite(t) => signature_of(t),
            DefiningSequence::Finitary(s) => s.clone(),
        }
    }

    pub fn check(&self, group: &FiniteAbelianGroup) -> Result<(), GroupError> {
        let elements: Vec<&GroupElement> = match self {
            DefiningSequence::Finite(t) => t.degrees().iter().collect(),
            DefiningSequence::Finitary(s) => s.counts.keys().collect(),
        };
        elements.into_iter().try_for_each(|g| group.check(g))
    }
}

pub fn signature_of(tuple: &ElementaryTuple) -> Signature {
    let mut s = Signature::default();
    for g in tuple.degrees() {
        s.add(g.clone(), Multiplicity::Finite(1));
    }
    s
}

/// The canonical pairing of finitary index sets: the `k`-th index of the
/// class of `g` goes to the `k`-th index of the class of `g₀·g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassPairing {
    pub shift: GroupElement,
    pub classes: Vec<PairedClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairedClass {
    pub source: GroupElement,
    pub target: GroupElement,
    pub count: Multiplicity,
}

/// A finite window of a class pairing: two tuples and the permutation
/// between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingWindow {
    pub source: ElementaryTuple,
    pub target: ElementaryTuple,
    pub beta: Vec<usize>,
}

impl ClassPairing {
    /// `(g, k) ↦ (g₀·g, k)`; `None` when `k` exceeds the class size.
    pub fn image(&self, g: &GroupElement, k: u64) -> Option<(GroupElement, u64)> {
        let class = self.classes.iter().find(|c| &c.source == g)?;
        match class.count {
            Multiplicity::Finite(c) if k >= c => None,
            _ => Some((class.target.clone(), k)),
        }
    }

    /// Keeps at most `per_class` indices of every class. Source indices are
    /// laid out class by class in label order, target indices likewise.
    pub fn window(&self, per_class: u64) -> PairingWindow {
        let sizes: Vec<usize> = self.classes.iter().map(|c| c.count.truncate(per_class) as usize).collect();
        let mut source = Vec::new();
        for (c, &k) in self.classes.iter().zip(&sizes) {
            source.extend(std::iter::repeat_n(c.source.clone(), k));
        }
        let mut by_target: Vec<usize> = (0..self.classes.len()).collect();
        by_target.sort_by(|&a, &b| self.classes[a].target.cmp(&self.classes[b].target));
        let mut target = Vec::new();
        let mut target_offset = vec![0; self.classes.len()];
        for &ci in &by_target {
            target_offset[ci] = target.len();
            target.extend(std::iter::repeat_n(self.classes[ci].target.clone(), sizes[ci]));
        }
        let mut beta = Vec::with_capacity(source.len());
        for (ci, &k) in sizes.iter().enumerate() {
            beta.extend((0..k).map(|j| target_offset[ci] + j));
        }
        PairingWindow {
            source: ElementaryTuple(source),
            target: ElementaryTuple(target),
            beta,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Beta {
    /// `beta[i]` is the zero-based image of index `i`.
    Permutation { map: Vec<usize> },
    Pairing(ClassPairing),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceWitness {
    pub shift: GroupElement,
    pub beta: Beta,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equivalent(EquivalenceWitness),
    NotEquivalent,
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent(_))
    }

    pub fn witness(&self) -> Option<&EquivalenceWitness> {
        match self {
            Verdict::Equivalent(w) => Some(w),
            Verdict::NotEquivalent => None,
        }
    }
}

/// The lexicographically first `g₀` with `S_τ(g) = S_τ′(g₀·g)` for all `g`.
pub fn find_shift(group: &FiniteAbelianGroup, s: &Signature, s_prime: &Signature) -> Option<GroupElement> {
    group.elements().find(|g0| s.matches_under_shift(s_prime, group, g0))
}

pub fn decide_equivalence(
    group: &FiniteAbelianGroup,
    tau: &DefiningSequence,
    tau_prime: &DefiningSequence,
) -> Result<Verdict, EquivalenceError> {
    tau.check(group)?;
    tau_prime.check(group)?;
    let (s, s_prime) = (tau.signature(), tau_prime.signature());
    let Some(shift) = find_shift(group, &s, &s_prime) else {
        return Ok(Verdict::NotEquivalent);
    };
    let beta = match (tau, tau_prime) {
        (DefiningSequence::Finite(t), DefiningSequence::Finite(tp)) => Beta::Permutation {
            map: construct_beta(group, t, tp, &shift)?,
        },
        _ => Beta::Pairing(ClassPairing {
            classes: s
                .counts
                .iter()
                .map(|(g, &count)| PairedClass {
                    source: g.clone(),
                    target: group.add(&shift, g),
                    count,
                })
                .collect(),
            shift: shift.clone(),
        }),
    };
    Ok(Verdict::Equivalent(EquivalenceWitness { shift, beta }))
}

/// Class-wise `k`-th to `k`-th pairing of indices; `β(i)` has degree
/// `g₀·g_i` in `τ′`.
pub fn construct_beta(
    group: &FiniteAbelianGroup,
    tau: &ElementaryTuple,
    tau_prime: &ElementaryTuple,
    shift: &GroupElement,
) -> Result<Vec<usize>, EquivalenceError> {
    let mismatch = || EquivalenceError::SignatureMismatch { shift: shift.clone() };
    if !signature_of(tau).matches_under_shift(&signature_of(tau_prime), group, shift) {
        return Err(mismatch());
    }
    let mut classes: BTreeMap<&GroupElement, std::vec::IntoIter<usize>> = tau_prime
        .degrees()
        .iter()
        .enumerate()
        .into_group_map_by(|(_, g)| *g)
        .into_iter()
        .map(|(g, idx)| (g, idx.into_iter().map(|(i, _)| i).collect::<Vec<_>>().into_iter()))
        .collect();
    tau.degrees()
        .iter()
        .map(|g| {
            let target = group.add(shift, g);
            classes.get_mut(&target).and_then(Iterator::next).ok_or_else(mismatch)
        })
        .collect()
}

/// `E_ij ↦ E_{β(i)β(j)}`.
pub fn build_isomorphism(beta: &[usize]) -> LinearMap {
    let n = beta.len();
    let images = (0..n * n).map(|k| Matrix::unit(n, beta[k / n], beta[k % n])).collect();
    LinearMap::on_units(n, images)
}

/// Tries every bijection `β` and reports whether one makes
/// `E_ij ↦ E_{β(i)β(j)}` degree preserving.
pub fn exhaustive_monomial_oracle(
    group: &FiniteAbelianGroup,
    tau: &ElementaryTuple,
    tau_prime: &ElementaryTuple,
) -> Result<bool, EquivalenceError> {
    let n = tau.len();
    if n > ORACLE_MAX_SIZE || tau_prime.len() > ORACLE_MAX_SIZE {
        return Err(EquivalenceError::TooLarge(n.max(tau_prime.len())));
    }
    if n != tau_prime.len() {
        return Ok(false);
    }
    Ok((0..n).permutations(n).any(|beta| {
        (0..n).all(|i| {
            (0..n).all(|j| tau.unit_degree(group, i, j) == tau_prime.unit_degree(group, beta[i], beta[j]))
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{graded_homomorphism_check, GradedAlgebra};

    fn z2() -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(2)
    }

    fn tuple(group: &FiniteAbelianGroup, xs: &[i64]) -> ElementaryTuple {
        ElementaryTuple(xs.iter().map(|&x| group.element(&[x]).unwrap()).collect())
    }

    fn finite(group: &FiniteAbelianGroup, xs: &[i64]) -> DefiningSequence {
        DefiningSequence::Finite(tuple(group, xs))
    }

    #[test]
    fn signatures() {
        let g = z2();
        let (e, a) = (g.identity(), g.element(&[1]).unwrap());
        let s = signature_of(&tuple(&g, &[0, 1]));
        assert_eq!(s.get(&e), Multiplicity::Finite(1));
        assert_eq!(s.get(&a), Multiplicity::Finite(1));
        let s = signature_of(&tuple(&g, &[0, 0, 0]));
        assert_eq!(s.counts().len(), 1);
        assert_eq!(s.get(&e), Multiplicity::Finite(3));
        let inf = Signature::new([(e, Multiplicity::Omega), (a, Multiplicity::Omega)]);
        assert_eq!(DefiningSequence::Finitary(inf.clone()).signature(), inf);
        assert_eq!(inf.total(), Multiplicity::Omega);
    }

    #[test]
    fn swapped_pair_is_equivalent_with_identity_shift() {
        let g = z2();
        let verdict = decide_equivalence(&g, &finite(&g, &[0, 1]), &finite(&g, &[1, 0])).unwrap();
        let w = verdict.witness().unwrap();
        assert_eq!(w.shift, g.identity());
        assert_eq!(w.beta, Beta::Permutation { map: vec![1, 0] });
    }

    #[test]
    fn mismatched_counts_are_not_equivalent() {
        let g = z2();
        let verdict = decide_equivalence(&g, &finite(&g, &[0, 1]), &finite(&g, &[0, 0])).unwrap();
        assert_eq!(verdict, Verdict::NotEquivalent);
        assert!(!exhaustive_monomial_oracle(&g, &tuple(&g, &[0, 1]), &tuple(&g, &[0, 0])).unwrap());
    }

    #[test]
    fn translated_tuple_needs_shift() {
        let g = FiniteAbelianGroup::cyclic(3);
        let verdict = decide_equivalence(&g, &finite(&g, &[0, 0, 1]), &finite(&g, &[2, 2, 0])).unwrap();
        assert_eq!(verdict.witness().unwrap().shift, g.element(&[2]).unwrap());
    }

    #[test]
    fn beta_examples() {
        let g = z2();
        let e = g.identity();
        let id = construct_beta(&g, &tuple(&g, &[0, 1]), &tuple(&g, &[0, 1]), &e).unwrap();
        assert_eq!(id, vec![0, 1]);
        let beta = construct_beta(&g, &tuple(&g, &[0, 1, 0]), &tuple(&g, &[1, 0, 0]), &e).unwrap();
        assert_eq!(beta, vec![1, 0, 2]);
        let err = construct_beta(&g, &tuple(&g, &[0, 1]), &tuple(&g, &[0, 0]), &e).unwrap_err();
        assert_eq!(err, EquivalenceError::SignatureMismatch { shift: e });
    }

    #[test]
    fn isomorphism_is_graded() {
        let g = z2();
        let (t, tp) = (tuple(&g, &[0, 1]), tuple(&g, &[1, 0]));
        let beta = construct_beta(&g, &t, &tp, &g.identity()).unwrap();
        let f = build_isomorphism(&beta);
        let source = GradedAlgebra::elementary(&g, t).unwrap();
        let target = GradedAlgebra::elementary(&g, tp).unwrap();
        assert!(graded_homomorphism_check(&f, &source, &target).passed());
    }

    #[test]
    fn finitary_pairing_swaps_classes() {
        let g = z2();
        let (e, a) = (g.identity(), g.element(&[1]).unwrap());
        let s = DefiningSequence::Finitary(Signature::new([
            (e.clone(), Multiplicity::Omega),
            (a.clone(), Multiplicity::Omega),
        ]));
        let verdict = decide_equivalence(&g, &s, &s).unwrap();
        assert_eq!(verdict.witness().unwrap().shift, e);
        let Beta::Pairing(p) = &verdict.witness().unwrap().beta else {
            panic!("expected a class pairing");
        };
        let shifted = ClassPairing {
            shift: a.clone(),
            classes: p
                .classes
                .iter()
                .map(|c| PairedClass {
                    target: g.add(&a, &c.source),
                    ..c.clone()
                })
                .collect(),
        };
        assert_eq!(shifted.image(&e, 7), Some((a.clone(), 7)));
        assert_eq!(shifted.image(&a, 0), Some((e.clone(), 0)));
        let w = shifted.window(2);
        assert_eq!(w.beta, vec![2, 3, 0, 1]);
        let source = GradedAlgebra::elementary(&g, w.source).unwrap();
        let target = GradedAlgebra::elementary(&g, w.target).unwrap();
        assert!(graded_homomorphism_check(&build_isomorphism(&w.beta), &source, &target).passed());
    }

    #[test]
    fn finite_and_omega_differ() {
        let g = z2();
        let e = g.identity();
        let inf = DefiningSequence::Finitary(Signature::new([(e.clone(), Multiplicity::Omega)]));
        let fin = DefiningSequence::Finitary(Signature::new([(e, Multiplicity::Finite(5))]));
        assert_eq!(decide_equivalence(&g, &inf, &fin).unwrap(), Verdict::NotEquivalent);
    }

    #[test]
    fn oracle_limits() {
        let g = z2();
        let big = tuple(&g, &[0; 7]);
        assert_eq!(exhaustive_monomial_oracle(&g, &big, &big), Err(EquivalenceError::TooLarge(7)));
        let t = tuple(&g, &[0, 1, 1]);
        assert!(exhaustive_monomial_oracle(&g, &t, &t).unwrap());
    }

    #[test]
    fn multiplicity_json() {
        let s: Vec<Multiplicity> = serde_json::from_str(r#"[3, "omega"]"#).unwrap();
        assert_eq!(s, vec![Multiplicity::Finite(3), Multiplicity::Omega]);
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"[3,"omega"]"#);
        assert!(serde_json::from_str::<Multiplicity>(r#""many""#).is_err());
    }
}
