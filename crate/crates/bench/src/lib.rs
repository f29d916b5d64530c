//! Fixtures shared by the benchmarks.

use gmk_core::{ChainSpec, ChainStep, ElementaryTuple, FiniteAbelianGroup, GroupElement};

/// `(g_0, g_1, …)` cycling through the elements of `group` in enumeration
/// order until `n` degrees are filled.
pub fn cycling_tuple(group: &FiniteAbelianGroup, n: usize) -> ElementaryTuple {
    let elements: Vec<GroupElement> = group.elements().collect();
    ElementaryTuple((0..n).map(|i| elements[i % elements.len()].clone()).collect())
}

/// The tuple reversed and translated by the last element of the group, so it
/// is equivalent to the input.
pub fn shuffled_translate(group: &FiniteAbelianGroup, tuple: &ElementaryTuple) -> ElementaryTuple {
    let shift = group.element_at(group.order() - 1);
    let mut out = tuple.translate(group, &shift);
    out.0.reverse();
    out
}

/// Alternating doubling and twisting over `Z_2` starting from `(e, a)`.
pub fn mixed_chain() -> ChainSpec {
    let group = FiniteAbelianGroup::cyclic(2);
    let a = group.element(&[1]).expect("a is in Z2");
    ChainSpec {
        base: ElementaryTuple(vec![group.identity(), a.clone()]),
        steps: vec![ChainStep::Double, ChainStep::Twist { a }],
        group,
    }
}
