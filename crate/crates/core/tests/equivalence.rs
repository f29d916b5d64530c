use gmk_core::{
    build_isomorphism, decide_equivalence, exhaustive_monomial_oracle, graded_homomorphism_check, Beta,
    DefiningSequence, ElementaryTuple, FiniteAbelianGroup, GradedAlgebra, Multiplicity, Signature, Verdict,
};
use itertools::Itertools;
use proptest::prelude::*;

const GROUPS: &[&[i64]] = &[&[2], &[3], &[4], &[2, 2]];

/// Degrees `g_j − g_i` as exponent vectors, computed without the library.
fn unit_degrees(factors: &[u32], t: &[Vec<u32>]) -> Vec<Vec<Vec<u32>>> {
    t.iter()
        .map(|gi| {
            t.iter()
                .map(|gj| {
                    factors
                        .iter()
                        .zip(gi.iter().zip(gj))
                        .map(|(&n, (&a, &b))| (b + n - a) % n)
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Whether some relabeling of indices carries every `deg E_ij` to
/// `deg E′_{β(i)β(j)}`.
fn brute_force(factors: &[u32], t: &[Vec<u32>], tp: &[Vec<u32>]) -> bool {
    if t.len() != tp.len() {
        return false;
    }
    let (d, dp) = (unit_degrees(factors, t), unit_degrees(factors, tp));
    let n = t.len();
    (0..n)
        .permutations(n)
        .any(|b| (0..n).all(|i| (0..n).all(|j| d[i][j] == dp[b[i]][b[j]])))
}

fn to_tuple(g: &FiniteAbelianGroup, raw: &[Vec<u32>]) -> ElementaryTuple {
    ElementaryTuple(
        raw.iter()
            .map(|e| g.element(&e.iter().map(|&x| x as i64).collect::<Vec<_>>()).unwrap())
            .collect(),
    )
}

fn pair_strategy() -> impl Strategy<Value = (Vec<u32>, Vec<Vec<u32>>, Vec<Vec<u32>>)> {
    (prop::sample::select(GROUPS), 1usize..=5, any::<bool>()).prop_flat_map(|(factors, n, related)| {
        let factors: Vec<u32> = factors.iter().map(|&x| x as u32).collect();
        let element = factors.iter().map(|&k| 0..k).collect::<Vec<_>>();
        let tau = prop::collection::vec(element.clone(), n);
        let other = prop::collection::vec(element.clone(), n);
        (Just(factors), tau, other, element, any::<prop::sample::Index>()).prop_map(
            move |(factors, tau, other, shift, idx)| {
                let tau_prime = if related {
                    // A shifted permutation of τ, so positives are common.
                    let mut moved: Vec<Vec<u32>> = tau
                        .iter()
                        .map(|g| g.iter().zip(&shift).zip(&factors).map(|((a, b), n)| (a + b) % n).collect())
                        .collect();
                    let k = idx.index(moved.len());
                    moved.rotate_left(k);
                    moved
                } else {
                    other
                };
                (factors, tau, tau_prime)
            },
        )
    })
}

fn check_witness(g: &FiniteAbelianGroup, t: &ElementaryTuple, tp: &ElementaryTuple, verdict: &Verdict) {
    let Some(w) = verdict.witness() else { return };
    let Beta::Permutation { map } = &w.beta else {
        panic!("finite tuples give a permutation")
    };
    let iso = build_isomorphism(map);
    let source = GradedAlgebra::elementary(g, t.clone()).unwrap();
    let target = GradedAlgebra::elementary(g, tp.clone()).unwrap();
    assert!(graded_homomorphism_check(&iso, &source, &target).passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn decider_agrees_with_brute_force((factors, raw, raw_prime) in pair_strategy()) {
        let g = FiniteAbelianGroup::new(&factors.iter().map(|&x| x as i64).collect::<Vec<_>>()).unwrap();
        let (t, tp) = (to_tuple(&g, &raw), to_tuple(&g, &raw_prime));
        let verdict = decide_equivalence(&g, &DefiningSequence::Finite(t.clone()), &DefiningSequence::Finite(tp.clone()))
            .unwrap();
        let expected = brute_force(&factors, &raw, &raw_prime);
        prop_assert_eq!(verdict.is_equivalent(), expected);
        prop_assert_eq!(exhaustive_monomial_oracle(&g, &t, &tp).unwrap(), expected);
        check_witness(&g, &t, &tp, &verdict);
    }

    #[test]
    fn verdicts_ignore_translation_and_normalization((factors, raw, raw_prime) in pair_strategy(), a in any::<prop::sample::Index>()) {
        let g = FiniteAbelianGroup::new(&factors.iter().map(|&x| x as i64).collect::<Vec<_>>()).unwrap();
        let (t, tp) = (to_tuple(&g, &raw), to_tuple(&g, &raw_prime));
        let decide = |x: &ElementaryTuple, y: &ElementaryTuple| {
            decide_equivalence(&g, &DefiningSequence::Finite(x.clone()), &DefiningSequence::Finite(y.clone()))
                .unwrap()
                .is_equivalent()
        };
        let base = decide(&t, &tp);
        let shift = g.element_at(a.index(g.order() as usize) as u64);
        prop_assert!(decide(&t, &t.translate(&g, &shift)));
        prop_assert_eq!(decide(&t.translate(&g, &shift), &tp), base);
        // Translating so that g₁ = e changes nothing.
        let normalized = t.translate(&g, &g.inverse(t.get(0)));
        prop_assert_eq!(normalized.get(0), &g.identity());
        prop_assert_eq!(decide(&normalized, &tp), base);
        let mut reversed = t.clone();
        reversed.0.reverse();
        prop_assert_eq!(decide(&reversed, &tp), base);
    }
}

#[test]
fn all_small_pairs_agree_with_brute_force() {
    for factors in [vec![2u32], vec![2, 2]] {
        let g = FiniteAbelianGroup::new(&factors.iter().map(|&x| x as i64).collect::<Vec<_>>()).unwrap();
        let elements: Vec<Vec<u32>> = g.elements().map(|e| e.exponents().to_vec()).collect();
        for n in 1..=3 {
            let tuples: Vec<Vec<Vec<u32>>> = (0..n).map(|_| elements.clone()).multi_cartesian_product().collect();
            for raw in &tuples {
                for raw_prime in &tuples {
                    let (t, tp) = (to_tuple(&g, raw), to_tuple(&g, raw_prime));
                    let verdict =
                        decide_equivalence(&g, &DefiningSequence::Finite(t.clone()), &DefiningSequence::Finite(tp.clone()))
                            .unwrap();
                    assert_eq!(verdict.is_equivalent(), brute_force(&factors, raw, raw_prime), "{raw:?} {raw_prime:?}");
                    check_witness(&g, &t, &tp, &verdict);
                }
            }
        }
    }
}

#[test]
fn finitary_signatures_compare_with_omega() {
    let g = FiniteAbelianGroup::cyclic(3);
    let e = |k: i64| g.element(&[k]).unwrap();
    let finitary = |entries: &[(i64, Multiplicity)]| {
        DefiningSequence::Finitary(Signature::new(entries.iter().map(|&(k, m)| (e(k), m))))
    };
    let s = finitary(&[(0, Multiplicity::Omega), (1, Multiplicity::Finite(2))]);
    let shifted = finitary(&[(1, Multiplicity::Omega), (2, Multiplicity::Finite(2))]);
    let other = finitary(&[(1, Multiplicity::Omega), (2, Multiplicity::Omega)]);
    let verdict = decide_equivalence(&g, &s, &shifted).unwrap();
    assert_eq!(verdict.witness().unwrap().shift, e(1));
    let Beta::Pairing(pairing) = &verdict.witness().unwrap().beta else {
        panic!("finitary sequences give a class pairing")
    };
    let window = pairing.window(3);
    let iso = build_isomorphism(&window.beta);
    let source = GradedAlgebra::elementary(&g, window.source.clone()).unwrap();
    let target = GradedAlgebra::elementary(&g, window.target.clone()).unwrap();
    assert!(graded_homomorphism_check(&iso, &source, &target).passed());
    assert!(!decide_equivalence(&g, &s, &other).unwrap().is_equivalent());
}
