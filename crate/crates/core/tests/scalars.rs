use gmk_core::CycNumber;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

const LEVELS: &[u64] = &[1, 2, 3, 4, 5, 6, 8, 12];

/// Floating point evaluation `Σ c_k e^{2πik/N}`, independent of the exact
/// reduction.
fn approx(x: &CycNumber) -> (f64, f64) {
    let n = x.level() as f64;
    x.coeffs().iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
        let c = c.to_f64().unwrap();
        let t = std::f64::consts::TAU * k as f64 / n;
        (re + c * t.cos(), im + c * t.sin())
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-6 && (a.1 - b.1).abs() < 1e-6
}

fn cyc() -> impl Strategy<Value = CycNumber> {
    (prop::sample::select(LEVELS), prop::collection::vec((-4i64..=4, 1i64..=3), 0..8)).prop_map(|(level, cs)| {
        let coeffs = cs
            .into_iter()
            .map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
            .collect();
        CycNumber::from_coefficients(level, coeffs).unwrap()
    })
}

proptest! {
    #[test]
    fn ring_operations_match_numeric_values(a in cyc(), b in cyc()) {
        let (x, y) = (approx(&a), approx(&b));
        prop_assert!(close(approx(&(&a + &b)), (x.0 + y.0, x.1 + y.1)));
        prop_assert!(close(approx(&(&a - &b)), (x.0 - y.0, x.1 - y.1)));
        prop_assert!(close(approx(&(&a * &b)), (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)));
    }

    #[test]
    fn multiplication_is_associative_and_distributive(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn nonzero_numbers_are_invertible(a in cyc()) {
        if a.is_zero() {
            prop_assert!(a.inv().is_err());
        } else {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn text_form_round_trips(a in cyc()) {
        let text = a.to_string();
        let back: CycNumber = text.parse().unwrap();
        prop_assert_eq!(&back, &a);
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<CycNumber>(&json).unwrap(), a);
    }

    #[test]
    fn lifting_preserves_the_value(a in cyc(), factor in 1u64..=3) {
        let lifted = a.lift_level(a.level() * factor).unwrap();
        prop_assert!(close(approx(&lifted), approx(&a)));
        prop_assert_eq!(lifted, a);
    }
}

#[test]
fn roots_of_unity_have_the_right_order() {
    for &n in LEVELS {
        let z = CycNumber::root_of_unity(n as i64, 1).unwrap();
        assert!(z.pow(n as i64).unwrap().is_one());
        for k in 1..n as i64 {
            assert!(!z.pow(k).unwrap().is_one(), "ζ_{n}^{k}");
        }
        let sum = (0..n as i64).fold(CycNumber::zero(), |acc, k| &acc + &z.pow(k).unwrap());
        assert_eq!(sum.is_zero(), n > 1);
    }
}
