//! Property tests for the exact-arithmetic substrate and the model
//! invariants that hold for every object of a family.

use num_bigint::BigInt;
use num_rational::BigRational;
use polybern_core::callan::{self, Color};
use polybern_core::poly::{Poly, RatPoly};
use polybern_core::series::BiSeries;
use polybern_core::{excedance, oracle, tableaux, trees};
use proptest::prelude::*;

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-50i64..50, 0..6).prop_map(|cs| Poly::from_i64_coeffs(&cs))
}

fn ratpoly_strategy() -> impl Strategy<Value = RatPoly> {
    prop::collection::vec((-9i64..9, 1i64..5), 0..3).prop_map(|cs| {
        RatPoly::from_coeffs(
            cs.into_iter()
                .map(|(num, den)| BigRational::new(BigInt::from(num), BigInt::from(den)))
                .collect(),
        )
    })
}

fn biseries_strategy(order: usize) -> impl Strategy<Value = BiSeries> {
    prop::collection::vec(ratpoly_strategy(), (order + 1) * (order + 1)).prop_map(move |entries| {
        let mut it = entries.into_iter();
        BiSeries::from_fn(order, order, |_, _| it.next().unwrap())
    })
}

proptest! {
    #[test]
    fn poly_mul_commutes_and_associates(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn poly_mul_distributes(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn eval_is_a_ring_homomorphism(a in poly_strategy(), b in poly_strategy(), v in -20i64..20) {
        let v = BigInt::from(v);
        prop_assert_eq!((&a * &b).eval(&v), a.eval(&v) * b.eval(&v));
        prop_assert_eq!((&a + &b).eval(&v), a.eval(&v) + b.eval(&v));
    }

    /// Independent oracle for the truncated product: the plain double-sum
    /// convolution computed coefficient by coefficient.
    #[test]
    fn bs_mul_matches_naive_convolution(a in biseries_strategy(4), b in biseries_strategy(4)) {
        let got = a.mul(&b).unwrap();
        for i in 0..=4usize {
            for j in 0..=4usize {
                let mut want = RatPoly::zero();
                for p in 0..=i {
                    for q in 0..=j {
                        want = &want + &(a.get(p, q) * b.get(i - p, j - q));
                    }
                }
                prop_assert_eq!(got.get(i, j), &want);
            }
        }
    }
}

#[test]
fn counts_match_the_closed_form_at_one() {
    for n in 0..=3usize {
        for k in 0..=3usize {
            let expected = oracle::spb_formula(n, k).eval_i64(1);
            assert_eq!(BigInt::from(callan::enumerate(n, k).len()), expected);
            assert_eq!(BigInt::from(tableaux::enumerate_alt(n, k).len()), expected);
            assert_eq!(BigInt::from(tableaux::enumerate_packed(n, k).len()), expected);
            assert_eq!(BigInt::from(trees::enumerate(n, k).len()), expected);
            assert_eq!(BigInt::from(excedance::enumerate(n, k).len()), expected);
        }
    }
}

#[test]
fn callan_weight_bounds() {
    for (n, k) in [(3, 2), (2, 3), (3, 3)] {
        for p in callan::enumerate(n, k) {
            let rs = callan::runs(p.s1());
            let paired_blue = rs
                .iter()
                .enumerate()
                .filter(|(i, r)| r.color == Color::Blue && i + 1 < rs.len())
                .count();
            assert!(p.weight_lr() <= paired_blue, "{p}");
            // weight_rl never underflows: the rightmost blue-run maximum is
            // always a right-to-left maximum
            let _ = p.weight_rl();
        }
    }
}

#[test]
fn enumeration_is_deterministic_and_duplicate_free() {
    let a = callan::enumerate(3, 2);
    let b = callan::enumerate(3, 2);
    assert_eq!(a, b);
    let mut c = a.clone();
    c.dedup();
    assert_eq!(a.len(), c.len());
}
