use num_traits::{One, Zero};
use proptest::prelude::*;

use super::rational::{integer, rational};
use super::*;
use crate::error::Error;
use crate::exec::Execution;

fn tr(degree: u32) -> Truncation {
    Truncation::new(degree, 6).unwrap()
}

fn mono(pairs: &[(u32, u32)]) -> Monomial {
    Monomial::from_exponents(pairs.iter().copied()).unwrap()
}

// (exponent pairs, (numerator, denominator))
type Terms<'a> = [(&'a [(u32, u32)], (i64, i64))];

fn series(degree: u32, terms: &Terms) -> Series {
    Series::from_terms(
        tr(degree),
        terms.iter().map(|(m, (n, d))| (mono(m), rational(*n, *d))),
    )
}

fn g(degree: u32, i: u32) -> Series {
    Series::var(tr(degree), i).unwrap()
}

#[test]
fn add_examples() {
    let one = Series::one(tr(3));
    let a = one.add(&g(3, 1)).unwrap();
    assert_eq!(a.add(&g(3, 1).neg()).unwrap(), one);

    let s = series(3, &[(&[(0, 1), (2, 1)], (3, 7)), (&[], (1, 1))]);
    assert_eq!(Series::zero(tr(3)).add(&s).unwrap(), s);

    let half = g(3, 1).scale(&rational(1, 2));
    assert_eq!(half.add(&half).unwrap(), g(3, 1));
}

#[test]
fn mismatched_truncations_are_rejected() {
    let a = g(2, 1);
    let b = g(3, 1);
    assert!(matches!(a.add(&b), Err(Error::Contract(_))));
    assert!(matches!(a.mul(&b), Err(Error::Contract(_))));
    let c = Series::var(Truncation::new(2, 5).unwrap(), 1).unwrap();
    assert!(matches!(a.mul(&c), Err(Error::Contract(_))));
}

#[test]
fn mul_examples() {
    assert_eq!(
        g(2, 1).mul(&g(2, 2)).unwrap(),
        series(2, &[(&[(1, 1), (2, 1)], (1, 1))])
    );
    assert!(g(1, 1).mul(&g(1, 1)).unwrap().is_zero());
    let one = Series::one(tr(2));
    let p = one.add(&g(2, 1)).unwrap();
    let m = one.sub(&g(2, 1)).unwrap();
    assert_eq!(
        p.mul(&m).unwrap(),
        series(2, &[(&[], (1, 1)), (&[(1, 2)], (-1, 1))])
    );
}

#[test]
fn scale_examples() {
    let s = series(2, &[(&[(0, 2)], (1, 1)), (&[(0, 1), (1, 1)], (1, 1))]);
    let expected = series(2, &[(&[(0, 2)], (1, 4)), (&[(0, 1), (1, 1)], (1, 2))]);
    assert_eq!(s.scale_var(0, &rational(1, 2)), expected);
    assert_eq!(s.scale_var(3, &integer(1)), s);
    assert_eq!(
        g(2, 1).scale(&integer(2)),
        series(2, &[(&[(1, 1)], (2, 1))])
    );
    assert!(g(2, 1).scale(&Rational::zero()).is_zero());
}

#[test]
fn exp0_examples() {
    assert_eq!(Series::zero(tr(3)).exp0().unwrap(), Series::one(tr(3)));
    // Taylor expansion of e^x truncated at x^2
    let e = g(2, 1).exp0().unwrap();
    assert_eq!(
        e,
        series(
            2,
            &[(&[], (1, 1)), (&[(1, 1)], (1, 1)), (&[(1, 2)], (1, 2))]
        )
    );
    assert_eq!(Series::one(tr(2)).exp0(), Err(Error::NonzeroConstant));
}

#[test]
fn exp0_of_g0_times_tree_head() {
    // exp(g0 * (1 + g1/2)) - 1 through degree 2 is g0 + g0 g1 / 2 + g0^2 / 2
    let head = Series::one(tr(2))
        .add(&g(2, 1).scale(&rational(1, 2)))
        .unwrap();
    let arg = g(2, 0).mul(&head).unwrap();
    let got = arg.exp0().unwrap().sub(&Series::one(tr(2))).unwrap();
    let expected = series(
        2,
        &[
            (&[(0, 1)], (1, 1)),
            (&[(0, 1), (1, 1)], (1, 2)),
            (&[(0, 2)], (1, 2)),
        ],
    );
    assert_eq!(got, expected);
}

#[test]
fn shift_examples() {
    let s = series(3, &[(&[(0, 1), (1, 2)], (1, 1))]);
    assert_eq!(s.shift(), series(3, &[(&[(1, 1), (2, 2)], (1, 1))]));
    assert_eq!(Series::one(tr(3)).shift(), Series::one(tr(3)));
    let s = series(3, &[(&[(1, 1)], (1, 2)), (&[], (1, 1))]);
    assert_eq!(s.shift(), series(3, &[(&[(2, 1)], (1, 2)), (&[], (1, 1))]));
    // the top variable falls off the cap
    assert!(g(3, 6).shift().is_zero());
}

#[test]
fn div_var_examples() {
    let s = g(3, 1)
        .add(&series(3, &[(&[(1, 2), (2, 1)], (1, 1))]))
        .unwrap();
    let expected = series(3, &[(&[], (1, 1)), (&[(1, 1), (2, 1)], (1, 1))]);
    assert_eq!(s.div_var(1).unwrap(), expected);

    let x = series(3, &[(&[(2, 1)], (1, 3)), (&[(0, 1)], (1, 1))]);
    let e = g(3, 1)
        .mul(&x)
        .unwrap()
        .exp0()
        .unwrap()
        .sub(&Series::one(tr(3)))
        .unwrap();
    assert!(e.div_var(1).is_ok());

    let bad = Series::one(tr(3)).add(&g(3, 1)).unwrap();
    assert!(matches!(
        bad.div_var(1),
        Err(Error::NotDivisible { index: 1, .. })
    ));
}

#[test]
fn coefficient_and_truncate() {
    let s = series(3, &[(&[(0, 1), (1, 1)], (1, 2))]);
    assert_eq!(s.coefficient(&mono(&[(0, 1), (1, 1)])), rational(1, 2));
    assert_eq!(s.coefficient(&mono(&[(4, 1)])), Rational::zero());

    let s = series(
        3,
        &[(&[], (1, 1)), (&[(1, 1)], (1, 1)), (&[(1, 2)], (1, 1))],
    );
    let t = s.truncate(1).unwrap();
    assert_eq!(t.truncation_degree(), 1);
    assert_eq!(t.len(), 2);
    assert!(matches!(s.truncate(4), Err(Error::Contract(_))));
}

#[test]
fn json_round_trip() {
    let s = series(3, &[(&[(0, 2), (1, 1)], (-3, 8)), (&[], (1, 1))]);
    let v = s.to_json();
    let obj = v.as_object().unwrap();
    let keys: Vec<_> = obj.keys().cloned().collect();
    assert_eq!(keys, vec!["1".to_string(), "g0^2*g1".to_string()]);
    assert_eq!(obj["g0^2*g1"], "-3/8");
    assert_eq!(Series::from_json(s.truncation(), &v).unwrap(), s);
}

#[test]
fn sequential_and_parallel_products_agree() {
    let a = arb_like(5, 11);
    let b = arb_like(5, 29);
    assert_eq!(
        a.mul_with(&b, Execution::Sequential).unwrap(),
        a.mul_with(&b, Execution::Parallel).unwrap()
    );
}

// deterministic pseudo-random dense series, enough terms to spill over
// several parallel chunks
fn arb_like(degree: u32, seed: i64) -> Series {
    let mut terms = Vec::new();
    let mut x = seed;
    for e0 in 0..=degree {
        for e1 in 0..=degree - e0 {
            for e2 in 0..=degree - e0 - e1 {
                for e3 in 0..=degree - e0 - e1 - e2 {
                    x = (x * 1103 + 12345) % 1009;
                    let m = mono(&[(0, e0), (1, e1), (2, e2), (3, e3)]);
                    terms.push((m, rational(x - 500, 1 + (x % 7))));
                }
            }
        }
    }
    Series::from_terms(tr(degree), terms)
}

fn is_canonical(s: &Series) -> bool {
    let t = s.terms();
    t.windows(2).all(|w| w[0].0 < w[1].0)
        && t.iter().all(|(m, c)| {
            !c.is_zero() && c.denom() > &num_bigint::BigInt::zero() && s.truncation().admits(m)
        })
}

const D: u32 = 4;

fn arb_series(zero_constant: bool) -> impl Strategy<Value = Series> {
    let term = (
        prop::collection::vec((0u32..=4, 1u32..=2), 0..3),
        -6i64..=6,
        1i64..=4,
    );
    prop::collection::vec(term, 0..7).prop_map(move |raw| {
        Series::from_terms(
            tr(D),
            raw.into_iter()
                .map(|(pairs, n, d)| (Monomial::from_exponents(pairs).unwrap(), rational(n, d)))
                .filter(|(m, _)| !(zero_constant && m.is_one())),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in arb_series(false), b in arb_series(false), c in arb_series(false)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        let one = Series::one(tr(D));
        prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
        prop_assert!(is_canonical(&a.mul(&b).unwrap()));
        prop_assert!(is_canonical(&a.sub(&b).unwrap()));
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn exp_turns_sums_into_products(a in arb_series(true), b in arb_series(true)) {
        let lhs = a.add(&b).unwrap().exp0().unwrap();
        let rhs = a.exp0().unwrap().mul(&b.exp0().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shift_is_a_ring_homomorphism(a in arb_series(false), b in arb_series(false)) {
        prop_assert_eq!(a.mul(&b).unwrap().shift(), a.shift().mul(&b.shift()).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().shift(), a.shift().add(&b.shift()).unwrap());
        prop_assert!(is_canonical(&a.shift()));
    }

    #[test]
    fn div_var_inverts_mul_by_var(s in arb_series(false), i in 0u32..=4) {
        let low = s.truncate(D - 1).unwrap();
        let low = Series::from_terms(tr(D), low.terms().iter().cloned());
        let x = Series::var(tr(D), i).unwrap();
        prop_assert_eq!(x.mul(&low).unwrap().div_var(i).unwrap(), low);
    }

    #[test]
    fn scale_var_by_one_is_identity(s in arb_series(false), i in 0u32..=4) {
        prop_assert_eq!(s.scale_var(i, &Rational::one()), s);
    }
}
