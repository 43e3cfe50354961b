//! Property tests against independent oracles.

use std::collections::BTreeMap;

use num_rational::BigRational;
use proptest::prelude::*;

use localvertex::coeff::rat;
use localvertex::partitions::{enumerate, Partition};
use localvertex::qfield::QRat;
use localvertex::rationality::{weyl_reflect, WeylClass};
use localvertex::series::{expand_rational, polylog_neg, polylog_series, RSeries, Series};
use localvertex::symmfun::{schur_principal, schur_principal_jt, w_two};
use localvertex::vertex::{s_closed, s_direct};

/// Partition counts by the coin-change recurrence, independent of the enumerator.
fn partition_counts(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for k in part..=n {
            p[k] += p[k - part];
        }
    }
    p
}

#[test]
fn enumeration_counts_match_recurrence() {
    let counts = partition_counts(20);
    for (n, &count) in counts.iter().enumerate() {
        let ps = enumerate(n as u32);
        assert_eq!(ps.len() as u64, count, "n = {n}");
        assert!(ps.iter().all(|p| p.size() == n as u64));
        let mut sorted = ps.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ps.len(), "duplicates at n = {n}");
    }
}

#[test]
fn kappa_is_even_and_odd_under_conjugation() {
    for n in 0..=12 {
        for p in enumerate(n) {
            assert_eq!(p.kappa() % 2, 0, "{p}");
            assert_eq!(p.conjugate().kappa(), -p.kappa(), "{p}");
            assert_eq!(p.conjugate().conjugate(), p);
        }
    }
}

#[test]
fn negative_polylogs_are_symmetric_and_expand_correctly() {
    for n in 1..=10u32 {
        let f = polylog_neg(n).unwrap();
        if n >= 2 {
            let want = if n % 2 == 0 { f.clone() } else { f.neg() };
            assert_eq!(f.invert_t(), want, "Li_(1-{n})");
        }
        let expanded: RSeries = expand_rational(&f, 12);
        assert_eq!(expanded, polylog_series(1 - n as i64, 12), "Li_(1-{n})");
    }
}

fn arb_partition(max: u32) -> impl Strategy<Value = Partition> {
    (0..=max).prop_flat_map(|n| {
        let all = enumerate(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn arb_laurent() -> impl Strategy<Value = QRat> {
    (-3i64..=3, prop::collection::vec(-4i64..=4, 1..5)).prop_map(|(off, c)| QRat::laurent_i64(off, &c))
}

fn arb_qrat() -> impl Strategy<Value = QRat> {
    (arb_laurent(), arb_laurent())
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| n.div(&d).unwrap())
}

fn arb_rseries(order: i64) -> impl Strategy<Value = RSeries> {
    prop::collection::btree_map(1..=order, (-5i64..=5, 1i64..=4), 0..5).prop_map(move |m: BTreeMap<i64, (i64, i64)>| {
        Series::from_coeffs(m.into_iter().map(|(k, (a, b))| (k, rat(a, b))), order)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qrat_field_axioms(a in arb_qrat(), b in arb_qrat(), c in arb_qrat()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
        }
    }

    #[test]
    fn qrat_canonical_form_is_unique(n in arb_laurent(), d in arb_laurent(), k in arb_laurent()) {
        prop_assume!(!d.is_zero() && !k.is_zero());
        // The same value built two ways must be structurally identical.
        let direct = n.div(&d).unwrap();
        let scaled = n.mul(&k).div(&d.mul(&k)).unwrap();
        prop_assert_eq!(direct, scaled);
    }

    #[test]
    fn invert_t_is_an_involutive_automorphism(a in arb_qrat(), b in arb_qrat()) {
        prop_assert_eq!(a.invert_t().invert_t(), a.clone());
        prop_assert_eq!(a.mul(&b).invert_t(), a.invert_t().mul(&b.invert_t()));
        prop_assert_eq!(a.add(&b).invert_t(), a.invert_t().add(&b.invert_t()));
    }

    #[test]
    fn exp_and_log_are_inverse(s in arb_rseries(7)) {
        let e = s.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), s.clone());
        let one_plus = Series::<BigRational>::one(7).add(&s);
        prop_assert_eq!(one_plus.log().unwrap().exp().unwrap(), one_plus);
    }

    #[test]
    fn weyl_reflection_is_an_involution(r_s in 0i64..=4, r in -3i64..=3, m in 0i64..=5, j in -10i64..=10, n in -10i64..=10) {
        let c = WeylClass { r, m, j, n };
        prop_assert_eq!(weyl_reflect(weyl_reflect(c, r_s), r_s), c);
    }

    #[test]
    fn w_two_is_symmetric(mu in arb_partition(4), nu in arb_partition(4)) {
        prop_assert_eq!(w_two(&mu, &nu), w_two(&nu, &mu));
    }

    #[test]
    fn schur_routes_agree(mu in arb_partition(7)) {
        prop_assert_eq!(schur_principal(&mu), schur_principal_jt(&mu));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn closed_s_matches_lambda_sum(mu in arb_partition(3), nu in arb_partition(3)) {
        prop_assert_eq!(s_closed(&mu, &nu, 3), s_direct(&mu, &nu, 3));
    }
}
