//! Property suites: algebraic laws of the ordinal arithmetic, agreement
//! with the bounded-degree oracle, and the index/classification/rewrite
//! invariants.

use proptest::prelude::*;

use szlenk_core::cb::{cb_derivative, cb_height, dirac_rank};
use szlenk_core::classification::{canonical_representative, isomorphic};
use szlenk_core::indices::{dentability_index, gamma_of, szlenk_index};
use szlenk_core::oracle::SmallOrdinal;
use szlenk_core::space::{check_trace, normalize, szlenk_bounds, SpaceExpr};
use szlenk_core::text::{format_ordinal, parse_ordinal};
use szlenk_core::Ordinal;

fn leaf(with_atoms: bool) -> BoxedStrategy<Ordinal> {
    let mut opts: Vec<BoxedStrategy<Ordinal>> = vec![
        Just(Ordinal::zero()).boxed(),
        (1u64..6).prop_map(Ordinal::finite).boxed(),
        Just(Ordinal::omega()).boxed(),
    ];
    if with_atoms {
        opts.push((1u32..3).prop_map(Ordinal::eps).boxed());
    }
    proptest::strategy::Union::new(opts).boxed()
}

/// Ordinals built by random arithmetic over {0, finite, w, W1, W2}; the
/// results are canonical by construction and overflowing combinations
/// are discarded.
fn arb_ordinal(with_atoms: bool) -> BoxedStrategy<Ordinal> {
    leaf(with_atoms)
        .prop_recursive(3, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_filter_map("add overflow", |(a, b)| a.add(&b).ok()),
                (inner.clone(), inner.clone())
                    .prop_filter_map("mul overflow", |(a, b)| a.mul(&b).ok()),
                (inner.clone(), inner.clone())
                    .prop_filter_map("pow overflow", |(a, b)| a.pow(&b).ok()),
                inner.prop_map(|e| Ordinal::omega_pow(&e)),
            ]
            .boxed()
        })
        .boxed()
}

fn arb_small(cap: u64) -> impl Strategy<Value = SmallOrdinal> {
    [0..=cap, 0..=cap, 0..=cap, 0..=cap]
        .prop_map(|[c3, c2, c1, c0]| SmallOrdinal::new(c3, c2, c1, c0))
}

proptest! {
    #[test]
    fn outputs_stay_canonical(a in arb_ordinal(true), b in arb_ordinal(true)) {
        for v in [a.add(&b), a.mul(&b), a.pow(&b)] {
            if let Ok(v) = v {
                prop_assert!(v.validate().is_ok(), "invalid output {v:?}");
            }
        }
        prop_assert!(Ordinal::omega_pow(&a).validate().is_ok());
    }

    #[test]
    fn add_mul_associative(a in arb_ordinal(true), b in arb_ordinal(true), c in arb_ordinal(true)) {
        if let (Ok(l), Ok(r)) = (
            a.add(&b).and_then(|x| x.add(&c)),
            b.add(&c).and_then(|x| a.add(&x)),
        ) {
            prop_assert_eq!(l, r);
        }
        if let (Ok(l), Ok(r)) = (
            a.mul(&b).and_then(|x| x.mul(&c)),
            b.mul(&c).and_then(|x| a.mul(&x)),
        ) {
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn left_distributivity(a in arb_ordinal(true), b in arb_ordinal(true), c in arb_ordinal(true)) {
        if let (Ok(l), Ok(r)) = (
            b.add(&c).and_then(|x| a.mul(&x)),
            a.mul(&b).and_then(|ab| a.mul(&c).and_then(|ac| ab.add(&ac))),
        ) {
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn power_laws(a in arb_ordinal(true), b in arb_ordinal(true), c in arb_ordinal(true)) {
        // a^(b+c) = a^b * a^c
        if let (Ok(l), Ok(r)) = (
            b.add(&c).and_then(|x| a.pow(&x)),
            a.pow(&b).and_then(|ab| a.pow(&c).and_then(|ac| ab.mul(&ac))),
        ) {
            prop_assert_eq!(l, r);
        }
        // a^(b*c) = (a^b)^c
        if let (Ok(l), Ok(r)) = (
            b.mul(&c).and_then(|x| a.pow(&x)),
            a.pow(&b).and_then(|ab| ab.pow(&c)),
        ) {
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn right_monotonicity(a in arb_ordinal(true), b in arb_ordinal(true), c in arb_ordinal(true)) {
        let (b, c) = if b <= c { (b, c) } else { (c, b) };
        prop_assume!(b < c);
        if let (Ok(l), Ok(r)) = (a.add(&b), a.add(&c)) {
            prop_assert!(l < r);
        }
        if a >= Ordinal::one() {
            if let (Ok(l), Ok(r)) = (a.mul(&b), a.mul(&c)) {
                prop_assert!(l < r);
            }
        }
        if a >= Ordinal::finite(2) {
            if let (Ok(l), Ok(r)) = (a.pow(&b), a.pow(&c)) {
                prop_assert!(l < r);
            }
        }
    }

    #[test]
    fn compare_transitive(a in arb_ordinal(true), b in arb_ordinal(true), c in arb_ordinal(true)) {
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
        // antisymmetry
        if a <= b && b <= a {
            prop_assert_eq!(&a, &b);
        }
    }

    #[test]
    fn order_agrees_with_solvability(a in arb_ordinal(true), b in arb_ordinal(true)) {
        // a <= b iff a + x = b is solvable; the solution is left_diff
        if a <= b {
            let x = b.left_diff(&a);
            prop_assert_eq!(a.add(&x).unwrap(), b);
        }
    }

    #[test]
    fn oracle_agreement(a in arb_small(9), b in arb_small(9)) {
        let oa = a.to_ordinal();
        let ob = b.to_ordinal();
        prop_assert_eq!(a.o_compare(&b), oa.cmp(&ob));
        prop_assert_eq!(a.o_add(&b).unwrap().to_ordinal(), oa.add(&ob).unwrap());
        match a.o_mul(&b) {
            Ok(p) => prop_assert_eq!(p.to_ordinal(), oa.mul(&ob).unwrap()),
            Err(_) => {} // product left the oracle's degree range
        }
        if !b.is_zero() {
            let (q, r) = oa.divmod(&ob).unwrap();
            let (qs, rs) = (
                SmallOrdinal::from_ordinal(&q).unwrap(),
                SmallOrdinal::from_ordinal(&r).unwrap(),
            );
            prop_assert!(SmallOrdinal::o_check_divmod(&a, &b, &qs, &rs));
        }
    }

    #[test]
    fn oracle_agreement_large_coeffs(a in arb_small(99), b in arb_small(99)) {
        let oa = a.to_ordinal();
        let ob = b.to_ordinal();
        prop_assert_eq!(a.o_compare(&b), oa.cmp(&ob));
        prop_assert_eq!(a.o_add(&b).unwrap().to_ordinal(), oa.add(&ob).unwrap());
    }

    #[test]
    fn divmod_reconstruction(a in arb_ordinal(true), d in arb_ordinal(true)) {
        prop_assume!(!d.is_zero());
        let (q, r) = a.divmod(&d).unwrap();
        prop_assert!(r < d);
        prop_assert_eq!(d.mul(&q).unwrap().add(&r).unwrap(), a);
    }

    #[test]
    fn format_parse_round_trip(a in arb_ordinal(true)) {
        prop_assert_eq!(parse_ordinal(&format_ordinal(&a)).unwrap(), a);
    }

    #[test]
    fn bracket_soundness(a in arb_ordinal(true)) {
        prop_assume!(a >= Ordinal::omega());
        let gamma = gamma_of(&a).unwrap();
        let low = Ordinal::omega_pow(&Ordinal::omega_pow(&gamma));
        let high = Ordinal::omega_pow(&Ordinal::omega_pow(&gamma.succ()));
        prop_assert!(low <= a && a < high);
        // the Szlenk index is 1 or a power of w
        let sz = szlenk_index(&a);
        prop_assert_eq!(Ordinal::omega_pow(&sz.deg().unwrap()), sz);
    }

    #[test]
    fn index_monotone(a in arb_ordinal(true), b in arb_ordinal(true)) {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(szlenk_index(&a) <= szlenk_index(&b));
    }

    #[test]
    fn sz_dz_relation(a in arb_ordinal(true)) {
        prop_assume!(a >= Ordinal::omega());
        let gamma = gamma_of(&a).unwrap();
        let sz = szlenk_index(&a);
        let dz = dentability_index(&a).unwrap();
        prop_assert!(sz <= dz);
        if gamma >= Ordinal::omega() {
            prop_assert_eq!(sz, dz);
        } else {
            prop_assert_eq!(sz.mul(&Ordinal::omega()).unwrap(), dz);
        }
    }

    #[test]
    fn interval_constancy(a in arb_ordinal(true), b in arb_ordinal(true)) {
        prop_assume!(a >= Ordinal::omega() && b >= Ordinal::omega());
        if gamma_of(&a).unwrap() == gamma_of(&b).unwrap() {
            prop_assert_eq!(szlenk_index(&a), szlenk_index(&b));
            prop_assert_eq!(dentability_index(&a).unwrap(), dentability_index(&b).unwrap());
        }
    }

    #[test]
    fn height_and_rank_laws(a in arb_ordinal(true)) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(cb_height(&a), a.deg().unwrap().succ());
        if a >= Ordinal::omega() {
            prop_assert_eq!(cb_height(&a).deg().unwrap(), gamma_of(&a).unwrap());
        }
        // dirac_rank(w^z) = z, and the stpip lower-bound witness exists
        let z = a.trailing_exponent();
        prop_assert_eq!(dirac_rank(&Ordinal::omega_pow(&z)), z);
        if a >= Ordinal::omega() {
            let gamma = gamma_of(&a).unwrap();
            let witness = Ordinal::omega_pow(&Ordinal::omega_pow(&gamma));
            prop_assert!(witness <= a);
            prop_assert_eq!(dirac_rank(&witness), Ordinal::omega_pow(&gamma));
        }
    }

    #[test]
    fn derivative_semigroup(a in arb_ordinal(false), eta in arb_ordinal(false), xi in arb_ordinal(false)) {
        prop_assume!(!xi.is_zero());
        let first = cb_derivative(&a, &eta);
        let then = cb_derivative(&first.order_type, &xi);
        let direct = cb_derivative(&a, &eta.add(&xi).unwrap());
        prop_assert_eq!(then.order_type, direct.order_type);
    }

    #[test]
    fn classification_laws(a in arb_ordinal(false), b in arb_ordinal(false), c in arb_ordinal(false)) {
        let lift = |x: &Ordinal| Ordinal::omega().add(x).unwrap().add(&Ordinal::omega()).unwrap();
        let (a, b, c) = (lift(&a), lift(&b), lift(&c));
        // reflexive, symmetric, transitive
        prop_assert!(isomorphic(&a, &a).unwrap().isomorphic);
        let ab = isomorphic(&a, &b).unwrap().isomorphic;
        prop_assert_eq!(ab, isomorphic(&b, &a).unwrap().isomorphic);
        if ab && isomorphic(&b, &c).unwrap().isomorphic {
            prop_assert!(isomorphic(&a, &c).unwrap().isomorphic);
        }
        // class-bracket agreement, both directions
        prop_assert_eq!(ab, gamma_of(&a).unwrap() == gamma_of(&b).unwrap());
        if ab {
            prop_assert_eq!(szlenk_index(&a), szlenk_index(&b));
            prop_assert_eq!(
                canonical_representative(&a).unwrap(),
                canonical_representative(&b).unwrap()
            );
        }
    }
}

fn arb_space() -> BoxedStrategy<SpaceExpr> {
    let param = prop_oneof![
        Just(Ordinal::omega()),
        (1u64..4).prop_map(|n| Ordinal::omega_pow(&Ordinal::finite(n))),
        (1u64..4, 1u64..4).prop_map(|(g, n)| {
            Ordinal::omega_pow(
                &Ordinal::omega_pow(&Ordinal::finite(g))
                    .mul(&Ordinal::finite(n))
                    .unwrap(),
            )
        }),
        Just(Ordinal::omega_pow(&Ordinal::omega())),
    ];
    let leaf = prop_oneof![
        param.clone().prop_map(|a| SpaceExpr::c0(a).unwrap()),
        param.clone().prop_map(|a| SpaceExpr::c(a).unwrap()),
    ];
    leaf.prop_recursive(3, 12, 3, move |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 2..4)
                .prop_map(|parts| SpaceExpr::direct_sum(parts).unwrap()),
            (param.clone(), inner).prop_map(|(k, x)| SpaceExpr::c0_sum(k, x).unwrap()),
        ]
        .boxed()
    })
    .boxed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normalize_traces_verify(e in arb_space()) {
        let (nf, trace) = normalize(&e).unwrap();
        prop_assert!(check_trace(&trace));
        prop_assert_eq!(&trace.end, &nf);
        // normal forms are irreducible
        let (nf2, trace2) = normalize(&nf).unwrap();
        prop_assert_eq!(nf2, nf);
        prop_assert!(trace2.steps.is_empty());
    }

    #[test]
    fn bounds_ordered_and_stable(e in arb_space()) {
        let b = szlenk_bounds(&e).unwrap();
        prop_assert!(b.lower <= b.upper);
        prop_assert_eq!(b.exact, b.lower == b.upper);
        let (nf, _) = normalize(&e).unwrap();
        let bn = szlenk_bounds(&nf).unwrap();
        prop_assert_eq!((b.lower, b.upper), (bn.lower, bn.upper));
    }
}
