//! Structures with (m,n) other than (2,2): the n > m case exercises the
//! scalar-identity padding in the fraction formulas, and the (3,3) lift of
//! the Krasner hyperfield exercises multi-valued ternary hypersums end to
//! end.

mod util;

use khr::fractions::{
    build_localization, check_field_of_fractions, check_fraction_identities, natural_map,
};
use khr::ideals::{
    enumerate_hyperideals, enumerate_multiplicative_subsets, is_prime, is_two_absorbing, radical,
};
use khr::morphisms::{check_universal_property, find_isomorphism, is_homomorphism, MapTable};
use khr::quotients::{build_quotient, check_quotient_fraction_iso};
use khr::transport::{
    check_all_extended, check_local_maximal, check_radical_commutes, check_unit_criterion,
    extend_ideal,
};
use khr::ElemSet;
use util::{k2_33, mask, zk, zk23, zk33};

#[test]
fn ternary_product_ring_validates_and_localizes() {
    let s = zk23(6);
    assert_eq!((s.m(), s.n()), (2, 3));
    // ternary closure differs from binary: {1,3} is closed since 27 = 3
    let subsets = enumerate_multiplicative_subsets(&s);
    assert!(subsets.contains(&mask(&[1, 3])));

    let l = build_localization(&s, mask(&[1, 3])).unwrap();
    assert_eq!(l.classes().len(), 2, "inverting 3 collapses mod 2");
    let report = check_fraction_identities(&l).unwrap();
    assert!(report.all_pass(), "{:?}", report.first_failure());
    let phi = natural_map(&l);
    assert!(is_homomorphism(&s, l.structure(), &phi).unwrap());

    for ideal in enumerate_hyperideals(&s) {
        let v = check_unit_criterion(&l, ideal).unwrap();
        assert!(v.pass, "{} / {:?}", v.universe, v.counterexample);
        let v = check_radical_commutes(&l, ideal).unwrap();
        assert!(v.pass, "{} / {:?}", v.universe, v.counterexample);
    }
    let v = check_all_extended(&l).unwrap();
    assert!(v.pass, "{:?}", v.counterexample);
}

#[test]
fn ternary_two_absorbing_is_no_longer_degenerate() {
    // the triple 2*2*2 = 0 mod 8 has no pair multiplying into {0}
    let z8 = zk23(8);
    assert!(!is_two_absorbing(&z8, mask(&[0])).unwrap());
    // but {0,4} absorbs every such pair
    assert!(is_two_absorbing(&z8, mask(&[0, 4])).unwrap());
    // and mod 6 the zero ideal still works: 6 is squarefree
    assert!(is_two_absorbing(&zk23(6), mask(&[0])).unwrap());
}

#[test]
fn ternary_radicals_use_iterated_powers() {
    let z8 = zk23(8);
    // 2^3 = 0 mod 8, so 2 is nilpotent under the ternary product as well
    assert_eq!(radical(&z8, mask(&[0])).unwrap(), mask(&[0, 2, 4, 6]));
    assert_eq!(radical(&z8, mask(&[0, 4])).unwrap(), mask(&[0, 2, 4, 6]));
}

#[test]
fn ternary_transport_at_a_prime() {
    let s = zk23(6);
    for p in [mask(&[0, 3]), mask(&[0, 2, 4])] {
        assert!(is_prime(&s, p).unwrap());
        let v = check_local_maximal(&s, p).unwrap();
        assert!(v.pass, "{} / {:?}", v.universe, v.counterexample);
    }
    for sset in enumerate_multiplicative_subsets(&s) {
        for ideal in enumerate_hyperideals(&s) {
            if ideal.intersect(sset).is_empty() {
                let v = check_quotient_fraction_iso(&s, sset, ideal).unwrap();
                assert!(v.pass, "{} / {:?}", v.universe, v.counterexample);
            }
        }
    }
}

#[test]
fn ternary_universal_property() {
    let s = zk23(6);
    let b = zk23(2);
    let l = build_localization(&s, mask(&[1, 3])).unwrap();
    let k = MapTable::new((0..6).map(|r| r % 2).collect(), &s, &b).unwrap();
    let v = check_universal_property(&l, &b, &k, 100_000_000).unwrap();
    assert!(v.pass, "{:?}", v.counterexample);
}

#[test]
fn ternary_sum_lift_needs_odd_modulus() {
    // for even k the half-way element is a second scalar neutral of the
    // ternary hypersum: 3+3+x = x mod 6, so Z6 does not lift
    use khr::{validate_structure, Axiom, ValidationMode};
    let arity = khr::ArityProfile::new(3, 3).unwrap();
    let k = 6;
    let mut f = Vec::new();
    let mut g = Vec::new();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                f.push(ElemSet::singleton((a + b + c) % k));
                g.push(a * b * c % k);
            }
        }
    }
    let raw = khr::RawStructure::new("Z6w", k, arity, true, 0, 1, f, g, None).unwrap();
    let report = validate_structure(&raw, ValidationMode::Strict);
    let check = report.check(Axiom::ZeroScalarNeutral).unwrap();
    assert!(!check.pass);
    assert_eq!(
        check.counterexample.as_deref(),
        Some("e=3 is a second scalar neutral")
    );
}

#[test]
fn ternary_hypersum_ring_round_trip() {
    let s = zk33(9);
    assert_eq!((s.m(), s.n()), (3, 3));
    // localizing at the units congruent to 1 mod 3 changes nothing
    let l = build_localization(&s, mask(&[1, 4, 7])).unwrap();
    assert_eq!(l.classes().len(), 9);
    assert!(find_isomorphism(l.structure(), &s).is_some());

    let q = build_quotient(&s, mask(&[0, 3, 6])).unwrap();
    assert_eq!(q.cosets().len(), 3);
    assert!(find_isomorphism(q.structure(), &zk33(3)).is_some());

    // the quotient-fraction isomorphism on a genuinely (3,3) instance
    let v = check_quotient_fraction_iso(&s, mask(&[1, 4, 7]), mask(&[0, 3, 6])).unwrap();
    assert!(v.pass, "{} / {:?}", v.universe, v.counterexample);
}

#[test]
fn hyperfield_lift_keeps_multivalued_sums() {
    let s = k2_33();
    assert_eq!(
        s.eval_f(&[1, 1, 1]).unwrap(),
        [0, 1].into_iter().collect::<ElemSet>()
    );
    assert_eq!(
        s.eval_f(&[1, 1, 0]).unwrap(),
        [0, 1].into_iter().collect::<ElemSet>()
    );
    assert!(s.is_hyperintegral_domain());

    let l = build_localization(&s, ElemSet::singleton(1)).unwrap();
    assert_eq!(l.classes().len(), 2);
    // the localized ternary hypersum of three ones is again both classes
    assert_eq!(
        l.structure().eval_f(&[1, 1, 1]).unwrap(),
        [0, 1].into_iter().collect::<ElemSet>()
    );

    assert!(is_prime(&s, mask(&[0])).unwrap());
    let v = check_local_maximal(&s, mask(&[0])).unwrap();
    assert!(v.pass, "{:?}", v.counterexample);
    let v = check_field_of_fractions(&s).unwrap();
    assert!(v.pass, "{:?}", v.counterexample);
}

#[test]
fn mixed_arity_structures_do_not_mix() {
    // arity profiles must match for morphism search
    assert!(find_isomorphism(&zk23(3), &zk(3)).is_none());
    assert!(find_isomorphism(&zk33(3), &zk23(3)).is_none());
    // extension respects the localization's own arity
    let s = zk23(6);
    let l = build_localization(&s, mask(&[1, 3])).unwrap();
    assert_eq!(
        extend_ideal(&l, mask(&[0, 2, 4])).unwrap(),
        ElemSet::singleton(0)
    );
}

#[test]
fn fraction_construction_requires_n_at_least_m() {
    // a (3,2)-structure is a perfectly good Krasner hyperring, but the
    // fraction denominator g(s_1^m, 1^(n-m)) is ill-typed for it
    use khr::{ArityProfile, Error, RawStructure, Structure, ValidationMode};
    let arity = ArityProfile::new(3, 2).unwrap();
    let k = 5;
    let mut f = Vec::new();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                f.push(ElemSet::singleton((a + b + c) % k));
            }
        }
    }
    let mut g = Vec::new();
    for a in 0..k {
        for b in 0..k {
            g.push(a * b % k);
        }
    }
    let raw = RawStructure::new("Z5-32", k, arity, true, 0, 1, f, g, None).unwrap();
    let s = Structure::from_raw(raw, ValidationMode::Strict).unwrap();
    assert!(matches!(
        build_localization(&s, mask(&[1, 2, 3, 4])),
        Err(Error::FractionArity { m: 3, n: 2 })
    ));
    assert!(matches!(
        khr::fractions::fraction_equivalent(
            &s,
            mask(&[1]),
            (0, 1),
            (0, 1),
            khr::fractions::RelationForm::NegatedProof
        ),
        Err(Error::FractionArity { m: 3, n: 2 })
    ));
}

#[test]
fn domain_preservation_at_every_subset() {
    for s in [zk23(5), k2_33()] {
        assert!(s.is_hyperintegral_domain());
        for sset in enumerate_multiplicative_subsets(&s) {
            let l = build_localization(&s, sset).unwrap();
            let v = khr::fractions::check_domain_preserved(&l).unwrap();
            assert!(v.pass, "{} / {:?}", v.universe, v.counterexample);
        }
    }
    // hypothesis gate: Z6 is not a domain
    let z6 = zk(6);
    let l = build_localization(&z6, mask(&[1])).unwrap();
    assert!(khr::fractions::check_domain_preserved(&l).is_err());
}
