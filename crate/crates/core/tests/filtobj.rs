mod common;

use chainsheaf::chaincore::{m_class, validate_simple_chain, LineBundleClass, SimpleChainDatum, TopWedgeData};
use chainsheaf::filtobj::{
    artin_rees, classify_local_systems, classify_under_tame_quotient, divisibility_check, filtered_hom_dim,
    flat_tame_criterion, is_tame, rees_chain, rescale, tame_truncate, top_wedge_criterion, validate_cn_object,
    CnOptions, Degree, FilteredObject, GradedInjectionChain, Line, TameQuotientDatum,
};
use chainsheaf::intlin::{AbHom, Element, FgAbelianGroup, Subgroup};
use chainsheaf::Error;
use common::{big, random_chain, random_element, random_group, random_hom, rng, small, su11_chain, ChainShape};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

fn line(chi: &Element, d: i64) -> Line {
    Line {
        chi: chi.clone(),
        degree: Degree::finite(d),
    }
}

fn at_infinity(chi: &Element) -> Line {
    Line {
        chi: chi.clone(),
        degree: Degree::Infinite,
    }
}

fn degrees(obj: &FilteredObject) -> Vec<Degree> {
    obj.lines().iter().map(|l| l.degree.clone()).collect()
}

/// The degeneration of G_m onto Z/2 ⋉ G_a, with weight one.
fn extame() -> (SimpleChainDatum, TameQuotientDatum) {
    let gm = FgAbelianGroup::free(1);
    let z2 = FgAbelianGroup::cyclic(2);
    let l0 = FgAbelianGroup::from_i64(&[2, 0]);
    let reduce = AbHom::from_i64(gm.clone(), z2.clone(), &[&[1]]).unwrap();
    let c = SimpleChainDatum {
        name: "extame".into(),
        n: big(1),
        char_s1: gm.clone(),
        char_s0: z2.clone(),
        char_l0: l0.clone(),
        lim_map: reduce.clone(),
        iota_res: AbHom::from_i64(l0.clone(), z2.clone(), &[&[1, 0]]).unwrap(),
        gamma_pair: AbHom::from_i64(l0.clone(), FgAbelianGroup::free(1), &[&[0, 1]]).unwrap(),
        mu_n_res: AbHom::zero(z2, FgAbelianGroup::from_i64(&[1])),
        act_char: l0.element_i64(&[0, 1]).unwrap(),
        components: None,
        top_wedge: None,
    };
    let sub = Subgroup::whole(&gm);
    let tq = TameQuotientDatum {
        spec_res: AbHom::identity(sub.group().clone()),
        sub,
        char_h0: gm,
        proj0_res: reduce,
    };
    (c, tq)
}

/// A chain with `char_s0 = Z + Z/2` whose identity component sees the free part.
fn top_wedge_chain(top: &[i64]) -> SimpleChainDatum {
    let z = FgAbelianGroup::free(1);
    let l0 = FgAbelianGroup::from_i64(&[0, 0, 2]);
    let s0 = FgAbelianGroup::from_i64(&[0, 2]);
    SimpleChainDatum {
        name: "top".into(),
        n: big(1),
        char_s1: z.clone(),
        char_s0: s0.clone(),
        char_l0: l0.clone(),
        lim_map: AbHom::from_i64(z.clone(), s0.clone(), &[&[1], &[0]]).unwrap(),
        iota_res: AbHom::from_i64(l0.clone(), s0.clone(), &[&[0, 1, 0], &[0, 0, 1]]).unwrap(),
        gamma_pair: AbHom::from_i64(l0.clone(), z.clone(), &[&[1, 0, 0]]).unwrap(),
        mu_n_res: AbHom::zero(s0.clone(), FgAbelianGroup::from_i64(&[1])),
        act_char: l0.element_i64(&[1, 0, 0]).unwrap(),
        components: None,
        top_wedge: Some(TopWedgeData {
            identity_chars: z.clone(),
            r0: AbHom::from_i64(s0.clone(), z, &[&[1, 0]]).unwrap(),
            top_char0: s0.element_i64(top).unwrap(),
        }),
    }
}

#[test]
fn jumps_at_zero_and_three() {
    let c = GradedInjectionChain::from_dimensions(big(-2), &[0, 0, 1, 1, 1, 2, 2]).unwrap();
    assert_eq!(artin_rees(&c), vec![Degree::finite(0), Degree::finite(3)]);
    for i in -4..8 {
        let expected = (i >= 0) as usize + (i >= 3) as usize;
        assert_eq!(c.dim_at(&big(i)), expected);
    }
}

#[test]
fn constant_dimension_from_minus_five() {
    let c = GradedInjectionChain::new(0, vec![(big(-5), 1)]).unwrap();
    assert_eq!(artin_rees(&c), vec![Degree::finite(-5)]);
}

#[test]
fn decreasing_dimensions_are_rejected() {
    assert!(matches!(
        GradedInjectionChain::from_dimensions(big(0), &[1, 2, 1]),
        Err(Error::Domain(_))
    ));
}

#[test]
fn su11_object_degrees() {
    let c = su11_chain("oplus", 1);
    let one = c.char_s1.element_i64(&[1]).unwrap();
    let opts = CnOptions::default();
    assert!(validate_cn_object(&c, &FilteredObject::new(vec![line(&one, 3)]), opts).is_valid());
    let bad = validate_cn_object(&c, &FilteredObject::new(vec![line(&one, 2)]), opts);
    assert_eq!(bad.violations().len(), 1);
    assert!(validate_cn_object(&c, &FilteredObject::empty(), opts).is_valid());
}

#[test]
fn infinite_lines_and_finite_type() {
    let c = su11_chain("oplus", 1);
    let one = c.char_s1.element_i64(&[1]).unwrap();
    let obj = FilteredObject::new(vec![at_infinity(&one)]);
    assert!(validate_cn_object(&c, &obj, CnOptions { finite_type: false }).is_valid());
    assert!(!validate_cn_object(&c, &obj, CnOptions { finite_type: true }).is_valid());
}

#[test]
fn divisibility_examples() {
    let chi = FgAbelianGroup::trivial().zero();
    let obj = FilteredObject::new(vec![line(&chi, 0), line(&chi, 2), line(&chi, 4)]);
    assert!(divisibility_check(&obj, &big(2)));
    let scaled = rescale(&obj, &big(2)).unwrap();
    assert_eq!(
        degrees(&scaled),
        vec![Degree::finite(0), Degree::finite(1), Degree::finite(2)]
    );
    let odd = FilteredObject::new(vec![line(&chi, 0), line(&chi, 1)]);
    assert!(!divisibility_check(&odd, &big(2)));
    assert!(matches!(rescale(&odd, &big(2)), Err(Error::Precondition(_))));
}

#[test]
fn truncation_example() {
    let g = FgAbelianGroup::cyclic(4);
    let x = |i| g.element_i64(&[i]).unwrap();
    let obj = FilteredObject::new(vec![
        line(&x(0), -1),
        line(&x(1), 0),
        line(&x(2), 3),
        at_infinity(&x(3)),
    ]);
    let t = tame_truncate(&obj);
    let expected = FilteredObject::new(vec![line(&x(1), 0), line(&x(2), 0), at_infinity(&x(3))]);
    assert_eq!(t, expected);
    assert!(is_tame(&t));
    assert!(!is_tame(&obj));
    assert_eq!(tame_truncate(&t), t);
}

#[test]
fn su11_local_systems_are_all_line_bundles() {
    let c = su11_chain("oplus", 1);
    let p = classify_local_systems(&c).unwrap();
    assert!(p.allowed().is_whole());
    assert_eq!(p.n(), &big(2));
    for eps in 0..2 {
        let chi = c.char_s1.element_i64(&[eps]).unwrap();
        assert_eq!(p.residue_of(&chi), Some(big(eps)));
    }
}

#[test]
fn free_open_characters_without_components_admit_only_zero() {
    let mut r = rng(21);
    let c = loop {
        let mut c = random_chain(&mut r, ChainShape::default());
        if c.char_s1.free_rank() > 0 {
            let comp = c.components.as_mut().unwrap();
            let com = FgAbelianGroup::trivial();
            comp.com_s1.com_char_group = com.clone();
            comp.com_s1.com_pullback = AbHom::zero(com.clone(), c.char_s1.clone());
            comp.sigma_res = AbHom::zero(com, comp.com_s0.com_char_group.clone());
            break c;
        }
    };
    assert!(validate_simple_chain(&c).is_valid());
    let p = classify_local_systems(&c).unwrap();
    assert!(p.allowed().is_trivial());
    for x in c.char_s1.elements_in_box(2) {
        assert_eq!(p.residue_of(&x).is_some(), x.is_zero());
    }
}

#[test]
fn missing_component_data_is_a_configuration_error() {
    let (c, _) = extame();
    assert!(matches!(classify_local_systems(&c), Err(Error::Configuration(_))));
}

#[test]
fn disagreeing_routes_are_reported() {
    let mut c = su11_chain("oplus", 1);
    let comp = c.components.as_mut().unwrap();
    comp.sigma_res = AbHom::zero(comp.sigma_res.source().clone(), comp.sigma_res.target().clone());
    let r = validate_simple_chain(&c);
    assert!(r.violations().iter().any(|v| v.message.contains("disagree")));
}

#[test]
fn identity_quotient_is_the_cn_predicate() {
    let c = su11_chain("oplus", 1);
    let tq = TameQuotientDatum::identity(&c);
    assert!(flat_tame_criterion(&tq));
    let p = classify_under_tame_quotient(&c, &tq).unwrap();
    for chi in c.char_s1.elements().unwrap() {
        for d in -3..4 {
            let obj = FilteredObject::new(vec![line(&chi, d)]);
            assert_eq!(
                p.admits(&obj),
                validate_cn_object(&c, &obj, CnOptions::default()).is_valid()
            );
        }
    }
}

#[test]
fn zero_quotient_admits_only_trivial_characters() {
    let c = su11_chain("oplus", 1);
    let sub = Subgroup::trivial(&c.char_s1);
    let tq = TameQuotientDatum {
        spec_res: AbHom::zero(sub.group().clone(), c.char_s0.clone()),
        sub,
        char_h0: c.char_s0.clone(),
        proj0_res: AbHom::identity(c.char_s0.clone()),
    };
    let p = classify_under_tame_quotient(&c, &tq).unwrap();
    let one = c.char_s1.element_i64(&[1]).unwrap();
    assert!(p.admits(&FilteredObject::new(vec![line(&c.char_s1.zero(), 0)])));
    assert!(!p.admits(&FilteredObject::new(vec![line(&one, 1)])));
}

#[test]
fn extame_is_not_flat() {
    let (c, tq) = extame();
    assert!(validate_simple_chain(&c).is_valid());
    assert!(tq.validate(&c).is_valid(), "{}", tq.validate(&c));
    assert!(!flat_tame_criterion(&tq));
}

#[test]
fn top_wedge_examples() {
    assert!(top_wedge_criterion(&top_wedge_chain(&[3, 0])).unwrap());
    assert!(!top_wedge_criterion(&top_wedge_chain(&[0, 1])).unwrap());
    assert!(validate_simple_chain(&top_wedge_chain(&[3, 1])).is_valid());

    let mut c = su11_chain("oplus", 1);
    assert!(matches!(top_wedge_criterion(&c), Err(Error::Configuration(_))));
    c.top_wedge = Some(TopWedgeData {
        identity_chars: FgAbelianGroup::free(0),
        r0: AbHom::zero(c.char_s0.clone(), FgAbelianGroup::free(0)),
        top_char0: c.char_s0.element_i64(&[1]).unwrap(),
    });
    assert!(!top_wedge_criterion(&c).unwrap());
}

fn degree_strategy() -> impl Strategy<Value = Degree> {
    prop_oneof![4 => (-20i64..20).prop_map(Degree::finite), 1 => Just(Degree::Infinite)]
}

fn random_object(r: &mut StdRng, g: &FgAbelianGroup, len: usize) -> FilteredObject {
    let lines = (0..len)
        .map(|_| {
            let chi = random_element(r, g, 3);
            if r.gen_bool(0.15) {
                at_infinity(&chi)
            } else {
                line(&chi, r.gen_range(-12..12))
            }
        })
        .collect();
    FilteredObject::new(lines)
}

/// A random element of `sub`, as a combination of its basis.
fn element_of(r: &mut StdRng, sub: &Subgroup) -> Element {
    let amb = sub.ambient();
    sub.basis().iter().fold(amb.zero(), |acc, b| {
        amb.add(&acc, &amb.scale(&big(r.gen_range(-3..=3)), b))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn artin_rees_round_trip_from_lines(mut ds in prop::collection::vec(degree_strategy(), 0..10)) {
        ds.sort();
        let chain = rees_chain(&ds);
        prop_assert_eq!(artin_rees(&chain), ds.clone());
        for i in -22i64..22 {
            let expected = ds.iter().filter(|d| match d {
                Degree::Finite(x) => x <= &big(i),
                Degree::Infinite => true,
            }).count();
            prop_assert_eq!(chain.dim_at(&big(i)), expected);
        }
    }

    #[test]
    fn artin_rees_round_trip_from_chains(start in -10i64..10, incs in prop::collection::vec(0usize..3, 0..10)) {
        let mut dims = Vec::new();
        let mut k = 0;
        for inc in incs {
            k += inc;
            dims.push(k);
        }
        let chain = GradedInjectionChain::from_dimensions(big(start), &dims).unwrap();
        prop_assert_eq!(rees_chain(&artin_rees(&chain)), chain);
    }

    #[test]
    fn tame_truncate_is_idempotent(seed in any::<u64>(), len in 0usize..8) {
        let mut r = rng(seed);
        let obj = random_object(&mut r, &FgAbelianGroup::from_i64(&[3, 0]), len);
        let t = tame_truncate(&obj);
        prop_assert!(is_tame(&t));
        prop_assert_eq!(tame_truncate(&t), t.clone());
        if is_tame(&obj) {
            prop_assert_eq!(&t, &obj);
        }
    }

    #[test]
    fn tame_truncate_is_right_adjoint(seed in any::<u64>(), a in 0usize..5, b in 0usize..6) {
        let mut r = rng(seed);
        let g = FgAbelianGroup::cyclic(2);
        let tame = tame_truncate(&random_object(&mut r, &g, a));
        let x = random_object(&mut r, &g, b);
        prop_assert_eq!(filtered_hom_dim(&tame, &x), filtered_hom_dim(&tame, &tame_truncate(&x)));
    }

    #[test]
    fn rescale_undoes_scaling(seed in any::<u64>(), n in 1i64..7, len in 0usize..8) {
        let mut r = rng(seed);
        let obj = random_object(&mut r, &FgAbelianGroup::from_i64(&[2, 2]), len);
        let scaled = obj.scale_degrees(&big(n));
        prop_assert!(divisibility_check(&scaled, &big(n)));
        prop_assert_eq!(rescale(&scaled, &big(n)).unwrap(), obj);
    }

    #[test]
    fn local_systems_lie_in_cn(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_chain(&mut r, ChainShape::default());
        let p = classify_local_systems(&c).unwrap();
        let n = small(&c.n);
        let admitted: Vec<Line> = (0..6)
            .map(|_| {
                let chi = element_of(&mut r, p.allowed());
                let m = small(&p.residue_of(&chi).unwrap());
                line(&chi, m + n * r.gen_range(-3..=3))
            })
            .collect();
        let obj = FilteredObject::new(admitted);
        prop_assert!(p.admits(&obj));
        prop_assert!(validate_cn_object(&c, &obj, CnOptions::default()).is_valid());
        let noise = random_object(&mut r, &c.char_s1, 4);
        if p.admits(&noise) {
            prop_assert!(validate_cn_object(&c, &noise, CnOptions::default()).is_valid());
        }
        // Conversely: cn lines whose characters come from components are local systems.
        for l in noise.lines() {
            let cn = validate_cn_object(&c, &FilteredObject::new(vec![l.clone()]), CnOptions::default()).is_valid();
            if cn && p.allowed().contains(&l.chi) {
                prop_assert!(p.admits_line(l));
            }
        }
    }

    #[test]
    fn single_lines_match_line_bundle_classes(seed in any::<u64>(), d in -10i64..10) {
        let mut r = rng(seed);
        let c = random_chain(&mut r, ChainShape::default());
        let chi = random_element(&mut r, &c.char_s1, 4);
        let obj = FilteredObject::new(vec![line(&chi, d)]);
        prop_assert_eq!(
            validate_cn_object(&c, &obj, CnOptions::default()).is_valid(),
            LineBundleClass::new(&c, chi, big(d)).is_ok()
        );
    }

    #[test]
    fn locsys_quotient_equals_local_systems(seed in any::<u64>()) {
        let mut r = rng(seed);
        let shape = ChainShape { max_order: 100, max_n: 6, free_s1: false, free_l0: true };
        let c = random_chain(&mut r, shape);
        let tq = TameQuotientDatum::local_systems(&c).unwrap();
        prop_assert!(tq.validate(&c).is_valid());
        let via_quotient = classify_under_tame_quotient(&c, &tq).unwrap();
        let direct = classify_local_systems(&c).unwrap();
        for chi in c.char_s1.elements().unwrap() {
            for d in 0..small(&c.n) {
                let l = line(&chi, d);
                prop_assert_eq!(via_quotient.admits_line(&l), direct.admits_line(&l));
            }
            prop_assert_eq!(via_quotient.admits_line(&at_infinity(&chi)), direct.admits_line(&at_infinity(&chi)));
        }
    }

    #[test]
    fn flat_criterion_is_injectivity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let h0 = random_group(&mut r, 0, 2, 40);
        let s0 = random_group(&mut r, 0, 3, 200);
        let proj0 = random_hom(&mut r, &h0, &s0, 0);
        let sub = Subgroup::trivial(&h0);
        let tq = TameQuotientDatum {
            spec_res: AbHom::zero(sub.group().clone(), h0.clone()),
            sub,
            char_h0: h0.clone(),
            proj0_res: proj0.clone(),
        };
        let injective = h0
            .elements()
            .unwrap()
            .iter()
            .filter(|x| common::eval(&proj0, x).iter().all(Zero::is_zero))
            .count()
            == 1;
        prop_assert_eq!(flat_tame_criterion(&tq), injective);
    }

    #[test]
    fn flat_membership_depends_on_characters(seed in any::<u64>(), k in -3i64..=3) {
        let mut r = rng(seed);
        let c = random_chain(&mut r, ChainShape::default());
        let tq = TameQuotientDatum::identity(&c);
        prop_assert!(flat_tame_criterion(&tq));
        let p = classify_under_tame_quotient(&c, &tq).unwrap();
        let chi = random_element(&mut r, &c.char_s1, 4);
        let m = small(&m_class(&c, &chi).unwrap());
        let n = small(&c.n);
        prop_assert!(p.admits_line(&line(&chi, m)));
        prop_assert!(p.admits_line(&line(&chi, m + k * n)));
        prop_assert_eq!(p.residue_of(&chi), Some(BigInt::from(m)));
    }
}
