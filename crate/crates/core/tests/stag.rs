use proptest::prelude::*;

use stagger::derived::{derived_hom, dualize, ChainComplex, ChainMap, FormalObject};
use stagger::grmod::{parse, q, GradedMap, GradedModule};
use stagger::oracle::oracle_aisle;
use stagger::sample;
use stagger::sstruct::{step, SConfig, Site};
use stagger::stag::{
    aisle_member, aisle_member_shifted, geometry_report, heart_kernel_cokernel, ic, is_in_heart, jh_factors, simple,
    simples, stag_truncate, tstructure_suite, validate_perversity, zn_aisle_member, Aisle, IcSpec, Perversity,
    SimpleLabel,
};
use stagger::Error;

const W: SConfig = SConfig { z_mode: stagger::sstruct::ZMode::Weight };
const T: SConfig = SConfig { z_mode: stagger::sstruct::ZMode::Trivial };
const P: Perversity = Perversity { pu: 0, pz: 1 };

fn f(s: &str) -> FormalObject {
    FormalObject::parse(s).unwrap()
}

fn m(s: &str) -> GradedModule {
    parse::module(s).unwrap()
}

fn chain_map(g: &GradedMap) -> ChainMap {
    let src = ChainComplex::from_formal(&FormalObject::module(g.source().clone()));
    let tgt = ChainComplex::from_formal(&FormalObject::module(g.target().clone()));
    ChainMap::new(src, tgt, [(0, g.matrix())].into_iter().collect()).unwrap()
}

#[test]
fn geometry_examples() {
    let g = geometry_report(W);
    assert_eq!((g.cod_u, g.alt_u, g.scod_u), (0, 0, 0));
    assert_eq!((g.cod_z, g.alt_z, g.scod_z), (1, 1, 2));
    assert_eq!(g.alt_zn[&2], 1);
    assert_eq!(g.alt_zn[&1], 1);
    assert!(g.stable);
    let t = geometry_report(T);
    assert_eq!((t.alt_u, t.alt_z, t.scod_z), (0, 0, 1));
}

#[test]
fn validate_perversity_examples() {
    let r = validate_perversity(P, W);
    assert!(r.ok && r.strict && r.middle);
    let r = validate_perversity(Perversity::new(0, 3), W);
    assert!(!r.ok);
    assert!(r.violations.iter().any(|v| v.contains("comonotonicity")));
    let r = validate_perversity(P, T);
    assert!(r.ok && !r.middle);
}

#[test]
fn aisle_examples() {
    assert!(is_in_heart(P, W, &f("F(0)")));
    for n in -4..=4 {
        let x = FormalObject::at(1 - n, GradedModule::v(n));
        assert!(is_in_heart(P, W, &x), "{x}");
        assert_eq!(oracle_aisle(P, W, &x).unwrap(), (true, true));
    }
    let x = f("F(0)[-1]");
    assert!(!aisle_member(P, W, &x, Aisle::Le0));
    assert_eq!(oracle_aisle(P, W, &x).unwrap().0, false);
}

#[test]
fn truncation_examples() {
    let x = f("F(0) + V(2)[1]");
    let t = stag_truncate(P, W, 0, &x).unwrap();
    assert_eq!((t.below.clone(), t.above.clone()), (x.clone(), FormalObject::zero()));

    let x = f("T(1,1)[-1]");
    let t = stag_truncate(P, W, 0, &x).unwrap();
    assert_eq!((t.below.clone(), t.above.clone()), (FormalObject::zero(), x.clone()));
    assert!(aisle_member_shifted(P, W, &x, Aisle::Ge0, 1));

    let x = f("F(2)");
    let t = stag_truncate(P, W, 0, &x).unwrap();
    assert_eq!((t.below.clone(), t.above.clone()), (f("F(1)"), f("T(2,1)")));
    assert_eq!(t.audit(), Ok(()));
    assert_eq!(oracle_aisle(P, W, &t.below).unwrap().0, true);
    assert_eq!(oracle_aisle(P, W, &t.above.shift(1)).unwrap().1, true);
}

#[test]
fn heart_kernel_cokernel_examples() {
    let onto = GradedMap::new(m("F(1)"), m("T(1,1)"), vec![vec![q(1)]]).unwrap();
    let k = heart_kernel_cokernel(P, W, &chain_map(&onto)).unwrap();
    assert_eq!((k.kernel, k.cokernel), (f("F(0)"), FormalObject::zero()));

    let inc = GradedMap::new(m("F(0)"), m("F(1)"), vec![vec![q(1)]]).unwrap();
    let k = heart_kernel_cokernel(P, W, &chain_map(&inc)).unwrap();
    assert_eq!(k.kernel, FormalObject::zero());
    assert_eq!(k.cokernel, f("V(1)"));
    assert_eq!(k.lengths_balance, Some(true));

    let id = ChainMap::identity(&ChainComplex::from_formal(&f("F(1)")));
    let k = heart_kernel_cokernel(P, W, &id).unwrap();
    assert!(k.kernel.is_zero() && k.cokernel.is_zero());

    let (a, b) = (m("F(0) + F(1)"), m("F(-1)"));
    let k = heart_kernel_cokernel(P, W, &chain_map(&GradedMap::zero(a.clone(), b.clone()))).unwrap();
    assert_eq!((k.kernel, k.cokernel), (FormalObject::module(a), FormalObject::module(b)));

    let bad = ChainMap::identity(&ChainComplex::from_formal(&f("F(0)[-1]")));
    assert!(matches!(heart_kernel_cokernel(P, W, &bad), Err(Error::NotInHeart(_))));
}

#[test]
fn footnote_sequence_in_the_heart() {
    // 0 → OX → F(1) → SZ(1) → 0: the inclusion F(0) ⊂ F(1) has heart cokernel V(1) in degree 0.
    let inc = GradedMap::new(m("F(0)"), m("F(1)"), vec![vec![q(1)]]).unwrap();
    let k = heart_kernel_cokernel(P, W, &chain_map(&inc)).unwrap();
    assert_eq!(k.cokernel, simple(P, W, SimpleLabel::SZ(1)).unwrap());
    assert_eq!(k.source, simple(P, W, SimpleLabel::OX).unwrap());
}

#[test]
fn simples_examples() {
    let s = simples(P, W, -2, 2).unwrap();
    let mut want = vec![(SimpleLabel::OX, f("F(0)"))];
    for n in -2..=2 {
        want.push((SimpleLabel::SZ(n), FormalObject::at(1 - n, GradedModule::v(n))));
    }
    assert_eq!(s, want);
    assert_eq!(ic(P, W, IcSpec::U { rank: 1 }).unwrap(), f("F(0)"));
    assert!(ic(P, W, IcSpec::U { rank: 0 }).unwrap().is_zero());
    assert_eq!(ic(P, W, IcSpec::Z { n: 3 }).unwrap(), FormalObject::at(-2, GradedModule::v(3)));
    assert!(matches!(simples(Perversity::new(0, 0), W, -1, 1), Err(Error::Unsupported(_))));
    assert!(matches!(simples(P, T, -1, 1), Err(Error::Unsupported(_))));
}

#[test]
fn ic_has_no_torsion_sub_or_quotient() {
    for r in 1..=3 {
        let x = ic(P, W, IcSpec::U { rank: r }).unwrap();
        for n in -6..=6 {
            let s = simple(P, W, SimpleLabel::SZ(n)).unwrap();
            assert!(derived_hom(&s, &x).get(&0).is_none(), "SZ({n}) ↪ IC");
            assert!(derived_hom(&x, &s).get(&0).is_none(), "IC ↠ SZ({n})");
        }
    }
}

#[test]
fn jh_examples() {
    let r = jh_factors(P, W, &f("F(1)")).unwrap();
    assert_eq!(r.factors, vec![SimpleLabel::OX, SimpleLabel::SZ(1)]);
    assert_eq!(r.audit(P, W), Ok(()));
    assert_eq!(r.witness.len(), 2);
    assert_eq!(jh_factors(P, W, &f("F(0)")).unwrap().factors, vec![SimpleLabel::OX]);
    let r = jh_factors(P, W, &f("F(-1)")).unwrap();
    assert_eq!(r.factors, vec![SimpleLabel::OX, SimpleLabel::SZ(0)]);
    assert_eq!(r.audit(P, W), Ok(()));
    assert!(matches!(jh_factors(P, W, &f("F(2)")), Err(Error::NotInHeart(_))));
}

#[test]
fn middle_duality_permutes_simples() {
    assert_eq!(dualize(&simple(P, W, SimpleLabel::OX).unwrap()), simple(P, W, SimpleLabel::OX).unwrap());
    for n in -5..=5 {
        let d = dualize(&simple(P, W, SimpleLabel::SZ(n)).unwrap());
        assert_eq!(d, simple(P, W, SimpleLabel::SZ(1 - n)).unwrap());
    }
}

#[test]
fn tstructure_suites_are_clean() {
    for (cfg, seed) in [(W, 7), (T, 1)] {
        let r = tstructure_suite(P, cfg, seed, 200).unwrap();
        assert!(r.is_clean(), "{}", r.to_text());
    }
    assert!(matches!(tstructure_suite(Perversity::new(1, 0), W, 1, 5), Err(Error::Input(_))));
}

fn formal_strategy() -> impl Strategy<Value = FormalObject> {
    any::<u64>().prop_map(|s| sample::formal(&mut sample::rng(s, "prop/formal", 0)))
}

fn heart_strategy() -> impl Strategy<Value = FormalObject> {
    prop::collection::vec((0usize..4, -3i64..=3), 1..4).prop_map(|v| {
        let parts = v.into_iter().map(|(kind, n)| match kind {
            0 => (0, GradedModule::free(0)),
            1 => (0, GradedModule::free(1)),
            2 => (0, GradedModule::free(-1)),
            _ => (1 - n, GradedModule::v(n)),
        });
        FormalObject::from_parts(parts)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn truncation_is_unique_and_idempotent(x in formal_strategy(), n in -2i64..=2) {
        let t = stag_truncate(P, W, n, &x).unwrap();
        prop_assert_eq!(t.audit(), Ok(()));
        prop_assert!(aisle_member_shifted(P, W, &t.below, Aisle::Le0, n));
        prop_assert!(aisle_member_shifted(P, W, &t.above, Aisle::Ge0, n + 1));
        let again = stag_truncate(P, W, n, &t.below).unwrap();
        prop_assert_eq!(again.below, t.below.clone());
        prop_assert!(again.above.is_zero());
        prop_assert_eq!(stag_truncate(P, W, n, &x).unwrap().below, t.below);
    }

    #[test]
    fn staggered_degree_purity_on_thickenings(s in any::<u64>(), n in 1i64..=3, d in -2i64..=2) {
        let x = sample::formal_torsion(&mut sample::rng(s, "prop/zn", 0), n);
        let heart = zn_aisle_member(d, W, n, &x, Aisle::Le0) && zn_aisle_member(d, W, n, &x, Aisle::Ge0);
        let pure = x.components().iter().all(|(&k, c)| step(Site::Zn(n), W, c).unwrap() == Some(d - k));
        prop_assert_eq!(heart, pure);
    }

    #[test]
    fn jh_is_additive_over_sums(a in heart_strategy(), b in heart_strategy()) {
        let ja = jh_factors(P, W, &a).unwrap();
        let jb = jh_factors(P, W, &b).unwrap();
        let jab = jh_factors(P, W, &a.direct_sum(&b)).unwrap();
        let mut both = [ja.factors, jb.factors].concat();
        both.sort();
        prop_assert_eq!(jab.audit(P, W), Ok(()));
        prop_assert_eq!(jab.factors, both);
    }

    #[test]
    fn nondegenerate_in_the_shift_window(x in formal_strategy()) {
        if !x.is_zero() {
            let everywhere_le = (-10..=10).all(|n| aisle_member_shifted(P, W, &x, Aisle::Le0, n));
            let everywhere_ge = (-10..=10).all(|n| aisle_member_shifted(P, W, &x, Aisle::Ge0, n));
            prop_assert!(!everywhere_le && !everywhere_ge);
        }
    }
}
