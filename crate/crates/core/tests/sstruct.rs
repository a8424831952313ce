use proptest::prelude::*;

use stagger::grmod::{internal_hom, kernel_image_cokernel, parse, GradedModule};
use stagger::oracle::{oracle_max_sub, oracle_member};
use stagger::sample;
use stagger::sstruct::{
    axiom_suite, axiom_suite_with, member, sigma, step, Dir, OffByOneSigma, SConfig, Site,
};
use stagger::Error;

fn m(s: &str) -> GradedModule {
    parse::module(s).unwrap()
}

const W: SConfig = SConfig { z_mode: stagger::sstruct::ZMode::Weight };
const T: SConfig = SConfig { z_mode: stagger::sstruct::ZMode::Trivial };

#[test]
fn member_examples() {
    assert!(member(Site::X, W, Dir::Le, 0, &m("F(0)")).unwrap());
    assert!(!member(Site::X, W, Dir::Le, -1, &m("F(0)")).unwrap());
    assert!(member(Site::X, W, Dir::Ge, 0, &m("F(-2)")).unwrap());
    assert!(!member(Site::X, W, Dir::Ge, 0, &m("T(-2,1)")).unwrap());
    for n in -4..=4 {
        for w in -4..=4 {
            assert_eq!(member(Site::Z, W, Dir::Le, w, &GradedModule::v(n)).unwrap(), n <= w);
            assert_eq!(member(Site::Z, W, Dir::Ge, w, &GradedModule::v(n)).unwrap(), n >= w);
        }
    }
}

#[test]
fn site_mismatch_is_an_input_error() {
    assert!(matches!(member(Site::Z, W, Dir::Le, 0, &m("T(0,2)")), Err(Error::SiteMismatch { .. })));
    assert!(matches!(member(Site::U, W, Dir::Le, 0, &m("V(0)")), Err(Error::SiteMismatch { .. })));
    assert!(matches!(step(Site::Zn(2), W, &m("F(0)")), Err(Error::SiteMismatch { .. })));
    assert!(member(Site::Zn(2), W, Dir::Le, 0, &m("T(0,2)")).is_ok());
}

#[test]
fn sigma_examples() {
    let s = sigma(Site::X, W, Dir::Le, 0, &m("F(1)")).unwrap();
    assert_eq!((s.sub, s.quotient), (m("F(0)"), m("T(1,1)")));
    assert_eq!(kernel_image_cokernel(&s.inclusion).0, GradedModule::zero());
    assert_eq!(kernel_image_cokernel(&s.projection).2, GradedModule::zero());
    assert!(sigma(Site::X, W, Dir::Le, -1, &m("F(0)")).unwrap().sub.is_zero());
    let (a, b) = (m("F(2) + T(1,3)"), m("T(-1,2) + F(-3)"));
    for w in -3..=3 {
        let sa = sigma(Site::X, W, Dir::Le, w, &a).unwrap();
        let sb = sigma(Site::X, W, Dir::Le, w, &b).unwrap();
        let sab = sigma(Site::X, W, Dir::Le, w, &a.direct_sum(&b)).unwrap();
        assert_eq!(sab.sub, sa.sub.direct_sum(&sb.sub));
        assert_eq!(sab.quotient, sa.quotient.direct_sum(&sb.quotient));
    }
}

#[test]
fn ge_sigma_reads_the_same_sequence() {
    let a = m("F(2) + T(1,3)");
    for w in -3..=3 {
        let ge = sigma(Site::X, W, Dir::Ge, w, &a).unwrap();
        let le = sigma(Site::X, W, Dir::Le, w - 1, &a).unwrap();
        assert_eq!(ge, le);
        assert!(member(Site::X, W, Dir::Ge, w, &ge.quotient).unwrap());
    }
}

#[test]
fn step_examples() {
    assert_eq!(step(Site::X, W, &m("F(0)")).unwrap(), Some(0));
    for n in -5..=5 {
        assert_eq!(step(Site::Z, W, &GradedModule::v(n)).unwrap(), Some(n));
    }
    assert_eq!(step(Site::X, W, &m("T(1,2)")).unwrap(), None);
    assert_eq!(oracle_max_sub(Site::X, W, 0, &m("T(1,2)")), m("T(0,1)"));
    assert_eq!(step(Site::X, W, &GradedModule::zero()).unwrap(), None);
}

#[test]
fn axiom_suites_are_clean() {
    for cfg in [W, T] {
        let r = axiom_suite(cfg, 1, 200);
        assert!(r.is_clean(), "{}", r.to_text());
    }
    // In trivial mode i*F ∈ C≤w with w < 0 forces F = 0, so the A2/S9 hypothesis never holds.
    let r = axiom_suite(W, 1, 200);
    assert!(r.checks.values().all(|t| t.pass > 0), "{}", r.to_text());
}

#[test]
fn suite_detects_an_off_by_one_sigma() {
    let r = axiom_suite_with(W, 1, 200, &OffByOneSigma);
    assert!(r.violations >= 1);
    assert!(r.checks.values().any(|t| !t.counterexamples.is_empty()));
}

#[test]
fn suite_reports_are_deterministic() {
    assert_eq!(axiom_suite(W, 5, 20).to_json(), axiom_suite(W, 5, 20).to_json());
}

#[test]
fn larger_thickenings_do_not_change_ge() {
    for s in 0..300u64 {
        let t = sample::torsion_module(&mut sample::rng(s, "thick", 0), 4);
        let need = t.max_torsion_length().max(1);
        for w in -7..=7 {
            let x = member(Site::X, W, Dir::Ge, w, &t).unwrap();
            for n in need..=need + 3 {
                assert_eq!(member(Site::Zn(n), W, Dir::Ge, w, &t).unwrap(), x, "{t} at w = {w}, n = {n}");
            }
        }
    }
}

fn site_strategy() -> impl Strategy<Value = Site> {
    prop_oneof![Just(Site::X), Just(Site::U), Just(Site::Z), (1i64..=4).prop_map(Site::Zn)]
}

fn cfg_strategy() -> impl Strategy<Value = SConfig> {
    prop_oneof![Just(W), Just(T)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sigma_is_monotone(site in site_strategy(), cfg in cfg_strategy(), s in any::<u64>(), w in -6i64..6) {
        let a = sample::module_on(&mut sample::rng(s, "prop/site", 0), site);
        let lo = sigma(site, cfg, Dir::Le, w, &a).unwrap();
        let hi = sigma(site, cfg, Dir::Le, w + 1, &a).unwrap();
        // The smaller piece dies in the larger quotient.
        prop_assert!(hi.projection.compose(&lo.inclusion).unwrap().is_zero());
    }

    #[test]
    fn le_and_ge_above_meet_in_zero(site in site_strategy(), cfg in cfg_strategy(), s in any::<u64>(), w in -6i64..6) {
        let a = sample::module_on(&mut sample::rng(s, "prop/site", 1), site);
        if member(site, cfg, Dir::Le, w, &a).unwrap() && member(site, cfg, Dir::Ge, w + 1, &a).unwrap() {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn sigma_pieces_are_members(site in site_strategy(), cfg in cfg_strategy(), s in any::<u64>(), w in -6i64..6) {
        let a = sample::module_on(&mut sample::rng(s, "prop/site", 2), site);
        let t = sigma(site, cfg, Dir::Le, w, &a).unwrap();
        prop_assert!(member(site, cfg, Dir::Le, w, &t.sub).unwrap());
        prop_assert!(member(site, cfg, Dir::Ge, w + 1, &t.quotient).unwrap());
        prop_assert_eq!(t.sub, oracle_max_sub(site, cfg, w, &a));
    }

    #[test]
    fn internal_hom_step_arithmetic(cfg in cfg_strategy(), s in any::<u64>(), w in -4i64..4, v in -4i64..4) {
        let mut r = sample::rng(s, "prop/s6", 0);
        let (f, g) = (sample::module(&mut r), sample::module(&mut r));
        if member(Site::X, cfg, Dir::Le, w, &f).unwrap() && member(Site::X, cfg, Dir::Ge, v, &g).unwrap() {
            prop_assert!(member(Site::X, cfg, Dir::Ge, v - w, &internal_hom(&f, &g)).unwrap());
        }
    }

    #[test]
    fn membership_matches_orthogonality(site in site_strategy(), cfg in cfg_strategy(), s in any::<u64>(), w in -6i64..6) {
        let a = sample::module_on(&mut sample::rng(s, "prop/site", 3), site);
        for dir in [Dir::Le, Dir::Ge] {
            prop_assert_eq!(member(site, cfg, dir, w, &a).unwrap(), oracle_member(site, cfg, dir, w, &a));
        }
    }
}
