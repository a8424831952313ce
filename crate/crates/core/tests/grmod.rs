use proptest::prelude::*;

use stagger::grmod::{
    canonical_decompose, ext1_group, hom_group, internal_hom, kernel_image_cokernel, parse, q, tensor, GradedMap,
    GradedModule, HMatrix, Presentation, PresentationJson, Q,
};
use stagger::oracle::{oracle_decompose, oracle_hom_ext, oracle_hom_ext_auto, oracle_tensor, presentation_window, profile_of, WeightWindow};
use stagger::{sample, Error};

fn m(s: &str) -> GradedModule {
    parse::module(s).unwrap()
}

fn pres(json: &str) -> Presentation {
    let j: PresentationJson = serde_json::from_str(json).unwrap();
    Presentation::from_json(&j).unwrap()
}

#[test]
fn decompose_examples() {
    assert_eq!(canonical_decompose(&Presentation::free(vec![0])).unwrap(), m("F(0)"));
    let p = pres(r#"{"generators":[-1],"relations":[[{"c":"1","k":2}]]}"#);
    assert_eq!(canonical_decompose(&p).unwrap(), m("T(-1,2)"));
    // x·g2 − g1 with g1 in weight 0 and g2 in weight 1.
    let p = pres(r#"{"generators":[0,1],"relations":[[{"c":"-1","k":0}],[{"c":"1","k":1}]]}"#);
    let fast = canonical_decompose(&p).unwrap();
    assert_eq!(fast, m("F(1)"));
    assert_eq!(profile_of(&fast, presentation_window(&p)).first_difference(&oracle_decompose(&p)), None);
}

#[test]
fn non_homogeneous_presentation_is_rejected() {
    let j: PresentationJson =
        serde_json::from_str(r#"{"generators":[0,1],"relations":[[{"c":"1","k":0}],[{"c":"1","k":0}]]}"#).unwrap();
    assert!(matches!(Presentation::from_json(&j), Err(Error::NonHomogeneous { .. })));
}

#[test]
fn hom_examples() {
    assert_eq!(hom_group(&m("F(0)"), &m("F(0)")).0, 1);
    assert_eq!(hom_group(&m("T(0,1)"), &m("F(0)")).0, 0);
    for a in -3..=3 {
        for b in -3..=3 {
            assert_eq!(hom_group(&GradedModule::v(a), &GradedModule::v(b)).0, usize::from(a == b));
        }
    }
}

#[test]
fn ext_examples() {
    for d in -3..=3 {
        for n in ["F(0)", "T(1,2)", "V(-2)", "F(-4) + T(0,3)"] {
            assert_eq!(ext1_group(&GradedModule::free(d), &m(n)), 0);
        }
    }
    assert_eq!(ext1_group(&m("T(-1,1)"), &m("F(-2)")), 1);
    assert_eq!(ext1_group(&m("T(0,1)"), &m("T(-1,1)")), 1);
    assert_eq!(oracle_hom_ext(&m("T(0,1)"), &m("T(-1,1)"), WeightWindow::new(-4, 3)).unwrap(), (0, 1));
    assert_eq!(oracle_hom_ext(&m("T(-1,1)"), &m("F(-2)"), WeightWindow::new(-5, 2)).unwrap(), (0, 1));
}

#[test]
fn tensor_examples() {
    assert_eq!(tensor(&m("F(2)"), &m("F(-5)")), m("F(-3)"));
    assert_eq!(tensor(&m("V(2)"), &m("V(-5)")), m("V(-3)"));
    assert_eq!(tensor(&m("F(3)"), &m("T(-1,4)")), m("T(2,4)"));
    let (win, slow) = oracle_tensor(&m("F(3)"), &m("T(-1,4)"));
    assert_eq!(slow.to_module(), m("T(2,4)"));
    assert_eq!(profile_of(&m("T(2,4)"), win).first_difference(&slow), None);
}

#[test]
fn internal_hom_examples() {
    assert_eq!(internal_hom(&m("F(2)"), &m("F(-1)")), m("F(-3)"));
    assert_eq!(internal_hom(&m("V(2)"), &m("V(-1)")), m("V(-3)"));
    assert_eq!(internal_hom(&m("T(1,3)"), &m("F(4)")), GradedModule::zero());
}

#[test]
fn kic_examples() {
    let id = GradedMap::identity(&m("F(0)"));
    assert_eq!(kernel_image_cokernel(&id), (GradedModule::zero(), m("F(0)"), GradedModule::zero()));
    let inc = GradedMap::new(m("F(0)"), m("F(1)"), vec![vec![q(1)]]).unwrap();
    assert_eq!(kernel_image_cokernel(&inc), (GradedModule::zero(), m("F(0)"), m("T(1,1)")));
    let (a, b) = (m("F(1) + T(0,2)"), m("V(3) + F(-1)"));
    assert_eq!(kernel_image_cokernel(&GradedMap::zero(a.clone(), b.clone())), (a, GradedModule::zero(), b));
}

#[test]
fn parse_errors_carry_positions() {
    assert!(matches!(parse::module("F(1) + T(2,"), Err(Error::Parse { pos: 11, .. })));
    assert!(matches!(parse::module("G(1)"), Err(Error::Parse { pos: 0, .. })));
    assert!(matches!(parse::module("F(1)[2]"), Err(Error::Parse { .. })));
}

#[test]
fn rational_coefficients_survive_json() {
    let p = Presentation {
        gens: vec![0, 0],
        rels: HMatrix::from_columns(vec![0, 0], &[(-1, vec![Q::new(2.into(), 3.into()), q(-5)])]),
    };
    let back = Presentation::from_json(&p.to_json()).unwrap();
    assert_eq!(back, p);
    assert_eq!(canonical_decompose(&back).unwrap(), m("F(0) + T(0,1)"));
}

fn module_strategy() -> impl Strategy<Value = GradedModule> {
    any::<u64>().prop_map(|s| sample::module(&mut sample::rng(s, "prop/module", 0)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn printing_round_trips(a in module_strategy()) {
        prop_assert_eq!(parse::module(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn canonical_form_is_idempotent(a in module_strategy()) {
        prop_assert_eq!(canonical_decompose(&Presentation::of_module(&a)).unwrap(), a);
    }

    #[test]
    fn random_presentations_match_the_window_oracle(s in any::<u64>()) {
        let p = sample::presentation(&mut sample::rng(s, "prop/presentation", 0));
        let fast = canonical_decompose(&p).unwrap();
        prop_assert_eq!(profile_of(&fast, presentation_window(&p)).first_difference(&oracle_decompose(&p)), None);
    }

    #[test]
    fn hom_and_ext_are_additive(a in module_strategy(), b in module_strategy(), c in module_strategy()) {
        let ab = a.direct_sum(&b);
        prop_assert_eq!(hom_group(&ab, &c).0, hom_group(&a, &c).0 + hom_group(&b, &c).0);
        prop_assert_eq!(ext1_group(&c, &ab), ext1_group(&c, &a) + ext1_group(&c, &b));
        prop_assert_eq!(tensor(&ab, &c), tensor(&a, &c).direct_sum(&tensor(&b, &c)));
        prop_assert_eq!(internal_hom(&c, &ab), internal_hom(&c, &a).direct_sum(&internal_hom(&c, &b)));
    }

    #[test]
    fn tensor_hom_adjunction(h in module_strategy(), a in module_strategy(), b in module_strategy()) {
        prop_assert_eq!(hom_group(&tensor(&h, &a), &b).0, hom_group(&h, &internal_hom(&a, &b)).0);
    }

    #[test]
    fn hom_ext_match_oracle(a in module_strategy(), b in module_strategy()) {
        prop_assert_eq!((hom_group(&a, &b).0, ext1_group(&a, &b)), oracle_hom_ext_auto(&a, &b));
    }

    #[test]
    fn rank_nullity(s in any::<u64>()) {
        let mut r = sample::rng(s, "prop/map", 0);
        let (a, b) = (sample::module(&mut r), sample::module(&mut r));
        let f = sample::map(&mut r, &a, &b);
        let (k, i, c) = kernel_image_cokernel(&f);
        for w in -12..=8 {
            prop_assert_eq!(a.dim_at(w), k.dim_at(w) + i.dim_at(w));
            prop_assert_eq!(b.dim_at(w), i.dim_at(w) + c.dim_at(w));
        }
    }
}
