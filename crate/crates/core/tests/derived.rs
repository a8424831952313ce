use std::collections::BTreeMap;

use proptest::prelude::*;

use stagger::derived::{
    derived_hom, dualize, li_star, push_z, r_gamma_z, restrict_u, ri_flat, std_truncate, ChainComplex, ChainMap,
    ComplexJson, FormalObject, Truncation,
};
use stagger::grmod::{hom_group, kernel_image_cokernel, parse, q, GradedMap, GradedModule, HMatrix, Presentation, Summand};
use stagger::oracle::{compare, oracle_dualize, oracle_gamma_dims, profiles_of, compare_profiles, Instance};
use stagger::sample;
use stagger::sstruct::{step, SConfig, Site, StandardSigma};

fn f(s: &str) -> FormalObject {
    FormalObject::parse(s).unwrap()
}

fn m(s: &str) -> GradedModule {
    parse::module(s).unwrap()
}

fn hom(pairs: &[(i64, usize)]) -> BTreeMap<i64, usize> {
    pairs.iter().copied().collect()
}

/// The chain map `M[-k] → N[-k]` induced by a module map.
fn chain_map(g: &GradedMap, k: i64) -> ChainMap {
    let src = ChainComplex::from_formal(&FormalObject::at(k, g.source().clone()));
    let tgt = ChainComplex::from_formal(&FormalObject::at(k, g.target().clone()));
    ChainMap::new(src, tgt, [(k, g.matrix())].into_iter().collect()).unwrap()
}

#[test]
fn normal_form_examples() {
    let terms = [(-1, Presentation::free(vec![0])), (0, Presentation::free(vec![1]))].into_iter().collect();
    let d = HMatrix::from_columns(vec![1], &[(0, vec![q(1)])]);
    let c = ChainComplex::new(terms, [(-1, d)].into_iter().collect()).unwrap();
    assert_eq!(c.normal_form(), f("T(1,1)"));
    let inc = GradedMap::new(m("F(0)"), m("F(1)"), vec![vec![q(1)]]).unwrap();
    assert_eq!(kernel_image_cokernel(&inc).2, m("T(1,1)"));

    let x = f("F(2) + T(0,3)[1] + V(-1)[-2]");
    assert_eq!(ChainComplex::from_formal(&x).normal_form(), x);
    assert_eq!(ChainComplex::resolution(&x).normal_form(), x);

    let id = ChainMap::identity(&ChainComplex::resolution(&f("F(0)")));
    assert!(id.cone().normal_form().is_zero());
}

#[test]
fn normal_form_audit_lists_cycles() {
    let x = f("F(1) + T(2,2)[-1]");
    let (nf, audit) = ChainComplex::resolution(&x).normal_form_audited();
    assert_eq!(nf, x);
    for (k, d) in &audit.degrees {
        assert_eq!(d.cohomology, x.h(*k));
    }
}

#[test]
fn complex_json_round_trip() {
    let c = ChainComplex::resolution(&f("T(1,2) + F(0)[1]"));
    let j: ComplexJson = serde_json::from_str(&serde_json::to_string(&c.to_json()).unwrap()).unwrap();
    assert_eq!(ChainComplex::from_json(&j).unwrap(), c);
}

#[test]
fn cone_examples() {
    let c = ChainComplex::resolution(&f("F(0)"));
    assert!(ChainMap::identity(&c).cone().normal_form().is_zero());
    let mm = f("T(2,3) + F(-1)");
    assert_eq!(ChainMap::from_zero(&ChainComplex::from_formal(&mm)).cone().normal_form(), mm);
    let inc = GradedMap::new(m("F(0)"), m("F(1)"), vec![vec![q(1)]]).unwrap();
    assert_eq!(chain_map(&inc, 0).cone().normal_form(), f("T(1,1)"));
}

#[test]
fn std_truncate_examples() {
    let x = f("F(0) + T(1,1)[-1]");
    assert_eq!(std_truncate(&x, Truncation::Le(0)), f("F(0)"));
    assert_eq!(std_truncate(&x, Truncation::Ge(1)), f("T(1,1)[-1]"));
    assert!(std_truncate(&x, Truncation::Le(-1)).is_zero());
}

#[test]
fn derived_hom_examples() {
    assert_eq!(derived_hom(&f("F(0)"), &f("F(0)")), hom(&[(0, 1)]));
    assert_eq!(derived_hom(&f("T(-1,1)"), &f("F(-2)")), hom(&[(1, 1)]));
    let (a, b) = (m("T(0,2) + F(1)"), m("V(0) + F(-1)"));
    let base = derived_hom(&FormalObject::module(a.clone()), &FormalObject::module(b.clone()));
    for (sa, sb) in [(0, 0), (1, 0), (-2, 1), (3, -1)] {
        let shifted = derived_hom(&FormalObject::at(sa, a.clone()), &FormalObject::at(sb, b.clone()));
        let expect: BTreeMap<i64, usize> = base.iter().map(|(&k, &v)| (k + (sb - sa), v)).collect();
        assert_eq!(shifted, expect);
    }
}

#[test]
fn dualize_examples() {
    for d in -4..=4 {
        assert_eq!(dualize(&FormalObject::module(GradedModule::free(d))), FormalObject::module(GradedModule::free(-d)));
    }
    assert_eq!(dualize(&f("T(0,1)")), f("T(1,1)[-1]"));
    for g in -3..=3 {
        for n in 1..=4 {
            let x = FormalObject::module(GradedModule::torsion(g, n));
            let expect = FormalObject::at(1, GradedModule::torsion(n - g, n));
            assert_eq!(dualize(&x), expect);
            let (range, slow) = oracle_dualize(&x);
            assert_eq!(compare_profiles(&profiles_of(&expect, range), &slow, range), None);
        }
    }
}

#[test]
fn li_star_examples() {
    for d in -3..=3 {
        assert_eq!(li_star(&FormalObject::module(GradedModule::free(d)), 1).unwrap(), FormalObject::module(GradedModule::v(d)));
    }
    assert_eq!(li_star(&f("V(2)"), 1).unwrap(), f("V(2) + V(1)[1]"));
    assert_eq!(li_star(&f("T(1,2)"), 2).unwrap(), f("T(1,2) + T(-1,2)[1]"));
    for x in ["V(2)", "T(1,2)", "T(3,4) + F(1)[1]"] {
        let inst = Instance::Formal { f: f(x), n: 2 };
        assert_eq!(compare("li_star", &inst, &StandardSigma), Ok(()));
    }
}

#[test]
fn ri_flat_examples() {
    assert_eq!(ri_flat(&f("F(-2)"), 1).unwrap(), f("V(-1)[-1]"));
    assert_eq!(ri_flat(&f("F(0)"), 1).unwrap(), f("V(1)[-1]"));
    for mm in -3..=3 {
        let x = FormalObject::module(GradedModule::v(mm));
        let expect = FormalObject::from_parts([(0, GradedModule::v(mm)), (1, GradedModule::v(mm + 1))]);
        assert_eq!(ri_flat(&x, 1).unwrap(), expect);
    }
}

#[test]
fn push_and_restrict_examples() {
    for n in -3..=3 {
        assert_eq!(push_z(1, &FormalObject::module(GradedModule::v(n))).unwrap(), f(&format!("T({n},1)")));
    }
    assert!(push_z(1, &f("T(0,2)")).is_err());
    assert_eq!(restrict_u(&f("F(3) + T(1,2)[-2]")), hom(&[(0, 1), (2, 0)]));
    let x = f("F(3) + F(-1)[1] + T(1,2)[-2]");
    let dual_ranks: BTreeMap<i64, usize> = restrict_u(&x).iter().map(|(&k, &r)| (-k, r)).filter(|p| p.1 > 0).collect();
    let got: BTreeMap<i64, usize> = restrict_u(&dualize(&x)).into_iter().filter(|p| p.1 > 0).collect();
    assert_eq!(got, dual_ranks);
}

#[test]
fn r_gamma_z_examples() {
    let t = f("T(2,3)");
    let g = r_gamma_z(&t);
    assert_eq!(g.torsion, t);
    assert!(g.cofree.is_empty());
    let a = f("F(1) + V(0)[1]");
    let b = f("T(-1,2)[-1] + F(-2)");
    let (ga, gb, gab) = (r_gamma_z(&a), r_gamma_z(&b), r_gamma_z(&a.direct_sum(&b)));
    assert_eq!(gab.torsion, ga.torsion.direct_sum(&gb.torsion));
    let mut cof = [ga.cofree, gb.cofree].concat();
    cof.sort();
    assert_eq!(gab.cofree, cof);

    let g0 = r_gamma_z(&f("F(0)"));
    assert_eq!(g0.cofree.len(), 1);
    assert_eq!(g0.cofree[0].0, 1);
    assert_eq!(g0.cofree[0].1.offset, 1);
    let (range, slow) = oracle_gamma_dims(&f("F(0)"));
    for w in range.weights() {
        assert_eq!(g0.dim_at(1, w), slow.get(&(1, w)).copied().unwrap_or(0), "weight {w}");
    }
}

#[test]
fn r_gamma_z_is_the_limit_of_ri_flat() {
    for s in 0..100u64 {
        let x = sample::formal(&mut sample::rng(s, "gamma", 0));
        let g = r_gamma_z(&x);
        // Far past every torsion length and weight in the sample range.
        let r = ri_flat(&x, 30).unwrap();
        for k in -5..=5 {
            for w in -12..=12 {
                assert_eq!(g.dim_at(k, w), r.h(k).dim_at(w), "{x}: degree {k}, weight {w}");
            }
        }
    }
}

fn formal_strategy() -> impl Strategy<Value = FormalObject> {
    any::<u64>().prop_map(|s| sample::formal(&mut sample::rng(s, "prop/formal", 0)))
}

/// `x^n`-free modules on `Z_n`, which are injective and projective there.
fn zn_free(r: &mut impl rand::Rng, n: i64) -> GradedModule {
    let k = r.gen_range(1..=3);
    GradedModule::new((0..k).map(|_| Summand::Torsion { g: sample::weight(r), n }).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn double_dual_is_identity(x in formal_strategy()) {
        prop_assert_eq!(dualize(&dualize(&x)), x);
    }

    #[test]
    fn dual_exchanges_restrictions(x in formal_strategy(), n in 1i64..=4) {
        prop_assert_eq!(dualize(&li_star(&x, n).unwrap()), ri_flat(&dualize(&x), n).unwrap());
    }

    #[test]
    fn li_star_adjunction(x in formal_strategy(), s in any::<u64>(), n in 1i64..=4) {
        let g = zn_free(&mut sample::rng(s, "prop/zn", 0), n);
        let lhs = li_star(&x, n).unwrap();
        let rhs = derived_hom(&x, &push_z(n, &FormalObject::module(g.clone())).unwrap());
        for k in -6..=6 {
            // g is injective on Z_n, so Hom(L, g[k]) = Hom(H^{-k} L, g).
            let want = hom_group(&lhs.h(-k), &g).0;
            prop_assert_eq!(rhs.get(&k).copied().unwrap_or(0), want, "degree {}", k);
        }
    }

    #[test]
    fn ri_flat_adjunction(x in formal_strategy(), s in any::<u64>(), n in 1i64..=4) {
        let g = zn_free(&mut sample::rng(s, "prop/zn", 1), n);
        let rhs = ri_flat(&x, n).unwrap();
        let lhs = derived_hom(&push_z(n, &FormalObject::module(g.clone())).unwrap(), &x);
        for k in -6..=6 {
            // g is projective on Z_n, so Hom(g, R[k]) = Hom(g, H^k R).
            let want = hom_group(&g, &rhs.h(k)).0;
            prop_assert_eq!(lhs.get(&k).copied().unwrap_or(0), want, "degree {}", k);
        }
    }

    #[test]
    fn cone_long_exact_sequence(s in any::<u64>()) {
        let mut r = sample::rng(s, "prop/cone", 0);
        let mut phi: Option<ChainMap> = None;
        for k in -1..=1 {
            let (a, b) = (sample::module_with(&mut r, 2, 3), sample::module_with(&mut r, 2, 3));
            let g = chain_map(&sample::map(&mut r, &a, &b), k);
            phi = Some(match phi { None => g, Some(p) => p.direct_sum(&g) });
        }
        let phi = phi.unwrap();
        let (a, b, c) = (phi.source().normal_form(), phi.target().normal_form(), phi.cone().normal_form());
        for w in -14..=8 {
            let mut chi = 0i64;
            for k in -4..=4 {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                chi += sign * (a.h(k).dim_at(w) as i64 - b.h(k).dim_at(w) as i64 + c.h(k).dim_at(w) as i64);
            }
            prop_assert_eq!(chi, 0, "weight {}", w);
        }
    }

    #[test]
    fn cone_of_a_module_map_is_kernel_and_cokernel(s in any::<u64>()) {
        let mut r = sample::rng(s, "prop/cone", 1);
        let (a, b) = (sample::module(&mut r), sample::module(&mut r));
        let g = sample::map(&mut r, &a, &b);
        let (ker, _, coker) = kernel_image_cokernel(&g);
        prop_assert_eq!(chain_map(&g, 0).cone().normal_form(), FormalObject::from_parts([(-1, ker), (0, coker)]));
    }

    #[test]
    fn purity_duality(s in any::<u64>(), n in 1i64..=4) {
        let t = sample::torsion_module(&mut sample::rng(s, "prop/pure", 0), n);
        let cfg = SConfig::weight();
        if let Some(w) = step(Site::Zn(n), cfg, &t).unwrap() {
            let d = dualize(&FormalObject::module(t)).shift(1);
            prop_assert_eq!(d.degree_range(), Some((0, 0)));
            prop_assert_eq!(step(Site::Zn(n), cfg, &d.h(0)).unwrap(), Some(1 - w));
        }
    }

    #[test]
    fn formal_printing_round_trips(x in formal_strategy()) {
        prop_assert_eq!(FormalObject::parse(&x.to_string()).unwrap(), x.clone());
        let j = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<FormalObject>(&j).unwrap(), x);
    }
}
