//! End-to-end acceptance run. Each criterion prints one `PASS`/`FAIL` line with its
//! wall time to stderr; the test fails if any criterion fails or takes a minute or more.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use stagger::derived::{derived_hom, dualize, li_star, ri_flat, FormalObject};
use stagger::flag::flag_verify;
use stagger::grmod::{ext1_group, parse, GradedModule};
use stagger::oracle::{agreement, agreement_with, compare_profiles, oracle_dualize, profiles_of, OPERATIONS};
use stagger::sample;
use stagger::sstruct::{axiom_suite, axiom_suite_with, member, sigma, step, Dir, OffByOneSigma, SConfig, Site};
use stagger::stag::{geometry_report, heart_kernel_cokernel, jh_factors, simple, simples, tstructure_suite, Perversity, SimpleLabel};

const W: SConfig = SConfig { z_mode: stagger::sstruct::ZMode::Weight };
const T: SConfig = SConfig { z_mode: stagger::sstruct::ZMode::Trivial };
const P: Perversity = Perversity { pu: 0, pz: 1 };
const SEEDS: [u64; 3] = [1, 2, 3];
const BUDGET: Duration = Duration::from_secs(60);

type Check = Result<(), String>;

fn f(s: &str) -> FormalObject {
    FormalObject::parse(s).unwrap()
}

fn m(s: &str) -> GradedModule {
    parse::module(s).unwrap()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(got: T, want: T, what: &str) -> Check {
    ensure(got == want, || format!("{what}: got {got:?}, want {want:?}"))
}

fn structure_sheaf_purity() -> Check {
    eq(step(Site::X, W, &m("F(0)")).unwrap(), Some(0), "step F(0)")?;
    let s = sigma(Site::X, W, Dir::Le, -1, &m("F(0)")).unwrap();
    ensure(s.sub.is_zero(), || format!("σ≤−1 F(0) = {}", s.sub))
}

fn ideal_restriction() -> Check {
    let r = li_star(&f("F(-1)"), 1).unwrap();
    eq(r.h(0), GradedModule::v(-1), "H⁰ Li*F(−1)")
}

fn dualizing_data() -> Check {
    eq(ri_flat(&f("F(0)"), 1).unwrap(), FormalObject::at(1, GradedModule::v(1)), "Ri♭F(0)")?;
    let g = geometry_report(W);
    eq((g.cod_z, g.alt_z, g.scod_z, g.scod_u), (1, 1, 2, 0), "(cod Z, alt Z, scod Z, scod U)")
}

fn remark_vectors() -> Check {
    eq(member(Site::X, W, Dir::Ge, 0, &m("F(-2)")).unwrap(), true, "F(−2) ∈ C≥0")?;
    eq(member(Site::X, W, Dir::Ge, 0, &m("T(-2,1)")).unwrap(), false, "T(−2,1) ∈ C≥0")?;
    eq(ri_flat(&f("F(-2)"), 1).unwrap(), FormalObject::at(1, GradedModule::v(-1)), "Ri♭F(−2)")?;
    eq(ext1_group(&m("T(-1,1)"), &m("F(-2)")), 1, "Ext¹(T(−1,1), F(−2))")
}

fn simple_objects() -> Check {
    let s = simples(P, W, -5, 5).unwrap();
    let mut want = vec![(SimpleLabel::OX, f("F(0)"))];
    want.extend((-5..=5).map(|n| (SimpleLabel::SZ(n), FormalObject::at(1 - n, GradedModule::v(n)))));
    eq(&s, &want, "simples over [−5, 5]")?;
    for (label, x) in &s {
        let jh = jh_factors(P, W, x).map_err(|e| format!("jh {label}: {e}"))?;
        eq(jh.factors.clone(), vec![*label], &format!("jh {label}"))?;
        jh.audit(P, W).map_err(|e| format!("jh audit {label}: {e}"))?;
    }
    for (a, x) in &s {
        for (b, y) in &s {
            let dim = derived_hom(x, y).get(&0).copied().unwrap_or(0);
            eq(dim, usize::from(a == b), &format!("dim Hom({a}, {b})"))?;
        }
    }
    Ok(())
}

fn composition_series() -> Check {
    let r = jh_factors(P, W, &f("F(1)")).unwrap();
    eq(r.factors.clone(), vec![SimpleLabel::OX, SimpleLabel::SZ(1)], "jh F(1)")?;
    r.audit(P, W).map_err(|e| format!("witness audit: {e}"))?;
    let objects: Vec<FormalObject> = r.witness.iter().map(|s| s.object.clone()).collect();
    eq(objects, vec![f("F(0)"), f("F(1)")], "filtration")?;
    // The second step is the inclusion OX ↪ F(1); its heart cokernel is SZ(1).
    let k = heart_kernel_cokernel(P, W, &r.witness[1].map).unwrap();
    eq(k.source, simple(P, W, SimpleLabel::OX).unwrap(), "sub")?;
    eq(k.kernel, FormalObject::zero(), "kernel")?;
    eq(k.cokernel, simple(P, W, SimpleLabel::SZ(1)).unwrap(), "quotient")
}

fn middle_self_duality() -> Check {
    for (label, x) in simples(P, W, -5, 5).unwrap() {
        let d = dualize(&x);
        let image = match label {
            SimpleLabel::OX => SimpleLabel::OX,
            SimpleLabel::SZ(n) => SimpleLabel::SZ(1 - n),
        };
        eq(&d, &simple(P, W, image).unwrap(), &format!("𝔻 {label}"))?;
        let (range, slow) = oracle_dualize(&x);
        if let Some(diff) = compare_profiles(&profiles_of(&d, range), &slow, range) {
            return Err(format!("oracle disagrees on 𝔻 {label}: {diff}"));
        }
    }
    Ok(())
}

fn axiom_suites() -> Check {
    for cfg in [W, T] {
        for seed in SEEDS {
            let r = axiom_suite(cfg, seed, 200);
            ensure(r.is_clean(), || r.to_text())?;
        }
    }
    let r = axiom_suite_with(W, 1, 200, &OffByOneSigma);
    ensure(r.violations >= 1, || "the off-by-one σ went unnoticed".into())
}

fn tstructure_suites() -> Check {
    for cfg in [W, T] {
        for seed in SEEDS {
            let r = tstructure_suite(P, cfg, seed, 200).unwrap();
            ensure(r.is_clean(), || r.to_text())?;
        }
    }
    Ok(())
}

fn duality_identities() -> Check {
    for i in 0..200 {
        let x = sample::formal(&mut sample::rng(1, "acceptance/duality", i));
        eq(&dualize(&dualize(&x)), &x, &format!("𝔻𝔻 {x}"))?;
        for n in 1..=4 {
            let lhs = dualize(&li_star(&x, n).unwrap());
            let rhs = ri_flat(&dualize(&x), n).unwrap();
            eq(&lhs, &rhs, &format!("𝔻 Li* vs Ri♭ 𝔻 on {x}, n = {n}"))?;
        }
    }
    Ok(())
}

fn purity_duality() -> Check {
    let mut seen = 0;
    let mut i = 0;
    while seen < 100 {
        let n = 1 + (i % 4) as i64;
        let t = sample::torsion_module(&mut sample::rng(1, "acceptance/pure", i), n);
        i += 1;
        let Some(w) = step(Site::Zn(n), W, &t).unwrap() else { continue };
        seen += 1;
        let d = dualize(&FormalObject::module(t.clone())).shift(1);
        eq(d.degree_range(), Some((0, 0)), &format!("𝔻({t})[1] concentration"))?;
        eq(step(Site::Zn(n), W, &d.h(0)).unwrap(), Some(1 - w), &format!("step 𝔻({t})[1]"))?;
    }
    Ok(())
}

fn flag_verifier() -> Check {
    let r = flag_verify();
    ensure(r.pass, || r.to_text())?;
    eq(r.f2.iter().map(|c| c.n).collect::<Vec<_>>(), (-4..=4).collect(), "F2 window")?;
    ensure(r.f1.in_c_le_0 && r.f2.iter().all(|c| c.in_c_le_n && c.pure_of_step_n), || "F1/F2".into())?;
    eq(r.omega_z.h1_weights.clone(), vec![-1], "weights of H¹(ω_Z)")?;
    eq(r.omega_z.alt_z, 1, "alt Z")?;
    eq((r.scod.computed_z, r.scod.asserted_z), (2, 3), "scod Z computed / asserted")?;
    ensure(r.scod.strict_with_computed && r.scod.strict_with_asserted, || "strictness".into())?;
    let text = r.to_text();
    ensure(text.contains("Z = 2") && text.contains("Z = 3"), || text.clone())
}

fn oracle_agreement() -> Check {
    let r = agreement(1, 200);
    eq(r.checks.len(), OPERATIONS.len(), "operations checked")?;
    ensure(r.is_clean() && r.checks.values().all(|t| t.pass == 200), || r.to_text())?;
    let bad = agreement_with(&["sigma"], 1, 200, &OffByOneSigma).unwrap();
    ensure(!bad.is_clean(), || "fault not detected".into())?;
    let examples = &bad.checks["sigma"].counterexamples;
    ensure(!examples.is_empty(), || "no counterexample recorded".into())?;
    for c in examples {
        let module = c.split("M = ").nth(1).and_then(|s| s.split(" ::").next()).unwrap_or("");
        ensure(parse::module(module).map(|x| x.len() == 1).unwrap_or(false), || format!("not minimal: {c}"))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 13] = [
        ("structure sheaf is pure of step 0", structure_sheaf_purity),
        ("ideal restricts to V(-1)", ideal_restriction),
        ("dualizing data and geometry", dualizing_data),
        ("remark vectors", remark_vectors),
        ("simple objects", simple_objects),
        ("composition series of F(1)", composition_series),
        ("middle perversity self-duality", middle_self_duality),
        ("axiom suites", axiom_suites),
        ("t-structure suites", tstructure_suites),
        ("duality identities", duality_identities),
        ("purity duality on thickenings", purity_duality),
        ("flag verifier", flag_verifier),
        ("oracle agreement", oracle_agreement),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| ensure(elapsed < BUDGET, || format!("took {elapsed:?}")));
        let n = i + 1;
        let secs = elapsed.as_secs_f64();
        let line = match &outcome {
            Ok(()) => format!("criterion {n:>2}: PASS  {name} ({secs:.2}s)\n"),
            Err(e) => {
                failed.push(n);
                format!("criterion {n:>2}: FAIL  {name} ({secs:.2}s): {e}\n")
            }
        };
        // Written to the raw stream so the lines survive the harness's output capture.
        std::io::stderr().write_all(line.as_bytes()).unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
