use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::heart::hom0;
use super::{
    aisle_member, aisle_member_shifted, aisle_member_with_bound, geometry_report, heart_kernel_cokernel,
    is_in_heart, jh_factors, simples, stabilization_bound, stag_truncate, validate_perversity,
    zn_aisle_member, Aisle, Perversity, SimpleLabel,
};
use crate::derived::{dualize, push_z, std_truncate, ChainComplex, ChainMap, FormalObject, Truncation};
use crate::grmod::Summand;
use crate::report::{Outcome, SuiteReport};
use crate::sample;
use crate::sstruct::{SConfig, ZMode};
use crate::{Error, Result};

/// Base shift window for the boundedness and nondegeneracy checks; it is widened by
/// the size of each sampled object, since staggered degrees mix weights and degrees.
pub const WINDOW: i64 = 10;

fn window(f: &FormalObject) -> i64 {
    let size = f
        .pieces()
        .map(|(k, s)| k.abs() + s.top().abs() + s.length().unwrap_or(0))
        .max()
        .unwrap_or(0);
    WINDOW + 2 * size
}

struct Ctx {
    p: Perversity,
    dual: Perversity,
    cfg: SConfig,
    strict: bool,
    middle: bool,
}

impl Ctx {
    fn le(&self, f: &FormalObject) -> bool {
        aisle_member(self.p, self.cfg, f, Aisle::Le0)
    }

    fn ge(&self, f: &FormalObject) -> bool {
        aisle_member(self.p, self.cfg, f, Aisle::Ge0)
    }

    fn repro(&self, parts: &[(&str, String)]) -> String {
        let mut s = format!("p={} mode={}", self.p, self.cfg.z_mode);
        for (k, v) in parts {
            s.push_str(&format!(" {k}={v}"));
        }
        s
    }

    /// A random heart object assembled from indecomposable heart pieces.
    fn heart_object(&self, r: &mut ChaCha8Rng) -> FormalObject {
        let c = self.p.pz - self.p.pu - 1;
        let mut parts = Vec::new();
        for _ in 0..r.gen_range(1..=3) {
            let piece = match r.gen_range(0..4) {
                0 => (self.p.pu, Summand::Free(c + r.gen_range(-1..=1))),
                _ => {
                    let n = r.gen_range(-3..=3);
                    (self.p.pz - n, Summand::v(n))
                }
            };
            parts.push(piece);
        }
        FormalObject::from_summands(parts)
    }
}

type Check = fn(&Ctx, &mut ChaCha8Rng) -> Outcome;

fn orthogonality(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let (f, g) = (sample::formal(r), sample::formal(r));
    let (Ok(tf), Ok(tg)) = (stag_truncate(c.p, c.cfg, 0, &f), stag_truncate(c.p, c.cfg, 0, &g)) else {
        return Outcome::Fail(c.repro(&[("F", f.to_string()), ("G", g.to_string()), ("error", "no triangle".into())]));
    };
    let (a, b) = (tf.below, tg.above);
    if a.is_zero() || b.is_zero() {
        return Outcome::Vacuous;
    }
    Outcome::check(hom0(&a, &b) == 0, || c.repro(&[("A", a.to_string()), ("B", b.to_string())]))
}

fn truncation_triangle(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let f = sample::formal(r);
    let n = r.gen_range(-3..=3);
    let t = match stag_truncate(c.p, c.cfg, n, &f) {
        Ok(t) => t,
        Err(e) => return Outcome::Fail(c.repro(&[("n", n.to_string()), ("F", f.to_string()), ("error", e.to_string())])),
    };
    let audit = t.audit();
    let ok = aisle_member_shifted(c.p, c.cfg, &t.below, Aisle::Le0, n)
        && aisle_member_shifted(c.p, c.cfg, &t.above, Aisle::Ge0, n + 1)
        && audit.is_ok();
    Outcome::check(ok, || {
        c.repro(&[
            ("n", n.to_string()),
            ("F", f.to_string()),
            ("below", t.below.to_string()),
            ("above", t.above.to_string()),
            ("audit", format!("{audit:?}")),
        ])
    })
}

fn truncation_idempotent(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let f = sample::formal(r);
    let n = r.gen_range(-3..=3);
    let Ok(t) = stag_truncate(c.p, c.cfg, n, &f) else { return Outcome::Vacuous };
    let again_below = stag_truncate(c.p, c.cfg, n, &t.below).map(|x| x.above.is_zero() && x.below == t.below);
    let again_above = stag_truncate(c.p, c.cfg, n, &t.above).map(|x| x.below.is_zero() && x.above == t.above);
    Outcome::check(again_below.unwrap_or(false) && again_above.unwrap_or(false), || {
        c.repro(&[("n", n.to_string()), ("F", f.to_string())])
    })
}

fn shift_nesting(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let f = sample::formal(r);
    let ok = (!c.le(&f) || c.le(&f.shift(1))) && (!c.ge(&f) || c.ge(&f.shift(-1)));
    Outcome::check(ok, || c.repro(&[("F", f.to_string())]))
}

fn duality_exchange(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let f = sample::formal(r);
    let d = dualize(&f);
    let ok = c.le(&f) == aisle_member(c.dual, c.cfg, &d, Aisle::Ge0)
        && c.ge(&f) == aisle_member(c.dual, c.cfg, &d, Aisle::Le0);
    Outcome::check(ok, || c.repro(&[("F", f.to_string())]))
}

fn std_truncation_stability(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let f = sample::formal(r);
    if !c.le(&f) {
        return Outcome::Vacuous;
    }
    let n = r.gen_range(-4..=4);
    let ok = c.le(&std_truncate(&f, Truncation::Le(n))) && c.le(&std_truncate(&f, Truncation::Ge(n)));
    Outcome::check(ok, || c.repro(&[("n", n.to_string()), ("F", f.to_string())]))
}

fn pushforward(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let n = r.gen_range(1..=4);
    let g = sample::formal_torsion(r, n);
    if !zn_aisle_member(c.p.pz, c.cfg, n, &g, Aisle::Le0) {
        return Outcome::Vacuous;
    }
    let pushed = push_z(n, &g).expect("x^n-torsion sample");
    Outcome::check(c.le(&pushed), || c.repro(&[("n", n.to_string()), ("G", g.to_string())]))
}

fn bounded_nondegenerate(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let f = sample::formal(r);
    if f.is_zero() {
        return Outcome::Vacuous;
    }
    let le = |a| aisle_member_shifted(c.p, c.cfg, &f, Aisle::Le0, a);
    let ge = |a| aisle_member_shifted(c.p, c.cfg, &f, Aisle::Ge0, a);
    let w = window(&f);
    let bounded = le(w) && ge(-w);
    let nondegenerate = !le(-w) && !ge(w);
    Outcome::check(bounded && nondegenerate, || c.repro(&[("F", f.to_string())]))
}

fn stabilization(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let f = sample::formal(r);
    let b = stabilization_bound(&f) + 3;
    let ok = [Aisle::Le0, Aisle::Ge0]
        .into_iter()
        .all(|a| aisle_member(c.p, c.cfg, &f, a) == aisle_member_with_bound(c.p, c.cfg, &f, a, b));
    Outcome::check(ok, || c.repro(&[("F", f.to_string())]))
}

/// Objects supported at the origin lie in the heart exactly when each `H^k` is pure of
/// step `p(Z) - k`.
fn closed_orbit_purity(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    if c.cfg.z_mode != ZMode::Weight {
        return Outcome::Vacuous;
    }
    let n = r.gen_range(1..=3);
    let mut g = sample::formal_torsion(r, n);
    if r.gen_bool(0.5) {
        let parts: Vec<(i64, Summand)> = (0..r.gen_range(1..=3))
            .map(|_| {
                let k = r.gen_range(-3..=3);
                (k, Summand::v(c.p.pz - k))
            })
            .collect();
        g = FormalObject::from_summands(parts);
    }
    let pure = g.components().iter().all(|(&k, m)| m.summands().iter().all(|s| *s == Summand::v(c.p.pz - k)));
    Outcome::check(is_in_heart(c.p, c.cfg, &g) == pure, || c.repro(&[("G", g.to_string())]))
}

fn random_heart_map(c: &Ctx, r: &mut ChaCha8Rng) -> ChainMap {
    let (a, b) = (c.heart_object(r), c.heart_object(r));
    let maps = a
        .components()
        .iter()
        .filter_map(|(&k, m)| {
            let n = b.h(k);
            (!n.is_zero()).then(|| (k, sample::map(r, m, &n).matrix()))
        })
        .collect();
    ChainMap::new(ChainComplex::from_formal(&a), ChainComplex::from_formal(&b), maps).expect("degreewise map")
}

fn heart_exactness(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    if !c.strict {
        return Outcome::Vacuous;
    }
    let f = random_heart_map(c, r);
    let (a, b) = (f.source().normal_form(), f.target().normal_form());
    match heart_kernel_cokernel(c.p, c.cfg, &f) {
        Ok(k) => {
            let ok = k.lengths_balance == Some(true) && is_in_heart(c.p, c.cfg, &k.kernel) && is_in_heart(c.p, c.cfg, &k.cokernel);
            Outcome::check(ok, || {
                c.repro(&[("A", a.to_string()), ("B", b.to_string()), ("ker", k.kernel.to_string()), ("coker", k.cokernel.to_string())])
            })
        }
        Err(e) => Outcome::Fail(c.repro(&[("A", a.to_string()), ("B", b.to_string()), ("error", e.to_string())])),
    }
}

fn jh_additive(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    if !c.strict {
        return Outcome::Vacuous;
    }
    let (a, b) = (c.heart_object(r), c.heart_object(r));
    let (Ok(ja), Ok(jb), Ok(jab)) =
        (jh_factors(c.p, c.cfg, &a), jh_factors(c.p, c.cfg, &b), jh_factors(c.p, c.cfg, &a.direct_sum(&b)))
    else {
        return Outcome::Fail(c.repro(&[("A", a.to_string()), ("B", b.to_string())]));
    };
    let mut both = ja.factors.clone();
    both.extend(jb.factors);
    both.sort();
    let mut shuffled: Vec<(i64, Summand)> = a.direct_sum(&b).pieces().collect();
    shuffled.shuffle(r);
    let again = jh_factors(c.p, c.cfg, &FormalObject::from_summands(shuffled)).map(|j| j.factors);
    Outcome::check(both == jab.factors && again.as_ref() == Ok(&jab.factors), || {
        c.repro(&[("A", a.to_string()), ("B", b.to_string())])
    })
}

fn jh_witness(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    if !c.strict {
        return Outcome::Vacuous;
    }
    let f = c.heart_object(r);
    let res = jh_factors(c.p, c.cfg, &f).map_err(|e| e.to_string()).and_then(|j| j.audit(c.p, c.cfg));
    Outcome::check(res.is_ok(), || c.repro(&[("F", f.to_string()), ("error", format!("{res:?}"))]))
}

fn middle_duality(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    if !(c.strict && c.middle) {
        return Outcome::Vacuous;
    }
    let n = r.gen_range(-6..=6);
    let Ok(list) = simples(c.p, c.cfg, n, n) else { return Outcome::Fail(c.repro(&[("n", n.to_string())])) };
    let dual_of = |l: SimpleLabel| match l {
        SimpleLabel::OX => SimpleLabel::OX,
        SimpleLabel::SZ(m) => SimpleLabel::SZ(1 - m),
    };
    let ok = list.iter().all(|(l, obj)| {
        let want = simples(c.p, c.cfg, 1 - n, 1 - n).ok().and_then(|v| v.into_iter().find(|x| x.0 == dual_of(*l)));
        want.is_some_and(|w| dualize(obj) == w.1)
    });
    Outcome::check(ok, || c.repro(&[("n", n.to_string())]))
}

const CHECKS: &[(&str, Check)] = &[
    ("(i) orthogonality", orthogonality),
    ("(ii) truncation triangle", truncation_triangle),
    ("(ii) truncation idempotent", truncation_idempotent),
    ("(iii) shift nesting", shift_nesting),
    ("(iv) duality exchange", duality_exchange),
    ("(v) standard truncation stability", std_truncation_stability),
    ("(vi) push-forward from thickenings", pushforward),
    ("(vii) bounded and nondegenerate", bounded_nondegenerate),
    ("aisle verdict stable beyond the bound", stabilization),
    ("closed-orbit purity", closed_orbit_purity),
    ("heart exactness", heart_exactness),
    ("composition factors additive", jh_additive),
    ("composition series witness", jh_witness),
    ("middle duality of simples", middle_duality),
];

pub fn tstructure_suite(p: Perversity, cfg: SConfig, seed: u64, samples: usize) -> Result<SuiteReport> {
    let rep = validate_perversity(p, cfg);
    if !rep.ok {
        return Err(Error::Input(format!("perversity {p} is not admissible: {}", rep.violations.join("; "))));
    }
    let ctx = Ctx { p, dual: p.dual(&geometry_report(cfg)), cfg, strict: rep.strict, middle: rep.middle };
    let mut report = SuiteReport::new("tstructure", seed, samples)
        .with_config("perversity", p)
        .with_config("z_mode", cfg.z_mode);
    for &(name, check) in CHECKS {
        for i in 0..samples {
            let mut r = sample::rng(seed, name, i as u64);
            report.record(name, check(&ctx, &mut r));
        }
    }
    Ok(report)
}

