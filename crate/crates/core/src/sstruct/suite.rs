//! Randomized checks of the s-structure axioms on every site.
//!
//! Dense-open quantifiers are compiled out: on the line the dense opens are `X` and
//! `U`, and the only open that is dense relative to the origin is `X` itself, so the
//! adhesiveness and S9 conditions become global vanishing statements.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{
    ge_threshold, le_threshold, member_raw, restrict_to_point, sigma_le, step, validate_object,
    Dir, SConfig, Site, SigmaWitness,
};
use crate::grmod::{
    canonical_decompose, ext1_group, hom_group, internal_hom, kernel_image_cokernel, tensor,
    GradedModule, Summand,
};
use crate::report::{Outcome, SuiteReport};
use crate::sample;

/// The σ≤w implementation under test.
pub trait SigmaRule: Sync {
    fn name(&self) -> &'static str;
    fn sigma_le(&self, site: Site, cfg: SConfig, w: i64, m: &GradedModule) -> SigmaWitness;
}

pub struct StandardSigma;

impl SigmaRule for StandardSigma {
    fn name(&self) -> &'static str {
        "standard"
    }
    fn sigma_le(&self, site: Site, cfg: SConfig, w: i64, m: &GradedModule) -> SigmaWitness {
        sigma_le(site, cfg, w, m)
    }
}

/// Cuts one weight too high. Exists to show the suite notices.
pub struct OffByOneSigma;

impl SigmaRule for OffByOneSigma {
    fn name(&self) -> &'static str {
        "off-by-one"
    }
    fn sigma_le(&self, site: Site, cfg: SConfig, w: i64, m: &GradedModule) -> SigmaWitness {
        sigma_le(site, cfg, w + 1, m)
    }
}

pub const SITES: [Site; 8] =
    [Site::X, Site::U, Site::Z, Site::Zn(1), Site::Zn(2), Site::Zn(3), Site::Zn(4), Site::Zn(5)];

struct Ctx<'a> {
    site: Site,
    cfg: SConfig,
    rule: &'a dyn SigmaRule,
}

impl Ctx<'_> {
    fn le(&self, w: i64, m: &GradedModule) -> bool {
        member_raw(self.site, self.cfg, Dir::Le, w, m)
    }

    fn ge(&self, w: i64, m: &GradedModule) -> bool {
        member_raw(self.site, self.cfg, Dir::Ge, w, m)
    }

    fn object(&self, r: &mut ChaCha8Rng) -> GradedModule {
        sample::module_on(r, self.site)
    }

    /// A random subobject and a random quotient of `m`.
    fn sub_and_quotient(&self, r: &mut ChaCha8Rng, m: &GradedModule) -> (GradedModule, GradedModule) {
        if self.site == Site::U {
            let (a, b): (Vec<Summand>, Vec<Summand>) =
                m.summands().iter().partition(|_| r.gen_bool(0.5));
            return (GradedModule::new(a), GradedModule::new(b));
        }
        let n = self.object(r);
        let f = sample::map(r, &n, m);
        let (_, im, coker) = kernel_image_cokernel(&f);
        (im, coker)
    }

    fn extension(&self, r: &mut ChaCha8Rng, a: &GradedModule, b: &GradedModule) -> Option<GradedModule> {
        if self.site == Site::U {
            return Some(a.direct_sum(b));
        }
        let e = canonical_decompose(&sample::extension(r, a, b)).expect("extension presentation");
        validate_object(self.site, &e).ok().map(|_| e)
    }

    fn hom(&self, a: &GradedModule, b: &GradedModule) -> usize {
        if self.site == Site::U {
            a.len() * b.len()
        } else {
            hom_group(a, b).0
        }
    }

    fn exact(&self, w: &SigmaWitness, m: &GradedModule) -> bool {
        if self.site == Site::U {
            return w.sub.len() + w.quotient.len() == m.len();
        }
        let (k_inc, _, _) = kernel_image_cokernel(&w.inclusion);
        let (k_proj, _, c_proj) = kernel_image_cokernel(&w.projection);
        let comp = w.projection.compose(&w.inclusion).map(|c| c.is_zero()).unwrap_or(false);
        k_inc.is_zero() && c_proj.is_zero() && comp && k_proj == w.sub
    }

    fn repro(&self, parts: &[(&str, String)]) -> String {
        let mut s = format!("site={} mode={}", self.site, self.cfg.z_mode);
        for (k, v) in parts {
            s.push_str(&format!(" {k}={v}"));
        }
        s
    }
}

fn max_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) | (None, x) => x,
    }
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) | (None, x) => x,
    }
}

type Check = fn(&Ctx, &mut ChaCha8Rng) -> Outcome;

fn s1_le_sub_quotient(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let m = c.object(r);
    let Some(w) = le_threshold(c.site, c.cfg, &m) else { return Outcome::Vacuous };
    let (sub, quot) = c.sub_and_quotient(r, &m);
    Outcome::check(c.le(w, &sub) && c.le(w, &quot), || {
        c.repro(&[("w", w.to_string()), ("M", m.to_string()), ("sub", sub.to_string()), ("quotient", quot.to_string())])
    })
}

fn s1_le_extension(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let (a, b) = (c.object(r), c.object(r));
    let Some(w) = max_opt(le_threshold(c.site, c.cfg, &a), le_threshold(c.site, c.cfg, &b)) else {
        return Outcome::Vacuous;
    };
    let Some(e) = c.extension(r, &a, &b) else { return Outcome::Vacuous };
    Outcome::check(c.le(w, &e), || {
        c.repro(&[("w", w.to_string()), ("A", a.to_string()), ("B", b.to_string()), ("E", e.to_string())])
    })
}

fn s1_ge_sub(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let m = c.object(r);
    let Some(w) = ge_threshold(c.site, c.cfg, &m) else { return Outcome::Vacuous };
    let (sub, _) = c.sub_and_quotient(r, &m);
    Outcome::check(c.ge(w, &sub), || {
        c.repro(&[("w", w.to_string()), ("M", m.to_string()), ("sub", sub.to_string())])
    })
}

fn s1_ge_extension(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let (a, b) = (c.object(r), c.object(r));
    let Some(w) = min_opt(ge_threshold(c.site, c.cfg, &a), ge_threshold(c.site, c.cfg, &b)) else {
        return Outcome::Vacuous;
    };
    let Some(e) = c.extension(r, &a, &b) else { return Outcome::Vacuous };
    Outcome::check(c.ge(w, &e), || {
        c.repro(&[("w", w.to_string()), ("A", a.to_string()), ("B", b.to_string()), ("E", e.to_string())])
    })
}

fn s2_nesting(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let m = c.object(r);
    let w = r.gen_range(-8..=8);
    let ok = (!c.le(w, &m) || c.le(w + 1, &m)) && (!c.ge(w + 1, &m) || c.ge(w, &m));
    Outcome::check(ok, || c.repro(&[("w", w.to_string()), ("M", m.to_string())]))
}

fn s3_hom_vanishing(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let w = r.gen_range(-6..=6);
    let a = sigma_le(c.site, c.cfg, w, &c.object(r)).sub;
    let b = sigma_le(c.site, c.cfg, w, &c.object(r)).quotient;
    if !(c.le(w, &a) && c.ge(w + 1, &b)) || a.is_zero() || b.is_zero() {
        return Outcome::Vacuous;
    }
    Outcome::check(c.hom(&a, &b) == 0, || {
        c.repro(&[("w", w.to_string()), ("A", a.to_string()), ("B", b.to_string())])
    })
}

fn s3_disjoint(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let m = c.object(r);
    let w = r.gen_range(-7..=7);
    if !(c.le(w, &m) && c.ge(w + 1, &m)) {
        return Outcome::Vacuous;
    }
    Outcome::check(m.is_zero(), || c.repro(&[("w", w.to_string()), ("M", m.to_string())]))
}

fn s4_sigma(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let m = c.object(r);
    let w = r.gen_range(-7..=7);
    let wit = c.rule.sigma_le(c.site, c.cfg, w, &m);
    let ok = c.le(w, &wit.sub) && c.ge(w + 1, &wit.quotient) && c.exact(&wit, &m);
    Outcome::check(ok, || {
        c.repro(&[
            ("w", w.to_string()),
            ("M", m.to_string()),
            ("sub", wit.sub.to_string()),
            ("quotient", wit.quotient.to_string()),
        ])
    })
}

fn s4_uniqueness(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let w = r.gen_range(-6..=6);
    let a = sigma_le(c.site, c.cfg, w, &c.object(r)).sub;
    let b = sigma_le(c.site, c.cfg, w, &c.object(r)).quotient;
    let Some(e) = c.extension(r, &a, &b) else { return Outcome::Vacuous };
    let got = c.rule.sigma_le(c.site, c.cfg, w, &e).sub;
    Outcome::check(got == a, || {
        c.repro(&[("w", w.to_string()), ("A", a.to_string()), ("B", b.to_string()), ("E", e.to_string()), ("sigma", got.to_string())])
    })
}

fn s4_monotone(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let m = c.object(r);
    let w = r.gen_range(-7..=7);
    let a = c.rule.sigma_le(c.site, c.cfg, w, &m).sub;
    let b = c.rule.sigma_le(c.site, c.cfg, w + 1, &m).sub;
    let ok = if c.site == Site::U {
        a.len() <= b.len()
    } else {
        (-20..=20).all(|u| a.dim_at(u) <= b.dim_at(u))
    };
    Outcome::check(ok, || c.repro(&[("w", w.to_string()), ("M", m.to_string())]))
}

fn s5_bounded(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let m = c.object(r);
    if m.is_zero() {
        return Outcome::Vacuous;
    }
    let ok = le_threshold(c.site, c.cfg, &m).is_some() && ge_threshold(c.site, c.cfg, &m).is_some();
    Outcome::check(ok, || c.repro(&[("M", m.to_string())]))
}

fn s6_tensor(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let (m, n) = (c.object(r), c.object(r));
    let (Some(w), Some(v)) = (le_threshold(c.site, c.cfg, &m), le_threshold(c.site, c.cfg, &n)) else {
        return Outcome::Vacuous;
    };
    let t = tensor(&m, &n);
    Outcome::check(c.le(w + v, &t), || {
        c.repro(&[("w", w.to_string()), ("v", v.to_string()), ("M", m.to_string()), ("N", n.to_string())])
    })
}

fn s6_internal_hom(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let (m, n) = (c.object(r), c.object(r));
    let (Some(w), Some(v)) = (le_threshold(c.site, c.cfg, &m), ge_threshold(c.site, c.cfg, &n)) else {
        return Outcome::Vacuous;
    };
    let h = internal_hom(&m, &n);
    Outcome::check(c.ge(v - w, &h), || {
        c.repro(&[("w", w.to_string()), ("v", v.to_string()), ("M", m.to_string()), ("N", n.to_string())])
    })
}

/// On a thickening there are no proper dense opens, so the generic `≥` category is
/// `C≥w` itself and must be Serre.
fn s7_serre(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    if !matches!(c.site, Site::Z | Site::Zn(_)) {
        return generic_ge_quotients(c, r);
    }
    let m = c.object(r);
    let Some(w) = ge_threshold(c.site, c.cfg, &m) else { return Outcome::Vacuous };
    let (sub, quot) = c.sub_and_quotient(r, &m);
    let other = sigma_le(c.site, c.cfg, w - 1, &c.object(r)).quotient;
    let ext = c.extension(r, &m, &other);
    let ok = c.ge(w, &sub) && c.ge(w, &quot) && ext.as_ref().is_none_or(|e| c.ge(w, e));
    Outcome::check(ok, || {
        c.repro(&[("w", w.to_string()), ("M", m.to_string()), ("N", other.to_string())])
    })
}

/// On `X` and `U` the generic category is tested on the open orbit: `w ≤ 0` or rank 0.
fn generic_ge_quotients(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    let m = c.object(r);
    let w = r.gen_range(-3..=3);
    let generic = |x: &GradedModule| w <= 0 || x.free_rank() == 0;
    if !generic(&m) {
        return Outcome::Vacuous;
    }
    let (_, quot) = c.sub_and_quotient(r, &m);
    Outcome::check(generic(&quot), || {
        c.repro(&[("w", w.to_string()), ("M", m.to_string()), ("quotient", quot.to_string())])
    })
}

fn s8_tensor(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    if !matches!(c.site, Site::Z | Site::Zn(_)) {
        return Outcome::Vacuous;
    }
    let (m, n) = (c.object(r), c.object(r));
    let (Some(w), Some(v)) = (ge_threshold(c.site, c.cfg, &m), ge_threshold(c.site, c.cfg, &n)) else {
        return Outcome::Vacuous;
    };
    let t = tensor(&m, &n);
    Outcome::check(c.ge(w + v, &t), || {
        c.repro(&[("w", w.to_string()), ("v", v.to_string()), ("M", m.to_string()), ("N", n.to_string())])
    })
}

/// For `F` on `X` with `i*F ∈ C≤w` and `G ∈ C≥w+1` on a thickening, both `Hom(F, G)`
/// and `Ext¹(F, G)` vanish.
fn s9_adhesive(c: &Ctx, r: &mut ChaCha8Rng) -> Outcome {
    if !matches!(c.site, Site::Z | Site::Zn(_)) {
        return Outcome::Vacuous;
    }
    let f = sample::module(r);
    let Some(w) = le_threshold(Site::Z, c.cfg, &restrict_to_point(&f)) else { return Outcome::Vacuous };
    let g = sigma_le(c.site, c.cfg, w, &c.object(r)).quotient;
    if g.is_zero() || !c.ge(w + 1, &g) {
        return Outcome::Vacuous;
    }
    let ok = hom_group(&f, &g).0 == 0 && ext1_group(&f, &g) == 0;
    Outcome::check(ok, || c.repro(&[("w", w.to_string()), ("F", f.to_string()), ("G", g.to_string())]))
}

/// The ideal `(x) = F(-1)` restricts into the `≤ 0` category on every thickening.
fn a1_ideal(c: &Ctx, _: &mut ChaCha8Rng) -> Outcome {
    let ideal = GradedModule::free(-1);
    let ok = match c.site {
        Site::Z => c.le(0, &restrict_to_point(&ideal)),
        Site::Zn(n) => c.le(0, &GradedModule::torsion(-1, n)),
        _ => return Outcome::Vacuous,
    };
    Outcome::check(ok, || c.repro(&[("F", ideal.to_string())]))
}

fn structure_sheaf(c: &Ctx, _: &mut ChaCha8Rng) -> Outcome {
    if c.site != Site::X {
        return Outcome::Vacuous;
    }
    let o = GradedModule::free(0);
    let ok = step(Site::X, c.cfg, &o) == Ok(Some(0))
        && c.rule.sigma_le(Site::X, c.cfg, -1, &o).sub.is_zero();
    Outcome::check(ok, || c.repro(&[("M", o.to_string())]))
}

const CHECKS: &[(&str, Check)] = &[
    ("A1 ideal restriction", a1_ideal),
    ("A2/S9 vanishing against thickenings", s9_adhesive),
    ("S1 le closed under extensions", s1_le_extension),
    ("S1 le closed under subobjects and quotients", s1_le_sub_quotient),
    ("S1 ge closed under extensions", s1_ge_extension),
    ("S1 ge closed under subobjects", s1_ge_sub),
    ("S2 nesting", s2_nesting),
    ("S3 disjointness", s3_disjoint),
    ("S3 hom vanishing", s3_hom_vanishing),
    ("S4 sigma sequence", s4_sigma),
    ("S4 sigma monotone", s4_monotone),
    ("S4 sigma uniqueness", s4_uniqueness),
    ("S5 boundedness", s5_bounded),
    ("S6 tensor", s6_tensor),
    ("S6' internal hom", s6_internal_hom),
    ("S7 generic ge is Serre", s7_serre),
    ("S8 generic tensor", s8_tensor),
    ("structure sheaf pure of step 0", structure_sheaf),
];

pub fn axiom_suite(cfg: SConfig, seed: u64, samples: usize) -> SuiteReport {
    axiom_suite_with(cfg, seed, samples, &StandardSigma)
}

pub fn axiom_suite_with(cfg: SConfig, seed: u64, samples: usize, rule: &dyn SigmaRule) -> SuiteReport {
    let mut report = SuiteReport::new("axioms", seed, samples)
        .with_config("z_mode", cfg.z_mode)
        .with_config("sigma", rule.name());
    for &(name, check) in CHECKS {
        for site in SITES {
            let ctx = Ctx { site, cfg, rule };
            let label = format!("{name}/{site}");
            for i in 0..samples {
                let mut r = sample::rng(seed, &label, i as u64);
                report.record(name, check(&ctx, &mut r));
            }
        }
    }
    report
}
