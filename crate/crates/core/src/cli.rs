//! The `stagger` command line.
//!
//! Operation verbs print one sorted JSON object. Suite verbs (`axioms`, `tsuite`,
//! `flag-verify`) and `geometry`/`validate-p` print a plain-text table unless `--json`
//! is given. Exit codes: 0 on success, 1 on input errors, 2 when a suite reports a
//! violation or `--oracle` finds a disagreement.

use std::io::Write;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::derived::{dualize, li_star, r_gamma_z, ri_flat, FormalObject};
use crate::flag::flag_verify;
use crate::grmod::{
    canonical_decompose, ext1_group, hom_group, internal_hom, parse, tensor, GradedMap, GradedModule, Presentation,
    PresentationJson,
};
use crate::oracle::{agreement, compare, oracle_aisle, Instance};
use crate::report::SuiteReport;
use crate::sstruct::{
    axiom_suite, ge_threshold, le_threshold, member, sigma, step, validate_object, Dir, SConfig, Site, StandardSigma,
    ZMode,
};
use crate::stag::{
    aisle_member, geometry_report, ic, is_in_heart, jh_factors, simples, stag_truncate, tstructure_suite,
    validate_perversity, Aisle, IcSpec, Perversity,
};
use crate::{Error, Result};

/// Default seed when neither `--seed` nor `STAGGER_SEED` is set.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Decompose,
    Member,
    Sigma,
    Step,
    Tensor,
    Chom,
    Dual,
    Li,
    Riflat,
    Gammaz,
    Trunc,
    Heart,
    Jh,
    Simples,
    Ic,
    Geometry,
    #[value(name = "validate-p")]
    ValidateP,
    Axioms,
    Tsuite,
    #[value(name = "flag-verify")]
    FlagVerify,
}

#[derive(Debug, Parser)]
#[command(name = "stagger", version, about = "Staggered t-structures on the scaling-equivariant line")]
pub struct Command {
    #[arg(value_enum)]
    pub verb: Verb,
    /// Module or object expressions, e.g. `F(1) + T(0,2)[1]`.
    pub exprs: Vec<String>,
    #[arg(long, default_value = "X")]
    pub site: String,
    #[arg(long = "z-mode", default_value = "weight")]
    pub z_mode: String,
    #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
    pub perversity: String,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "ge")]
    pub le: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub ge: Option<i64>,
    /// Thickening order for `li`/`riflat`, truncation level for `trunc`, index bound for `simples`.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    /// Replace the input object `F` by `F[shift]`.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub shift: i64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long)]
    pub json: bool,
    /// Recompute with the reference implementation and fail on any difference.
    #[arg(long)]
    pub oracle: bool,
    /// Also write the report to this file.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

/// Options after validation.
struct Ctx {
    site: Site,
    cfg: SConfig,
    p: Perversity,
    seed: u64,
    cmd: Command,
}

/// What a verb produced.
struct Outcome {
    text: String,
    exit: i32,
}

impl Outcome {
    fn json(v: &Value) -> Self {
        Self { text: render(v), exit: 0 }
    }
}

fn render(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(&serde_json::to_value(v).expect("report serializes"))
        .expect("value serializes");
    s.push('\n');
    s
}

fn annotate(e: &Error, inputs: &[String]) -> String {
    match e {
        Error::Parse { pos, .. } => match inputs.iter().find(|s| parse_error_at(s, *pos)) {
            Some(src) => format!("error: {e}\n  {src}\n  {}^\n", " ".repeat(*pos)),
            None => format!("error: {e}\n"),
        },
        _ => format!("error: {e}\n"),
    }
}

fn parse_error_at(src: &str, pos: usize) -> bool {
    matches!(FormalObject::parse(src), Err(Error::Parse { pos: p, .. }) if p == pos)
        || matches!(parse::module(src), Err(Error::Parse { pos: p, .. }) if p == pos)
}

/// Run `stagger` with `argv` (including the program name), writing the report to `out`.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cmd = match Command::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    let inputs = cmd.exprs.clone();
    let out_file = cmd.out.clone();
    let result = validate(cmd).and_then(dispatch);
    let (text, code) = match result {
        Ok(o) => (o.text, o.exit),
        Err(e) => (annotate(&e, &inputs), 1),
    };
    let _ = out.write_all(text.as_bytes());
    if let Some(path) = out_file {
        if let Err(e) = std::fs::write(&path, &text) {
            let _ = writeln!(out, "error: cannot write {}: {e}", path.display());
            return 1;
        }
    }
    code
}

fn validate(cmd: Command) -> Result<Ctx> {
    let site: Site = cmd.site.parse()?;
    let z_mode: ZMode = cmd.z_mode.parse()?;
    let p: Perversity = cmd.perversity.parse()?;
    let seed = match cmd.seed {
        Some(s) => s,
        None => match std::env::var("STAGGER_SEED") {
            Ok(v) => v.trim().parse().map_err(|_| Error::Input(format!("STAGGER_SEED is not a number: {v:?}")))?,
            Err(_) => DEFAULT_SEED,
        },
    };
    let arity = match cmd.verb {
        Verb::Tensor | Verb::Chom => 2,
        Verb::Simples | Verb::Geometry | Verb::ValidateP | Verb::Axioms | Verb::Tsuite | Verb::FlagVerify => 0,
        _ => 1,
    };
    if cmd.exprs.len() != arity {
        return Err(Error::Input(format!("{:?} takes {arity} expression(s), got {}", cmd.verb, cmd.exprs.len())));
    }
    if matches!(cmd.verb, Verb::Member | Verb::Sigma) && cmd.le.is_none() && cmd.ge.is_none() {
        return Err(Error::Input("one of --le or --ge is required".into()));
    }
    if matches!(cmd.verb, Verb::Li | Verb::Riflat) && cmd.n.is_some_and(|n| n < 1) {
        return Err(Error::Input("--n must be at least 1".into()));
    }
    if matches!(cmd.verb, Verb::Simples) && cmd.n.is_some_and(|n| n < 0) {
        return Err(Error::Input("--n must be non-negative".into()));
    }
    Ok(Ctx { site, cfg: SConfig { z_mode }, p, seed, cmd })
}

impl Ctx {
    fn module(&self, i: usize) -> Result<GradedModule> {
        parse::module(&self.cmd.exprs[i])
    }

    fn object(&self) -> Result<FormalObject> {
        Ok(FormalObject::parse(&self.cmd.exprs[0])?.shift(self.cmd.shift))
    }

    fn dir_w(&self) -> (Dir, i64) {
        match (self.cmd.le, self.cmd.ge) {
            (Some(w), _) => (Dir::Le, w),
            (None, Some(w)) => (Dir::Ge, w),
            (None, None) => unreachable!("checked in validate"),
        }
    }

    fn base(&self) -> Value {
        json!({ "verb": verb_name(self.cmd.verb) })
    }

    /// Run the reference comparisons and attach their verdict.
    fn checked(&self, mut v: Value, checks: &[(&str, Instance)]) -> Outcome {
        let mut exit = 0;
        if self.cmd.oracle {
            let mut diffs = serde_json::Map::new();
            for (op, inst) in checks {
                if let Err(why) = compare(op, inst, &StandardSigma) {
                    diffs.insert(op.to_string(), json!(format!("{inst} :: {why}")));
                }
            }
            if !diffs.is_empty() {
                exit = 2;
            }
            v["oracle"] = json!({ "agree": diffs.is_empty(), "checked": checks.iter().map(|c| c.0).collect::<Vec<_>>(), "diffs": diffs });
        }
        Outcome { text: render(&v), exit }
    }

    fn suite(&self, mut reports: Vec<SuiteReport>) -> Outcome {
        if self.cmd.oracle {
            reports.push(agreement(self.seed, self.cmd.samples));
        }
        let exit = if reports.iter().all(SuiteReport::is_clean) { 0 } else { 2 };
        let text = if self.cmd.json {
            if reports.len() == 1 {
                render(&reports[0])
            } else {
                render(&reports)
            }
        } else {
            reports.iter().map(SuiteReport::to_text).collect::<Vec<_>>().join("\n")
        };
        Outcome { text, exit }
    }
}

fn verb_name(v: Verb) -> String {
    v.to_possible_value().expect("no skipped verbs").get_name().to_string()
}

fn map_rows(f: &GradedMap) -> Vec<Vec<String>> {
    f.coeffs().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()
}

fn dispatch(ctx: Ctx) -> Result<Outcome> {
    let c = &ctx.cmd;
    let mut v = ctx.base();
    let out = match c.verb {
        Verb::Decompose => {
            let src = c.exprs[0].trim();
            let p = if src.starts_with('{') {
                let j: PresentationJson =
                    serde_json::from_str(src).map_err(|e| Error::Input(format!("presentation JSON: {e}")))?;
                Presentation::from_json(&j)?
            } else {
                Presentation::of_module(&ctx.module(0)?)
            };
            v["module"] = json!(canonical_decompose(&p)?);
            ctx.checked(v, &[("decompose", Instance::Presentation(p))])
        }
        Verb::Member | Verb::Sigma | Verb::Step => {
            let m = ctx.module(0)?;
            validate_object(ctx.site, &m)?;
            v["site"] = json!(ctx.site.to_string());
            v["z_mode"] = json!(ctx.cfg.z_mode);
            v["input"] = json!(m);
            match c.verb {
                Verb::Member => {
                    let (dir, w) = ctx.dir_w();
                    v["dir"] = json!(dir);
                    v["w"] = json!(w);
                    v["member"] = json!(member(ctx.site, ctx.cfg, dir, w, &m)?);
                    ctx.checked(v, &[("member", Instance::Sigma { site: ctx.site, cfg: ctx.cfg, w, m })])
                }
                Verb::Sigma => {
                    let (dir, w) = ctx.dir_w();
                    let s = sigma(ctx.site, ctx.cfg, dir, w, &m)?;
                    v["dir"] = json!(dir);
                    v["w"] = json!(w);
                    v["sub"] = json!(s.sub);
                    v["quotient"] = json!(s.quotient);
                    v["inclusion"] = json!(map_rows(&s.inclusion));
                    v["projection"] = json!(map_rows(&s.projection));
                    let cut = if dir == Dir::Le { w } else { w - 1 };
                    ctx.checked(v, &[("sigma", Instance::Sigma { site: ctx.site, cfg: ctx.cfg, w: cut, m })])
                }
                _ => {
                    v["step"] = json!(step(ctx.site, ctx.cfg, &m)?);
                    v["le_threshold"] = json!(le_threshold(ctx.site, ctx.cfg, &m));
                    v["ge_threshold"] = json!(ge_threshold(ctx.site, ctx.cfg, &m));
                    let checks: Vec<(&str, Instance)> = [v["le_threshold"].as_i64(), v["ge_threshold"].as_i64()]
                        .into_iter()
                        .flatten()
                        .map(|w| ("member", Instance::Sigma { site: ctx.site, cfg: ctx.cfg, w, m: m.clone() }))
                        .collect();
                    ctx.checked(v, &checks)
                }
            }
        }
        Verb::Tensor | Verb::Chom => {
            let (m, n) = (ctx.module(0)?, ctx.module(1)?);
            v["inputs"] = json!([m, n]);
            if c.verb == Verb::Tensor {
                v["tensor"] = json!(tensor(&m, &n));
                ctx.checked(v, &[("tensor", Instance::Pair(m, n))])
            } else {
                v["internal_hom"] = json!(internal_hom(&m, &n));
                v["hom"] = json!(hom_group(&m, &n).0);
                v["ext1"] = json!(ext1_group(&m, &n));
                let pair = Instance::Pair(m, n);
                ctx.checked(v, &[("internal_hom", pair.clone()), ("hom", pair.clone()), ("ext1", pair)])
            }
        }
        Verb::Dual | Verb::Li | Verb::Riflat | Verb::Gammaz => {
            let f = ctx.object()?;
            let n = c.n.unwrap_or(1);
            v["input"] = json!(f.to_string());
            let op = match c.verb {
                Verb::Dual => {
                    v["dual"] = json!(dualize(&f).to_string());
                    "dualize"
                }
                Verb::Li => {
                    v["n"] = json!(n);
                    v["li_star"] = json!(li_star(&f, n)?.to_string());
                    "li_star"
                }
                Verb::Riflat => {
                    v["n"] = json!(n);
                    v["ri_flat"] = json!(ri_flat(&f, n)?.to_string());
                    "ri_flat"
                }
                _ => {
                    let g = r_gamma_z(&f);
                    v["r_gamma_z"] = json!(g.to_string());
                    v["torsion"] = json!(g.torsion);
                    v["cofree"] = json!(g.cofree.iter().map(|(k, e)| json!({"degree": k, "offset": e.offset})).collect::<Vec<_>>());
                    "r_gamma_z"
                }
            };
            ctx.checked(v, &[(op, Instance::Formal { f, n })])
        }
        Verb::Trunc => {
            let f = ctx.object()?;
            let n = c.n.unwrap_or(0);
            let t = stag_truncate(ctx.p, ctx.cfg, n, &f)?;
            v["perversity"] = json!(ctx.p.to_string());
            v["n"] = json!(n);
            v["object"] = json!(t.object.to_string());
            v["below"] = json!(t.below.to_string());
            v["above"] = json!(t.above.to_string());
            v["audit"] = json!(t.audit().err());
            let mut out = ctx.checked(v.clone(), &[]);
            if c.oracle {
                let below = oracle_aisle(ctx.p, ctx.cfg, &t.below.shift(n))?;
                let above = oracle_aisle(ctx.p, ctx.cfg, &t.above.shift(n + 1))?;
                let agree = below.0 && above.1 && t.audit().is_ok();
                v["oracle"] = json!({ "agree": agree, "below_le": below.0, "above_ge": above.1 });
                out = Outcome { text: render(&v), exit: if agree { 0 } else { 2 } };
            }
            out
        }
        Verb::Heart => {
            let f = ctx.object()?;
            v["perversity"] = json!(ctx.p.to_string());
            v["input"] = json!(f.to_string());
            v["le0"] = json!(aisle_member(ctx.p, ctx.cfg, &f, Aisle::Le0));
            v["ge0"] = json!(aisle_member(ctx.p, ctx.cfg, &f, Aisle::Ge0));
            v["in_heart"] = json!(is_in_heart(ctx.p, ctx.cfg, &f));
            ctx.checked(v, &[("aisle", Instance::Aisle { p: ctx.p, cfg: ctx.cfg, f })])
        }
        Verb::Jh => {
            let f = ctx.object()?;
            let r = jh_factors(ctx.p, ctx.cfg, &f)?;
            v["perversity"] = json!(ctx.p.to_string());
            v["input"] = json!(f.to_string());
            v["factors"] = json!(r.factors);
            v["witness"] =
                json!(r.witness.iter().map(|s| json!({"object": s.object.to_string(), "factor": s.factor})).collect::<Vec<_>>());
            v["audit"] = json!(r.audit(ctx.p, ctx.cfg).err());
            ctx.checked(v, &[("aisle", Instance::Aisle { p: ctx.p, cfg: ctx.cfg, f })])
        }
        Verb::Simples => {
            let b = c.n.unwrap_or(5);
            let list = simples(ctx.p, ctx.cfg, -b, b)?;
            v["perversity"] = json!(ctx.p.to_string());
            v["simples"] =
                json!(list.iter().map(|(l, o)| json!({"label": l, "object": o.to_string()})).collect::<Vec<_>>());
            let checks: Vec<(&str, Instance)> =
                list.into_iter().map(|(_, f)| ("aisle", Instance::Aisle { p: ctx.p, cfg: ctx.cfg, f })).collect();
            ctx.checked(v, &checks)
        }
        Verb::Ic => {
            let spec: IcSpec = c.exprs[0].parse()?;
            let f = ic(ctx.p, ctx.cfg, spec)?;
            v["perversity"] = json!(ctx.p.to_string());
            v["ic"] = json!(f.to_string());
            ctx.checked(v, &[("aisle", Instance::Aisle { p: ctx.p, cfg: ctx.cfg, f })])
        }
        Verb::Geometry => {
            let g = geometry_report(ctx.cfg);
            if c.json {
                Outcome::json(&json!(g))
            } else {
                Outcome {
                    text: format!(
                        "geometry z_mode={}\nU: cod={} alt={} scod={}\nZ: cod={} alt={} scod={}\nstable across thickenings: {}\n",
                        g.z_mode, g.cod_u, g.alt_u, g.scod_u, g.cod_z, g.alt_z, g.scod_z, g.stable
                    ),
                    exit: 0,
                }
            }
        }
        Verb::ValidateP => {
            let r = validate_perversity(ctx.p, ctx.cfg);
            let exit = if r.ok { 0 } else { 1 };
            let text = if c.json {
                render(&r)
            } else {
                let mut s = format!(
                    "perversity {} ({} mode): ok={} strict={} middle={} dual={}\n",
                    r.perversity, ctx.cfg.z_mode, r.ok, r.strict, r.middle, r.dual
                );
                for x in &r.violations {
                    s.push_str(&format!("  {x}\n"));
                }
                s
            };
            Outcome { text, exit }
        }
        Verb::Axioms => ctx.suite(vec![axiom_suite(ctx.cfg, ctx.seed, c.samples)]),
        Verb::Tsuite => ctx.suite(vec![tstructure_suite(ctx.p, ctx.cfg, ctx.seed, c.samples)?]),
        Verb::FlagVerify => {
            let r = flag_verify();
            let exit = if r.pass { 0 } else { 2 };
            Outcome { text: if c.json { render(&r) } else { r.to_text() }, exit }
        }
    };
    Ok(out)
}
