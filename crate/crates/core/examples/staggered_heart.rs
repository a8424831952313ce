//! The staggered t-structure for the middle perversity: geometry, truncation,
//! simple objects and composition series.

use stagger::derived::{dualize, FormalObject};
use stagger::sstruct::SConfig;
use stagger::stag::{geometry_report, ic, jh_factors, simples, stag_truncate, validate_perversity, IcSpec, Perversity};

fn main() -> stagger::Result<()> {
    let cfg = SConfig::weight();
    let p = Perversity::new(0, 1);
    let g = geometry_report(cfg);
    println!("cod Z = {}, alt Z = {}, scod Z = {}, scod U = {}", g.cod_z, g.alt_z, g.scod_z, g.scod_u);
    let v = validate_perversity(p, cfg);
    println!("perversity {p}: ok = {}, strict = {}, self-dual = {}", v.ok, v.strict, v.middle);

    let x = FormalObject::parse("F(2)")?;
    let t = stag_truncate(p, cfg, 0, &x)?;
    println!("τ≤0 {x} = {}, τ≥1 {x} = {}", t.below, t.above);

    for (label, s) in simples(p, cfg, -2, 2)? {
        println!("{label} = {s}, 𝔻 = {}", dualize(&s));
    }
    println!("IC(Z, V_3) = {}", ic(p, cfg, IcSpec::Z { n: 3 })?);

    let r = jh_factors(p, cfg, &FormalObject::parse("F(1)")?)?;
    println!("composition factors of F(1): {:?}", r.factors.iter().map(ToString::to_string).collect::<Vec<_>>());
    for step in &r.witness {
        println!("  ↪ {} with quotient {}", step.object, step.factor);
    }
    Ok(())
}
