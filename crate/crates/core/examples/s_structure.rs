//! Membership, σ-truncation and steps for the s-structure on X, U, Z and Zn.

use stagger::grmod::parse;
use stagger::sstruct::{member, sigma, step, Dir, SConfig, Site};

fn main() -> stagger::Result<()> {
    let cfg = SConfig::weight();
    let f1 = parse::module("F(1)")?;
    let s = sigma(Site::X, cfg, Dir::Le, 0, &f1)?;
    println!("0 → {} → {f1} → {} → 0", s.sub, s.quotient);

    for m in ["F(-2)", "T(-2,1)", "F(-2) + T(-2,1)"] {
        let m = parse::module(m)?;
        println!("{m} ∈ C≥0 on X: {}", member(Site::X, cfg, Dir::Ge, 0, &m)?);
    }

    for (site, m) in [(Site::X, "F(0)"), (Site::Z, "V(3)"), (Site::Zn(2), "T(1,2)"), (Site::X, "T(1,2)")] {
        let m = parse::module(m)?;
        match step(site, cfg, &m)? {
            Some(w) => println!("{m} on {site}: pure of step {w}"),
            None => println!("{m} on {site}: not pure"),
        }
    }

    let trivial = SConfig::trivial();
    let v = parse::module("V(3)")?;
    println!("{v} on Z, trivial mode: step {:?}", step(Site::Z, trivial, &v)?);
    Ok(())
}
