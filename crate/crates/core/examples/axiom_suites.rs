//! Seeded property suites for the s-structure axioms and the staggered t-structure.
//! Usage: `cargo run --example axiom_suites -- [seed] [samples]`.

use stagger::sstruct::{axiom_suite, axiom_suite_with, OffByOneSigma, SConfig};
use stagger::stag::{tstructure_suite, Perversity};

fn main() -> stagger::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);
    let mut clean = true;
    for cfg in [SConfig::weight(), SConfig::trivial()] {
        let a = axiom_suite(cfg, seed, samples);
        let t = tstructure_suite(Perversity::new(0, 1), cfg, seed, samples)?;
        print!("{}{}", a.to_text(), t.to_text());
        clean &= a.is_clean() && t.is_clean();
    }
    // A σ that is off by one weight must be caught.
    let faulty = axiom_suite_with(SConfig::weight(), seed, samples, &OffByOneSigma);
    println!("off-by-one σ: {} violations", faulty.violations);
    std::process::exit(if clean && faulty.violations > 0 { 0 } else { 2 });
}
