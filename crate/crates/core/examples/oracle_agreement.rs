//! Cross-checks every fast operation against the slow weight-window oracle.

use stagger::oracle::{agreement, agreement_with};
use stagger::sstruct::OffByOneSigma;

fn main() -> stagger::Result<()> {
    let report = agreement(1, 200);
    print!("{}", report.to_text());

    let faulty = agreement_with(&["sigma"], 1, 50, &OffByOneSigma)?;
    println!("with an off-by-one σ:");
    for c in faulty.checks["sigma"].counterexamples.iter().take(3) {
        println!("  {c}");
    }
    std::process::exit(if report.is_clean() { 0 } else { 2 });
}
