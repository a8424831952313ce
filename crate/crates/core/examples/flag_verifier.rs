//! Checks the flag-variety test case: restrictions of the twisting sheaves and the ideal,
//! the dualizing data of the closed orbit and both staggered codimensions.

use stagger::flag::flag_verify;

fn main() {
    let report = flag_verify();
    print!("{}", report.to_text());
    std::process::exit(if report.pass { 0 } else { 2 });
}
