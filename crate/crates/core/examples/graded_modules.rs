//! Canonical forms, Hom/Ext and tensor products of graded Q[x]-modules.

use stagger::grmod::{canonical_decompose, ext1_group, hom_group, internal_hom, parse, tensor, PresentationJson};
use stagger::Presentation;

fn main() -> stagger::Result<()> {
    // Two generators in weights 0 and 1 with relations -x·e0 and x·e1.
    let json = r#"{"generators":[0,1],"relations":[[{"c":"-1","k":0}],[{"c":"1","k":1}]]}"#;
    let p: PresentationJson = serde_json::from_str(json).expect("valid presentation JSON");
    let m = canonical_decompose(&Presentation::from_json(&p)?)?;
    println!("decompose {json}\n  = {m}");

    let a = parse::module("F(1) + V(2)")?;
    let b = parse::module("T(0,3)")?;
    println!("({a}) ⊗ {b} = {}", tensor(&a, &b));
    println!("Hom({a}, {b}) = {}", internal_hom(&a, &b));

    let (t, f) = (parse::module("T(-1,1)")?, parse::module("F(-2)")?);
    println!("dim Hom({t}, {f}) = {}", hom_group(&t, &f).0);
    println!("dim Ext¹({t}, {f}) = {}", ext1_group(&t, &f));
    Ok(())
}
