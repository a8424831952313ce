//! Duality, restriction to the thickenings and local cohomology on formal objects.

use stagger::derived::{derived_hom, dualize, li_star, r_gamma_z, ri_flat, FormalObject};

fn main() -> stagger::Result<()> {
    let x = FormalObject::parse("T(0,1) + F(2)[1]")?;
    let d = dualize(&x);
    println!("𝔻({x}) = {d}");
    println!("𝔻𝔻({x}) = {}", dualize(&d));

    let ideal = FormalObject::parse("F(-1)")?;
    println!("Li*({ideal}) on Z = {}", li_star(&ideal, 1)?);
    for n in 1..=3 {
        println!("Ri♭(F(-2)) on Z{n} = {}", ri_flat(&FormalObject::parse("F(-2)")?, n)?);
    }

    let y = FormalObject::parse("F(0) + T(2,3)[-1]")?;
    println!("RΓ_Z({y}) = {}", r_gamma_z(&y));

    let (a, b) = (FormalObject::parse("T(-1,1)")?, FormalObject::parse("F(-2)")?);
    println!("dim Hom({a}, {b}[k]) = {:?}", derived_hom(&a, &b));
    Ok(())
}
