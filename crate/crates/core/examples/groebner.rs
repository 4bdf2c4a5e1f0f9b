//! Reduced Gröbner bases, membership, saturation and radical membership.

use noether::ring::CombineOp;
use noether::{Field, PresentedRing};

fn main() -> noether::Result<()> {
    let r = PresentedRing::polynomial(Field::Rationals, &["x", "y", "z"])?;
    let i = r.ideal_strs(&["x^2 - y", "x*y - z"])?;
    let gb: Vec<String> = i.groebner_basis()?.iter().map(|g| r.render(g)).collect();
    println!("I = {}", i.render());
    println!("reduced basis: {gb:?}");
    println!("x^3 - z in I: {}", i.contains(&r.parse("x^3 - z")?)?);

    let j = r.ideal_strs(&["x", "y - 1"])?;
    println!(
        "I ∩ J = {:?}",
        i.combine(CombineOp::Intersection, &j)?.render_canonical()?
    );
    println!(
        "I : x^∞ = {:?}",
        i.saturate(&r.parse("x")?)?.render_canonical()?
    );

    let nil = r.ideal_strs(&["x^3"])?;
    println!("x in rad(x^3): {}", nil.radical_contains(&r.parse("x")?)?);

    let local = PresentedRing::from_strs(Field::Rationals, &["x"], &[], &["x"])?;
    println!(
        "x*(x - 1) generates (x - 1) in Q[x, 1/x]: {}",
        local
            .ideal_strs(&["x^2 - x"])?
            .equals(&local.ideal_strs(&["x - 1"])?)?
    );
    Ok(())
}
