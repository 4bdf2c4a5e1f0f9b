//! Distinguished opens, covers and finite spaces.

use noether::topology::{cover_check, DistinguishedOpen, FiniteSpace, OpenCover};
use noether::{Field, PresentedRing};

fn main() -> noether::Result<()> {
    let r = PresentedRing::polynomial(Field::Rationals, &["x"])?;
    let a = DistinguishedOpen::parse(&r, "x")?;
    let b = DistinguishedOpen::parse(&r, "x^2 - x")?;
    println!("{b} ⊆ {a}: {}", a.contains(&b)?);
    println!(
        "{a} ∩ D(x - 1) = {}",
        a.intersect(&DistinguishedOpen::parse(&r, "x - 1")?)
    );

    let cover = OpenCover::new(
        DistinguishedOpen::whole(&r),
        vec![a.clone(), DistinguishedOpen::parse(&r, "x - 1")?],
    )?;
    println!("D(x), D(x - 1) cover Spec Q[x]: {}", cover_check(&cover)?);
    println!(
        "coordinate ring of {b}: inverts {:?}",
        b.coordinate_ring()?.inverted().len()
    );

    let space = FiniteSpace::from_edges(3, &[(0, 1), (0, 2)])?;
    let opens: Vec<String> = space.opens().iter().map(|&u| space.render_set(u)).collect();
    println!("opens of the 3-point space: {opens:?}");
    Ok(())
}
