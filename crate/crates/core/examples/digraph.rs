//! Validating a digraph of ideals and evaluating the sheaf it generates.

use noether::digraph::{
    evaluate_sheaf, is_quasi_coherent, section_membership, validate_digraph, DigraphNode,
    IdealDigraph,
};
use noether::topology::DistinguishedOpen;
use noether::{Field, PresentedRing};

fn main() -> noether::Result<()> {
    let r = PresentedRing::polynomial(Field::Rationals, &["x"])?;
    let g0 = IdealDigraph::new(
        r.clone(),
        vec![
            DigraphNode::parse(&r, "1", &["0"])?,
            DigraphNode::parse(&r, "x", &["1"])?,
        ],
        vec![(0, 1)],
        0,
    )?;
    println!("{}", g0.render());
    println!("valid: {}", validate_digraph(&g0)?.valid);
    let dx = DistinguishedOpen::parse(&r, "x")?;
    let whole = DistinguishedOpen::whole(&r);
    println!(
        "1 is a section on D(x): {}",
        section_membership(&g0, &dx, &r.one())?
    );
    println!(
        "1 is a section on D(1): {}",
        section_membership(&g0, &whole, &r.one())?
    );
    println!(
        "value on D(x): {:?}",
        evaluate_sheaf(&g0, &dx)?.render_canonical()?
    );
    println!("quasi-coherent: {}", is_quasi_coherent(&g0, &[dx])?);

    let bad = IdealDigraph::new(
        r.clone(),
        vec![
            DigraphNode::parse(&r, "1", &["x"])?,
            DigraphNode::parse(&r, "x", &["1"])?,
        ],
        vec![(0, 1)],
        0,
    )?;
    for c in validate_digraph(&bad)?.checks.iter().filter(|c| !c.passed) {
        println!("violation {}: {:?} on edge {:?}", c.name, c.detail, c.edge);
    }
    Ok(())
}
