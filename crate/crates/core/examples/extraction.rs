//! Extracting digraphs from sheaf oracles and from Z-sheaves on a finite space.

use noether::digraph::{
    basis_with_intersections, extract_digraph, extract_zz_digraph, round_trip, ExtractOptions,
    PiecewiseOracle, ZZSheafData,
};
use noether::topology::{DistinguishedOpen, FiniteSpace};
use noether::{Field, PresentedRing};

fn main() -> noether::Result<()> {
    let r = PresentedRing::polynomial(Field::Rationals, &["x"])?;
    let basis = ["x", "x - 1", "x^2 - x"]
        .iter()
        .map(|f| DistinguishedOpen::parse(&r, f))
        .collect::<noether::Result<Vec<_>>>()?;
    let oracle = PiecewiseOracle {
        ring: r.clone(),
        base: vec![r.zero()],
        pieces: vec![(DistinguishedOpen::parse(&r, "x")?, vec![r.one()])],
        basis,
    };
    let ex = extract_digraph(&oracle, ExtractOptions::default())?;
    println!("{}", ex.digraph.render());
    let opens = basis_with_intersections(&oracle.basis)?;
    for e in round_trip(&oracle, &ex.digraph, &opens)? {
        println!("{}: oracle {:?}, digraph {:?}", e.open, e.oracle, e.digraph);
    }

    let space = FiniteSpace::from_edges(3, &[(0, 1), (0, 2)])?;
    let z = ZZSheafData::from_points(space.clone(), &[1, 2, 3])?;
    let d = extract_zz_digraph(&z);
    for n in &d.nodes {
        println!("Z-node {} -> {}Z", space.render_set(n.open), n.n);
    }
    println!("mismatches: {:?}", d.mismatches(&z));
    Ok(())
}
