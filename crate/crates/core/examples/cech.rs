//! Čech cohomology of O(d) on projective space and of ideals on affine covers.

use noether::cech::{affine_vanishing_check, twisted_cohomology_dims, AffineWindow, TwistData};
use noether::topology::{DistinguishedOpen, OpenCover};
use noether::{Field, PresentedRing};

fn main() -> noether::Result<()> {
    for (n, d) in [(1, -2), (1, 3), (2, 2), (2, -3), (3, -4)] {
        let c = twisted_cohomology_dims(&TwistData::new(n, d))?;
        println!(
            "P^{n}, O({d}): dims {:?}, d^2 = 0: {}",
            c.dims, c.d_squared_zero
        );
    }

    let r = PresentedRing::polynomial(Field::Rationals, &["x"])?;
    let ideal = r.ideal_strs(&["x^2 - 1"])?;
    let cover = OpenCover::new(
        DistinguishedOpen::whole(&r),
        vec![
            DistinguishedOpen::parse(&r, "x")?,
            DistinguishedOpen::parse(&r, "x - 1")?,
        ],
    )?;
    let v = affine_vanishing_check(&r, &ideal, &cover, AffineWindow::default())?;
    println!(
        "affine cover: dims {:?}, higher cohomology vanishes: {}",
        v.dims, v.holds
    );
    Ok(())
}
