//! Ideals, primes and Noetherian witnesses of explicit finite rings.

use std::sync::Arc;

use noether::finite::{enumerate_ideals, enumerate_spec, noetherian_witness, FiniteRing};

fn main() -> noether::Result<()> {
    for ring in [
        FiniteRing::zmod(12)?,
        FiniteRing::fp_quotient(2, &[0, 0, 1])?,
    ] {
        let ring = Arc::new(ring);
        let ideals = enumerate_ideals(&ring)?;
        let primes = enumerate_spec(&ring)?;
        println!("{} has {} ideals", ring.label(), ideals.len());
        for i in &ideals {
            println!("  {}", i.render(&ring));
        }
        println!(
            "  primes: {:?}",
            primes.iter().map(|p| p.render(&ring)).collect::<Vec<_>>()
        );
        let family: Vec<Vec<usize>> = ideals.iter().map(|i| i.elements().to_vec()).collect();
        let report = noetherian_witness(&ring, &family)?;
        println!(
            "  longest chain {} <= {}: {}",
            report.longest_strict_chain, report.ideal_count, report.chain_bound_holds
        );
    }
    Ok(())
}
