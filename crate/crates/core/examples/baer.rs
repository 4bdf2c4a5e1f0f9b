//! Baer's criterion, Baer steps and injective envelopes over Z/4.

use std::sync::Arc;

use noether::baer::{
    baer_chain, baer_step, baer_test, injective_envelope_bruteforce, BaerOptions, EnvelopeOptions,
};
use noether::finite::{FiniteModule, FiniteRing};

fn main() -> noether::Result<()> {
    let z4 = Arc::new(FiniteRing::zmod(4)?);
    let z2 = FiniteModule::cyclic(&z4, &[vec![2]]);
    let t = baer_test(&z2)?;
    println!(
        "Z/2 injective over Z/4: {} (witness {:?})",
        t.injective,
        t.witness.map(|w| w.ideal)
    );
    println!(
        "Z/4 injective over Z/4: {}",
        baer_test(&FiniteModule::regular(&z4))?.injective
    );

    let step = baer_step(&FiniteModule::zero(&z4), BaerOptions::default())?;
    println!(
        "Baer step of 0: size {}, postcondition {}",
        step.output.size(),
        step.postcondition_holds
    );

    let chain = baer_chain(&z2, 2, BaerOptions::default())?;
    for s in &chain.stages {
        println!(
            "stage {}: size {}, extension property {}",
            s.stage, s.size, s.extension_property
        );
    }

    let env = injective_envelope_bruteforce(&z2, EnvelopeOptions::default())?;
    if let Some(e) = env.found {
        println!(
            "envelope of Z/2: size {} after {} candidates",
            e.module.size(),
            env.candidates_examined
        );
    }
    Ok(())
}
