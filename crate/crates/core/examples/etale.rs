//! The squaring tower over the punctured line, under both exponent rules.

use noether::etale::{run_tower_suite, ExponentRule};
use noether::Field;

fn main() -> noether::Result<()> {
    for rule in [ExponentRule::Power, ExponentRule::Literal] {
        for field in [Field::Rationals, Field::prime(5)?] {
            let s = run_tower_suite(4, field, rule)?;
            println!(
                "{rule} over {field}: passed {}, strict inclusions {}",
                s.passed, s.strict_inclusions
            );
            if s.passed {
                println!("  {}", s.chain.join(" ⊊ "));
            }
            for l in &s.levels {
                if let Some(w) = l.cover_map.as_ref().and_then(|c| c.witness.as_ref()) {
                    println!("  level {}: {w}", l.n);
                }
            }
        }
    }
    Ok(())
}
