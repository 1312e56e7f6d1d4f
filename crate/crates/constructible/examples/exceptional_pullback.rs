//! The exceptional pullback: the dual-conjugated pullback, which agrees
//! with the ordinary pullback on complex-variety models and differs on
//! real boundaries.
//!
//! Run with: cargo run --example exceptional_pullback

use constructible::calculus::{exc_pullback, pullback};
use constructible::models::registry;
use constructible::Function;

fn main() -> constructible::Result<()> {
    let reg = registry();

    println!("map                        ordinary == exceptional on the strata basis?");
    for model in reg.maps() {
        let target = reg.space(model.target)?;
        let mut basis = target.stratum_indicators();
        basis.push(Function::one(target.space.clone()));
        let all_agree = basis.iter().try_fold(true, |acc, phi| {
            constructible::Result::Ok(
                acc && exc_pullback(&model.map, phi)? == pullback(&model.map, phi)?,
            )
        })?;
        println!(
            "  {:24} {:3}  (complex model: {})",
            model.name,
            if all_agree { "yes" } else { "no" },
            model.complex_model
        );
    }

    // The smallest mismatch, in full detail: including an endpoint into the
    // interval. The ordinary pullback restricts; the exceptional pullback
    // takes the costalk, which is 0 at a boundary point of a real segment.
    let include = &reg.map("endpoint_into_interval")?.map;
    let one = Function::one(include.target().clone());
    let endpoint = include.source().members()[0];
    println!("\nendpoint -> interval, applied to 1:");
    println!("  ordinary:    {}", pullback(include, &one)?.value(endpoint));
    println!("  exceptional: {}", exc_pullback(include, &one)?.value(endpoint));
    Ok(())
}
