//! The headline identity: along maps of complex-variety models the plain
//! and compactly supported pushforwards are the same operator.
//!
//! Run with: cargo run --example theorem_main

use constructible::calculus::{pushforward, pushforward_c};
use constructible::models::registry;
use constructible::Function;

fn main() -> constructible::Result<()> {
    let reg = registry();
    println!("map                        functions   plain == compact?");
    for model in reg.maps().filter(|m| m.complex_model) {
        let source = reg.space(model.source)?;
        let mut basis = source.stratum_indicators();
        basis.push(Function::one(source.space.clone()));
        let all_agree = basis.iter().try_fold(true, |acc, phi| {
            let plain = pushforward(&model.map, phi)?;
            let compact = pushforward_c(&model.map, phi)?;
            constructible::Result::Ok(acc && plain == compact)
        })?;
        println!(
            "  {:24} {:9}   {}",
            model.name,
            basis.len(),
            if all_agree { "yes" } else { "NO" }
        );
    }

    println!();
    println!("Why this is not a tautology: the same comparison fails for real");
    println!("models — see the `counterexamples` example.");
    Ok(())
}
