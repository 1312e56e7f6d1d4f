//! Duality: an exact involution on cellwise functions that detects whether
//! a model behaves like a complex variety.
//!
//! Run with: cargo run --example duality

use constructible::calculus::dual;
use constructible::models::registry;
use constructible::Function;

fn show(phi: &Function) -> String {
    let complex = phi.space().complex().clone();
    let entries: Vec<String> = phi
        .space()
        .members()
        .iter()
        .map(|&id| format!("{}:{}", complex.simplex(id), phi.value(id)))
        .collect();
    entries.join(" ")
}

fn main() -> constructible::Result<()> {
    let reg = registry();

    // The interval: dual(1) vanishes on the endpoints and applying duality
    // twice restores the original function.
    let interval = reg.space("interval")?.space.clone();
    let one = Function::one(interval);
    let dualized = dual(&one);
    println!("interval:");
    println!("  1       = {}", show(&one));
    println!("  dual(1) = {}", show(&dualized));
    println!("  dual(dual(1)) == 1?  {}", dual(&dualized) == one);

    // The circle, a compact curve of odd dimension: duality negates 1.
    let circle = reg.space("circle")?.space.clone();
    let one = Function::one(circle);
    println!("\ncircle: dual(1) = {}", show(&dual(&one)));

    // Complex models are exactly the self-dual ones.
    println!("\ndual(1) == 1 per curated space:");
    for model in reg.spaces() {
        let one = Function::one(model.space.clone());
        println!(
            "  {:20} {}  (complex model: {})",
            model.name,
            if dual(&one) == one { "yes" } else { "no " },
            model.complex_model
        );
    }
    Ok(())
}
