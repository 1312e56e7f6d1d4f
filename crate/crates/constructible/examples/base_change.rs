//! Base change: cutting the target along a subset commutes with the compact
//! pushforward, computed over the exact preimage.
//!
//! Run with: cargo run --example base_change

use constructible::calculus::{pullback, pushforward_c};
use constructible::models::registry;
use constructible::Function;

fn main() -> constructible::Result<()> {
    let reg = registry();

    for square in reg.squares() {
        let parts = square.components(reg)?;
        let phi = Function::one(parts.map.source().clone());
        let pushed_then_cut =
            pullback(&parts.base_inclusion, &pushforward_c(&parts.map, &phi)?)?;
        let cut_then_pushed = pushforward_c(
            &parts.restricted,
            &pullback(&parts.fiber_inclusion, &phi)?,
        )?;
        println!(
            "{:22} fibre cells {:2}  cut-then-push == push-then-cut?  {}",
            square.name,
            parts.restricted.source().len(),
            if pushed_then_cut == cut_then_pushed { "yes" } else { "NO" }
        );
    }

    // The nodal square in detail: the normalization separates the two
    // branches through the node, so the fibre over the node is two points
    // and the pushed function counts them.
    let square = reg.square("nodal_square")?;
    let parts = square.components(reg)?;
    let one = Function::one(parts.map.source().clone());
    let over_node = pullback(&parts.base_inclusion, &pushforward_c(&parts.map, &one)?)?;
    let node = parts.base_inclusion.source().members()[0];
    println!(
        "\nnodal square: pushing 1 and cutting at the node gives {}",
        over_node.value(node)
    );
    Ok(())
}
