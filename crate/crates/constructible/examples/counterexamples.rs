//! Real-geometry counterexamples: the identities that hold on complex-variety
//! models break on open intervals, half-open intervals, and closed disks.
//!
//! Run with: cargo run --example counterexamples

use constructible::calculus::{
    dual, euler_integral, euler_integral_c, exc_pullback, pullback, pushforward, pushforward_c,
};
use constructible::models::registry;
use constructible::Function;

fn main() -> constructible::Result<()> {
    let reg = registry();

    // 1. Collapsing an open interval to a point: the compactly supported
    //    count is -1, the plain count is +1.
    let collapse = &reg.map("open_interval_to_point")?.map;
    let one = Function::one(collapse.source().clone());
    let point = collapse.target().members()[0];
    let compact = pushforward_c(collapse, &one)?;
    let plain = pushforward(collapse, &one)?;
    println!("open interval -> point:");
    println!("  compact pushforward of 1: {}", compact.value(point));
    println!("  plain   pushforward of 1: {}", plain.value(point));

    // The same numbers straight from the integrals.
    println!(
        "  (count_c = {}, count = {})",
        euler_integral_c(&one),
        euler_integral(&one)
    );

    // 2. Including an endpoint into the interval: the ordinary pullback of 1
    //    is 1, the exceptional pullback is 0.
    let include = &reg.map("endpoint_into_interval")?.map;
    let one_interval = Function::one(include.target().clone());
    let endpoint = include.source().members()[0];
    println!("\nendpoint -> interval:");
    println!(
        "  ordinary    pullback of 1: {}",
        pullback(include, &one_interval)?.value(endpoint)
    );
    println!(
        "  exceptional pullback of 1: {}",
        exc_pullback(include, &one_interval)?.value(endpoint)
    );

    // 3. Duality does not fix the unit on a closed disk (a real model with
    //    boundary), while it does on every complex model.
    let closed_disk = reg.space("closed_disk")?;
    let unit = Function::one(closed_disk.space.clone());
    println!(
        "\nclosed disk: dual(1) == 1?  {}",
        if dual(&unit) == unit { "yes" } else { "no" }
    );
    let pointed_disk = reg.space("disk_c")?;
    let unit = Function::one(pointed_disk.space.clone());
    println!(
        "pointed disk model of the affine line: dual(1) == 1?  {}",
        if dual(&unit) == unit { "yes" } else { "no" }
    );
    Ok(())
}
