//! Boundary values glue: computing them chart by chart and summing with
//! inclusion-exclusion signs reproduces the direct global computation.
//!
//! Run with: cargo run --example cech_descent

use constructible::calculus::{boundary_stalk, cech_sum};
use constructible::models::registry;
use constructible::{Error, Function};

fn main() -> constructible::Result<()> {
    let reg = registry();

    for name in ["interval_two_charts", "p1_two_charts", "nodal_node_cover"] {
        let cover = reg.cover(name)?;
        let ambient = &reg.space(cover.space)?.space;
        let phi = Function::one(cover.sub.clone());
        let direct = boundary_stalk(&phi, ambient, &cover.boundary)?;
        let glued = cech_sum(&phi, ambient, &cover.boundary, &cover.pieces)?;
        println!(
            "{name}: {} pieces, glued == direct?  {}",
            cover.pieces.len(),
            if glued == direct { "yes" } else { "NO" }
        );
    }

    // The inclusion-exclusion sum ranges over all nonempty subsets of the
    // cover, so the engine caps the number of pieces rather than walk 2^n
    // subsets for large n.
    let cover = reg.cover("interval_two_charts")?;
    let ambient = &reg.space(cover.space)?.space;
    let phi = Function::one(cover.sub.clone());
    let too_many: Vec<_> = std::iter::repeat(cover.pieces.clone())
        .flatten()
        .take(13)
        .collect();
    match cech_sum(&phi, ambient, &cover.boundary, &too_many) {
        Err(Error::CoverTooLarge { n, max }) => {
            println!("\n{n} pieces refused (the cap is {max})")
        }
        other => println!("\nunexpected outcome for an oversized cover: {other:?}"),
    }
    Ok(())
}
