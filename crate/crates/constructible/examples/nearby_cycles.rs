//! Nearby values: approaching the center of a pointed-disk cover from the
//! generic part counts the covering sheets.
//!
//! Run with: cargo run --example nearby_cycles

use constructible::calculus::nearby;
use constructible::models::registry;
use constructible::{Error, Function, Simplex};

fn main() -> constructible::Result<()> {
    let reg = registry();

    // The degree-n self-cover of the pointed disk wraps the punctured part
    // n times around itself and fixes the center. The nearby value of 1 at
    // the center is the sheet count n.
    for name in ["z1_cover", "z2_cover", "z3_cover"] {
        let map = &reg.map(name)?.map;
        let one = Function::one(map.source().clone());
        let values = nearby(map, &one)?;
        let center = map
            .target()
            .complex()
            .id_of(&Simplex::new(vec![0])?)
            .expect("the center vertex");
        println!("{name}: nearby value of 1 at the center = {}", values.value(center));
    }

    // The engine recomputes the count once per admissible generic cell and
    // refuses to answer when two of them disagree, so a successful run
    // certifies that the answer is independent of that choice. A fold map
    // with unbalanced arms triggers the refusal:
    let fold = &reg.map("interval_fold")?.map; // proper, but not a cone cover
    let one = Function::one(fold.source().clone());
    match nearby(fold, &one) {
        Err(Error::NotDiskModel(msg)) => {
            println!("\ninterval fold rejected as expected: {msg}")
        }
        Err(other) => println!("\ninterval fold rejected: {other}"),
        Ok(_) => println!("\ninterval fold unexpectedly accepted"),
    }
    Ok(())
}
