//! Build cell spaces by hand and tour the curated registry.
//!
//! Run with: cargo run --example build_spaces

use std::sync::Arc;

use constructible::models::registry;
use constructible::{CellSet, Complex, Simplex};

fn main() -> constructible::Result<()> {
    // A complex is a finite set of simplices closed under taking faces,
    // described by its top cells. Here: a filled triangle with a tail edge.
    let complex = Arc::new(Complex::from_facets("triangle_with_tail", &[
        vec![0, 1, 2],
        vec![2, 3],
    ])?);
    println!("complex `{}` has {} cells", complex.name(), complex.len());

    // A space is a locally closed set of cells: every cell sandwiched
    // between a member and a member is itself a member.
    let everything = CellSet::all(complex.clone());
    let vertex = CellSet::new(
        complex.clone(),
        vec![complex
            .id_of(&Simplex::new(vec![2])?)
            .expect("vertex 2 exists")],
    )?;
    let open_star = vertex.star(); // open: all cofaces of the vertex
    let closed_tail = CellSet::new(
        complex.clone(),
        vec![complex
            .id_of(&Simplex::new(vec![2, 3])?)
            .expect("tail edge exists")],
    )?
    .closure(); // closed: the edge and its endpoints

    for (label, cells) in [
        ("everything", &everything),
        ("open star of vertex 2", &open_star),
        ("closed tail edge", &closed_tail),
    ] {
        println!(
            "  {label}: {} cells, compactly supported count {}",
            cells.len(),
            cells.chi_c()
        );
    }

    // The registry carries curated models with frozen expectations.
    println!("\ncurated spaces (count = plain, count_c = compactly supported):");
    for model in registry().spaces() {
        println!(
            "  {:20} count {:2}  count_c {:2}  {}",
            model.name, model.expected_chi, model.expected_chi_c, model.notes
        );
    }
    Ok(())
}
