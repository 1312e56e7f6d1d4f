//! Exact six-operation calculus for integer-valued constructible functions
//! on finite simplicial complexes.
//!
//! Everything is integer arithmetic on finite data: a [`Complex`] is a finite
//! set of simplices closed under faces, a [`CellSet`] is a locally closed
//! (order-convex) subset of its cells, and a [`Function`] assigns an integer
//! to every cell of one. The calculus lives in [`calculus`]: pullback, the
//! compactly supported and plain pushforwards, duality, the exceptional
//! pullback, restriction/extension, boundary values, sheet counts at cone
//! centers, inclusion–exclusion over open covers, and the two counting
//! integrals.
//!
//! Module map:
//!
//! - [`simplex`], [`complex`], [`cellset`], [`function`], [`map`] — the data
//!   model: cells, spaces, functions, simplicial maps.
//! - [`calculus`] — the operator calculus.
//! - [`product`] — products of complexes and graph embeddings of maps.
//! - [`subdivision`] — barycentric refinement and carrying data through it.
//! - [`traces`] — finite group actions, regularization, and the two trace
//!   characteristics.
//! - [`models`] — the curated registry: cell models of complex varieties,
//!   real counterexample models, maps, base-change squares, boundary covers,
//!   and group actions, each with frozen expected values.
//! - [`generate`] — seeded random complexes, cell sets, functions, maps,
//!   stratifications, and covers for randomized testing.
//! - [`scenario`] — the check engine behind the `constructible` binary:
//!   scenario definitions in, deterministic JSON reports out.
//! - [`schema`] — the JSON wire types (documented in `docs/schema.md`).
//!
//! Ten runnable walkthroughs live under `examples/`: `build_spaces`,
//! `theorem_main`, `counterexamples`, `duality`, `exceptional_pullback`,
//! `nearby_cycles`, `cech_descent`, `base_change`, `group_traces`, and
//! `scenario_report`.

pub mod calculus;
pub mod cellset;
pub mod complex;
pub mod error;
pub mod function;
pub mod generate;
pub mod map;
pub mod models;
pub mod product;
pub mod scenario;
pub mod schema;
pub mod simplex;
pub mod subdivision;
pub mod traces;

pub use cellset::CellSet;
pub use complex::{Complex, SimplexId};
pub use error::{Error, Result};
pub use function::Function;
pub use map::SimplicialMap;
pub use simplex::{Simplex, VertexId};
