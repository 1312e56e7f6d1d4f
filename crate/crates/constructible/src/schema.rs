//! JSON wire types: scenario definitions, registry export, and the
//! conversions between wire form and engine objects.
//!
//! The format is documented in `docs/schema.md`. Serialization is
//! canonical: struct fields appear in declaration order, cell lists are
//! sorted (dimension first, then vertices), and function entries carry
//! only nonzero values in cell order, so byte-identical output is
//! reproducible.

use crate::cellset::CellSet;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::function::Function;
use crate::models::{self, Registry};
use crate::simplex::{Simplex, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

// ---------------------------------------------------------------------------
// Building blocks
// ---------------------------------------------------------------------------

/// A complex given by its maximal cells.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ComplexDef {
    pub name: String,
    pub facets: Vec<Vec<VertexId>>,
}

impl ComplexDef {
    pub fn of(complex: &Complex) -> ComplexDef {
        ComplexDef {
            name: complex.name().to_string(),
            facets: complex
                .facets()
                .iter()
                .map(|s| s.vertices().to_vec())
                .collect(),
        }
    }

    pub fn build(&self) -> Result<Arc<Complex>> {
        Ok(Arc::new(Complex::from_facets(self.name.clone(), &self.facets)?))
    }
}

/// Cell selection within a named complex: everything, or an explicit list.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum CellsDef {
    /// The literal string "all".
    All(AllTag),
    /// Explicit cells, each a strictly increasing vertex list.
    List(Vec<Vec<VertexId>>),
}

/// Serde helper: the only admissible string is "all".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AllTag;

impl Serialize for AllTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str("all")
    }
}

impl<'de> Deserialize<'de> for AllTag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "all" {
            Ok(AllTag)
        } else {
            Err(serde::de::Error::custom(format!(
                "expected the string \"all\", got \"{s}\""
            )))
        }
    }
}

impl CellsDef {
    pub fn of(set: &CellSet) -> CellsDef {
        if set.len() == set.complex().len() {
            CellsDef::All(AllTag)
        } else {
            CellsDef::List(
                set.iter_simplices()
                    .map(|s| s.vertices().to_vec())
                    .collect(),
            )
        }
    }

    pub fn build(&self, complex: &Arc<Complex>) -> Result<CellSet> {
        match self {
            CellsDef::All(_) => Ok(CellSet::all(complex.clone())),
            CellsDef::List(cells) => {
                let simplices: Vec<Simplex> = cells
                    .iter()
                    .map(|vs| Simplex::new(vs.clone()))
                    .collect::<Result<_>>()?;
                CellSet::from_simplices(complex.clone(), &simplices)
            }
        }
    }
}

/// A named cell set inside a named complex.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SpaceDef {
    pub name: String,
    pub complex: String,
    pub cells: CellsDef,
}

/// A named function. `constant` fills every cell; otherwise `entries`
/// lists the nonzero values as `[cell, value]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FunctionDef {
    pub name: String,
    pub space: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<(Vec<VertexId>, i64)>,
}

impl FunctionDef {
    /// Canonical wire form of a function: nonzero entries in cell order.
    pub fn of(name: &str, space_name: &str, f: &Function) -> FunctionDef {
        let entries = f
            .space()
            .members()
            .iter()
            .zip(f.values())
            .filter(|&(_, &v)| v != 0)
            .map(|(&id, &v)| (f.space().complex().simplex(id).vertices().to_vec(), v))
            .collect();
        FunctionDef {
            name: name.to_string(),
            space: space_name.to_string(),
            constant: None,
            entries,
        }
    }

    pub fn build(&self, space: &CellSet) -> Result<Function> {
        if let Some(c) = self.constant {
            if !self.entries.is_empty() {
                return Err(Error::Schema(format!(
                    "function '{}' has both a constant and entries",
                    self.name
                )));
            }
            return Ok(Function::constant(space.clone(), c));
        }
        let mut values = vec![0i64; space.len()];
        for (cell, v) in &self.entries {
            let simplex = Simplex::new(cell.clone())?;
            let id = space.complex().id_of(&simplex).ok_or_else(|| {
                Error::Schema(format!(
                    "function '{}' names a cell {simplex} outside the complex",
                    self.name
                ))
            })?;
            let pos = space.position(id).ok_or_else(|| {
                Error::Schema(format!(
                    "function '{}' names a cell {simplex} outside its space",
                    self.name
                ))
            })?;
            values[pos] = *v;
        }
        Function::new(space.clone(), values)
    }
}

/// A named simplicial map between named spaces.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MapDef {
    pub name: String,
    pub source: String,
    pub target: String,
    pub vertex_map: Vec<(VertexId, VertexId)>,
}

impl MapDef {
    pub fn vertex_map(&self) -> BTreeMap<VertexId, VertexId> {
        self.vertex_map.iter().copied().collect()
    }
}

/// A named group action given by generator permutations.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ActionDef {
    pub name: String,
    pub space: String,
    pub generators: Vec<Vec<(VertexId, VertexId)>>,
}

/// A named base-change square: a map plus the base cells in its target.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SquareDef {
    pub name: String,
    pub map: String,
    pub base: CellsDef,
}

/// A named boundary cover: a space, an open subset, the boundary cells,
/// and open pieces covering the boundary.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CoverDef {
    pub name: String,
    pub space: String,
    pub sub: CellsDef,
    pub boundary: CellsDef,
    pub pieces: Vec<CellsDef>,
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

/// One verification step inside a scenario.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckDef {
    pub id: String,
    #[serde(flatten)]
    pub body: CheckBody,
    /// When set, the check passes exactly when evaluation fails with this
    /// error code (see `Error::code`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_error: Option<String>,
}

/// The check kinds. Each names the comparison it performs; references are
/// resolved against the scenario's own definitions first, then the model
/// registry.
// No deny_unknown_fields here: this enum is flattened into `CheckDef`, so
// its deserializer also sees the sibling `id`/`expect_error` keys.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckBody {
    /// Compact and plain pushforwards agree along `map` on every test
    /// function (default: the source model's stratum indicators).
    TheoremMain {
        map: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        functions: Vec<String>,
    },
    /// The two pullbacks (plain, and dual-conjugated) agree along `map`
    /// on every test function on the target.
    ExcPullbackEq {
        map: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        functions: Vec<String>,
    },
    /// Applying duality twice returns the original function.
    DualInvolution {
        space: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        function: Option<String>,
    },
    /// The compact pushforward along `map` equals the compact pushforward
    /// along its graph factorization (closed embedding, then projection).
    Triangle {
        map: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        functions: Vec<String>,
    },
    /// Pull back then push forward equals push forward then pull back
    /// around the square.
    BaseChange {
        square: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        functions: Vec<String>,
    },
    /// The alternating sum of boundary values over the cover pieces equals
    /// the global boundary values.
    Cech {
        cover: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        function: Option<String>,
    },
    /// Sheet counts at the center of a pointed cone agree across all
    /// generic cells.
    Nearby {
        map: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        function: Option<String>,
    },
    /// Boundary values of a function extended from the open subset vanish
    /// on the boundary cells.
    BoundaryStalkZero {
        cover: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        function: Option<String>,
    },
    /// The two trace computations agree for every group element.
    TraceEq { action: String },
    /// The inner check must fail (not error): a certified counterexample.
    Counterexample { inner: Box<CheckDef> },
    /// Evaluate a named operation on named arguments and compare with the
    /// expectation.
    CustomOp {
        op: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        args: Vec<String>,
        expect: ExpectDef,
    },
}

/// Expected result of a custom operation: an integer (for integrals) or a
/// named function.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ExpectDef {
    Scalar(i64),
    Function(String),
}

// ---------------------------------------------------------------------------
// Scenarios
// ---------------------------------------------------------------------------

/// A scenario: optional local definitions plus a list of checks.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDef {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub complexes: Vec<ComplexDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub spaces: Vec<SpaceDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functions: Vec<FunctionDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<MapDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub actions: Vec<ActionDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub squares: Vec<SquareDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub covers: Vec<CoverDef>,
    pub checks: Vec<CheckDef>,
}

impl ScenarioDef {
    pub fn from_json(text: &str) -> Result<ScenarioDef> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario definitions serialize")
    }
}

// ---------------------------------------------------------------------------
// Registry export
// ---------------------------------------------------------------------------

/// Wire form of a curated model space.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpaceExport {
    pub name: String,
    pub complex: String,
    pub cells: CellsDef,
    pub complex_model: bool,
    pub expected_chi: i64,
    pub expected_chi_c: i64,
    pub strata: Vec<CellsDef>,
    pub notes: String,
}

/// Wire form of a curated model map.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapExport {
    pub name: String,
    pub source: String,
    pub target: String,
    pub vertex_map: Vec<(VertexId, VertexId)>,
    pub proper: bool,
    pub complex_model: bool,
    pub notes: String,
}

/// Wire form of a curated square.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SquareExport {
    pub name: String,
    pub map: String,
    pub base: CellsDef,
    pub complex_model: bool,
    pub notes: String,
}

/// Wire form of a curated cover.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoverExport {
    pub name: String,
    pub space: String,
    pub sub: CellsDef,
    pub boundary: CellsDef,
    pub pieces: Vec<CellsDef>,
    pub complex_model: bool,
    pub notes: String,
}

/// Wire form of a curated action.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ActionExport {
    pub name: String,
    pub space: String,
    pub generators: Vec<Vec<(VertexId, VertexId)>>,
    pub complex_model: bool,
    pub notes: String,
}

/// The whole curated library in wire form.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RegistryExport {
    pub complexes: Vec<ComplexDef>,
    pub spaces: Vec<SpaceExport>,
    pub maps: Vec<MapExport>,
    pub squares: Vec<SquareExport>,
    pub covers: Vec<CoverExport>,
    pub actions: Vec<ActionExport>,
}

/// Serializes the curated model library.
pub fn export_registry(reg: &Registry) -> RegistryExport {
    let mut complexes: BTreeMap<String, ComplexDef> = BTreeMap::new();
    let mut remember = |c: &Complex| {
        complexes
            .entry(c.name().to_string())
            .or_insert_with(|| ComplexDef::of(c));
    };
    let spaces = reg
        .spaces()
        .map(|ms| {
            remember(ms.space.complex());
            SpaceExport {
                name: ms.name.to_string(),
                complex: ms.space.complex().name().to_string(),
                cells: CellsDef::of(&ms.space),
                complex_model: ms.complex_model,
                expected_chi: ms.expected_chi,
                expected_chi_c: ms.expected_chi_c,
                strata: ms.strata.iter().map(CellsDef::of).collect(),
                notes: ms.notes.to_string(),
            }
        })
        .collect();
    let maps = reg
        .maps()
        .map(|mm| MapExport {
            name: mm.name.to_string(),
            source: mm.source.to_string(),
            target: mm.target.to_string(),
            vertex_map: mm.map.vertex_map().iter().map(|(&a, &b)| (a, b)).collect(),
            proper: mm.proper,
            complex_model: mm.complex_model,
            notes: mm.notes.to_string(),
        })
        .collect();
    let squares = reg
        .squares()
        .map(|sq| SquareExport {
            name: sq.name.to_string(),
            map: sq.map.to_string(),
            base: CellsDef::of(&sq.base),
            complex_model: sq.complex_model,
            notes: sq.notes.to_string(),
        })
        .collect();
    let covers = reg
        .covers()
        .map(|cm| CoverExport {
            name: cm.name.to_string(),
            space: cm.space.to_string(),
            sub: CellsDef::of(&cm.sub),
            boundary: CellsDef::of(&cm.boundary),
            pieces: cm.pieces.iter().map(CellsDef::of).collect(),
            complex_model: cm.complex_model,
            notes: cm.notes.to_string(),
        })
        .collect();
    let actions = reg
        .actions()
        .map(|am| ActionExport {
            name: am.name.to_string(),
            space: am.space.to_string(),
            generators: am
                .generators
                .iter()
                .map(|g| g.pairs().collect())
                .collect(),
            complex_model: am.complex_model,
            notes: am.notes.to_string(),
        })
        .collect();
    RegistryExport {
        complexes: complexes.into_values().collect(),
        spaces,
        maps,
        squares,
        covers,
        actions,
    }
}

/// Serializes the curated library of the global registry as pretty JSON.
pub fn registry_json() -> String {
    serde_json::to_string_pretty(&export_registry(models::registry()))
        .expect("registry serializes")
}
