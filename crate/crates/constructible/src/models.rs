//! Curated model spaces, maps, squares, covers and actions.
//!
//! Every model is a hand-built cell structure for a familiar space, with
//! frozen expected characteristics and a curated stratification. A model is
//! flagged `complex_model: true` when the space (together with its strata,
//! or the map together with its source and target) is the cell model of a
//! complex algebraic variety; the others are merely real. The engine's
//! central comparisons hold on the complex models and are expected to fail
//! on specific real ones, which the bundled scenarios invert into
//! counterexample checks.
//!
//! Naming conventions inside the cell structures:
//!
//! * cones `cone_polygon(n)` have apex 0 and rim 1..=n — the open star of
//!   the apex is the model of a 2-disk that duality treats as smooth;
//! * the octahedron has poles 0 and 5 and equator 1,2,3,4 — the model of a
//!   smooth compact curve with two marked points;
//! * glued/disjoint doubles of these model a nodal curve and its
//!   normalization.

use crate::calculus::euler_integral;
use crate::cellset::CellSet;
use crate::complex::{Complex, SimplexId};
use crate::error::{Error, Result};
use crate::function::Function;
use crate::map::SimplicialMap;
use crate::product::product;
use crate::simplex::{Simplex, VertexId};
use crate::traces::VertexPerm;
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

// ---------------------------------------------------------------------------
// Complex builders
// ---------------------------------------------------------------------------

/// A single point.
pub fn point_complex() -> Arc<Complex> {
    Arc::new(Complex::from_facets("point", &[vec![0]]).expect("curated"))
}

/// The closed interval [0,1] as one edge.
pub fn interval_complex() -> Arc<Complex> {
    Arc::new(Complex::from_facets("interval", &[vec![0, 1]]).expect("curated"))
}

/// A path with three vertices 0—1—2.
pub fn path3_complex() -> Arc<Complex> {
    Arc::new(Complex::from_facets("path3", &[vec![0, 1], vec![1, 2]]).expect("curated"))
}

/// An n-cycle with vertices 0..n.
pub fn circle_complex(n: VertexId) -> Arc<Complex> {
    let facets: Vec<Vec<VertexId>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    Arc::new(Complex::from_facets(format!("circle{n}"), &facets).expect("curated"))
}

/// The cone over an n-cycle: apex 0, rim 1..=n.
pub fn cone_polygon(n: VertexId) -> Arc<Complex> {
    let facets: Vec<Vec<VertexId>> = (1..=n)
        .map(|i| vec![0, i, if i == n { 1 } else { i + 1 }])
        .collect();
    Arc::new(Complex::from_facets(format!("cone{n}"), &facets).expect("curated"))
}

/// The boundary of a tetrahedron: the smallest closed surface of genus 0.
pub fn tetra_boundary() -> Arc<Complex> {
    Arc::new(
        Complex::from_facets(
            "tetra_boundary",
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .expect("curated"),
    )
}

/// The octahedron: poles 0 and 5, equator 1,2,3,4.
pub fn octahedron() -> Arc<Complex> {
    Arc::new(
        Complex::from_facets(
            "octahedron",
            &[
                vec![0, 1, 2],
                vec![0, 2, 3],
                vec![0, 3, 4],
                vec![0, 1, 4],
                vec![5, 1, 2],
                vec![5, 2, 3],
                vec![5, 3, 4],
                vec![5, 1, 4],
            ],
        )
        .expect("curated"),
    )
}

/// Two n-gon cones sharing their apex 0; rims 1..=n and n+1..=2n.
pub fn wedge_cones(n: VertexId) -> Arc<Complex> {
    let mut facets: Vec<Vec<VertexId>> = (1..=n)
        .map(|i| vec![0, i, if i == n { 1 } else { i + 1 }])
        .collect();
    facets.extend((n + 1..=2 * n).map(|i| vec![0, i, if i == 2 * n { n + 1 } else { i + 1 }]));
    Arc::new(Complex::from_facets(format!("wedge_cones{n}"), &facets).expect("curated"))
}

/// Two disjoint n-gon cones: apexes 0 and n+1, rims 1..=n and n+2..=2n+1.
pub fn two_cones(n: VertexId) -> Arc<Complex> {
    let mut facets: Vec<Vec<VertexId>> = (1..=n)
        .map(|i| vec![0, i, if i == n { 1 } else { i + 1 }])
        .collect();
    let b = n + 1;
    facets.extend(
        (n + 2..=2 * n + 1).map(|i| vec![b, i, if i == 2 * n + 1 { n + 2 } else { i + 1 }]),
    );
    Arc::new(Complex::from_facets(format!("two_cones{n}"), &facets).expect("curated"))
}

/// Two octahedra glued at one vertex: A has poles 0,5 and equator 1..4;
/// B shares vertex 5 as a pole, with equator 6..9 and far pole 10.
pub fn glued_octahedra() -> Arc<Complex> {
    let mut facets = vec![
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![0, 1, 4],
        vec![5, 1, 2],
        vec![5, 2, 3],
        vec![5, 3, 4],
        vec![5, 1, 4],
    ];
    facets.extend([
        vec![5, 6, 7],
        vec![5, 7, 8],
        vec![5, 8, 9],
        vec![5, 6, 9],
        vec![10, 6, 7],
        vec![10, 7, 8],
        vec![10, 8, 9],
        vec![10, 6, 9],
    ]);
    Arc::new(Complex::from_facets("glued_octahedra", &facets).expect("curated"))
}

/// Two disjoint octahedra: A as usual (0..5), B with poles 6,11 and
/// equator 7..10.
pub fn two_octahedra() -> Arc<Complex> {
    let mut facets = vec![
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![0, 1, 4],
        vec![5, 1, 2],
        vec![5, 2, 3],
        vec![5, 3, 4],
        vec![5, 1, 4],
    ];
    facets.extend([
        vec![6, 7, 8],
        vec![6, 8, 9],
        vec![6, 9, 10],
        vec![6, 7, 10],
        vec![11, 7, 8],
        vec![11, 8, 9],
        vec![11, 9, 10],
        vec![11, 7, 10],
    ]);
    Arc::new(Complex::from_facets("two_octahedra", &facets).expect("curated"))
}

// ---------------------------------------------------------------------------
// Model structs
// ---------------------------------------------------------------------------

/// A named space with frozen expectations and a curated stratification.
#[derive(Debug, Clone)]
pub struct ModelSpace {
    pub name: &'static str,
    pub space: CellSet,
    /// Whether the space with its strata models a complex algebraic
    /// variety (as opposed to a merely real one).
    pub complex_model: bool,
    /// Expected ordinary Euler characteristic (dual Euler integral of 1).
    pub expected_chi: i64,
    /// Expected compactly supported Euler characteristic.
    pub expected_chi_c: i64,
    /// Partition of the space into locally closed strata; indicator
    /// functions of strata are the test basis for the engine's comparisons.
    pub strata: Vec<CellSet>,
    pub notes: &'static str,
}

impl ModelSpace {
    /// Checks the frozen expectations and that the strata partition the
    /// space.
    pub fn verify(&self) -> Result<()> {
        let chi_c = self.space.chi_c();
        if chi_c != self.expected_chi_c {
            return Err(Error::Inconsistency(format!(
                "{}: compact characteristic {} differs from the expected {}",
                self.name, chi_c, self.expected_chi_c
            )));
        }
        let chi = euler_integral(&Function::one(self.space.clone()));
        if chi != self.expected_chi {
            return Err(Error::Inconsistency(format!(
                "{}: characteristic {} differs from the expected {}",
                self.name, chi, self.expected_chi
            )));
        }
        let mut seen = vec![false; self.space.complex().len()];
        for stratum in &self.strata {
            stratum.require_same_ambient(&self.space)?;
            if !stratum.is_subset_of(&self.space) {
                return Err(Error::Inconsistency(format!(
                    "{}: a stratum leaves the space",
                    self.name
                )));
            }
            for &id in stratum.members() {
                if seen[id] {
                    return Err(Error::Inconsistency(format!(
                        "{}: strata overlap at cell {}",
                        self.name,
                        self.space.complex().simplex(id)
                    )));
                }
                seen[id] = true;
            }
        }
        if self.strata.iter().map(CellSet::len).sum::<usize>() != self.space.len() {
            return Err(Error::Inconsistency(format!(
                "{}: strata do not cover the space",
                self.name
            )));
        }
        Ok(())
    }

    /// Indicator functions of the strata, as functions on the whole space:
    /// the test basis used by the bundled comparisons.
    pub fn stratum_indicators(&self) -> Vec<Function> {
        self.strata
            .iter()
            .map(|s| Function::indicator(self.space.clone(), s).expect("stratum ⊆ space"))
            .collect()
    }
}

/// A named map between two model spaces.
#[derive(Debug, Clone)]
pub struct ModelMap {
    pub name: &'static str,
    pub source: &'static str,
    pub target: &'static str,
    pub map: SimplicialMap,
    /// Properness certificate: the source cells are closed in their
    /// ambient complex. Kept equal to `map.is_proper()` by construction.
    pub proper: bool,
    pub complex_model: bool,
    pub notes: &'static str,
}

/// A base-change square: a map π: X → Y together with a subset Z of the
/// target; the other two sides are the inclusion of Z and the restriction
/// of π to the exact preimage of Z.
#[derive(Debug, Clone)]
pub struct ModelSquare {
    pub name: &'static str,
    /// Registry name of π.
    pub map: &'static str,
    /// Z ⊆ target cells.
    pub base: CellSet,
    pub complex_model: bool,
    pub notes: &'static str,
}

/// The four maps of a base-change square.
#[derive(Debug)]
pub struct SquareData {
    /// π: X → Y.
    pub map: SimplicialMap,
    /// i: Z ↪ Y.
    pub base_inclusion: SimplicialMap,
    /// π′: Z′ → Z, the restriction of π to the preimage Z′ = π⁻¹(Z).
    pub restricted: SimplicialMap,
    /// i′: Z′ ↪ X.
    pub fiber_inclusion: SimplicialMap,
}

impl ModelSquare {
    /// Builds the four maps, validating that the square commutes.
    pub fn components(&self, reg: &Registry) -> Result<SquareData> {
        square_components(&reg.map(self.map)?.map, &self.base)
    }
}

/// Completes a map π and a base Z ⊆ target into a commuting square whose
/// left edge is π restricted to the exact preimage of Z.
pub fn square_components(pi: &SimplicialMap, base: &CellSet) -> Result<SquareData> {
    let base_inclusion = SimplicialMap::inclusion(base, pi.target())?;
    let fiber_members: Vec<SimplexId> = pi
        .source()
        .members()
        .iter()
        .copied()
        .filter(|&id| base.contains(pi.image_cell(id)))
        .collect();
    let fiber = CellSet::new(pi.source().complex().clone(), fiber_members)?;
    let fiber_inclusion = SimplicialMap::inclusion(&fiber, pi.source())?;
    let restricted = SimplicialMap::new(fiber, base.clone(), pi.vertex_map().clone())?;
    let around_top = fiber_inclusion.then(pi)?;
    let around_bottom = restricted.then(&base_inclusion)?;
    if !around_top.same_map(&around_bottom) {
        return Err(Error::Inconsistency("square does not commute".into()));
    }
    Ok(SquareData {
        map: pi.clone(),
        base_inclusion,
        restricted,
        fiber_inclusion,
    })
}

/// An open-cover model for the inclusion–exclusion boundary computation:
/// a space X, an open subset U carrying the function, the boundary set Z,
/// and open pieces covering Z.
#[derive(Debug, Clone)]
pub struct CoverModel {
    pub name: &'static str,
    /// Registry name of the ambient model space X.
    pub space: &'static str,
    /// U, open in X.
    pub sub: CellSet,
    /// Z ⊆ X where boundary values are compared.
    pub boundary: CellSet,
    pub pieces: Vec<CellSet>,
    pub complex_model: bool,
    pub notes: &'static str,
}

/// A named group action on a model space.
#[derive(Debug, Clone)]
pub struct ModelAction {
    pub name: &'static str,
    pub space: &'static str,
    pub generators: Vec<VertexPerm>,
    pub complex_model: bool,
    pub notes: &'static str,
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

/// The curated model library, keyed by name.
#[derive(Debug)]
pub struct Registry {
    spaces: BTreeMap<&'static str, ModelSpace>,
    maps: BTreeMap<&'static str, ModelMap>,
    squares: BTreeMap<&'static str, ModelSquare>,
    covers: BTreeMap<&'static str, CoverModel>,
    actions: BTreeMap<&'static str, ModelAction>,
}

impl Registry {
    pub fn space(&self, name: &str) -> Result<&ModelSpace> {
        self.spaces
            .get(name)
            .ok_or_else(|| Error::UnknownReference(format!("model space '{name}'")))
    }

    pub fn map(&self, name: &str) -> Result<&ModelMap> {
        self.maps
            .get(name)
            .ok_or_else(|| Error::UnknownReference(format!("model map '{name}'")))
    }

    pub fn square(&self, name: &str) -> Result<&ModelSquare> {
        self.squares
            .get(name)
            .ok_or_else(|| Error::UnknownReference(format!("model square '{name}'")))
    }

    pub fn cover(&self, name: &str) -> Result<&CoverModel> {
        self.covers
            .get(name)
            .ok_or_else(|| Error::UnknownReference(format!("model cover '{name}'")))
    }

    pub fn action(&self, name: &str) -> Result<&ModelAction> {
        self.actions
            .get(name)
            .ok_or_else(|| Error::UnknownReference(format!("model action '{name}'")))
    }

    pub fn spaces(&self) -> impl Iterator<Item = &ModelSpace> {
        self.spaces.values()
    }

    pub fn maps(&self) -> impl Iterator<Item = &ModelMap> {
        self.maps.values()
    }

    pub fn squares(&self) -> impl Iterator<Item = &ModelSquare> {
        self.squares.values()
    }

    pub fn covers(&self) -> impl Iterator<Item = &CoverModel> {
        self.covers.values()
    }

    pub fn actions(&self) -> impl Iterator<Item = &ModelAction> {
        self.actions.values()
    }
}

/// The global model registry (built once, lazily).
pub fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(build_registry)
}

// ---------------------------------------------------------------------------
// Construction helpers
// ---------------------------------------------------------------------------

fn cell(k: &Arc<Complex>, verts: &[VertexId]) -> SimplexId {
    k.id_of(&Simplex::new(verts.to_vec()).expect("curated cell"))
        .expect("curated cell exists")
}

fn vertex_set(k: &Arc<Complex>, v: VertexId) -> CellSet {
    CellSet::new(k.clone(), vec![cell(k, &[v])]).expect("vertex cell")
}

fn star_of(k: &Arc<Complex>, v: VertexId) -> CellSet {
    vertex_set(k, v).star()
}

/// The finest stratification: every cell its own stratum.
fn finest_strata(space: &CellSet) -> Vec<CellSet> {
    space
        .members()
        .iter()
        .map(|&id| CellSet::new_unchecked(space.complex().clone(), vec![id]))
        .collect()
}

/// Cells of `within` all of whose vertices lie in `allowed`.
fn cells_with_vertices_in(within: &CellSet, allowed: &[VertexId]) -> CellSet {
    let members: Vec<SimplexId> = within
        .members()
        .iter()
        .copied()
        .filter(|&id| {
            within
                .complex()
                .simplex(id)
                .vertices()
                .iter()
                .all(|v| allowed.contains(v))
        })
        .collect();
    CellSet::new(within.complex().clone(), members).expect("curated stratum")
}

fn constant_vertex_map(k: &Arc<Complex>, to: VertexId) -> BTreeMap<VertexId, VertexId> {
    k.vertex_ids().iter().map(|&v| (v, to)).collect()
}

fn identity_vertex_map(k: &Arc<Complex>) -> BTreeMap<VertexId, VertexId> {
    k.vertex_ids().iter().map(|&v| (v, v)).collect()
}

// ---------------------------------------------------------------------------
// The curated library
// ---------------------------------------------------------------------------

#[allow(clippy::too_many_lines)]
fn build_registry() -> Registry {
    let mut spaces: BTreeMap<&'static str, ModelSpace> = BTreeMap::new();
    let mut maps: BTreeMap<&'static str, ModelMap> = BTreeMap::new();
    let mut squares: BTreeMap<&'static str, ModelSquare> = BTreeMap::new();
    let mut covers: BTreeMap<&'static str, CoverModel> = BTreeMap::new();
    let mut actions: BTreeMap<&'static str, ModelAction> = BTreeMap::new();

    let add_space = |s: ModelSpace, spaces: &mut BTreeMap<&'static str, ModelSpace>| {
        assert!(spaces.insert(s.name, s).is_none(), "duplicate space name");
    };

    // --- ambient complexes, shared across the models living in them -----
    let pt = point_complex();
    let iv = interval_complex();
    let path = path3_complex();
    let circ = circle_complex(6);
    let k6 = cone_polygon(6);
    let k12 = cone_polygon(12);
    let k18 = cone_polygon(18);
    let tetra = tetra_boundary();
    let octa = octahedron();
    let wedge = wedge_cones(6);
    let pair_cones = two_cones(6);
    let glued = glued_octahedra();
    let pair_octa = two_octahedra();
    let caps_k = two_cones(4);

    // --- spaces ----------------------------------------------------------
    let point_all = CellSet::all(pt.clone());
    add_space(
        ModelSpace {
            name: "point",
            space: point_all.clone(),
            complex_model: true,
            expected_chi: 1,
            expected_chi_c: 1,
            strata: vec![point_all.clone()],
            notes: "a single point",
        },
        &mut spaces,
    );

    let interval_all = CellSet::all(iv.clone());
    add_space(
        ModelSpace {
            name: "interval",
            space: interval_all.clone(),
            complex_model: false,
            expected_chi: 1,
            expected_chi_c: 1,
            strata: finest_strata(&interval_all),
            notes: "closed interval: compact but with real boundary points",
        },
        &mut spaces,
    );

    let open_interval = CellSet::new(iv.clone(), vec![cell(&iv, &[0, 1])]).expect("curated");
    add_space(
        ModelSpace {
            name: "open_interval",
            space: open_interval.clone(),
            complex_model: false,
            expected_chi: 1,
            expected_chi_c: -1,
            strata: finest_strata(&open_interval),
            notes: "open interval: the basic real counterexample source",
        },
        &mut spaces,
    );

    let half_open =
        CellSet::new(iv.clone(), vec![cell(&iv, &[1]), cell(&iv, &[0, 1])]).expect("curated");
    add_space(
        ModelSpace {
            name: "half_open_interval",
            space: half_open.clone(),
            complex_model: false,
            expected_chi: 1,
            expected_chi_c: 0,
            strata: finest_strata(&half_open),
            notes: "half-open interval (0,1]: one boundary point kept",
        },
        &mut spaces,
    );

    let endpoint = vertex_set(&iv, 0);
    add_space(
        ModelSpace {
            name: "endpoint",
            space: endpoint.clone(),
            complex_model: false,
            expected_chi: 1,
            expected_chi_c: 1,
            strata: vec![endpoint.clone()],
            notes: "an endpoint of the closed interval",
        },
        &mut spaces,
    );

    let circle_all = CellSet::all(circ.clone());
    add_space(
        ModelSpace {
            name: "circle",
            space: circle_all.clone(),
            complex_model: false,
            expected_chi: 0,
            expected_chi_c: 0,
            strata: finest_strata(&circle_all),
            notes: "hexagonal circle",
        },
        &mut spaces,
    );

    // Pointed-disk models: the open star of the cone apex. Duality fixes
    // the constant function 1 on these, which is what makes them the right
    // cell models of the complex affine line.
    let disk_c = star_of(&k6, 0);
    let origin6 = vertex_set(&k6, 0);
    let punctured6 = disk_c.difference(&origin6).expect("curated");
    add_space(
        ModelSpace {
            name: "disk_c",
            space: disk_c.clone(),
            complex_model: true,
            expected_chi: 1,
            expected_chi_c: 1,
            strata: vec![origin6.clone(), punctured6.clone()],
            notes: "pointed-disk model of the affine line, one marked point",
        },
        &mut spaces,
    );

    let disk_c_2 = star_of(&k12, 0);
    let origin12 = vertex_set(&k12, 0);
    add_space(
        ModelSpace {
            name: "disk_c_2",
            space: disk_c_2.clone(),
            complex_model: true,
            expected_chi: 1,
            expected_chi_c: 1,
            strata: vec![
                origin12.clone(),
                disk_c_2.difference(&origin12).expect("curated"),
            ],
            notes: "pointed disk with a 12-gon rim: source of the 2-sheet wrap",
        },
        &mut spaces,
    );

    let disk_c_3 = star_of(&k18, 0);
    let origin18 = vertex_set(&k18, 0);
    add_space(
        ModelSpace {
            name: "disk_c_3",
            space: disk_c_3.clone(),
            complex_model: true,
            expected_chi: 1,
            expected_chi_c: 1,
            strata: vec![
                origin18.clone(),
                disk_c_3.difference(&origin18).expect("curated"),
            ],
            notes: "pointed disk with an 18-gon rim: source of the 3-sheet wrap",
        },
        &mut spaces,
    );

    add_space(
        ModelSpace {
            name: "c_star",
            space: punctured6.clone(),
            complex_model: true,
            expected_chi: 0,
            expected_chi_c: 0,
            strata: vec![punctured6.clone()],
            notes: "punctured pointed disk: the multiplicative group",
        },
        &mut spaces,
    );

    let closed_disk = CellSet::all(k6.clone());
    add_space(
        ModelSpace {
            name: "closed_disk",
            space: closed_disk.clone(),
            complex_model: false,
            expected_chi: 1,
            expected_chi_c: 1,
            strata: finest_strata(&closed_disk),
            notes: "closed disk with its rim: a real boundary duality sees",
        },
        &mut spaces,
    );

    add_space(
        ModelSpace {
            name: "disk_origin",
            space: origin6.clone(),
            complex_model: true,
            expected_chi: 1,
            expected_chi_c: 1,
            strata: vec![origin6.clone()],
            notes: "the marked point of the pointed disk",
        },
        &mut spaces,
    );

    let sphere_all = CellSet::all(tetra.clone());
    add_space(
        ModelSpace {
            name: "sphere",
            space: sphere_all.clone(),
            complex_model: true,
            expected_chi: 2,
            expected_chi_c: 2,
            strata: vec![sphere_all.clone()],
            notes: "tetrahedron boundary: a smooth compact curve, one stratum",
        },
        &mut spaces,
    );

    let p1_all = CellSet::all(octa.clone());
    let pole_n = vertex_set(&octa, 0);
    let pole_s = vertex_set(&octa, 5);
    let poles = pole_n.union(&pole_s).expect("two closed points");
    let p1_cstar = p1_all.difference(&poles).expect("curated");
    add_space(
        ModelSpace {
            name: "p1",
            space: p1_all.clone(),
            complex_model: true,
            expected_chi: 2,
            expected_chi_c: 2,
            strata: vec![pole_n.clone(), pole_s.clone(), p1_cstar.clone()],
            notes: "octahedral model of the projective line, two marked poles",
        },
        &mut spaces,
    );

    let c_chart = p1_all.difference(&pole_s).expect("curated");
    add_space(
        ModelSpace {
            name: "c_chart",
            space: c_chart.clone(),
            complex_model: true,
            expected_chi: 1,
            expected_chi_c: 1,
            strata: vec![
                pole_n.clone(),
                c_chart.difference(&pole_n).expect("curated"),
            ],
            notes: "projective line minus one pole: an affine chart",
        },
        &mut spaces,
    );

    add_space(
        ModelSpace {
            name: "p1_poles",
            space: poles.clone(),
            complex_model: true,
            expected_chi: 2,
            expected_chi_c: 2,
            strata: vec![pole_n.clone(), pole_s.clone()],
            notes: "the two marked poles",
        },
        &mut spaces,
    );

    add_space(
        ModelSpace {
            name: "p1_cstar",
            space: p1_cstar.clone(),
            complex_model: true,
            expected_chi: 0,
            expected_chi_c: 0,
            strata: vec![p1_cstar.clone()],
            notes: "projective line minus both poles",
        },
        &mut spaces,
    );

    let two_disks = star_of(&pair_cones, 0)
        .union(&star_of(&pair_cones, 7))
        .expect("disjoint stars");
    let origin_a = vertex_set(&pair_cones, 0);
    let origin_b = vertex_set(&pair_cones, 7);
    add_space(
        ModelSpace {
            name: "two_disks",
            space: two_disks.clone(),
            complex_model: true,
            expected_chi: 2,
            expected_chi_c: 2,
            strata: vec![
                origin_a.clone(),
                star_of(&pair_cones, 0).difference(&origin_a).expect("curated"),
                origin_b.clone(),
                star_of(&pair_cones, 7).difference(&origin_b).expect("curated"),
            ],
            notes: "disjoint pointed disks: the normalization source",
        },
        &mut spaces,
    );

    let nodal = star_of(&wedge, 0);
    let node = vertex_set(&wedge, 0);
    let branch_a = cells_with_vertices_in(&nodal, &[0, 1, 2, 3, 4, 5, 6])
        .difference(&node)
        .expect("curated");
    let branch_b = cells_with_vertices_in(&nodal, &[0, 7, 8, 9, 10, 11, 12])
        .difference(&node)
        .expect("curated");
    add_space(
        ModelSpace {
            name: "nodal_curve",
            space: nodal.clone(),
            complex_model: true,
            expected_chi: 1,
            expected_chi_c: 1,
            strata: vec![node.clone(), branch_a, branch_b],
            notes: "two pointed disks glued at their marked points",
        },
        &mut spaces,
    );

    let nodal_compact = CellSet::all(glued.clone());
    let node_c = vertex_set(&glued, 5);
    let comp_a = cells_with_vertices_in(&nodal_compact, &[0, 1, 2, 3, 4, 5])
        .difference(&node_c)
        .expect("curated");
    let comp_b = cells_with_vertices_in(&nodal_compact, &[5, 6, 7, 8, 9, 10])
        .difference(&node_c)
        .expect("curated");
    add_space(
        ModelSpace {
            name: "nodal_curve_compact",
            space: nodal_compact.clone(),
            complex_model: true,
            expected_chi: 3,
            expected_chi_c: 3,
            strata: vec![node_c.clone(), comp_a, comp_b],
            notes: "two compact curves glued at a node",
        },
        &mut spaces,
    );

    let two_p1 = CellSet::all(pair_octa.clone());
    let pa0 = vertex_set(&pair_octa, 0);
    let pa5 = vertex_set(&pair_octa, 5);
    let pb6 = vertex_set(&pair_octa, 6);
    let pb11 = vertex_set(&pair_octa, 11);
    let comp_a_all = cells_with_vertices_in(&two_p1, &[0, 1, 2, 3, 4, 5]);
    let comp_b_all = cells_with_vertices_in(&two_p1, &[6, 7, 8, 9, 10, 11]);
    add_space(
        ModelSpace {
            name: "two_p1",
            space: two_p1.clone(),
            complex_model: true,
            expected_chi: 4,
            expected_chi_c: 4,
            strata: vec![
                pa0.clone(),
                pa5.clone(),
                comp_a_all
                    .difference(&pa0.union(&pa5).expect("curated"))
                    .expect("curated"),
                pb6.clone(),
                pb11.clone(),
                comp_b_all
                    .difference(&pb6.union(&pb11).expect("curated"))
                    .expect("curated"),
            ],
            notes: "disjoint compact curves: the compact normalization source",
        },
        &mut spaces,
    );

    let caps_all = CellSet::all(caps_k.clone());
    add_space(
        ModelSpace {
            name: "caps",
            space: caps_all.clone(),
            complex_model: false,
            expected_chi: 2,
            expected_chi_c: 2,
            strata: finest_strata(&caps_all),
            notes: "two disjoint closed caps: a proper real cover of the projective line",
        },
        &mut spaces,
    );

    let square_prod = product(&interval_all, &interval_all).expect("curated product");
    let square_space = square_prod.space().clone();
    add_space(
        ModelSpace {
            name: "square",
            space: square_space.clone(),
            complex_model: false,
            expected_chi: 1,
            expected_chi_c: 1,
            strata: finest_strata(&square_space),
            notes: "staircase product of two intervals",
        },
        &mut spaces,
    );

    let cyl_prod = product(&circle_all, &interval_all).expect("curated product");
    let cylinder = cyl_prod.space().clone();
    add_space(
        ModelSpace {
            name: "cylinder",
            space: cylinder.clone(),
            complex_model: false,
            expected_chi: 0,
            expected_chi_c: 0,
            strata: finest_strata(&cylinder),
            notes: "staircase product circle × interval",
        },
        &mut spaces,
    );

    let annulus_members: Vec<SimplexId> = cylinder
        .members()
        .iter()
        .copied()
        .filter(|&id| half_open.contains(cyl_prod.proj_right().image_cell(id)))
        .collect();
    let annulus = CellSet::new(cylinder.complex().clone(), annulus_members).expect("curated");
    add_space(
        ModelSpace {
            name: "annulus_half_open",
            space: annulus.clone(),
            complex_model: false,
            expected_chi: 0,
            expected_chi_c: 0,
            strata: finest_strata(&annulus),
            notes: "circle × half-open interval: a fibrewise real counterexample",
        },
        &mut spaces,
    );

    // --- maps -------------------------------------------------------------
    let add_map = |m: ModelMap, maps: &mut BTreeMap<&'static str, ModelMap>| {
        assert_eq!(m.proper, m.map.is_proper(), "{}: properness certificate", m.name);
        assert!(maps.insert(m.name, m).is_none(), "duplicate map name");
    };

    let wrap_map = |source: &CellSet, rim: VertexId| -> SimplicialMap {
        let mut vm = BTreeMap::from([(0u32, 0u32)]);
        for i in 1..=rim {
            vm.insert(i, (i - 1) % 6 + 1);
        }
        SimplicialMap::new(source.clone(), disk_c.clone(), vm).expect("curated wrap")
    };
    add_map(
        ModelMap {
            name: "z1_cover",
            source: "disk_c",
            target: "disk_c",
            map: SimplicialMap::new(disk_c.clone(), disk_c.clone(), identity_vertex_map(&k6))
                .expect("curated"),
            proper: false,
            complex_model: true,
            notes: "the identity wrap: one sheet",
        },
        &mut maps,
    );
    add_map(
        ModelMap {
            name: "z2_cover",
            source: "disk_c_2",
            target: "disk_c",
            map: wrap_map(&disk_c_2, 12),
            proper: false,
            complex_model: true,
            notes: "squaring wrap: two sheets over the punctured disk",
        },
        &mut maps,
    );
    add_map(
        ModelMap {
            name: "z3_cover",
            source: "disk_c_3",
            target: "disk_c",
            map: wrap_map(&disk_c_3, 18),
            proper: false,
            complex_model: true,
            notes: "cubing wrap: three sheets over the punctured disk",
        },
        &mut maps,
    );

    add_map(
        ModelMap {
            name: "disk_to_point",
            source: "disk_c",
            target: "point",
            map: SimplicialMap::new(disk_c.clone(), point_all.clone(), constant_vertex_map(&k6, 0))
                .expect("curated"),
            proper: false,
            complex_model: true,
            notes: "non-compact but complex: both pushforwards integrate to 1",
        },
        &mut maps,
    );
    add_map(
        ModelMap {
            name: "cstar_to_point",
            source: "c_star",
            target: "point",
            map: SimplicialMap::new(
                punctured6.clone(),
                point_all.clone(),
                constant_vertex_map(&k6, 0),
            )
            .expect("curated"),
            proper: false,
            complex_model: true,
            notes: "punctured disk to a point",
        },
        &mut maps,
    );
    add_map(
        ModelMap {
            name: "p1_to_point",
            source: "p1",
            target: "point",
            map: SimplicialMap::new(p1_all.clone(), point_all.clone(), constant_vertex_map(&octa, 0))
                .expect("curated"),
            proper: true,
            complex_model: true,
            notes: "compact curve to a point",
        },
        &mut maps,
    );
    add_map(
        ModelMap {
            name: "sphere_to_point",
            source: "sphere",
            target: "point",
            map: SimplicialMap::new(
                sphere_all.clone(),
                point_all.clone(),
                constant_vertex_map(&tetra, 0),
            )
            .expect("curated"),
            proper: true,
            complex_model: true,
            notes: "tetrahedron boundary to a point",
        },
        &mut maps,
    );
    add_map(
        ModelMap {
            name: "cstar_into_disk",
            source: "c_star",
            target: "disk_c",
            map: SimplicialMap::inclusion(&punctured6, &disk_c).expect("curated"),
            proper: false,
            complex_model: true,
            notes: "open inclusion with a complex point at the boundary",
        },
        &mut maps,
    );
    add_map(
        ModelMap {
            name: "point_into_disk",
            source: "disk_origin",
            target: "disk_c",
            map: SimplicialMap::inclusion(&origin6, &disk_c).expect("curated"),
            proper: true,
            complex_model: true,
            notes: "closed inclusion of the marked point",
        },
        &mut maps,
    );
    add_map(
        ModelMap {
            name: "chart_into_p1",
            source: "c_chart",
            target: "p1",
            map: SimplicialMap::inclusion(&c_chart, &p1_all).expect("curated"),
            proper: false,
            complex_model: true,
            notes: "affine chart inside the projective line",
        },
        &mut maps,
    );
    add_map(
        ModelMap {
            name: "normalization",
            source: "two_disks",
            target: "nodal_curve",
            map: {
                let mut vm: BTreeMap<VertexId, VertexId> =
                    (0..=6).map(|v| (v, v)).collect();
                vm.insert(7, 0);
                for i in 8..=13 {
                    vm.insert(i, i - 1);
                }
                SimplicialMap::new(two_disks.clone(), nodal.clone(), vm).expect("curated")
            },
            proper: false,
            complex_model: true,
            notes: "separates the node: two points over it, one sheet elsewhere",
        },
        &mut maps,
    );
    add_map(
        ModelMap {
            name: "normalization_compact",
            source: "two_p1",
            target: "nodal_curve_compact",
            map: {
                let mut vm: BTreeMap<VertexId, VertexId> =
                    (0..=5).map(|v| (v, v)).collect();
                for i in 6..=11 {
                    vm.insert(i, i - 1);
                }
                SimplicialMap::new(two_p1.clone(), nodal_compact.clone(), vm).expect("curated")
            },
            proper: true,
            complex_model: true,
            notes: "proper normalization of the compact nodal curve",
        },
        &mut maps,
    );

    add_map(
        ModelMap {
            name: "open_interval_to_point",
            source: "open_interval",
            target: "point",
            map: SimplicialMap::new(
                open_interval.clone(),
                point_all.clone(),
                constant_vertex_map(&iv, 0),
            )
            .expect("curated"),
            proper: false,
            complex_model: false,
            notes: "the basic real failure: compact and plain integrals differ",
        },
        &mut maps,
    );
    add_map(
        ModelMap {
            name: "half_open_to_point",
            source: "half_open_interval",
            target: "point",
            map: SimplicialMap::new(
                half_open.clone(),
                point_all.clone(),
                constant_vertex_map(&iv, 0),
            )
            .expect("curated"),
            proper: false,
            complex_model: false,
            notes: "half-open source: compact integral 0, plain integral 1",
        },
        &mut maps,
    );
    add_map(
        ModelMap {
            name: "endpoint_into_interval",
            source: "endpoint",
            target: "interval",
            map: SimplicialMap::inclusion(&endpoint, &interval_all).expect("curated"),
            proper: true,
            complex_model: false,
            notes: "closed real point: the two pullbacks differ here",
        },
        &mut maps,
    );
    add_map(
        ModelMap {
            name: "interval_fold",
            source: "path3",
            target: "interval",
            map: {
                let path_all = CellSet::all(path.clone());
                SimplicialMap::new(
                    path_all.clone(),
                    interval_all.clone(),
                    BTreeMap::from([(0, 0), (1, 1), (2, 0)]),
                )
                .expect("curated")
            },
            proper: true,
            complex_model: false,
            notes: "proper real fold of two edges onto one",
        },
        &mut maps,
    );
    add_map(
        ModelMap {
            name: "caps_to_p1",
            source: "caps",
            target: "p1",
            map: {
                let mut vm: BTreeMap<VertexId, VertexId> =
                    (0..=4).map(|v| (v, v)).collect();
                vm.insert(5, 5);
                for i in 6..=9 {
                    vm.insert(i, i - 5);
                }
                SimplicialMap::new(caps_all.clone(), p1_all.clone(), vm).expect("curated")
            },
            proper: true,
            complex_model: false,
            notes: "two closed caps covering the projective line: proper but real",
        },
        &mut maps,
    );
    add_map(
        ModelMap {
            name: "cylinder_to_interval",
            source: "cylinder",
            target: "interval",
            map: cyl_prod.proj_right().clone(),
            proper: true,
            complex_model: false,
            notes: "projection of the cylinder onto its interval factor",
        },
        &mut maps,
    );
    add_map(
        ModelMap {
            name: "annulus_to_circle",
            source: "annulus_half_open",
            target: "circle",
            map: SimplicialMap::new(
                annulus.clone(),
                circle_all.clone(),
                cyl_prod.proj_left().vertex_map().clone(),
            )
            .expect("curated"),
            proper: false,
            complex_model: false,
            notes: "half-open fibres: compact pushforward 0, plain pushforward 1",
        },
        &mut maps,
    );

    // The path3 space backs interval_fold and needs a registry entry.
    let path_all = CellSet::all(path.clone());
    add_space(
        ModelSpace {
            name: "path3",
            space: path_all.clone(),
            complex_model: false,
            expected_chi: 1,
            expected_chi_c: 1,
            strata: finest_strata(&path_all),
            notes: "two edges in a row: the fold source",
        },
        &mut spaces,
    );

    // --- base-change squares ---------------------------------------------
    let add_square = |s: ModelSquare, squares: &mut BTreeMap<&'static str, ModelSquare>| {
        assert!(squares.insert(s.name, s).is_none(), "duplicate square name");
    };
    add_square(
        ModelSquare {
            name: "nodal_square",
            map: "normalization_compact",
            base: node_c.clone(),
            complex_model: true,
            notes: "fibre over the node: two points",
        },
        &mut squares,
    );
    add_square(
        ModelSquare {
            name: "normalization_square",
            map: "normalization",
            base: node.clone(),
            complex_model: true,
            notes: "the affine node: base change without properness",
        },
        &mut squares,
    );
    add_square(
        ModelSquare {
            name: "caps_square",
            map: "caps_to_p1",
            base: pole_s.star().closure(),
            complex_model: false,
            notes: "southern closed cap pulled back through the cap cover",
        },
        &mut squares,
    );
    add_square(
        ModelSquare {
            name: "cylinder_square",
            map: "cylinder_to_interval",
            base: vertex_set(&iv, 0),
            complex_model: false,
            notes: "circle fibre of the cylinder over one endpoint",
        },
        &mut squares,
    );

    // --- covers ------------------------------------------------------------
    let add_cover = |c: CoverModel, covers: &mut BTreeMap<&'static str, CoverModel>| {
        assert!(covers.insert(c.name, c).is_none(), "duplicate cover name");
    };
    add_cover(
        CoverModel {
            name: "interval_two_charts",
            space: "interval",
            sub: open_interval.clone(),
            boundary: interval_all.difference(&open_interval).expect("curated"),
            pieces: vec![star_of(&iv, 0), star_of(&iv, 1)],
            complex_model: false,
            notes: "ends of an interval seen from two overlapping half-open charts",
        },
        &mut covers,
    );
    add_cover(
        CoverModel {
            name: "p1_two_charts",
            space: "p1",
            sub: p1_cstar.clone(),
            boundary: poles.clone(),
            pieces: vec![star_of(&octa, 0), star_of(&octa, 5)],
            complex_model: true,
            notes: "both poles from their own charts; boundary values vanish",
        },
        &mut covers,
    );
    add_cover(
        CoverModel {
            name: "p1_equator_cover",
            space: "p1",
            sub: star_of(&octa, 0).union(&star_of(&octa, 5)).expect("curated"),
            boundary: {
                let eq: Vec<SimplexId> = [1u32, 2, 3, 4]
                    .iter()
                    .map(|&v| cell(&octa, &[v]))
                    .chain(
                        [[1u32, 2], [2, 3], [3, 4], [1, 4]]
                            .iter()
                            .map(|e| cell(&octa, e)),
                    )
                    .collect();
                CellSet::new(octa.clone(), eq).expect("curated")
            },
            pieces: (1u32..=4).map(|v| star_of(&octa, v)).collect(),
            complex_model: false,
            notes: "a genuinely overlapping cover of the equator circle; both hemispheres contribute",
        },
        &mut covers,
    );
    add_cover(
        CoverModel {
            name: "nodal_node_cover",
            space: "nodal_curve",
            sub: nodal.difference(&node).expect("curated"),
            boundary: node.clone(),
            pieces: vec![nodal.clone()],
            complex_model: true,
            notes: "single-piece cover of the node",
        },
        &mut covers,
    );

    // --- actions -------------------------------------------------------------
    let add_action = |a: ModelAction, actions: &mut BTreeMap<&'static str, ModelAction>| {
        assert!(actions.insert(a.name, a).is_none(), "duplicate action name");
    };
    let rot6 = VertexPerm::new(
        std::iter::once((0u32, 0u32)).chain((1..=6u32).map(|i| (i, if i == 6 { 1 } else { i + 1 }))),
    )
    .expect("curated");
    add_action(
        ModelAction {
            name: "disk_rotation",
            space: "disk_c",
            generators: vec![rot6.clone()],
            complex_model: true,
            notes: "order-6 rotation of the pointed disk about its center",
        },
        &mut actions,
    );
    add_action(
        ModelAction {
            name: "cstar_rotation",
            space: "c_star",
            generators: vec![rot6],
            complex_model: true,
            notes: "free rotation of the punctured disk",
        },
        &mut actions,
    );
    add_action(
        ModelAction {
            name: "p1_pole_swap",
            space: "p1",
            generators: vec![
                VertexPerm::new([(0, 5), (5, 0), (1, 1), (2, 4), (3, 3), (4, 2)])
                    .expect("curated"),
            ],
            complex_model: true,
            notes: "inversion of the projective line: swaps the poles, fixes two equator points",
        },
        &mut actions,
    );
    add_action(
        ModelAction {
            name: "sphere_identity",
            space: "sphere",
            generators: vec![],
            complex_model: true,
            notes: "trivial group on the compact curve",
        },
        &mut actions,
    );
    add_action(
        ModelAction {
            name: "interval_swap",
            space: "interval",
            generators: vec![VertexPerm::new([(0, 1), (1, 0)]).expect("curated")],
            complex_model: false,
            notes: "end swap: regular only after one subdivision",
        },
        &mut actions,
    );
    add_action(
        ModelAction {
            name: "circle_rotation",
            space: "circle",
            generators: vec![VertexPerm::new((0..6u32).map(|i| (i, (i + 1) % 6))).expect("curated")],
            complex_model: false,
            notes: "free rotation of the circle",
        },
        &mut actions,
    );
    add_action(
        ModelAction {
            name: "open_interval_identity",
            space: "open_interval",
            generators: vec![VertexPerm::identity(&[0, 1])],
            complex_model: false,
            notes: "identity on a non-compact real space: the two traces differ",
        },
        &mut actions,
    );

    Registry {
        spaces,
        maps,
        squares,
        covers,
        actions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{pushforward, pushforward_c};

    #[test]
    fn every_model_space_verifies() {
        let reg = registry();
        let mut count = 0;
        for ms in reg.spaces() {
            ms.verify().unwrap_or_else(|e| panic!("{}: {e}", ms.name));
            count += 1;
        }
        assert!(count >= 20, "curated library has at least 20 spaces, got {count}");
    }

    #[test]
    fn map_endpoints_resolve_and_flags_match() {
        let reg = registry();
        let mut complex_count = 0;
        for mm in reg.maps() {
            let src = reg.space(mm.source).expect("source resolves");
            let tgt = reg.space(mm.target).expect("target resolves");
            assert_eq!(mm.map.source(), &src.space, "{}", mm.name);
            assert_eq!(mm.map.target(), &tgt.space, "{}", mm.name);
            assert_eq!(mm.proper, mm.map.is_proper(), "{}", mm.name);
            if mm.complex_model {
                assert!(src.complex_model && tgt.complex_model, "{}", mm.name);
                complex_count += 1;
            }
        }
        assert!(complex_count >= 12, "got {complex_count} complex maps");
    }

    #[test]
    fn wrap_maps_count_sheets() {
        let reg = registry();
        for (name, sheets) in [("z1_cover", 1), ("z2_cover", 2), ("z3_cover", 3)] {
            let mm = reg.map(name).unwrap();
            let one = Function::one(mm.map.source().clone());
            let pushed = pushforward_c(&mm.map, &one).unwrap();
            let disk = mm.map.target();
            let apex = disk.members()[0];
            assert_eq!(pushed.value(apex), 1, "{name}: one point over the center");
            for &id in disk.members().iter().skip(1) {
                assert_eq!(pushed.value(id), sheets, "{name}: sheet count off-center");
            }
        }
    }

    #[test]
    fn normalization_doubles_the_node() {
        let reg = registry();
        let mm = reg.map("normalization").unwrap();
        let one = Function::one(mm.map.source().clone());
        let pushed = pushforward_c(&mm.map, &one).unwrap();
        let nodal = mm.map.target();
        let node = nodal.members()[0];
        assert_eq!(pushed.value(node), 2, "two preimages of the node");
        for &id in nodal.members().iter().skip(1) {
            assert_eq!(pushed.value(id), 1, "one preimage elsewhere");
        }
        // The same holds for the plain pushforward: the model is complex.
        let starred = pushforward(&mm.map, &one).unwrap();
        assert_eq!(pushed, starred);
    }

    #[test]
    fn squares_commute_and_have_the_expected_fibers() {
        let reg = registry();
        for sq in reg.squares() {
            let data = sq.components(reg).unwrap_or_else(|e| panic!("{}: {e}", sq.name));
            assert!(!data.restricted.source().is_empty(), "{}: empty fibre", sq.name);
        }
        let cyl = reg.square("cylinder_square").unwrap();
        let data = cyl.components(reg).unwrap();
        assert_eq!(
            data.restricted.source().chi_c(),
            0,
            "the fibre over an endpoint is a circle"
        );
        let nodal = reg.square("nodal_square").unwrap();
        let data = nodal.components(reg).unwrap();
        assert_eq!(
            data.restricted.source().len(),
            2,
            "two vertices over the node"
        );
    }

    #[test]
    fn cover_models_are_well_formed() {
        let reg = registry();
        for cm in reg.covers() {
            let ms = reg.space(cm.space).expect("ambient resolves");
            assert!(cm.sub.is_open_in(&ms.space), "{}: sub open", cm.name);
            assert!(cm.boundary.is_subset_of(&ms.space), "{}", cm.name);
            for piece in &cm.pieces {
                assert!(piece.is_open_in(&ms.space), "{}: pieces open", cm.name);
            }
            assert!(
                cm.boundary
                    .members()
                    .iter()
                    .all(|&c| cm.pieces.iter().any(|p| p.contains(c))),
                "{}: pieces cover the boundary",
                cm.name
            );
        }
    }

    #[test]
    fn annulus_projection_separates_the_pushforwards() {
        let reg = registry();
        let mm = reg.map("annulus_to_circle").unwrap();
        let one = Function::one(mm.map.source().clone());
        let compact = pushforward_c(&mm.map, &one).unwrap();
        let plain = pushforward(&mm.map, &one).unwrap();
        assert!(compact.is_zero(), "half-open fibres integrate to 0");
        assert!(
            plain.values().iter().all(|&v| v == 1),
            "sections see the contractible fibre: expected all ones, got {:?}",
            plain.values()
        );
    }
}
