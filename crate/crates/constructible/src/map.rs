//! Simplicial maps between cell-set spaces.
//!
//! A map is a total function on the vertices of the source ambient complex
//! such that the image vertex set of every ambient simplex is an ambient
//! simplex of the target, and the image of every source *cell* is a target
//! *cell*. Degenerate maps (collapsing simplices onto lower-dimensional
//! ones) are allowed; the image cell of a simplex is the set of images of
//! its vertices.

use crate::cellset::CellSet;
use crate::complex::SimplexId;
use crate::error::{Error, Result};
use crate::simplex::{Simplex, VertexId};
use std::collections::BTreeMap;

/// A validated simplicial map between two cell-set spaces.
#[derive(Debug, Clone)]
pub struct SimplicialMap {
    source: CellSet,
    target: CellSet,
    vertex_map: BTreeMap<VertexId, VertexId>,
    /// Image cell of every source-ambient simplex, precomputed.
    image: Vec<SimplexId>,
}

impl SimplicialMap {
    /// Builds and validates a simplicial map.
    pub fn new(
        source: CellSet,
        target: CellSet,
        vertex_map: BTreeMap<VertexId, VertexId>,
    ) -> Result<SimplicialMap> {
        for &v in source.complex().vertex_ids() {
            if !vertex_map.contains_key(&v) {
                return Err(Error::InvalidMap(format!(
                    "vertex {v} of the source has no image"
                )));
            }
        }
        let src_k = source.complex().clone();
        let tgt_k = target.complex().clone();
        let mut image = Vec::with_capacity(src_k.len());
        for id in 0..src_k.len() {
            let s = src_k.simplex(id);
            let mut verts: Vec<VertexId> =
                s.vertices().iter().map(|v| vertex_map[v]).collect();
            verts.sort_unstable();
            verts.dedup();
            let img = Simplex::from_sorted(verts);
            match tgt_k.id_of(&img) {
                Some(t) => image.push(t),
                None => {
                    return Err(Error::InvalidMap(format!(
                        "image {img} of simplex {s} is not a simplex of the target"
                    )))
                }
            }
        }
        for &id in source.members() {
            if !target.contains(image[id]) {
                return Err(Error::InvalidMap(format!(
                    "cell {} maps to {} which is outside the target cells",
                    src_k.simplex(id),
                    tgt_k.simplex(image[id])
                )));
            }
        }
        Ok(SimplicialMap {
            source,
            target,
            vertex_map,
            image,
        })
    }

    /// The identity map of a space.
    pub fn identity(space: &CellSet) -> SimplicialMap {
        let vm = space
            .complex()
            .vertex_ids()
            .iter()
            .map(|&v| (v, v))
            .collect();
        SimplicialMap::new(space.clone(), space.clone(), vm)
            .expect("identity is always simplicial")
    }

    /// The inclusion of a subset of cells into a larger set over the same
    /// ambient complex.
    pub fn inclusion(sub: &CellSet, sup: &CellSet) -> Result<SimplicialMap> {
        if !sub.is_subset_of(sup) {
            return Err(Error::NotSubset(format!(
                "inclusion requires the source cells to be contained in the target cells"
            )));
        }
        let vm = sub
            .complex()
            .vertex_ids()
            .iter()
            .map(|&v| (v, v))
            .collect();
        SimplicialMap::new(sub.clone(), sup.clone(), vm)
    }

    pub fn source(&self) -> &CellSet {
        &self.source
    }

    pub fn target(&self) -> &CellSet {
        &self.target
    }

    pub fn vertex_map(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.vertex_map
    }

    pub fn vertex_image(&self, v: VertexId) -> VertexId {
        self.vertex_map[&v]
    }

    /// Image cell (target simplex id) of a source-ambient simplex.
    pub fn image_cell(&self, id: SimplexId) -> SimplexId {
        self.image[id]
    }

    /// Image cell as a simplex.
    pub fn image_simplex(&self, id: SimplexId) -> &Simplex {
        self.target.complex().simplex(self.image[id])
    }

    /// Composition `g ∘ self`; requires `self.target == g.source` as spaces.
    pub fn then(&self, g: &SimplicialMap) -> Result<SimplicialMap> {
        if self.target != g.source {
            return Err(Error::SpaceMismatch(
                "composition requires the middle spaces to agree".into(),
            ));
        }
        let vm = self
            .vertex_map
            .iter()
            .map(|(&v, &w)| (v, g.vertex_map[&w]))
            .collect();
        SimplicialMap::new(self.source.clone(), g.target.clone(), vm)
    }

    /// Properness certificate: the source cells form a closed subcomplex of
    /// their ambient complex, so the realization is compact and every map
    /// out of it is proper.
    pub fn is_proper(&self) -> bool {
        self.source.is_closed_in_ambient()
    }

    /// Whether distinct source cells have distinct image cells.
    pub fn is_injective_on_cells(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.source.members().iter().all(|&id| seen.insert(self.image[id]))
    }

    /// Equality of the underlying vertex maps together with the spaces.
    pub fn same_map(&self, other: &SimplicialMap) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.vertex_map == other.vertex_map
    }
}
