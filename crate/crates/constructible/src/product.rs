//! Ordered products of complexes and graph embeddings.
//!
//! The product of two complexes with totally ordered vertices is the
//! staircase triangulation: a simplex of X × Y is a chain in the product
//! order on vertex pairs whose two projections are simplices of X and Y.
//! The open cells lying over a pair (σ, τ) of open cells triangulate
//! σ° × τ°, so the compactly supported Euler characteristic is
//! multiplicative.
//!
//! A simplicial map f: X → Y embeds into the product via its graph
//! γ(v) = (v, f(v)) whenever f is weakly monotone on every ambient edge of
//! X. When it is not (coverings wrap around), both sides are subdivided
//! once and the induced map sends the barycenter of σ to the barycenter of
//! f(σ). Simplex ids sort by dimension first, faces inside cofaces, so
//! that map is always weakly monotone and its graph always realizes.

use crate::cellset::CellSet;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::function::Function;
use crate::map::SimplicialMap;
use crate::simplex::{Simplex, VertexId};
use crate::subdivision::Subdivision;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// A product space together with its two projections.
#[derive(Debug)]
pub struct Product {
    space: CellSet,
    proj_left: SimplicialMap,
    proj_right: SimplicialMap,
    stride: VertexId,
}

impl Product {
    pub fn space(&self) -> &CellSet {
        &self.space
    }

    /// Projection onto the left factor.
    pub fn proj_left(&self) -> &SimplicialMap {
        &self.proj_left
    }

    /// Projection onto the right factor.
    pub fn proj_right(&self) -> &SimplicialMap {
        &self.proj_right
    }

    /// Encodes a vertex pair as a product vertex id.
    pub fn pair_id(&self, left: VertexId, right: VertexId) -> VertexId {
        left * self.stride + right
    }

    /// Decodes a product vertex id.
    pub fn unpair(&self, v: VertexId) -> (VertexId, VertexId) {
        (v / self.stride, v % self.stride)
    }
}

/// Builds the staircase product of two spaces.
pub fn product(x: &CellSet, y: &CellSet) -> Result<Product> {
    let kx = x.complex().clone();
    let ky = y.complex().clone();
    let stride: VertexId = ky
        .vertex_ids()
        .iter()
        .max()
        .map(|&m| m + 1)
        .ok_or_else(|| Error::MalformedInput("empty factor".into()))?;

    // Enumerate chains inside every pair of facets; deduplication handles
    // overlaps. A chain is extended only by pairs strictly above its last
    // element, so each chain appears exactly once per containing grid.
    let mut set: BTreeSet<Simplex> = BTreeSet::new();
    let x_facets = kx.facets();
    let y_facets = ky.facets();
    for fx in &x_facets {
        for fy in &y_facets {
            let grid: Vec<(VertexId, VertexId)> = fx
                .vertices()
                .iter()
                .flat_map(|&a| fy.vertices().iter().map(move |&b| (a, b)))
                .collect();
            let mut stack: Vec<Vec<(VertexId, VertexId)>> =
                grid.iter().map(|&p| vec![p]).collect();
            while let Some(chain) = stack.pop() {
                let verts: Vec<VertexId> =
                    chain.iter().map(|&(a, b)| a * stride + b).collect();
                set.insert(Simplex::from_sorted(verts));
                let &(la, lb) = chain.last().expect("non-empty chain");
                for &(a, b) in &grid {
                    if a >= la && b >= lb && (a, b) != (la, lb) {
                        let mut next = chain.clone();
                        next.push((a, b));
                        stack.push(next);
                    }
                }
            }
        }
    }
    let name = format!("{}×{}", kx.name(), ky.name());
    let complex = Arc::new(Complex::from_simplex_set(name, set));

    // Cells of the product space: both projections land in the factor cells.
    let x_mask = x.mask();
    let y_mask = y.mask();
    let mut members = Vec::new();
    for id in 0..complex.len() {
        let s = complex.simplex(id);
        let project = |pick: fn((VertexId, VertexId)) -> VertexId| {
            let mut vs: Vec<VertexId> = s
                .vertices()
                .iter()
                .map(|&v| pick((v / stride, v % stride)))
                .collect();
            vs.sort_unstable();
            vs.dedup();
            Simplex::from_sorted(vs)
        };
        let px = kx
            .id_of(&project(|(a, _)| a))
            .expect("projection is a simplex of the left factor");
        let py = ky
            .id_of(&project(|(_, b)| b))
            .expect("projection is a simplex of the right factor");
        if x_mask[px] && y_mask[py] {
            members.push(id);
        }
    }
    let space = CellSet::new(complex.clone(), members)?;

    let vm_left: BTreeMap<VertexId, VertexId> = complex
        .vertex_ids()
        .iter()
        .map(|&v| (v, v / stride))
        .collect();
    let vm_right: BTreeMap<VertexId, VertexId> = complex
        .vertex_ids()
        .iter()
        .map(|&v| (v, v % stride))
        .collect();
    let proj_left = SimplicialMap::new(space.clone(), x.clone(), vm_left)?;
    let proj_right = SimplicialMap::new(space.clone(), y.clone(), vm_right)?;
    Ok(Product {
        space,
        proj_left,
        proj_right,
        stride,
    })
}

/// A graph embedding γ: X → X × Y of a simplicial map f: X → Y.
#[derive(Debug)]
pub struct GraphEmbedding {
    product: Product,
    embedding: SimplicialMap,
    map_used: SimplicialMap,
    subdivided: bool,
}

impl GraphEmbedding {
    pub fn product(&self) -> &Product {
        &self.product
    }

    /// The closed immersion γ with p_left ∘ γ = id and p_right ∘ γ = the
    /// represented map.
    pub fn embedding(&self) -> &SimplicialMap {
        &self.embedding
    }

    /// The map actually embedded: the input map, or its representative
    /// between the once-subdivided source and target when the input graph
    /// was not simplicial.
    pub fn map_used(&self) -> &SimplicialMap {
        &self.map_used
    }

    pub fn subdivided(&self) -> bool {
        self.subdivided
    }

    /// Transports a function on the original source onto the source of the
    /// embedded map: the identity unless the graph needed a subdivision, in
    /// which case each refined cell takes the value of its carrier.
    pub fn carry_function(&self, phi: &Function) -> Result<Function> {
        self.carry_onto(phi, self.map_used.source())
    }

    /// Transports a function on the original target onto the target of the
    /// embedded map, in the same way.
    pub fn carry_target_function(&self, phi: &Function) -> Result<Function> {
        self.carry_onto(phi, self.map_used.target())
    }

    fn carry_onto(&self, phi: &Function, side: &CellSet) -> Result<Function> {
        if !self.subdivided {
            if phi.space() != side {
                return Err(Error::SpaceMismatch(
                    "function does not live on the embedded map's side".into(),
                ));
            }
            return Ok(phi.clone());
        }
        let sd = Subdivision::new(phi.space().complex().clone());
        let carried = sd.carry(phi.space())?;
        if &carried != side {
            return Err(Error::SpaceMismatch(
                "function does not live on the embedded map's side".into(),
            ));
        }
        let values = carried
            .members()
            .iter()
            .map(|&id| phi.value(sd.carrier_of(id)))
            .collect();
        Function::new(carried, values)
    }

    /// Whether the image of the embedding is closed inside the product
    /// cells (it always is; exposed for checking).
    pub fn image_is_relatively_closed(&self) -> bool {
        let image: Vec<_> = self
            .embedding
            .source()
            .members()
            .iter()
            .map(|&id| self.embedding.image_cell(id))
            .collect();
        let image_set =
            CellSet::new(self.product.space().complex().clone(), image).expect("graph cells");
        image_set.is_closed_in(self.product.space())
    }
}

fn is_monotone_on_edges(f: &SimplicialMap) -> bool {
    let k = f.source().complex();
    (0..k.len())
        .filter(|&id| k.simplex(id).dim() == 1)
        .all(|id| {
            let vs = k.simplex(id).vertices();
            f.vertex_image(vs[0]) <= f.vertex_image(vs[1])
        })
}

fn embed_monotone(f: &SimplicialMap) -> Result<GraphEmbedding> {
    let prod = product(f.source(), f.target())?;
    let vm: BTreeMap<VertexId, VertexId> = f
        .source()
        .complex()
        .vertex_ids()
        .iter()
        .map(|&v| (v, prod.pair_id(v, f.vertex_image(v))))
        .collect();
    let gamma = SimplicialMap::new(f.source().clone(), prod.space().clone(), vm)?;
    Ok(GraphEmbedding {
        product: prod,
        embedding: gamma,
        map_used: f.clone(),
        subdivided: false,
    })
}

/// Embeds a map into the product of its source and target via its graph.
///
/// Falls back to the barycentric subdivision of both sides: the induced
/// map sends the barycenter of σ to the barycenter of f(σ). Since f(σ) is
/// a face of f(τ) whenever σ is a face of τ and simplex ids sort by
/// dimension first, that map is weakly monotone on every subdivided edge,
/// so its graph is a subcomplex of the staircase product.
pub fn graph_embed(f: &SimplicialMap) -> Result<GraphEmbedding> {
    if is_monotone_on_edges(f) {
        return embed_monotone(f);
    }
    let sd_src = Subdivision::new(f.source().complex().clone());
    let sd_tgt = Subdivision::new(f.target().complex().clone());
    let src = sd_src.carry(f.source())?;
    let tgt = sd_tgt.carry(f.target())?;
    let vm: BTreeMap<VertexId, VertexId> = (0..sd_src.original().len())
        .map(|id| (sd_src.barycenter(id), sd_tgt.barycenter(f.image_cell(id))))
        .collect();
    let induced = SimplicialMap::new(src, tgt, vm).map_err(|e| {
        Error::UnsupportedMap(format!("graph not realizable after one subdivision: {e}"))
    })?;
    let mut emb = embed_monotone(&induced)?;
    emb.subdivided = true;
    Ok(emb)
}
