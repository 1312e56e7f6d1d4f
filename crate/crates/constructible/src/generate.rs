//! Seeded random generators for complexes, cell sets, functions, covers,
//! maps and automorphisms.
//!
//! Everything here is deterministic given the RNG state, so property tests
//! and scenario runs reproduce exactly from a seed. Generators reject and
//! retry where validity is not guaranteed by construction, falling back to
//! a trivial-but-valid object rather than failing.

use crate::cellset::CellSet;
use crate::complex::{Complex, SimplexId};
use crate::function::Function;
use crate::map::SimplicialMap;
use crate::simplex::{Simplex, VertexId};
use crate::traces::VertexPerm;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

/// The engine's reproducible RNG.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random finite complex with at most `max_vertices` vertices and facets
/// of dimension at most `max_dim`.
pub fn random_complex(
    rng: &mut impl Rng,
    max_vertices: usize,
    max_dim: usize,
) -> Arc<Complex> {
    let n_vertices = rng.gen_range(1..=max_vertices.max(1));
    let vertices: Vec<VertexId> = (0..n_vertices as VertexId).collect();
    let n_facets = rng.gen_range(1..=2 * n_vertices);
    let tag: u32 = rng.gen();
    let mut facets: Vec<Vec<VertexId>> = Vec::with_capacity(n_facets + 1);
    for _ in 0..n_facets {
        let size = rng.gen_range(1..=(max_dim + 1).min(n_vertices));
        let mut verts = vertices.clone();
        verts.shuffle(rng);
        verts.truncate(size);
        verts.sort_unstable();
        facets.push(verts);
    }
    // Guarantee every vertex appears so vertex-indexed generators stay total.
    for &v in &vertices {
        facets.push(vec![v]);
    }
    Arc::new(
        Complex::from_facets(format!("random_{tag:08x}"), &facets)
            .expect("generated facets are strictly increasing"),
    )
}

/// A random locally closed subset: the intersection of the star of one
/// random cell collection with the closure of another. May be empty.
pub fn random_cell_set(rng: &mut impl Rng, complex: &Arc<Complex>) -> CellSet {
    let up_seed: Vec<SimplexId> = (0..complex.len()).filter(|_| rng.gen_bool(0.5)).collect();
    let down_seed: Vec<SimplexId> = (0..complex.len()).filter(|_| rng.gen_bool(0.5)).collect();
    let mut up: std::collections::BTreeSet<SimplexId> = up_seed.iter().copied().collect();
    for &id in &up_seed {
        up.extend(complex.cofaces_of(id));
    }
    let mut down: std::collections::BTreeSet<SimplexId> = down_seed.iter().copied().collect();
    for &id in &down_seed {
        down.extend(complex.faces_of(id));
    }
    let members: Vec<SimplexId> = up.intersection(&down).copied().collect();
    // An upward-closed set meets a downward-closed set in an order-convex set.
    CellSet::new_unchecked(complex.clone(), members)
}

/// A random nonempty locally closed subset (retries, falls back to the
/// whole complex).
pub fn random_nonempty_cell_set(rng: &mut impl Rng, complex: &Arc<Complex>) -> CellSet {
    for _ in 0..16 {
        let s = random_cell_set(rng, complex);
        if !s.is_empty() {
            return s;
        }
    }
    CellSet::all(complex.clone())
}

/// A random integer-valued function on `space` with values in
/// [-bound, bound].
pub fn random_function(rng: &mut impl Rng, space: &CellSet, bound: i64) -> Function {
    let values = (0..space.len())
        .map(|_| rng.gen_range(-bound..=bound))
        .collect();
    Function::new(space.clone(), values).expect("value per member cell")
}

/// A random partition of `space` into locally closed strata: level sets of
/// a monotone labeling (cells labeled by the maximum of random vertex
/// weights), intersected with the space. Empty levels are dropped.
pub fn random_stratification(
    rng: &mut impl Rng,
    space: &CellSet,
    levels: u8,
) -> Vec<CellSet> {
    let complex = space.complex();
    let weights: BTreeMap<VertexId, u8> = complex
        .vertex_ids()
        .iter()
        .map(|&v| (v, rng.gen_range(0..levels.max(1))))
        .collect();
    let label = |id: SimplexId| -> u8 {
        complex
            .simplex(id)
            .vertices()
            .iter()
            .map(|v| weights[v])
            .max()
            .expect("cells are nonempty")
    };
    (0..levels.max(1))
        .filter_map(|lvl| {
            let members: Vec<SimplexId> = space
                .members()
                .iter()
                .copied()
                .filter(|&id| label(id) == lvl)
                .collect();
            if members.is_empty() {
                None
            } else {
                Some(CellSet::new_unchecked(complex.clone(), members))
            }
        })
        .collect()
}

/// An open cover of `z` inside `x` by vertex stars, chosen greedily so the
/// cover stays small. Every returned piece is open in `x`.
pub fn random_open_cover(rng: &mut impl Rng, x: &CellSet, z: &CellSet) -> Vec<CellSet> {
    let complex = x.complex();
    let mut uncovered: Vec<SimplexId> = z.members().to_vec();
    let mut pieces = Vec::new();
    while !uncovered.is_empty() {
        // Candidate vertices, scored by how many uncovered cells they touch.
        let mut score: BTreeMap<VertexId, usize> = BTreeMap::new();
        for &id in &uncovered {
            for &v in complex.simplex(id).vertices() {
                *score.entry(v).or_default() += 1;
            }
        }
        let best = score.values().copied().max().expect("cells have vertices");
        let mut champions: Vec<VertexId> = score
            .into_iter()
            .filter_map(|(v, s)| (s == best).then_some(v))
            .collect();
        champions.shuffle(rng);
        let v = champions[0];
        let vertex_cell = complex
            .id_of(&Simplex::new(vec![v]).expect("vertex"))
            .expect("vertex cell exists");
        let piece = CellSet::new_unchecked(complex.clone(), vec![vertex_cell])
            .star()
            .intersection(x)
            .expect("same ambient complex");
        uncovered.retain(|&id| !piece.contains(id));
        pieces.push(piece);
    }
    pieces
}

/// Tries to find a random simplicial map from `source` to `target` by
/// rejection sampling on vertex assignments. Returns a constant map as a
/// fallback when sampling fails (a constant map always exists when the
/// target ambient complex has a vertex and source cells map into target
/// cells; otherwise `None`).
pub fn random_map(
    rng: &mut impl Rng,
    source: &CellSet,
    target: &CellSet,
    tries: usize,
) -> Option<SimplicialMap> {
    let src_vertices = source.complex().vertex_ids();
    let tgt_vertices = target.complex().vertex_ids();
    if tgt_vertices.is_empty() {
        return None;
    }
    for _ in 0..tries {
        let vm: BTreeMap<VertexId, VertexId> = src_vertices
            .iter()
            .map(|&v| (v, tgt_vertices[rng.gen_range(0..tgt_vertices.len())]))
            .collect();
        if let Ok(map) = SimplicialMap::new(source.clone(), target.clone(), vm) {
            return Some(map);
        }
    }
    for &w in tgt_vertices.iter() {
        let vm: BTreeMap<VertexId, VertexId> =
            src_vertices.iter().map(|&v| (v, w)).collect();
        if let Ok(map) = SimplicialMap::new(source.clone(), target.clone(), vm) {
            return Some(map);
        }
    }
    None
}

/// Tries to find a random automorphism of the ambient complex by shuffling
/// the vertex set; falls back to the identity.
pub fn random_automorphism(rng: &mut impl Rng, complex: &Arc<Complex>) -> VertexPerm {
    let vertices = complex.vertex_ids();
    let preserves = |perm: &BTreeMap<VertexId, VertexId>| -> bool {
        (0..complex.len()).all(|id| {
            let mut image: Vec<VertexId> = complex
                .simplex(id)
                .vertices()
                .iter()
                .map(|v| perm[v])
                .collect();
            image.sort_unstable();
            Simplex::new(image).is_ok_and(|s| complex.id_of(&s).is_some())
        })
    };
    for _ in 0..32 {
        let mut shuffled = vertices.to_vec();
        shuffled.shuffle(rng);
        let vm: BTreeMap<VertexId, VertexId> = vertices
            .iter()
            .copied()
            .zip(shuffled.iter().copied())
            .collect();
        if preserves(&vm) {
            return VertexPerm::new(vm).expect("bijection by construction");
        }
    }
    VertexPerm::identity(vertices)
}
