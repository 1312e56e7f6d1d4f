//! Finite group actions on spaces and equivariant Euler traces.
//!
//! A group acts through vertex permutations that are automorphisms of the
//! ambient complex and preserve the cell set. Two integers are attached to
//! every element g:
//!
//! * `chi_gc` — the compactly supported trace: the Euler characteristic of
//!   the fixed-cell set, cross-checked against the alternating sum of
//!   permutation signs over setwise-fixed cells (a quantity invariant under
//!   subdivision);
//! * `chi_g` — the plain trace: the ordinary (dual) Euler integral of the
//!   constant 1 on the fixed-point set.
//!
//! The fixed-cell set only represents the geometric fixed locus when the
//! action is *regular*: every element that maps a simplex to itself fixes
//! it vertexwise. Barycentric subdivision repairs regularity; two rounds
//! always suffice.

use crate::cellset::{parity, CellSet};
use crate::complex::SimplexId;
use crate::error::{Error, Result};
use crate::function::Function;
use crate::simplex::VertexId;
use crate::subdivision::Subdivision;
use std::collections::{BTreeMap, BTreeSet};

/// Largest supported group size for the closure of the generators.
pub const MAX_GROUP: usize = 1000;

/// A permutation of a finite vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPerm {
    perm: BTreeMap<VertexId, VertexId>,
}

impl VertexPerm {
    /// Builds a permutation from (vertex, image) pairs; the images must be
    /// a permutation of the domain.
    pub fn new(pairs: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<VertexPerm> {
        let perm: BTreeMap<VertexId, VertexId> = pairs.into_iter().collect();
        let domain: BTreeSet<VertexId> = perm.keys().copied().collect();
        let image: BTreeSet<VertexId> = perm.values().copied().collect();
        if domain != image {
            return Err(Error::InvalidMap(
                "vertex images are not a permutation of the domain".into(),
            ));
        }
        Ok(VertexPerm { perm })
    }

    /// The identity on a vertex set.
    pub fn identity(vertices: &[VertexId]) -> VertexPerm {
        VertexPerm {
            perm: vertices.iter().map(|&v| (v, v)).collect(),
        }
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.perm[&v]
    }

    pub fn domain(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.perm.keys().copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.perm.iter().map(|(&a, &b)| (a, b))
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &VertexPerm) -> VertexPerm {
        VertexPerm {
            perm: self
                .perm
                .iter()
                .map(|(&v, &w)| (v, other.apply(w)))
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().all(|(&v, &w)| v == w)
    }
}

/// A finite group acting on a space, stored as the full element list.
#[derive(Debug, Clone)]
pub struct GroupAction {
    space: CellSet,
    elements: Vec<VertexPerm>,
    /// Per element, the induced permutation of ambient simplex ids.
    cell_perms: Vec<Vec<SimplexId>>,
}

impl GroupAction {
    /// Closes the generators into a full group and validates that every
    /// element is an automorphism of the ambient complex preserving the
    /// cell set.
    pub fn new(space: CellSet, generators: Vec<VertexPerm>) -> Result<GroupAction> {
        let complex = space.complex().clone();
        let ambient: BTreeSet<VertexId> = complex.vertex_ids().iter().copied().collect();
        for g in &generators {
            let domain: BTreeSet<VertexId> = g.domain().collect();
            if domain != ambient {
                return Err(Error::InvalidMap(
                    "a generator does not permute exactly the ambient vertex set".into(),
                ));
            }
        }

        // Breadth-first closure; elements are discovered in a deterministic
        // order (identity first, then generator applications in order), so
        // two isomorphic actions enumerate corresponding elements at the
        // same indices.
        let identity = VertexPerm::identity(complex.vertex_ids());
        let mut elements = vec![identity.clone()];
        let mut seen: BTreeSet<Vec<(VertexId, VertexId)>> =
            BTreeSet::from([identity.pairs().collect()]);
        let mut frontier = vec![identity];
        while let Some(g) = frontier.pop() {
            for gen in &generators {
                let next = g.then(gen);
                let key: Vec<_> = next.pairs().collect();
                if seen.insert(key) {
                    if elements.len() == MAX_GROUP {
                        return Err(Error::GroupTooLarge(MAX_GROUP));
                    }
                    elements.push(next.clone());
                    frontier.push(next);
                }
            }
        }
        // The discovery order depends only on the generator list and the
        // equality structure, and distinct elements stay distinct under the
        // induced action on a subdivision, so a subdivided action
        // enumerates corresponding elements at the same indices. The
        // cross-check in `RegularAction::chi_gc` relies on this.

        let mut cell_perms = Vec::with_capacity(elements.len());
        for g in &elements {
            let mut perm = Vec::with_capacity(complex.len());
            for id in 0..complex.len() {
                let image_vertices: Vec<VertexId> = complex
                    .simplex(id)
                    .vertices()
                    .iter()
                    .map(|&v| g.apply(v))
                    .collect();
                let image = crate::simplex::Simplex::new(image_vertices)?;
                match complex.id_of(&image) {
                    Some(img) => perm.push(img),
                    None => {
                        return Err(Error::InvalidMap(format!(
                            "group element sends {} outside the complex",
                            complex.simplex(id)
                        )))
                    }
                }
            }
            perm.iter().enumerate().try_for_each(|(id, &img)| {
                if space.contains(id) != space.contains(img) {
                    Err(Error::InvalidMap(format!(
                        "group element does not preserve the cell set at {}",
                        complex.simplex(id)
                    )))
                } else {
                    Ok(())
                }
            })?;
            cell_perms.push(perm);
        }
        Ok(GroupAction {
            space,
            elements,
            cell_perms,
        })
    }

    pub fn space(&self) -> &CellSet {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, idx: usize) -> &VertexPerm {
        &self.elements[idx]
    }

    pub fn elements(&self) -> &[VertexPerm] {
        &self.elements
    }

    /// Image of an ambient cell under an element.
    pub fn cell_image(&self, idx: usize, cell: SimplexId) -> SimplexId {
        self.cell_perms[idx][cell]
    }

    /// Whether every element fixing a simplex setwise fixes it vertexwise
    /// (checked over the whole ambient complex).
    pub fn is_regular(&self) -> bool {
        let complex = self.space.complex();
        self.elements.iter().enumerate().all(|(idx, g)| {
            (0..complex.len()).all(|id| {
                self.cell_perms[idx][id] != id
                    || complex
                        .simplex(id)
                        .vertices()
                        .iter()
                        .all(|&v| g.apply(v) == v)
            })
        })
    }

    /// Alternating sum of permutation signs over setwise-fixed member
    /// cells: Σ_{gσ=σ} sign(g|σ) (−1)^{dim σ}. Invariant under equivariant
    /// subdivision, regular or not.
    pub fn chain_trace_c(&self, idx: usize) -> i64 {
        let complex = self.space.complex();
        let g = &self.elements[idx];
        self.space
            .members()
            .iter()
            .filter(|&&id| self.cell_perms[idx][id] == id)
            .map(|&id| {
                let verts = complex.simplex(id).vertices();
                parity(complex.simplex(id).dim()) * perm_sign(verts, g)
            })
            .sum()
    }

    /// The set of member cells fixed setwise by an element.
    pub fn fixed_cells(&self, idx: usize) -> Result<CellSet> {
        let members: Vec<SimplexId> = self
            .space
            .members()
            .iter()
            .copied()
            .filter(|&id| self.cell_perms[idx][id] == id)
            .collect();
        CellSet::new(self.space.complex().clone(), members)
    }

    /// The induced action on a barycentric subdivision of the ambient
    /// complex (generators: b_σ ↦ b_{gσ}), acting on the carried cell set.
    fn subdivide(&self) -> Result<GroupAction> {
        let sd = Subdivision::new(self.space.complex().clone());
        let carried = sd.carry(&self.space)?;
        let induced: Vec<VertexPerm> = self
            .elements
            .iter()
            .enumerate()
            .map(|(idx, _)| {
                VertexPerm::new(
                    (0..self.space.complex().len())
                        .map(|id| (id as VertexId, self.cell_perms[idx][id] as VertexId)),
                )
            })
            .collect::<Result<_>>()?;
        GroupAction::new(carried, induced)
    }
}

/// Sign of the permutation an element induces on the (sorted) vertex list
/// of a setwise-fixed simplex, by inversion count.
fn perm_sign(vertices: &[VertexId], g: &VertexPerm) -> i64 {
    let positions: Vec<usize> = vertices
        .iter()
        .map(|&v| {
            vertices
                .iter()
                .position(|&w| w == g.apply(v))
                .expect("setwise-fixed simplex")
        })
        .collect();
    let mut inversions = 0;
    for i in 0..positions.len() {
        for j in i + 1..positions.len() {
            if positions[i] > positions[j] {
                inversions += 1;
            }
        }
    }
    parity(inversions)
}

/// An action made regular by subdividing, remembering the original chain
/// traces for cross-checking.
#[derive(Debug)]
pub struct RegularAction {
    action: GroupAction,
    rounds: usize,
    original_traces: Vec<i64>,
}

/// Largest number of subdivision rounds attempted.
pub const MAX_REGULARIZE_ROUNDS: usize = 2;

/// Subdivides until the action is regular (at most two rounds).
pub fn regularize(action: &GroupAction) -> Result<RegularAction> {
    let original_traces: Vec<i64> = (0..action.order())
        .map(|idx| action.chain_trace_c(idx))
        .collect();
    let mut current = action.clone();
    let mut rounds = 0;
    while !current.is_regular() {
        if rounds == MAX_REGULARIZE_ROUNDS {
            return Err(Error::RegularityNotAchieved(MAX_REGULARIZE_ROUNDS));
        }
        current = current.subdivide()?;
        rounds += 1;
    }
    Ok(RegularAction {
        action: current,
        rounds,
        original_traces,
    })
}

impl RegularAction {
    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn order(&self) -> usize {
        self.action.order()
    }

    pub fn fixed_cells(&self, idx: usize) -> Result<CellSet> {
        self.action.fixed_cells(idx)
    }

    /// Compactly supported trace: χ_c of the fixed cells, cross-checked
    /// against the subdivision-invariant chain trace of the original
    /// action.
    pub fn chi_gc(&self, idx: usize) -> Result<i64> {
        let fixed = self.fixed_cells(idx)?;
        let value = fixed.chi_c();
        let reference = self.original_traces[idx];
        if value != reference {
            return Err(Error::Inconsistency(format!(
                "fixed-cell characteristic {value} disagrees with the chain trace {reference}"
            )));
        }
        Ok(value)
    }

    /// Plain trace: the dual Euler integral of the constant 1 on the fixed
    /// cells.
    pub fn chi_g(&self, idx: usize) -> Result<i64> {
        let fixed = self.fixed_cells(idx)?;
        Ok(crate::calculus::euler_integral(&Function::one(fixed)))
    }
}

/// Both traces of one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracePair {
    pub element: usize,
    pub chi_g: i64,
    pub chi_gc: i64,
}

/// Regularizes the action and computes both traces for every element.
pub fn compare_traces(action: &GroupAction) -> Result<(RegularAction, Vec<TracePair>)> {
    let reg = regularize(action)?;
    let pairs = (0..reg.order())
        .map(|idx| {
            Ok(TracePair {
                element: idx,
                chi_g: reg.chi_g(idx)?,
                chi_gc: reg.chi_gc(idx)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((reg, pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Complex;
    use crate::simplex::Simplex;
    use std::sync::Arc;

    fn id_of(k: &Complex, verts: &[VertexId]) -> SimplexId {
        k.id_of(&Simplex::new(verts.to_vec()).unwrap()).unwrap()
    }

    fn cone(n: VertexId) -> Arc<Complex> {
        let facets: Vec<Vec<VertexId>> = (1..=n)
            .map(|i| vec![0, i, if i == n { 1 } else { i + 1 }])
            .collect();
        Arc::new(Complex::from_facets(format!("cone{n}"), &facets).unwrap())
    }

    fn rotation(n: VertexId) -> VertexPerm {
        VertexPerm::new(
            std::iter::once((0, 0))
                .chain((1..=n).map(|i| (i, if i == n { 1 } else { i + 1 }))),
        )
        .unwrap()
    }

    #[test]
    fn interval_swap_needs_one_subdivision_and_traces_agree() {
        let k = Arc::new(Complex::from_facets("interval", &[vec![0, 1]]).unwrap());
        let x = CellSet::all(k);
        let swap = VertexPerm::new([(0, 1), (1, 0)]).unwrap();
        let action = GroupAction::new(x, vec![swap]).unwrap();
        assert_eq!(action.order(), 2);
        assert!(!action.is_regular(), "the edge is flipped setwise");
        let swap_idx = (0..2).find(|&i| !action.element(i).is_identity()).unwrap();
        assert_eq!(action.chain_trace_c(swap_idx), 1, "−1 · sign(transposition)");

        let (reg, pairs) = compare_traces(&action).unwrap();
        assert_eq!(reg.rounds(), 1);
        let swap_pair = pairs.iter().find(|p| p.element == swap_idx).unwrap();
        assert_eq!((swap_pair.chi_g, swap_pair.chi_gc), (1, 1), "midpoint only");
        let id_pair = pairs.iter().find(|p| p.element != swap_idx).unwrap();
        assert_eq!((id_pair.chi_g, id_pair.chi_gc), (1, 1), "whole interval");
    }

    #[test]
    fn cone_star_rotation_is_regular_with_trace_one() {
        let k = cone(6);
        let disk = CellSet::new(k.clone(), vec![id_of(&k, &[0])])
            .unwrap()
            .star();
        let action = GroupAction::new(disk, vec![rotation(6)]).unwrap();
        assert_eq!(action.order(), 6);
        assert!(action.is_regular());
        let (reg, pairs) = compare_traces(&action).unwrap();
        assert_eq!(reg.rounds(), 0);
        for p in pairs {
            assert_eq!(p.chi_g, p.chi_gc, "element {}", p.element);
            assert_eq!(p.chi_g, 1, "every rotation fixes exactly the center");
        }
    }

    #[test]
    fn punctured_cone_star_rotation_has_trace_zero() {
        let k = cone(6);
        let apex = CellSet::new(k.clone(), vec![id_of(&k, &[0])]).unwrap();
        let punctured = apex.star().difference(&apex).unwrap();
        let action = GroupAction::new(punctured, vec![rotation(6)]).unwrap();
        let (_, pairs) = compare_traces(&action).unwrap();
        for p in &pairs {
            assert_eq!(p.chi_g, p.chi_gc, "element {}", p.element);
        }
        assert!(
            pairs.iter().any(|p| (p.chi_g, p.chi_gc) == (0, 0)),
            "non-trivial rotations have empty fixed locus"
        );
    }

    #[test]
    fn pole_swap_on_the_octahedron_fixes_two_points() {
        let k = Arc::new(
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
            .unwrap(),
        );
        let x = CellSet::all(k);
        let swap = VertexPerm::new([(0, 5), (5, 0), (1, 1), (3, 3), (2, 4), (4, 2)]).unwrap();
        let action = GroupAction::new(x, vec![swap]).unwrap();
        assert!(action.is_regular(), "no simplex is flipped setwise");
        let (reg, pairs) = compare_traces(&action).unwrap();
        assert_eq!(reg.rounds(), 0);
        let swap_idx = (0..2)
            .find(|&i| !action.element(i).is_identity())
            .unwrap();
        let p = pairs.iter().find(|p| p.element == swap_idx).unwrap();
        assert_eq!((p.chi_g, p.chi_gc), (2, 2), "two fixed equator vertices");
        let id = pairs.iter().find(|p| p.element != swap_idx).unwrap();
        assert_eq!((id.chi_g, id.chi_gc), (2, 2), "identity sees the sphere");
    }

    #[test]
    fn identity_on_an_open_interval_separates_the_two_traces() {
        let k = Arc::new(Complex::from_facets("interval", &[vec![0, 1]]).unwrap());
        let open = CellSet::new(k.clone(), vec![id_of(&k, &[0, 1])]).unwrap();
        let action = GroupAction::new(
            open,
            vec![VertexPerm::identity(&[0, 1])],
        )
        .unwrap();
        let (_, pairs) = compare_traces(&action).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].chi_g, 1, "the open interval is contractible");
        assert_eq!(pairs[0].chi_gc, -1, "but not compact");
    }

    #[test]
    fn non_automorphisms_and_non_preserving_perms_are_rejected() {
        let path = Arc::new(Complex::from_facets("path", &[vec![0, 1], vec![1, 2]]).unwrap());
        let x = CellSet::all(path.clone());
        let bad = VertexPerm::new([(0, 1), (1, 0), (2, 2)]).unwrap();
        assert!(matches!(
            GroupAction::new(x, vec![bad]).unwrap_err(),
            Error::InvalidMap(_)
        ));

        let k = cone(6);
        let spoke = CellSet::new(k.clone(), vec![id_of(&k, &[0, 1])]).unwrap();
        assert!(matches!(
            GroupAction::new(spoke, vec![rotation(6)]).unwrap_err(),
            Error::InvalidMap(_)
        ));

        assert!(VertexPerm::new([(0, 1), (1, 1)]).is_err(), "not a bijection");
    }

    #[test]
    fn circle_rotation_has_empty_fixed_locus() {
        let facets: Vec<Vec<VertexId>> = (0..6u32).map(|i| vec![i, (i + 1) % 6]).collect();
        let k = Arc::new(Complex::from_facets("circle6", &facets).unwrap());
        let x = CellSet::all(k);
        let rot = VertexPerm::new((0..6u32).map(|i| (i, (i + 1) % 6))).unwrap();
        let action = GroupAction::new(x, vec![rot]).unwrap();
        assert_eq!(action.order(), 6);
        let (_, pairs) = compare_traces(&action).unwrap();
        for p in pairs {
            // Non-trivial rotations have empty fixed locus; the identity
            // sees the whole circle, whose both characteristics also
            // vanish.
            assert_eq!((p.chi_g, p.chi_gc), (0, 0), "element {}", p.element);
        }
    }
}
