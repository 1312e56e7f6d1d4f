//! Locally closed cell sets: the spaces of the calculus.
//!
//! A space is a pair (ambient complex, set of open cells). The set must be
//! *order-convex* in the face poset: whenever σ ⊆ τ ⊆ ρ with σ and ρ in the
//! set and τ in the ambient complex, τ is in the set too. Order-convexity
//! is exactly local closedness of the realization (the union of the open
//! simplices) inside the ambient polyhedron, and it is the hypothesis that
//! makes duality an involution.
//!
//! The compactly supported Euler characteristic of a cell set is the
//! alternating cell count Σ (−1)^{dim σ}; it is additive over partitions
//! into locally closed pieces, which is the engine's basic conservation
//! law.

use crate::complex::{Complex, SimplexId};
use crate::error::{Error, Result};
use crate::simplex::Simplex;
use std::sync::Arc;

/// Sign (−1)^d as an integer.
#[inline]
pub(crate) fn parity(d: usize) -> i64 {
    if d % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A locally closed set of cells in a fixed ambient complex.
///
/// Members are stored as ascending simplex ids. Two cell sets compare equal
/// when their ambient complexes have the same simplices (names ignored) and
/// their member lists agree.
#[derive(Debug, Clone)]
pub struct CellSet {
    complex: Arc<Complex>,
    members: Vec<SimplexId>,
}

impl PartialEq for CellSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && self.same_ambient(other)
    }
}
impl Eq for CellSet {}

impl CellSet {
    /// Builds a cell set, validating local closedness.
    pub fn new(complex: Arc<Complex>, mut members: Vec<SimplexId>) -> Result<CellSet> {
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&id| id >= complex.len()) {
            return Err(Error::MalformedInput(format!(
                "cell id {bad} out of range for complex {}",
                complex.name()
            )));
        }
        if let Some(witness) = order_convexity_witness(&complex, &members) {
            let (sigma, tau, rho) = witness;
            return Err(Error::NotLocallyClosed(format!(
                "{} ⊆ {} ⊆ {} with the ends in the set but not the middle",
                complex.simplex(sigma),
                complex.simplex(tau),
                complex.simplex(rho)
            )));
        }
        Ok(CellSet { complex, members })
    }

    /// Builds a cell set from explicit simplices (each must be ambient).
    pub fn from_simplices(complex: Arc<Complex>, cells: &[Simplex]) -> Result<CellSet> {
        let mut members = Vec::with_capacity(cells.len());
        for c in cells {
            match complex.id_of(c) {
                Some(id) => members.push(id),
                None => {
                    return Err(Error::MalformedInput(format!(
                        "cell {c} is not a simplex of complex {}",
                        complex.name()
                    )))
                }
            }
        }
        CellSet::new(complex, members)
    }

    /// Internal constructor for sets known to be order-convex.
    pub(crate) fn new_unchecked(complex: Arc<Complex>, members: Vec<SimplexId>) -> CellSet {
        debug_assert!(order_convexity_witness(&complex, &members).is_none());
        CellSet { complex, members }
    }

    /// The whole ambient complex as a (closed) cell set.
    pub fn all(complex: Arc<Complex>) -> CellSet {
        let members = (0..complex.len()).collect();
        CellSet { complex, members }
    }

    /// The empty cell set.
    pub fn empty(complex: Arc<Complex>) -> CellSet {
        CellSet {
            complex,
            members: Vec::new(),
        }
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    pub fn members(&self) -> &[SimplexId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        self.members.binary_search(&id).is_ok()
    }

    /// Position of `id` in the member list (the dense index used by
    /// functions), if present.
    pub fn position(&self, id: SimplexId) -> Option<usize> {
        self.members.binary_search(&id).ok()
    }

    /// Ambient-complex content equality (names ignored).
    pub fn same_ambient(&self, other: &CellSet) -> bool {
        Arc::ptr_eq(&self.complex, &other.complex)
            || self.complex.same_simplices(&other.complex)
    }

    /// Membership mask over the ambient complex.
    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.complex.len()];
        for &id in &self.members {
            m[id] = true;
        }
        m
    }

    /// Compactly supported Euler characteristic: Σ_{σ} (−1)^{dim σ}.
    pub fn chi_c(&self) -> i64 {
        self.members
            .iter()
            .map(|&id| parity(self.complex.simplex(id).dim()))
            .sum()
    }

    /// Number of cells per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let dim = self
            .members
            .iter()
            .map(|&id| self.complex.simplex(id).dim())
            .max()
            .unwrap_or(0);
        let mut counts = vec![0usize; dim + 1];
        for &id in &self.members {
            counts[self.complex.simplex(id).dim()] += 1;
        }
        counts
    }

    /// Downward closure within the ambient complex. Always closed.
    pub fn closure(&self) -> CellSet {
        let mut mask = self.mask();
        for &id in &self.members {
            for &f in self.complex.faces_of(id) {
                mask[f] = true;
            }
        }
        CellSet::new_unchecked(self.complex.clone(), mask_to_members(&mask))
    }

    /// Upward closure (open star) within the ambient complex. Always open.
    pub fn star(&self) -> CellSet {
        let mut mask = self.mask();
        for &id in &self.members {
            for &c in self.complex.cofaces_of(id) {
                mask[c] = true;
            }
        }
        CellSet::new_unchecked(self.complex.clone(), mask_to_members(&mask))
    }

    /// Whether the set is closed in the ambient complex (contains all faces
    /// of its members). Closedness of the realization in the ambient
    /// polyhedron — the properness certificate for maps out of this space.
    pub fn is_closed_in_ambient(&self) -> bool {
        let mask = self.mask();
        self.members
            .iter()
            .all(|&id| self.complex.faces_of(id).iter().all(|&f| mask[f]))
    }

    /// Whether the set is open in the ambient complex.
    pub fn is_open_in_ambient(&self) -> bool {
        let mask = self.mask();
        self.members
            .iter()
            .all(|&id| self.complex.cofaces_of(id).iter().all(|&c| mask[c]))
    }

    /// Whether `self` ⊆ `other` (requires the same ambient complex).
    pub fn is_subset_of(&self, other: &CellSet) -> bool {
        if !self.same_ambient(other) {
            return false;
        }
        let mask = other.mask();
        self.members.iter().all(|&id| mask[id])
    }

    /// Whether `self` is open inside `other`: every coface (within `other`)
    /// of a member is a member.
    pub fn is_open_in(&self, other: &CellSet) -> bool {
        if !self.is_subset_of(other) {
            return false;
        }
        let own = self.mask();
        let outer = other.mask();
        self.members.iter().all(|&id| {
            self.complex
                .cofaces_of(id)
                .iter()
                .all(|&c| !outer[c] || own[c])
        })
    }

    /// Whether `self` is closed inside `other`.
    pub fn is_closed_in(&self, other: &CellSet) -> bool {
        if !self.is_subset_of(other) {
            return false;
        }
        let own = self.mask();
        let outer = other.mask();
        self.members.iter().all(|&id| {
            self.complex
                .faces_of(id)
                .iter()
                .all(|&f| !outer[f] || own[f])
        })
    }

    /// Set union; fails if the result is not locally closed.
    pub fn union(&self, other: &CellSet) -> Result<CellSet> {
        self.require_same_ambient(other)?;
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        CellSet::new(self.complex.clone(), members)
    }

    /// Set intersection; intersections of locally closed sets are locally
    /// closed, so this cannot fail beyond the ambient check.
    pub fn intersection(&self, other: &CellSet) -> Result<CellSet> {
        self.require_same_ambient(other)?;
        let mask = other.mask();
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&id| mask[id])
            .collect();
        Ok(CellSet::new_unchecked(self.complex.clone(), members))
    }

    /// Set difference; fails if the result is not locally closed.
    pub fn difference(&self, other: &CellSet) -> Result<CellSet> {
        self.require_same_ambient(other)?;
        let mask = other.mask();
        let members: Vec<SimplexId> = self
            .members
            .iter()
            .copied()
            .filter(|&id| !mask[id])
            .collect();
        CellSet::new(self.complex.clone(), members)
    }

    pub(crate) fn require_same_ambient(&self, other: &CellSet) -> Result<()> {
        if self.same_ambient(other) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(format!(
                "ambient complexes {} and {} differ",
                self.complex.name(),
                other.complex.name()
            )))
        }
    }

    /// Iterator over member simplices in canonical order.
    pub fn iter_simplices(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.members.iter().map(|&id| self.complex.simplex(id))
    }
}

fn mask_to_members(mask: &[bool]) -> Vec<SimplexId> {
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(id, _)| id)
        .collect()
}

/// Checks order-convexity of a sorted member list, reporting a witness
/// (σ, τ, ρ) of failure if any.
///
/// A middle simplex τ outside the set violates convexity exactly when it
/// has both a face and a coface inside the set.
pub fn order_convexity_witness(
    complex: &Complex,
    members: &[SimplexId],
) -> Option<(SimplexId, SimplexId, SimplexId)> {
    let mut mask = vec![false; complex.len()];
    for &id in members {
        mask[id] = true;
    }
    for tau in 0..complex.len() {
        if mask[tau] {
            continue;
        }
        let face_in = complex.faces_of(tau).iter().copied().find(|&f| mask[f]);
        if let Some(sigma) = face_in {
            let coface_in = complex.cofaces_of(tau).iter().copied().find(|&c| mask[c]);
            if let Some(rho) = coface_in {
                return Some((sigma, tau, rho));
            }
        }
    }
    None
}

/// Whether a member list is order-convex (locally closed) in `complex`.
pub fn is_locally_closed(complex: &Complex, members: &[SimplexId]) -> bool {
    order_convexity_witness(complex, members).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Arc<Complex> {
        Arc::new(Complex::from_facets("path", &[vec![0, 1], vec![1, 2]]).unwrap())
    }

    fn full_triangle() -> Arc<Complex> {
        Arc::new(Complex::from_facets("triangle", &[vec![0, 1, 2]]).unwrap())
    }

    fn id_of(k: &Complex, verts: &[u32]) -> SimplexId {
        k.id_of(&Simplex::new(verts.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn vertex_plus_far_edge_is_locally_closed() {
        let k = path3();
        let cells = vec![id_of(&k, &[0]), id_of(&k, &[1, 2])];
        assert!(CellSet::new(k, cells).is_ok());
    }

    #[test]
    fn skipping_a_middle_edge_is_not_locally_closed() {
        let k = full_triangle();
        let cells = vec![id_of(&k, &[0]), id_of(&k, &[0, 1, 2])];
        let err = CellSet::new(k, cells).unwrap_err();
        assert!(matches!(err, Error::NotLocallyClosed(_)));
    }

    #[test]
    fn chi_c_of_interval_variants() {
        let k = Arc::new(Complex::from_facets("interval", &[vec![0, 1]]).unwrap());
        let closed = CellSet::all(k.clone());
        assert_eq!(closed.chi_c(), 1, "closed interval");
        let open = CellSet::new(k.clone(), vec![id_of(&k, &[0, 1])]).unwrap();
        assert_eq!(open.chi_c(), -1, "open interval");
        let half = CellSet::new(k.clone(), vec![id_of(&k, &[1]), id_of(&k, &[0, 1])]).unwrap();
        assert_eq!(half.chi_c(), 0, "half-open interval");
    }

    #[test]
    fn star_of_a_vertex_in_the_tetrahedron_boundary() {
        let k = Arc::new(
            Complex::from_facets(
                "tetra",
                &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
            )
            .unwrap(),
        );
        let v0 = CellSet::new(k.clone(), vec![id_of(&k, &[0])]).unwrap();
        let star = v0.star();
        assert_eq!(star.len(), 7, "vertex, three edges, three triangles");
        assert!(star.is_open_in_ambient());
    }

    #[test]
    fn closure_and_star_are_adjoint() {
        let k = full_triangle();
        for &a in CellSet::all(k.clone()).members() {
            for &b in CellSet::all(k.clone()).members() {
                let in_star = CellSet::new_unchecked(k.clone(), vec![b]).star().contains(a);
                let in_closure = CellSet::new_unchecked(k.clone(), vec![a])
                    .closure()
                    .contains(b);
                assert_eq!(
                    in_star, in_closure,
                    "σ ∈ star(τ) iff τ ∈ closure(σ) for all pairs"
                );
            }
        }
    }

    #[test]
    fn open_and_closed_relative_tests() {
        let k = Arc::new(Complex::from_facets("interval", &[vec![0, 1]]).unwrap());
        let x = CellSet::all(k.clone());
        let u = CellSet::new(k.clone(), vec![id_of(&k, &[0, 1])]).unwrap();
        let z = CellSet::new(k.clone(), vec![id_of(&k, &[0]), id_of(&k, &[1])]).unwrap();
        assert!(u.is_open_in(&x));
        assert!(!u.is_closed_in(&x));
        assert!(z.is_closed_in(&x));
        assert!(!z.is_open_in(&x));
    }

    #[test]
    fn additivity_of_chi_c_over_a_partition() {
        let k = Arc::new(
            Complex::from_facets(
                "tetra",
                &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
            )
            .unwrap(),
        );
        let x = CellSet::all(k.clone());
        let z = CellSet::new_unchecked(k.clone(), vec![id_of(&k, &[0])]).closure();
        let u = x.difference(&z).unwrap();
        assert_eq!(x.chi_c(), u.chi_c() + z.chi_c());
    }
}
