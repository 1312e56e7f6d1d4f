//! Finite abstract simplicial complexes.
//!
//! A [`Complex`] is a finite, face-closed set of [`Simplex`] values. It is
//! immutable after construction: every derived object (subdivision,
//! product, ...) is a new value. Simplices are indexed in the canonical
//! (dimension, lexicographic) order, and face/coface incidence is
//! precomputed so that the calculus operations are straight loops.

use crate::error::{Error, Result};
use crate::simplex::{Simplex, VertexId};
use std::collections::{BTreeSet, HashMap};

/// Index of a simplex inside its complex, in (dimension, lex) order.
pub type SimplexId = usize;

/// A finite abstract simplicial complex with precomputed incidence.
#[derive(Debug)]
pub struct Complex {
    name: String,
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, SimplexId>,
    /// Strict faces of each simplex, ascending ids.
    faces: Vec<Vec<SimplexId>>,
    /// Strict cofaces of each simplex, ascending ids.
    cofaces: Vec<Vec<SimplexId>>,
    /// All vertex ids that occur, ascending.
    vertices: Vec<VertexId>,
}

impl Complex {
    /// Builds the face closure of a list of facets.
    ///
    /// Each facet must be a non-empty list of distinct vertex ids; the
    /// facet list itself must be non-empty. The result contains every face
    /// of every facet exactly once.
    pub fn from_facets(name: impl Into<String>, facets: &[Vec<VertexId>]) -> Result<Complex> {
        if facets.is_empty() {
            return Err(Error::MalformedInput("facet list is empty".into()));
        }
        let mut set = BTreeSet::new();
        for facet in facets {
            let top = Simplex::new(facet.clone())?;
            for face in top.strict_faces() {
                set.insert(face);
            }
            set.insert(top);
        }
        Ok(Self::from_simplex_set(name.into(), set))
    }

    /// Builds a complex from a set already known to be face-closed
    /// (subdivisions and products construct their simplex sets directly).
    pub(crate) fn from_simplex_set(name: String, set: BTreeSet<Simplex>) -> Complex {
        let simplices: Vec<Simplex> = set.into_iter().collect();
        let index: HashMap<Simplex, SimplexId> = simplices
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let mut faces: Vec<Vec<SimplexId>> = vec![Vec::new(); simplices.len()];
        let mut cofaces: Vec<Vec<SimplexId>> = vec![Vec::new(); simplices.len()];
        for (id, s) in simplices.iter().enumerate() {
            for f in s.strict_faces() {
                let fid = *index
                    .get(&f)
                    .expect("complex is face-closed by construction");
                faces[id].push(fid);
                cofaces[fid].push(id);
            }
        }
        for list in faces.iter_mut().chain(cofaces.iter_mut()) {
            list.sort_unstable();
        }
        let mut vertices: Vec<VertexId> = simplices
            .iter()
            .filter(|s| s.dim() == 0)
            .map(|s| s.vertices()[0])
            .collect();
        vertices.sort_unstable();
        Complex {
            name,
            simplices,
            index,
            faces,
            cofaces,
            vertices,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of simplices of all dimensions.
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Top dimension.
    pub fn dim(&self) -> usize {
        self.simplices.iter().map(|s| s.dim()).max().unwrap_or(0)
    }

    pub fn simplex(&self, id: SimplexId) -> &Simplex {
        &self.simplices[id]
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    /// Id of a simplex, if present.
    pub fn id_of(&self, s: &Simplex) -> Option<SimplexId> {
        self.index.get(s).copied()
    }

    /// Strict faces of `id` (all dimensions), ascending.
    pub fn faces_of(&self, id: SimplexId) -> &[SimplexId] {
        &self.faces[id]
    }

    /// Strict cofaces of `id` (all dimensions), ascending.
    pub fn cofaces_of(&self, id: SimplexId) -> &[SimplexId] {
        &self.cofaces[id]
    }

    /// All vertex ids in ascending order.
    pub fn vertex_ids(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Number of simplices per dimension (the f-vector).
    pub fn f_vector(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.dim() + 1];
        for s in &self.simplices {
            counts[s.dim()] += 1;
        }
        counts
    }

    /// Maximal simplices (those without strict cofaces), canonical order.
    pub fn facets(&self) -> Vec<Simplex> {
        self.simplices
            .iter()
            .enumerate()
            .filter(|(id, _)| self.cofaces[*id].is_empty())
            .map(|(_, s)| s.clone())
            .collect()
    }

    /// Content equality, ignoring names.
    pub fn same_simplices(&self, other: &Complex) -> bool {
        self.simplices == other.simplices
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_a_single_edge() {
        let k = Complex::from_facets("interval", &[vec![0, 1]]).unwrap();
        assert_eq!(k.len(), 3, "an edge closes up to two vertices and itself");
        assert_eq!(k.f_vector(), vec![2, 1]);
    }

    #[test]
    fn hollow_triangle_has_six_simplices() {
        let k =
            Complex::from_facets("hollow", &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(k.len(), 6);
        assert_eq!(k.f_vector(), vec![3, 3]);
    }

    #[test]
    fn tetrahedron_boundary_has_fourteen_simplices() {
        let k = Complex::from_facets(
            "tetra-boundary",
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap();
        assert_eq!(k.len(), 14);
        assert_eq!(k.f_vector(), vec![4, 6, 4]);
    }

    #[test]
    fn duplicate_vertices_in_a_facet_are_rejected() {
        assert!(Complex::from_facets("bad", &[vec![0, 0]]).is_err());
    }

    #[test]
    fn empty_facet_list_is_rejected() {
        assert!(Complex::from_facets("none", &[]).is_err());
    }

    #[test]
    fn incidence_lists_are_consistent() {
        let k = Complex::from_facets("t", &[vec![0, 1, 2]]).unwrap();
        let tri = k.id_of(&Simplex::new(vec![0, 1, 2]).unwrap()).unwrap();
        assert_eq!(k.faces_of(tri).len(), 6);
        let v0 = k.id_of(&Simplex::new(vec![0]).unwrap()).unwrap();
        // v0 sits under both its edges and the triangle.
        assert_eq!(k.cofaces_of(v0).len(), 3);
    }

    #[test]
    fn facets_recover_the_generating_set() {
        let k = Complex::from_facets("oct", &[vec![0, 1, 2], vec![2, 3]]).unwrap();
        let facets = k.facets();
        assert_eq!(facets.len(), 2);
        assert_eq!(facets[0], Simplex::new(vec![2, 3]).unwrap());
        assert_eq!(facets[1], Simplex::new(vec![0, 1, 2]).unwrap());
    }
}
