//! Abstract simplices over integer vertex ids.

use crate::error::{Error, Result};
use std::fmt;

/// Vertex identifier. Vertices are bare non-negative integers; their usual
/// order doubles as the total order used by ordered triangulations
/// (products, graphs, subdivisions).
pub type VertexId = u32;

/// An abstract simplex: a finite non-empty set of vertices, stored as a
/// strictly increasing vector.
///
/// The derived `Ord` sorts by dimension first and lexicographically inside
/// a dimension, which is the canonical order used to index complexes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Simplex {
    vertices: Vec<VertexId>,
}

impl Simplex {
    /// Builds a simplex from an arbitrary vertex list.
    ///
    /// The list is sorted; duplicates or emptiness are malformed input.
    pub fn new(mut vertices: Vec<VertexId>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::MalformedInput("empty simplex".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedInput(format!(
                "duplicate vertices in simplex {vertices:?}"
            )));
        }
        Ok(Simplex { vertices })
    }

    /// Builds a simplex from a list already known to be strictly increasing.
    pub(crate) fn from_sorted(vertices: Vec<VertexId>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(!vertices.is_empty());
        Simplex { vertices }
    }

    /// Single-vertex simplex.
    pub fn vertex(v: VertexId) -> Self {
        Simplex { vertices: vec![v] }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Dimension: one less than the number of vertices.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Whether `self` is a (not necessarily proper) face of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        // Both vertex lists are sorted: a linear sweep decides containment.
        let mut it = other.vertices.iter();
        self.vertices.iter().all(|v| it.any(|w| w == v))
    }

    /// All strict faces (non-empty proper subsets), in canonical order.
    pub fn strict_faces(&self) -> Vec<Simplex> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        for mask in 1u32..((1 << n) - 1) {
            let verts: Vec<VertexId> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.vertices[i])
                .collect();
            out.push(Simplex::from_sorted(verts));
        }
        out.sort();
        out
    }

    /// Compares two simplices lexicographically on the raw vertex lists,
    /// ignoring dimension. This is the order used when printing cells.
    pub fn cmp_lex(&self, other: &Simplex) -> std::cmp::Ordering {
        self.vertices.cmp(&other.vertices)
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.vertices.len(), &self.vertices).cmp(&(other.vertices.len(), &other.vertices))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}
