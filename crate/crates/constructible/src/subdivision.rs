//! Barycentric subdivision with a cell-carry map.
//!
//! The subdivision of a complex has one vertex per original simplex and one
//! simplex per chain σ₀ ⊊ σ₁ ⊊ … ⊊ σ_k. Barycenter vertex ids are the
//! original simplex ids (which are already sorted by dimension, so the
//! vertex order refines the face order along every chain).
//!
//! The interior of a chain simplex lies in the open cell of its largest
//! element, so the carry of a cell σ is the set of chains with maximum σ.
//! Carrying preserves local closedness and the compactly supported Euler
//! characteristic cell by cell.

use crate::cellset::CellSet;
use crate::complex::{Complex, SimplexId};
use crate::error::Result;
use crate::simplex::{Simplex, VertexId};
use std::collections::BTreeSet;
use std::sync::Arc;

/// A barycentric subdivision together with its carry data.
#[derive(Debug)]
pub struct Subdivision {
    original: Arc<Complex>,
    subdivided: Arc<Complex>,
    /// For each simplex of the subdivision, the original simplex id whose
    /// open cell contains its interior (= the largest chain element).
    carrier: Vec<SimplexId>,
}

impl Subdivision {
    /// Subdivides a complex once.
    pub fn new(original: Arc<Complex>) -> Subdivision {
        let mut chains: BTreeSet<Simplex> = BTreeSet::new();
        // Depth-first enumeration of chains ending at each simplex. Vertex
        // ids of the subdivision are original simplex ids, and every chain
        // is strictly increasing in that order.
        let mut stack: Vec<Vec<SimplexId>> = (0..original.len()).map(|id| vec![id]).collect();
        while let Some(chain) = stack.pop() {
            let verts: Vec<VertexId> = chain.iter().map(|&id| id as VertexId).collect();
            chains.insert(Simplex::from_sorted(verts));
            let &last = chain.last().expect("chains are non-empty");
            for &up in original.cofaces_of(last) {
                let mut next = chain.clone();
                next.push(up);
                stack.push(next);
            }
        }
        let name = format!("sd({})", original.name());
        let subdivided = Arc::new(Complex::from_simplex_set(name, chains));
        let carrier = (0..subdivided.len())
            .map(|id| {
                let s = subdivided.simplex(id);
                *s.vertices().last().expect("non-empty") as SimplexId
            })
            .collect();
        Subdivision {
            original,
            subdivided,
            carrier,
        }
    }

    pub fn original(&self) -> &Arc<Complex> {
        &self.original
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.subdivided
    }

    /// Barycenter vertex id of an original simplex.
    pub fn barycenter(&self, id: SimplexId) -> VertexId {
        id as VertexId
    }

    /// The original simplex whose open cell contains the interior of a
    /// subdivision simplex.
    pub fn carrier_of(&self, sd_id: SimplexId) -> SimplexId {
        self.carrier[sd_id]
    }

    /// New cells covering the interior of one original cell.
    pub fn carry_cell(&self, id: SimplexId) -> Vec<SimplexId> {
        (0..self.subdivided.len())
            .filter(|&s| self.carrier[s] == id)
            .collect()
    }

    /// Carries a cell set to the subdivision.
    pub fn carry(&self, cells: &CellSet) -> Result<CellSet> {
        cells.require_same_ambient(&CellSet::empty(self.original.clone()))?;
        let mask = cells.mask();
        let members = (0..self.subdivided.len())
            .filter(|&s| mask[self.carrier[s]])
            .collect();
        // Carried sets stay order-convex: along a chain-of-chains the
        // carriers are faces of one another.
        Ok(CellSet::new_unchecked(self.subdivided.clone(), members))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_subdivides_to_three_vertices_and_two_edges() {
        let k = Arc::new(Complex::from_facets("interval", &[vec![0, 1]]).unwrap());
        let sd = Subdivision::new(k);
        assert_eq!(sd.complex().f_vector(), vec![3, 2]);
    }

    #[test]
    fn carried_open_interval_keeps_its_euler_characteristic() {
        let k = Arc::new(Complex::from_facets("interval", &[vec![0, 1]]).unwrap());
        let e = k.id_of(&Simplex::new(vec![0, 1]).unwrap()).unwrap();
        let open = CellSet::new(k.clone(), vec![e]).unwrap();
        let sd = Subdivision::new(k);
        let carried = sd.carry(&open).unwrap();
        assert_eq!(
            carried.f_vector(),
            vec![1, 2],
            "the edge barycenter plus the two half-edges"
        );
        assert_eq!(carried.chi_c(), -1);
        assert_eq!(open.chi_c(), carried.chi_c());
    }

    #[test]
    fn closed_triangle_subdivides_to_twenty_five_simplices() {
        let k = Arc::new(Complex::from_facets("triangle", &[vec![0, 1, 2]]).unwrap());
        let sd = Subdivision::new(k);
        assert_eq!(sd.complex().f_vector(), vec![7, 12, 6]);
        assert_eq!(sd.complex().len(), 25);
    }

    #[test]
    fn carry_preserves_chi_c_cell_by_cell() {
        let k = Arc::new(
            Complex::from_facets(
                "tetra",
                &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
            )
            .unwrap(),
        );
        let sd = Subdivision::new(k.clone());
        for id in 0..k.len() {
            let signed: i64 = sd
                .carry_cell(id)
                .iter()
                .map(|&s| crate::cellset::parity(sd.complex().simplex(s).dim()))
                .sum();
            assert_eq!(
                signed,
                crate::cellset::parity(k.simplex(id).dim()),
                "open cell {} subdivides with the same signed count",
                k.simplex(id)
            );
        }
    }
}
