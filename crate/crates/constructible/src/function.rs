//! Integer-valued functions on the cells of a space.
//!
//! A function assigns an integer to every open cell of its carrier space
//! and is zero (by convention, not by storage) outside it. Values are
//! stored densely in the order of the carrier's member list. Arithmetic is
//! exact; all operations that combine two functions require literally the
//! same carrier space.

use crate::cellset::CellSet;
use crate::complex::SimplexId;
use crate::error::{Error, Result};

/// An integer-valued function on the cells of a space.
#[derive(Debug, Clone)]
pub struct Function {
    space: CellSet,
    values: Vec<i64>,
}

impl Function {
    /// A function from explicit per-cell values, in carrier member order.
    pub fn new(space: CellSet, values: Vec<i64>) -> Result<Self> {
        if values.len() != space.members().len() {
            return Err(Error::MalformedInput(format!(
                "expected {} values for {}, got {}",
                space.members().len(),
                space.complex().name(),
                values.len()
            )));
        }
        Ok(Self { space, values })
    }

    /// The constant function with the given value.
    pub fn constant(space: CellSet, value: i64) -> Self {
        let n = space.members().len();
        Self {
            space,
            values: vec![value; n],
        }
    }

    /// The constant function 1.
    pub fn one(space: CellSet) -> Self {
        Self::constant(space, 1)
    }

    /// The zero function.
    pub fn zero(space: CellSet) -> Self {
        Self::constant(space, 0)
    }

    /// The indicator function of a subset of cells of the carrier.
    pub fn indicator(space: CellSet, subset: &CellSet) -> Result<Self> {
        subset.require_same_ambient(&space)?;
        if !subset.is_subset_of(&space) {
            return Err(Error::NotSubset(format!(
                "indicator support is not inside the carrier in {}",
                space.complex().name()
            )));
        }
        let values = space
            .members()
            .iter()
            .map(|&id| i64::from(subset.contains(id)))
            .collect();
        Ok(Self { space, values })
    }

    pub fn space(&self) -> &CellSet {
        &self.space
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// The value on a cell of the ambient complex (zero off the carrier).
    pub fn value(&self, id: SimplexId) -> i64 {
        match self.space.position(id) {
            Some(pos) => self.values[pos],
            None => 0,
        }
    }

    /// The cells where the function is nonzero.
    pub fn support(&self) -> Vec<SimplexId> {
        self.space
            .members()
            .iter()
            .zip(&self.values)
            .filter(|&(_, &v)| v != 0)
            .map(|(&id, _)| id)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Pointwise sum; both functions must live on the same space.
    pub fn add(&self, other: &Function) -> Result<Function> {
        self.require_same_space(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Function {
            space: self.space.clone(),
            values,
        })
    }

    /// Pointwise difference; both functions must live on the same space.
    pub fn sub(&self, other: &Function) -> Result<Function> {
        self.require_same_space(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Function {
            space: self.space.clone(),
            values,
        })
    }

    /// Scalar multiple.
    pub fn scale(&self, c: i64) -> Function {
        Function {
            space: self.space.clone(),
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    /// Pointwise product; both functions must live on the same space.
    pub fn tensor(&self, other: &Function) -> Result<Function> {
        self.require_same_space(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Function {
            space: self.space.clone(),
            values,
        })
    }

    fn require_same_space(&self, other: &Function) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(format!(
                "functions live on different spaces ({} vs {})",
                self.space.complex().name(),
                other.space.complex().name()
            )))
        }
    }
}

/// Equality as functions: same carrier space and the same value on every
/// cell of it.
impl PartialEq for Function {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.values == other.values
    }
}
impl Eq for Function {}
