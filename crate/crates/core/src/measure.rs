use crate::error::{Error, Result};

/// Finite atomic measure space: atoms `0..n` with positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSpace {
    weights: Vec<f64>,
}

impl MeasureSpace {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::invalid("measure space needs at least one atom"));
        }
        if let Some((index, &weight)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidWeight { index, weight });
        }
        Ok(Self { weights })
    }

    pub fn counting(n: usize) -> Result<Self> {
        Self::new(vec![1.0; n])
    }

    pub fn uniform(n: usize, weight: f64) -> Result<Self> {
        Self::new(vec![weight; n])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, atom: usize) -> f64 {
        self.weights[atom]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn is_counting(&self) -> bool {
        self.weights.iter().all(|&w| w == 1.0)
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// μ(S) for a set of atoms, summed in increasing atom order.
    pub fn measure_of(&self, atoms: impl IntoIterator<Item = usize>) -> f64 {
        atoms.into_iter().map(|i| self.weights[i]).sum()
    }

    /// Measure of the atoms selected by a bitmask.
    pub fn measure_of_mask(&self, mask: u64) -> f64 {
        crate::subsets::mask_indices(mask).map(|i| self.weights[i]).sum()
    }
}
