use std::collections::BTreeSet;

use crate::models::Cell;
use crate::{Error, Result};

/// A finite set of lattice cells, stored in canonical translate
/// (lexicographically minimal cell at the origin) together with the
/// anchor offset that reconstructs the absolute position. Canonical
/// form lets translation-invariant models share memo entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DomainMask {
    dimension: usize,
    canonical: Vec<Cell>,
    anchor: Cell,
}

impl DomainMask {
    pub fn new(dimension: usize, cells: &[Cell]) -> Result<Self> {
        if cells.iter().any(|c| c.len() != dimension) {
            return Err(Error::contract(
                "every domain cell must match the dimension",
            ));
        }
        let set: BTreeSet<Cell> = cells.iter().cloned().collect();
        Ok(Self::from_set(dimension, &set))
    }

    pub fn empty(dimension: usize) -> Self {
        DomainMask {
            dimension,
            canonical: Vec::new(),
            anchor: vec![0; dimension],
        }
    }

    pub(crate) fn from_set(dimension: usize, set: &BTreeSet<Cell>) -> Self {
        match set.iter().next() {
            None => Self::empty(dimension),
            Some(min) => {
                let anchor = min.clone();
                let canonical = set
                    .iter()
                    .map(|c| c.iter().zip(&anchor).map(|(a, b)| a - b).collect())
                    .collect();
                DomainMask {
                    dimension,
                    canonical,
                    anchor,
                }
            }
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical.is_empty()
    }

    /// Canonical cell list (sorted), the memoization key.
    pub fn key(&self) -> &[Cell] {
        &self.canonical
    }

    pub fn anchor(&self) -> &Cell {
        &self.anchor
    }

    /// Cells at their absolute positions.
    pub fn absolute_cells(&self) -> BTreeSet<Cell> {
        self.canonical
            .iter()
            .map(|c| c.iter().zip(&self.anchor).map(|(a, b)| a + b).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalization_translates_to_origin() {
        let d = DomainMask::new(2, &[vec![3, 4], vec![3, 5], vec![4, 4]]).unwrap();
        assert_eq!(d.anchor(), &vec![3, 4]);
        assert_eq!(d.key()[0], vec![0, 0]);
        let shifted = DomainMask::new(2, &[vec![-1, 0], vec![-1, 1], vec![0, 0]]).unwrap();
        assert_eq!(d.key(), shifted.key());
        assert_ne!(d.anchor(), shifted.anchor());
        assert_eq!(d.absolute_cells().len(), 3);
    }

    #[test]
    fn empty_domain() {
        let e = DomainMask::new(1, &[]).unwrap();
        assert!(e.is_empty());
        assert_eq!(e, DomainMask::empty(1));
    }
}
