use num::Signed;

use crate::models::abstract_system::rational_to_f64;
use crate::{Error, Rational, Result};

/// One-dimensional hard rods on `Z`: rods of the listed integer
/// lengths, length `l` carrying activity `z * weight_l`. Weights are
/// exact rationals so the truncated partial sums stay exact.
#[derive(Debug, Clone)]
pub struct DiscreteRodSystem {
    lengths: Vec<u32>,
    weights: Vec<Rational>,
}

impl DiscreteRodSystem {
    pub fn new(lengths: Vec<u32>, weights: Vec<Rational>) -> Result<Self> {
        if lengths.is_empty() || lengths.len() != weights.len() {
            return Err(Error::contract(
                "rod system needs matching non-empty length and weight lists",
            ));
        }
        if lengths.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::contract("rod lengths must be strictly increasing"));
        }
        if lengths[0] == 0 {
            return Err(Error::contract("rod lengths must be positive"));
        }
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::contract("rod weights must be non-negative"));
        }
        Ok(DiscreteRodSystem { lengths, weights })
    }

    pub fn single(length: u32) -> Result<Self> {
        Self::new(vec![length], vec![Rational::from_integer(1.into())])
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weights_f64(&self) -> Vec<f64> {
        self.weights.iter().map(rational_to_f64).collect()
    }

    pub fn types(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.lengths.iter().copied().zip(self.weights.iter())
    }
}

/// One-dimensional hard rods on `R` with finitely many lengths, all
/// bounded below by a positive minimum.
#[derive(Debug, Clone)]
pub struct ContinuousRodSystem {
    lengths: Vec<f64>,
    weights: Vec<f64>,
}

impl ContinuousRodSystem {
    pub fn new(lengths: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if lengths.is_empty() || lengths.len() != weights.len() {
            return Err(Error::contract(
                "rod system needs matching non-empty length and weight lists",
            ));
        }
        if lengths.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::contract("rod lengths must be strictly increasing"));
        }
        if lengths[0] <= 0.0 {
            return Err(Error::contract(
                "continuous rod lengths must be bounded below by a positive minimum",
            ));
        }
        if weights.iter().any(|&w| w.is_nan() || w < 0.0) {
            return Err(Error::contract("rod weights must be non-negative"));
        }
        Ok(ContinuousRodSystem { lengths, weights })
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn min_length(&self) -> f64 {
        self.lengths[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn length_ordering_enforced() {
        assert!(DiscreteRodSystem::new(vec![2, 2], vec![ratio(1, 1); 2]).is_err());
        assert!(DiscreteRodSystem::new(vec![3, 2], vec![ratio(1, 1); 2]).is_err());
        assert!(DiscreteRodSystem::new(vec![1, 2], vec![ratio(1, 1); 2]).is_ok());
        assert!(ContinuousRodSystem::new(vec![0.0], vec![1.0]).is_err());
        assert!(ContinuousRodSystem::new(vec![0.5, 2.0], vec![1.0, 1.0]).is_ok());
    }
}
