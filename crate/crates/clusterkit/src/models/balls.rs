use crate::{Error, Result};

/// Lebesgue volume of the unit ball in `R^d`, via the two-step
/// recurrence `v_d = 2 pi / d * v_{d-2}` with `v_0 = 1`, `v_1 = 2`.
pub fn unit_ball_volume(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * std::f64::consts::PI / d as f64 * unit_ball_volume(d - 2),
    }
}

/// Volume of the `d`-dimensional ball of radius `r`.
pub fn ball_volume(d: usize, r: f64) -> Result<f64> {
    if d == 0 {
        return Err(Error::contract("ball dimension must be at least 1"));
    }
    if r.is_nan() || r <= 0.0 {
        return Err(Error::contract("ball radius must be positive"));
    }
    Ok(unit_ball_volume(d) * r.powi(d as i32))
}

/// Multi-type hard spheres in `R^d`: finitely many radii, radius `r_l`
/// carrying activity `z * weight_l`.
#[derive(Debug, Clone)]
pub struct BallSystem {
    dimension: usize,
    radii: Vec<f64>,
    weights: Vec<f64>,
}

impl BallSystem {
    pub fn new(dimension: usize, radii: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::contract("ball dimension must be at least 1"));
        }
        if radii.is_empty() || radii.len() != weights.len() {
            return Err(Error::contract(
                "ball system needs matching non-empty radius and weight lists",
            ));
        }
        if radii[0] <= 0.0 || radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::contract(
                "ball radii must be positive and strictly increasing",
            ));
        }
        if weights.iter().any(|&w| w.is_nan() || w < 0.0) {
            return Err(Error::contract("ball weights must be non-negative"));
        }
        Ok(BallSystem {
            dimension,
            radii,
            weights,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn smallest_radius(&self) -> f64 {
        self.radii[0]
    }
}
