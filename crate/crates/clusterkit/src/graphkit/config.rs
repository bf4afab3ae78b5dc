use num::{One, Signed, Zero};

use crate::{Error, Rational, Result};

/// An ordered finite point set carrying a symmetric matrix of Mayer
/// values `f(x_i, x_j)`. The diagonal is unused. Hard-core
/// configurations have every off-diagonal entry in `{-1, 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    n: usize,
    mayer: Vec<Rational>,
}

impl PointConfig {
    /// Builds a configuration from a generator for the upper triangle.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        assert!(n >= 1, "point configuration needs at least one point");
        let mut mayer = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = f(i, j);
                mayer[i * n + j] = v.clone();
                mayer[j * n + i] = v;
            }
        }
        PointConfig { n, mayer }
    }

    /// Builds a configuration from a full matrix, checking symmetry.
    pub fn from_matrix(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::contract("mayer matrix must be non-empty"));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::contract("mayer matrix must be square"));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::contract(format!(
                        "mayer matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(PointConfig {
            n,
            mayer: rows.into_iter().flatten().collect(),
        })
    }

    /// Hard-core configuration: `f = -1` where `overlap` holds, else `0`.
    pub fn hard_core(n: usize, mut overlap: impl FnMut(usize, usize) -> bool) -> Self {
        Self::from_fn(n, |i, j| {
            if overlap(i, j) {
                -Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Mayer value `f(x_i, x_j)`, `i != j`.
    pub fn f(&self, i: usize, j: usize) -> &Rational {
        debug_assert!(i != j && i < self.n && j < self.n);
        &self.mayer[i * self.n + j]
    }

    pub fn one_plus_f(&self, i: usize, j: usize) -> Rational {
        Rational::one() + self.f(i, j)
    }

    /// True when every off-diagonal entry lies in `{-1, 0}`.
    pub fn is_hard_core(&self) -> bool {
        self.off_diagonal().all(|v| v.is_zero() || *v == -Rational::one())
    }

    /// True when every off-diagonal entry lies in `[-1, 0]`
    /// (the Mayer range of a non-negative pair potential).
    pub fn is_nonneg_potential(&self) -> bool {
        self.off_diagonal()
            .all(|v| !v.is_positive() && *v >= -Rational::one())
    }

    fn off_diagonal(&self) -> impl Iterator<Item = &Rational> {
        (0..self.n).flat_map(move |i| {
            ((i + 1)..self.n).map(move |j| &self.mayer[i * self.n + j])
        })
    }

    /// Restriction of the configuration to a subset of points
    /// (order preserved).
    pub fn restrict(&self, points: &[usize]) -> PointConfig {
        PointConfig::from_fn(points.len(), |a, b| self.f(points[a], points[b]).clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn symmetry_enforced() {
        let bad = vec![
            vec![ratio(0, 1), ratio(-1, 1)],
            vec![ratio(0, 1), ratio(0, 1)],
        ];
        assert!(PointConfig::from_matrix(bad).is_err());
    }

    #[test]
    fn hard_core_detection() {
        let cfg = PointConfig::hard_core(3, |_, _| true);
        assert!(cfg.is_hard_core());
        assert!(cfg.is_nonneg_potential());
        let soft = PointConfig::from_fn(2, |_, _| ratio(-1, 2));
        assert!(!soft.is_hard_core());
        assert!(soft.is_nonneg_potential());
    }
}
