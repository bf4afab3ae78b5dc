use std::collections::BTreeSet;

use num::Signed;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::abstract_system::AbstractPolymerSystem;
use crate::{Error, Rational, Result};

/// A lattice cell in `Z^d`.
pub type Cell = Vec<i64>;

/// Translation-invariant single-shape subset polymers on `Z^d`: all
/// translates of a finite shape `S`, each carrying the same activity.
/// The shape is stored in canonical translate (lexicographically
/// minimal cell at the origin).
#[derive(Debug, Clone)]
pub struct LatticeShapeModel {
    dimension: usize,
    cells: Vec<Cell>,
    activity: Rational,
}

impl LatticeShapeModel {
    pub fn new(dimension: usize, cells: Vec<Cell>, activity: Rational) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::contract("lattice dimension must be at least 1"));
        }
        if cells.is_empty() {
            return Err(Error::contract("shape must contain at least one cell"));
        }
        if cells.iter().any(|c| c.len() != dimension) {
            return Err(Error::contract("every shape cell must have d coordinates"));
        }
        if activity.is_negative() {
            return Err(Error::contract("activity must be non-negative"));
        }
        let mut set: BTreeSet<Cell> = cells.into_iter().collect();
        let min = set.iter().next().cloned().expect("non-empty");
        set = set
            .into_iter()
            .map(|c| sub(&c, &min))
            .collect();
        Ok(LatticeShapeModel {
            dimension,
            cells: set.into_iter().collect(),
            activity,
        })
    }

    /// `k`-cube `{0,...,k-1}^d`.
    pub fn hypercube(dimension: usize, k: usize, activity: Rational) -> Result<Self> {
        if k == 0 {
            return Err(Error::contract("cube side must be at least 1"));
        }
        let mut cells = vec![vec![0i64; dimension]];
        for axis in 0..dimension {
            let mut next = Vec::new();
            for c in &cells {
                for v in 0..k as i64 {
                    let mut c2 = c.clone();
                    c2[axis] = v;
                    next.push(c2);
                }
            }
            cells = next;
        }
        Self::new(dimension, cells, activity)
    }

    /// Rod `{0,...,len-1}` on `Z`.
    pub fn rod(len: usize, activity: Rational) -> Result<Self> {
        Self::new(1, (0..len as i64).map(|i| vec![i]).collect(), activity)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn activity(&self) -> &Rational {
        &self.activity
    }

    /// Difference set `S + (-S)`: the translate offsets incompatible
    /// with the canonical translate.
    pub fn difference_set(&self) -> BTreeSet<Cell> {
        let mut out = BTreeSet::new();
        for a in &self.cells {
            for b in &self.cells {
                out.insert(sub(a, b));
            }
        }
        out
    }

    /// `V(D)`: the number of translates of the shape meeting the finite
    /// domain `D`, i.e. `|D + (-S)|`.
    pub fn v_count(&self, domain: &[Cell]) -> u64 {
        let mut anchors: BTreeSet<Cell> = BTreeSet::new();
        for x in domain {
            for s in &self.cells {
                anchors.insert(sub(x, s));
            }
        }
        anchors.len() as u64
    }

    /// `V(S)` of the shape itself.
    pub fn v_of_shape(&self) -> u64 {
        self.difference_set().len() as u64
    }

    /// Anchors of all translates containing the given cell.
    pub fn anchors_through(&self, cell: &Cell) -> Vec<Cell> {
        self.cells.iter().map(|s| sub(cell, s)).collect()
    }

    /// Cells of the translate anchored at `anchor`.
    pub fn translate_cells(&self, anchor: &Cell) -> Vec<Cell> {
        self.cells.iter().map(|s| add(anchor, s)).collect()
    }

    /// Materializes the finite polymer system around the canonical
    /// translate: all translates with offsets in the three-fold
    /// difference-set sum, which is two shape diameters of padding
    /// beyond `Gamma(center)`. This makes `Gamma(Y)` complete for every
    /// compatible subset of `Gamma(center)`; the outermost ring is
    /// asserted compatible with all of `Gamma(center)`.
    pub fn neighborhood_system(&self) -> Result<(AbstractPolymerSystem, usize)> {
        let delta = self.difference_set();
        let two: BTreeSet<Cell> = minkowski(&delta, &delta);
        let three: BTreeSet<Cell> = minkowski(&two, &delta);
        if three.len() > 20_000 {
            return Err(Error::capacity(format!(
                "neighborhood window would materialize {} translates (cap 20000)",
                three.len()
            )));
        }
        let offsets: Vec<Cell> = three.iter().cloned().collect();
        let index_of = |c: &Cell| offsets.binary_search(c).ok();
        let center = index_of(&vec![0; self.dimension]).expect("origin is an offset");

        let mut pairs = Vec::new();
        for (i, a) in offsets.iter().enumerate() {
            for (j, b) in offsets.iter().enumerate().skip(i + 1) {
                if delta.contains(&sub(a, b)) {
                    pairs.push((i, j));
                }
            }
        }
        let ids: Vec<String> = offsets
            .iter()
            .map(|c| {
                let coords: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("t({})", coords.join(","))
            })
            .collect();
        let system = AbstractPolymerSystem::new(
            ids,
            vec![self.activity.clone(); offsets.len()],
            &pairs,
        )?;

        // Completeness guard: boundary translates must be compatible
        // with everything in Gamma(center).
        for (i, off) in offsets.iter().enumerate() {
            if two.contains(off) {
                continue;
            }
            for g in &delta {
                if delta.contains(&sub(off, g)) {
                    return Err(Error::contract(
                        "neighborhood window under-padded: boundary translate \
                         incompatible with Gamma(center)",
                    ));
                }
            }
            let _ = i;
        }
        Ok((system, center))
    }

    /// Samples random finite domains in a window and checks strong
    /// subadditivity `V(B) + V(C) >= V(B u C) + V(B n C)`.
    pub fn strong_subadditivity_check(&self, trials: u64, seed: u64) -> SubadditivityOutcome {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let halfwidth = 4i64;
        for _ in 0..trials {
            let b = random_domain(&mut rng, self.dimension, halfwidth);
            let c = random_domain(&mut rng, self.dimension, halfwidth);
            let bs: BTreeSet<Cell> = b.iter().cloned().collect();
            let cs: BTreeSet<Cell> = c.iter().cloned().collect();
            let union: Vec<Cell> = bs.union(&cs).cloned().collect();
            let inter: Vec<Cell> = bs.intersection(&cs).cloned().collect();
            let lhs = self.v_count(&b) + self.v_count(&c);
            let rhs = self.v_count(&union) + self.v_count(&inter);
            if lhs < rhs {
                return SubadditivityOutcome {
                    holds: false,
                    counterexample: Some((b, c)),
                };
            }
        }
        SubadditivityOutcome {
            holds: true,
            counterexample: None,
        }
    }
}

/// Result of the strong-subadditivity property check.
#[derive(Debug, Clone)]
pub struct SubadditivityOutcome {
    pub holds: bool,
    pub counterexample: Option<(Vec<Cell>, Vec<Cell>)>,
}

fn random_domain(rng: &mut ChaCha8Rng, d: usize, halfwidth: i64) -> Vec<Cell> {
    let count = rng.gen_range(1..=6);
    let mut set = BTreeSet::new();
    for _ in 0..count {
        let cell: Cell = (0..d).map(|_| rng.gen_range(-halfwidth..=halfwidth)).collect();
        set.insert(cell);
    }
    set.into_iter().collect()
}

pub(crate) fn add(a: &Cell, b: &Cell) -> Cell {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub(a: &Cell, b: &Cell) -> Cell {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn minkowski(a: &BTreeSet<Cell>, b: &BTreeSet<Cell>) -> BTreeSet<Cell> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            out.insert(add(x, y));
        }
    }
    out
}
