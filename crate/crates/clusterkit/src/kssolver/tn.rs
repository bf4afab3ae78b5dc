use std::collections::{BTreeSet, HashMap};

use num::{One, Signed, ToPrimitive, Zero};

use super::domain::DomainMask;
use crate::graphkit::{ursell, PointConfig, UrsellMethod};
use crate::models::{Cell, DiscreteRodSystem, LatticeShapeModel};
use crate::{Error, Rational, Result};

/// Subset-polymer models the truncated partial sums run on.
pub enum TnModel<'a> {
    Lattice(&'a LatticeShapeModel),
    Rods(&'a DiscreteRodSystem),
}

impl TnModel<'_> {
    pub fn dimension(&self) -> usize {
        match self {
            TnModel::Lattice(m) => m.dimension(),
            TnModel::Rods(_) => 1,
        }
    }

    /// Active polymers containing the cell, as (sorted cell set, weight).
    /// The polymer's activity is `z * weight`.
    pub fn polymers_through(&self, cell: &Cell) -> Vec<(BTreeSet<Cell>, Rational)> {
        match self {
            TnModel::Lattice(m) => m
                .anchors_through(cell)
                .into_iter()
                .map(|a| {
                    (
                        m.translate_cells(&a).into_iter().collect(),
                        Rational::one(),
                    )
                })
                .collect(),
            TnModel::Rods(r) => {
                let x = cell[0];
                let mut out = Vec::new();
                for (len, w) in r.types() {
                    if w.is_zero() {
                        continue;
                    }
                    let l = len as i64;
                    for anchor in (x - l + 1)..=x {
                        let cells: BTreeSet<Cell> =
                            (anchor..anchor + l).map(|c| vec![c]).collect();
                        out.push((cells, w.clone()));
                    }
                }
                out
            }
        }
    }

    /// Longest extent of any polymer along one axis, used to pre-size
    /// enumeration boxes.
    pub fn max_extent(&self) -> i64 {
        match self {
            TnModel::Lattice(m) => {
                let d = m.dimension();
                (0..d)
                    .map(|axis| {
                        let lo = m.cells().iter().map(|c| c[axis]).min().unwrap();
                        let hi = m.cells().iter().map(|c| c[axis]).max().unwrap();
                        hi - lo + 1
                    })
                    .max()
                    .unwrap()
            }
            TnModel::Rods(r) => *r.lengths().last().unwrap() as i64,
        }
    }

    /// Number of active polymers meeting the given cell set.
    pub fn v_count(&self, cells: &BTreeSet<Cell>) -> u64 {
        let mut seen: BTreeSet<Vec<Cell>> = BTreeSet::new();
        for c in cells {
            for (pc, _) in self.polymers_through(c) {
                seen.insert(pc.into_iter().collect());
            }
        }
        seen.len() as u64
    }
}

/// Which end of the domain the recursion peels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CellSelection {
    /// Lexicographically minimal cell.
    #[default]
    Leftmost,
    /// Lexicographically maximal cell.
    Rightmost,
}

/// Memoized truncated partial sums `T_N(D; z)` computed through the
/// single-cell peeling recursion
/// `T_{N+1}(D' u {x}) = T_N(D') + sum_{Y: x in Y, Y n D' = {}} z(Y) T_N(D' u Y)`.
///
/// Conventions: `T_N({}) = 1` for all `N >= 1`, `T_1(D) = 1` iff
/// `|D| <= 1`, and `T_N(D) = 0` when `|D| > N`.
pub struct TnTable<'a> {
    model: TnModel<'a>,
    z: Rational,
    selection: CellSelection,
    memo: HashMap<(Vec<Cell>, u32), Rational>,
    cell_cap: usize,
}

impl<'a> TnTable<'a> {
    pub fn new(model: TnModel<'a>, z: Rational) -> Result<Self> {
        if z.is_negative() {
            return Err(Error::contract("activity must be non-negative"));
        }
        Ok(TnTable {
            model,
            z,
            selection: CellSelection::Leftmost,
            memo: HashMap::new(),
            cell_cap: 512,
        })
    }

    pub fn with_selection(mut self, selection: CellSelection) -> Self {
        self.selection = selection;
        self
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// `T_N(D; z)`, exact.
    pub fn value(&mut self, domain: &DomainMask, n: u32) -> Result<Rational> {
        if n < 1 {
            return Err(Error::contract("truncation order must be at least 1"));
        }
        let cells = domain.absolute_cells();
        self.value_set(&cells, n)
    }

    fn value_set(&mut self, cells: &BTreeSet<Cell>, n: u32) -> Result<Rational> {
        if cells.is_empty() {
            return Ok(Rational::one());
        }
        if cells.len() as u32 > n {
            return Ok(Rational::zero());
        }
        if n == 1 {
            // |D| <= 1 at this point.
            return Ok(Rational::one());
        }
        if cells.len() > self.cell_cap {
            return Err(Error::capacity(format!(
                "domain grew past the {}-cell cap",
                self.cell_cap
            )));
        }
        let key = (DomainMask::from_set(self.model.dimension(), cells).key().to_vec(), n);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let x = match self.selection {
            CellSelection::Leftmost => cells.iter().next().unwrap().clone(),
            CellSelection::Rightmost => cells.iter().next_back().unwrap().clone(),
        };
        let mut rest = cells.clone();
        rest.remove(&x);
        let mut acc = self.value_set(&rest, n - 1)?;
        for (ycells, w) in self.model.polymers_through(&x) {
            if ycells.iter().any(|c| rest.contains(c)) {
                continue;
            }
            let mut union = rest.clone();
            union.extend(ycells.iter().cloned());
            let inner = self.value_set(&union, n - 1)?;
            if !inner.is_zero() {
                acc += &self.z * w * inner;
            }
        }
        self.memo.insert(key, acc.clone());
        Ok(acc)
    }
}

/// Coefficients of the direct partial-sum expansion of one domain:
/// entry `(k, cells)` holds `sum |phi_{1+k}| prod w_i` over ordered
/// `k`-tuples of polymers with `cells` total cells. Evaluating
/// `T_N(D; z)` for any `N` up to the table's order and any `z` is then
/// a cheap sum.
#[derive(Debug, Clone)]
pub struct TnDirectTable {
    domain_cells: usize,
    n_max: u32,
    coeffs: HashMap<(usize, usize), Rational>,
}

impl TnDirectTable {
    /// `T_N(D; z)` from the tabulated coefficients, `N <= n_max`.
    pub fn eval(&self, n: u32, z: &Rational) -> Result<Rational> {
        if n < 1 {
            return Err(Error::contract("truncation order must be at least 1"));
        }
        if n > self.n_max {
            return Err(Error::contract(format!(
                "table was built for truncation order {} only",
                self.n_max
            )));
        }
        if self.domain_cells as u32 > n {
            return Ok(Rational::zero());
        }
        let mut total = Rational::one();
        let mut by_k: Vec<Rational> = Vec::new();
        for (&(k, cells), coeff) in &self.coeffs {
            if (self.domain_cells + cells) as u32 <= n {
                if by_k.len() <= k {
                    by_k.resize(k + 1, Rational::zero());
                }
                by_k[k] += coeff;
            }
        }
        let mut k_fact = Rational::one();
        let mut z_pow = Rational::one();
        for (k, coeff) in by_k.iter().enumerate().skip(1) {
            k_fact *= Rational::from_integer((k as i64).into());
            z_pow *= z;
            if !coeff.is_zero() {
                total += coeff * &z_pow / &k_fact;
            }
        }
        Ok(total)
    }
}

/// Direct evaluation of `T_N(D; z)` from the definition: a sum over
/// ordered polymer tuples weighted by `|phi_{1+k}| z^k / k!`, with the
/// size budget `|D| + sum |Y_i| <= N`. Independent of the recursion;
/// serves as its oracle.
pub fn tn_direct(
    model: &TnModel,
    domain: &DomainMask,
    n: u32,
    z: &Rational,
) -> Result<Rational> {
    if domain.is_empty() {
        if n < 1 {
            return Err(Error::contract("truncation order must be at least 1"));
        }
        return Ok(Rational::one());
    }
    tn_direct_table(model, domain, n)?.eval(n, z)
}

/// Builds the coefficient table for orders up to `n_max`.
pub fn tn_direct_table(
    model: &TnModel,
    domain: &DomainMask,
    n_max: u32,
) -> Result<TnDirectTable> {
    let n = n_max;
    if n < 1 {
        return Err(Error::contract("truncation order must be at least 1"));
    }
    if n > 8 {
        return Err(Error::capacity(
            "direct partial sums limited to truncation order 8",
        ));
    }
    if domain.is_empty() {
        return Err(Error::contract(
            "the empty domain needs no table; its value is 1",
        ));
    }
    let d_cells = domain.absolute_cells();
    if d_cells.len() as u32 > n {
        return Ok(TnDirectTable {
            domain_cells: d_cells.len(),
            n_max,
            coeffs: HashMap::new(),
        });
    }
    let budget = n as usize - d_cells.len();

    // Candidate pool: polymers inside the bounding box of D padded by
    // the worst-case chain reach.
    let dim = model.dimension();
    let pad = budget as i64 * model.max_extent();
    let mut lo = vec![i64::MAX; dim];
    let mut hi = vec![i64::MIN; dim];
    for c in &d_cells {
        for a in 0..dim {
            lo[a] = lo[a].min(c[a]);
            hi[a] = hi[a].max(c[a]);
        }
    }
    let mut pool: Vec<(BTreeSet<Cell>, Rational)> = Vec::new();
    let mut seen: BTreeSet<Vec<Cell>> = BTreeSet::new();
    let mut cursor = lo.iter().map(|v| v - pad).collect::<Cell>();
    loop {
        for (cells, w) in model.polymers_through(&cursor) {
            if cells.len() <= budget {
                let key: Vec<Cell> = cells.iter().cloned().collect();
                if seen.insert(key) {
                    pool.push((cells, w));
                }
            }
        }
        // Advance the odometer over the padded box.
        let mut axis = 0;
        loop {
            if axis == dim {
                break;
            }
            cursor[axis] += 1;
            if cursor[axis] <= hi[axis] + pad {
                break;
            }
            cursor[axis] = lo[axis] - pad;
            axis += 1;
        }
        if axis == dim {
            break;
        }
    }

    let mut ursell_memo: HashMap<Vec<usize>, Rational> = HashMap::new();
    let mut coeffs: HashMap<(usize, usize), Rational> = HashMap::new();
    let mut tuple: Vec<usize> = Vec::new();
    sum_tuples(
        &d_cells,
        &pool,
        budget,
        0,
        &mut tuple,
        &mut ursell_memo,
        &mut coeffs,
    )?;
    Ok(TnDirectTable {
        domain_cells: d_cells.len(),
        n_max,
        coeffs,
    })
}

fn sum_tuples(
    d_cells: &BTreeSet<Cell>,
    pool: &[(BTreeSet<Cell>, Rational)],
    budget_left: usize,
    cells_used: usize,
    tuple: &mut Vec<usize>,
    ursell_memo: &mut HashMap<Vec<usize>, Rational>,
    coeffs: &mut HashMap<(usize, usize), Rational>,
) -> Result<()> {
    if !tuple.is_empty() {
        let mut key = tuple.clone();
        key.sort_unstable();
        let phi_abs = match ursell_memo.get(&key) {
            Some(v) => v.clone(),
            None => {
                let v = cluster_ursell_abs(d_cells, pool, tuple)?;
                ursell_memo.insert(key, v.clone());
                v
            }
        };
        if !phi_abs.is_zero() {
            let mut term = phi_abs;
            for &i in tuple.iter() {
                term *= &pool[i].1;
            }
            *coeffs
                .entry((tuple.len(), cells_used))
                .or_insert_with(Rational::zero) += term;
        }
    }
    if budget_left == 0 {
        return Ok(());
    }
    for (i, (cells, _)) in pool.iter().enumerate() {
        if cells.len() <= budget_left {
            tuple.push(i);
            sum_tuples(
                d_cells,
                pool,
                budget_left - cells.len(),
                cells_used + cells.len(),
                tuple,
                ursell_memo,
                coeffs,
            )?;
            tuple.pop();
        }
    }
    Ok(())
}

fn cluster_ursell_abs(
    d_cells: &BTreeSet<Cell>,
    pool: &[(BTreeSet<Cell>, Rational)],
    tuple: &[usize],
) -> Result<Rational> {
    let k = tuple.len();
    let overlap = |a: &BTreeSet<Cell>, b: &BTreeSet<Cell>| a.iter().any(|c| b.contains(c));
    let cfg = PointConfig::hard_core(1 + k, |i, j| {
        let set_i = if i == 0 { d_cells } else { &pool[tuple[i - 1]].0 };
        let set_j = if j == 0 { d_cells } else { &pool[tuple[j - 1]].0 };
        overlap(set_i, set_j)
    });
    Ok(ursell(&cfg, UrsellMethod::Brute)?.abs())
}

/// Outcome of the stabilization probe on `T_N(D; z)` as `N` grows.
/// Divergence by ratio blow-up and failure to stabilize within the
/// ceiling are reported separately, never conflated.
#[derive(Debug, Clone, PartialEq)]
pub enum StabilizationOutcome {
    /// Relative increments dropped below tolerance for two consecutive
    /// steps (single zero increments do not count: partial sums with a
    /// parity pattern grow only every other order).
    Stabilized { at: u32, value: f64 },
    RatioDiverged { at: u32, ratio: f64 },
    CeilingReached { ceiling: u32, last_rel: f64 },
}

pub fn stabilization_probe(
    table: &mut TnTable,
    domain: &DomainMask,
    rel_tol: f64,
    ceiling: u32,
    ratio_cap: f64,
) -> Result<StabilizationOutcome> {
    let mut prev = table.value(domain, 1)?.to_f64().unwrap_or(f64::NAN);
    let mut prev_rel = f64::INFINITY;
    let mut last_nonzero_rel = f64::INFINITY;
    for n in 2..=ceiling {
        let cur = table.value(domain, n)?.to_f64().unwrap_or(f64::NAN);
        if prev > 0.0 && cur / prev > ratio_cap {
            return Ok(StabilizationOutcome::RatioDiverged {
                at: n,
                ratio: cur / prev,
            });
        }
        let rel = if prev > 0.0 {
            (cur - prev) / prev
        } else if cur > 0.0 {
            f64::INFINITY
        } else {
            0.0
        };
        if rel > 0.0 {
            last_nonzero_rel = rel;
        }
        if n >= 3 && rel < rel_tol && prev_rel < rel_tol && cur > 0.0 {
            return Ok(StabilizationOutcome::Stabilized { at: n, value: cur });
        }
        prev_rel = rel;
        prev = cur;
    }
    Ok(StabilizationOutcome::CeilingReached {
        ceiling,
        last_rel: last_nonzero_rel,
    })
}
