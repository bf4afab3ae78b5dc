use crate::{Error, Result};

/// Exact `d = 1` evaluation of the dilation volume `V_r(D) = |D (+) [-r, r]|`
/// for a finite union of closed intervals: dilate each interval by `r`,
/// merge overlaps, and sum the lengths.
pub fn vr_intervals(intervals: &[(f64, f64)], r: f64) -> Result<f64> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::contract("dilation radius must be positive"));
    }
    if intervals.is_empty() {
        return Ok(0.0);
    }
    let mut dilated: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
    for &(lo, hi) in intervals {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::contract(format!(
                "malformed interval [{lo}, {hi}]"
            )));
        }
        dilated.push((lo - r, hi + r));
    }
    dilated.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut total = 0.0;
    let (mut cur_lo, mut cur_hi) = dilated[0];
    for &(lo, hi) in &dilated[1..] {
        if lo <= cur_hi {
            cur_hi = cur_hi.max(hi);
        } else {
            total += cur_hi - cur_lo;
            cur_lo = lo;
            cur_hi = hi;
        }
    }
    total += cur_hi - cur_lo;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_interval() {
        // V_r([0,1]) = 1 + 2r.
        assert!((vr_intervals(&[(0.0, 1.0)], 0.5).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn disjoint_after_dilation() {
        let v = vr_intervals(&[(0.0, 1.0), (3.0, 4.0)], 0.5).unwrap();
        assert!((v - 4.0).abs() < 1e-15);
    }

    #[test]
    fn merging_dilations() {
        // Dilations [-0.5, 1.5] and [1.0, 2.5] overlap; the union has
        // measure 3, not the 3.5 of the unmerged lengths.
        let v = vr_intervals(&[(0.0, 1.0), (1.5, 2.0)], 0.5).unwrap();
        assert!((v - 3.0).abs() < 1e-15);
        // Just-touching dilations merge without losing measure.
        let w = vr_intervals(&[(0.0, 1.0), (2.0, 2.5)], 0.5).unwrap();
        assert!((w - 3.5).abs() < 1e-15);
    }

    #[test]
    fn malformed_interval_rejected() {
        assert!(vr_intervals(&[(2.0, 1.0)], 0.5).is_err());
        assert!(vr_intervals(&[(0.0, 1.0)], 0.0).is_err());
    }
}
