use serde::Serialize;

use crate::{Error, Result};

/// Diagnostics of a scalar maximization run.
#[derive(Debug, Clone, Serialize)]
pub struct OptimizerDiagnostics {
    pub evaluations: u64,
    pub bracket: (f64, f64),
    pub tol: f64,
}

/// Result of maximizing a positive objective over `(0, inf)`.
#[derive(Debug, Clone)]
pub struct ScalarMax {
    pub argmax: f64,
    pub max: f64,
    /// False when the bracketing expansion hit the parameter ceiling
    /// while the objective was still rising: the supremum is approached
    /// only in the limit and `max` is the best evaluated value.
    pub attained: bool,
    pub diagnostics: OptimizerDiagnostics,
}

#[derive(Debug, Clone, Copy)]
pub struct OptimizeOptions {
    /// Absolute tolerance on the parameter.
    pub tol: f64,
    /// Left end of the bracketing expansion.
    pub start: f64,
    /// Parameter ceiling; hitting it while rising flags `attained = false`.
    pub ceiling: f64,
    /// Size of the cross-validation grid.
    pub grid_points: usize,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            tol: 1e-10,
            start: 1e-6,
            ceiling: 1e3,
            grid_points: 1024,
        }
    }
}

impl OptimizeOptions {
    pub fn with_tol(tol: f64) -> Self {
        OptimizeOptions {
            tol,
            ..Default::default()
        }
    }
}

struct Evaluator<'a> {
    f: &'a dyn Fn(f64) -> f64,
    evaluations: u64,
}

impl<'a> Evaluator<'a> {
    fn eval(&mut self, x: f64) -> Result<f64> {
        self.evaluations += 1;
        let v = (self.f)(x);
        if v.is_nan() || v.is_infinite() {
            return Err(Error::numeric(format!(
                "objective returned {v} at parameter {x}"
            )));
        }
        Ok(v)
    }
}

/// Maximizes a continuous objective over `(0, inf)`.
///
/// Bracket: geometric expansion from `start`, doubling the parameter
/// until three consecutive decreases are seen (or the ceiling is hit).
/// Refine: golden-section until the interval is within `tol`. The
/// result is cross-validated against a log-spaced grid over
/// `[start, ceiling]`; if the grid finds a value better by more than
/// `10 * tol`, a second golden-section pass reseeds from the grid
/// maximum.
pub fn optimize_scalar(f: impl Fn(f64) -> f64, opts: OptimizeOptions) -> Result<ScalarMax> {
    let mut ev = Evaluator {
        f: &f,
        evaluations: 0,
    };

    // Expansion.
    let mut params = vec![opts.start];
    let mut values = vec![ev.eval(opts.start)?];
    let mut decreases = 0usize;
    let mut hit_ceiling_rising = false;
    loop {
        let next = params.last().unwrap() * 2.0;
        if next > opts.ceiling {
            let m = values.len() - 1;
            // Rising (or flat) at the edge: the sup may sit in the limit.
            hit_ceiling_rising = m == 0 || values[m] >= values[m - 1];
            break;
        }
        let v = ev.eval(next)?;
        if v < *values.last().unwrap() {
            decreases += 1;
        } else {
            decreases = 0;
        }
        params.push(next);
        values.push(v);
        if decreases >= 3 {
            break;
        }
    }
    let best = (0..values.len())
        .max_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap();
    let lo = params[best.saturating_sub(1)];
    let hi = params[(best + 1).min(params.len() - 1)];

    let (mut argmax, mut max) = golden_section(&mut ev, lo, hi, opts.tol)?;
    let bracket = (lo, hi);

    // Grid cross-validation.
    let mut grid_best = (opts.start, f64::NEG_INFINITY);
    let ratio = (opts.ceiling / opts.start).powf(1.0 / (opts.grid_points as f64 - 1.0));
    let mut x = opts.start;
    for _ in 0..opts.grid_points {
        let v = ev.eval(x)?;
        if v > grid_best.1 {
            grid_best = (x, v);
        }
        x *= ratio;
    }
    if grid_best.1 > max + 10.0 * opts.tol {
        let lo2 = grid_best.0 / ratio;
        let hi2 = (grid_best.0 * ratio).min(opts.ceiling);
        let (a2, m2) = golden_section(&mut ev, lo2, hi2, opts.tol)?;
        if m2 > max {
            argmax = a2;
            max = m2;
        }
    }
    if grid_best.1 > max {
        argmax = grid_best.0;
        max = grid_best.1;
    }

    Ok(ScalarMax {
        argmax,
        max,
        attained: !hit_ceiling_rising,
        diagnostics: OptimizerDiagnostics {
            evaluations: ev.evaluations,
            bracket,
            tol: opts.tol,
        },
    })
}

fn golden_section(ev: &mut Evaluator, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = ev.eval(x1)?;
    let mut f2 = ev.eval(x2)?;
    while b - a > tol {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = ev.eval(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = ev.eval(x2)?;
        }
    }
    Ok(if f1 > f2 { (x1, f1) } else { (x2, f2) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_exp_decay() {
        // max of a*exp(-a) is 1/e at a = 1.
        let r = optimize_scalar(|a| a * (-a).exp(), OptimizeOptions::default()).unwrap();
        assert!((r.argmax - 1.0).abs() < 1e-8);
        assert!((r.max - (-1.0f64).exp()).abs() < 1e-12);
        assert!(r.attained);
    }

    #[test]
    fn shifted_stationary_point() {
        // max of (e^a - 1) e^{-2a} is 1/4 at a = ln 2, written in the
        // overflow-safe form e^{-a} - e^{-2a}.
        let r = optimize_scalar(
            |a| (-a).exp() - (-2.0 * a).exp(),
            OptimizeOptions::default(),
        )
        .unwrap();
        assert!((r.argmax - 2f64.ln()).abs() < 1e-8);
        assert!((r.max - 0.25).abs() < 1e-12);
    }

    #[test]
    fn plateau_reports_the_constant() {
        let r = optimize_scalar(|_| 0.75, OptimizeOptions::default()).unwrap();
        assert_eq!(r.max, 0.75);
        assert!(!r.attained);
    }

    #[test]
    fn rising_objective_not_attained() {
        // mu / (1 + mu) rises towards 1.
        let r = optimize_scalar(|m| m / (1.0 + m), OptimizeOptions::default()).unwrap();
        assert!(!r.attained);
        assert!(r.max > 0.998);
    }

    #[test]
    fn nan_is_a_numeric_error() {
        let r = optimize_scalar(|x| if x > 1.0 { f64::NAN } else { x }, OptimizeOptions::default());
        assert!(matches!(r, Err(Error::Numeric(_))));
    }
}
