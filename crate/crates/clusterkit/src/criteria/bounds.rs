
use super::optimize::{optimize_scalar, OptimizeOptions, ScalarMax};
use super::report::{CriterionId, CriterionReport};
use crate::models::{
    ball_volume, AbstractPolymerSystem, BallSystem, ContinuousRodSystem, DiscreteRodSystem,
    LatticeShapeModel, NeighborhoodSummary, DEFAULT_SUBSET_CAP,
};
use crate::{Error, Result};

/// What a neighborhood-based criterion needs to know about one polymer:
/// `|Gamma(x)|` and, per compatible subset of `Gamma(x)`, the subset
/// size and `|Gamma(Y)|`.
#[derive(Debug, Clone)]
pub struct NeighborhoodProfile {
    pub gamma_size: usize,
    pub subsets: Vec<(usize, usize)>,
}

impl NeighborhoodProfile {
    pub fn from_summary(nb: &NeighborhoodSummary) -> Self {
        NeighborhoodProfile {
            gamma_size: nb.gamma_size(),
            subsets: nb
                .compatible_subsets
                .iter()
                .map(|s| (s.size(), s.gamma_closure_size))
                .collect(),
        }
    }

    /// Profile of the canonical translate of a lattice shape (all
    /// translates share it by translation invariance).
    pub fn of_lattice(model: &LatticeShapeModel) -> Result<Self> {
        let (system, center) = model.neighborhood_system()?;
        let nb = system.neighborhood(center, DEFAULT_SUBSET_CAP)?;
        Ok(Self::from_summary(&nb))
    }

    /// One profile per polymer of a finite abstract system.
    pub fn of_abstract(system: &AbstractPolymerSystem) -> Result<Vec<Self>> {
        (0..system.len())
            .map(|x| {
                let nb = system.neighborhood(x, DEFAULT_SUBSET_CAP)?;
                Ok(Self::from_summary(&nb))
            })
            .collect()
    }

    /// Independence-polynomial coefficients of `Gamma(x)`.
    pub fn independence_coefficients(&self) -> Vec<u64> {
        let max = self.subsets.iter().map(|&(s, _)| s).max().unwrap_or(0);
        let mut c = vec![0u64; max + 1];
        for &(s, _) in &self.subsets {
            c[s] += 1;
        }
        c
    }
}

/// `ln(e^x - 1)`, stable across the whole positive axis.
fn ln_exp_m1(x: f64) -> f64 {
    if x > 30.0 {
        x + (-(-x).exp()).ln_1p()
    } else {
        x.exp_m1().ln()
    }
}

/// `ln sum_i exp(t_i)`, skipping `-inf` terms.
fn log_sum_exp(terms: impl Iterator<Item = f64> + Clone) -> f64 {
    let m = terms.clone().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    m + terms.map(|t| (t - m).exp()).sum::<f64>().ln()
}

fn report(
    criterion: CriterionId,
    model_id: &str,
    strict: bool,
    r: ScalarMax,
) -> CriterionReport {
    CriterionReport {
        criterion,
        model_id: model_id.to_string(),
        z_max: r.max,
        optimal_param: r.argmax,
        attained: r.attained,
        strict,
        feasible_at: None,
        diagnostics: Some(r.diagnostics),
    }
}

fn worst_gamma(profiles: &[NeighborhoodProfile]) -> Result<usize> {
    profiles
        .iter()
        .map(|p| p.gamma_size)
        .max()
        .ok_or_else(|| Error::contract("empty polymer system"))
}

/// Kotecky-Preiss bound, hard-core specialization with constant ansatz:
/// `z |Gamma(x)| e^a <= a`, so `z_max = 1 / (e |Gamma(x)|)` with the
/// worst neighborhood taken over the system.
pub fn kp_bound(
    profiles: &[NeighborhoodProfile],
    model_id: &str,
    opts: OptimizeOptions,
) -> Result<CriterionReport> {
    let g = worst_gamma(profiles)? as f64;
    let r = optimize_scalar(|a| a * (-a).exp() / g, opts)?;
    Ok(report(CriterionId::Kp, model_id, false, r))
}

/// Fernandez-Procacci bound, hard-core with constant `mu`:
/// `z Xi_{Gamma(x)}(mu) <= mu` with `Xi` the independence polynomial of
/// the incompatibility graph restricted to `Gamma(x)`.
pub fn fp_bound(
    profiles: &[NeighborhoodProfile],
    model_id: &str,
    opts: OptimizeOptions,
) -> Result<CriterionReport> {
    worst_gamma(profiles)?;
    let coeffs: Vec<Vec<u64>> = profiles
        .iter()
        .map(|p| p.independence_coefficients())
        .collect();
    let r = optimize_scalar(
        |mu| {
            coeffs
                .iter()
                .map(|c| {
                    let xi: f64 = c
                        .iter()
                        .enumerate()
                        .map(|(s, &n)| n as f64 * mu.powi(s as i32))
                        .sum();
                    mu / xi
                })
                .fold(f64::INFINITY, f64::min)
        },
        opts,
    )?;
    Ok(report(CriterionId::Fp, model_id, false, r))
}

/// The improved condition with constant `mu`:
/// `z sum_Y mu^{|Y|} e^{mu |Gamma(Y)|} <= mu e^{mu |Gamma(x)|}`, the sum
/// running over compatible subsets of `Gamma(x)` including the empty one.
pub fn new_bound(
    profiles: &[NeighborhoodProfile],
    model_id: &str,
    opts: OptimizeOptions,
) -> Result<CriterionReport> {
    worst_gamma(profiles)?;
    let r = optimize_scalar(
        |mu| {
            profiles
                .iter()
                .map(|p| {
                    let ln_mu = mu.ln();
                    let denom = log_sum_exp(
                        p.subsets
                            .iter()
                            .map(|&(s, cl)| s as f64 * ln_mu + mu * cl as f64),
                    );
                    (ln_mu + mu * p.gamma_size as f64 - denom).exp()
                })
                .fold(f64::INFINITY, f64::min)
        },
        opts,
    )?;
    Ok(report(CriterionId::New, model_id, false, r))
}

/// Gruber-Kunz bound for a single lattice shape:
/// `|S| z e^{alpha |S|} <= e^alpha - 1`.
pub fn gk_bound(
    model: &LatticeShapeModel,
    model_id: &str,
    opts: OptimizeOptions,
) -> Result<CriterionReport> {
    let s = model.size() as f64;
    let r = optimize_scalar(
        |alpha| (ln_exp_m1(alpha) - s.ln() - alpha * s).exp(),
        opts,
    )?;
    Ok(report(CriterionId::Gk, model_id, false, r))
}

/// The lattice bound `|S| z e^{alpha V(S)} <= e^{alpha |S|} - 1`.
pub fn lgoof_bound(
    model: &LatticeShapeModel,
    model_id: &str,
    opts: OptimizeOptions,
) -> Result<CriterionReport> {
    let s = model.size() as f64;
    let v = model.v_of_shape() as f64;
    let r = optimize_scalar(
        |alpha| (ln_exp_m1(alpha * s) - s.ln() - alpha * v).exp(),
        opts,
    )?;
    Ok(report(CriterionId::Lgoof, model_id, false, r))
}

/// Closed-form optimum of the lattice bound for the side-`k` hypercube
/// in dimension `d`, divided by `(2k-1)^d` so it bounds `z` directly.
/// For `k = 1` the degenerate expression `0^0` is the supremum 1.
pub fn hypercube_closed_form(d: usize, k: usize) -> Result<f64> {
    if d == 0 || k == 0 {
        return Err(Error::contract("hypercube needs d >= 1 and k >= 1"));
    }
    let vs = (2.0 * k as f64 - 1.0).powi(d as i32);
    if k == 1 {
        return Ok(1.0 / vs);
    }
    let q = (2.0 - 1.0 / k as f64).powi(d as i32);
    Ok((1.0 - 1.0 / q).powf(q - 1.0) / vs)
}

/// Hard-sphere closed form `(1 - 2^{-d})^{2^d - 1} / |B_{2R}|`,
/// cross-validated against the continuum optimizer. The inequality is
/// strict.
pub fn hardsphere_bound(
    d: usize,
    radius: f64,
    model_id: &str,
    opts: OptimizeOptions,
) -> Result<CriterionReport> {
    if radius.is_nan() || radius <= 0.0 {
        return Err(Error::contract("sphere radius must be positive"));
    }
    let v_small = ball_volume(d, radius)?;
    let v_big = ball_volume(d, 2.0 * radius)?;
    let pd = (2.0f64).powi(d as i32);
    let closed = (1.0 - 1.0 / pd).powf(pd - 1.0) / v_big;
    let r = optimize_scalar(
        |alpha| (ln_exp_m1(alpha * v_small) - v_small.ln() - alpha * v_big).exp(),
        opts,
    )?;
    if (r.max - closed).abs() > 1e-9 {
        return Err(Error::numeric(format!(
            "hard-sphere optimizer ({}) disagrees with closed form ({closed})",
            r.max
        )));
    }
    let mut rep = report(CriterionId::HardSphere, model_id, true, r);
    rep.z_max = closed;
    Ok(rep)
}

/// Continuum Gruber-Kunz style bound for multi-type hard spheres:
/// `sum_l |B_{r_l}| e^{alpha |B_{r_l + r_1}|} z w_l < e^{alpha |B_{r_1}|} - 1`.
pub fn gk_cont_bound(
    system: &BallSystem,
    model_id: &str,
    opts: OptimizeOptions,
) -> Result<CriterionReport> {
    let d = system.dimension();
    let r1 = system.smallest_radius();
    let b1 = ball_volume(d, r1)?;
    let mut terms = Vec::new();
    for (&r, &w) in system.radii().iter().zip(system.weights()) {
        if w > 0.0 {
            let ln_coeff = (w * ball_volume(d, r)?).ln();
            terms.push((ln_coeff, ball_volume(d, r + r1)?));
        }
    }
    if terms.is_empty() {
        return Err(Error::contract("ball system has no active type"));
    }
    let r = optimize_scalar(
        |alpha| {
            let denom = log_sum_exp(terms.iter().map(|&(c, v)| c + alpha * v));
            (ln_exp_m1(alpha * b1) - denom).exp()
        },
        opts,
    )?;
    Ok(report(CriterionId::GkCont, model_id, true, r))
}

/// Exact convergence radius of the discrete Tonks gas:
/// `sum_l z w_l e^{alpha l} <= e^alpha - 1`, which is both sufficient
/// and necessary for these models.
pub fn tonks_discrete_bound(
    system: &DiscreteRodSystem,
    model_id: &str,
    opts: OptimizeOptions,
) -> Result<CriterionReport> {
    let terms: Vec<(f64, f64)> = system
        .lengths()
        .iter()
        .zip(system.weights_f64())
        .filter(|&(_, w)| w > 0.0)
        .map(|(&l, w)| (w.ln(), l as f64))
        .collect();
    if terms.is_empty() {
        return Err(Error::contract("rod system has no active type"));
    }
    let r = optimize_scalar(
        |alpha| {
            let denom = log_sum_exp(terms.iter().map(|&(c, l)| c + alpha * l));
            (ln_exp_m1(alpha) - denom).exp()
        },
        opts,
    )?;
    Ok(report(CriterionId::TonksDiscrete, model_id, false, r))
}

/// Continuous Tonks gas criterion `sum_l z w_l e^{alpha L_l} < alpha`.
pub fn tonks_continuous_bound(
    system: &ContinuousRodSystem,
    model_id: &str,
    opts: OptimizeOptions,
) -> Result<CriterionReport> {
    let terms: Vec<(f64, f64)> = system
        .lengths()
        .iter()
        .zip(system.weights())
        .filter(|&(_, &w)| w > 0.0)
        .map(|(&l, &w)| (w.ln(), l))
        .collect();
    if terms.is_empty() {
        return Err(Error::contract("rod system has no active type"));
    }
    let r = optimize_scalar(
        |alpha| {
            let denom = log_sum_exp(terms.iter().map(|&(c, l)| c + alpha * l));
            (alpha.ln() - denom).exp()
        },
        opts,
    )?;
    Ok(report(CriterionId::TonksContinuous, model_id, true, r))
}

/// Independent characterization of the discrete Tonks radius: the
/// largest `z` admitting a fixed point `h(u) <= u` of
/// `h(u) = 1 + sum_l z w_l u^l`. Bisection over `z` with an inner
/// convex minimization over `u`.
pub fn tonks_radius_fixed_point(system: &DiscreteRodSystem, tol: f64) -> Result<f64> {
    let weights = system.weights_f64();
    let lengths: Vec<f64> = system.lengths().iter().map(|&l| l as f64).collect();
    let feasible = |z: f64| -> bool {
        // Minimize h(u) - u over u >= 1; h is convex increasing.
        let g = |u: f64| -> f64 {
            1.0 + lengths
                .iter()
                .zip(&weights)
                .map(|(&l, &w)| z * w * u.powf(l))
                .sum::<f64>()
                - u
        };
        let mut hi = 2.0f64;
        while g(hi * 2.0) < g(hi) && hi < 1e12 {
            hi *= 2.0;
        }
        if hi >= 1e12 {
            // Still descending: the minimum is arbitrarily negative.
            return true;
        }
        hi *= 2.0;
        let (mut a, mut b) = (1.0f64, hi);
        for _ in 0..200 {
            let m1 = a + (b - a) / 3.0;
            let m2 = b - (b - a) / 3.0;
            if g(m1) < g(m2) {
                b = m2;
            } else {
                a = m1;
            }
        }
        g((a + b) / 2.0) <= 0.0
    };
    if !feasible(0.0) {
        return Err(Error::numeric("fixed-point check failed at z = 0"));
    }
    let mut z_hi = 1.0f64;
    let mut doublings = 0;
    while feasible(z_hi) {
        z_hi *= 2.0;
        doublings += 1;
        if doublings > 60 {
            return Err(Error::numeric("fixed-point radius did not bracket"));
        }
    }
    let (mut lo, mut hi) = (0.0f64, z_hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// A model reference the criterion dispatcher understands.
pub enum ModelRef<'a> {
    Abstract(&'a AbstractPolymerSystem),
    Lattice(&'a LatticeShapeModel),
    RodsDiscrete(&'a DiscreteRodSystem),
    RodsContinuous(&'a ContinuousRodSystem),
    Balls(&'a BallSystem),
}

impl ModelRef<'_> {
    /// Criteria that make sense for the model kind. Single-length
    /// discrete rods gain the lattice criteria through their shape
    /// model; single-radius ball systems gain the hard-sphere closed
    /// form.
    pub fn applicable_criteria(&self) -> Vec<CriterionId> {
        match self {
            ModelRef::Abstract(_) => vec![CriterionId::Kp, CriterionId::Fp, CriterionId::New],
            ModelRef::Lattice(_) => vec![
                CriterionId::Kp,
                CriterionId::Fp,
                CriterionId::New,
                CriterionId::Gk,
                CriterionId::Lgoof,
            ],
            ModelRef::RodsDiscrete(r) => {
                let mut out = vec![CriterionId::TonksDiscrete];
                if r.lengths().len() == 1 {
                    out.extend([
                        CriterionId::Kp,
                        CriterionId::Fp,
                        CriterionId::New,
                        CriterionId::Gk,
                        CriterionId::Lgoof,
                    ]);
                }
                out
            }
            ModelRef::RodsContinuous(_) => vec![CriterionId::TonksContinuous],
            ModelRef::Balls(b) => {
                let mut out = vec![CriterionId::GkCont];
                if b.radii().len() == 1 {
                    out.push(CriterionId::HardSphere);
                }
                out
            }
        }
    }

    fn as_lattice(&self) -> Result<LatticeShapeModel> {
        match self {
            ModelRef::Lattice(m) => Ok((*m).clone()),
            ModelRef::RodsDiscrete(r) if r.lengths().len() == 1 => {
                LatticeShapeModel::rod(r.lengths()[0] as usize, num::BigRational::from_integer(0.into()))
            }
            _ => Err(Error::contract(
                "criterion needs a lattice shape (or a single-length rod system)",
            )),
        }
    }

    fn neighborhood_profiles(&self) -> Result<Vec<NeighborhoodProfile>> {
        match self {
            ModelRef::Abstract(s) => NeighborhoodProfile::of_abstract(s),
            _ => Ok(vec![NeighborhoodProfile::of_lattice(&self.as_lattice()?)?]),
        }
    }
}

/// Evaluates one criterion on one model, dispatching on kind. Lattice
/// models that carry a positive activity also get a feasibility
/// verdict at that activity and the optimal parameter.
pub fn evaluate(
    model: &ModelRef,
    criterion: CriterionId,
    model_id: &str,
    opts: OptimizeOptions,
) -> Result<CriterionReport> {
    let mut report = evaluate_inner(model, criterion, model_id, opts)?;
    if let ModelRef::Lattice(m) = model {
        let z0 = crate::models::rational_to_f64(m.activity());
        if z0 > 0.0 {
            let ansatz = match criterion {
                CriterionId::Fp | CriterionId::New => {
                    super::feasibility::AnsatzSpec::ConstantMu(report.optimal_param)
                }
                _ => super::feasibility::AnsatzSpec::ConstantAlpha(report.optimal_param),
            };
            report.feasible_at =
                Some(super::feasibility::feasibility(model, criterion, z0, &ansatz)?);
        }
    }
    Ok(report)
}

fn evaluate_inner(
    model: &ModelRef,
    criterion: CriterionId,
    model_id: &str,
    opts: OptimizeOptions,
) -> Result<CriterionReport> {
    match criterion {
        CriterionId::Kp => kp_bound(&model.neighborhood_profiles()?, model_id, opts),
        CriterionId::Fp => fp_bound(&model.neighborhood_profiles()?, model_id, opts),
        CriterionId::New => new_bound(&model.neighborhood_profiles()?, model_id, opts),
        CriterionId::Gk => gk_bound(&model.as_lattice()?, model_id, opts),
        CriterionId::Lgoof => lgoof_bound(&model.as_lattice()?, model_id, opts),
        CriterionId::HardSphere => match model {
            ModelRef::Balls(b) if b.radii().len() == 1 => {
                hardsphere_bound(b.dimension(), b.radii()[0], model_id, opts)
            }
            _ => Err(Error::contract(
                "hard-sphere criterion needs a single-radius ball system",
            )),
        },
        CriterionId::GkCont => match model {
            ModelRef::Balls(b) => gk_cont_bound(b, model_id, opts),
            _ => Err(Error::contract("gk-cont criterion needs a ball system")),
        },
        CriterionId::TonksDiscrete => match model {
            ModelRef::RodsDiscrete(r) => tonks_discrete_bound(r, model_id, opts),
            _ => Err(Error::contract(
                "tonks-discrete criterion needs discrete rods",
            )),
        },
        CriterionId::TonksContinuous => match model {
            ModelRef::RodsContinuous(r) => tonks_continuous_bound(r, model_id, opts),
            _ => Err(Error::contract(
                "tonks-continuous criterion needs continuous rods",
            )),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn opts() -> OptimizeOptions {
        OptimizeOptions::default()
    }

    fn dimer_model() -> LatticeShapeModel {
        LatticeShapeModel::rod(2, ratio(0, 1)).unwrap()
    }

    #[test]
    fn kp_dimers_and_cubes() {
        let p = NeighborhoodProfile::of_lattice(&dimer_model()).unwrap();
        let r = kp_bound(&[p], "dimers", opts()).unwrap();
        assert!((r.z_max - 1.0 / (3.0 * std::f64::consts::E)).abs() < 1e-10);

        let cube = LatticeShapeModel::hypercube(2, 2, ratio(0, 1)).unwrap();
        let p = NeighborhoodProfile::of_lattice(&cube).unwrap();
        let r = kp_bound(&[p], "cubes", opts()).unwrap();
        assert!((r.z_max - 1.0 / (9.0 * std::f64::consts::E)).abs() < 1e-10);
    }

    #[test]
    fn fp_dimers_exact() {
        // Xi = 1 + 3 mu + mu^2, maximum 1/5 at mu = 1.
        let p = NeighborhoodProfile::of_lattice(&dimer_model()).unwrap();
        let r = fp_bound(&[p], "dimers", opts()).unwrap();
        assert!((r.z_max - 0.2).abs() < 1e-10);
        assert!((r.optimal_param - 1.0).abs() < 1e-6);
    }

    #[test]
    fn kp_monomer_closed_form() {
        let m = LatticeShapeModel::rod(1, ratio(0, 1)).unwrap();
        let p = NeighborhoodProfile::of_lattice(&m).unwrap();
        let r = kp_bound(&[p], "monomers", opts()).unwrap();
        assert!((r.z_max - (-1.0f64).exp()).abs() < 1e-10);
        assert!(r.attained);
    }

    #[test]
    fn fp_monomer_supremum() {
        let m = LatticeShapeModel::rod(1, ratio(0, 1)).unwrap();
        let p = NeighborhoodProfile::of_lattice(&m).unwrap();
        let r = fp_bound(&[p], "monomers", opts()).unwrap();
        assert!(!r.attained);
        assert!(r.z_max > 0.998 && r.z_max <= 1.0);
    }

    #[test]
    fn gk_and_lgoof_dimers() {
        let m = dimer_model();
        let gk = gk_bound(&m, "dimers", opts()).unwrap();
        assert!((gk.z_max - 0.125).abs() < 1e-10);
        assert!((gk.optimal_param - 2f64.ln()).abs() < 1e-6);
        let lg = lgoof_bound(&m, "dimers", opts()).unwrap();
        assert!((lg.z_max - 1.0 / (3.0 * 3f64.sqrt())).abs() < 1e-10);
    }

    #[test]
    fn hypercube_closed_forms() {
        // d=2, k=2: (5/9)^{5/4} / 9.
        let v = hypercube_closed_form(2, 2).unwrap();
        assert!((v - (5f64 / 9.0).powf(1.25) / 9.0).abs() < 1e-14);
        assert!((hypercube_closed_form(3, 1).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hard_spheres_d1() {
        let r = hardsphere_bound(1, 1.0, "rods", opts()).unwrap();
        assert!((r.z_max - 0.125).abs() < 1e-12);
        assert!(r.strict);
    }

    #[test]
    fn tonks_discrete_dimers() {
        let sys = DiscreteRodSystem::single(2).unwrap();
        let r = tonks_discrete_bound(&sys, "dimers", opts()).unwrap();
        assert!((r.z_max - 0.25).abs() < 1e-9);
        assert!((r.optimal_param - 2f64.ln()).abs() < 1e-6);
        let fixed = tonks_radius_fixed_point(&sys, 1e-10).unwrap();
        assert!((fixed - 0.25).abs() < 1e-8);
    }

    #[test]
    fn tonks_monomers_and_mixtures() {
        // Monomers: sup = 1 approached in the limit, matching the
        // radius of log(1 + z).
        let monomers = DiscreteRodSystem::single(1).unwrap();
        let r = tonks_discrete_bound(&monomers, "monomers", opts()).unwrap();
        assert!(!r.attained);
        assert!(r.z_max > 0.998 && r.z_max <= 1.0);
        // Mixture: optimizer and fixed-point characterization agree.
        let mix = DiscreteRodSystem::new(vec![1, 2], vec![ratio(1, 1); 2]).unwrap();
        let via_alpha = tonks_discrete_bound(&mix, "mix", opts()).unwrap().z_max;
        let via_h = tonks_radius_fixed_point(&mix, 1e-12).unwrap();
        assert!(via_alpha > 0.0 && via_alpha < 0.25);
        assert!((via_alpha - via_h).abs() < 1e-8, "{via_alpha} vs {via_h}");
    }

    #[test]
    fn hard_sphere_normalized_bound_decreases_toward_inv_e() {
        let inv_e = (-1.0f64).exp();
        let mut prev = f64::INFINITY;
        for d in 1..=10 {
            let r = hardsphere_bound(d, 1.0, "spheres", opts()).unwrap();
            let normalized = r.z_max * ball_volume(d, 2.0).unwrap();
            assert!(normalized > inv_e, "d={d}: {normalized}");
            assert!(normalized < prev, "d={d}: not decreasing");
            prev = normalized;
        }
    }

    #[test]
    fn tonks_continuous_mixture_below_single() {
        let mix = ContinuousRodSystem::new(vec![1.0, 2.0], vec![1.0, 1.0]).unwrap();
        let r = tonks_continuous_bound(&mix, "mix", opts()).unwrap();
        assert!(r.z_max < 1.0 / std::f64::consts::E - 1e-6);
    }

    #[test]
    fn tonks_continuous_single_lengths() {
        for len in [0.5, 1.0, 2.0] {
            let sys = ContinuousRodSystem::new(vec![len], vec![1.0]).unwrap();
            let r = tonks_continuous_bound(&sys, "tonks", opts()).unwrap();
            assert!(
                (r.z_max - 1.0 / (std::f64::consts::E * len)).abs() < 1e-9,
                "length {len}: {}",
                r.z_max
            );
        }
    }

    #[test]
    fn gk_cont_matches_hard_sphere_in_d1() {
        let balls = BallSystem::new(1, vec![1.0], vec![1.0]).unwrap();
        let r = gk_cont_bound(&balls, "balls", opts()).unwrap();
        assert!((r.z_max - 0.125).abs() < 1e-9);
        // Zero-weight second radius drops out.
        let balls2 = BallSystem::new(1, vec![1.0, 2.0], vec![1.0, 0.0]).unwrap();
        let r2 = gk_cont_bound(&balls2, "balls", opts()).unwrap();
        assert!((r2.z_max - r.z_max).abs() < 1e-10);
        // Equal weights strictly lower the bound.
        let balls3 = BallSystem::new(1, vec![1.0, 2.0], vec![1.0, 1.0]).unwrap();
        let r3 = gk_cont_bound(&balls3, "balls", opts()).unwrap();
        assert!(r3.z_max < r.z_max - 1e-6);
    }

    #[test]
    fn weight_scaling_inverts_the_bound() {
        let sys = DiscreteRodSystem::new(vec![1, 2], vec![ratio(1, 1), ratio(1, 1)]).unwrap();
        let scaled =
            DiscreteRodSystem::new(vec![1, 2], vec![ratio(3, 1), ratio(3, 1)]).unwrap();
        let a = tonks_discrete_bound(&sys, "m", opts()).unwrap().z_max;
        let b = tonks_discrete_bound(&scaled, "m", opts()).unwrap().z_max;
        assert!((a / b - 3.0).abs() < 1e-7);
    }
}
