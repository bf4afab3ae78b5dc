use super::bounds::{ModelRef, NeighborhoodProfile};
use super::report::{CriterionId, FeasibilityVerdict};
use crate::models::{ball_volume, AbstractPolymerSystem, DEFAULT_SUBSET_CAP};
use crate::{Error, Result};

/// Ansatz parameter supplied to a feasibility check. Constant ansatz
/// values drive both optimization and feasibility; per-polymer maps are
/// supported in feasibility checks only.
#[derive(Debug, Clone)]
pub enum AnsatzSpec {
    ConstantAlpha(f64),
    ConstantMu(f64),
    PerPolymerMu(Vec<f64>),
    PerPolymerA(Vec<f64>),
}

impl AnsatzSpec {
    fn validate(&self) -> Result<()> {
        let ok = match self {
            AnsatzSpec::ConstantAlpha(a) | AnsatzSpec::ConstantMu(a) => *a >= 0.0,
            AnsatzSpec::PerPolymerMu(v) | AnsatzSpec::PerPolymerA(v) => {
                v.iter().all(|&x| x >= 0.0)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::contract("ansatz values must be non-negative"))
        }
    }
}

fn verdict(lhs: f64, rhs: f64, strict: bool, witness: Option<String>) -> FeasibilityVerdict {
    let holds = if strict { lhs < rhs } else { lhs <= rhs };
    FeasibilityVerdict {
        holds,
        lhs,
        rhs,
        strict,
        witness,
    }
}

/// Worst constraint over a family: the entry maximizing `lhs - rhs`.
fn worst(
    entries: impl Iterator<Item = (f64, f64, Option<String>)>,
    strict: bool,
) -> Result<FeasibilityVerdict> {
    let mut worst: Option<(f64, f64, Option<String>)> = None;
    for (lhs, rhs, w) in entries {
        let slack = lhs - rhs;
        if worst.as_ref().is_none_or(|(l, r, _)| slack > l - r) {
            worst = Some((lhs, rhs, w));
        }
    }
    let (lhs, rhs, w) = worst.ok_or_else(|| Error::contract("empty constraint family"))?;
    Ok(verdict(lhs, rhs, strict, w))
}

/// Evaluates a criterion's defining inequality at a concrete activity
/// and ansatz, reporting both sides. Strict criteria fail at equality.
pub fn feasibility(
    model: &ModelRef,
    criterion: CriterionId,
    z: f64,
    ansatz: &AnsatzSpec,
) -> Result<FeasibilityVerdict> {
    ansatz.validate()?;
    if z.is_nan() || z < 0.0 {
        return Err(Error::contract("activity must be non-negative"));
    }
    match criterion {
        CriterionId::Kp => match ansatz {
            AnsatzSpec::ConstantAlpha(a) => {
                let profiles = neighborhood_profiles(model)?;
                worst(
                    profiles.iter().map(|p| {
                        (z * p.gamma_size as f64 * a.exp(), *a, None)
                    }),
                    false,
                )
            }
            AnsatzSpec::PerPolymerA(values) => {
                let system = require_abstract(model)?;
                check_lengths(system, values)?;
                worst(
                    (0..system.len()).map(|x| {
                        let lhs: f64 = system
                            .gamma(x)
                            .iter()
                            .map(|&y| z * values[y].exp())
                            .sum();
                        (lhs, values[x], Some(system.id(x).to_string()))
                    }),
                    false,
                )
            }
            _ => Err(Error::contract("kp feasibility takes an alpha ansatz")),
        },
        CriterionId::Fp => match ansatz {
            AnsatzSpec::ConstantMu(mu) => {
                let profiles = neighborhood_profiles(model)?;
                worst(
                    profiles.iter().map(|p| {
                        let xi: f64 = p
                            .independence_coefficients()
                            .iter()
                            .enumerate()
                            .map(|(s, &n)| n as f64 * mu.powi(s as i32))
                            .sum();
                        (z * xi, *mu, None)
                    }),
                    false,
                )
            }
            AnsatzSpec::PerPolymerMu(mu) => {
                let system = require_abstract(model)?;
                check_lengths(system, mu)?;
                worst(
                    (0..system.len()).map(|x| {
                        let nb = system.neighborhood(x, DEFAULT_SUBSET_CAP).unwrap();
                        let xi: f64 = nb
                            .compatible_subsets
                            .iter()
                            .map(|s| s.members.iter().map(|&y| mu[y]).product::<f64>())
                            .sum();
                        (z * xi, mu[x], Some(system.id(x).to_string()))
                    }),
                    false,
                )
            }
            _ => Err(Error::contract("fp feasibility takes a mu ansatz")),
        },
        CriterionId::New => match ansatz {
            AnsatzSpec::ConstantMu(mu) => {
                let profiles = neighborhood_profiles(model)?;
                worst(
                    profiles.iter().map(|p| {
                        let lhs: f64 = p
                            .subsets
                            .iter()
                            .map(|&(s, cl)| {
                                z * mu.powi(s as i32) * (mu * cl as f64).exp()
                            })
                            .sum();
                        let rhs = mu * (mu * p.gamma_size as f64).exp();
                        (lhs, rhs, None)
                    }),
                    false,
                )
            }
            AnsatzSpec::PerPolymerMu(mu) => {
                let system = require_abstract(model)?;
                check_lengths(system, mu)?;
                worst(
                    (0..system.len()).map(|x| {
                        let nb = system.neighborhood(x, DEFAULT_SUBSET_CAP).unwrap();
                        let lhs: f64 = nb
                            .compatible_subsets
                            .iter()
                            .map(|s| {
                                let prod: f64 =
                                    s.members.iter().map(|&y| mu[y]).product();
                                let closure: f64 = (0..system.len())
                                    .filter(|&w| {
                                        s.members.iter().any(|&y| system.incompatible(y, w))
                                    })
                                    .map(|w| mu[w])
                                    .sum();
                                z * prod * closure.exp()
                            })
                            .sum();
                        let gamma_weight: f64 =
                            system.gamma(x).iter().map(|&w| mu[w]).sum();
                        (lhs, mu[x] * gamma_weight.exp(), Some(system.id(x).to_string()))
                    }),
                    false,
                )
            }
            _ => Err(Error::contract("new-condition feasibility takes a mu ansatz")),
        },
        CriterionId::Gk | CriterionId::Lgoof => {
            let alpha = require_alpha(ansatz, criterion)?;
            let lattice = match model {
                ModelRef::Lattice(m) => (*m).clone(),
                ModelRef::RodsDiscrete(r) if r.lengths().len() == 1 => {
                    crate::models::LatticeShapeModel::rod(
                        r.lengths()[0] as usize,
                        num::BigRational::from_integer(0.into()),
                    )?
                }
                _ => return Err(Error::contract("criterion needs a lattice shape")),
            };
            let s = lattice.size() as f64;
            let (lhs, rhs) = if criterion == CriterionId::Gk {
                (s * z * (alpha * s).exp(), alpha.exp() - 1.0)
            } else {
                let v = lattice.v_of_shape() as f64;
                (s * z * (alpha * v).exp(), (alpha * s).exp() - 1.0)
            };
            Ok(verdict(lhs, rhs, false, None))
        }
        CriterionId::HardSphere => {
            let alpha = require_alpha(ansatz, criterion)?;
            match model {
                ModelRef::Balls(b) if b.radii().len() == 1 => {
                    let d = b.dimension();
                    let v_small = ball_volume(d, b.radii()[0])?;
                    let v_big = ball_volume(d, 2.0 * b.radii()[0])?;
                    let lhs = v_small * z * (alpha * v_big).exp();
                    let rhs = (alpha * v_small).exp() - 1.0;
                    Ok(verdict(lhs, rhs, true, None))
                }
                _ => Err(Error::contract(
                    "hard-sphere feasibility needs a single-radius ball system",
                )),
            }
        }
        CriterionId::GkCont => {
            let alpha = require_alpha(ansatz, criterion)?;
            match model {
                ModelRef::Balls(b) => {
                    let d = b.dimension();
                    let r1 = b.smallest_radius();
                    let mut lhs = 0.0;
                    for (&r, &w) in b.radii().iter().zip(b.weights()) {
                        lhs += w * ball_volume(d, r)? * z * (alpha * ball_volume(d, r + r1)?).exp();
                    }
                    let rhs = (alpha * ball_volume(d, r1)?).exp() - 1.0;
                    Ok(verdict(lhs, rhs, true, None))
                }
                _ => Err(Error::contract("gk-cont feasibility needs a ball system")),
            }
        }
        CriterionId::TonksDiscrete => {
            let alpha = require_alpha(ansatz, criterion)?;
            match model {
                ModelRef::RodsDiscrete(r) => {
                    let lhs: f64 = r
                        .lengths()
                        .iter()
                        .zip(r.weights_f64())
                        .map(|(&l, w)| z * w * (alpha * l as f64).exp())
                        .sum();
                    Ok(verdict(lhs, alpha.exp() - 1.0, false, None))
                }
                _ => Err(Error::contract("tonks-discrete feasibility needs discrete rods")),
            }
        }
        CriterionId::TonksContinuous => {
            let alpha = require_alpha(ansatz, criterion)?;
            match model {
                ModelRef::RodsContinuous(r) => {
                    let lhs: f64 = r
                        .lengths()
                        .iter()
                        .zip(r.weights())
                        .map(|(&l, &w)| z * w * (alpha * l).exp())
                        .sum();
                    Ok(verdict(lhs, alpha, true, None))
                }
                _ => Err(Error::contract(
                    "tonks-continuous feasibility needs continuous rods",
                )),
            }
        }
    }
}

fn require_alpha(ansatz: &AnsatzSpec, criterion: CriterionId) -> Result<f64> {
    match ansatz {
        AnsatzSpec::ConstantAlpha(a) => Ok(*a),
        _ => Err(Error::contract(format!(
            "{criterion} feasibility takes a constant alpha ansatz"
        ))),
    }
}

fn require_abstract<'a>(model: &'a ModelRef) -> Result<&'a AbstractPolymerSystem> {
    match model {
        ModelRef::Abstract(s) => Ok(s),
        _ => Err(Error::contract(
            "per-polymer ansatz is supported for abstract systems only",
        )),
    }
}

fn check_lengths(system: &AbstractPolymerSystem, values: &[f64]) -> Result<()> {
    if values.len() != system.len() {
        return Err(Error::contract(format!(
            "per-polymer ansatz has {} values for {} polymers",
            values.len(),
            system.len()
        )));
    }
    Ok(())
}

fn neighborhood_profiles(model: &ModelRef) -> Result<Vec<NeighborhoodProfile>> {
    match model {
        ModelRef::Abstract(s) => NeighborhoodProfile::of_abstract(s),
        ModelRef::Lattice(m) => Ok(vec![NeighborhoodProfile::of_lattice(m)?]),
        ModelRef::RodsDiscrete(r) if r.lengths().len() == 1 => {
            let m = crate::models::LatticeShapeModel::rod(
                r.lengths()[0] as usize,
                num::BigRational::from_integer(0.into()),
            )?;
            Ok(vec![NeighborhoodProfile::of_lattice(&m)?])
        }
        _ => Err(Error::contract(
            "neighborhood criteria need an abstract system or lattice shape",
        )),
    }
}
