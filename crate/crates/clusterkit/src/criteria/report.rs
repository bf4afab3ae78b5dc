use serde::Serialize;

use super::optimize::OptimizerDiagnostics;

/// The convergence criteria the crate evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriterionId {
    Kp,
    Fp,
    New,
    Gk,
    Lgoof,
    HardSphere,
    GkCont,
    TonksDiscrete,
    TonksContinuous,
}

impl CriterionId {
    pub const ALL: [CriterionId; 9] = [
        CriterionId::Kp,
        CriterionId::Fp,
        CriterionId::New,
        CriterionId::Gk,
        CriterionId::Lgoof,
        CriterionId::HardSphere,
        CriterionId::GkCont,
        CriterionId::TonksDiscrete,
        CriterionId::TonksContinuous,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CriterionId::Kp => "kp",
            CriterionId::Fp => "fp",
            CriterionId::New => "new",
            CriterionId::Gk => "gk",
            CriterionId::Lgoof => "lgoof",
            CriterionId::HardSphere => "hard-sphere",
            CriterionId::GkCont => "gk-cont",
            CriterionId::TonksDiscrete => "tonks-discrete",
            CriterionId::TonksContinuous => "tonks-continuous",
        }
    }

    pub fn parse(name: &str) -> Option<CriterionId> {
        CriterionId::ALL.iter().copied().find(|c| c.name() == name)
    }
}

impl std::fmt::Display for CriterionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of a feasibility check at a concrete `(z, ansatz)` pair.
#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityVerdict {
    pub holds: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub strict: bool,
    /// Polymer id of the tightest constraint, when the check is
    /// per-polymer.
    pub witness: Option<String>,
}

/// Supremal activity bound of one criterion on one model.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub criterion: CriterionId,
    pub model_id: String,
    pub z_max: f64,
    pub optimal_param: f64,
    /// Whether the supremum is attained at a finite parameter. When
    /// false, `z_max` is the best evaluated value; the supremum is
    /// approached only in the parameter limit.
    pub attained: bool,
    /// Whether the criterion's defining inequality is strict, in which
    /// case feasibility at `z = z_max` fails.
    pub strict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub feasible_at: Option<FeasibilityVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<OptimizerDiagnostics>,
}
