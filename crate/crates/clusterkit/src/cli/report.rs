use std::collections::BTreeMap;

use serde::Serialize;

use crate::criteria::CriterionReport;
use crate::Result;

pub const TOOL_NAME: &str = "clusterkit";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const REPORT_SCHEMA: u32 = 1;

/// The deterministic run report. Reports are byte-identical across
/// repeated runs with the same config, seed and tolerances; per-task
/// wall clock goes to stderr instead of the report.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    pub tasks: Vec<TaskResult>,
}

impl RunReport {
    pub fn new() -> Self {
        RunReport {
            tool: TOOL_NAME,
            version: TOOL_VERSION,
            schema: REPORT_SCHEMA,
            config_digest: None,
            seed: None,
            tol: None,
            tasks: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// CSV over the criterion rows, 9 significant digits per float.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "model_id,criterion,z_max,optimal_param,attained,strict,evaluations\n",
        );
        for task in &self.tasks {
            if let TaskResult::Criterion { report } = task {
                let evals = report
                    .diagnostics
                    .as_ref()
                    .map(|d| d.evaluations)
                    .unwrap_or(0);
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    report.model_id,
                    report.criterion,
                    sig9(report.z_max),
                    sig9(report.optimal_param),
                    report.attained,
                    report.strict,
                    evals
                ));
            }
        }
        out
    }
}

impl Default for RunReport {
    fn default() -> Self {
        Self::new()
    }
}

/// Renders with 9 significant digits.
pub fn sig9(x: f64) -> String {
    format!("{x:.8e}")
}

#[derive(Debug, Serialize)]
#[serde(tag = "task", rename_all = "kebab-case")]
pub enum TaskResult {
    Criterion {
        report: CriterionReport,
    },
    Verify {
        suite: String,
        seed: u64,
        trials: u64,
        counterexamples: Vec<String>,
        stats: BTreeMap<String, String>,
    },
    Tn {
        model_id: String,
        domain: String,
        z: String,
        mode: String,
        entries: Vec<TnEntry>,
    },
    Beta {
        trials: u64,
        seed: u64,
        q_max: usize,
        mu_max: f64,
        min_beta: f64,
    },
}

#[derive(Debug, Serialize)]
pub struct TnEntry {
    pub n: u32,
    pub exact: String,
    pub float: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direct_equal: Option<bool>,
}

/// Writes the report in the requested format(s); with no output path
/// the rendering goes to stdout.
pub fn emit(
    report: &RunReport,
    format: &str,
    out: Option<&std::path::Path>,
) -> Result<()> {
    let render = |fmt: &str| -> String {
        match fmt {
            "csv" => report.to_csv(),
            _ => report.to_json(),
        }
    };
    match out {
        None => {
            match format {
                "both" => {
                    print!("{}", render("json"));
                    print!("{}", render("csv"));
                }
                f => print!("{}", render(f)),
            }
            Ok(())
        }
        Some(path) => {
            match format {
                "both" => {
                    std::fs::write(path.with_extension("json"), render("json"))?;
                    std::fs::write(path.with_extension("csv"), render("csv"))?;
                }
                "csv" => std::fs::write(path, render("csv"))?,
                _ => std::fs::write(path, render("json"))?,
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(sig9(0.057271029), "5.72710290e-2");
        assert_eq!(sig9(0.25), "2.50000000e-1");
    }
}
