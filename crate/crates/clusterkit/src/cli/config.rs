use std::collections::BTreeSet;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::graphkit::PointConfig;
use crate::models::{
    AbstractPolymerSystem, BallSystem, ContinuousRodSystem, DiscreteRodSystem, LatticeShapeModel,
};
use crate::{Error, Rational, Result};

/// On-disk configuration document: a schema tag and a model list.
/// Exact quantities (activities, discrete rod weights, Mayer entries)
/// cross the boundary as `"p/q"` strings so no float contamination
/// reaches the rational code paths.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDoc {
    schema: u32,
    models: Vec<RawModel>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum RawModel {
    Abstract {
        id: String,
        polymers: Vec<String>,
        #[serde(default)]
        activities: Option<Vec<String>>,
        #[serde(default)]
        incompatible: Vec<(String, String)>,
    },
    LatticeShape {
        id: String,
        dimension: usize,
        cells: Vec<Vec<i64>>,
        #[serde(default)]
        activity: Option<String>,
    },
    RodsDiscrete {
        id: String,
        lengths: Vec<u32>,
        #[serde(default)]
        weights: Option<Vec<String>>,
    },
    RodsContinuous {
        id: String,
        lengths: Vec<f64>,
        #[serde(default)]
        weights: Option<Vec<f64>>,
    },
    Balls {
        id: String,
        dimension: usize,
        radii: Vec<f64>,
        #[serde(default)]
        weights: Option<Vec<f64>>,
    },
    PointConfig {
        id: String,
        mayer: Vec<Vec<String>>,
    },
}

/// A parsed model with its id.
pub struct NamedModel {
    pub id: String,
    pub model: ParsedModel,
}

pub enum ParsedModel {
    Abstract(AbstractPolymerSystem),
    Lattice(LatticeShapeModel),
    RodsDiscrete(DiscreteRodSystem),
    RodsContinuous(ContinuousRodSystem),
    Balls(BallSystem),
    Points(PointConfig),
}

impl ParsedModel {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ParsedModel::Abstract(_) => "abstract",
            ParsedModel::Lattice(_) => "lattice-shape",
            ParsedModel::RodsDiscrete(_) => "rods-discrete",
            ParsedModel::RodsContinuous(_) => "rods-continuous",
            ParsedModel::Balls(_) => "balls",
            ParsedModel::Points(_) => "point-config",
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim())
        .map_err(|e| Error::config(format!("bad rational {s:?}: {e}")))
}

/// Loads and validates a config file; returns the models and the
/// sha256 digest of the raw bytes.
pub fn load_config(path: &Path) -> Result<(Vec<NamedModel>, String)> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
    let digest = format!("sha256:{}", hex_string(&Sha256::digest(&bytes)));
    let doc: ConfigDoc = serde_json::from_slice(&bytes)
        .map_err(|e| Error::config(format!("malformed config: {e}")))?;
    if doc.schema != 1 {
        return Err(Error::config(format!(
            "unsupported schema {} (expected 1)",
            doc.schema
        )));
    }
    let mut ids = BTreeSet::new();
    let mut models = Vec::new();
    for raw in doc.models {
        let named = parse_model(raw)?;
        if !ids.insert(named.id.clone()) {
            return Err(Error::config(format!("duplicate model id {:?}", named.id)));
        }
        models.push(named);
    }
    if models.is_empty() {
        return Err(Error::config("config contains no models"));
    }
    Ok((models, digest))
}

fn parse_model(raw: RawModel) -> Result<NamedModel> {
    match raw {
        RawModel::Abstract {
            id,
            polymers,
            activities,
            incompatible,
        } => {
            if polymers.is_empty() {
                return Err(Error::config(format!("model {id:?}: empty polymer list")));
            }
            let acts = match activities {
                Some(a) => a
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?,
                None => vec![Rational::from_integer(0.into()); polymers.len()],
            };
            let mut pairs = Vec::new();
            for (a, b) in &incompatible {
                let ia = polymers.iter().position(|p| p == a).ok_or_else(|| {
                    Error::config(format!("model {id:?}: unknown polymer {a:?}"))
                })?;
                let ib = polymers.iter().position(|p| p == b).ok_or_else(|| {
                    Error::config(format!("model {id:?}: unknown polymer {b:?}"))
                })?;
                pairs.push((ia, ib));
            }
            let system = AbstractPolymerSystem::new(polymers, acts, &pairs)
                .map_err(|e| Error::config(format!("model {id:?}: {e}")))?;
            Ok(NamedModel {
                id,
                model: ParsedModel::Abstract(system),
            })
        }
        RawModel::LatticeShape {
            id,
            dimension,
            cells,
            activity,
        } => {
            if cells.is_empty() {
                return Err(Error::config(format!(
                    "model {id:?}: shape must have at least one cell"
                )));
            }
            let z = match activity {
                Some(s) => parse_rational(&s)?,
                None => Rational::from_integer(0.into()),
            };
            let model = LatticeShapeModel::new(dimension, cells, z)
                .map_err(|e| Error::config(format!("model {id:?}: shape: {e}")))?;
            Ok(NamedModel {
                id,
                model: ParsedModel::Lattice(model),
            })
        }
        RawModel::RodsDiscrete { id, lengths, weights } => {
            let w = match weights {
                Some(w) => w
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?,
                None => vec![Rational::from_integer(1.into()); lengths.len()],
            };
            let sys = DiscreteRodSystem::new(lengths, w)
                .map_err(|e| Error::config(format!("model {id:?}: {e}")))?;
            Ok(NamedModel {
                id,
                model: ParsedModel::RodsDiscrete(sys),
            })
        }
        RawModel::RodsContinuous { id, lengths, weights } => {
            let n = lengths.len();
            let sys = ContinuousRodSystem::new(lengths, weights.unwrap_or(vec![1.0; n]))
                .map_err(|e| Error::config(format!("model {id:?}: {e}")))?;
            Ok(NamedModel {
                id,
                model: ParsedModel::RodsContinuous(sys),
            })
        }
        RawModel::Balls {
            id,
            dimension,
            radii,
            weights,
        } => {
            let n = radii.len();
            let sys = BallSystem::new(dimension, radii, weights.unwrap_or(vec![1.0; n]))
                .map_err(|e| Error::config(format!("model {id:?}: {e}")))?;
            Ok(NamedModel {
                id,
                model: ParsedModel::Balls(sys),
            })
        }
        RawModel::PointConfig { id, mayer } => {
            let rows = mayer
                .iter()
                .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let cfg = PointConfig::from_matrix(rows)
                .map_err(|e| Error::config(format!("model {id:?}: mayer: {e}")))?;
            Ok(NamedModel {
                id,
                model: ParsedModel::Points(cfg),
            })
        }
    }
}

pub fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn lattice_roundtrip() {
        let f = write_tmp(
            r#"{"schema":1,"models":[{"kind":"lattice-shape","id":"cubes",
                "dimension":2,"cells":[[0,0],[0,1],[1,0],[1,1]],"activity":"1/20"}]}"#,
        );
        let (models, digest) = load_config(f.path()).unwrap();
        assert_eq!(models.len(), 1);
        assert!(digest.starts_with("sha256:"));
        match &models[0].model {
            ParsedModel::Lattice(m) => assert_eq!(m.size(), 4),
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn empty_shape_is_config_error() {
        let f = write_tmp(
            r#"{"schema":1,"models":[{"kind":"lattice-shape","id":"bad","dimension":1,"cells":[]}]}"#,
        );
        let err = match load_config(f.path()) {
            Err(e) => e,
            Ok(_) => panic!("empty shape accepted"),
        };
        assert!(err.to_string().contains("shape"), "{err}");
    }

    #[test]
    fn duplicate_ids_rejected() {
        let f = write_tmp(
            r#"{"schema":1,"models":[
                {"kind":"rods-discrete","id":"m","lengths":[2]},
                {"kind":"rods-discrete","id":"m","lengths":[3]}]}"#,
        );
        assert!(load_config(f.path()).is_err());
    }

    #[test]
    fn rationals_parse_both_forms() {
        assert_eq!(parse_rational("1/10").unwrap(), crate::ratio(1, 10));
        assert_eq!(parse_rational("3").unwrap(), crate::ratio(3, 1));
        assert!(parse_rational("0.5").is_err());
    }
}
