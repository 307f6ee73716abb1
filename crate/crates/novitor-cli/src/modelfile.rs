//! Model-file parsing, validation and canonical serialization.
//!
//! A model file is a UTF-8 JSON document selecting one of three
//! constructions by its `type` field:
//!
//! ```json
//! {"type":"torus","matrix":[[2,1],[1,1]]}
//! {"type":"nilmanifold","dim":3,"brackets":[{"i":1,"j":2,"coeffs":{"3":"1"}}],
//!  "automorphism":[[2,0,0],[0,1,0],[0,0,2]]}
//! {"type":"generic","betti":[1,2,1],"maps":[[[1]],[[2,1],[1,1]],[[1]]]}
//! ```
//!
//! Rational entries are `"p/q"` strings or plain JSON integers. An optional
//! `rigidity` block carries the twist and eigenvector for the rigidity
//! subcommand. Unknown keys are rejected.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use novitor::numfield::{field_make, FieldMake};
use novitor::{
    Bracket, CohomologyModel, Interval, LieAlgebraData, Matrix, ModelFoliationSpec, Poly, Rat,
    TwistScalar,
};

/// CLI-level failures, each mapping to a process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Input/validation problems: exit 1.
    Invalid(String),
    /// Factorization beyond the supported degree: exit 2.
    Unsupported(String),
    /// Core engine error carrying its own message: exit 1.
    Core(novitor::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Unsupported(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<novitor::Error> for CliError {
    fn from(e: novitor::Error) -> Self {
        match e {
            novitor::Error::UnsupportedFactorDegree(_) | novitor::Error::FactorizationOverflow => {
                CliError::Unsupported(e.to_string())
            }
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Unsupported(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RigidityBlock {
    pub mu: String,
    pub alpha: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<String, Rat>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct TorusFile {
    #[serde(rename = "type")]
    kind: String,
    matrix: Matrix<Rat>,
    #[serde(default)]
    rigidity: Option<RigidityBlock>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct NilmanifoldFile {
    #[serde(rename = "type")]
    kind: String,
    dim: usize,
    brackets: Vec<BracketSpec>,
    #[serde(default)]
    automorphism: Option<Matrix<Rat>>,
    #[serde(default)]
    rigidity: Option<RigidityBlock>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct GenericFile {
    #[serde(rename = "type")]
    kind: String,
    betti: Vec<usize>,
    maps: Vec<Matrix<Rat>>,
    #[serde(default)]
    rigidity: Option<RigidityBlock>,
}

/// A parsed, schema-valid model file.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelFile {
    Torus {
        matrix: Matrix<Rat>,
        rigidity: Option<RigidityBlock>,
    },
    Nilmanifold {
        dim: usize,
        brackets: Vec<BracketSpec>,
        automorphism: Option<Matrix<Rat>>,
        rigidity: Option<RigidityBlock>,
    },
    Generic {
        betti: Vec<usize>,
        maps: Vec<Matrix<Rat>>,
        rigidity: Option<RigidityBlock>,
    },
}

impl ModelFile {
    pub fn parse(text: &str) -> CliResult<ModelFile> {
        #[derive(Deserialize)]
        struct Tag {
            #[serde(rename = "type")]
            kind: String,
        }
        let tag: Tag = serde_json::from_str(text)
            .map_err(|e| CliError::Invalid(format!("invalid model file: {e}")))?;
        let schema = |e: serde_json::Error| CliError::Invalid(format!("invalid model file: {e}"));
        match tag.kind.as_str() {
            "torus" => {
                let f: TorusFile = serde_json::from_str(text).map_err(schema)?;
                Ok(ModelFile::Torus {
                    matrix: f.matrix,
                    rigidity: f.rigidity,
                })
            }
            "nilmanifold" => {
                let f: NilmanifoldFile = serde_json::from_str(text).map_err(schema)?;
                Ok(ModelFile::Nilmanifold {
                    dim: f.dim,
                    brackets: f.brackets,
                    automorphism: f.automorphism,
                    rigidity: f.rigidity,
                })
            }
            "generic" => {
                let f: GenericFile = serde_json::from_str(text).map_err(schema)?;
                Ok(ModelFile::Generic {
                    betti: f.betti,
                    maps: f.maps,
                    rigidity: f.rigidity,
                })
            }
            other => Err(CliError::Invalid(format!(
                "unknown model type `{other}` (expected torus | nilmanifold | generic)"
            ))),
        }
    }

    pub fn load(path: &std::path::Path) -> CliResult<ModelFile> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
        ModelFile::parse(&text)
    }

    /// Canonical JSON form; `serialize . parse` is idempotent.
    pub fn to_canonical_json(&self) -> serde_json::Value {
        match self {
            ModelFile::Torus { matrix, rigidity } => {
                let mut v = json!({"type": "torus", "matrix": matrix});
                if let Some(r) = rigidity {
                    v["rigidity"] = serde_json::to_value(r).expect("serializable");
                }
                v
            }
            ModelFile::Nilmanifold {
                dim,
                brackets,
                automorphism,
                rigidity,
            } => {
                let mut v = json!({"type": "nilmanifold", "dim": dim, "brackets": brackets});
                if let Some(a) = automorphism {
                    v["automorphism"] = serde_json::to_value(a).expect("serializable");
                }
                if let Some(r) = rigidity {
                    v["rigidity"] = serde_json::to_value(r).expect("serializable");
                }
                v
            }
            ModelFile::Generic {
                betti,
                maps,
                rigidity,
            } => {
                let mut v = json!({"type": "generic", "betti": betti, "maps": maps});
                if let Some(r) = rigidity {
                    v["rigidity"] = serde_json::to_value(r).expect("serializable");
                }
                v
            }
        }
    }

    pub fn rigidity_block(&self) -> Option<&RigidityBlock> {
        match self {
            ModelFile::Torus { rigidity, .. }
            | ModelFile::Nilmanifold { rigidity, .. }
            | ModelFile::Generic { rigidity, .. } => rigidity.as_ref(),
        }
    }

    /// The Lie algebra data of a nilmanifold file.
    pub fn lie_algebra(&self) -> CliResult<Option<LieAlgebraData>> {
        let ModelFile::Nilmanifold { dim, brackets, .. } = self else {
            return Ok(None);
        };
        let mut parsed = Vec::new();
        for b in brackets {
            let mut coeffs = Vec::new();
            for (key, value) in &b.coeffs {
                let k: usize = key.parse().map_err(|_| {
                    CliError::Invalid(format!("bracket coefficient key `{key}` is not an index"))
                })?;
                coeffs.push((k, value.clone()));
            }
            parsed.push(Bracket {
                i: b.i,
                j: b.j,
                coeffs,
            });
        }
        Ok(Some(LieAlgebraData::new(*dim, parsed)?))
    }

    /// Builds the cohomology model of the mapping torus fiber.
    pub fn build_model(&self) -> CliResult<CohomologyModel> {
        match self {
            ModelFile::Torus { matrix, .. } => Ok(CohomologyModel::torus(matrix)?),
            ModelFile::Nilmanifold { automorphism, .. } => {
                let g = self.lie_algebra()?.expect("nilmanifold file");
                let phi = automorphism.as_ref().ok_or_else(|| {
                    CliError::Invalid(
                        "nilmanifold file has no automorphism; only `ce` works without one".into(),
                    )
                })?;
                Ok(novitor::nilmanifold_model(&g, phi)?)
            }
            ModelFile::Generic { betti, maps, .. } => {
                Ok(CohomologyModel::generic(betti.clone(), maps.clone())?)
            }
        }
    }

    /// The rigidity spec from this file's rigidity block.
    pub fn rigidity_spec(&self) -> CliResult<ModelFoliationSpec> {
        let block = self.rigidity_block().ok_or_else(|| {
            CliError::Invalid("model file has no rigidity block (mu, alpha)".into())
        })?;
        let model = self.build_model()?;
        let mu = parse_mu(&block.mu)?;
        let alpha = block
            .alpha
            .iter()
            .map(|s| Poly::parse(s).map_err(CliError::from))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(ModelFoliationSpec::from_model(&model, alpha, mu)?)
    }
}

/// Twist grammar: a rational literal `p/q`, or `POLY in (lo,hi)` pinning
/// the unique root of the monic irreducible POLY inside the interval.
pub fn parse_mu(spec: &str) -> CliResult<TwistScalar> {
    let spec = spec.trim();
    match spec.split_once(" in ") {
        None => {
            let r: Rat = spec.parse().map_err(|_| {
                CliError::Invalid(format!(
                    "cannot parse twist `{spec}` (expected `p/q` or `POLY in (lo,hi)`)"
                ))
            })?;
            Ok(TwistScalar::rational(r)?)
        }
        Some((poly_text, range_text)) => {
            let poly = Poly::parse(poly_text)?;
            let range = range_text.trim();
            let inner = range
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| {
                    CliError::Invalid(format!("twist interval `{range}` must look like (lo,hi)"))
                })?;
            let (lo, hi) = inner.split_once(',').ok_or_else(|| {
                CliError::Invalid(format!("twist interval `{range}` must look like (lo,hi)"))
            })?;
            let lo: Rat = lo.trim().parse()?;
            let hi: Rat = hi.trim().parse()?;
            let field = match field_make(poly)? {
                FieldMake::Field(f) => f,
                FieldMake::Split(report) => {
                    return Err(CliError::Invalid(format!(
                        "twist modulus is not irreducible; it splits as {report}"
                    )));
                }
            };
            Ok(TwistScalar::algebraic(field, Interval::new(lo, hi)?)?)
        }
    }
}

/// Shared by `rigidity_spec` and the `verify` fallback.
pub fn twist_from_file_or_flag(file: &ModelFile, flag: Option<&str>) -> CliResult<TwistScalar> {
    match flag {
        Some(spec) => parse_mu(spec),
        None => {
            let block = file.rigidity_block().ok_or_else(|| {
                CliError::Invalid("no --mu given and the model file has no rigidity block".into())
            })?;
            parse_mu(&block.mu)
        }
    }
}

