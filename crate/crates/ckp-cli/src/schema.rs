//! The self-describing instance file.
//!
//! One JSON document carries everything an experiment needs; optional
//! sections enable the per-condition commands. Indices are 0-based on the
//! wire. Numbers round-trip bit-faithfully: serialization uses shortest
//! round-trip decimal formatting.
//!
//! ```json
//! {
//!   "points": ["p0", "p1", "p2"],
//!   "dist": [[0.0, 1.0, 3.0], [1.0, 0.0, 2.0], [3.0, 2.0, 0.0]],
//!   "anchor": 0,
//!   "map": [1, 1, 0],
//!   "partition": [[0, 1], [1, 2]],
//!   "pata": {"Lambda": 3.0, "alpha": 1.0, "beta": 1.0,
//!            "psi": {"kind": "power", "p": 1.0, "c": 1.0}},
//!   "grid": {"points": 101}
//! }
//! ```

use ckp_core::certify::{EpsilonGrid, PataParams};
use ckp_core::gen::GeneratedInstance;
use ckp_core::{AnchoredSpace, CyclicRepresentation, FiniteMetricSpace, SelfMap};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Grid section: either a uniform point count or explicit values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    Points { points: usize },
    Values { values: Vec<f64> },
}

/// The instance wire format. `anchor` defaults to point 0; `map`,
/// `partition`, `pata`, and `grid` are present only when the workflow needs
/// them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub points: Vec<String>,
    pub dist: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pata: Option<PataParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
}

impl InstanceFile {
    /// Number of points declared by the labels.
    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    /// Builds the validated space, with an optional explicit metric
    /// tolerance.
    pub fn space(&self, tau: Option<f64>) -> Result<FiniteMetricSpace, CliError> {
        let space = match tau {
            Some(tau) => {
                FiniteMetricSpace::with_tolerance(self.points.clone(), self.dist.clone(), tau)?
            }
            None => FiniteMetricSpace::new(self.points.clone(), self.dist.clone())?,
        };
        Ok(space)
    }

    /// The anchor index, defaulting to point 0.
    pub fn anchor(&self) -> usize {
        self.anchor.unwrap_or(0)
    }

    pub fn anchored(&self, tau: Option<f64>) -> Result<AnchoredSpace, CliError> {
        Ok(AnchoredSpace::new(self.space(tau)?, self.anchor())?)
    }

    /// The self-map; an error when the section is missing.
    pub fn require_map(&self) -> Result<SelfMap, CliError> {
        let image = self
            .map
            .clone()
            .ok_or_else(|| CliError::Usage("instance has no \"map\" section".into()))?;
        if image.len() != self.n_points() {
            return Err(CliError::Usage(format!(
                "\"map\" has {} entries for {} points",
                image.len(),
                self.n_points()
            )));
        }
        Ok(SelfMap::new(image)?)
    }

    /// The cyclic representation; an error when the section is missing.
    pub fn require_partition(&self) -> Result<CyclicRepresentation, CliError> {
        let sets = self
            .partition
            .clone()
            .ok_or_else(|| CliError::Usage("instance has no \"partition\" section".into()))?;
        Ok(CyclicRepresentation::new(sets, self.n_points())?)
    }

    /// The Pata parameters; an error when the section is missing.
    pub fn require_pata(&self) -> Result<PataParams, CliError> {
        let params = self
            .pata
            .ok_or_else(|| CliError::Usage("instance has no \"pata\" section".into()))?;
        params.validate()?;
        Ok(params)
    }

    /// The ε-grid: an explicit `--grid N` override wins, then the file's
    /// grid section, then the 101-point default.
    pub fn grid(&self, override_points: Option<usize>) -> Result<EpsilonGrid, CliError> {
        if let Some(n) = override_points {
            return Ok(EpsilonGrid::uniform(n)?);
        }
        match &self.grid {
            None => Ok(EpsilonGrid::default_grid()),
            Some(GridSpec::Points { points }) => Ok(EpsilonGrid::uniform(*points)?),
            Some(GridSpec::Values { values }) => Ok(EpsilonGrid::from_values(values.clone())?),
        }
    }

    /// Wire form of a generated instance (no parameter sections).
    pub fn from_instance(instance: &GeneratedInstance) -> Self {
        Self {
            points: instance.space.labels().to_vec(),
            dist: instance.space.dist_matrix().to_vec(),
            anchor: Some(0),
            map: Some(instance.map.image().to_vec()),
            partition: Some(instance.rep.sets().to_vec()),
            pata: None,
            grid: None,
        }
    }
}

/// Parses an instance file, reporting the location of JSON errors.
pub fn parse_instance(path: &std::path::Path) -> Result<InstanceFile, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_slice(&bytes).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        line: source.line(),
        column: source.column(),
        source,
    })
}

/// Canonical serialization: pretty-printed JSON with a trailing newline,
/// shortest round-trip floats. Re-serializing a parsed file is
/// byte-identical.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}
