use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::ReportError;
use crate::constructions::gpg::read_gpg;
use crate::constructions::Family;
use crate::geometry::Geometry;
use crate::traces::DEFAULT_SUBSET_GUARD;

/// Where the geometry comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum GeometrySource {
    Family {
        family: Family,
        q: u64,
        #[serde(default)]
        dual: bool,
    },
    File {
        file: PathBuf,
        n: usize,
    },
}

impl GeometrySource {
    /// Builds or reads the geometry; relative file paths resolve against `base`.
    pub fn load(&self, base: Option<&Path>) -> Result<(Geometry, usize), ReportError> {
        match self {
            GeometrySource::Family { family, q, dual } => {
                let g = family.build(*q)?;
                let n = family.gonality(*q);
                Ok(if *dual { (crate::constructions::dual_geometry(&g), n) } else { (g, n) })
            }
            GeometrySource::File { file, n } => {
                let path = match base {
                    Some(b) if file.is_relative() => b.join(file),
                    _ => file.clone(),
                };
                Ok((read_gpg(&path)?, *n))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Axioms,
    Cx,
    Minwt,
    Traces,
    Blocking,
    Perp,
    Dualwt,
}

impl Check {
    pub const ALL: [Check; 7] =
        [Check::Axioms, Check::Cx, Check::Minwt, Check::Traces, Check::Blocking, Check::Perp, Check::Dualwt];

    pub fn name(self) -> &'static str {
        match self {
            Check::Axioms => "axioms",
            Check::Cx => "cx",
            Check::Minwt => "minwt",
            Check::Traces => "traces",
            Check::Blocking => "blocking",
            Check::Perp => "perp",
            Check::Dualwt => "dualwt",
        }
    }
}

fn all_checks() -> Vec<Check> {
    Check::ALL.to_vec()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Guards {
    /// Highest weight the minimum-weight search may reach; defaults to `s + 2`.
    pub w_max: Option<usize>,
    /// Required to push `w_max` past the default.
    pub allow_override: bool,
    /// Ceiling on candidate subsets in blocking-set searches.
    pub subset_guard: u128,
    /// Dual words are searched up to this weight instead of full enumeration.
    pub dual_cap: Option<usize>,
    /// Number of random sets for the star-lemma check when exhaustion is too costly.
    pub star_trials: usize,
    /// Exhaustive star-lemma checks are used up to this many (set, line) pairs.
    pub star_exhaustive_limit: u128,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            w_max: None,
            allow_override: false,
            subset_guard: DEFAULT_SUBSET_GUARD,
            dual_cap: None,
            star_trials: 1000,
            star_exhaustive_limit: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub geometry: GeometrySource,
    /// Field characteristics to build codes over.
    pub fields: Vec<u64>,
    #[serde(default = "all_checks")]
    pub checks: Vec<Check>,
    #[serde(default)]
    pub guards: Guards,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Adds per-stage wall-clock times, which makes output nondeterministic.
    #[serde(default)]
    pub timing: bool,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn wants(&self, check: Check) -> bool {
        self.checks.contains(&check)
    }
}
