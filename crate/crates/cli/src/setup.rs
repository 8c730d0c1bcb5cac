//! JSON setup files.
//!
//! ```json
//! {
//!   "group": { "permutations": [[1, 0, 2], [1, 2, 0]] },
//!   "normal_generators": [[1, 2, 0]],
//!   "sigma": [[1, 0, 2]],
//!   "base_generators": null,
//!   "alternative_normal_generators": null,
//!   "events": { "left": [[[1, 0, 2]]] },
//!   "tower": {
//!     "group": { "table": [[0, 1], [1, 0]] },
//!     "normal_generators": [],
//!     "sigma": [1],
//!     "projection": { "generators": [[1, 0, 2], [1, 2, 0]], "images": [1, 0] }
//!   }
//! }
//! ```
//!
//! Elements are written either as indices into the group or, for permutation
//! groups, as 0-indexed image arrays.

use std::collections::BTreeMap;
use std::path::Path;

use fmeas_core::galois::{GaloisSetup, SubextLattice};
use fmeas_core::measure::TowerSetup;
use fmeas_core::subgroup::{generated_subgroup, Subgroup};
use fmeas_core::{Elem, FiniteGroup, GroupDescription, GroupHom};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ElemRef {
    Index(usize),
    Permutation(Vec<usize>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default)]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub permutations: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectionSpec {
    /// Defaults to the permutation generators of the upper group.
    #[serde(default)]
    pub generators: Option<Vec<ElemRef>>,
    pub images: Vec<ElemRef>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpec {
    pub group: GroupSpec,
    #[serde(default)]
    pub normal_generators: Vec<ElemRef>,
    pub sigma: Vec<ElemRef>,
    pub projection: ProjectionSpec,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetupFile {
    pub group: GroupSpec,
    #[serde(default)]
    pub normal_generators: Vec<ElemRef>,
    #[serde(default)]
    pub sigma: Option<Vec<ElemRef>>,
    #[serde(default)]
    pub base_generators: Option<Vec<ElemRef>>,
    #[serde(default)]
    pub alternative_normal_generators: Option<Vec<ElemRef>>,
    /// Each event lists generator sets of the member subgroups it contains.
    #[serde(default)]
    pub events: BTreeMap<String, Vec<Vec<ElemRef>>>,
    #[serde(default)]
    pub tower: Option<TowerSpec>,
}

/// A parsed file together with its source text, for locating fields.
#[derive(Clone, Debug)]
pub struct Source {
    pub file: SetupFile,
    text: String,
}

/// Everything built from a file that carries a `sigma`.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub setup: GaloisSetup,
    pub base: Subgroup,
    pub lattice: SubextLattice,
    pub alternative_normal: Option<Subgroup>,
    pub events: BTreeMap<String, Vec<usize>>,
    pub tower: Option<TowerSetup>,
}

impl Source {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(text)
    }

    pub fn parse(text: String) -> Result<Self, CliError> {
        let file: SetupFile = serde_json::from_str(&text).map_err(|e| {
            let full = e.to_string();
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            CliError::Parse {
                line: e.line(),
                column: e.column(),
                message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
            }
        })?;
        Ok(Source { file, text })
    }

    /// Line of the first occurrence of `"key"`.
    fn line_of(&self, key: &str) -> Option<usize> {
        let quoted = format!("\"{key}\"");
        self.text
            .lines()
            .position(|l| l.contains(&quoted))
            .map(|i| i + 1)
    }

    fn invalid(&self, key: &str, message: impl Into<String>) -> CliError {
        CliError::Validation {
            line: self.line_of(key),
            field: key.to_string(),
            message: message.into(),
        }
    }

    pub fn group(&self) -> Result<FiniteGroup, CliError> {
        build_group(&self.file.group).map_err(|m| self.invalid("group", m))
    }

    /// Builds and verifies the setup, the base, the lattice, events and
    /// tower. Fails if the file has no `sigma`.
    pub fn load(&self) -> Result<Loaded, CliError> {
        let group = self.group()?;
        let sigma_refs = self
            .file
            .sigma
            .as_ref()
            .ok_or_else(|| self.invalid("sigma", "missing; this command needs a setup"))?;
        let normal_gens = resolve_all(&group, &self.file.normal_generators)
            .map_err(|m| self.invalid("normal_generators", m))?;
        let sigma = resolve_all(&group, sigma_refs).map_err(|m| self.invalid("sigma", m))?;
        let setup = GaloisSetup::new(&group, &normal_gens, &sigma).map_err(|e| match e {
            fmeas_core::Error::NotNormal => {
                self.invalid("normal_generators", "the generated subgroup is not normal")
            }
            fmeas_core::Error::EmptySigma => self.invalid("sigma", "must not be empty"),
            fmeas_core::Error::SigmaDoesNotGenerate => {
                self.invalid("sigma", "its image does not generate G/N")
            }
            other => CliError::from(other),
        })?;
        let base = match &self.file.base_generators {
            None => Subgroup::whole(&group),
            Some(refs) => {
                let gens =
                    resolve_all(&group, refs).map_err(|m| self.invalid("base_generators", m))?;
                generated_subgroup(&group, &gens)?
            }
        };
        let lattice = setup.lattice(&base).map_err(|e| match e {
            fmeas_core::Error::BaseNotRegular => {
                self.invalid("base_generators", "the base subgroup does not map onto G/N")
            }
            other => CliError::from(other),
        })?;
        let alternative_normal = match &self.file.alternative_normal_generators {
            None => None,
            Some(refs) => {
                let key = "alternative_normal_generators";
                let gens = resolve_all(&group, refs).map_err(|m| self.invalid(key, m))?;
                let n1 = generated_subgroup(&group, &gens)?;
                if !n1.is_normal() {
                    return Err(self.invalid(key, "the generated subgroup is not normal"));
                }
                if !setup.normal().is_subgroup_of(&n1) {
                    return Err(self.invalid(key, "must contain the normal subgroup"));
                }
                Some(n1)
            }
        };
        let mut events = BTreeMap::new();
        for (name, sets) in &self.file.events {
            let mut members = Vec::new();
            for refs in sets {
                let gens = resolve_all(&group, refs).map_err(|m| self.invalid(name, m))?;
                let h = generated_subgroup(&group, &gens)?;
                let i = lattice.index_of(&h).ok_or_else(|| {
                    self.invalid(name, format!("{} is not a member of the lattice", h.name()))
                })?;
                members.push(i);
            }
            events.insert(name.clone(), members);
        }
        let tower = match &self.file.tower {
            None => None,
            Some(spec) => Some(self.tower(&setup, spec)?),
        };
        Ok(Loaded {
            setup,
            base,
            lattice,
            alternative_normal,
            events,
            tower,
        })
    }

    fn tower(&self, upper: &GaloisSetup, spec: &TowerSpec) -> Result<TowerSetup, CliError> {
        let group = upper.group();
        let lower_group = build_group(&spec.group).map_err(|m| self.invalid("tower", m))?;
        let normal_gens = resolve_all(&lower_group, &spec.normal_generators)
            .map_err(|m| self.invalid("tower", format!("normal_generators: {m}")))?;
        let sigma = resolve_all(&lower_group, &spec.sigma)
            .map_err(|m| self.invalid("tower", format!("sigma: {m}")))?;
        let lower = GaloisSetup::new(&lower_group, &normal_gens, &sigma)
            .map_err(|e| self.invalid("tower", format!("lower setup: {e}")))?;
        let generators = match &spec.projection.generators {
            Some(refs) => resolve_all(group, refs).map_err(|m| self.invalid("projection", m))?,
            None if group.is_permutation_group() => group.permutation_generators().to_vec(),
            None => {
                return Err(self.invalid(
                    "projection",
                    "generators are required when the group is given by a table",
                ))
            }
        };
        let images = resolve_all(&lower_group, &spec.projection.images)
            .map_err(|m| self.invalid("projection", m))?;
        if images.len() != generators.len() {
            return Err(self.invalid(
                "projection",
                format!(
                    "{} generators but {} images",
                    generators.len(),
                    images.len()
                ),
            ));
        }
        let pi = GroupHom::from_generator_images(group, &lower_group, &generators, &images)
            .map_err(|e| self.invalid("projection", e.to_string()))?;
        TowerSetup::new(upper.clone(), lower, pi).map_err(|e| self.invalid("tower", e.to_string()))
    }
}

fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, String> {
    let desc = match (&spec.table, &spec.permutations) {
        (Some(rows), None) => GroupDescription::Table {
            rows: rows.clone(),
            labels: spec.labels.clone(),
        },
        (None, Some(generators)) => {
            if spec.labels.is_some() {
                return Err("labels only apply to tables".into());
            }
            GroupDescription::Permutations {
                generators: generators.clone(),
            }
        }
        _ => return Err("give exactly one of \"table\" and \"permutations\"".into()),
    };
    FiniteGroup::build(&desc, fmeas_core::group::MAX_ORDER).map_err(|e| e.to_string())
}

fn resolve(group: &FiniteGroup, r: &ElemRef) -> Result<Elem, String> {
    match r {
        ElemRef::Index(i) => group.check_elem(*i).map(|_| *i).map_err(|e| e.to_string()),
        ElemRef::Permutation(images) => {
            if !group.is_permutation_group() {
                return Err("permutation given for a group defined by a table".into());
            }
            group
                .find_permutation(images)
                .ok_or_else(|| format!("permutation {images:?} is not in the group"))
        }
    }
}

fn resolve_all(group: &FiniteGroup, refs: &[ElemRef]) -> Result<Vec<Elem>, String> {
    refs.iter().map(|r| resolve(group, r)).collect()
}
