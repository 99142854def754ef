//! Reading input files and manifests, recording a digest for each.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use auk_core::{
    Budget, GradedAlgebraModel, GradedMap, InflationItem, InflationSystem, LocalGlobalDatum, LocalMap, ModelRef, QuadraticPresentation,
    Subspace, Transition,
};
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::report::Input;
use crate::text::{self, ParseError};

pub struct Loader {
    budget: Budget,
    cap: usize,
    inputs: Vec<Input>,
    models: HashMap<PathBuf, ModelRef>,
}

fn parse_err(path: &Path, e: ParseError) -> CliError {
    CliError::Parse {
        path: path.to_path_buf(),
        line: e.line,
        message: e.message,
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

impl Loader {
    pub fn new(budget: Budget, cap: usize) -> Self {
        Loader {
            budget,
            cap,
            inputs: Vec::new(),
            models: HashMap::new(),
        }
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn into_inputs(self) -> Vec<Input> {
        self.inputs
    }

    pub fn record(&mut self, input: Input) {
        if !self.inputs.iter().any(|i| i.path == input.path) {
            self.inputs.push(input);
        }
    }

    pub fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = std::fs::read(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let sha256 = digest(&bytes);
        self.record(Input {
            path: path.display().to_string(),
            sha256,
        });
        String::from_utf8(bytes).map_err(|_| CliError::Parse {
            path: path.to_path_buf(),
            line: 0,
            message: "not valid UTF-8".into(),
        })
    }

    pub fn presentation(&mut self, path: &Path) -> Result<QuadraticPresentation, CliError> {
        let text = self.read(path)?;
        text::parse_presentation(&text).map_err(|e| parse_err(path, e))
    }

    /// Builds (once per path) the model of a presentation file at the loader cap.
    pub fn model(&mut self, path: &Path) -> Result<ModelRef, CliError> {
        if let Some(m) = self.models.get(path) {
            return Ok(m.clone());
        }
        let p = self.presentation(path)?;
        let m = GradedAlgebraModel::build_ref(p, self.cap, &self.budget)?;
        self.models.insert(path.to_path_buf(), m.clone());
        Ok(m)
    }

    pub fn map(&mut self, path: &Path, source: &ModelRef, target: &ModelRef) -> Result<GradedMap, CliError> {
        let text = self.read(path)?;
        let m = text::parse_map(
            &text,
            source.presentation().labels(),
            target.presentation().labels(),
            target.field(),
        )
        .map_err(|e| parse_err(path, e))?;
        Ok(GradedMap::new(source.clone(), target.clone(), m)?)
    }

    pub fn system(&mut self, path: &Path, model: &ModelRef) -> Result<text::SystemFile, CliError> {
        let text = self.read(path)?;
        text::parse_system(&text, model.presentation().labels(), model.field()).map_err(|e| parse_err(path, e))
    }

    pub fn split(&mut self, path: &Path, model: &ModelRef) -> Result<(Subspace, Subspace), CliError> {
        let text = self.read(path)?;
        text::parse_split(&text, model.presentation().labels(), model.field()).map_err(|e| parse_err(path, e))
    }

    fn toml<T: for<'de> Deserialize<'de>>(&mut self, path: &Path) -> Result<T, CliError> {
        let text = self.read(path)?;
        toml::from_str(&text).map_err(|source| CliError::Toml {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn local_global(&mut self, path: &Path, global: &ModelRef) -> Result<Vec<LocalGlobalDatum>, CliError> {
        let manifest: LocalGlobalManifest = self.toml(path)?;
        let base = path.parent().unwrap_or(Path::new(""));
        let mut data = Vec::with_capacity(manifest.datum.len());
        for (k, entry) in manifest.datum.into_iter().enumerate() {
            let name = entry.name.unwrap_or_else(|| format!("datum{k}"));
            let rows = entry
                .w
                .iter()
                .map(|v| text::parse_vector(v, global.presentation().labels(), global.field(), 0))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Input(format!("{}: datum `{name}`: {}", path.display(), e.message)))?;
            let w = Subspace::from_rows(global.field(), global.num_generators(), rows)?;
            let mut locals = Vec::with_capacity(entry.local.len());
            for (j, l) in entry.local.into_iter().enumerate() {
                let model = self.model(&base.join(&l.model))?;
                let map = self.map(&base.join(&l.map), global, &model)?;
                locals.push(LocalMap {
                    name: l.name.unwrap_or_else(|| format!("local{j}")),
                    map,
                });
            }
            let external = match entry.external {
                Some(p) => Some(self.model(&base.join(p))?),
                None => None,
            };
            data.push(LocalGlobalDatum { name, w, locals, external });
        }
        Ok(data)
    }

    pub fn inflation_system(&mut self, path: &Path) -> Result<InflationSystem, CliError> {
        let manifest: GaloisManifest = self.toml(path)?;
        let base = path.parent().unwrap_or(Path::new(""));
        let target = self.model(&base.join(&manifest.target))?;
        let mut items = Vec::with_capacity(manifest.item.len());
        let mut sources = Vec::with_capacity(manifest.item.len());
        for entry in &manifest.item {
            let model = self.model(&base.join(&entry.model))?;
            let map = self.map(&base.join(&entry.map), &model, &target)?;
            items.push(InflationItem {
                name: entry.name.clone(),
                map,
            });
            sources.push(model);
        }
        let index = |name: &str| {
            manifest
                .item
                .iter()
                .position(|i| i.name == name)
                .ok_or_else(|| CliError::Input(format!("{}: unknown item `{name}`", path.display())))
        };
        let mut transitions = Vec::with_capacity(manifest.transition.len());
        for t in &manifest.transition {
            let (from, to) = (index(&t.from)?, index(&t.to)?);
            let map = self.map(&base.join(&t.map), &sources[from], &sources[to])?;
            transitions.push(Transition { from, to, map });
        }
        Ok(InflationSystem::new(target, items, transitions)?)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LocalGlobalManifest {
    #[serde(default)]
    datum: Vec<DatumSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumSpec {
    name: Option<String>,
    w: Vec<String>,
    external: Option<String>,
    #[serde(default)]
    local: Vec<LocalSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LocalSpec {
    name: Option<String>,
    model: String,
    map: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GaloisManifest {
    target: String,
    #[serde(default)]
    item: Vec<ItemSpec>,
    #[serde(default)]
    transition: Vec<TransitionSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ItemSpec {
    name: String,
    model: String,
    map: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransitionSpec {
    from: String,
    to: String,
    map: String,
}
