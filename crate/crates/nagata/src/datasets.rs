//! Bundled configurations and form systems.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;

const BUNDLED: &[(&str, &str)] = &[
    ("cube_f5", include_str!("../data/cube_f5.json")),
    ("cuspidal_pencil", include_str!("../data/cuspidal_pencil.json")),
    ("f4_cubic", include_str!("../data/f4_cubic.json")),
    ("f4_quadric", include_str!("../data/f4_quadric.json")),
    ("f9_cubic", include_str!("../data/f9_cubic.json")),
    ("grid_f5", include_str!("../data/grid_f5.json")),
    ("matrix_3x9", include_str!("../data/matrix_3x9.json")),
    ("matrix_4x8", include_str!("../data/matrix_4x8.json")),
    ("quadric_net", include_str!("../data/quadric_net.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _)| *n)
}

pub fn bundled(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Where datasets come from: the bundled copies, or `<dir>/<name>.json` when present.
#[derive(Clone, Debug, Default)]
pub struct DataSource {
    pub dir: Option<PathBuf>,
}

impl DataSource {
    pub fn bundled() -> Self {
        DataSource { dir: None }
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Self {
        DataSource { dir: Some(dir.into()) }
    }

    pub fn text(&self, name: &str) -> Result<String> {
        if let Some(dir) = &self.dir {
            let path = dir.join(format!("{}.json", name.strip_suffix(".json").unwrap_or(name)));
            if path.exists() {
                return std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()));
            }
        }
        match bundled(name) {
            Some(t) => Ok(t.to_string()),
            None => bail!("unknown dataset `{name}`"),
        }
    }

    pub fn load<T: DeserializeOwned>(&self, name: &str) -> Result<T> {
        serde_json::from_str(&self.text(name)?).with_context(|| format!("dataset `{name}`"))
    }
}

/// Read a file, falling back to a bundled dataset of that name.
pub fn read_input(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if path.exists() {
        return std::fs::read_to_string(path).with_context(|| format!("reading {arg}"));
    }
    match bundled(path.file_name().and_then(|s| s.to_str()).unwrap_or(arg)) {
        Some(t) => Ok(t.to_string()),
        None => bail!("no such file or bundled dataset: {arg}"),
    }
}
