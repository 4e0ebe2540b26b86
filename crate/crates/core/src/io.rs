//! File formats: atomic writes, set files and map documents.

use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::{BoundarySet, CirclePoint};
use crate::discmap::{DiscMap, HerglotzMap};
use crate::error::{Error, Result};
use crate::harmonic::{RealGrid, DEFAULT_LOG2};
use crate::profile::{ProfileMode, WeightProfile};

/// Writes `bytes` to a temporary file next to `path` and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Exact weight attached to a Herglotz-data map.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDoc {
    pub mode: ProfileMode,
    pub points: Vec<CirclePoint>,
}

/// JSON description of a self-map. Herglotz-data maps reference a grid CSV
/// (relative paths resolve against the document's directory), an exact
/// weight profile, or both; the profile wins when present.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MapDoc {
    Identity,
    Constant {
        c: [f64; 2],
    },
    Moebius {
        a: [f64; 2],
    },
    Rational {
        numerator: Vec<[f64; 2]>,
        denominator: Vec<[f64; 2]>,
    },
    Herglotz {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grid: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        profile: Option<ProfileDoc>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grid_log2: Option<u32>,
    },
}

fn cx(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

fn pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

impl MapDoc {
    pub fn into_map(self, base_dir: &Path) -> Result<DiscMap> {
        match self {
            MapDoc::Identity => Ok(DiscMap::Identity),
            MapDoc::Constant { c } => DiscMap::constant(cx(c)),
            MapDoc::Moebius { a } => DiscMap::moebius(cx(a)),
            MapDoc::Rational { numerator, denominator } => DiscMap::rational(
                numerator.into_iter().map(cx).collect(),
                denominator.into_iter().map(cx).collect(),
            ),
            MapDoc::Herglotz { grid, profile, grid_log2 } => match (profile, grid) {
                (Some(p), grid) => {
                    let k = match (grid_log2, &grid) {
                        (Some(k), _) => k,
                        (None, Some(g)) => RealGrid::read_csv(&base_dir.join(g))?.log2_size(),
                        (None, None) => DEFAULT_LOG2,
                    };
                    let profile = WeightProfile::build(p.mode, &p.points)?;
                    Ok(DiscMap::Herglotz(HerglotzMap::from_profile(profile, k)?))
                }
                (None, Some(g)) => DiscMap::herglotz(&RealGrid::read_csv(&base_dir.join(g))?),
                (None, None) => Err(Error::Format("herglotz map needs a grid or a profile".into())),
            },
        }
    }

    /// Document for a map. Herglotz maps need the name of the grid file
    /// they will be written next to.
    pub fn from_map(map: &DiscMap, grid_file: Option<&str>) -> Result<Self> {
        Ok(match map {
            DiscMap::Identity => MapDoc::Identity,
            DiscMap::Constant(c) => MapDoc::Constant { c: pair(*c) },
            DiscMap::Moebius(a) => MapDoc::Moebius { a: pair(*a) },
            DiscMap::Rational(r) => MapDoc::Rational {
                numerator: r.numerator().iter().map(|&c| pair(c)).collect(),
                denominator: r.denominator().iter().map(|&c| pair(c)).collect(),
            },
            DiscMap::Herglotz(h) => MapDoc::Herglotz {
                grid: grid_file.map(str::to_string),
                profile: h.profile().map(|p| ProfileDoc { mode: p.mode(), points: p.points().to_vec() }),
                grid_log2: Some(h.weight().log2_size()),
            },
        })
    }
}

pub fn map_from_json(text: &str, base_dir: &Path) -> Result<DiscMap> {
    let doc: MapDoc = serde_json::from_str(text)?;
    doc.into_map(base_dir)
}

fn parent_dir(path: &Path) -> PathBuf {
    match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io_at(path, e))
}

pub fn read_map(path: &Path) -> Result<DiscMap> {
    map_from_json(&read_text(path)?, &parent_dir(path))
}

pub fn read_set(path: &Path) -> Result<BoundarySet> {
    BoundarySet::from_json(&read_text(path)?)
}
