//! Catalog of solution records and the text format they are stored in.

pub mod expr;
pub mod interp;
pub mod record;

pub use record::{
    parse_fragment, parse_record, parse_record_with, parse_source, same_source, serialize_fragment,
    serialize_record, serialize_source, CatalogError, ModelBlock, ModelKind, RecordSource,
    SolutionRecord, ThetaSource, TowerStmt,
};

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// File extension of record files.
pub const RECORD_EXT: &str = "pvi";

/// All records of a catalog directory, keyed by id.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub dir: PathBuf,
    pub records: BTreeMap<String, SolutionRecord>,
}

/// Reads one record file; includes are resolved relative to the catalog directory.
pub fn load_record_file(dir: &Path, path: &Path) -> Result<SolutionRecord, CatalogError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CatalogError::Io(format!("{}: {e}", path.display())))?;
    let resolve =
        |name: &str| std::fs::read_to_string(dir.join(name)).map_err(|e| format!("{name}: {e}"));
    parse_record_with(&text, &resolve)
}

impl Catalog {
    pub fn load(dir: impl AsRef<Path>) -> Result<Self, CatalogError> {
        let dir = dir.as_ref().to_path_buf();
        let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
            .map_err(|e| CatalogError::Io(format!("{}: {e}", dir.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == RECORD_EXT))
            .collect();
        paths.sort();
        let mut records = BTreeMap::new();
        for p in paths {
            let rec = load_record_file(&dir, &p).map_err(|e| match e {
                CatalogError::Io(m) => CatalogError::Io(m),
                other => CatalogError::Io(format!("{}: {other}", p.display())),
            })?;
            records.insert(rec.id().to_string(), rec);
        }
        Ok(Catalog { dir, records })
    }

    pub fn get(&self, id: &str) -> Option<&SolutionRecord> {
        self.records.get(id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.records.keys().map(String::as_str)
    }
}

/// The catalog shipped with the repository.
pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog")
}
