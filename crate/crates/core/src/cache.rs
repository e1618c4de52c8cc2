//! On-disk cache of character tables keyed by groupspec; writes are atomic.

use std::hash::{Hash, Hasher};
use std::io::Write;
use std::path::{Path, PathBuf};

use rustc_hash::FxHasher;
use serde::{Deserialize, Serialize};

use crate::chartab::CharacterTable;
use crate::error::Result;
use crate::group::Group;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    version: String,
    table: CharacterTable,
}

#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<TableCache> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(TableCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        let mut h = FxHasher::default();
        key.hash(&mut h);
        let stem: String = key
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .take(40)
            .collect();
        self.dir.join(format!("{stem}-{:016x}.json", h.finish()))
    }

    /// A cached table for `key`, if present and consistent with `g`.
    pub fn load(&self, key: &str, g: &Group) -> Option<CharacterTable> {
        let text = std::fs::read_to_string(self.path_for(key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        if entry.key != key || entry.version != ENGINE_VERSION {
            return None;
        }
        match entry.table.validate_against(g) {
            Ok(()) => Some(entry.table),
            Err(e) => {
                log::warn!("discarding cached table for {key}: {e}");
                None
            }
        }
    }

    pub fn store(&self, key: &str, table: &CharacterTable) -> Result<()> {
        let entry = Entry {
            key: key.to_string(),
            version: ENGINE_VERSION.to_string(),
            table: table.clone(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.flush()?;
        tmp.persist(self.path_for(key)).map_err(|e| e.error)?;
        Ok(())
    }

    pub fn get_or_compute(&self, key: &str, g: &Group, seed: u64) -> Result<CharacterTable> {
        if let Some(t) = self.load(key, g) {
            return Ok(t);
        }
        let t = CharacterTable::compute_seeded(g, seed)?;
        self.store(key, &t)?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factory;

    #[test]
    fn cached_equals_fresh() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path()).unwrap();
        let g = factory::symmetric(4).unwrap();
        let fresh = cache.get_or_compute("S(4)", &g, 0).unwrap();
        assert!(cache.path_for("S(4)").exists());
        assert_eq!(cache.load("S(4)", &g).unwrap(), fresh);
        // a table cached under one key is not served for a different group
        let d8 = factory::dihedral(8).unwrap();
        std::fs::copy(cache.path_for("S(4)"), cache.path_for("D(8)")).unwrap();
        assert!(cache.load("D(8)", &d8).is_none());
        // garbage is ignored and replaced
        std::fs::write(cache.path_for("D(8)"), "not json").unwrap();
        let t = cache.get_or_compute("D(8)", &d8, 0).unwrap();
        assert_eq!(t, CharacterTable::compute(&d8).unwrap());
        assert_ne!(cache.path_for("C4xC4"), cache.path_for("C4_C4"));
    }
}
