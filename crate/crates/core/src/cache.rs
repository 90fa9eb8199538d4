//! On-disk cache of class groups with their composition tables, one JSON
//! document per discriminant. Deleting the cache never changes results:
//! unreadable or inconsistent files are ignored and rebuilt.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;

use crate::compose::OrientedClassGroup;
use crate::error::Result;
use crate::json;

pub const DEFAULT_DIR: &str = ".qforms-cache";
pub const ENV_VAR: &str = "QFORMS_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct ClassGroupCache {
    dir: PathBuf,
}

impl ClassGroupCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ClassGroupCache { dir: dir.into() }
    }

    /// `$QFORMS_CACHE_DIR`, or `.qforms-cache` in the working directory.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(ENV_VAR)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
        ClassGroupCache::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, d: &BigInt) -> PathBuf {
        self.dir.join(format!("classgroup_{d}.json"))
    }

    /// A cached group, if present and consistent with a fresh enumeration of
    /// the classes.
    pub fn load(&self, d: &BigInt) -> Option<OrientedClassGroup> {
        let text = fs::read_to_string(self.path(d)).ok()?;
        let value: serde_json::Value = serde_json::from_str(&text).ok()?;
        let g = json::class_group_from_json(&value).ok()?;
        if g.discriminant() != d || g.table_if_computed().is_none() {
            return None;
        }
        let fresh = OrientedClassGroup::new(d).ok()?;
        if fresh.elements() != g.elements() {
            return None;
        }
        let t = g.table();
        let id = g.identity_index();
        let n = g.order();
        let consistent = (0..n).all(|i| t[id][i] == i && (0..n).all(|j| t[i][j] == t[j][i]))
            && (0..n).all(|i| {
                let mut seen = vec![false; n];
                t[i].iter().all(|&k| !std::mem::replace(&mut seen[k], true))
            });
        consistent.then_some(g)
    }

    /// Writes the group (forcing its table) via a temporary file and rename.
    pub fn store(&self, g: &OrientedClassGroup) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let body = json::class_group_to_json(g).to_string();
        let nanos = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |t| t.as_nanos());
        let tmp = self.dir.join(format!(
            ".classgroup_{}.{}.{}.tmp",
            g.discriminant(),
            std::process::id(),
            nanos
        ));
        fs::write(&tmp, body)?;
        if let Err(e) = fs::rename(&tmp, self.path(g.discriminant())) {
            let _ = fs::remove_file(&tmp);
            return Err(e.into());
        }
        Ok(())
    }

    /// Loads the group for `d`, or builds and stores it. Failure to write the
    /// cache is not an error.
    pub fn get(&self, d: &BigInt) -> Result<OrientedClassGroup> {
        if let Some(g) = self.load(d) {
            return Ok(g);
        }
        let g = OrientedClassGroup::new(d)?;
        g.table();
        let _ = self.store(&g);
        Ok(g)
    }
}
