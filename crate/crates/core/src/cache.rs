//! On-disk cache of vertex series, one JSON document per `(kind, mu, nu)`.
//!
//! Filenames are the SHA-256 of the key, so the truncation order is not part
//! of the name: an entry computed to order `N` serves every request `<= N`
//! and is only ever replaced by a deeper one.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::qfield::QRat;
use crate::series::{QSeries, Series};

/// Bumped whenever the meaning or encoding of stored series changes.
pub const CACHE_VERSION: u32 = 1;

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "LOCALVERTEX_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry {
    version: u32,
    kind: String,
    mu: Partition,
    nu: Partition,
    #[serde(rename = "N")]
    n: i64,
    coeffs: BTreeMap<i64, QRat>,
}

#[derive(Clone, Debug)]
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(DiskCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, kind: &str, mu: &Partition, nu: &Partition) -> PathBuf {
        let key = format!("v{CACHE_VERSION}|{kind}|{mu}|{nu}");
        let digest = Sha256::digest(key.as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    fn read(&self, path: &Path) -> Result<Option<Entry>> {
        let bytes = match fs::read(path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let entry: Entry = serde_json::from_slice(&bytes).map_err(|_| Error::CacheCorrupt { path: path.to_owned() })?;
        Ok(Some(entry))
    }

    /// The stored series truncated to `n`, if an entry of order `>= n` exists.
    pub fn load(&self, kind: &str, mu: &Partition, nu: &Partition, n: i64) -> Result<Option<QSeries>> {
        let path = self.path_for(kind, mu, nu);
        let Some(entry) = self.read(&path)? else {
            return Ok(None);
        };
        if entry.version != CACHE_VERSION || entry.kind != kind || &entry.mu != mu || &entry.nu != nu {
            return Err(Error::CacheCorrupt { path });
        }
        if entry.n < n {
            return Ok(None);
        }
        Ok(Some(Series::from_coeffs(entry.coeffs, entry.n).truncate(n)))
    }

    /// Writes atomically; an existing entry of equal or larger order is kept.
    pub fn store(&self, kind: &str, mu: &Partition, nu: &Partition, s: &QSeries) -> Result<()> {
        let path = self.path_for(kind, mu, nu);
        if let Ok(Some(old)) = self.read(&path) {
            if old.n >= s.order() {
                return Ok(());
            }
        }
        let entry = Entry {
            version: CACHE_VERSION,
            kind: kind.to_owned(),
            mu: mu.clone(),
            nu: nu.clone(),
            n: s.order(),
            coeffs: s.iter().map(|(k, c)| (k, c.clone())).collect(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.flush()?;
        tmp.persist(&path).map_err(|e| Error::Io(e.error))?;
        Ok(())
    }

    /// Number of entries and total bytes.
    pub fn stats(&self) -> Result<(usize, u64)> {
        let mut count = 0;
        let mut bytes = 0;
        for e in fs::read_dir(&self.dir)? {
            let e = e?;
            if e.path().extension().is_some_and(|x| x == "json") {
                count += 1;
                bytes += e.metadata()?.len();
            }
        }
        Ok((count, bytes))
    }

    pub fn clear(&self) -> Result<usize> {
        let mut n = 0;
        for e in fs::read_dir(&self.dir)? {
            let p = e?.path();
            if p.extension().is_some_and(|x| x == "json") {
                fs::remove_file(p)?;
                n += 1;
            }
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_truncation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::new(dir.path()).unwrap();
        let mu = Partition::new(vec![2, 1]).unwrap();
        let nu = Partition::empty();
        let s = Series::from_coeffs((0..=4).map(|k| (k, QRat::q_pow(k))), 4);
        assert!(cache.load("s", &mu, &nu, 2).unwrap().is_none());
        cache.store("s", &mu, &nu, &s).unwrap();
        assert_eq!(cache.load("s", &mu, &nu, 4).unwrap(), Some(s.clone()));
        assert_eq!(cache.load("s", &mu, &nu, 2).unwrap(), Some(s.truncate(2)));
        assert!(cache.load("s", &mu, &nu, 5).unwrap().is_none());
        // A shallower store never replaces a deeper entry.
        cache.store("s", &mu, &nu, &s.truncate(1)).unwrap();
        assert_eq!(cache.load("s", &mu, &nu, 4).unwrap(), Some(s));
        assert_eq!(cache.stats().unwrap().0, 1);
    }

    #[test]
    fn corrupt_entry_names_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::new(dir.path()).unwrap();
        let e = Partition::empty();
        let path = cache.path_for("s", &e, &e);
        fs::write(&path, b"{not json").unwrap();
        match cache.load("s", &e, &e, 1) {
            Err(Error::CacheCorrupt { path: p }) => assert_eq!(p, path),
            other => panic!("expected corruption error, got {other:?}"),
        }
    }
}
