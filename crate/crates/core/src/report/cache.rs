//! Content-addressed on-disk cache of per-curve artifacts.
//!
//! Entries live at `<dir>/<key>.json` where the key hashes the field, the
//! coefficients of f, the sample count and the tool version. Each entry
//! stores the SHA-256 of its payload; entries whose digest does not match are
//! ignored and later overwritten. Every I/O problem degrades to a miss.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::report::curve_io::CurveSpec;
use crate::TOOL_VERSION;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifacts {
    pub quadrics: Vec<String>,
    pub quartic: Vec<String>,
    pub samples: usize,
    pub quartic_nullity: usize,
    pub cubic_nullity: usize,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    digest: String,
    payload: Artifacts,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn cache_key(curve: &CurveSpec, samples: usize) -> String {
    let material = serde_json::json!({
        "field": curve.field,
        "f": curve.f,
        "samples": samples,
        "version": TOOL_VERSION,
    });
    sha256_hex(material.to_string().as_bytes())
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The stored artifacts, or None on a miss, unreadable file or bad digest.
    pub fn get(&self, key: &str) -> Option<Artifacts> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        let payload = serde_json::to_string(&entry.payload).ok()?;
        (entry.key == key && entry.digest == sha256_hex(payload.as_bytes())).then_some(entry.payload)
    }

    /// Writes through a temporary file and a rename. Returns false on any I/O error.
    pub fn put(&self, key: &str, artifacts: &Artifacts) -> bool {
        let write = || -> std::io::Result<()> {
            fs::create_dir_all(&self.dir)?;
            let payload = serde_json::to_string(artifacts)?;
            let entry = Entry { key: key.to_string(), digest: sha256_hex(payload.as_bytes()), payload: artifacts.clone() };
            let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
            fs::write(&tmp, serde_json::to_vec_pretty(&entry)?)?;
            fs::rename(&tmp, self.path(key))
        };
        write().is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;

    fn artifacts() -> Artifacts {
        Artifacts {
            quadrics: vec!["z0*z2 - z1^2".into()],
            quartic: vec!["1".into(); 35],
            samples: 50,
            quartic_nullity: 1,
            cubic_nullity: 0,
        }
    }

    #[test]
    fn put_get_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let spec = CurveSpec::new(FieldContext::prime(10009).unwrap(), &["-1", "0", "0", "0", "0", "0", "1"]);
        let key = cache_key(&spec, 50);
        assert!(cache.get(&key).is_none());
        assert!(cache.put(&key, &artifacts()));
        assert_eq!(cache.get(&key), Some(artifacts()));

        let path = dir.path().join(format!("{key}.json"));
        let text = fs::read_to_string(&path).unwrap().replace("z0*z2", "z0*z3");
        fs::write(&path, text).unwrap();
        assert!(cache.get(&key).is_none());
    }

    #[test]
    fn key_depends_on_field() {
        let f = ["-1", "0", "0", "0", "0", "0", "1"];
        let a = cache_key(&CurveSpec::new(FieldContext::prime(10009).unwrap(), &f), 50);
        let b = cache_key(&CurveSpec::new(FieldContext::prime(20011).unwrap(), &f), 50);
        assert_ne!(a, b);
    }
}
