//! Flat-file memo of JSON results, keyed by the SHA-256 of the canonical
//! request. Entries carry a digest of their value; anything that fails to
//! parse or check is deleted and recomputed.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Result;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

const FORMAT: &str = concat!("superw-cache-1/", env!("CARGO_PKG_VERSION"));

pub struct Cache {
    dir: Option<PathBuf>,
}

fn sha256_hex(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

impl Cache {
    /// `$SUPERW_CACHE`, else `$HOME/.cache/superw`.
    pub fn from_env(disabled: bool) -> Self {
        let dir = if disabled {
            None
        } else {
            std::env::var_os("SUPERW_CACHE")
                .map(PathBuf::from)
                .or_else(|| {
                    std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache").join("superw"))
                })
        };
        Cache { dir }
    }

    pub fn get_or_compute(
        &self,
        request: &Value,
        compute: impl FnOnce() -> Result<Value>,
    ) -> Result<Value> {
        let Some(dir) = &self.dir else {
            return compute();
        };
        // serde_json maps are sorted, so this string is canonical
        let key = request.to_string();
        let path = dir.join(format!("{}.json", sha256_hex(&key)));
        if let Some(v) = read_entry(&path, &key) {
            return Ok(v);
        }
        let value = compute()?;
        let entry = json!({
            "format": FORMAT,
            "key": key,
            "digest": sha256_hex(&value.to_string()),
            "value": value,
        });
        // best effort: a read-only cache only costs recomputation
        if fs::create_dir_all(dir).is_ok() {
            let tmp = path.with_extension(format!("tmp{}", std::process::id()));
            if fs::write(&tmp, entry.to_string()).is_ok() {
                let _ = fs::rename(&tmp, &path);
            }
        }
        Ok(value)
    }
}

fn read_entry(path: &Path, key: &str) -> Option<Value> {
    let raw = fs::read_to_string(path).ok()?;
    let valid = serde_json::from_str::<Value>(&raw).ok().filter(|e| {
        e["format"] == FORMAT
            && e["key"] == key
            && e["digest"].as_str() == Some(sha256_hex(&e["value"].to_string()).as_str())
    });
    match valid {
        Some(mut e) => Some(e["value"].take()),
        None => {
            let _ = fs::remove_file(path);
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn memo_and_invalidation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache {
            dir: Some(dir.path().to_path_buf()),
        };
        let req = json!({"op": "t", "x": 1});
        let mut calls = 0;
        let mut run = || {
            cache
                .get_or_compute(&req, || {
                    calls += 1;
                    Ok(json!({"answer": 42}))
                })
                .unwrap()
        };
        assert_eq!(run(), json!({"answer": 42}));
        assert_eq!(run(), json!({"answer": 42}));
        assert_eq!(calls, 1);

        let file = fs::read_dir(dir.path())
            .unwrap()
            .next()
            .unwrap()
            .unwrap()
            .path();
        let tampered = fs::read_to_string(&file).unwrap().replace("42", "41");
        fs::write(&file, tampered).unwrap();
        let v = cache
            .get_or_compute(&req, || Ok(json!({"answer": 42})))
            .unwrap();
        assert_eq!(v, json!({"answer": 42}));
        fs::write(&file, "not json").unwrap();
        assert_eq!(
            cache.get_or_compute(&req, || Ok(json!(7))).unwrap(),
            json!(7)
        );
    }
}
