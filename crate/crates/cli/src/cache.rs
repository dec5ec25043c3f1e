//! On-disk result cache. Each entry is one JSON file named by the SHA-256
//! of its key; the header repeats the key so a stale or foreign file is
//! treated as a miss.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub struct Cache {
    dir: PathBuf,
}

/// A cached command result: the exact bytes written and the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub output: String,
    pub status: i32,
}

pub fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

impl Cache {
    pub fn open(dir: &Path) -> io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    fn path(&self, key: &Value) -> PathBuf {
        let name = sha256_hex(key.to_string().as_bytes());
        self.dir.join(format!("{name}.json"))
    }

    pub fn get(&self, key: &Value) -> Option<Entry> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        if v.get("header")? != key {
            return None;
        }
        Some(Entry {
            output: v.get("payload")?.as_str()?.to_string(),
            status: v.get("status")?.as_i64()? as i32,
        })
    }

    pub fn put(&self, key: &Value, entry: &Entry) -> io::Result<()> {
        let doc = json!({ "header": key, "status": entry.status, "payload": entry.output });
        let path = self.path(key);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(&doc).expect("JSON values serialize"))?;
        fs::rename(tmp, path)
    }
}
