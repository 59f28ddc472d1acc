use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{GenerationParams, Message};

/// Hex SHA-256 of the canonical request description.
///
/// The hashed bytes are the compact JSON object
/// `{"model":…,"messages":[{"role":…,"content":…},…],"temperature":…,"max_tokens":…}`
/// with keys in exactly that order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CacheKey(String);

#[derive(Serialize)]
struct KeyMaterial<'a> {
    model: &'a str,
    messages: &'a [Message],
    temperature: f64,
    max_tokens: u32,
}

impl CacheKey {
    pub fn derive(messages: &[Message], params: &GenerationParams) -> Self {
        let material = KeyMaterial {
            model: &params.model,
            messages,
            temperature: params.temperature,
            max_tokens: params.max_tokens,
        };
        let bytes = serde_json::to_vec(&material).expect("key material serializes");
        CacheKey(hex::encode(Sha256::digest(&bytes)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Accepts 64 lowercase hex digits.
    pub fn parse(s: &str) -> Option<Self> {
        (s.len() == 64 && s.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))).then(|| CacheKey(s.into()))
    }
}

impl fmt::Display for CacheKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One cached exchange: the raw endpoint body plus request metadata.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: CacheKey,
    /// Seconds since the Unix epoch when the live call completed.
    pub created_at: u64,
    pub params: GenerationParams,
    pub latency_ms: u64,
    /// Response body exactly as returned by the endpoint.
    pub body: String,
}

/// Directory of `<key[0..2]>/<key>.json` files. Reads run concurrently;
/// writes are serialized and land atomically via rename.
#[derive(Debug)]
pub struct ResponseCache {
    root: PathBuf,
    write_lock: Mutex<()>,
}

impl ResponseCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into(), write_lock: Mutex::new(()) }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.root.join(&key.as_str()[..2]).join(format!("{}.json", key.as_str()))
    }

    pub fn get(&self, key: &CacheKey) -> io::Result<Option<CacheEntry>> {
        match fs::read(self.path_for(key)) {
            Ok(bytes) => serde_json::from_slice(&bytes)
                .map(Some)
                .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e)),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e),
        }
    }

    pub fn put(&self, entry: &CacheEntry) -> io::Result<()> {
        let path = self.path_for(&entry.key);
        let dir = path.parent().expect("cache paths have a parent");
        let _guard = self.write_lock.lock().unwrap_or_else(|p| p.into_inner());
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(".{}.tmp", entry.key.as_str()));
        let mut file = fs::File::create(&tmp)?;
        let mut json = serde_json::to_vec_pretty(entry).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
        json.push(b'\n');
        file.write_all(&json)?;
        file.sync_all()?;
        fs::rename(&tmp, &path)
    }
}
