//! On-disk resolution cache.
//!
//! One JSON file per key, `<sha256>.json`, holding
//! `{format_version, key, s_max, t_max, algebra_bound, resolution}` where
//! `resolution` lists per stage the generator degrees and each generator's
//! differential as a bit string over the target basis.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use sqfib::resolution::{minimal_resolution, Resolution, StoredResolution};
use sqfib::GradedModule;

pub const FORMAT_VERSION: u32 = 1;
pub const ENV_VAR: &str = "SQFIB_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry {
    format_version: u32,
    key: String,
    s_max: usize,
    t_max: usize,
    algebra_bound: usize,
    resolution: StoredResolution,
}

pub struct Request<'a> {
    pub spec: &'a str,
    pub module: Arc<GradedModule>,
    pub s_max: usize,
    pub t_max: usize,
    pub algebra_bound: usize,
}

impl Request<'_> {
    pub fn key(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("v{FORMAT_VERSION}\nalgebra {}\ns {}\nt {}\n", self.algebra_bound, self.s_max, self.t_max));
        h.update(self.spec.as_bytes());
        hex::encode(h.finalize())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Hit,
    Miss,
    Stale,
}

/// `--cache-dir`, then `$SQFIB_CACHE_DIR`, then the user cache directory.
pub fn default_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    if let Some(p) = std::env::var_os(ENV_VAR).filter(|p| !p.is_empty()) {
        return Some(PathBuf::from(p));
    }
    if let Some(p) = std::env::var_os("XDG_CACHE_HOME").filter(|p| !p.is_empty()) {
        return Some(PathBuf::from(p).join("sqfib"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("sqfib"))
}

/// Loads the resolution for `req` from `dir`, or builds and stores it.
/// Unreadable, mismatched or old-format entries count as stale and are rebuilt.
pub fn resolve(dir: Option<&Path>, req: &Request) -> Result<(Resolution, Outcome)> {
    let Some(dir) = dir else {
        return Ok((build(req)?, Outcome::Miss));
    };
    let key = req.key();
    let path = dir.join(format!("{key}.json"));
    let mut outcome = Outcome::Miss;
    if path.exists() {
        match load(&path, &key, req) {
            Some(r) => return Ok((r, Outcome::Hit)),
            None => outcome = Outcome::Stale,
        }
    }
    let res = build(req)?;
    if let Err(e) = store(dir, &path, &key, req, &res) {
        eprintln!("warning: could not write cache entry {}: {e:#}", path.display());
    }
    Ok((res, outcome))
}

fn build(req: &Request) -> Result<Resolution> {
    Ok(minimal_resolution(req.module.clone(), req.s_max, req.t_max)?)
}

fn load(path: &Path, key: &str, req: &Request) -> Option<Resolution> {
    let text = std::fs::read_to_string(path).ok()?;
    let entry: Entry = serde_json::from_str(&text).ok()?;
    if entry.format_version != FORMAT_VERSION
        || entry.key != key
        || entry.s_max != req.s_max
        || entry.t_max != req.t_max
        || entry.algebra_bound != req.algebra_bound
    {
        return None;
    }
    Resolution::from_stored(req.module.clone(), &entry.resolution).ok()
}

fn store(dir: &Path, path: &Path, key: &str, req: &Request, res: &Resolution) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let entry = Entry {
        format_version: FORMAT_VERSION,
        key: key.to_string(),
        s_max: req.s_max,
        t_max: req.t_max,
        algebra_bound: req.algebra_bound,
        resolution: res.to_stored(),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer(&mut tmp, &entry)?;
    tmp.write_all(b"\n")?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)?;
    Ok(())
}
