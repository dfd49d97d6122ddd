//! On-disk cache of eliminated relation windows.
//!
//! Entries are JSON files named by a SHA-256 of the sector, the truncation
//! knobs and the crate version. Writes go to a temporary file in the same
//! directory and are renamed into place.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;

use super::algebra::{
    assemble_algebra, build_reducer, Reducer, ReducerSnapshot, ZeroModeRep, ZhuAlgebraResult, ZhuOptions,
};
use super::context::TwistContext;

pub const BASIS_SCHEMA: &str = "vosa-basis/1";

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "VOSA_CACHE_DIR";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisCacheEntry {
    pub schema: String,
    pub key: String,
    pub sector: String,
    pub options: String,
    pub reducer: ReducerSnapshot,
    pub stabilized: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CacheStatus {
    Hit,
    Miss,
    Disabled,
}

fn options_tag(options: &ZhuOptions) -> String {
    format!(
        "W={};margin={};depth={};stability={}",
        options.max_weight, options.margin, options.family_depth, options.check_stability
    )
}

/// Content hash identifying the quotient computed for `ctx` and `options`.
pub fn cache_key(ctx: &TwistContext, options: &ZhuOptions) -> Result<String> {
    let mut h = Sha256::new();
    h.update(BASIS_SCHEMA.as_bytes());
    h.update(b"\n");
    h.update(ctx.module_sector()?.canonical().as_bytes());
    h.update(b"\n");
    h.update(options_tag(options).as_bytes());
    h.update(b"\n");
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    Ok(hex::encode(h.finalize()))
}

pub fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

fn load(path: &Path, key: &str) -> Option<(Reducer, Option<bool>)> {
    let text = fs::read_to_string(path).ok()?;
    let entry: BasisCacheEntry = serde_json::from_str(&text).ok()?;
    if entry.schema != BASIS_SCHEMA || entry.key != key {
        return None;
    }
    let reducer = Reducer::from_snapshot(&entry.reducer).ok()?;
    Some((reducer, entry.stabilized))
}

fn store(dir: &Path, entry: &BasisCacheEntry) -> Result<()> {
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(".{}.{}.tmp", entry.key, std::process::id()));
    fs::write(&tmp, serde_json::to_vec(entry)?)?;
    fs::rename(&tmp, entry_path(dir, &entry.key))?;
    Ok(())
}

/// [`super::build_algebra`] with the quotient read from or written to `dir`.
/// Unreadable or mismatched entries are rebuilt and overwritten.
pub fn build_algebra_cached(
    ctx: &TwistContext,
    options: &ZhuOptions,
    rep: Option<&dyn ZeroModeRep>,
    dir: Option<&Path>,
) -> Result<(ZhuAlgebraResult, CacheStatus)> {
    let Some(dir) = dir else {
        let (r, s) = build_reducer(ctx, options)?;
        return Ok((assemble_algebra(ctx, options, r, s, rep)?, CacheStatus::Disabled));
    };
    let key = cache_key(ctx, options)?;
    let path = entry_path(dir, &key);
    if let Some((r, s)) = load(&path, &key) {
        return Ok((assemble_algebra(ctx, options, r, s, rep)?, CacheStatus::Hit));
    }
    let (r, s) = build_reducer(ctx, options)?;
    let entry = BasisCacheEntry {
        schema: BASIS_SCHEMA.into(),
        key,
        sector: ctx.module_sector()?.canonical(),
        options: options_tag(options),
        reducer: r.snapshot(),
        stabilized: s,
    };
    store(dir, &entry)?;
    Ok((assemble_algebra(ctx, options, r, s, rep)?, CacheStatus::Miss))
}
