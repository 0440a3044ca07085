//! On-disk cache of certified zero lists, one file per prime.
//!
//! Layout of `{dir}/{p}.qlz`, all integers little-endian:
//!
//! | offset | size | field                            |
//! |--------|------|----------------------------------|
//! | 0      | 8    | magic `QLZCACHE`                 |
//! | 8      | 4    | format version (`u32`)           |
//! | 12     | 8    | prime `p` (`u64`)                |
//! | 20     | 8    | search height `T` (`f64`)        |
//! | 28     | 4    | zero count `n` (`u32`)           |
//! | 32     | 1    | central flag (`0` or `1`)        |
//! | 33     | 8n   | ordinates `γ` (`f64`, ascending) |

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use super::ZeroList;
use crate::error::{Error, Result};

pub const CACHE_MAGIC: &[u8; 8] = b"QLZCACHE";
/// Bumped whenever the zero finder changes in a way that alters results.
pub const CACHE_VERSION: u32 = 1;
pub const HEADER_LEN: usize = 33;

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

/// Serializes a certified zero list.
pub fn encode(zl: &ZeroList) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * zl.gammas.len());
    out.extend_from_slice(CACHE_MAGIC);
    out.extend_from_slice(&CACHE_VERSION.to_le_bytes());
    out.extend_from_slice(&zl.p.to_le_bytes());
    out.extend_from_slice(&zl.t_max.to_le_bytes());
    out.extend_from_slice(&(zl.gammas.len() as u32).to_le_bytes());
    out.push(zl.central_flag as u8);
    for g in &zl.gammas {
        out.extend_from_slice(&g.to_le_bytes());
    }
    out
}

/// Parses a cache file. Returns `Ok(None)` on a version mismatch so the
/// caller recomputes.
pub fn decode(bytes: &[u8]) -> Result<Option<ZeroList>> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::CacheFormat(format!("file too short ({} bytes)", bytes.len())));
    }
    if &bytes[..8] != CACHE_MAGIC {
        return Err(Error::CacheFormat("bad magic".into()));
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let u64_at = |o: usize| u64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
    if u32_at(8) != CACHE_VERSION {
        return Ok(None);
    }
    let p = u64_at(12);
    let t_max = f64::from_bits(u64_at(20));
    let n = u32_at(28) as usize;
    let central_flag = match bytes[32] {
        0 => false,
        1 => true,
        b => return Err(Error::CacheFormat(format!("bad central flag {b}"))),
    };
    if bytes.len() != HEADER_LEN + 8 * n {
        return Err(Error::CacheFormat(format!("expected {} zeros, file holds {} bytes", n, bytes.len())));
    }
    let gammas = (0..n).map(|k| f64::from_bits(u64_at(HEADER_LEN + 8 * k))).collect();
    Ok(Some(ZeroList { p, t_max, gammas, central_flag, certified: true }))
}

/// Directory of per-prime zero files.
#[derive(Debug)]
pub struct ZeroCache {
    dir: PathBuf,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl ZeroCache {
    pub fn new(dir: impl AsRef<Path>) -> Result<ZeroCache> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(ZeroCache { dir: dir.as_ref().to_path_buf(), hits: AtomicU64::new(0), misses: AtomicU64::new(0) })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, p: u64) -> PathBuf {
        self.dir.join(format!("{p}.qlz"))
    }

    /// Cached zeros up to `t`, or `None` when the file is absent, from an
    /// older format version, or was computed to a smaller height.
    pub fn load(&self, p: u64, t: f64) -> Result<Option<ZeroList>> {
        let bytes = match fs::read(self.path(p)) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                self.misses.fetch_add(1, Ordering::Relaxed);
                return Ok(None);
            }
            Err(e) => return Err(e.into()),
        };
        match decode(&bytes)? {
            Some(zl) if zl.p != p => Err(Error::CacheFormat(format!("{} holds p = {}", self.path(p).display(), zl.p))),
            Some(zl) if zl.t_max >= t => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Ok(Some(zl.truncated(t)))
            }
            _ => {
                self.misses.fetch_add(1, Ordering::Relaxed);
                Ok(None)
            }
        }
    }

    /// Writes a certified list atomically (temp file, then rename).
    pub fn store(&self, zl: &ZeroList) -> Result<()> {
        if !zl.certified {
            return Err(Error::UncertifiedZeros { p: zl.p });
        }
        let tmp = self.dir.join(format!(
            ".{}.qlz.{}.{}.tmp",
            zl.p,
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&encode(zl))?;
            f.sync_all()?;
        }
        fs::rename(&tmp, self.path(zl.p)).map_err(|e| {
            let _ = fs::remove_file(&tmp);
            Error::from(e)
        })
    }

    /// `(hits, misses)` since construction.
    pub fn stats(&self) -> (u64, u64) {
        (self.hits.load(Ordering::Relaxed), self.misses.load(Ordering::Relaxed))
    }
}
