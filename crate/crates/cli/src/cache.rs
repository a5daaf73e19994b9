//! Default moduli remembered on disk, one `p s c0,c1,...,1` line per field.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use kts_core::gf::default_field;
use kts_core::FieldCtx;

const FILE: &str = "moduli.txt";

fn cache_dir() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os("KTS_CACHE_DIR") {
        return Some(PathBuf::from(dir));
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(dir).join("kts"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("kts"))
}

fn lookup(text: &str, p: u32, s: usize) -> Option<Vec<u32>> {
    text.lines().find_map(|line| {
        let mut parts = line.split_whitespace();
        let lp: u32 = parts.next()?.parse().ok()?;
        let ls: usize = parts.next()?.parse().ok()?;
        if (lp, ls) != (p, s) {
            return None;
        }
        parts.next()?.split(',').map(|c| c.parse().ok()).collect()
    })
}

/// GF(p^s) with the remembered modulus, or the default one (which is then
/// remembered). Cache I/O failures fall back silently to the default.
pub fn cached_field(p: u32, s: usize) -> anyhow::Result<FieldCtx> {
    let path = cache_dir().map(|d| d.join(FILE));
    let text = path
        .as_ref()
        .and_then(|p| fs::read_to_string(p).ok())
        .unwrap_or_default();
    if let Some(modulus) = lookup(&text, p, s) {
        if let Ok(ctx) = FieldCtx::extension(p, s, Some(&modulus)) {
            return Ok(ctx);
        }
    }
    let ctx = default_field(p, s)?;
    if let Some(path) = path {
        let line = ctx
            .modulus()
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",");
        let _ = remember(&path, &format!("{p} {s} {line}"));
    }
    Ok(ctx)
}

fn remember(path: &std::path::Path, line: &str) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut f = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    writeln!(f, "{line}")
}
