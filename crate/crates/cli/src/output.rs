use std::env;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use tempfile::NamedTempFile;

use crate::args::OutputArgs;

pub const OUT_DIR_ENV: &str = "ROTORCOOL_OUT_DIR";

/// Where `command` writes its table: `--out`, else the default directory from
/// the environment, else nowhere.
pub fn destination(output: &OutputArgs, command: &str) -> Option<PathBuf> {
    output.out.clone().or_else(|| {
        env::var_os(OUT_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(|d| PathBuf::from(d).join(format!("{command}.{}", output.format.extension())))
    })
}

/// Writes `bytes` to a temporary file beside `path`, then renames it over
/// `path`, so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create a temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)
        .and_then(|_| tmp.as_file().sync_all())
        .with_context(|| format!("cannot write {}", path.display()))?;
    tmp.persist(path)
        .with_context(|| format!("cannot replace {}", path.display()))?;
    Ok(())
}

pub fn to_json<T: serde::Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Emits a rendered table to its destination, or to stdout when there is
/// none and `stdout_fallback` is set.
pub fn emit(dest: Option<&Path>, bytes: &[u8], stdout_fallback: bool) -> Result<()> {
    match dest {
        Some(path) => write_atomic(path, bytes),
        None if stdout_fallback => {
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
        None => Ok(()),
    }
}
