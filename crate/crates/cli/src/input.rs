//! Reading and writing the text formats.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use cxsurgery::bord::Cobordism;
use cxsurgery::{data, Complex, SignedEdge};

use crate::error::{CliError, CliResult};

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn create_dir(path: &Path) -> CliResult<()> {
    fs::create_dir_all(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A complex file. A missing path whose stem names a shipped complex
/// (`v23`, `xprime`, `xpp`, `w158`) loads that complex instead.
pub fn read_complex(path: &Path) -> CliResult<Complex> {
    if !path.exists() {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
        if let Some(c) = data::by_name(stem) {
            return Ok(c);
        }
    }
    let text = read_text(path)?;
    Complex::parse(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_cobordism(path: &Path) -> CliResult<Cobordism> {
    let text = read_text(path)?;
    Cobordism::from_toml(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Lines `x -> y` with `y` a signed edge label; blank lines and `#`
/// comments are skipped.
pub fn parse_edge_map(text: &str) -> Result<BTreeMap<u32, SignedEdge>, String> {
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = || format!("line {}: expected `x -> y`, found `{line}`", n + 1);
        let (a, b) = line.split_once("->").ok_or_else(bad)?;
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        let b = SignedEdge::from_int(b).ok_or_else(bad)?;
        if a == 0 || map.insert(a, b).is_some() {
            return Err(bad());
        }
    }
    Ok(map)
}

pub fn read_edge_map(path: &Path) -> CliResult<BTreeMap<u32, SignedEdge>> {
    let text = read_text(path)?;
    parse_edge_map(&text).map_err(|m| CliError::Usage(format!("{}: {m}", path.display())))
}

pub fn format_edge_map<'a>(map: impl IntoIterator<Item = (&'a u32, &'a SignedEdge)>) -> String {
    map.into_iter().map(|(a, b)| format!("{a} -> {b}\n")).collect()
}

pub fn out_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}
