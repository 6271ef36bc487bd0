//! Key-value sweep configuration files.
//!
//! One sweep spec per file: `key = value` lines, `#` comments, blank lines
//! ignored. Keys match the corresponding long flags (kebab or snake case);
//! explicit command-line flags take precedence over file values.

use crate::error::{CliError, CliResult};
use std::collections::BTreeMap;
use std::path::Path;

pub fn load(path: &Path) -> CliResult<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    parse(&text).map_err(|msg| CliError::Usage(format!("{}: {msg}", path.display())))
}

fn parse(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `key = value`", lineno + 1))?;
        let key = key.trim().to_ascii_lowercase().replace('-', "_");
        let value = value.trim().to_string();
        if key.is_empty() || value.is_empty() {
            return Err(format!("line {}: empty key or value", lineno + 1));
        }
        if map.insert(key.clone(), value).is_some() {
            return Err(format!("line {}: duplicate key `{key}`", lineno + 1));
        }
    }
    Ok(map)
}

/// Takes `key` out of the map, parsed; config supplies a value only when the
/// command line did not.
pub fn take<T: std::str::FromStr>(
    map: &mut BTreeMap<String, String>,
    key: &str,
    cli_value: Option<T>,
) -> CliResult<Option<T>> {
    let file_value = map.remove(key);
    if cli_value.is_some() {
        return Ok(cli_value);
    }
    match file_value {
        None => Ok(None),
        Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
            CliError::Usage(format!("config key `{key}`: cannot parse value `{raw}`"))
        }),
    }
}

/// Fails on any keys left over after the command consumed what it knows.
pub fn reject_unknown(map: &BTreeMap<String, String>) -> CliResult<()> {
    if let Some(key) = map.keys().next() {
        return Err(CliError::Usage(format!("unknown config key `{key}`")));
    }
    Ok(())
}
