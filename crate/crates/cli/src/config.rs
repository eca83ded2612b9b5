//! `key = value` configuration files.
//!
//! Keys are flag names without the leading dashes (`a`, `D`, `grid-points`
//! or `grid_points`). The pairs are spliced in as flags right after the
//! subcommand, so anything given on the command line overrides them.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use crate::error::CliError;

pub const ENV_VAR: &str = "QES_CONFIG";

const SUBCOMMANDS: [&str; 4] = ["solve", "transform", "verify", "table"];

pub fn parse(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut pairs = Vec::new();
    for (number, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected `key = value`", number + 1)))?;
        let key = key.trim().replace('_', "-");
        let value = value.trim().trim_matches('"').to_string();
        if key.is_empty() || key.starts_with('-') || key == "config" {
            return Err(CliError::Usage(format!("config line {}: bad key `{key}`", number + 1)));
        }
        pairs.push((key, value));
    }
    Ok(pairs)
}

/// Path from `--config PATH`, `--config=PATH` or the environment.
fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut iter = args.iter().skip(1);
    while let Some(arg) = iter.next() {
        let s = arg.to_string_lossy();
        if s == "--config" {
            return iter.next().map(PathBuf::from);
        }
        if let Some(path) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(path));
        }
    }
    std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn load(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse(&text)
}

/// The argument list with configuration flags inserted after the subcommand.
pub fn expand_args(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let pairs = load(&path)?;
    let Some(position) = args.iter().position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref())) else {
        return Ok(args);
    };
    let mut out: Vec<OsString> = args[..=position].to_vec();
    out.extend(pairs.into_iter().map(|(k, v)| OsString::from(format!("--{k}={v}"))));
    out.extend_from_slice(&args[position + 1..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_comments() {
        let pairs = parse("# problem\nfamily = clh\na=4\nc = 1/32  # harmonic part\n\ngrid_points = 900\n").unwrap();
        assert_eq!(
            pairs,
            vec![
                ("family".into(), "clh".into()),
                ("a".into(), "4".into()),
                ("c".into(), "1/32".into()),
                ("grid-points".into(), "900".into()),
            ]
        );
        assert!(parse("just words").is_err());
        assert!(parse("config = other.toml").is_err());
    }

    #[test]
    fn splices_after_the_subcommand() {
        let dir = std::env::temp_dir().join(format!("qes-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("run.conf");
        std::fs::write(&file, "a = 4\nD = 3\n").unwrap();
        let args: Vec<OsString> = ["qes", "--config", file.to_str().unwrap(), "solve", "--a", "5"]
            .iter()
            .map(OsString::from)
            .collect();
        let out = expand_args(args).unwrap();
        let out: Vec<String> = out.iter().map(|s| s.to_string_lossy().into_owned()).collect();
        assert_eq!(&out[3..], ["solve", "--a=4", "--D=3", "--a", "5"]);
        std::fs::remove_dir_all(dir).unwrap();
    }
}
