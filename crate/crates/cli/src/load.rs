//! Reading space and suite files.

use std::path::Path;

use ricf_core::SpaceSpec;
use serde::de::DeserializeOwned;

use crate::error::{CliError, Result};
use crate::suite::SuiteConfig;

/// 1-based line and column of a byte offset.
fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let head = &src[..offset.min(src.len())];
    let line = head.matches('\n').count() + 1;
    let column = head.rfind('\n').map_or(head.len(), |i| head.len() - i - 1) + 1;
    (line, column)
}

pub fn parse_toml<T: DeserializeOwned>(src: &str, path: &Path) -> Result<T> {
    toml::from_str(src).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| line_col(src, s.start));
        CliError::Parse {
            path: path.to_path_buf(),
            line,
            column,
            message: e.message().trim().to_string(),
        }
    })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses and validates a space file. Expression profiles are compiled
/// here so that grammar errors surface at load time.
pub fn load_spec(path: &Path) -> Result<SpaceSpec> {
    let spec: SpaceSpec = parse_toml(&read(path)?, path)?;
    spec.validate().map_err(|source| CliError::Invalid {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(spec)
}

pub fn load_suite(path: &Path) -> Result<SuiteConfig> {
    parse_toml(&read(path)?, path)
}

pub fn spec_to_toml(spec: &SpaceSpec) -> String {
    toml::to_string(spec).expect("space specs always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_to_positions() {
        let src = "a = 1\nbb = 2\n";
        assert_eq!(line_col(src, 0), (1, 1));
        assert_eq!(line_col(src, 6), (2, 1));
        assert_eq!(line_col(src, 9), (2, 4));
    }

    #[test]
    fn unknown_field_is_located() {
        let src = "name = \"x\"\nn = 3\nwarpp = 1\n";
        let err = parse_toml::<SpaceSpec>(src, Path::new("x.toml")).unwrap_err();
        match err {
            CliError::Parse { line, .. } => assert_eq!(line, 3),
            e => panic!("unexpected {e}"),
        }
    }
}
