//! Flat `key = value` configuration files.
//!
//! Keys are the long CLI flag names without the leading dashes (`t-end`,
//! `omega-unit`, ...). Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Result, SweepError};

pub const KNOWN_KEYS: &[&str] = &[
    "gamma0",
    "theta",
    "omega",
    "init",
    "t-end",
    "points",
    "out",
    "format",
    "jobs",
    "dt",
    "omega-unit",
    "summary",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    origin: String,
    /// key -> (value, 1-based line number)
    values: BTreeMap<String, (String, usize)>,
}

impl Config {
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| SweepError::Config {
                path: origin.to_string(),
                line: idx + 1,
                msg,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected 'key = value', got '{line}'")))?;
            let key = key.trim().trim_start_matches("--").replace('_', "-");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(err(format!("unknown key '{key}'")));
            }
            let value = value.trim().trim_matches('"').to_string();
            if values.insert(key.clone(), (value, idx + 1)).is_some() {
                return Err(err(format!("duplicate key '{key}'")));
            }
        }
        Ok(Self {
            origin: origin.to_string(),
            values,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|(v, _)| v.as_str())
    }

    /// Parse the value of `key` if present.
    pub fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.values
            .get(key)
            .map(|(v, line)| {
                v.parse::<T>().map_err(|e| SweepError::Config {
                    path: self.origin.clone(),
                    line: *line,
                    msg: format!("{key}: {e}"),
                })
            })
            .transpose()
    }
}

/// CLI value if given, else config value, else the default.
pub fn resolve<T>(cli: Option<T>, config: Option<T>, default: T) -> T {
    cli.or(config).unwrap_or(default)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_pairs() {
        let c = Config::parse(
            "# comment\ngamma0 = 0.1, 10\n\nt-end=25\nomega_unit = gamma0\n",
            "x",
        )
        .unwrap();
        assert_eq!(c.get("gamma0"), Some("0.1, 10"));
        assert_eq!(c.parsed::<f64>("t-end").unwrap(), Some(25.0));
        assert_eq!(c.get("omega-unit"), Some("gamma0"));
        assert_eq!(c.get("theta"), None);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(
            Config::parse("gamma0 0.1", "x"),
            Err(SweepError::Config { line: 1, .. })
        ));
        assert!(Config::parse("colour = red", "x").is_err());
        assert!(Config::parse("jobs = 1\njobs = 2", "x").is_err());
        let c = Config::parse("points = many", "x").unwrap();
        assert!(c.parsed::<usize>("points").is_err());
    }

    #[test]
    fn precedence() {
        assert_eq!(resolve(Some(1), Some(2), 3), 1);
        assert_eq!(resolve(None, Some(2), 3), 2);
        assert_eq!(resolve(None::<i32>, None, 3), 3);
    }
}
