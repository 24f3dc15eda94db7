//! Guards and caps, loadable from a `key = value` file.
//!
//! Recognised keys: `port`, `search_limit`, `max_word_len`,
//! `max_search_word_len`, `max_artin_limit`, `max_enumerate`,
//! `max_cycle_length`. Blank lines and `#` comments are ignored.

use std::fs;
use std::path::Path;

use num_bigint::BigUint;

use ebwtlab::decomposition::DEFAULT_SEARCH_LIMIT;

/// Environment variable holding the default service port.
pub const PORT_ENV: &str = "EBWTLAB_PORT";
/// Environment variable pointing at a config file.
pub const CONFIG_ENV: &str = "EBWTLAB_CONFIG";

pub const DEFAULT_PORT: u16 = 8080;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Maximum compositions an exhaustive search may visit.
    pub search_limit: BigUint,
    /// Word length cap for every operation except search.
    pub max_word_len: Option<usize>,
    /// Word length cap for search.
    pub max_search_word_len: Option<usize>,
    pub max_artin_limit: u64,
    /// Maximum compositions `enumerate` will list.
    pub max_enumerate: u64,
    pub max_cycle_length: usize,
}

impl Limits {
    /// Defaults for the command line: no word caps.
    pub fn cli() -> Self {
        Limits {
            search_limit: BigUint::from(DEFAULT_SEARCH_LIMIT),
            max_word_len: None,
            max_search_word_len: None,
            max_artin_limit: 100_000_000,
            max_enumerate: 10_000_000,
            max_cycle_length: 30,
        }
    }

    /// Defaults for the HTTP service.
    pub fn service() -> Self {
        Limits {
            max_word_len: Some(4096),
            max_search_word_len: Some(64),
            max_artin_limit: 1_000_000,
            max_enumerate: 100_000,
            max_cycle_length: 20,
            ..Limits::cli()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub port: u16,
    pub limits: Limits,
}

impl Config {
    pub fn service_defaults() -> Self {
        let port = std::env::var(PORT_ENV)
            .ok()
            .and_then(|p| p.parse().ok())
            .unwrap_or(DEFAULT_PORT);
        Config {
            port,
            limits: Limits::service(),
        }
    }

    pub fn load(path: &Path, base: Config) -> Result<Config, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Config::parse(&text, base)
    }

    /// Applies the `key = value` lines of `text` on top of `base`.
    pub fn parse(text: &str, mut base: Config) -> Result<Config, String> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| format!("line {}: invalid {what} '{value}'", lineno + 1);
            let cap = |v: &str| -> Result<Option<usize>, String> {
                match v {
                    "none" | "0" => Ok(None),
                    _ => v.parse().map(Some).map_err(|_| bad(key)),
                }
            };
            let l = &mut base.limits;
            match key {
                "port" => base.port = value.parse().map_err(|_| bad(key))?,
                "search_limit" => l.search_limit = value.parse().map_err(|_| bad(key))?,
                "max_word_len" => l.max_word_len = cap(value)?,
                "max_search_word_len" => l.max_search_word_len = cap(value)?,
                "max_artin_limit" => l.max_artin_limit = value.parse().map_err(|_| bad(key))?,
                "max_enumerate" => l.max_enumerate = value.parse().map_err(|_| bad(key))?,
                "max_cycle_length" => l.max_cycle_length = value.parse().map_err(|_| bad(key))?,
                other => return Err(format!("line {}: unknown key '{other}'", lineno + 1)),
            }
        }
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> Config {
        Config {
            port: DEFAULT_PORT,
            limits: Limits::service(),
        }
    }

    #[test]
    fn parses_keys_and_comments() {
        let cfg = Config::parse(
            "# guards\nport = 9000\nsearch_limit=5000\nmax_search_word_len = 32 # tighter\n\nmax_word_len = none\n",
            base(),
        )
        .unwrap();
        assert_eq!(cfg.port, 9000);
        assert_eq!(cfg.limits.search_limit, BigUint::from(5000u32));
        assert_eq!(cfg.limits.max_search_word_len, Some(32));
        assert_eq!(cfg.limits.max_word_len, None);
        assert_eq!(
            cfg.limits.max_artin_limit,
            Limits::service().max_artin_limit
        );
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(Config::parse("port 9000", base())
            .unwrap_err()
            .contains("line 1"));
        assert!(Config::parse("colour = red", base())
            .unwrap_err()
            .contains("unknown key"));
        assert!(Config::parse("port = lots", base())
            .unwrap_err()
            .contains("invalid port"));
    }
}
