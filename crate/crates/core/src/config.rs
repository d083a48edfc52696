//! Run configuration and the append-only JSONL run log.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::bounds::{default_c0, parse_rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub precision: u32,
    pub factor_effort: u64,
    pub factor_bits: u64,
    pub field_degree_cap: usize,
    pub c0: String,
    pub belyi_degree_cap: u64,
    pub workers: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision: 128,
            factor_effort: 20_000_000,
            factor_bits: 512,
            field_degree_cap: 8,
            c0: default_c0().to_string(),
            belyi_degree_cap: crate::belyi::DEFAULT_DEGREE_CAP,
            workers: 1,
        }
    }
}

impl Config {
    pub fn from_toml(s: &str) -> Result<Config> {
        let c: Config = toml::from_str(s).map_err(|e| Error::InvalidInput(format!("config: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Config> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        Config::from_toml(&s)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |f: &str| Err(Error::InvalidInput(format!("config: {f} must be positive")));
        if self.precision == 0 {
            return bad("precision");
        }
        if self.factor_effort == 0 || self.factor_bits == 0 {
            return bad("factor_effort and factor_bits");
        }
        if self.field_degree_cap == 0 {
            return bad("field_degree_cap");
        }
        if self.belyi_degree_cap == 0 {
            return bad("belyi_degree_cap");
        }
        if self.workers == 0 {
            return bad("workers");
        }
        match self.c0_value() {
            Some(c) if c > BigRational::from_integer(0.into()) => Ok(()),
            _ => bad("c0"),
        }
    }

    pub fn c0_value(&self) -> Option<BigRational> {
        parse_rational(&self.c0)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("config serializes")
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        sha256_hex(self.to_json().to_string().as_bytes())
    }
}

pub fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub timestamp: String,
    pub subcommand: String,
    pub argv: Vec<String>,
    pub config: Config,
    pub config_hash: String,
    /// (path, sha256) of every file read.
    pub input_digests: Vec<(String, String)>,
    pub status: i32,
    pub payload: Value,
    pub version: String,
}

impl RunRecord {
    pub fn append(&self, path: &Path) -> Result<()> {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        let line = serde_json::to_string(self).expect("record serializes");
        writeln!(f, "{line}").map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
    }

    pub fn read_all(path: &Path) -> Result<Vec<RunRecord>> {
        let f = std::fs::File::open(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        BufReader::new(f)
            .lines()
            .enumerate()
            .filter(|(_, l)| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
            .map(|(i, l)| {
                let l = l.map_err(|e| Error::InvalidInput(e.to_string()))?;
                serde_json::from_str(&l).map_err(|e| Error::InvalidInput(format!("run log line {}: {e}", i + 1)))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip() {
        let c = Config { precision: 256, workers: 2, ..Config::default() };
        assert_eq!(Config::from_toml(&c.to_toml()).unwrap(), c);
        assert_eq!(Config::from_toml("precision = 64").unwrap().precision, 64);
        assert!(Config::from_toml("precision = 0").is_err());
        assert!(Config::from_toml("bogus = 1").is_err());
        assert_eq!(Config::default().c0, "139/100");
    }

    #[test]
    fn hash_tracks_content() {
        let a = Config::default();
        let b = Config { precision: 64, ..Config::default() };
        assert_eq!(a.hash(), Config::default().hash());
        assert_ne!(a.hash(), b.hash());
    }
}
