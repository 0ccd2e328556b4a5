//! Resource limits and run configuration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ceilings that turn combinatorial blow-ups into [`Error::ResourceLimit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    /// Maximum number of terms in any intermediate polynomial.
    pub term_limit: usize,
    /// Maximum number of greedy subtraction steps in a basis expansion.
    pub step_limit: usize,
    /// Entries per memo cache.
    pub cache_entries: usize,
    /// Maximum number of lattice points examined by the SNP check.
    pub box_limit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            term_limit: 1_000_000,
            step_limit: 100_000,
            cache_entries: 100_000,
            box_limit: 1_000_000,
        }
    }
}

impl Limits {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("term_limit", self.term_limit),
            ("step_limit", self.step_limit),
            ("cache_entries", self.cache_entries),
            ("box_limit", self.box_limit),
        ] {
            if v == 0 {
                return Err(Error::InvalidInput(format!("{name} must be positive")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

/// Thread count for parallel sweeps.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Parallelism {
    #[default]
    Auto,
    Threads(usize),
}

impl Serialize for Parallelism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Parallelism::Auto => s.serialize_str("auto"),
            Parallelism::Threads(n) => s.serialize_u64(*n as u64),
        }
    }
}

impl<'de> Deserialize<'de> for Parallelism {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Count(usize),
            Name(String),
        }
        match Repr::deserialize(d)? {
            Repr::Count(0) => Err(serde::de::Error::custom("parallelism must be positive")),
            Repr::Count(n) => Ok(Parallelism::Threads(n)),
            Repr::Name(s) if s == "auto" => Ok(Parallelism::Auto),
            Repr::Name(s) => s
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .map(Parallelism::Threads)
                .ok_or_else(|| serde::de::Error::custom(format!("bad parallelism {s:?}"))),
        }
    }
}

impl std::str::FromStr for Parallelism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.trim().to_string()))
            .map_err(|e| Error::Parse(e.to_string()))
    }
}

/// The JSON document accepted by `--config`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub term_limit: usize,
    pub step_limit: usize,
    pub cache_entries: usize,
    pub box_limit: usize,
    pub format: OutputFormat,
    pub parallelism: Parallelism,
}

impl Default for Config {
    fn default() -> Self {
        let l = Limits::default();
        Config {
            term_limit: l.term_limit,
            step_limit: l.step_limit,
            cache_entries: l.cache_entries,
            box_limit: l.box_limit,
            format: OutputFormat::default(),
            parallelism: Parallelism::default(),
        }
    }
}

impl Config {
    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: Config =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("config JSON: {e}")))?;
        cfg.limits().validate()?;
        Ok(cfg)
    }

    pub fn limits(&self) -> Limits {
        Limits {
            term_limit: self.term_limit,
            step_limit: self.step_limit,
            cache_entries: self.cache_entries,
            box_limit: self.box_limit,
        }
    }
}
