//! `key=value` run configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use reclab_core::{parse_rational, AlphaSpec, Error, Precision, Rational, Result};

pub const PRECISION_ENV: &str = "RECLAB_PRECISION_BITS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse(format!("unknown format `{s}` (text|csv)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Csv => "csv",
        })
    }
}

/// Settings shared by every subcommand. Unset fields fall back to the
/// subcommand default.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    pub alpha: Option<AlphaSpec>,
    pub k: Option<u32>,
    pub nmax: Option<u64>,
    pub precision: Option<u32>,
    pub epsilon: Option<Rational>,
    pub delta: Option<Rational>,
    pub format: Option<Format>,
    pub workers: Option<usize>,
    pub seed: Option<u64>,
}

/// Ordered `key=value` pairs; `#` starts a comment.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", i + 1)))?;
        out.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(out)
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::Parse(format!("config key `{key}`: invalid value `{value}`")))
}

impl RunConfig {
    /// Takes the recognized keys out of `pairs`, leaving the rest.
    pub fn take_from(pairs: &mut BTreeMap<String, String>) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let mut take = |key: &str| pairs.remove(key);
        if let Some(v) = take("alpha") {
            cfg.alpha = Some(v.parse()?);
        }
        if let Some(v) = take("k") {
            cfg.k = Some(parse_num("k", &v)?);
        }
        if let Some(v) = take("nmax") {
            cfg.nmax = Some(parse_num("nmax", &v)?);
        }
        if let Some(v) = take("precision") {
            cfg.precision = Some(parse_num("precision", &v)?);
        }
        if let Some(v) = take("epsilon") {
            cfg.epsilon = Some(parse_rational(&v)?);
        }
        if let Some(v) = take("delta") {
            cfg.delta = Some(parse_rational(&v)?);
        }
        if let Some(v) = take("format") {
            cfg.format = Some(v.parse()?);
        }
        if let Some(v) = take("workers") {
            cfg.workers = Some(parse_num("workers", &v)?);
        }
        if let Some(v) = take("seed") {
            cfg.seed = Some(parse_num("seed", &v)?);
        }
        Ok(cfg)
    }

    /// A config file holding only recognized keys.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut pairs = parse_pairs(&text)?;
        let cfg = Self::take_from(&mut pairs)?;
        if let Some(key) = pairs.keys().next() {
            return Err(Error::Parse(format!("{}: unknown config key `{key}`", path.display())));
        }
        Ok(cfg)
    }

    /// Fields set in `other` win.
    pub fn overlay(self, other: RunConfig) -> RunConfig {
        RunConfig {
            alpha: other.alpha.or(self.alpha),
            k: other.k.or(self.k),
            nmax: other.nmax.or(self.nmax),
            precision: other.precision.or(self.precision),
            epsilon: other.epsilon.or(self.epsilon),
            delta: other.delta.or(self.delta),
            format: other.format.or(self.format),
            workers: other.workers.or(self.workers),
            seed: other.seed.or(self.seed),
        }
    }

    pub fn alpha(&self) -> AlphaSpec {
        self.alpha.clone().unwrap_or_else(AlphaSpec::sqrt2)
    }

    pub fn k(&self) -> u32 {
        self.k.unwrap_or(2)
    }

    pub fn nmax(&self, default: u64) -> u64 {
        self.nmax.unwrap_or(default)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    /// Fills an unset precision from the environment override.
    pub fn with_env(mut self) -> Result<Self> {
        if self.precision.is_none() {
            if let Ok(v) = std::env::var(PRECISION_ENV) {
                self.precision = Some(parse_num(PRECISION_ENV, v.trim())?);
            }
        }
        Ok(self)
    }

    /// Policy precision for `(k, n_max)`, raised by the configured override.
    /// Overrides below policy are rejected.
    pub fn precision_for(&self, k: u32, n_max: u64) -> Result<Precision> {
        Precision::for_run(k, n_max, self.precision)
    }
}

impl fmt::Display for RunConfig {
    /// Every key with its effective value, `-` for unset.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn opt<T: fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map_or_else(|| "-".to_string(), |x| x.to_string())
        }
        write!(
            f,
            "alpha={} k={} nmax={} precision={} epsilon={} delta={} format={} workers={} seed={}",
            self.alpha(),
            self.k(),
            opt(&self.nmax),
            opt(&self.precision),
            opt(&self.epsilon),
            opt(&self.delta),
            self.format(),
            opt(&self.workers),
            self.seed()
        )
    }
}
