//! Job configuration: a JSON file, command-line flags, or both (flags win).
//!
//! Every number in the JSON form is a decimal string.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use ozeta::weil::{Catalog, LData, LFactor};

pub const DEFAULT_MAX_TRUNCATION: usize = 24;

/// A number carried as a decimal string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dec<T>(pub T);

impl<'de, T> Deserialize<'de> for Dec<T>
where
    T: FromStr,
    T::Err: fmt::Display,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse().map(Dec).map_err(|e| D::Error::custom(format!("`{s}` is not a valid decimal: {e}")))
    }
}

impl<T: fmt::Display> Serialize for Dec<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    Local,
    Global,
    Poincare,
    Euler,
    HeckeVerify,
    OracleVerify,
    Census,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    pub weight: Dec<u8>,
    /// Coefficients lowest degree first, constant term 1.
    pub poly: Vec<Dec<BigInt>>,
    pub multiplicity: Dec<i32>,
}

/// A stratum by catalog name (with parameters) or by explicit factors.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<Dec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<FactorSpec>>,
}

impl SurfaceSpec {
    /// Parses `name` or `name(p1,p2,...)`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (name, params) = match text.split_once('(') {
            None => (text, Vec::new()),
            Some((name, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(|| anyhow!("unbalanced parentheses in `{text}`"))?;
                let params = inner
                    .split(',')
                    .map(|p| p.trim().parse().map(Dec).map_err(|_| anyhow!("bad parameter `{p}` in `{text}`")))
                    .collect::<Result<Vec<_>>>()?;
                (name, params)
            }
        };
        Ok(SurfaceSpec { catalog: Some(name.to_string()), params, factors: None })
    }

    pub fn build(&self, q: u64) -> Result<LData> {
        match (&self.catalog, &self.factors) {
            (Some(name), None) => {
                let params: Vec<i64> = self.params.iter().map(|p| p.0).collect();
                Ok(LData::catalog(&Catalog::from_name(name, &params)?, q)?)
            }
            (None, Some(factors)) => {
                let factors = factors
                    .iter()
                    .map(|f| LFactor::new(f.weight.0, f.poly.iter().map(|c| c.0.clone()).collect(), f.multiplicity.0))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(LData::new(q, factors)?)
            }
            _ => bail!("a surface needs exactly one of `catalog` and `factors`"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumSpec {
    pub cover: SurfaceSpec,
    pub e: Dec<usize>,
}

impl StratumSpec {
    /// Parses `cover:e`, where `cover` is as in [`SurfaceSpec::parse`].
    pub fn parse(text: &str) -> Result<Self> {
        let (cover, e) = text.rsplit_once(':').ok_or_else(|| anyhow!("stratum `{text}` must look like cover:e"))?;
        let e = e.trim().parse().map_err(|_| anyhow!("bad ramification index in `{text}`"))?;
        Ok(StratumSpec { cover: SurfaceSpec::parse(cover)?, e: Dec(e) })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<CommandName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Dec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Dec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Dec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Dec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Dec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Dec<usize>>,
    /// Series truncation `N`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<Dec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_truncation: Option<Dec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strata: Option<Vec<StratumSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Dec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub census: Option<String>,
    /// Oracle colength bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<Dec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

macro_rules! overlay {
    ($base:ident, $top:ident, $($field:ident),*) => {
        $(if $top.$field.is_some() { $base.$field = $top.$field; })*
    };
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let de = &mut serde_json::Deserializer::from_str(&text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let at = e.path().to_string();
            anyhow!("{}: invalid config at `{}`: {}", path.display(), at, e.inner())
        })
    }

    /// Fields set in `top` replace those in `self`.
    pub fn overlay(mut self, top: JobConfig) -> Self {
        overlay!(
            self,
            top,
            command,
            q,
            d,
            e,
            r,
            m,
            k,
            truncation,
            max_truncation,
            surface,
            strata,
            preset,
            trace,
            suite,
            census,
            n,
            format
        );
        self
    }

    pub fn q(&self) -> Result<u64> {
        self.q.map(|v| v.0).ok_or_else(|| anyhow!("missing `q`"))
    }

    pub fn d(&self) -> Result<usize> {
        self.d.map(|v| v.0).ok_or_else(|| anyhow!("missing `d`"))
    }

    pub fn r(&self) -> usize {
        self.r.map_or(1, |v| v.0)
    }

    pub fn m(&self) -> usize {
        self.m.map_or(1, |v| v.0)
    }

    pub fn n(&self) -> Result<usize> {
        self.n.map(|v| v.0).ok_or_else(|| anyhow!("missing oracle bound `n`"))
    }

    /// The truncation order, checked against the cap.
    pub fn truncation(&self) -> Result<usize> {
        let n = self.truncation.map(|v| v.0).ok_or_else(|| anyhow!("missing truncation `N`"))?;
        let cap = self.max_truncation.map_or(DEFAULT_MAX_TRUNCATION, |v| v.0);
        if n > cap {
            bail!("truncation N = {n} exceeds the cap {cap}");
        }
        Ok(n)
    }
}
