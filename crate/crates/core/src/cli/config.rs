//! Declarative configuration: alphabet, named functions, named domains and
//! default bounds, read from TOML.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::catalogue::{compose, instantiate, patch, Params, VariadicFn};
use crate::domains::{DomainSet, DomainSpec};
use crate::error::{Error, Result};
use crate::words::{parse_rational, Alphabet};

/// The configuration used when no `--config` is given.
pub const DEFAULT_CONFIG: &str = include_str!("default_config.toml");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    alphabet: AlphabetSection,
    #[serde(default)]
    defaults: DefaultsSection,
    #[serde(default)]
    functions: Vec<FunctionSection>,
    #[serde(default)]
    domains: Vec<DomainSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlphabetSection {
    #[serde(default)]
    symbols: Vec<String>,
    #[serde(default)]
    numeric_samples: Vec<toml::Value>,
    #[serde(default)]
    vowels: Vec<String>,
    #[serde(default)]
    case_map: Vec<(String, String)>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct DefaultsSection {
    bound: Option<usize>,
    domain_bound: Option<usize>,
    max_m: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionSection {
    name: String,
    key: Option<String>,
    #[serde(default)]
    params: BTreeMap<String, toml::Value>,
    patch: Option<String>,
    #[serde(default)]
    overrides: BTreeMap<String, String>,
    compose: Option<(String, String)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DomainSection {
    name: String,
    kind: String,
    m: Option<usize>,
    word: Option<String>,
    threshold: Option<toml::Value>,
    words: Option<Vec<String>>,
}

/// Default quantifier bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Defaults {
    pub bound: usize,
    /// `None` means "same as the bound in use".
    pub domain_bound: Option<usize>,
    pub max_m: usize,
}

/// A fully resolved configuration. Every name resolves and every parameter
/// has been validated.
#[derive(Debug, Clone)]
pub struct Config {
    alphabet: Arc<Alphabet>,
    functions: Vec<(String, VariadicFn)>,
    domains: Vec<(String, DomainSet)>,
    defaults: Defaults,
    digest: String,
}

/// Strings, integers and floats written as TOML scalars, as plain text.
fn scalar_text(v: &toml::Value) -> Option<String> {
    match v {
        toml::Value::String(s) => Some(s.clone()),
        toml::Value::Integer(i) => Some(i.to_string()),
        toml::Value::Boolean(b) => Some(b.to_string()),
        _ => None,
    }
}

impl Config {
    pub fn default_config() -> Result<Config> {
        Config::parse(DEFAULT_CONFIG)
    }

    pub fn parse(text: &str) -> Result<Config> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let digest = hex::encode(Sha256::digest(text.as_bytes()));

        let samples = file
            .alphabet
            .numeric_samples
            .iter()
            .map(|v| scalar_text(v).ok_or_else(|| Error::Config(format!("numeric sample `{v}` is not a scalar"))))
            .collect::<Result<Vec<_>>>()?;
        let mut alphabet = Alphabet::new(&file.alphabet.symbols, &samples)?.with_vowels(&file.alphabet.vowels)?;
        if !file.alphabet.case_map.is_empty() {
            alphabet = alphabet.with_case_map(&file.alphabet.case_map)?;
        }
        let alphabet = Arc::new(alphabet);

        let mut functions: Vec<(String, VariadicFn)> = Vec::new();
        for sec in &file.functions {
            if functions.iter().any(|(n, _)| n == &sec.name) {
                return Err(Error::Config(format!("function `{}` defined twice", sec.name)));
            }
            let lookup = |name: &str| -> Result<VariadicFn> {
                functions
                    .iter()
                    .find(|(n, _)| n == name)
                    .map(|(_, f)| f.clone())
                    .ok_or_else(|| Error::UnknownFunction(name.to_string()))
            };
            let f = match (&sec.key, &sec.patch, &sec.compose) {
                (Some(key), None, None) => {
                    let mut params = Params::new();
                    for (k, v) in &sec.params {
                        let text = scalar_text(v).ok_or_else(|| Error::InvalidParam {
                            key: key.clone(),
                            param: k.clone(),
                            reason: "not a scalar".into(),
                        })?;
                        params.insert(k.clone(), text);
                    }
                    instantiate(key, &params, &alphabet)?
                }
                (None, Some(base), None) => {
                    let mut overrides = BTreeMap::new();
                    for (w, v) in &sec.overrides {
                        overrides.insert(alphabet.parse_word(w)?, alphabet.parse_value(v)?);
                    }
                    patch(&lookup(base)?, overrides)
                }
                (None, None, Some((outer, inner))) => compose(&lookup(outer)?, &lookup(inner)?),
                _ => {
                    return Err(Error::Config(format!(
                        "function `{}` needs exactly one of `key`, `patch`, `compose`",
                        sec.name
                    )))
                }
            };
            if sec.key.is_none() && !sec.params.is_empty() {
                return Err(Error::Config(format!("function `{}`: `params` needs `key`", sec.name)));
            }
            if sec.patch.is_none() && !sec.overrides.is_empty() {
                return Err(Error::Config(format!(
                    "function `{}`: `overrides` needs `patch`",
                    sec.name
                )));
            }
            functions.push((sec.name.clone(), f.with_name(sec.name.clone())));
        }

        let mut domains: Vec<(String, DomainSet)> = Vec::new();
        for sec in &file.domains {
            if sec.name == "full" || domains.iter().any(|(n, _)| n == &sec.name) {
                return Err(Error::Config(format!("domain `{}` defined twice", sec.name)));
            }
            let need =
                |what: &str| Error::Config(format!("domain `{}` of kind `{}` needs `{what}`", sec.name, sec.kind));
            let spec = match sec.kind.as_str() {
                "full" => DomainSpec::Full,
                "max_len" => DomainSpec::MaxLen(sec.m.ok_or_else(|| need("m"))?),
                "min_len" => DomainSpec::MinLen(sec.m.ok_or_else(|| need("m"))?),
                "repeats" => DomainSpec::Repeats,
                "factor" => DomainSpec::Factor(alphabet.parse_word(sec.word.as_deref().ok_or_else(|| need("word"))?)?),
                "threshold" => {
                    let raw = sec
                        .threshold
                        .as_ref()
                        .and_then(scalar_text)
                        .ok_or_else(|| need("threshold"))?;
                    DomainSpec::Threshold(parse_rational(&raw).ok_or(Error::BadRational(raw))?)
                }
                "explicit" => {
                    let words = sec.words.as_ref().ok_or_else(|| need("words"))?;
                    let set = words
                        .iter()
                        .map(|w| alphabet.parse_word(w))
                        .collect::<Result<BTreeSet<_>>>()?;
                    if set.is_empty() {
                        return Err(Error::EmptyDomain(sec.name.clone()));
                    }
                    DomainSpec::Explicit(set)
                }
                other => return Err(Error::Config(format!("domain `{}`: unknown kind `{other}`", sec.name))),
            };
            domains.push((sec.name.clone(), DomainSet::new(spec, Arc::clone(&alphabet))?));
        }

        Ok(Config {
            alphabet,
            functions,
            domains,
            defaults: Defaults {
                bound: file.defaults.bound.unwrap_or(4),
                domain_bound: file.defaults.domain_bound,
                max_m: file.defaults.max_m.unwrap_or(3),
            },
            digest,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn defaults(&self) -> Defaults {
        self.defaults
    }

    /// SHA-256 of the configuration text, hex encoded.
    pub fn digest(&self) -> &str {
        &self.digest
    }

    /// Configured functions in definition order.
    pub fn functions(&self) -> &[(String, VariadicFn)] {
        &self.functions
    }

    /// Configured domains in definition order (`full` is implicit).
    pub fn domains(&self) -> &[(String, DomainSet)] {
        &self.domains
    }

    pub fn function(&self, name: &str) -> Result<&VariadicFn> {
        self.functions
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
            .ok_or_else(|| Error::UnknownFunction(name.to_string()))
    }

    /// Looks up a domain; `full` always resolves to X*.
    pub fn domain(&self, name: &str) -> Result<DomainSet> {
        if name == "full" {
            return Ok(DomainSet::full(Arc::clone(&self.alphabet)));
        }
        self.domains
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d.clone())
            .ok_or_else(|| Error::UnknownDomain(name.to_string()))
    }
}
