//! Named variadic functions and the combinators used to build new ones.
//!
//! Every entry is a pure, total map `Word -> OutputValue`. Entries whose
//! natural domain is narrower (for example `mean` on non-numeric words)
//! return an in-band opaque error value instead of failing, so the checkers
//! can treat every function as total.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, OutputValue, SymbolId, Word};

pub type Params = BTreeMap<String, String>;

type EvalFn = dyn Fn(&Word) -> OutputValue + Send + Sync;

/// A named, pure, total function X* → Y.
#[derive(Clone)]
pub struct VariadicFn {
    name: String,
    params: Params,
    eval: Arc<EvalFn>,
}

impl VariadicFn {
    pub fn new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&Word) -> OutputValue + Send + Sync + 'static,
    {
        VariadicFn {
            name: name.into(),
            params: Params::new(),
            eval: Arc::new(f),
        }
    }

    /// A function mapping every word to `value`.
    pub fn constant(value: OutputValue) -> Self {
        let name = match &value {
            OutputValue::Opaque(t) => format!("const(opaque:{t})"),
            OutputValue::InX(w) => format!("const({} letters)", w.len()),
        };
        VariadicFn::new(name, move |_| value.clone())
    }

    pub fn with_param(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    #[inline]
    pub fn eval(&self, w: &Word) -> OutputValue {
        (self.eval)(w)
    }
}

impl fmt::Debug for VariadicFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VariadicFn")
            .field("name", &self.name)
            .field("params", &self.params)
            .finish()
    }
}

/// Returns `G` with `G(w) = overrides[w]` on the listed words and `F(w)`
/// elsewhere.
pub fn patch(f: &VariadicFn, overrides: BTreeMap<Word, OutputValue>) -> VariadicFn {
    let inner = f.clone();
    let name = format!("patch({}; {} overrides)", f.name(), overrides.len());
    VariadicFn::new(name, move |w| match overrides.get(w) {
        Some(v) => v.clone(),
        None => inner.eval(w),
    })
}

/// `outer ∘ inner`. An opaque inner value yields `opaque:compose:nonword`.
pub fn compose(outer: &VariadicFn, inner: &VariadicFn) -> VariadicFn {
    let (o, i) = (outer.clone(), inner.clone());
    let name = format!("{}∘{}", outer.name(), inner.name());
    VariadicFn::new(name, move |w| match i.eval(w) {
        OutputValue::InX(v) => o.eval(&v),
        OutputValue::Opaque(_) => OutputValue::opaque("compose:nonword"),
    })
}

/// One catalogue entry with its parameters resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    Identity,
    Sort,
    Uppercase,
    Length,
    Prefix { m: usize },
    Indexer { m: usize },
    Ex23F { m: usize },
    Ex23G { m: usize },
    Ex24 { m: usize },
    FactorMarker { w: Word },
    Mean,
    LetterwisePerm { sigma: BTreeMap<SymbolId, SymbolId> },
    DropToPrefixPlusPrev { m: usize },
    EpsToA { a: Letter },
    CollapseEpsA { a: Letter },
}

/// Catalogue keys with a parameter synopsis and a one-line description.
pub const CATALOGUE: &[(&str, &str, &str)] = &[
    ("identity", "", "F(x) = x"),
    ("sort", "", "letters sorted by alphabet order; associative"),
    ("uppercase", "", "letterwise case map; associative (needs case_map)"),
    (
        "length",
        "",
        "opaque length token len:n; preassociative, not a string function",
    ),
    ("prefix", "m", "x if |x| <= m, else the prefix of length m; associative"),
    (
        "indexer",
        "m",
        "prefix of length m, remaining letters encoded as v (vowel) / c (consonant)",
    ),
    (
        "ex23_F",
        "m>=1",
        "x if |x| < m, else x_1..x_{m-1} followed by the numeric letter |x|",
    ),
    (
        "ex23_G",
        "m",
        "x if |x| < m, else x_1..x_m followed by the number of distinct symbolic letters",
    ),
    (
        "ex24",
        "m>=1",
        "x if |x| <= m or |x| = m+2, else the prefix of length m",
    ),
    ("factor_marker", "w", "w if w is a factor of x, else ε"),
    (
        "mean",
        "",
        "arithmetic mean of numeric letters as a single numeric letter",
    ),
    (
        "letterwise_perm",
        "sigma",
        "letterwise permutation of symbols, e.g. sigma = \"a:b,b:a\"",
    ),
    (
        "drop_to_prefix_plus_prev",
        "m>=1",
        "x if |x| <= m, else x_1..x_m x_{k-1} with k = |x|",
    ),
    ("eps_to_a", "a", "F(ε) = a, identity elsewhere"),
    ("collapse_eps_a", "a", "F(ε) = F(a) = ε, identity elsewhere"),
];

fn param<'a>(key: &str, params: &'a Params, name: &str) -> Result<&'a str> {
    params.get(name).map(String::as_str).ok_or_else(|| Error::MissingParam {
        key: key.to_string(),
        param: name.to_string(),
    })
}

fn param_m(key: &str, params: &Params, min: usize) -> Result<usize> {
    let raw = param(key, params, "m")?;
    let m: usize = raw.trim().parse().map_err(|_| Error::InvalidParam {
        key: key.to_string(),
        param: "m".into(),
        reason: format!("`{raw}` is not a nonnegative integer"),
    })?;
    if m < min {
        return Err(Error::InvalidParam {
            key: key.to_string(),
            param: "m".into(),
            reason: format!("must be at least {min}"),
        });
    }
    Ok(m)
}

fn param_letter(key: &str, params: &Params, alphabet: &Alphabet) -> Result<Letter> {
    let raw = param(key, params, "a")?;
    let w = alphabet.parse_word(raw)?;
    match w.letters() {
        [l] => Ok(*l),
        _ => Err(Error::InvalidParam {
            key: key.to_string(),
            param: "a".into(),
            reason: format!("`{raw}` is not a single letter"),
        }),
    }
}

fn parse_sigma(key: &str, raw: &str, alphabet: &Alphabet) -> Result<BTreeMap<SymbolId, SymbolId>> {
    let bad = |reason: String| Error::InvalidParam {
        key: key.to_string(),
        param: "sigma".into(),
        reason,
    };
    let mut sigma = BTreeMap::new();
    for pair in raw.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (from, to) = pair
            .split_once(':')
            .ok_or_else(|| bad(format!("`{pair}` is not `from:to`")))?;
        let from = alphabet.symbol_id(from.trim())?;
        let to = alphabet.symbol_id(to.trim())?;
        if sigma.insert(from, to).is_some() {
            return Err(bad(format!("`{pair}` maps a symbol twice")));
        }
    }
    let sources: BTreeSet<_> = sigma.keys().collect();
    let targets: BTreeSet<_> = sigma.values().collect();
    if sources != targets || targets.len() != sigma.len() {
        return Err(bad("not a permutation of its support".into()));
    }
    Ok(sigma)
}

impl Entry {
    /// Resolves a catalogue key and its parameters against an alphabet.
    pub fn parse(key: &str, params: &Params, alphabet: &Alphabet) -> Result<Entry> {
        Ok(match key {
            "identity" => Entry::Identity,
            "sort" => Entry::Sort,
            "uppercase" => Entry::Uppercase,
            "length" => Entry::Length,
            "mean" => Entry::Mean,
            "prefix" => Entry::Prefix {
                m: param_m(key, params, 0)?,
            },
            "indexer" => Entry::Indexer {
                m: param_m(key, params, 0)?,
            },
            "ex23_F" => Entry::Ex23F {
                m: param_m(key, params, 1)?,
            },
            "ex23_G" => Entry::Ex23G {
                m: param_m(key, params, 0)?,
            },
            "ex24" => Entry::Ex24 {
                m: param_m(key, params, 1)?,
            },
            "drop_to_prefix_plus_prev" => Entry::DropToPrefixPlusPrev {
                m: param_m(key, params, 1)?,
            },
            "factor_marker" => Entry::FactorMarker {
                w: alphabet.parse_word(param(key, params, "w")?)?,
            },
            "letterwise_perm" => Entry::LetterwisePerm {
                sigma: parse_sigma(key, param(key, params, "sigma")?, alphabet)?,
            },
            "eps_to_a" => Entry::EpsToA {
                a: param_letter(key, params, alphabet)?,
            },
            "collapse_eps_a" => Entry::CollapseEpsA {
                a: param_letter(key, params, alphabet)?,
            },
            other => return Err(Error::UnknownCatalogueKey(other.to_string())),
        })
    }

    pub fn key(&self) -> &'static str {
        match self {
            Entry::Identity => "identity",
            Entry::Sort => "sort",
            Entry::Uppercase => "uppercase",
            Entry::Length => "length",
            Entry::Prefix { .. } => "prefix",
            Entry::Indexer { .. } => "indexer",
            Entry::Ex23F { .. } => "ex23_F",
            Entry::Ex23G { .. } => "ex23_G",
            Entry::Ex24 { .. } => "ex24",
            Entry::FactorMarker { .. } => "factor_marker",
            Entry::Mean => "mean",
            Entry::LetterwisePerm { .. } => "letterwise_perm",
            Entry::DropToPrefixPlusPrev { .. } => "drop_to_prefix_plus_prev",
            Entry::EpsToA { .. } => "eps_to_a",
            Entry::CollapseEpsA { .. } => "collapse_eps_a",
        }
    }

    /// Builds the function. Fails if the alphabet lacks what the entry needs.
    pub fn build(&self, alphabet: &Alphabet) -> Result<VariadicFn> {
        let key = self.key();
        let f = match self.clone() {
            Entry::Identity => VariadicFn::new(key, |w| OutputValue::InX(w.clone())),
            Entry::Sort => VariadicFn::new(key, |w| {
                let mut letters = w.letters().to_vec();
                letters.sort();
                OutputValue::InX(Word::from_letters(letters))
            }),
            Entry::Uppercase => {
                let map = alphabet.case_map().clone();
                if map.is_empty() {
                    return Err(Error::MissingCapability {
                        key: key.into(),
                        what: "a nonempty case_map".into(),
                    });
                }
                VariadicFn::new(key, move |w| {
                    OutputValue::InX(
                        w.letters()
                            .iter()
                            .map(|l| match l {
                                Letter::Symbolic(id) => Letter::Symbolic(*map.get(id).unwrap_or(id)),
                                other => *other,
                            })
                            .collect(),
                    )
                })
            }
            Entry::Length => VariadicFn::new(key, |w| OutputValue::Opaque(format!("len:{}", w.len()))),
            Entry::Prefix { m } => {
                VariadicFn::new(key, move |w| OutputValue::InX(w.prefix(m))).with_param("m", m.to_string())
            }
            Entry::Indexer { m } => {
                let (v, c) = match (alphabet.symbol("v"), alphabet.symbol("c")) {
                    (Ok(v), Ok(c)) => (v, c),
                    _ => {
                        return Err(Error::MissingCapability {
                            key: key.into(),
                            what: "symbols `v` and `c`".into(),
                        })
                    }
                };
                let vowels: BTreeSet<Letter> = alphabet
                    .letters()
                    .into_iter()
                    .filter(|l| alphabet.is_vowel(l))
                    .collect();
                VariadicFn::new(key, move |w| {
                    if w.len() <= m {
                        return OutputValue::InX(w.clone());
                    }
                    let letters = w.letters();
                    let mut out = letters[..m].to_vec();
                    out.extend(letters[m..].iter().map(|l| if vowels.contains(l) { v } else { c }));
                    OutputValue::InX(Word::from_letters(out))
                })
                .with_param("m", m.to_string())
            }
            Entry::Ex23F { m } => VariadicFn::new(key, move |w| {
                if w.len() < m {
                    return OutputValue::InX(w.clone());
                }
                let mut out = w.prefix(m - 1);
                out.push(Letter::numeric(w.len() as i64));
                OutputValue::InX(out)
            })
            .with_param("m", m.to_string()),
            Entry::Ex23G { m } => VariadicFn::new(key, move |w| {
                if w.len() < m {
                    return OutputValue::InX(w.clone());
                }
                let distinct: BTreeSet<&Letter> = w.letters().iter().filter(|l| l.is_symbolic()).collect();
                let mut out = w.prefix(m);
                out.push(Letter::numeric(distinct.len() as i64));
                OutputValue::InX(out)
            })
            .with_param("m", m.to_string()),
            Entry::Ex24 { m } => VariadicFn::new(key, move |w| {
                let k = w.len();
                if k <= m || k == m + 2 {
                    OutputValue::InX(w.clone())
                } else {
                    OutputValue::InX(w.prefix(m))
                }
            })
            .with_param("m", m.to_string()),
            Entry::FactorMarker { w: marker } => {
                let rendered = alphabet.render(&marker);
                VariadicFn::new(key, move |w| {
                    if w.contains_factor(&marker) {
                        OutputValue::InX(marker.clone())
                    } else {
                        OutputValue::InX(Word::empty())
                    }
                })
                .with_param("w", rendered)
            }
            Entry::Mean => VariadicFn::new(key, |w| {
                if w.is_empty() {
                    return OutputValue::InX(Word::empty());
                }
                let mut sum = Rational64::from_integer(0);
                for l in w.letters() {
                    match l.as_numeric() {
                        Some(v) => sum += v,
                        None => return OutputValue::opaque("mean:nonnumeric"),
                    }
                }
                let mean = sum / Rational64::from_integer(w.len() as i64);
                OutputValue::InX(Word::single(Letter::Numeric(mean)))
            }),
            Entry::LetterwisePerm { sigma } => {
                let rendered: Vec<String> = sigma
                    .iter()
                    .map(|(a, b)| {
                        format!(
                            "{}:{}",
                            alphabet.token(&Letter::Symbolic(*a)),
                            alphabet.token(&Letter::Symbolic(*b))
                        )
                    })
                    .collect();
                VariadicFn::new(key, move |w| {
                    OutputValue::InX(
                        w.letters()
                            .iter()
                            .map(|l| match l {
                                Letter::Symbolic(id) => Letter::Symbolic(*sigma.get(id).unwrap_or(id)),
                                other => *other,
                            })
                            .collect(),
                    )
                })
                .with_param("sigma", rendered.join(","))
            }
            Entry::DropToPrefixPlusPrev { m } => VariadicFn::new(key, move |w| {
                let k = w.len();
                if k <= m {
                    return OutputValue::InX(w.clone());
                }
                let mut out = w.prefix(m);
                out.push(w.letters()[k - 2]);
                OutputValue::InX(out)
            })
            .with_param("m", m.to_string()),
            Entry::EpsToA { a } => {
                let token = alphabet.token(&a);
                VariadicFn::new(key, move |w| {
                    if w.is_empty() {
                        OutputValue::InX(Word::single(a))
                    } else {
                        OutputValue::InX(w.clone())
                    }
                })
                .with_param("a", token)
            }
            Entry::CollapseEpsA { a } => {
                let token = alphabet.token(&a);
                VariadicFn::new(key, move |w| {
                    if w.is_empty() || w.letters() == [a] {
                        OutputValue::InX(Word::empty())
                    } else {
                        OutputValue::InX(w.clone())
                    }
                })
                .with_param("a", token)
            }
        };
        Ok(f)
    }
}

/// Looks up `key` in the catalogue and builds it over `alphabet`.
pub fn instantiate(key: &str, params: &Params, alphabet: &Alphabet) -> Result<VariadicFn> {
    Entry::parse(key, params, alphabet)?.build(alphabet)
}
