//! Letters, alphabets and words.
//!
//! An [`Alphabet`] is a finite, ordered set of letters: configured symbol
//! tokens first (in list order), then exact rational samples (in increasing
//! order). That order drives the shortlex order on [`Word`], which is the
//! single canonical order used for enumeration, canonical counterexamples and
//! canonical preimage choices.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};

/// Index of a symbol in its alphabet's symbol list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(pub u32);

/// A single letter. Symbolic letters precede numeric ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Symbolic(SymbolId),
    Numeric(Rational64),
}

impl Letter {
    pub fn numeric(value: i64) -> Self {
        Letter::Numeric(Rational64::from_integer(value))
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Letter::Symbolic(_))
    }

    pub fn as_numeric(&self) -> Option<Rational64> {
        match self {
            Letter::Numeric(v) => Some(*v),
            Letter::Symbolic(_) => None,
        }
    }
}

/// A finite word over some alphabet. `Word::default()` is the empty word ε.
///
/// Words are ordered shortlex: shorter words first, equal lengths compared
/// letter by letter.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn single(letter: Letter) -> Self {
        Word(vec![letter])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        Word(out)
    }

    /// `self` repeated `n` times.
    pub fn power(&self, n: usize) -> Word {
        let mut out = Vec::with_capacity(self.len() * n);
        for _ in 0..n {
            out.extend_from_slice(&self.0);
        }
        Word(out)
    }

    /// The prefix of length `min(n, |self|)`.
    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.len())].to_vec())
    }

    /// Whether `factor` occurs contiguously in `self`. Every word contains ε.
    pub fn contains_factor(&self, factor: &Word) -> bool {
        if factor.is_empty() {
            return true;
        }
        self.0.windows(factor.len()).any(|w| w == factor.letters())
    }

    pub(crate) fn clear(&mut self) {
        self.0.clear();
    }

    pub(crate) fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Returns `x` followed by `n` copies of `y`.
pub fn concat_power(x: &Word, y: &Word, n: usize) -> Word {
    x.concat(&y.power(n))
}

/// A value in the codomain of a variadic function: either a word (codomain
/// X*) or an opaque token standing for some other set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OutputValue {
    InX(Word),
    Opaque(String),
}

impl OutputValue {
    pub fn opaque(token: impl Into<String>) -> Self {
        OutputValue::Opaque(token.into())
    }

    pub fn as_word(&self) -> Option<&Word> {
        match self {
            OutputValue::InX(w) => Some(w),
            OutputValue::Opaque(_) => None,
        }
    }
}

impl From<Word> for OutputValue {
    fn from(w: Word) -> Self {
        OutputValue::InX(w)
    }
}

/// A finite ordered alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, SymbolId>,
    numeric_samples: Vec<Rational64>,
    vowels: BTreeSet<SymbolId>,
    case_map: BTreeMap<SymbolId, SymbolId>,
}

impl Alphabet {
    /// Builds an alphabet from symbol tokens and numeric samples given as
    /// rational strings (`"0"`, `"1/2"`, `"-3"`).
    pub fn new<S: AsRef<str>, N: AsRef<str>>(symbols: &[S], numeric_samples: &[N]) -> Result<Self> {
        let mut index = HashMap::new();
        let mut syms = Vec::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            let s = s.as_ref();
            if s.is_empty()
                || s == "ε"
                || s.chars().any(char::is_whitespace)
                || s.starts_with("opaque:")
                || parse_rational(s).is_some()
            {
                return Err(Error::InvalidSymbol(s.to_string()));
            }
            if index.insert(s.to_string(), SymbolId(i as u32)).is_some() {
                return Err(Error::DuplicateSymbol(s.to_string()));
            }
            syms.push(s.to_string());
        }
        let mut samples: Vec<Rational64> = Vec::with_capacity(numeric_samples.len());
        for n in numeric_samples {
            let n = n.as_ref();
            let v = parse_rational(n).ok_or_else(|| Error::BadRational(n.to_string()))?;
            if let Some(last) = samples.last() {
                if *last >= v {
                    return Err(Error::UnsortedSamples(n.to_string()));
                }
            }
            samples.push(v);
        }
        if syms.is_empty() && samples.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Alphabet {
            symbols: syms,
            index,
            numeric_samples: samples,
            vowels: BTreeSet::new(),
            case_map: BTreeMap::new(),
        })
    }

    /// Marks the given symbols as vowels.
    pub fn with_vowels<S: AsRef<str>>(mut self, vowels: &[S]) -> Result<Self> {
        for v in vowels {
            let id = self.symbol_id(v.as_ref())?;
            self.vowels.insert(id);
        }
        Ok(self)
    }

    /// Installs a case map given as `(lower, upper)` pairs. Lower and upper
    /// sides must be disjoint, so applying the map twice equals applying it
    /// once.
    pub fn with_case_map<S: AsRef<str>>(mut self, pairs: &[(S, S)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (lo, up) in pairs {
            let lo_id = self.symbol_id(lo.as_ref())?;
            let up_id = self.symbol_id(up.as_ref())?;
            if map.insert(lo_id, up_id).is_some() {
                return Err(Error::BadCaseMap(format!("`{}` mapped twice", lo.as_ref())));
            }
        }
        if let Some(clash) = map.values().find(|v| map.contains_key(v)) {
            return Err(Error::BadCaseMap(format!(
                "`{}` is both a source and a target",
                self.symbols[clash.0 as usize]
            )));
        }
        self.case_map = map;
        Ok(self)
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn numeric_samples(&self) -> &[Rational64] {
        &self.numeric_samples
    }

    pub fn case_map(&self) -> &BTreeMap<SymbolId, SymbolId> {
        &self.case_map
    }

    pub fn is_vowel(&self, letter: &Letter) -> bool {
        match letter {
            Letter::Symbolic(id) => self.vowels.contains(id),
            Letter::Numeric(_) => false,
        }
    }

    pub fn has_symbol(&self, token: &str) -> bool {
        self.index.contains_key(token)
    }

    pub fn symbol_id(&self, token: &str) -> Result<SymbolId> {
        self.index
            .get(token)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(token.to_string()))
    }

    pub fn symbol(&self, token: &str) -> Result<Letter> {
        self.symbol_id(token).map(Letter::Symbolic)
    }

    /// All letters in the alphabet's total order.
    pub fn letters(&self) -> Vec<Letter> {
        (0..self.symbols.len())
            .map(|i| Letter::Symbolic(SymbolId(i as u32)))
            .chain(self.numeric_samples.iter().copied().map(Letter::Numeric))
            .collect()
    }

    pub fn size(&self) -> usize {
        self.symbols.len() + self.numeric_samples.len()
    }

    pub fn token(&self, letter: &Letter) -> String {
        match letter {
            Letter::Symbolic(id) => self
                .symbols
                .get(id.0 as usize)
                .cloned()
                .unwrap_or_else(|| format!("#{}", id.0)),
            Letter::Numeric(v) => v.to_string(),
        }
    }

    /// Renders a word: `ε` when empty, tokens concatenated when every token is
    /// a single character and the result parses back unambiguously,
    /// space-separated otherwise.
    pub fn render(&self, word: &Word) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let tokens: Vec<String> = word.letters().iter().map(|l| self.token(l)).collect();
        if tokens.iter().all(|t| t.chars().count() == 1) {
            let joined = tokens.concat();
            if self.parse_word(&joined).as_ref() == Ok(word) {
                return joined;
            }
        }
        tokens.join(" ")
    }

    pub fn render_value(&self, value: &OutputValue) -> String {
        match value {
            OutputValue::InX(w) => self.render(w),
            OutputValue::Opaque(t) => format!("opaque:{t}"),
        }
    }

    fn parse_token(&self, token: &str) -> Option<Letter> {
        if let Some(id) = self.index.get(token) {
            return Some(Letter::Symbolic(*id));
        }
        parse_rational(token).map(Letter::Numeric)
    }

    /// Parses the rendering produced by [`Alphabet::render`]. Numeric tokens
    /// need not be among the samples.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        if text.contains(char::is_whitespace) {
            return text
                .split_whitespace()
                .map(|t| self.parse_token(t).ok_or_else(|| Error::BadWord(text.to_string())))
                .collect();
        }
        if let Some(id) = self.index.get(text) {
            return Ok(Word::single(Letter::Symbolic(*id)));
        }
        if let Some(v) = parse_rational(text).filter(|v| v.to_string() == text) {
            return Ok(Word::single(Letter::Numeric(v)));
        }
        text.chars()
            .map(|c| {
                self.parse_token(c.encode_utf8(&mut [0; 4]))
                    .ok_or_else(|| Error::BadWord(text.to_string()))
            })
            .collect()
    }

    /// Parses `opaque:TOKEN` or a word.
    pub fn parse_value(&self, text: &str) -> Result<OutputValue> {
        match text.trim().strip_prefix("opaque:") {
            Some(tok) => Ok(OutputValue::Opaque(tok.to_string())),
            None => self.parse_word(text).map(OutputValue::InX),
        }
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<Rational64> {
    let s = s.trim();
    if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit() || c == '/' || c == '-') {
        return None;
    }
    let v: Rational64 = s.parse().ok()?;
    if *v.denom() == 0 {
        return None;
    }
    Some(v)
}

/// All words of length at most `max_len`, in shortlex order.
pub fn enumerate_words(alphabet: &Alphabet, max_len: usize) -> Result<Vec<Word>> {
    let letters = alphabet.letters();
    if letters.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    let mut out = vec![Word::empty()];
    let mut level_start = 0;
    for _ in 0..max_len {
        let level_end = out.len();
        for i in level_start..level_end {
            for l in &letters {
                let mut w = out[i].clone();
                w.push(*l);
                out.push(w);
            }
        }
        level_start = level_end;
    }
    Ok(out)
}

/// `counts[k]` = number of words of length ≤ k; with a shortlex enumeration
/// `words`, `&words[..counts[k]]` is exactly X^{≤k}.
pub(crate) fn prefix_counts(alphabet_size: usize, max_len: usize) -> Vec<usize> {
    let mut counts = Vec::with_capacity(max_len + 1);
    let (mut total, mut level) = (0usize, 1usize);
    for _ in 0..=max_len {
        total += level;
        counts.push(total);
        level *= alphabet_size;
    }
    counts
}

impl fmt::Display for SymbolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}
