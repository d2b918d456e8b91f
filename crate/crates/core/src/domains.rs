//! Subsets D ⊆ X* that parameterize the relaxed classes.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::words::{enumerate_words, Alphabet, Letter, Word};

/// The defining predicate of a domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainSpec {
    /// All of X*.
    Full,
    /// Words of length at most `m` (the family D_m).
    MaxLen(usize),
    /// Words of length at least `m`.
    MinLen(usize),
    /// Repeated single letters x^n, including ε.
    Repeats,
    /// Words having the given word as a contiguous factor.
    Factor(Word),
    /// Single numeric letters with value at most the threshold.
    Threshold(Rational64),
    /// A finite, nonempty set of words.
    Explicit(BTreeSet<Word>),
}

#[derive(Debug, Clone)]
pub struct DomainSet {
    spec: DomainSpec,
    alphabet: Arc<Alphabet>,
}

impl DomainSet {
    pub fn new(spec: DomainSpec, alphabet: Arc<Alphabet>) -> Result<Self> {
        if let DomainSpec::Explicit(set) = &spec {
            if set.is_empty() {
                return Err(Error::EmptyDomain("explicit".into()));
            }
        }
        Ok(DomainSet { spec, alphabet })
    }

    pub fn full(alphabet: Arc<Alphabet>) -> Self {
        DomainSet {
            spec: DomainSpec::Full,
            alphabet,
        }
    }

    pub fn max_len(m: usize, alphabet: Arc<Alphabet>) -> Self {
        DomainSet {
            spec: DomainSpec::MaxLen(m),
            alphabet,
        }
    }

    pub fn spec(&self) -> &DomainSpec {
        &self.spec
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn is_full(&self) -> bool {
        self.spec == DomainSpec::Full
    }

    pub fn contains(&self, w: &Word) -> bool {
        match &self.spec {
            DomainSpec::Full => true,
            DomainSpec::MaxLen(m) => w.len() <= *m,
            DomainSpec::MinLen(m) => w.len() >= *m,
            DomainSpec::Repeats => w.letters().windows(2).all(|p| p[0] == p[1]),
            DomainSpec::Factor(v) => w.contains_factor(v),
            DomainSpec::Threshold(s) => {
                matches!(w.letters(), [Letter::Numeric(v)] if v <= s)
            }
            DomainSpec::Explicit(set) => set.contains(w),
        }
    }

    /// `{ w : |w| ≤ bound, w ∈ D }` in shortlex order.
    pub fn enumerate(&self, bound: usize) -> Result<Vec<Word>> {
        let mut words = enumerate_words(&self.alphabet, bound)?;
        words.retain(|w| self.contains(w));
        Ok(words)
    }

    /// Short human-readable description, e.g. `D_2` or `factor(ab)`.
    pub fn describe(&self) -> String {
        match &self.spec {
            DomainSpec::Full => "X*".into(),
            DomainSpec::MaxLen(m) => format!("D_{m}"),
            DomainSpec::MinLen(m) => format!("min_len({m})"),
            DomainSpec::Repeats => "repeats".into(),
            DomainSpec::Factor(v) => format!("factor({})", self.alphabet.render(v)),
            DomainSpec::Threshold(s) => format!("threshold({s})"),
            DomainSpec::Explicit(set) => {
                let items: Vec<String> = set.iter().map(|w| self.alphabet.render(w)).collect();
                format!("{{{}}}", items.join(", "))
            }
        }
    }
}

/// Whether every word of `d1` up to `bound` also lies in `d2`.
pub fn subset_up_to(d1: &DomainSet, d2: &DomainSet, bound: usize) -> Result<bool> {
    Ok(d1.enumerate(bound)?.iter().all(|w| d2.contains(w)))
}
