//! Bounded-exhaustive deciders for the associativity equation
//! `F(xyz) = F(xF(y)z)`, the preassociativity implication
//! `F(y) = F(y′) ⇒ F(xyz) = F(xy′z)`, their domain-restricted relaxations,
//! the length-separation condition of the bounded-length hierarchy, and the
//! range properties.
//!
//! Every universally quantified law is checked over all instances whose
//! total length is at most the bound. A [`CheckVerdict::Refuted`] carries a
//! concrete, replayable witness; [`CheckVerdict::PassedUpTo`] only states
//! that no violation exists up to the bound.
//!
//! Witnesses are canonical: instances are visited in a fixed order (the
//! order documented on each checker, with every component ordered shortlex)
//! and the first violation is reported. Work is split across rayon workers
//! per outer quantifier; `find_map_first` keeps the reported witness equal to
//! the sequential one.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::catalogue::VariadicFn;
use crate::domains::DomainSet;
use crate::error::{Error, Result};
use crate::words::{enumerate_words, prefix_counts, Alphabet, OutputValue, Word};

/// Which side condition restricts the middle variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `y ∈ D` (and `y′ ∈ D` for the implication).
    Plain,
    /// `F(y) ∈ F(D)` for the equation; `y ∈ D`, `y′` free for the implication.
    Primed,
}

/// The four relaxed classes, each parameterized by a domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKind {
    A,
    Ap,
    P,
    Pp,
}

impl ClassKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "A" => Some(ClassKind::A),
            "Ap" | "A'" => Some(ClassKind::Ap),
            "P" => Some(ClassKind::P),
            "Pp" | "P'" => Some(ClassKind::Pp),
            _ => None,
        }
    }

    pub fn mode(self) -> Mode {
        match self {
            ClassKind::A | ClassKind::P => Mode::Plain,
            ClassKind::Ap | ClassKind::Pp => Mode::Primed,
        }
    }

    pub fn is_associative_family(self) -> bool {
        matches!(self, ClassKind::A | ClassKind::Ap)
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassKind::A => "A",
            ClassKind::Ap => "Ap",
            ClassKind::P => "P",
            ClassKind::Pp => "Pp",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RangeProperty {
    /// `ran(F) ⊆ D`.
    DValued,
    /// `ran(F) = F(D)`.
    DDetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CounterexampleKind {
    Associativity,
    Preassociativity,
    LengthSeparation,
    Range,
    Idempotence,
    /// `F(y)` is not a word although the class requires `F(D) ⊆ X*`.
    NonWord,
}

impl fmt::Display for CounterexampleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CounterexampleKind::Associativity => "associativity",
            CounterexampleKind::Preassociativity => "preassociativity",
            CounterexampleKind::LengthSeparation => "length-separation",
            CounterexampleKind::Range => "range",
            CounterexampleKind::Idempotence => "idempotence",
            CounterexampleKind::NonWord => "non-word",
        })
    }
}

/// A concrete violation.
///
/// Field meaning by kind:
/// - `Associativity`: `lhs = F(xyz)`, `rhs = F(xF(y)z)`; `witness_d` is the
///   shortlex-least `d ∈ D` with `F(d) = F(y)` in primed mode.
/// - `Preassociativity`: `F(y) = F(y′)`, `lhs = F(xyz)`, `rhs = F(xy′z)`.
/// - `LengthSeparation`: `lhs = F(y) = F(y′) = rhs` with `|y′| ≤ m < |y|`.
/// - `Range`: `lhs = F(y)` is a value missing from the required set.
/// - `Idempotence`: `lhs = F(y)`, `rhs = F(F(y))`.
/// - `NonWord`: `lhs = F(y)` is opaque.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub kind: CounterexampleKind,
    pub x: Word,
    pub y: Word,
    pub y_prime: Option<Word>,
    pub z: Word,
    pub lhs: OutputValue,
    pub rhs: OutputValue,
    pub witness_d: Option<Word>,
    pub note: Option<String>,
}

impl Counterexample {
    pub(crate) fn new(kind: CounterexampleKind, y: Word, lhs: OutputValue, rhs: OutputValue) -> Self {
        Counterexample {
            kind,
            x: Word::empty(),
            y,
            y_prime: None,
            z: Word::empty(),
            lhs,
            rhs,
            witness_d: None,
            note: None,
        }
    }

    /// Re-evaluates `f` on the stored words and confirms the violation.
    /// Domain membership of the witnesses is not re-checked here.
    pub fn replay(&self, f: &VariadicFn) -> bool {
        let join = |mid: &Word| self.x.concat(mid).concat(&self.z);
        match self.kind {
            CounterexampleKind::Associativity => {
                let Some(fy) = f.eval(&self.y).as_word().cloned() else {
                    return false;
                };
                let lhs = f.eval(&join(&self.y));
                let rhs = f.eval(&join(&fy));
                lhs == self.lhs && rhs == self.rhs && lhs != rhs
            }
            CounterexampleKind::Preassociativity => {
                let Some(yp) = &self.y_prime else { return false };
                let lhs = f.eval(&join(&self.y));
                let rhs = f.eval(&join(yp));
                f.eval(&self.y) == f.eval(yp) && lhs == self.lhs && rhs == self.rhs && lhs != rhs
            }
            CounterexampleKind::LengthSeparation => {
                let Some(yp) = &self.y_prime else { return false };
                let (fy, fyp) = (f.eval(&self.y), f.eval(yp));
                fy == fyp && fy == self.lhs && yp.len() < self.y.len()
            }
            CounterexampleKind::Range => f.eval(&self.y) == self.lhs,
            CounterexampleKind::Idempotence => {
                let fy = f.eval(&self.y);
                match fy.as_word() {
                    Some(w) => {
                        let ffy = f.eval(w);
                        fy == self.lhs && ffy == self.rhs && fy != ffy
                    }
                    None => false,
                }
            }
            CounterexampleKind::NonWord => {
                let fy = f.eval(&self.y);
                fy.as_word().is_none() && fy == self.lhs
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckVerdict {
    Refuted(Box<Counterexample>),
    PassedUpTo { bound: usize, cases_checked: u64 },
}

impl CheckVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, CheckVerdict::PassedUpTo { .. })
    }

    pub fn refuted(&self) -> bool {
        !self.passed()
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            CheckVerdict::Refuted(ce) => Some(ce),
            CheckVerdict::PassedUpTo { .. } => None,
        }
    }
}

/// Quantifier bounds and parallelism for a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Instances satisfy `|xyz| ≤ bound` (and `|xy′z| ≤ bound`).
    pub bound: usize,
    /// `F(D)` is approximated by `F(D ∩ X^{≤domain_bound})` in primed mode.
    pub domain_bound: usize,
    /// 1 runs sequentially; 0 uses the global rayon pool.
    pub workers: usize,
}

impl CheckOptions {
    pub fn new(bound: usize) -> Self {
        CheckOptions {
            bound,
            domain_bound: bound,
            workers: 0,
        }
    }

    pub fn with_domain_bound(mut self, domain_bound: usize) -> Self {
        self.domain_bound = domain_bound;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

type Outcome = std::result::Result<u64, Box<Counterexample>>;

/// Runs `probe` over `items` and returns the first refutation in item order,
/// or the total number of cases when none is found.
fn search<T, F>(items: &[T], workers: usize, probe: F) -> Outcome
where
    T: Sync,
    F: Fn(&T) -> Outcome + Sync,
{
    if workers == 1 {
        let mut total = 0;
        for item in items {
            total += probe(item)?;
        }
        return Ok(total);
    }
    let total = AtomicU64::new(0);
    let run = || {
        items.par_iter().find_map_first(|item| match probe(item) {
            Ok(n) => {
                total.fetch_add(n, Ordering::Relaxed);
                None
            }
            Err(ce) => Some(ce),
        })
    };
    let found = if workers == 0 {
        run()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        }
    };
    match found {
        Some(ce) => Err(ce),
        None => Ok(total.into_inner()),
    }
}

fn verdict(outcome: Outcome, bound: usize) -> CheckVerdict {
    match outcome {
        Ok(cases_checked) => CheckVerdict::PassedUpTo { bound, cases_checked },
        Err(ce) => CheckVerdict::Refuted(ce),
    }
}

/// Shared enumeration state: `words` is X^{≤bound} in shortlex order and
/// `&words[..upto[k]]` is X^{≤k}.
struct Universe {
    words: Vec<Word>,
    upto: Vec<usize>,
}

impl Universe {
    fn new(alphabet: &Alphabet, bound: usize) -> Result<Self> {
        Ok(Universe {
            words: enumerate_words(alphabet, bound)?,
            upto: prefix_counts(alphabet.size(), bound),
        })
    }

    fn up_to(&self, k: usize) -> &[Word] {
        &self.words[..self.upto[k]]
    }
}

fn fill(buf: &mut Word, x: &Word, mid: &Word, z: &Word) {
    buf.clear();
    buf.extend_from(x);
    buf.extend_from(mid);
    buf.extend_from(z);
}

/// Checks `F(xyz) = F(xF(y)z)` for every `(x, y, z)` with `|xyz| ≤ N` and
/// `y` admitted by the mode: `y ∈ D` (plain) or `F(y) ∈ F(D ∩ X^{≤N_D})`
/// (primed). Visits `y`, then `x`, then `z`, each shortlex.
pub fn check_associativity(f: &VariadicFn, d: &DomainSet, mode: Mode, opts: &CheckOptions) -> Result<CheckVerdict> {
    let n = opts.bound;
    let uni = Universe::new(d.alphabet(), n)?;
    let admitted: Vec<(Word, Option<Word>)> = match mode {
        Mode::Plain => uni
            .words
            .iter()
            .filter(|y| d.contains(y))
            .map(|y| (y.clone(), None))
            .collect(),
        Mode::Primed => {
            let mut image: HashMap<OutputValue, Word> = HashMap::new();
            for dw in d.enumerate(opts.domain_bound)? {
                image.entry(f.eval(&dw)).or_insert(dw);
            }
            uni.words
                .iter()
                .filter_map(|y| image.get(&f.eval(y)).map(|dw| (y.clone(), Some(dw.clone()))))
                .collect()
        }
    };
    let outcome = search(&admitted, opts.workers, |(y, witness_d)| {
        let fy = f.eval(y);
        let Some(fy_word) = fy.as_word() else {
            let mut ce = Counterexample::new(CounterexampleKind::NonWord, y.clone(), fy.clone(), fy);
            ce.witness_d = witness_d.clone();
            ce.note = Some("F(y) is not a word".into());
            return Err(Box::new(ce));
        };
        let rem = n - y.len();
        let (mut lhs_buf, mut rhs_buf) = (Word::empty(), Word::empty());
        let mut cases = 0;
        for x in uni.up_to(rem) {
            for z in uni.up_to(rem - x.len()) {
                fill(&mut lhs_buf, x, y, z);
                fill(&mut rhs_buf, x, fy_word, z);
                let lhs = f.eval(&lhs_buf);
                let rhs = f.eval(&rhs_buf);
                cases += 1;
                if lhs != rhs {
                    return Err(Box::new(Counterexample {
                        kind: CounterexampleKind::Associativity,
                        x: x.clone(),
                        y: y.clone(),
                        y_prime: None,
                        z: z.clone(),
                        lhs,
                        rhs,
                        witness_d: witness_d.clone(),
                        note: None,
                    }));
                }
            }
        }
        Ok(cases)
    });
    Ok(verdict(outcome, n))
}

/// Checks `F(y) = F(y′) ⇒ F(xyz) = F(xy′z)` for `|xyz|, |xy′z| ≤ N`, with
/// `y, y′ ∈ D` (plain) or `y ∈ D` and `y′` free (primed). Visits `y`, `y′`,
/// `x`, `z`, each shortlex.
pub fn check_preassociativity(f: &VariadicFn, d: &DomainSet, mode: Mode, opts: &CheckOptions) -> Result<CheckVerdict> {
    let n = opts.bound;
    let uni = Universe::new(d.alphabet(), n)?;
    let admitted: Vec<(Word, OutputValue)> = uni
        .words
        .iter()
        .filter(|y| d.contains(y))
        .map(|y| (y.clone(), f.eval(y)))
        .collect();
    let mut classes: HashMap<OutputValue, Vec<Word>> = HashMap::new();
    match mode {
        Mode::Plain => {
            for (y, v) in &admitted {
                classes.entry(v.clone()).or_default().push(y.clone());
            }
        }
        Mode::Primed => {
            for y in &uni.words {
                classes.entry(f.eval(y)).or_default().push(y.clone());
            }
        }
    }
    let outcome = search(&admitted, opts.workers, |(y, fy)| {
        let (mut lhs_buf, mut rhs_buf) = (Word::empty(), Word::empty());
        let mut cases = 0;
        for yp in classes.get(fy).map(Vec::as_slice).unwrap_or_default() {
            if yp == y {
                continue;
            }
            let rem = n - y.len().max(yp.len());
            for x in uni.up_to(rem) {
                for z in uni.up_to(rem - x.len()) {
                    fill(&mut lhs_buf, x, y, z);
                    fill(&mut rhs_buf, x, yp, z);
                    let lhs = f.eval(&lhs_buf);
                    let rhs = f.eval(&rhs_buf);
                    cases += 1;
                    if lhs != rhs {
                        return Err(Box::new(Counterexample {
                            kind: CounterexampleKind::Preassociativity,
                            x: x.clone(),
                            y: y.clone(),
                            y_prime: Some(yp.clone()),
                            z: z.clone(),
                            lhs,
                            rhs,
                            witness_d: None,
                            note: None,
                        }));
                    }
                }
            }
        }
        Ok(cases)
    });
    Ok(verdict(outcome, n))
}

/// Values of `F` on X^{≤m}, each with its shortlex-least preimage.
fn short_range(f: &VariadicFn, uni: &Universe, m: usize) -> HashMap<OutputValue, Word> {
    let mut range = HashMap::new();
    for w in uni.up_to(m) {
        range.entry(f.eval(w)).or_insert_with(|| w.clone());
    }
    range
}

/// Checks `F(y) ∈ ⋃_{k ≤ m} ran(F_k) ⇔ |y| ≤ m` for every `|y| ≤ N`. A
/// violation records `y` together with the shortlex-least short preimage
/// `y′` of `F(y)`.
pub fn check_length_separation(
    f: &VariadicFn,
    alphabet: &Alphabet,
    m: usize,
    opts: &CheckOptions,
) -> Result<CheckVerdict> {
    let n = opts.bound;
    if n < m {
        return Err(Error::BadBounds(format!(
            "length separation needs bound {n} >= m = {m}"
        )));
    }
    let uni = Universe::new(alphabet, n)?;
    let range = short_range(f, &uni, m);
    let outcome = search(&uni.words, opts.workers, |y| {
        let fy = f.eval(y);
        match range.get(&fy) {
            Some(short) if y.len() > m => {
                let mut ce = Counterexample::new(CounterexampleKind::LengthSeparation, y.clone(), fy.clone(), fy);
                ce.y_prime = Some(short.clone());
                ce.note = Some(format!("F(y) is attained on words of length <= {m} but |y| > {m}"));
                Err(Box::new(ce))
            }
            None if y.len() <= m => {
                let mut ce = Counterexample::new(CounterexampleKind::LengthSeparation, y.clone(), fy.clone(), fy);
                ce.note = Some(format!("|y| <= {m} but F(y) is not attained on short words"));
                Err(Box::new(ce))
            }
            _ => Ok(1),
        }
    });
    Ok(verdict(outcome, n))
}

/// Checks `ran(F) ⊆ D` or `ran(F) = F(D)` over X^{≤N}.
pub fn check_range(f: &VariadicFn, d: &DomainSet, which: RangeProperty, opts: &CheckOptions) -> Result<CheckVerdict> {
    let n = opts.bound;
    let uni = Universe::new(d.alphabet(), n)?;
    let outcome = match which {
        RangeProperty::DValued => search(&uni.words, opts.workers, |w| {
            let fw = f.eval(w);
            match fw.as_word() {
                Some(v) if d.contains(v) => Ok(1),
                _ => {
                    let mut ce = Counterexample::new(CounterexampleKind::Range, w.clone(), fw.clone(), fw);
                    ce.note = Some(format!("F(y) is not in {}", d.describe()));
                    Err(Box::new(ce))
                }
            }
        }),
        RangeProperty::DDetermined => {
            let image: HashMap<OutputValue, Word> = {
                let mut image = HashMap::new();
                for dw in d.enumerate(n)? {
                    image.entry(f.eval(&dw)).or_insert(dw);
                }
                image
            };
            search(&uni.words, opts.workers, |w| {
                let fw = f.eval(w);
                if image.contains_key(&fw) {
                    Ok(1)
                } else {
                    let mut ce = Counterexample::new(CounterexampleKind::Range, w.clone(), fw.clone(), fw);
                    ce.note = Some(format!("F(y) is not attained on {}", d.describe()));
                    Err(Box::new(ce))
                }
            })
        }
    };
    Ok(verdict(outcome, n))
}

/// Checks `ran(F_{m+1}) ⊆ ⋃_{k ≤ m} ran(F_k)`.
pub fn check_m_determined_criterion(
    f: &VariadicFn,
    alphabet: &Alphabet,
    m: usize,
    opts: &CheckOptions,
) -> Result<CheckVerdict> {
    let n = opts.bound;
    if n < m + 1 {
        return Err(Error::BadBounds(format!(
            "criterion needs bound {n} >= m + 1 = {}",
            m + 1
        )));
    }
    let uni = Universe::new(alphabet, m + 1)?;
    let range = short_range(f, &uni, m);
    let level = &uni.words[uni.upto[m]..];
    let outcome = search(level, opts.workers, |w| {
        let fw = f.eval(w);
        if range.contains_key(&fw) {
            Ok(1)
        } else {
            let mut ce = Counterexample::new(CounterexampleKind::Range, w.clone(), fw.clone(), fw);
            ce.note = Some(format!("value on length {} not attained on lengths <= {m}", m + 1));
            Err(Box::new(ce))
        }
    });
    Ok(verdict(outcome, n))
}

/// Checks `F(F(d)) = F(d)` (with `F(d)` a word) for every `d ∈ D ∩ X^{≤N}`.
pub fn check_idempotent_on(f: &VariadicFn, d: &DomainSet, opts: &CheckOptions) -> Result<CheckVerdict> {
    let n = opts.bound;
    let items = d.enumerate(n)?;
    let outcome = search(&items, opts.workers, |dw| {
        let fd = f.eval(dw);
        match fd.as_word() {
            None => {
                let mut ce = Counterexample::new(CounterexampleKind::NonWord, dw.clone(), fd.clone(), fd);
                ce.note = Some("F(y) is not a word".into());
                Err(Box::new(ce))
            }
            Some(w) => {
                let ffd = f.eval(w);
                if ffd == fd {
                    Ok(1)
                } else {
                    Err(Box::new(Counterexample::new(
                        CounterexampleKind::Idempotence,
                        dw.clone(),
                        fd,
                        ffd,
                    )))
                }
            }
        }
    });
    Ok(verdict(outcome, n))
}

/// Runs the checker for `class` with domain `d`.
pub fn check_class(f: &VariadicFn, class: ClassKind, d: &DomainSet, opts: &CheckOptions) -> Result<CheckVerdict> {
    if class.is_associative_family() {
        check_associativity(f, d, class.mode(), opts)
    } else {
        check_preassociativity(f, d, class.mode(), opts)
    }
}
