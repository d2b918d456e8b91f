//! Quasi-inverses of tabulated functions and the factorizations `F = f ∘ H`
//! they induce.
//!
//! A function is tabulated on X^{≤N}; a quasi-inverse `g` picks, for every
//! value `v` in the range, the shortlex-least preimage of `v` (preferring
//! preimages inside a domain `D` when one is given). Then `H = g ∘ F` is a
//! string function and `f = F|ran(H)` is one-to-one with `F = f ∘ H`.
//!
//! `H` only exists on X^{≤N}, so every law checked on it runs at a reduced
//! bound `N − growth`, where `growth` is the largest amount by which `H`
//! lengthens a word. That keeps every evaluation of `H` inside the table.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::catalogue::VariadicFn;
use crate::checkers::{
    check_associativity, check_class, check_idempotent_on, check_range, CheckOptions, CheckVerdict, ClassKind,
    Counterexample, CounterexampleKind, Mode, RangeProperty,
};
use crate::domains::DomainSet;
use crate::error::Result;
use crate::words::{enumerate_words, Alphabet, OutputValue, Word};

/// Value returned by [`FnTable::to_fn`] outside the tabulated domain.
pub const UNDEFINED: &str = "table:undefined";

/// A function tabulated on exactly X^{≤bound}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FnTable {
    entries: Arc<BTreeMap<Word, OutputValue>>,
    bound: usize,
    source: String,
    alphabet: Arc<Alphabet>,
}

impl FnTable {
    pub fn entries(&self) -> &BTreeMap<Word, OutputValue> {
        &self.entries
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn get(&self, w: &Word) -> Option<&OutputValue> {
        self.entries.get(w)
    }

    pub fn range(&self) -> BTreeSet<OutputValue> {
        self.entries.values().cloned().collect()
    }

    /// The table as a total function; words longer than the bound map to
    /// `opaque:table:undefined`.
    pub fn to_fn(&self) -> VariadicFn {
        let entries = Arc::clone(&self.entries);
        VariadicFn::new(format!("table({})", self.source), move |w| {
            entries
                .get(w)
                .cloned()
                .unwrap_or_else(|| OutputValue::opaque(UNDEFINED))
        })
    }
}

/// Evaluates `f` on every word of length at most `bound`.
pub fn tabulate(f: &VariadicFn, alphabet: &Arc<Alphabet>, bound: usize) -> Result<FnTable> {
    let entries = enumerate_words(alphabet, bound)?
        .into_iter()
        .map(|w| {
            let v = f.eval(&w);
            (w, v)
        })
        .collect();
    Ok(FnTable {
        entries: Arc::new(entries),
        bound,
        source: f.name().to_string(),
        alphabet: Arc::clone(alphabet),
    })
}

/// How preimages were chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Flavor {
    Plain,
    /// Preimages inside the named domain are preferred, so `g(F(D)) ⊆ D`.
    RelativeTo(String),
}

/// A quasi-inverse of a tabulated function, defined exactly on its range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiInverse {
    g: BTreeMap<OutputValue, Word>,
    flavor: Flavor,
    uncovered: BTreeSet<OutputValue>,
}

impl QuasiInverse {
    pub fn get(&self, v: &OutputValue) -> Option<&Word> {
        self.g.get(v)
    }

    pub fn map(&self) -> &BTreeMap<OutputValue, Word> {
        &self.g
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    /// Range values without a preimage in the domain at this bound; their
    /// images fall back to the overall shortlex-least preimage.
    pub fn uncovered(&self) -> &BTreeSet<OutputValue> {
        &self.uncovered
    }

    /// Whether every range value has a preimage inside the domain at this
    /// bound. Always true for the plain flavor.
    pub fn certified_at_bound(&self) -> bool {
        self.uncovered.is_empty()
    }

    /// `table(g(v)) = v` for every `v` in the range of `table`.
    pub fn is_quasi_inverse_of(&self, table: &FnTable) -> bool {
        let range = table.range();
        range.len() == self.g.len()
            && range
                .iter()
                .all(|v| self.g.get(v).and_then(|w| table.get(w)) == Some(v))
    }
}

/// Builds the canonical quasi-inverse of `table`: the shortlex-least
/// preimage of every value, taken inside `d` whenever one exists there.
pub fn quasi_inverse(table: &FnTable, d: Option<&DomainSet>) -> QuasiInverse {
    let mut overall: BTreeMap<OutputValue, Word> = BTreeMap::new();
    let mut inside: BTreeMap<OutputValue, Word> = BTreeMap::new();
    // Entries iterate in shortlex order, so the first preimage seen is the least.
    for (w, v) in table.entries() {
        overall.entry(v.clone()).or_insert_with(|| w.clone());
        if d.is_some_and(|d| d.contains(w)) {
            inside.entry(v.clone()).or_insert_with(|| w.clone());
        }
    }
    match d {
        None => QuasiInverse {
            g: overall,
            flavor: Flavor::Plain,
            uncovered: BTreeSet::new(),
        },
        Some(d) => {
            let uncovered = overall.keys().filter(|v| !inside.contains_key(v)).cloned().collect();
            for (v, w) in inside {
                overall.insert(v, w);
            }
            QuasiInverse {
                g: overall,
                flavor: Flavor::RelativeTo(d.describe()),
                uncovered,
            }
        }
    }
}

/// One class verdict recorded in a factorization report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCheck {
    /// `"F"` or `"H"`.
    pub subject: &'static str,
    pub class: ClassKind,
    pub domain: String,
    pub verdict: CheckVerdict,
}

/// The consequences of a D-determined range: `H` is D-valued and associative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminedRange {
    pub f_d_determined: CheckVerdict,
    /// Present only when `F` has D-determined range at the bound.
    pub h_d_valued: Option<CheckVerdict>,
    pub h_associative: Option<CheckVerdict>,
}

/// Verification record of a factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationReport {
    /// Tabulation bound N.
    pub bound: usize,
    /// `max(|H(w)| − |w|, 0)` over the table.
    pub growth: usize,
    /// `N − growth`: the bound for laws that evaluate `H` twice.
    pub check_bound: usize,
    /// Two words of `ran(H)` with the same `f` value, if any.
    pub injectivity_violation: Option<(Word, Word)>,
    /// Words with `f(H(w)) ≠ F(w)`.
    pub round_trip_mismatches: Vec<Word>,
    /// `H ∘ H = H` on `D` (or on all words).
    pub idempotence: CheckVerdict,
    /// `H(D) ⊆ D`, when a domain is given.
    pub h_preserves_domain: Option<CheckVerdict>,
    /// Class verdicts for `F` (preassociative families) and `H`
    /// (associative families).
    pub class_checks: Vec<ClassCheck>,
    pub determined_range: Option<DeterminedRange>,
}

impl FactorizationReport {
    pub fn injective(&self) -> bool {
        self.injectivity_violation.is_none()
    }

    pub fn round_trip_ok(&self) -> bool {
        self.round_trip_mismatches.is_empty()
    }
}

/// `F = f ∘ H` over X^{≤N}.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub table: FnTable,
    pub quasi_inverse: QuasiInverse,
    /// `H = g ∘ F`; every value is a word.
    pub h: FnTable,
    /// `f = F|ran(H)`.
    pub f: BTreeMap<Word, OutputValue>,
    pub report: FactorizationReport,
}

/// Tabulates `f` at `opts.bound`, builds `g`, `H` and `f`, and verifies the
/// factorization. Verification failures are recorded in the report.
pub fn factorize(
    func: &VariadicFn,
    alphabet: &Arc<Alphabet>,
    d: Option<&DomainSet>,
    opts: &CheckOptions,
) -> Result<Factorization> {
    let n = opts.bound;
    let table = tabulate(func, alphabet, n)?;
    let qi = quasi_inverse(&table, d);

    let mut h_entries = BTreeMap::new();
    let mut growth = 0;
    for (w, v) in table.entries() {
        let hw = qi.get(v).expect("quasi-inverse covers the range").clone();
        growth = growth.max(hw.len().saturating_sub(w.len()));
        h_entries.insert(w.clone(), OutputValue::InX(hw));
    }
    let h = FnTable {
        entries: Arc::new(h_entries),
        bound: n,
        source: format!("H[{}]", func.name()),
        alphabet: Arc::clone(alphabet),
    };
    let f_map: BTreeMap<Word, OutputValue> = qi
        .map()
        .iter()
        .map(|(v, w)| (w.clone(), table.get(w).cloned().unwrap_or_else(|| v.clone())))
        .collect();

    // (a) f is one-to-one on ran(H).
    let mut seen: BTreeMap<&OutputValue, &Word> = BTreeMap::new();
    let mut injectivity_violation = None;
    for (w, v) in &f_map {
        if let Some(prev) = seen.insert(v, w) {
            injectivity_violation = Some((prev.clone(), w.clone()));
            break;
        }
    }

    // (b) f ∘ H = F.
    let round_trip_mismatches = table
        .entries()
        .iter()
        .filter(|(w, v)| {
            let hw = h.get(w).and_then(OutputValue::as_word);
            hw.and_then(|hw| f_map.get(hw)) != Some(*v)
        })
        .map(|(w, _)| w.clone())
        .collect();

    let check_bound = n.saturating_sub(growth);
    let reduced = CheckOptions {
        bound: check_bound,
        domain_bound: opts.domain_bound.min(check_bound),
        workers: opts.workers,
    };
    let h_fn = h.to_fn();
    let full = DomainSet::full(Arc::clone(alphabet));

    // (c) idempotence on D.
    let idempotence = check_idempotent_on(&h_fn, d.unwrap_or(&full), &reduced)?;

    // (d) H(D) ⊆ D.
    let h_preserves_domain = d.map(|d| maps_into(&h, d));

    // (e) class verdicts.
    let mut class_checks = Vec::new();
    let full_opts = opts.with_domain_bound(opts.domain_bound.min(n));
    let targets: Vec<(ClassKind, ClassKind, &DomainSet)> = match d {
        None => vec![(ClassKind::P, ClassKind::A, &full)],
        Some(d) => vec![(ClassKind::P, ClassKind::A, d), (ClassKind::Pp, ClassKind::Ap, d)],
    };
    for (f_class, h_class, dom) in targets {
        class_checks.push(ClassCheck {
            subject: "F",
            class: f_class,
            domain: dom.describe(),
            verdict: check_class(func, f_class, dom, &full_opts)?,
        });
        class_checks.push(ClassCheck {
            subject: "H",
            class: h_class,
            domain: dom.describe(),
            verdict: check_class(&h_fn, h_class, dom, &reduced)?,
        });
    }

    // (f) D-determined range ⇒ H is D-valued and associative.
    let determined_range = match d {
        None => None,
        Some(d) => {
            let f_d_determined = check_range(func, d, RangeProperty::DDetermined, &full_opts)?;
            let (h_d_valued, h_associative) = if f_d_determined.passed() {
                (
                    Some(check_range(&h_fn, d, RangeProperty::DValued, &full_opts)?),
                    Some(check_associativity(&h_fn, &full, Mode::Plain, &reduced)?),
                )
            } else {
                (None, None)
            };
            Some(DeterminedRange {
                f_d_determined,
                h_d_valued,
                h_associative,
            })
        }
    };

    Ok(Factorization {
        table,
        quasi_inverse: qi,
        h,
        f: f_map,
        report: FactorizationReport {
            bound: n,
            growth,
            check_bound,
            injectivity_violation,
            round_trip_mismatches,
            idempotence,
            h_preserves_domain,
            class_checks,
            determined_range,
        },
    })
}

/// `H(w) ∈ D` for every tabulated `w ∈ D`, reported as a range verdict.
fn maps_into(h: &FnTable, d: &DomainSet) -> CheckVerdict {
    let mut cases = 0;
    for (w, v) in h.entries() {
        if !d.contains(w) {
            continue;
        }
        cases += 1;
        if !v.as_word().is_some_and(|hw| d.contains(hw)) {
            let mut ce = Counterexample::new(CounterexampleKind::Range, w.clone(), v.clone(), v.clone());
            ce.note = Some(format!("H(y) is not in {}", d.describe()));
            return CheckVerdict::Refuted(Box::new(ce));
        }
    }
    CheckVerdict::PassedUpTo {
        bound: h.bound(),
        cases_checked: cases,
    }
}
