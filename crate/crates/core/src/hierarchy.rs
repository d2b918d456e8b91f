//! Membership of a function across the bounded-length levels `D_0 ⊆ D_1 ⊆ …`
//! and the degree of associativeness derived from it.
//!
//! Because `D_m ⊆ D_{m+1}`, membership can only be lost as `m` grows. The
//! profile records one verdict per level; the observed level `k` is the last
//! level passed before the first refutation, and the degree is `2^{-k}`.

use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use rayon::prelude::*;

use crate::catalogue::VariadicFn;
use crate::checkers::{check_class, CheckOptions, CheckVerdict, ClassKind};
use crate::domains::DomainSet;
use crate::error::{Error, Result};
use crate::words::Alphabet;

/// Observed hierarchy level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KObserved {
    /// Passed at `D_k`, refuted at `D_{k+1}`.
    Finite(usize),
    /// Passed at every profiled level.
    Infinite,
    /// Refuted already at `D_0`.
    OutsideHierarchy,
}

impl fmt::Display for KObserved {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KObserved::Finite(k) => write!(f, "{k}"),
            KObserved::Infinite => f.write_str("infinite"),
            KObserved::OutsideHierarchy => f.write_str("outside hierarchy"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchyProfile {
    pub family: ClassKind,
    pub bound: usize,
    pub max_m: usize,
    /// `(m, verdict at D_m)` for `m = 0..=max_m`.
    pub per_m: Vec<(usize, CheckVerdict)>,
    pub k: KObserved,
}

impl HierarchyProfile {
    /// `2^{-k}` for the `A` and `P` families; `0` when every level passed;
    /// `None` outside the hierarchy and for the primed families, which
    /// carry no degree.
    pub fn degree(&self) -> Option<Rational64> {
        if !matches!(self.family, ClassKind::A | ClassKind::P) {
            return None;
        }
        match self.k {
            KObserved::Finite(k) => Some(Rational64::new(1, 1i64 << k.min(62))),
            KObserved::Infinite => Some(Rational64::from_integer(0)),
            KObserved::OutsideHierarchy => None,
        }
    }

    /// Whether no level passes after a refuted one.
    pub fn is_monotone(&self) -> bool {
        self.per_m.windows(2).all(|p| !(p[0].1.refuted() && p[1].1.passed()))
    }

    /// One-line degree summary with its bound annotation.
    pub fn degree_line(&self) -> String {
        let at = format!("observed at N={}, max_m={}", self.bound, self.max_m);
        match (self.k, self.degree()) {
            (KObserved::OutsideHierarchy, _) => format!("outside hierarchy ({at})"),
            (_, None) => format!("no degree for family {} (k = {}, {at})", self.family, self.k),
            (KObserved::Infinite, Some(_)) => format!("d = 0 ({at})"),
            (KObserved::Finite(0), Some(_)) => {
                format!("d = 2^-0 = 1 ({at}; k = 0 counts level D_0)")
            }
            (KObserved::Finite(k), Some(d)) => format!("d = 2^-{k} = {d} ({at})"),
        }
    }
}

/// Checks `f` against `family` at `D_0, …, D_{max_m}` with quantifier bound
/// `opts.bound`. Levels are checked in parallel.
pub fn profile(
    f: &VariadicFn,
    alphabet: &Arc<Alphabet>,
    family: ClassKind,
    max_m: usize,
    opts: &CheckOptions,
) -> Result<HierarchyProfile> {
    if max_m > opts.bound {
        return Err(Error::BadBounds(format!(
            "max_m = {max_m} exceeds the bound {}",
            opts.bound
        )));
    }
    let per_m = (0..=max_m)
        .into_par_iter()
        .map(|m| {
            let d = DomainSet::max_len(m, Arc::clone(alphabet));
            check_class(f, family, &d, opts).map(|v| (m, v))
        })
        .collect::<Result<Vec<_>>>()?;
    let k = match per_m.iter().position(|(_, v)| v.refuted()) {
        Some(0) => KObserved::OutsideHierarchy,
        Some(i) => KObserved::Finite(i - 1),
        None => KObserved::Infinite,
    };
    Ok(HierarchyProfile {
        family,
        bound: opts.bound,
        max_m,
        per_m,
        k,
    })
}

/// A function that belongs to one class and is refuted in another.
#[derive(Debug, Clone)]
pub struct Separation {
    pub function: VariadicFn,
    pub member: CheckVerdict,
    pub refuted: CheckVerdict,
}

/// Returns the first generated function that passes `inside` and is refuted
/// in `outside`, both with domain `d`. No completeness is claimed: `None`
/// only means the generator was exhausted.
pub fn separation_search<I>(
    inside: ClassKind,
    outside: ClassKind,
    d: &DomainSet,
    candidates: I,
    opts: &CheckOptions,
) -> Result<Option<Separation>>
where
    I: IntoIterator<Item = VariadicFn>,
{
    if inside == outside {
        return Ok(None);
    }
    for f in candidates {
        let refuted = check_class(&f, outside, d, opts)?;
        if refuted.passed() {
            continue;
        }
        let member = check_class(&f, inside, d, opts)?;
        if member.passed() {
            return Ok(Some(Separation {
                function: f,
                member,
                refuted,
            }));
        }
    }
    Ok(None)
}
