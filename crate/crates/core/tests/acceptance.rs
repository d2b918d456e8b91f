//! Acceptance criteria, one check per criterion. Prints one PASS/FAIL line
//! for each and exits nonzero if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use num_rational::Rational64;
use relassoc::catalogue::{instantiate, Params, VariadicFn, CATALOGUE};
use relassoc::checkers::{
    check_associativity, check_class, check_idempotent_on, check_length_separation, check_preassociativity,
    check_range, CheckOptions, CheckVerdict, ClassKind, Counterexample, CounterexampleKind, Mode, RangeProperty,
};
use relassoc::cli::{self, Config};
use relassoc::domains::{subset_up_to, DomainSet, DomainSpec};
use relassoc::factorization::factorize;
use relassoc::generators::RandomTables;
use relassoc::hierarchy::{profile, KObserved};
use relassoc::words::{enumerate_words, Alphabet, OutputValue, Word};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn alphabet(symbols: &[&str], samples: &[&str]) -> Arc<Alphabet> {
    Arc::new(Alphabet::new(symbols, samples).unwrap().with_vowels(&["a"]).unwrap())
}

fn ab() -> Arc<Alphabet> {
    alphabet(&["a", "b"], &[])
}

fn abvc() -> Arc<Alphabet> {
    alphabet(&["a", "b", "v", "c"], &[])
}

fn bits() -> Arc<Alphabet> {
    Arc::new(Alphabet::new(&[] as &[&str], &["0", "1"]).unwrap())
}

fn func(a: &Alphabet, key: &str, params: &[(&str, &str)]) -> VariadicFn {
    let p: Params = params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    instantiate(key, &p, a).unwrap()
}

fn with_m(a: &Alphabet, key: &str, m: usize) -> VariadicFn {
    func(a, key, &[("m", &m.to_string())])
}

fn w(a: &Alphabet, s: &str) -> Word {
    a.parse_word(s).unwrap()
}

fn v(a: &Alphabet, s: &str) -> OutputValue {
    a.parse_value(s).unwrap()
}

fn dm(a: &Arc<Alphabet>, m: usize) -> DomainSet {
    DomainSet::max_len(m, a.clone())
}

fn full(a: &Arc<Alphabet>) -> DomainSet {
    DomainSet::full(a.clone())
}

fn opts(n: usize) -> CheckOptions {
    CheckOptions::new(n)
}

fn show(a: &Alphabet, ce: &Counterexample) -> String {
    let yp = ce
        .y_prime
        .as_ref()
        .map(|y| format!(", y'={}", a.render(y)))
        .unwrap_or_default();
    format!(
        "{} x={}, y={}{yp}, z={}, lhs={}, rhs={}",
        ce.kind,
        a.render(&ce.x),
        a.render(&ce.y),
        a.render(&ce.z),
        a.render_value(&ce.lhs),
        a.render_value(&ce.rhs)
    )
}

fn expect_pass(a: &Alphabet, what: &str, verdict: &CheckVerdict, failures: &mut Vec<String>) {
    if let Some(ce) = verdict.counterexample() {
        failures.push(format!("{what}: expected pass, refuted by {}", show(a, ce)));
    }
}

/// Expects a refutation whose witness matches `expect` exactly.
fn expect_witness(
    a: &Alphabet,
    what: &str,
    verdict: &CheckVerdict,
    expect: &Counterexample,
    failures: &mut Vec<String>,
) {
    match verdict.counterexample() {
        None => failures.push(format!("{what}: expected refutation, passed")),
        Some(ce) => {
            let same = ce.kind == expect.kind
                && ce.x == expect.x
                && ce.y == expect.y
                && ce.y_prime == expect.y_prime
                && ce.z == expect.z
                && ce.lhs == expect.lhs
                && ce.rhs == expect.rhs
                && (expect.witness_d.is_none() || ce.witness_d == expect.witness_d);
            if !same {
                failures.push(format!(
                    "{what}: witness {} differs from expected {}",
                    show(a, ce),
                    show(a, expect)
                ));
            }
        }
    }
}

fn witness(
    kind: CounterexampleKind,
    x: Word,
    y: Word,
    y_prime: Option<Word>,
    z: Word,
    lhs: OutputValue,
    rhs: OutputValue,
) -> Counterexample {
    Counterexample {
        kind,
        x,
        y,
        y_prime,
        z,
        lhs,
        rhs,
        witness_d: None,
        note: None,
    }
}

fn verdict_of(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        Ok(ok)
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_1() -> Outcome {
    let a = ab();
    let f = func(&a, "factor_marker", &[("w", "ab")]);
    let mut failures = Vec::new();
    let factor = DomainSet::new(DomainSpec::Factor(w(&a, "ab")), a.clone()).unwrap();
    expect_pass(
        &a,
        "A'_factor(ab)",
        &check_associativity(&f, &factor, Mode::Primed, &opts(4)).unwrap(),
        &mut failures,
    );
    let expect = witness(
        CounterexampleKind::Associativity,
        Word::empty(),
        w(&a, "a"),
        None,
        w(&a, "b"),
        v(&a, "ab"),
        v(&a, "ε"),
    );
    expect_witness(
        &a,
        "A",
        &check_associativity(&f, &full(&a), Mode::Plain, &opts(4)).unwrap(),
        &expect,
        &mut failures,
    );
    verdict_of(failures, "F(ab) = ab ≠ ε = F(F(a)b)".into())
}

fn criterion_2() -> Outcome {
    let a = abvc();
    let mut failures = Vec::new();
    for m in 0..=2 {
        let n = 2 * m + 2;
        expect_pass(
            &a,
            &format!("prefix({m}) A"),
            &check_associativity(&with_m(&a, "prefix", m), &full(&a), Mode::Plain, &opts(n)).unwrap(),
            &mut failures,
        );
        let g = with_m(&a, "indexer", m);
        expect_pass(
            &a,
            &format!("indexer({m}) A_D{m}"),
            &check_associativity(&g, &dm(&a, m), Mode::Plain, &opts(n)).unwrap(),
            &mut failures,
        );
        expect_pass(
            &a,
            &format!("indexer({m}) A'_D{m}"),
            &check_associativity(&g, &dm(&a, m), Mode::Primed, &opts(n)).unwrap(),
            &mut failures,
        );
        // G(a^{m+1}) = a^m v and G(a^m v) = a^m c.
        let y = w(&a, "a").power(m + 1);
        let gy = w(&a, "a").power(m).concat(&w(&a, "v"));
        let ggy = w(&a, "a").power(m).concat(&w(&a, "c"));
        let expect = witness(
            CounterexampleKind::Associativity,
            Word::empty(),
            y,
            None,
            Word::empty(),
            OutputValue::InX(gy),
            OutputValue::InX(ggy),
        );
        expect_witness(
            &a,
            &format!("indexer({m}) A_D{}", m + 1),
            &check_associativity(&g, &dm(&a, m + 1), Mode::Plain, &opts(n)).unwrap(),
            &expect,
            &mut failures,
        );
    }
    verdict_of(failures, "m = 0, 1, 2; witnesses y = a^{m+1}".into())
}

fn criterion_3() -> Outcome {
    let a = alphabet(&["a", "b"], &["0", "1"]);
    let f = with_m(&a, "ex23_F", 2);
    let g = with_m(&a, "ex23_G", 2);
    let mut failures = Vec::new();
    expect_pass(
        &a,
        "ex23_F length separation",
        &check_length_separation(&f, &a, 2, &opts(5)).unwrap(),
        &mut failures,
    );
    match check_length_separation(&g, &a, 2, &opts(5)).unwrap().counterexample() {
        None => failures.push("ex23_G length separation: expected refutation, passed".into()),
        Some(ce) => {
            let pair: BTreeSet<Word> = [Some(ce.y.clone()), ce.y_prime.clone()].into_iter().flatten().collect();
            let want: BTreeSet<Word> = [w(&a, "aa"), w(&a, "aaa")].into_iter().collect();
            if pair != want || !ce.replay(&g) {
                failures.push(format!("ex23_G length separation witness {}", show(&a, ce)));
            }
        }
    }
    for (name, h) in [("ex23_F", &f), ("ex23_G", &g)] {
        expect_pass(
            &a,
            &format!("{name} A'_D2"),
            &check_associativity(h, &dm(&a, 2), Mode::Primed, &opts(6)).unwrap(),
            &mut failures,
        );
    }
    // F(aaa) = a⟨3⟩ and F(a⟨3⟩) = a⟨2⟩.
    let expect_f = witness(
        CounterexampleKind::Associativity,
        Word::empty(),
        w(&a, "aaa"),
        None,
        Word::empty(),
        v(&a, "a 3"),
        v(&a, "a 2"),
    );
    expect_witness(
        &a,
        "ex23_F A_D3",
        &check_associativity(&f, &dm(&a, 3), Mode::Plain, &opts(6)).unwrap(),
        &expect_f,
        &mut failures,
    );
    // With G counting distinct symbolic letters, G(aaa) = aa⟨1⟩ is a fixed
    // point, so the least violating y is aab: G(aab) = aa⟨2⟩, G(aa⟨2⟩) = aa⟨1⟩.
    let expect_g = witness(
        CounterexampleKind::Associativity,
        Word::empty(),
        w(&a, "aab"),
        None,
        Word::empty(),
        v(&a, "a a 2"),
        v(&a, "a a 1"),
    );
    expect_witness(
        &a,
        "ex23_G A_D3",
        &check_associativity(&g, &dm(&a, 3), Mode::Plain, &opts(6)).unwrap(),
        &expect_g,
        &mut failures,
    );
    verdict_of(
        failures,
        "separation pair (aa, aaa); A_D3 witnesses aaa (F) and aab (G)".into(),
    )
}

fn criterion_4() -> Outcome {
    let a = ab();
    let mut failures = Vec::new();
    for m in 1..=2 {
        let f = with_m(&a, "ex24", m);
        let n = 2 * m + 3;
        expect_pass(
            &a,
            &format!("ex24({m}) A_D{m}"),
            &check_associativity(&f, &dm(&a, m), Mode::Plain, &opts(n)).unwrap(),
            &mut failures,
        );
        let am = w(&a, "a").power(m);
        let mut expect = witness(
            CounterexampleKind::Associativity,
            Word::empty(),
            w(&a, "a").power(m + 1),
            None,
            w(&a, "a"),
            OutputValue::InX(w(&a, "a").power(m + 2)),
            OutputValue::InX(am.clone()),
        );
        expect.witness_d = Some(am);
        expect_witness(
            &a,
            &format!("ex24({m}) A'_D{m}"),
            &check_associativity(&f, &dm(&a, m), Mode::Primed, &opts(n)).unwrap(),
            &expect,
            &mut failures,
        );
    }
    verdict_of(failures, "F(yz) = a^{m+2} ≠ a^m for m = 1, 2".into())
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();

    // Mean over {0,1}.
    let b = bits();
    let mean = func(&b, "mean", &[]);
    expect_pass(
        &b,
        "mean P'_D0",
        &check_preassociativity(&mean, &dm(&b, 0), Mode::Primed, &opts(3)).unwrap(),
        &mut failures,
    );
    let expect = witness(
        CounterexampleKind::Preassociativity,
        Word::empty(),
        w(&b, "0"),
        Some(w(&b, "00")),
        w(&b, "1"),
        v(&b, "1/2"),
        v(&b, "1/3"),
    );
    let plain_d1 = check_preassociativity(&mean, &dm(&b, 1), Mode::Plain, &opts(3)).unwrap();
    expect_witness(&b, "mean P_D1", &plain_d1, &expect, &mut failures);

    // Letterwise swap of a and b.
    let a = ab();
    let swap = func(&a, "letterwise_perm", &[("sigma", "a:b,b:a")]);
    expect_pass(
        &a,
        "swap P",
        &check_preassociativity(&swap, &full(&a), Mode::Plain, &opts(4)).unwrap(),
        &mut failures,
    );
    match check_associativity(&swap, &dm(&a, 1), Mode::Plain, &opts(4))
        .unwrap()
        .counterexample()
    {
        None => failures.push("swap A_D1: expected refutation, passed".into()),
        Some(ce) => {
            let moved = ce.y.len() == 1 && swap.eval(&ce.y) != OutputValue::InX(ce.y.clone());
            if !(ce.x.is_empty() && ce.z.is_empty() && moved) {
                failures.push(format!("swap A_D1 witness {}", show(&a, ce)));
            }
            // The triple x = z = ε, y = b is a violation as well.
            let stated = witness(
                CounterexampleKind::Associativity,
                Word::empty(),
                w(&a, "b"),
                None,
                Word::empty(),
                v(&a, "a"),
                v(&a, "b"),
            );
            if !stated.replay(&swap) {
                failures.push("swap A_D1: (ε, b, ε) does not replay".into());
            }
        }
    }

    // x_1..x_m x_{k-1} for m = 1.
    let drop = with_m(&a, "drop_to_prefix_plus_prev", 1);
    expect_pass(
        &a,
        "drop(1) P'_D1",
        &check_preassociativity(&drop, &dm(&a, 1), Mode::Primed, &opts(5)).unwrap(),
        &mut failures,
    );
    if check_preassociativity(&drop, &dm(&a, 2), Mode::Plain, &opts(5))
        .unwrap()
        .passed()
    {
        failures.push("drop(1) P_D2: expected refutation, passed".into());
    }

    // ε ↦ a.
    let eps = func(&a, "eps_to_a", &[("a", "a")]);
    if check_associativity(&eps, &dm(&a, 0), Mode::Plain, &opts(3))
        .unwrap()
        .passed()
    {
        failures.push("eps_to_a A_D0: expected refutation, passed".into());
    }
    expect_pass(
        &a,
        "eps_to_a P_D0",
        &check_preassociativity(&eps, &dm(&a, 0), Mode::Plain, &opts(3)).unwrap(),
        &mut failures,
    );

    // ε, a ↦ ε.
    let collapse = func(&a, "collapse_eps_a", &[("a", "a")]);
    expect_pass(
        &a,
        "collapse_eps_a A'_D0",
        &check_associativity(&collapse, &dm(&a, 0), Mode::Primed, &opts(3)).unwrap(),
        &mut failures,
    );
    if check_associativity(&collapse, &dm(&a, 0), Mode::Plain, &opts(3))
        .unwrap()
        .passed()
    {
        failures.push("collapse_eps_a A_D0: expected refutation, passed".into());
    }

    verdict_of(failures, "mean, swap, drop(1), eps_to_a, collapse_eps_a".into())
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let a = ab();
    let x = abvc();
    let cased = Arc::new(
        Alphabet::new(&["a", "b", "A", "B"], &[] as &[&str])
            .unwrap()
            .with_case_map(&[("a", "A"), ("b", "B")])
            .unwrap(),
    );
    let b = bits();
    let mut entries: Vec<(Arc<Alphabet>, VariadicFn)> = Vec::new();
    for (key, params, _) in CATALOGUE {
        let alpha = match *key {
            "mean" => b.clone(),
            "indexer" => x.clone(),
            "uppercase" => cased.clone(),
            _ => a.clone(),
        };
        let list: Vec<Vec<(&str, String)>> = match *params {
            "" => vec![vec![]],
            "m" => (0..=2).map(|m| vec![("m", m.to_string())]).collect(),
            "m>=1" => (1..=2).map(|m| vec![("m", m.to_string())]).collect(),
            "w" => vec![vec![("w", "ab".to_string())]],
            "a" => vec![vec![("a", "a".to_string())]],
            "sigma" => vec![vec![("sigma", "a:b,b:a".to_string())]],
            other => return Err(format!("no parameter plan for `{other}`")),
        };
        for p in list {
            let p: Params = p.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            entries.push((alpha.clone(), instantiate(key, &p, &alpha).map_err(|e| e.to_string())?));
        }
    }
    for (alpha, f) in &entries {
        let fz = factorize(f, alpha, None, &opts(4)).unwrap();
        if !fz.report.injective() || !fz.report.round_trip_ok() {
            failures.push(format!(
                "{}{:?}: injective={}, mismatches={}",
                f.name(),
                f.params(),
                fz.report.injective(),
                fz.report.round_trip_mismatches.len()
            ));
        }
    }

    let length = func(&a, "length", &[]);
    let fz = factorize(&length, &a, None, &opts(3)).unwrap();
    for (word, hw) in fz.h.entries() {
        if hw != &OutputValue::InX(w(&a, "a").power(word.len())) {
            failures.push(format!("length: H({}) = {}", a.render(word), a.render_value(hw)));
        }
    }
    let h_assoc = check_associativity(&fz.h.to_fn(), &full(&a), Mode::Plain, &opts(3)).unwrap();
    expect_pass(&a, "length: H in A", &h_assoc, &mut failures);

    for m in 0..=2 {
        let fz = factorize(&with_m(&a, "prefix", m), &a, Some(&dm(&a, m)), &opts(4)).unwrap();
        match &fz.report.determined_range {
            Some(dr) if dr.f_d_determined.passed() => {
                let valued = dr.h_d_valued.as_ref().is_some_and(CheckVerdict::passed);
                let assoc = dr.h_associative.as_ref().is_some_and(CheckVerdict::passed);
                if !(valued && assoc) {
                    failures.push(format!("prefix({m}): H D-valued={valued}, associative={assoc}"));
                }
            }
            _ => failures.push(format!("prefix({m}): range not D_{m}-determined")),
        }
    }
    verdict_of(failures, format!("{} catalogue instances factorized", entries.len()))
}

/// Counts of a bounded implication over the random sample.
#[derive(Default)]
struct Tally {
    antecedent_held: usize,
    violations: Vec<String>,
}

impl Tally {
    /// Records `antecedent ⇒ consequent`, evaluating the antecedent only
    /// when the consequent fails.
    fn implication(&mut self, label: String, consequent: bool, antecedent: impl FnOnce() -> bool) {
        if consequent {
            // The antecedent is only counted when cheap to know; a passing
            // consequent cannot violate the implication.
            return;
        }
        if antecedent() {
            self.antecedent_held += 1;
            self.violations.push(label);
        }
    }
}

fn criterion_7() -> Outcome {
    const SAMPLES: usize = 240;
    let a = ab();
    let domains = [
        dm(&a, 0),
        dm(&a, 1),
        dm(&a, 2),
        DomainSet::new(DomainSpec::Repeats, a.clone()).unwrap(),
        DomainSet::new(DomainSpec::Factor(w(&a, "ab")), a.clone()).unwrap(),
        full(&a),
    ];
    let everything = full(&a);
    let n = 3;
    let mut tally = Tally::default();
    let mut nontrivial = 0usize;
    let tables = RandomTables::new(a.clone(), 3, 2, 0x5eed).unwrap().take(SAMPLES);
    for (i, f) in tables.enumerate() {
        let d = &domains[i % domains.len()];
        let label = |what: &str| format!("{} with D = {}: {what}", f.name(), d.describe());
        let pass = |v: relassoc::error::Result<CheckVerdict>| v.unwrap().passed();
        let plain = |class: ClassKind, bound: usize| pass(check_class(&f, class, d, &opts(bound)));
        let primed = |class: ClassKind, bound: usize, nd: usize| {
            pass(check_class(&f, class, d, &opts(bound).with_domain_bound(nd)))
        };
        let idem_d = |bound: usize| pass(check_idempotent_on(&f, d, &opts(bound)));
        let idem_all = || pass(check_idempotent_on(&f, &everything, &opts(n)));
        let d_valued = || pass(check_range(&f, d, RangeProperty::DValued, &opts(n)));
        let d_determined = || pass(check_range(&f, d, RangeProperty::DDetermined, &opts(n)));
        let maps_into_d = || {
            d.enumerate(n)
                .unwrap()
                .iter()
                .all(|y| f.eval(y).as_word().is_some_and(|fy| d.contains(fy)))
        };

        let in_a_d = plain(ClassKind::A, n);
        let in_ap_d = primed(ClassKind::Ap, n, n);
        if in_a_d || in_ap_d {
            nontrivial += 1;
        }

        // A_D ⇒ P_D and F = F∘F on D.
        tally.implication(
            label("A_D ⇒ P_D ∧ idempotent on D"),
            plain(ClassKind::P, n) && idem_d(n),
            || in_a_d,
        );
        // F(D) ⊆ D, F = F∘F on D, P_D (two letters of slack) ⇒ A_D.
        tally.implication(label("F(D) ⊆ D ∧ idempotent ∧ P_D ⇒ A_D"), in_a_d, || {
            maps_into_d() && idem_d(n) && plain(ClassKind::P, n + 2)
        });
        // A'_D ⇒ P'_D and F = F∘F on D.
        tally.implication(
            label("A'_D ⇒ P'_D ∧ idempotent on D"),
            primed(ClassKind::Pp, n, n) && idem_d(n),
            || in_ap_d,
        );
        // P'_D (with room for a domain word of length ≤ 2) and F = F∘F on D ⇒ A'_D.
        tally.implication(
            label("P'_D ∧ idempotent on D ⇒ A'_D"),
            primed(ClassKind::Ap, n, 2),
            || idem_d(2) && primed(ClassKind::Pp, n + 2, n + 2),
        );
        // A_{D_m} and the length-separation condition ⇒ A'_{D_m}.
        if let DomainSpec::MaxLen(m) = d.spec() {
            let m = *m;
            tally.implication(label("A_Dm ∧ separation ⇒ A'_Dm"), in_ap_d, || {
                in_a_d && pass(check_length_separation(&f, &a, m, &opts(n)))
            });
        }
        // D-valued and F = F∘F ⇒ D-determined range.
        tally.implication(label("D-valued ∧ F = F∘F ⇒ D-determined"), d_determined(), || {
            d_valued() && idem_all()
        });
        // D-determined range and F = F∘F on D ⇒ F = F∘F.
        tally.implication(
            label("D-determined ∧ idempotent on D ⇒ F = F∘F"),
            idem_all(),
            || d_determined() && idem_d(n),
        );
        let in_a = pass(check_associativity(&f, &everything, Mode::Plain, &opts(n)));
        // A'_D, D-valued and F = F∘F ⇒ associative.
        tally.implication(label("A'_D ∧ D-valued ∧ F = F∘F ⇒ A"), in_a, || {
            in_ap_d && d_valued() && idem_all()
        });
        // A'_D and D-determined range ⇒ associative.
        tally.implication(label("A'_D ∧ D-determined ⇒ A"), in_a, || in_ap_d && d_determined());
        // P'_D and D-determined range ⇒ preassociative. Shortest domain
        // preimages of range values bound the extra length needed.
        let in_p = pass(check_preassociativity(&f, &everything, Mode::Plain, &opts(n)));
        tally.implication(label("P'_D ∧ D-determined ⇒ P"), in_p, || {
            if !d_determined() {
                return false;
            }
            let domain_words = d.enumerate(n).unwrap();
            let slack = enumerate_words(&a, n)
                .unwrap()
                .iter()
                .map(|y| {
                    let fy = f.eval(y);
                    domain_words.iter().find(|u| f.eval(u) == fy).map_or(0, Word::len)
                })
                .max()
                .unwrap_or(0);
            primed(ClassKind::Pp, n + slack, n + slack)
        });
    }
    if tally.violations.is_empty() {
        Ok(format!(
            "{SAMPLES} tables, 0 violations ({nontrivial} tables in A_D or A'_D)"
        ))
    } else {
        Err(format!(
            "{} violations, first: {}",
            tally.violations.len(),
            tally.violations[0]
        ))
    }
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let a = abvc();
    let prefix = profile(&with_m(&a, "prefix", 2), &a, ClassKind::A, 4, &opts(6)).unwrap();
    if prefix.degree() != Some(Rational64::from_integer(0)) {
        failures.push(format!("prefix(2): {}", prefix.degree_line()));
    }
    let indexer = profile(&with_m(&a, "indexer", 2), &a, ClassKind::A, 4, &opts(6)).unwrap();
    if indexer.k != KObserved::Finite(2) || indexer.degree() != Some(Rational64::new(1, 4)) {
        failures.push(format!("indexer(2): {}", indexer.degree_line()));
    }
    let b = bits();
    let mean = profile(&func(&b, "mean", &[]), &b, ClassKind::P, 2, &opts(4)).unwrap();
    if mean.k != KObserved::Finite(0) || mean.degree() != Some(Rational64::from_integer(1)) {
        failures.push(format!("mean: {}", mean.degree_line()));
    }
    let x = ab();
    let eps = profile(&func(&x, "eps_to_a", &[("a", "a")]), &x, ClassKind::A, 2, &opts(3)).unwrap();
    if eps.k != KObserved::OutsideHierarchy || eps.degree().is_some() {
        failures.push(format!("eps_to_a: {}", eps.degree_line()));
    }
    verdict_of(failures, "prefix(2) 0, indexer(2) 1/4, mean 1, eps_to_a outside".into())
}

/// Runs the CLI and returns (exit code, stdout).
fn run_cli(args: &[String]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("relassoc".to_string()).chain(args.iter().cloned());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

/// Every command over the default configuration at a small bound.
fn default_suite(extra: &[&str]) -> Vec<Vec<String>> {
    let cfg = Config::default_config().unwrap();
    let mut domains: Vec<String> = vec!["full".into()];
    domains.extend(cfg.domains().iter().map(|(n, _)| n.clone()));
    let mut runs = Vec::new();
    let with = |mut args: Vec<String>| {
        args.extend(extra.iter().map(|s| s.to_string()));
        args
    };
    let s = |x: &str| x.to_string();
    runs.push(with(vec![s("catalogue")]));
    for (name, _) in cfg.functions() {
        for class in ["A", "Ap", "P", "Pp"] {
            for d in &domains {
                runs.push(with(vec![
                    s("check"),
                    s("--fn"),
                    name.clone(),
                    s("--class"),
                    s(class),
                    s("--domain"),
                    d.clone(),
                    s("--bound"),
                    s("3"),
                ]));
            }
            runs.push(with(vec![
                s("profile"),
                s("--fn"),
                name.clone(),
                s("--family"),
                s(class),
                s("--bound"),
                s("3"),
                s("--max-m"),
                s("3"),
            ]));
        }
        runs.push(with(vec![
            s("factorize"),
            s("--fn"),
            name.clone(),
            s("--bound"),
            s("3"),
        ]));
        runs.push(with(vec![
            s("factorize"),
            s("--fn"),
            name.clone(),
            s("--bound"),
            s("3"),
            s("--domain"),
            s("D1"),
        ]));
    }
    runs.push(with(vec![
        s("separate"),
        s("--classes"),
        s("A,Ap"),
        s("--domain"),
        s("D1"),
        s("--bound"),
        s("3"),
    ]));
    runs
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let suite = default_suite(&[]);
    let first: Vec<(i32, String)> = suite.iter().map(|args| run_cli(args)).collect();
    let second: Vec<(i32, String)> = suite.iter().map(|args| run_cli(args)).collect();
    if let Some(i) = (0..suite.len()).find(|&i| first[i] != second[i]) {
        failures.push(format!("report differs between runs for `{}`", suite[i].join(" ")));
    }

    let results = |workers: &str| -> Vec<(i32, serde_json::Value)> {
        default_suite(&["--workers", workers])
            .iter()
            .map(|args| {
                let (code, out) = run_cli(args);
                let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
                (code, doc["result"].clone())
            })
            .collect()
    };
    let sequential = results("1");
    let parallel = results("8");
    if let Some(i) = (0..suite.len()).find(|&i| sequential[i] != parallel[i]) {
        failures.push(format!("1 vs 8 workers differ for `{}`", suite[i].join(" ")));
    }

    // Library level: several pool sizes on refuting and passing checks.
    let a = abvc();
    for (f, d) in [
        (with_m(&a, "indexer", 2), dm(&a, 3)),
        (with_m(&a, "prefix", 2), full(&a)),
        (with_m(&a, "ex24", 1), dm(&a, 1)),
    ] {
        for class in [ClassKind::A, ClassKind::Ap, ClassKind::P, ClassKind::Pp] {
            let base = check_class(&f, class, &d, &opts(5).with_workers(1)).unwrap();
            for workers in [0, 2, 7] {
                let other = check_class(&f, class, &d, &opts(5).with_workers(workers)).unwrap();
                if other != base {
                    failures.push(format!("{} {class}: workers = {workers} differs", f.name()));
                }
            }
        }
    }
    verdict_of(
        failures,
        format!("{} reports byte-identical; 1 vs many workers identical", suite.len()),
    )
}

fn criterion_10() -> Outcome {
    let mut failures = Vec::new();
    let cfg = Config::default_config().unwrap();
    let a = cfg.alphabet().clone();
    let mut profiled = 0;
    for (name, f) in cfg.functions() {
        for family in [ClassKind::A, ClassKind::Ap, ClassKind::P, ClassKind::Pp] {
            let p = profile(f, &a, family, 3, &opts(3)).unwrap();
            profiled += 1;
            if !p.is_monotone() {
                failures.push(format!("{name} {family}: Refuted→Passed flip"));
            }
        }
    }

    let mut domains: Vec<DomainSet> = cfg.domains().iter().map(|(_, d)| d.clone()).collect();
    domains.push(full(&a));
    let mut transferred = 0;
    for (name, f) in cfg.functions() {
        for small in &domains {
            for large in &domains {
                if !subset_up_to(small, large, 3).unwrap() {
                    continue;
                }
                for class in [ClassKind::A, ClassKind::P] {
                    let Some(ce) = check_class(f, class, small, &opts(3))
                        .unwrap()
                        .counterexample()
                        .cloned()
                    else {
                        continue;
                    };
                    let admitted = large.contains(&ce.y) && ce.y_prime.as_ref().is_none_or(|yp| large.contains(yp));
                    let still_refuted = check_class(f, class, large, &opts(3)).unwrap().refuted();
                    if !(admitted && ce.replay(f) && still_refuted) {
                        failures.push(format!(
                            "{name} {class}: {} → {} does not transfer",
                            small.describe(),
                            large.describe()
                        ));
                    }
                    transferred += 1;
                }
            }
        }
    }
    verdict_of(
        failures,
        format!("{profiled} profiles monotone; {transferred} refutations transferred"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("factor marker: primed pass, plain witness", criterion_1),
        ("prefix / indexer levels", criterion_2),
        ("length separation and A'_D2 \\ A_D3", criterion_3),
        ("A_Dm \\ A'_Dm exception function", criterion_4),
        ("strictness battery", criterion_5),
        ("factorization pipeline", criterion_6),
        ("randomized bounded implications", criterion_7),
        ("degree metric", criterion_8),
        ("determinism", criterion_9),
        ("monotonicity and transfer", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} — {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} — {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
