//! Plain and primed associativity checks with canonical counterexamples.

use std::sync::Arc;

use relassoc::catalogue::{instantiate, Params};
use relassoc::checkers::{check_associativity, CheckOptions, CheckVerdict, Mode};
use relassoc::domains::{DomainSet, DomainSpec};
use relassoc::words::Alphabet;

fn report(a: &Alphabet, label: &str, v: &CheckVerdict) {
    match v {
        CheckVerdict::PassedUpTo { bound, cases_checked } => {
            println!("{label}: passed up to N = {bound} ({cases_checked} cases)")
        }
        CheckVerdict::Refuted(ce) => println!(
            "{label}: refuted at x = {}, y = {}, z = {}: F(xyz) = {} but F(xF(y)z) = {}",
            a.render(&ce.x),
            a.render(&ce.y),
            a.render(&ce.z),
            a.render_value(&ce.lhs),
            a.render_value(&ce.rhs)
        ),
    }
}

fn main() -> Result<(), relassoc::error::Error> {
    let a = Arc::new(Alphabet::new(&["a", "b"], &[] as &[&str])?);
    let mut p = Params::new();
    p.insert("w".into(), "ab".into());
    let marker = instantiate("factor_marker", &p, &a)?;
    let factor = DomainSet::new(DomainSpec::Factor(a.parse_word("ab")?), a.clone())?;
    let opts = CheckOptions::new(4);
    report(
        &a,
        "factor_marker in A'_Factor(ab)",
        &check_associativity(&marker, &factor, Mode::Primed, &opts)?,
    );
    report(
        &a,
        "factor_marker in A",
        &check_associativity(&marker, &DomainSet::full(a.clone()), Mode::Plain, &opts)?,
    );

    let x = Arc::new(Alphabet::new(&["a", "b", "v", "c"], &[] as &[&str])?.with_vowels(&["a"])?);
    let mut p = Params::new();
    p.insert("m".into(), "2".into());
    let indexer = instantiate("indexer", &p, &x)?;
    for m in 0..=3 {
        let d = DomainSet::max_len(m, x.clone());
        report(
            &x,
            &format!("indexer(2) in A_D{m}"),
            &check_associativity(&indexer, &d, Mode::Plain, &CheckOptions::new(6))?,
        );
    }
    Ok(())
}
