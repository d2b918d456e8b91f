//! Quasi-inverse factorization F = f ∘ H with its verification checklist.

use std::sync::Arc;

use relassoc::catalogue::{instantiate, Params};
use relassoc::checkers::CheckOptions;
use relassoc::domains::DomainSet;
use relassoc::factorization::factorize;
use relassoc::words::Alphabet;

fn main() -> Result<(), relassoc::error::Error> {
    let a = Arc::new(Alphabet::new(&["a", "b"], &[] as &[&str])?);
    let length = instantiate("length", &Params::new(), &a)?;
    let fz = factorize(&length, &a, None, &CheckOptions::new(3))?;
    println!("length: H maps each word to the least word of the same length");
    for (w, h) in fz.h.entries().iter().take(8) {
        println!("    H({}) = {}", a.render(w), a.render_value(h));
    }
    for c in &fz.report.class_checks {
        println!(
            "    {} in {} on {}: {}",
            c.subject,
            c.class,
            c.domain,
            c.verdict.passed()
        );
    }

    let mut p = Params::new();
    p.insert("m".into(), "1".into());
    let prefix = instantiate("prefix", &p, &a)?;
    let d1 = DomainSet::max_len(1, a.clone());
    let fz = factorize(&prefix, &a, Some(&d1), &CheckOptions::new(4))?;
    let r = &fz.report;
    println!("prefix(1) relative to D_1:");
    println!("    f injective: {}, round trip: {}", r.injective(), r.round_trip_ok());
    println!("    H idempotent: {}", r.idempotence.passed());
    if let Some(dr) = &r.determined_range {
        println!(
            "    range D_1-determined: {}, H associative: {:?}",
            dr.f_d_determined.passed(),
            dr.h_associative.as_ref().map(|v| v.passed())
        );
    }
    Ok(())
}
