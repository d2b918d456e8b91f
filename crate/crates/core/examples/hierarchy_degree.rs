//! Membership profiles over D_0 ⊆ D_1 ⊆ … and the resulting degree.

use std::sync::Arc;

use relassoc::catalogue::{instantiate, Params};
use relassoc::checkers::{CheckOptions, ClassKind};
use relassoc::hierarchy::profile;
use relassoc::words::Alphabet;

fn main() -> Result<(), relassoc::error::Error> {
    let a = Arc::new(Alphabet::new(&["a", "b", "v", "c"], &[] as &[&str])?.with_vowels(&["a"])?);
    let opts = CheckOptions::new(5);
    for (key, param) in [
        ("prefix", Some(("m", "2"))),
        ("indexer", Some(("m", "1"))),
        ("indexer", Some(("m", "2"))),
        ("eps_to_a", Some(("a", "a"))),
    ] {
        let mut p = Params::new();
        if let Some((k, v)) = param {
            p.insert(k.into(), v.into());
        }
        let f = instantiate(key, &p, &a)?;
        let prof = profile(&f, &a, ClassKind::A, 3, &opts)?;
        let levels: String = prof
            .per_m
            .iter()
            .map(|(_, v)| if v.passed() { '✓' } else { '✗' })
            .collect();
        println!("{key:<9} {p:?}: levels {levels}  {}", prof.degree_line());
    }
    Ok(())
}
