//! Alphabets, shortlex enumeration and the built-in domain families.

use std::sync::Arc;

use relassoc::domains::{DomainSet, DomainSpec};
use relassoc::words::{enumerate_words, Alphabet};

fn main() -> Result<(), relassoc::error::Error> {
    // Symbols come first, numeric samples after, in increasing order.
    let a = Arc::new(Alphabet::new(&["a", "b"], &["0", "1/2", "1"])?);
    let words = enumerate_words(&a, 2)?;
    println!("{} words of length ≤ 2 in shortlex order:", words.len());
    let shown: Vec<String> = words.iter().map(|w| a.render(w)).collect();
    println!("  {}", shown.join("  "));

    let w = a.parse_word("a b 1/2")?;
    println!(
        "parsed `a b 1/2` as {} letters, rendered back as `{}`",
        w.len(),
        a.render(&w)
    );

    let ab = Arc::new(Alphabet::new(&["a", "b"], &[] as &[&str])?);
    for spec in [
        DomainSpec::MaxLen(1),
        DomainSpec::MinLen(2),
        DomainSpec::Repeats,
        DomainSpec::Factor(ab.parse_word("ab")?),
    ] {
        let d = DomainSet::new(spec, ab.clone())?;
        let members: Vec<String> = d.enumerate(3)?.iter().map(|w| ab.render(w)).collect();
        println!("{:<12} ∩ X^≤3: {}", d.describe(), members.join(" "));
    }
    Ok(())
}
