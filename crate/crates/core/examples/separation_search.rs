//! Searching generated functions for one inside a class and outside another.

use std::sync::Arc;

use relassoc::checkers::{CheckOptions, ClassKind};
use relassoc::domains::DomainSet;
use relassoc::generators::LengthRules;
use relassoc::hierarchy::separation_search;
use relassoc::words::{enumerate_words, Alphabet};

fn main() -> Result<(), relassoc::error::Error> {
    let a = Arc::new(Alphabet::new(&["a", "b"], &[] as &[&str])?);
    let d1 = DomainSet::max_len(1, a.clone());
    let opts = CheckOptions::new(3);
    let rules = LengthRules::new(3, 2);
    println!("searching {} length-rule functions for A_D1 \\ A'_D1", rules.total());
    match separation_search(ClassKind::A, ClassKind::Ap, &d1, rules, &opts)? {
        None => println!("none found"),
        Some(sep) => {
            println!("found {}", sep.function.name());
            for w in enumerate_words(&a, 3)?
                .iter()
                .filter(|w| w.len() <= 3 && w.letters().iter().all(|l| *l == a.letters()[0]))
            {
                println!("    {} ↦ {}", a.render(w), a.render_value(&sep.function.eval(w)));
            }
            if let Some(ce) = sep.refuted.counterexample() {
                println!("    outside A'_D1: y = {}, z = {}", a.render(&ce.y), a.render(&ce.z));
            }
        }
    }
    Ok(())
}
