//! The length-separation condition: no value of a long input may also be
//! the value of a short one.

use std::sync::Arc;

use relassoc::catalogue::{instantiate, Params};
use relassoc::checkers::{check_associativity, check_length_separation, CheckOptions, Mode};
use relassoc::domains::DomainSet;
use relassoc::words::Alphabet;

fn main() -> Result<(), relassoc::error::Error> {
    let a = Arc::new(Alphabet::new(&["a", "b"], &["0", "1"])?);
    let mut p = Params::new();
    p.insert("m".into(), "2".into());
    for key in ["ex23_F", "ex23_G"] {
        let f = instantiate(key, &p, &a)?;
        let sep = check_length_separation(&f, &a, 2, &CheckOptions::new(5))?;
        match sep.counterexample() {
            None => println!("{key}: separation holds up to N = 5"),
            Some(ce) => println!(
                "{key}: F({}) = F({}) = {}",
                a.render(&ce.y),
                a.render(ce.y_prime.as_ref().unwrap()),
                a.render_value(&ce.lhs)
            ),
        }
        let primed = check_associativity(
            &f,
            &DomainSet::max_len(2, a.clone()),
            Mode::Primed,
            &CheckOptions::new(6),
        )?;
        let plain = check_associativity(
            &f,
            &DomainSet::max_len(3, a.clone()),
            Mode::Plain,
            &CheckOptions::new(6),
        )?;
        println!("    A'_D2 passed: {}; A_D3 passed: {}", primed.passed(), plain.passed());
    }
    Ok(())
}
