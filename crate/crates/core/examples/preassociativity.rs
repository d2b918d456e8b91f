//! Preassociativity: functions that need not map into words.

use std::sync::Arc;

use relassoc::catalogue::{instantiate, Params};
use relassoc::checkers::{check_class, CheckOptions, ClassKind};
use relassoc::domains::DomainSet;
use relassoc::words::Alphabet;

fn main() -> Result<(), relassoc::error::Error> {
    let bits = Arc::new(Alphabet::new(&[] as &[&str], &["0", "1"])?);
    let mean = instantiate("mean", &Params::new(), &bits)?;
    let length = instantiate("length", &Params::new(), &bits)?;
    let opts = CheckOptions::new(4);
    for (name, f) in [("mean", &mean), ("length", &length)] {
        for class in [ClassKind::P, ClassKind::Pp, ClassKind::A] {
            for m in 0..=2 {
                let d = DomainSet::max_len(m, bits.clone());
                let v = check_class(f, class, &d, &opts)?;
                let outcome = match v.counterexample() {
                    None => "passed".to_string(),
                    Some(ce) => format!(
                        "refuted ({}: y = {}, y' = {}, z = {})",
                        ce.kind,
                        bits.render(&ce.y),
                        ce.y_prime
                            .as_ref()
                            .map(|w| bits.render(w))
                            .unwrap_or_else(|| "-".into()),
                        bits.render(&ce.z)
                    ),
                };
                println!("{name:<6} {class:<2} D_{m}: {outcome}");
            }
        }
    }
    Ok(())
}
