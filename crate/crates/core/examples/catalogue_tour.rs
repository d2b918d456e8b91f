//! Evaluates every catalogue entry on a few inputs.

use relassoc::catalogue::{instantiate, Params, CATALOGUE};
use relassoc::words::Alphabet;

fn main() -> Result<(), relassoc::error::Error> {
    let a = Alphabet::new(&["a", "b", "v", "c", "A", "B"], &["0", "1"])?
        .with_vowels(&["a"])?
        .with_case_map(&[("a", "A"), ("b", "B")])?;
    let inputs = ["ε", "a", "ab", "bab", "abba", "0 1 1"];
    for (key, params, description) in CATALOGUE {
        let mut p = Params::new();
        match *params {
            "m" | "m>=1" => {
                p.insert("m".into(), "2".into());
            }
            "w" => {
                p.insert("w".into(), "ab".into());
            }
            "a" => {
                p.insert("a".into(), "a".into());
            }
            "sigma" => {
                p.insert("sigma".into(), "a:b,b:a".into());
            }
            _ => {}
        }
        let f = instantiate(key, &p, &a)?;
        println!("{key} {p:?} — {description}");
        for x in inputs {
            let w = a.parse_word(x)?;
            println!("    {x:>6} ↦ {}", a.render_value(&f.eval(&w)));
        }
    }
    Ok(())
}
