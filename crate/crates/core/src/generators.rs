//! Small-function generators for exploratory searches and randomized
//! property suites.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalogue::VariadicFn;
use crate::error::Result;
use crate::words::{enumerate_words, Alphabet, OutputValue, Word};

/// Every function of the form `w ↦ prefix(w, r_{|w|})`, one rule per input
/// length up to `bound` (longer words reuse the last rule), with every rule
/// `r_ℓ ≤ min(ℓ, max_output_len)`.
///
/// Rules are enumerated like an odometer whose last digit turns fastest,
/// each digit running from the longest prefix down to ε, so the identity
/// (when admissible) comes first.
#[derive(Debug, Clone)]
pub struct LengthRules {
    digits: Vec<usize>,
    limits: Vec<usize>,
    done: bool,
}

impl LengthRules {
    pub fn new(bound: usize, max_output_len: usize) -> Self {
        let limits: Vec<usize> = (0..=bound).map(|l| l.min(max_output_len)).collect();
        LengthRules {
            digits: vec![0; limits.len()],
            limits,
            done: false,
        }
    }

    /// Number of functions the generator yields.
    pub fn total(&self) -> usize {
        self.limits.iter().map(|l| l + 1).product()
    }

    fn current(&self) -> VariadicFn {
        // digit 0 means the longest admissible prefix.
        let rules: Vec<usize> = self.digits.iter().zip(&self.limits).map(|(d, l)| l - d).collect();
        let names: Vec<String> = rules
            .iter()
            .enumerate()
            .map(|(len, &r)| if r == len { "id".to_string() } else { format!("p{r}") })
            .collect();
        let last = *rules.last().expect("at least one length");
        VariadicFn::new(format!("rules[{}]", names.join(",")), move |w| {
            let r = rules.get(w.len()).copied().unwrap_or(last);
            OutputValue::InX(w.prefix(r))
        })
    }
}

impl Iterator for LengthRules {
    type Item = VariadicFn;

    fn next(&mut self) -> Option<VariadicFn> {
        if self.done {
            return None;
        }
        let f = self.current();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.digits[i] < self.limits[i] {
                self.digits[i] += 1;
                break;
            }
            self.digits[i] = 0;
        }
        Some(f)
    }
}

/// Seeded random string functions tabulated on X^{≤input_bound}, with
/// outputs of length at most `max_output_len`. A word longer than the bound
/// takes the value of its prefix of length `input_bound`, so the function is
/// total.
///
/// Values are drawn from three shapes with equal weight: a truncation of the
/// input itself, a shorter prefix of it, or an arbitrary short word. The
/// first two keep idempotent and associative behavior common enough for
/// implications with nontrivial antecedents to be exercised.
#[derive(Debug)]
pub struct RandomTables {
    alphabet: Arc<Alphabet>,
    inputs: Vec<Word>,
    outputs: Vec<Word>,
    input_bound: usize,
    max_output_len: usize,
    rng: ChaCha8Rng,
    produced: usize,
}

impl RandomTables {
    pub fn new(alphabet: Arc<Alphabet>, input_bound: usize, max_output_len: usize, seed: u64) -> Result<Self> {
        Ok(RandomTables {
            inputs: enumerate_words(&alphabet, input_bound)?,
            outputs: enumerate_words(&alphabet, max_output_len)?,
            alphabet,
            input_bound,
            max_output_len,
            rng: ChaCha8Rng::seed_from_u64(seed),
            produced: 0,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }
}

impl Iterator for RandomTables {
    type Item = VariadicFn;

    fn next(&mut self) -> Option<VariadicFn> {
        let mut table = BTreeMap::new();
        for w in &self.inputs {
            let v = match self.rng.random_range(0..3) {
                0 => w.prefix(self.max_output_len),
                1 => w.prefix(self.rng.random_range(0..=self.max_output_len)),
                _ => self.outputs[self.rng.random_range(0..self.outputs.len())].clone(),
            };
            table.insert(w.clone(), v);
        }
        let name = format!("random#{}", self.produced);
        self.produced += 1;
        let bound = self.input_bound;
        Some(VariadicFn::new(name, move |w| {
            let key = w.prefix(bound);
            OutputValue::InX(table[&key].clone())
        }))
    }
}
