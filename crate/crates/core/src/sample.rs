//! Random valid words for property tests and the `check` command.

use rand::Rng;

use crate::trace::trace_components;
use crate::word::{BooklinkWord, Generator};

#[derive(Debug, Clone, Copy)]
pub struct SampleParams {
    /// Largest strand count on any slice.
    pub max_width: usize,
    /// Generators drawn before the word is closed up.
    pub length: usize,
}

impl Default for SampleParams {
    fn default() -> Self {
        Self {
            max_width: 6,
            length: 10,
        }
    }
}

/// A random valid word. The seam count and every generator are drawn
/// uniformly among the legal choices, then caps or cups close it.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, params: SampleParams) -> BooklinkWord {
    let width = params.max_width.max(2);
    let seam = rng.gen_range(0..=width);
    let mut m = seam;
    let mut gens = Vec::with_capacity(params.length + width);
    for _ in 0..params.length {
        let roll = rng.gen_range(0..10);
        let g = if m >= 2 && roll < 6 {
            let i = rng.gen_range(1..m);
            if rng.gen_bool(0.5) {
                Generator::pos(i)
            } else {
                Generator::neg(i)
            }
        } else if m >= 2 && (roll < 8 || m + 2 > width) {
            Generator::cap(rng.gen_range(1..m))
        } else if m + 2 <= width {
            Generator::cup(rng.gen_range(1..=m + 1))
        } else {
            continue;
        };
        m = g.count_after(m);
        gens.push(g);
    }
    while m > seam {
        gens.push(Generator::cap(rng.gen_range(1..m)));
        m -= 2;
    }
    while m < seam {
        gens.push(Generator::cup(rng.gen_range(1..=m + 1)));
        m += 2;
    }
    BooklinkWord::new(seam, gens).expect("sampler keeps positions legal")
}

/// A random single-component word, by rejection. Falls back to the
/// one-strand unknot if no knot turns up.
pub fn random_knot<R: Rng + ?Sized>(rng: &mut R, params: SampleParams) -> BooklinkWord {
    for _ in 0..1000 {
        let w = random_word(rng, params);
        if trace_components(&w) == 1 {
            return w;
        }
    }
    BooklinkWord::trivial(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_and_valid() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let w = random_word(&mut a, SampleParams::default());
            assert_eq!(w, random_word(&mut b, SampleParams::default()));
            assert!(w.profile().counts.iter().all(|&c| c <= 6));
        }
    }

    #[test]
    fn knots_have_one_component() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            assert_eq!(
                trace_components(&random_knot(&mut rng, SampleParams::default())),
                1
            );
        }
    }
}
