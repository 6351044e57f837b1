//! The Thue-Morse self-shuffle.
//!
//! With `u = 01101`, `v = 001`, the coding morphisms
//! `g: 1 -> v u~, 2 -> v~ u~, 3 -> v~ u, 4 -> v u` and
//! `h: 1 -> uv, 2 -> u~ v~, 3 -> u~ v~, 4 -> uv` (bar = exchange 0/1) of
//! the fixed point `w` of `1 -> 12, 2 -> 31, 3 -> 34, 4 -> 13` satisfy
//! `T = u g(w) = h(w)`, and each 16-letter block `g(sigma(a))` splits into
//! `g(a)` and `h(a)` by a fixed interleaving pattern. Concatenating the
//! per-block patterns (with `u` prepended to the first `g`-piece) steers a
//! self-shuffle of the Thue-Morse word.

use crate::named::thue_morse;
use crate::shuffle::{ShuffleWitness, SteeringWord};
use crate::words::{Letter, Morphism};

/// Interleaving pattern for `g(sigma(a))` as run lengths `(copy, len)`;
/// copy 0 supplies the `g`-blocks, copy 1 the `h`-blocks. Letters 1 and 3
/// share one pattern, 2 and 4 the other (they are 0/1 exchanges).
fn block_runs(a: usize) -> &'static [(usize, usize)] {
    // 0011001011010010 = 0|011|0|010|11|01|0010 for a = 1
    const ODD: [(usize, usize); 7] = [(0, 1), (1, 3), (0, 1), (1, 3), (0, 2), (1, 2), (0, 4)];
    // 1100110100110010 = 1|100|1|1|010|0110|010 for a = 2
    const EVEN: [(usize, usize); 7] = [(0, 1), (1, 3), (0, 1), (1, 1), (0, 3), (1, 4), (0, 3)];
    match a {
        0 | 2 => &ODD,
        1 | 3 => &EVEN,
        _ => unreachable!(),
    }
}

pub(crate) fn block_morphism() -> Morphism {
    Morphism::parse("1:12,2:31,3:34,4:13").unwrap()
}

#[cfg(test)]
fn g_morphism() -> Morphism {
    // images over {0,1}; domain {1,2,3,4}
    Morphism::parse("1:00110010,2:11010010,3:11001101,4:00101101").unwrap()
}

#[cfg(test)]
fn h_morphism() -> Morphism {
    Morphism::parse("1:01101001,2:10010110,3:10010110,4:01101001").unwrap()
}

/// Self-shuffle witness for the Thue-Morse word.
pub fn tm_shuffle() -> ShuffleWitness {
    let sigma = block_morphism();
    let w = sigma.fixed_point(Letter::new(0)).unwrap();
    let runs = std::iter::once((0usize, 5usize)) // the leading u from the g-copy
        .chain((0..).flat_map(move |i| {
            let a = w.letter(i).index();
            block_runs(a).iter().copied()
        }));
    let steering = SteeringWord::from_runs(2, runs).unwrap();
    ShuffleWitness::self_shuffle(thue_morse(), steering)
}
