//! A 3-self-shuffling word that is not self-shuffling: the fixed point of
//! `0 -> 0001, 1 -> 0101` with its first two letters dropped, together
//! with explicit block families `U_i, V_i, W_i` whose three products all
//! equal the word.

use crate::named::{three_shuffle_morphism, three_shuffle_word};
use crate::shuffle::{ShuffleWitness, SteeringWord};
use crate::words::{Alphabet, FiniteWord, Morphism};

#[derive(Debug, Clone)]
pub struct ThreeBlocks {
    pub u: FiniteWord,
    pub v: FiniteWord,
    pub w: FiniteWord,
}

fn pow(sigma: &Morphism, word: &FiniteWord, times: u64) -> FiniteWord {
    let mut out = word.clone();
    for _ in 0..times {
        out = sigma.apply(&out).unwrap();
    }
    out
}

/// Block triple `(U_m, V_m, W_m)`.
pub fn three_shuffle_blocks(m: u64) -> ThreeBlocks {
    let alpha = Alphabet::binary();
    let sigma = three_shuffle_morphism();
    let word = |s: &str| alpha.parse_word(s).unwrap();
    let sigma0 = word("0001"); // sigma(0)
    let strip_sigma0 = |w: FiniteWord| {
        debug_assert!(w.starts_with(&sigma0));
        w.slice(4, w.len())
    };
    match m {
        0 => ThreeBlocks {
            u: word("0100"),
            v: word("0100"),
            w: word("01"),
        },
        1 => ThreeBlocks {
            u: word("01"),
            v: word("01"),
            w: sigma0.concat(&sigma0).unwrap(),
        },
        _ => match m % 4 {
            // m = 4i + 2
            2 => {
                let i = (m - 2) / 4;
                ThreeBlocks {
                    u: FiniteWord::empty(alpha.clone()),
                    v: strip_sigma0(pow(&sigma, &word("0"), i + 1)),
                    w: FiniteWord::empty(alpha.clone()),
                }
            }
            // m = 4i + 3
            3 => {
                let i = (m - 3) / 4;
                ThreeBlocks {
                    u: pow(&sigma, &word("0100"), i + 1),
                    v: sigma0.clone(),
                    w: strip_sigma0(pow(&sigma, &word("01"), i + 1)),
                }
            }
            // m = 4i + 4
            0 => {
                let i = (m - 4) / 4;
                ThreeBlocks {
                    u: sigma0.clone(),
                    v: strip_sigma0(pow(&sigma, &word("01"), i + 1))
                        .concat(&sigma0)
                        .unwrap(),
                    w: FiniteWord::empty(alpha.clone()),
                }
            }
            // m = 4i + 5
            1 => {
                let i = (m - 5) / 4;
                ThreeBlocks {
                    u: strip_sigma0(pow(&sigma, &word("01"), i + 1)),
                    v: FiniteWord::empty(alpha.clone()),
                    w: pow(&sigma, &word("0"), i + 2).concat(&sigma0).unwrap(),
                }
            }
            _ => unreachable!(),
        },
    }
}

/// The 3-copy witness for the example word.
pub fn three_shuffle_example() -> ShuffleWitness {
    let x = three_shuffle_word();
    let runs = (0..).flat_map(|m| {
        let b = three_shuffle_blocks(m);
        [(0usize, b.u.len()), (1, b.v.len()), (2, b.w.len())]
    });
    let steering = SteeringWord::from_runs(3, runs).unwrap();
    ShuffleWitness::self_shuffle(x, steering)
}
