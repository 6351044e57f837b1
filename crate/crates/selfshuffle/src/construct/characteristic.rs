//! Self-shuffle of a characteristic Sturmian word from its run
//! exponents: writing `x = prod 0^(k_i) 1`, the two copies dish
//! `0^(u_n) 1 0^(v_n)` blocks whose exponents are signed sums of the
//! `k_i`; balancedness of characteristic words keeps every exponent
//! non-negative.

use crate::construct::ConstructError;
use crate::shuffle::{ShuffleWitness, SteeringWord};
use crate::sturmian::k_sequence;
use crate::words::InfiniteWord;

/// Exponents of block `n` for both copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharBlocks {
    pub u1: u64,
    pub v1: u64,
    pub u2: u64,
    pub v2: u64,
}

/// Compute `(u_n^1, v_n^1, u_n^2, v_n^2)` for `n = 1..=count` from the run
/// exponents; errors if any would be negative.
pub fn characteristic_blocks(ks: &[u64], count: usize) -> Result<Vec<CharBlocks>, ConstructError> {
    assert!(ks.len() > 2 * count, "need k_1..k_(2n+1)");
    // prefix sums s[n] = k_1 + ... + k_n
    let mut s = vec![0i64; ks.len() + 1];
    for (i, k) in ks.iter().enumerate() {
        s[i + 1] = s[i] + *k as i64;
    }
    let mut out = Vec::with_capacity(count);
    for n in 1..=count {
        let u1 = if n <= 2 {
            ks[0] as i64
        } else {
            s[n - 1] - (s[2 * n - 2] - s[n])
        };
        let v1 = (s[2 * n] - s[n]) - s[n];
        let u2 = if n == 1 {
            ks[0] as i64
        } else {
            s[n] - (s[2 * n - 1] - s[n])
        };
        let v2 = (s[2 * n + 1] - s[n + 1]) - s[n];
        for val in [u1, v1, u2, v2] {
            if val < 0 {
                return Err(ConstructError::NegativeExponent(n));
            }
        }
        out.push(CharBlocks {
            u1: u1 as u64,
            v1: v1 as u64,
            u2: u2 as u64,
            v2: v2 as u64,
        });
    }
    Ok(out)
}

/// Build the block self-shuffle of a characteristic word beginning in 0.
/// `depth` letters of steering are guaranteed; run exponents are scanned
/// from the word itself within `horizon` letters.
pub fn characteristic_shuffle(
    x: &InfiniteWord,
    depth: usize,
    horizon: usize,
) -> Result<(ShuffleWitness, Vec<CharBlocks>), ConstructError> {
    if x.letter(0).index() != 0 {
        return Err(ConstructError::MustBeginInZero);
    }
    // enough blocks to cover `depth` letters: each pair dishes at least 2
    let mut blocks_needed = 8;
    loop {
        let run_count = 2 * blocks_needed + 1;
        let ks = k_sequence(x, run_count, horizon).map_err(|_| ConstructError::NotRunEncodable)?;
        let blocks = characteristic_blocks(&ks, blocks_needed)?;
        let covered: u64 = blocks
            .iter()
            .map(|b| b.u1 + b.v1 + b.u2 + b.v2 + 2)
            .sum();
        if covered < depth as u64 {
            blocks_needed *= 2;
            continue;
        }
        let runs_fixed: Vec<(usize, usize)> = blocks
            .iter()
            .flat_map(|b| {
                [
                    (0usize, (b.u1 + 1 + b.v1) as usize),
                    (1usize, (b.u2 + 1 + b.v2) as usize),
                ]
            })
            .collect();
        let steering = SteeringWord::from_runs(
            2,
            runs_fixed
                .into_iter()
                .chain((0..).map(|i| (i % 2, 1usize))),
        )?;
        return Ok((ShuffleWitness::self_shuffle(x.clone(), steering), blocks));
    }
}
