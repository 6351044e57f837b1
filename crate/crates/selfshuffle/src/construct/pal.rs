//! Self-shuffles of `01C` and `10C` for a characteristic word `C` built by
//! iterated palindromic closure. Splitting the directive indices by their
//! letter yields two sub-products of the closure blocks `w_k` that both
//! reproduce the word, and the block boundaries themselves steer the
//! shuffle.

use crate::construct::ConstructError;
use crate::shuffle::{ShuffleWitness, SteeringWord};
use crate::sturmian::{characteristic_from_directive, DirectiveSequence, PalIterate};
use crate::words::{Alphabet, FiniteWord, InfiniteWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PalVariant {
    /// `01C = 01 prod_(i>=2) w_(k0(i)) = 0 prod_(i>=1) w_(k1(i))`
    ZeroOne,
    /// `10C = 1 0^(k1(1)) prod_(i>=2) w_(k1(i)) = 1 prod_(i>=1) w_(k0(i))`
    OneZero,
}

/// One steered chunk: a block of the target together with the copy that
/// dishes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PalChunk {
    pub copy: usize,
    pub word: FiniteWord,
    /// Directive index `k` for chunks that are blocks `w_k`; the leading
    /// chunks carry no index.
    pub block_index: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct PalShuffle {
    pub witness: ShuffleWitness,
    pub variant: PalVariant,
    /// The chunk decomposition that was materialized (covers at least the
    /// requested depth).
    pub chunks: Vec<PalChunk>,
}

/// Build the palindromic-closure shuffle of `01C` or `10C` to at least
/// `depth` letters of steering.
pub fn pal_shuffle(
    dir: &DirectiveSequence,
    variant: PalVariant,
    depth: usize,
) -> Result<PalShuffle, ConstructError> {
    if !dir.starts_with_zero() {
        return Err(ConstructError::DirectiveMustStartZero);
    }
    if !dir.contains(0) || !dir.contains(1) {
        return Err(ConstructError::DirectiveMissingSymbol);
    }
    let alpha = Alphabet::binary();
    let c = characteristic_from_directive(dir);
    let head = match variant {
        PalVariant::ZeroOne => alpha.parse_word("01").unwrap(),
        PalVariant::OneZero => alpha.parse_word("10").unwrap(),
    };
    let target: InfiniteWord = c.prepend(&head).unwrap();

    // materialize blocks w_1..w_K until the chunks cover `depth`
    let mut iter = PalIterate::new(dir);
    let blocks = iter.blocks_until(depth + 2);
    let k1_first = dir.nth_index_of(1, 1);

    let mut chunks: Vec<PalChunk> = Vec::new();
    match variant {
        PalVariant::ZeroOne => {
            chunks.push(PalChunk {
                copy: 0,
                word: head.clone(),
                block_index: None,
            });
            for (k, w) in blocks.iter().enumerate().map(|(i, w)| (i + 1, w)) {
                let copy = if k == 1 {
                    1
                } else if dir.bit(k) == 0 {
                    0
                } else {
                    1
                };
                chunks.push(PalChunk {
                    copy,
                    word: w.clone(),
                    block_index: Some(k),
                });
            }
        }
        PalVariant::OneZero => {
            // 1 0^(k1(1)) from copy 0, then w_(k1(1)) from copy 1,
            // then w_k goes to copy 0 when a_k = 1 and to copy 1 otherwise
            let mut lead = vec![crate::words::Letter::new(1)];
            lead.extend(std::iter::repeat_n(crate::words::Letter::new(0), k1_first));
            chunks.push(PalChunk {
                copy: 0,
                word: FiniteWord::new(alpha.clone(), lead).unwrap(),
                block_index: None,
            });
            chunks.push(PalChunk {
                copy: 1,
                word: blocks[k1_first - 1].clone(),
                block_index: Some(k1_first),
            });
            for (k, w) in blocks.iter().enumerate().map(|(i, w)| (i + 1, w)) {
                if k <= k1_first {
                    continue;
                }
                let copy = if dir.bit(k) == 1 { 0 } else { 1 };
                chunks.push(PalChunk {
                    copy,
                    word: w.clone(),
                    block_index: Some(k),
                });
            }
        }
    }

    let runs_fixed: Vec<(usize, usize)> = chunks.iter().map(|c| (c.copy, c.word.len())).collect();
    let steering = SteeringWord::from_runs(
        2,
        runs_fixed.into_iter().chain((0..).map(|i| (i % 2, 1usize))),
    )?;
    Ok(PalShuffle {
        witness: ShuffleWitness::self_shuffle(target, steering),
        variant,
        chunks,
    })
}
