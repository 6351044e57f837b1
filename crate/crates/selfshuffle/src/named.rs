//! The stock example words: Thue-Morse, Fibonacci, period-doubling,
//! paper-folding, a full-complexity word, and the base word of the
//! three-copy shuffle example.

use crate::words::{Alphabet, FiniteWord, InfiniteWord, Letter, LetterSource, Morphism, WordError};

pub fn thue_morse() -> InfiniteWord {
    Morphism::parse("0:01,1:10")
        .unwrap()
        .fixed_point(Letter::new(0))
        .unwrap()
}

pub fn fibonacci() -> InfiniteWord {
    Morphism::parse("0:01,1:0")
        .unwrap()
        .fixed_point(Letter::new(0))
        .unwrap()
}

pub fn period_doubling() -> InfiniteWord {
    Morphism::parse("0:01,1:00")
        .unwrap()
        .fixed_point(Letter::new(0))
        .unwrap()
}

/// Regular paper-folding word, the Toeplitz word of pattern `0?1?`.
pub fn paper_folding() -> InfiniteWord {
    InfiniteWord::from_fn(Alphabet::binary(), |n| {
        // odd part of n+1; its second-lowest bit is the letter
        let m = (n as u64 + 1) >> (n as u64 + 1).trailing_zeros();
        Letter::new(((m >> 1) & 1) as usize)
    })
}

/// Fixed point of `0 -> 0001, 1 -> 0101` with the first two letters removed;
/// 3-self-shuffling but not self-shuffling.
pub fn three_shuffle_word() -> InfiniteWord {
    three_shuffle_morphism()
        .fixed_point(Letter::new(0))
        .unwrap()
        .drop_prefix(2)
}

pub fn three_shuffle_morphism() -> Morphism {
    Morphism::parse("0:0001,1:0101").unwrap()
}

/// Concatenation of all binary words of length `n` in increasing
/// lexicographic order (`0 < 1`).
pub fn zn(n: u32) -> FiniteWord {
    let alpha = Alphabet::binary();
    let mut letters = Vec::with_capacity((n as usize) << n);
    for m in 0u64..(1 << n) {
        for bit in (0..n).rev() {
            letters.push(Letter::new(((m >> bit) & 1) as usize));
        }
    }
    FiniteWord::new(alpha, letters).unwrap()
}

/// `v_i` of the full-complexity word: `z_n` when `i = n * 2^(n-1)`,
/// otherwise `0^i 1^i`.
pub fn full_complexity_v(i: u64) -> FiniteWord {
    for n in 1..=63u32 {
        let idx = (n as u64) << (n - 1);
        if idx == i {
            return zn(n);
        }
        if idx > i {
            break;
        }
    }
    let alpha = Alphabet::binary();
    let mut letters = vec![Letter::new(0); i as usize];
    letters.extend(std::iter::repeat_n(Letter::new(1), i as usize));
    FiniteWord::new(alpha, letters).unwrap()
}

/// `y_j`: `y_0` empty, `y_j = y_(j-1) v_j y_(j-1)`.
pub fn full_complexity_y(j: u64) -> FiniteWord {
    let mut y = FiniteWord::empty(Alphabet::binary());
    for i in 1..=j {
        let v = full_complexity_v(i);
        y = y.concat(&v).unwrap().concat(&y).unwrap();
    }
    y
}

/// Block `X_i` of the full-complexity word.
pub fn full_complexity_block(i: u64) -> FiniteWord {
    let alpha = Alphabet::binary();
    match i {
        0 | 1 => alpha.parse_word("01").unwrap(),
        2 => alpha.parse_word("0011").unwrap(),
        _ => {
            let zeros = FiniteWord::new(alpha.clone(), vec![Letter::new(0); i as usize]).unwrap();
            let ones = FiniteWord::new(alpha, vec![Letter::new(1); i as usize]).unwrap();
            zeros
                .concat(&full_complexity_y(i - 2))
                .unwrap()
                .concat(&ones)
                .unwrap()
        }
    }
}

/// Recurrent binary word of full factor complexity, `prod X_i`.
pub fn full_complexity() -> InfiniteWord {
    struct Blocks {
        next: u64,
    }
    impl LetterSource for Blocks {
        fn fill(&mut self, cache: &mut Vec<Letter>, target: usize) {
            while cache.len() < target {
                let block = full_complexity_block(self.next);
                self.next += 1;
                cache.extend_from_slice(block.letters());
            }
        }
    }
    InfiniteWord::new(Alphabet::binary(), Box::new(Blocks { next: 0 }))
}

pub const NAMED_WORDS: [&str; 6] = [
    "thue-morse",
    "fibonacci",
    "period-doubling",
    "paper-folding",
    "full-complexity",
    "three-shuffle-example",
];

pub fn named_word(name: &str) -> Result<InfiniteWord, WordError> {
    match name {
        "thue-morse" | "tm" => Ok(thue_morse()),
        "fibonacci" | "fib" => Ok(fibonacci()),
        "period-doubling" | "pd" => Ok(period_doubling()),
        "paper-folding" | "pf" => Ok(paper_folding()),
        "full-complexity" => Ok(full_complexity()),
        "three-shuffle-example" => Ok(three_shuffle_word()),
        other => Err(WordError::UnknownName(other.to_string())),
    }
}
