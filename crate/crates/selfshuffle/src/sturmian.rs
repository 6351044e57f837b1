//! Sturmian words: mechanical generation from (slope, intercept) and the
//! palindromic-closure construction from a directive sequence.

use std::cmp::Ordering;

use crate::quad::{CirclePoint, QuadError};
use crate::words::{Alphabet, FiniteWord, InfiniteWord, Letter, LetterSource, WordError};
use crate::{Point, Quad};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SturmianError {
    #[error("slope must be irrational")]
    RationalSlope,
    #[error("slope must lie strictly between 0 and 1")]
    SlopeOutOfRange,
    #[error("intercept must lie in [0, 1]")]
    InterceptOutOfRange,
    #[error("directive sequence must be over {{0,1}}")]
    BadDirectiveSymbol,
    #[error("directive sequence must be non-empty")]
    EmptyDirective,
    #[error("directive sequence must begin in 0")]
    DirectiveMustStartZero,
    #[error("cannot parse directive sequence {0:?}")]
    ParseDirective(String),
    #[error("word is not of the form prod 0^k 1 within the scan horizon")]
    NotZeroOneRuns,
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Slope and intercept of a mechanical word. `rho = 1` selects the word
/// that starts with `1` over the intercept-0 coding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmianSpec {
    alpha: Quad,
    rho: Quad,
}

impl SturmianSpec {
    pub fn new(alpha: Quad, rho: Quad) -> Result<Self, SturmianError> {
        if alpha.is_rational() {
            return Err(SturmianError::RationalSlope);
        }
        let zero = Quad::zero();
        let one = Quad::one();
        if alpha.try_cmp(&zero)? != Ordering::Greater || alpha.try_cmp(&one)? != Ordering::Less {
            return Err(SturmianError::SlopeOutOfRange);
        }
        if rho.try_cmp(&zero)? == Ordering::Less || rho.try_cmp(&one)? == Ordering::Greater {
            return Err(SturmianError::InterceptOutOfRange);
        }
        // slope and intercept must live in one field for the rotation
        // arithmetic; this surfaces mixed radicands as an error up front
        alpha.try_add(&rho)?;
        Ok(SturmianSpec { alpha, rho })
    }

    pub fn alpha(&self) -> &Quad {
        &self.alpha
    }

    pub fn rho(&self) -> &Quad {
        &self.rho
    }

    /// True intercept point on the circle ({rho}; 1 maps to 0).
    pub fn intercept_point(&self) -> Result<Point, SturmianError> {
        Ok(CirclePoint::new(&self.rho)?)
    }

    pub fn is_rho_one(&self) -> bool {
        self.rho == Quad::one()
    }
}

/// The mechanical word `z(alpha, rho)`: `z_n = floor((n+1)a+r) - floor(na+r)`.
///
/// Letters are produced by exact circle rotation: `z_n = 1` iff
/// `{n*alpha + rho} >= 1 - alpha`.
pub fn mechanical(spec: &SturmianSpec) -> Result<InfiniteWord, SturmianError> {
    let alpha = spec.alpha;
    let threshold = Quad::one().try_sub(&alpha)?;
    let start = CirclePoint::new(&spec.rho)?;
    let first_letter_override = if spec.is_rho_one() {
        Some(Letter::new(1))
    } else {
        None
    };
    struct Mech {
        point: Point,
        alpha: Quad,
        threshold: Quad,
        over: Option<Letter>,
    }
    impl LetterSource for Mech {
        fn fill(&mut self, cache: &mut Vec<Letter>, target: usize) {
            while cache.len() < target {
                let letter = if let (true, Some(over)) = (cache.is_empty(), self.over) {
                    over
                } else {
                    match self
                        .point
                        .value()
                        .try_cmp(&self.threshold)
                        .expect("mechanical word: same-field comparison")
                    {
                        Ordering::Less => Letter::new(0),
                        _ => Letter::new(1),
                    }
                };
                cache.push(letter);
                self.point = self
                    .point
                    .rotate(&self.alpha)
                    .expect("mechanical word: rotation");
            }
        }
    }
    Ok(InfiniteWord::new(
        Alphabet::binary(),
        Box::new(Mech {
            point: start,
            alpha,
            threshold,
            over: first_letter_override,
        }),
    ))
}

/// Shortest palindrome having `u` as a prefix, by longest palindromic
/// suffix extension. Quadratic worst case, which is fine at desk scale.
pub fn pal_closure(u: &FiniteWord) -> FiniteWord {
    let n = u.len();
    let letters = u.letters();
    let mut split = 0;
    for start in 0..n {
        let tail = &letters[start..];
        let m = tail.len();
        if (0..m / 2).all(|i| tail[i] == tail[m - 1 - i]) {
            split = start;
            break;
        }
    }
    let mut out = letters.to_vec();
    out.extend(letters[..split].iter().rev());
    FiniteWord::new(u.alphabet().clone(), out).unwrap()
}

/// Binary directive sequence `a_1 a_2 a_3 ...`, eventually periodic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectiveSequence {
    pre: Vec<u8>,
    period: Vec<u8>,
}

impl DirectiveSequence {
    pub fn new(pre: Vec<u8>, period: Vec<u8>) -> Result<Self, SturmianError> {
        if period.is_empty() {
            return Err(SturmianError::EmptyDirective);
        }
        if pre.iter().chain(&period).any(|b| *b > 1) {
            return Err(SturmianError::BadDirectiveSymbol);
        }
        Ok(DirectiveSequence { pre, period })
    }

    /// Purely periodic sequence repeating `bits`.
    pub fn periodic(bits: Vec<u8>) -> Result<Self, SturmianError> {
        Self::new(Vec::new(), bits)
    }

    /// Parse `0,0,1,0,1,1` (whole list repeats) or `0,0,1,[0,1,1]`
    /// (preperiod, then the bracketed part repeats).
    pub fn parse(s: &str) -> Result<Self, SturmianError> {
        let err = || SturmianError::ParseDirective(s.to_string());
        let parse_list = |t: &str| -> Result<Vec<u8>, SturmianError> {
            t.split(',')
                .map(|x| x.trim())
                .filter(|x| !x.is_empty())
                .map(|x| match x {
                    "0" => Ok(0u8),
                    "1" => Ok(1u8),
                    _ => Err(err()),
                })
                .collect()
        };
        let s = s.trim();
        if let Some(open) = s.find('[') {
            let close = s.rfind(']').ok_or_else(err)?;
            if close < open || !s[close + 1..].trim().is_empty() {
                return Err(err());
            }
            let pre = parse_list(s[..open].trim().trim_end_matches(','))?;
            let period = parse_list(&s[open + 1..close])?;
            Self::new(pre, period)
        } else {
            Self::periodic(parse_list(s)?)
        }
    }

    /// `a_k`, 1-indexed.
    pub fn bit(&self, k: usize) -> u8 {
        debug_assert!(k >= 1);
        let i = k - 1;
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    pub fn starts_with_zero(&self) -> bool {
        self.bit(1) == 0
    }

    /// Does the symbol occur infinitely often?
    pub fn contains(&self, which: u8) -> bool {
        self.period.contains(&which)
    }

    /// The i-th positive k (1-indexed) with `a_k = which`.
    pub fn nth_index_of(&self, which: u8, i: usize) -> usize {
        debug_assert!(i >= 1);
        let mut seen = 0;
        let mut k = 0;
        loop {
            k += 1;
            if self.bit(k) == which {
                seen += 1;
                if seen == i {
                    return k;
                }
            }
        }
    }
}

impl std::fmt::Display for DirectiveSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, b) in self.pre.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        if !self.pre.is_empty() {
            write!(f, ",")?;
        }
        write!(f, "[")?;
        for (i, b) in self.period.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}

/// Iterated palindromic closure: `phi(k) = Pal(phi(k-1) a_k)`.
pub struct PalIterate<'a> {
    dir: &'a DirectiveSequence,
    phi: FiniteWord,
    k: usize,
    lens: Vec<usize>,
}

impl<'a> PalIterate<'a> {
    pub fn new(dir: &'a DirectiveSequence) -> Self {
        PalIterate {
            dir,
            phi: FiniteWord::empty(Alphabet::binary()),
            k: 0,
            lens: vec![0],
        }
    }

    /// Advance to `phi(k+1)`, returning the new iterate.
    pub fn step(&mut self) -> &FiniteWord {
        self.k += 1;
        let a = Letter::new(self.dir.bit(self.k) as usize);
        let mut extended = self.phi.letters().to_vec();
        extended.push(a);
        let ext = FiniteWord::new(Alphabet::binary(), extended).unwrap();
        self.phi = pal_closure(&ext);
        self.lens.push(self.phi.len());
        &self.phi
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn phi(&self) -> &FiniteWord {
        &self.phi
    }

    /// `|phi(j)|` for all j computed so far.
    pub fn lens(&self) -> &[usize] {
        &self.lens
    }

    /// Run until `|phi(k)| >= n`, then return the block decomposition
    /// `w_1, ..., w_k` (with `phi(k) = phi(k-1) w_k`).
    pub fn blocks_until(&mut self, n: usize) -> Vec<FiniteWord> {
        while self.phi.len() < n {
            self.step();
        }
        (1..=self.k)
            .map(|j| self.phi.slice(self.lens[j - 1], self.lens[j]))
            .collect()
    }
}

/// The characteristic word `lim phi(k)` of a directive sequence.
pub fn characteristic_from_directive(dir: &DirectiveSequence) -> InfiniteWord {
    struct PalSource {
        dir: DirectiveSequence,
        phi: FiniteWord,
        k: usize,
    }
    impl LetterSource for PalSource {
        fn fill(&mut self, cache: &mut Vec<Letter>, target: usize) {
            while self.phi.len() < target {
                self.k += 1;
                let a = Letter::new(self.dir.bit(self.k) as usize);
                let mut ext = self.phi.letters().to_vec();
                ext.push(a);
                self.phi = pal_closure(&FiniteWord::new(Alphabet::binary(), ext).unwrap());
            }
            // the iterate may overshoot `target`; keep everything produced
            cache.extend_from_slice(&self.phi.letters()[cache.len()..]);
        }
    }
    InfiniteWord::new(
        Alphabet::binary(),
        Box::new(PalSource {
            dir: dir.clone(),
            phi: FiniteWord::empty(Alphabet::binary()),
            k: 0,
        }),
    )
}

/// Block `w_k` with `phi(k) = phi(k-1) w_k`.
pub fn directive_block(dir: &DirectiveSequence, k: usize) -> FiniteWord {
    debug_assert!(k >= 1);
    let mut it = PalIterate::new(dir);
    for _ in 0..k {
        it.step();
    }
    let lens = it.lens();
    it.phi().slice(lens[k - 1], lens[k])
}

/// Run lengths of `0`s before each `1`: the exponents `k_i` in
/// `x = prod 0^(k_i) 1`. Scans `count` runs within `horizon` letters.
pub fn k_sequence(
    word: &InfiniteWord,
    count: usize,
    horizon: usize,
) -> Result<Vec<u64>, SturmianError> {
    let prefix = word.prefix(horizon);
    let mut ks = Vec::with_capacity(count);
    let mut run = 0u64;
    for l in prefix.letters() {
        if l.index() == 0 {
            run += 1;
        } else {
            ks.push(run);
            run = 0;
            if ks.len() == count {
                return Ok(ks);
            }
        }
    }
    Err(SturmianError::NotZeroOneRuns)
}
