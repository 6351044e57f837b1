//! Finite and lazy infinite words over small alphabets, plus morphisms.
//!
//! An [`InfiniteWord`] is a shared, internally synchronized prefix cache in
//! front of a total generator, so `prefix(n)` is deterministic and
//! monotone no matter how callers interleave their requests.

use std::fmt;
use std::sync::{Arc, Mutex};

/// Index into an [`Alphabet`]. At most 64 symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    pub fn new(i: usize) -> Self {
        debug_assert!(i < Alphabet::MAX_SIZE);
        Letter(i as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("letter {0} out of range for alphabet of size {1}")]
    LetterOutOfRange(usize, usize),
    #[error("alphabets are incompatible")]
    AlphabetMismatch,
    #[error("alphabet size {0} unsupported (1..=64)")]
    BadAlphabetSize(usize),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("morphism image list has wrong length")]
    BadImageCount,
    #[error("morphism erases {0:?}, which is not allowed here")]
    Erasing(String),
    #[error("morphism is not prolongable at {0:?}")]
    NotProlongable(String),
    #[error("unknown word name {0:?}")]
    UnknownName(String),
    #[error("pattern must be non-empty")]
    EmptyPattern,
    #[error("cannot parse morphism {0:?}")]
    ParseMorphism(String),
}

struct AlphaInner {
    names: Vec<String>,
}

/// Finite symbol set with display names. Cheap to clone.
#[derive(Clone)]
pub struct Alphabet(Arc<AlphaInner>);

impl Alphabet {
    pub const MAX_SIZE: usize = 64;

    pub fn from_names<S: Into<String>>(names: Vec<S>) -> Result<Self, WordError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.len() > Self::MAX_SIZE {
            return Err(WordError::BadAlphabetSize(names.len()));
        }
        Ok(Alphabet(Arc::new(AlphaInner { names })))
    }

    pub fn binary() -> Self {
        Self::from_names(vec!["0", "1"]).unwrap()
    }

    /// `{1, 2, ..., k}`, used for steering words over k copies.
    pub fn digits(k: usize) -> Result<Self, WordError> {
        if k == 0 || k > 9 {
            return Err(WordError::BadAlphabetSize(k));
        }
        Self::from_names((1..=k).map(|i| i.to_string()).collect())
    }

    /// `{a, b, c, ...}` of size `r`.
    pub fn latin(r: usize) -> Result<Self, WordError> {
        if r == 0 || r > 26 {
            return Err(WordError::BadAlphabetSize(r));
        }
        Self::from_names(
            (0..r)
                .map(|i| ((b'a' + i as u8) as char).to_string())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.0.names.len()
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.0.names[l.index()]
    }

    pub fn letter_by_name(&self, name: &str) -> Option<Letter> {
        self.0
            .names
            .iter()
            .position(|n| n == name)
            .map(Letter::new)
    }

    /// Parse a word written with single-character symbol names.
    pub fn parse_word(&self, s: &str) -> Result<FiniteWord, WordError> {
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            let l = self
                .letter_by_name(&ch.to_string())
                .ok_or_else(|| WordError::UnknownSymbol(ch.to_string()))?;
            letters.push(l);
        }
        Ok(FiniteWord {
            alphabet: self.clone(),
            letters,
        })
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}
impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet{:?}", self.0.names)
    }
}

/// Finite word; equality and hashing look only at the letters.
#[derive(Clone)]
pub struct FiniteWord {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl FiniteWord {
    pub fn new(alphabet: Alphabet, letters: Vec<Letter>) -> Result<Self, WordError> {
        let size = alphabet.size();
        for l in &letters {
            if l.index() >= size {
                return Err(WordError::LetterOutOfRange(l.index(), size));
            }
        }
        Ok(FiniteWord { alphabet, letters })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        FiniteWord {
            alphabet,
            letters: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn letter(&self, i: usize) -> Letter {
        self.letters[i]
    }

    pub fn slice(&self, start: usize, end: usize) -> FiniteWord {
        FiniteWord {
            alphabet: self.alphabet.clone(),
            letters: self.letters[start..end].to_vec(),
        }
    }

    pub fn concat(&self, other: &FiniteWord) -> Result<FiniteWord, WordError> {
        if self.alphabet != other.alphabet {
            return Err(WordError::AlphabetMismatch);
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(FiniteWord {
            alphabet: self.alphabet.clone(),
            letters,
        })
    }

    pub fn repeated(&self, times: usize) -> FiniteWord {
        let mut letters = Vec::with_capacity(self.len() * times);
        for _ in 0..times {
            letters.extend_from_slice(&self.letters);
        }
        FiniteWord {
            alphabet: self.alphabet.clone(),
            letters,
        }
    }

    pub fn reversed(&self) -> FiniteWord {
        let mut letters = self.letters.clone();
        letters.reverse();
        FiniteWord {
            alphabet: self.alphabet.clone(),
            letters,
        }
    }

    pub fn is_palindrome(&self) -> bool {
        let n = self.letters.len();
        (0..n / 2).all(|i| self.letters[i] == self.letters[n - 1 - i])
    }

    /// Letter counts indexed by the alphabet.
    pub fn parikh(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.alphabet.size()];
        for l in &self.letters {
            counts[l.index()] += 1;
        }
        counts
    }

    /// Naive factor scan.
    pub fn contains_factor(&self, needle: &FiniteWord) -> bool {
        if needle.is_empty() {
            return true;
        }
        if needle.len() > self.len() {
            return false;
        }
        self.letters
            .windows(needle.len())
            .any(|w| w == needle.letters())
    }

    pub fn starts_with(&self, prefix: &FiniteWord) -> bool {
        self.len() >= prefix.len() && self.letters[..prefix.len()] == prefix.letters[..]
    }
}

impl PartialEq for FiniteWord {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
    }
}
impl Eq for FiniteWord {}

impl std::hash::Hash for FiniteWord {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            f.write_str(self.alphabet.name(*l))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// Generator behind an [`InfiniteWord`]: extend `cache` to at least
/// `target` letters. Generators are total; they must always make progress.
pub trait LetterSource: Send {
    fn fill(&mut self, cache: &mut Vec<Letter>, target: usize);
}

struct FnSource<F>(F);

impl<F: FnMut(usize) -> Letter + Send> LetterSource for FnSource<F> {
    fn fill(&mut self, cache: &mut Vec<Letter>, target: usize) {
        while cache.len() < target {
            let l = (self.0)(cache.len());
            cache.push(l);
        }
    }
}

struct IterSource<I>(I);

impl<I: Iterator<Item = Letter> + Send> LetterSource for IterSource<I> {
    fn fill(&mut self, cache: &mut Vec<Letter>, target: usize) {
        while cache.len() < target {
            match self.0.next() {
                Some(l) => cache.push(l),
                None => unreachable!("infinite word generator ran dry"),
            }
        }
    }
}

struct Gen {
    cache: Vec<Letter>,
    src: Box<dyn LetterSource>,
}

/// Lazy infinite word with a cached, shared prefix.
#[derive(Clone)]
pub struct InfiniteWord {
    alphabet: Alphabet,
    state: Arc<Mutex<Gen>>,
}

impl InfiniteWord {
    pub fn new(alphabet: Alphabet, src: Box<dyn LetterSource>) -> Self {
        InfiniteWord {
            alphabet,
            state: Arc::new(Mutex::new(Gen {
                cache: Vec::new(),
                src,
            })),
        }
    }

    pub fn from_fn<F: FnMut(usize) -> Letter + Send + 'static>(alphabet: Alphabet, f: F) -> Self {
        Self::new(alphabet, Box::new(FnSource(f)))
    }

    pub fn from_iter_src<I: Iterator<Item = Letter> + Send + 'static>(
        alphabet: Alphabet,
        it: I,
    ) -> Self {
        Self::new(alphabet, Box::new(IterSource(it)))
    }

    /// `pattern` repeated forever.
    pub fn periodic(pattern: &FiniteWord) -> Result<Self, WordError> {
        if pattern.is_empty() {
            return Err(WordError::EmptyPattern);
        }
        let letters = pattern.letters().to_vec();
        Ok(Self::from_fn(pattern.alphabet().clone(), move |n| {
            letters[n % letters.len()]
        }))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// First `n` letters. Extends the shared cache as needed.
    pub fn prefix(&self, n: usize) -> FiniteWord {
        let mut gen = self.state.lock().unwrap();
        if gen.cache.len() < n {
            let Gen { cache, src } = &mut *gen;
            src.fill(cache, n);
        }
        FiniteWord {
            alphabet: self.alphabet.clone(),
            letters: gen.cache[..n].to_vec(),
        }
    }

    pub fn letter(&self, n: usize) -> Letter {
        let mut gen = self.state.lock().unwrap();
        if gen.cache.len() <= n {
            // grow in chunks so letter-by-letter iteration stays cheap
            let target = (n + 1).max(gen.cache.len() * 2).min(n + 4096);
            let Gen { cache, src } = &mut *gen;
            src.fill(cache, target.max(n + 1));
        }
        gen.cache[n]
    }

    pub fn cached_len(&self) -> usize {
        self.state.lock().unwrap().cache.len()
    }

    /// Iterator over letters from position `start`.
    pub fn letters_from(&self, start: usize) -> LetterIter {
        LetterIter {
            word: self.clone(),
            pos: start,
        }
    }

    pub fn letters(&self) -> LetterIter {
        self.letters_from(0)
    }

    /// Drop the first `k` letters.
    pub fn drop_prefix(&self, k: usize) -> InfiniteWord {
        let src = self.clone();
        Self::from_fn(self.alphabet.clone(), move |n| src.letter(n + k))
    }

    /// Prepend a finite word.
    pub fn prepend(&self, head: &FiniteWord) -> Result<InfiniteWord, WordError> {
        if head.alphabet() != &self.alphabet {
            return Err(WordError::AlphabetMismatch);
        }
        let head = head.letters().to_vec();
        let src = self.clone();
        Ok(Self::from_fn(self.alphabet.clone(), move |n| {
            if n < head.len() {
                head[n]
            } else {
                src.letter(n - head.len())
            }
        }))
    }

    /// Letter-to-letter recoding into `target`.
    pub fn relabel(&self, target: Alphabet, map: Vec<Letter>) -> Result<InfiniteWord, WordError> {
        if map.len() != self.alphabet.size() {
            return Err(WordError::BadImageCount);
        }
        for l in &map {
            if l.index() >= target.size() {
                return Err(WordError::LetterOutOfRange(l.index(), target.size()));
            }
        }
        let src = self.clone();
        Ok(Self::from_fn(target, move |n| map[src.letter(n).index()]))
    }

    /// Exchange 0 and 1 in a binary word.
    pub fn complement(&self) -> Result<InfiniteWord, WordError> {
        if self.alphabet.size() != 2 {
            return Err(WordError::AlphabetMismatch);
        }
        self.relabel(self.alphabet.clone(), vec![Letter::new(1), Letter::new(0)])
    }
}

impl fmt::Debug for InfiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InfiniteWord({}...)", self.prefix(24))
    }
}

pub struct LetterIter {
    word: InfiniteWord,
    pos: usize,
}

impl Iterator for LetterIter {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        let l = self.word.letter(self.pos);
        self.pos += 1;
        Some(l)
    }
}

/// Substitution `Letter -> FiniteWord`.
#[derive(Clone, Debug)]
pub struct Morphism {
    domain: Alphabet,
    codomain: Alphabet,
    images: Vec<Vec<Letter>>,
}

impl Morphism {
    pub fn new(
        domain: Alphabet,
        codomain: Alphabet,
        images: Vec<FiniteWord>,
    ) -> Result<Self, WordError> {
        if images.len() != domain.size() {
            return Err(WordError::BadImageCount);
        }
        let mut raw = Vec::with_capacity(images.len());
        for img in &images {
            if img.alphabet() != &codomain {
                return Err(WordError::AlphabetMismatch);
            }
            raw.push(img.letters().to_vec());
        }
        Ok(Morphism {
            domain,
            codomain,
            images: raw,
        })
    }

    /// Parse `0:01,1:0` style. Domain symbols in listed order; the codomain
    /// is the sorted set of symbols appearing in the images.
    pub fn parse(s: &str) -> Result<Self, WordError> {
        let err = || WordError::ParseMorphism(s.to_string());
        let mut keys: Vec<String> = Vec::new();
        let mut vals: Vec<String> = Vec::new();
        for rule in s.split(',') {
            let (k, v) = rule.split_once(':').ok_or_else(err)?;
            let k = k.trim();
            let v = v.trim();
            if k.chars().count() != 1 || keys.iter().any(|x| x == k) {
                return Err(err());
            }
            keys.push(k.to_string());
            vals.push(v.to_string());
        }
        if keys.is_empty() {
            return Err(err());
        }
        let mut co: Vec<String> = vals
            .iter()
            .flat_map(|v| v.chars().map(|c| c.to_string()))
            .collect();
        co.sort();
        co.dedup();
        if co.is_empty() {
            // fully erasing morphism: give it the domain's symbols
            co = keys.clone();
        }
        let domain = Alphabet::from_names(keys)?;
        let codomain = Alphabet::from_names(co)?;
        let images = vals
            .iter()
            .map(|v| codomain.parse_word(v))
            .collect::<Result<Vec<_>, _>>()?;
        Morphism::new(domain, codomain, images)
    }

    pub fn domain(&self) -> &Alphabet {
        &self.domain
    }

    pub fn codomain(&self) -> &Alphabet {
        &self.codomain
    }

    pub fn image(&self, l: Letter) -> &[Letter] {
        &self.images[l.index()]
    }

    pub fn image_word(&self, l: Letter) -> FiniteWord {
        FiniteWord {
            alphabet: self.codomain.clone(),
            letters: self.images[l.index()].clone(),
        }
    }

    pub fn is_erasing(&self) -> bool {
        self.images.iter().any(|img| img.is_empty())
    }

    pub fn apply(&self, u: &FiniteWord) -> Result<FiniteWord, WordError> {
        if u.alphabet() != &self.domain {
            return Err(WordError::AlphabetMismatch);
        }
        let mut letters = Vec::new();
        for l in u.letters() {
            letters.extend_from_slice(&self.images[l.index()]);
        }
        Ok(FiniteWord {
            alphabet: self.codomain.clone(),
            letters,
        })
    }

    /// Lazy image of an infinite word. Requires a non-erasing morphism so
    /// the image is itself infinite.
    pub fn apply_infinite(&self, w: &InfiniteWord) -> Result<InfiniteWord, WordError> {
        if w.alphabet() != &self.domain {
            return Err(WordError::AlphabetMismatch);
        }
        if self.is_erasing() {
            let l = (0..self.images.len())
                .find(|i| self.images[*i].is_empty())
                .unwrap();
            return Err(WordError::Erasing(self.domain.name(Letter::new(l)).into()));
        }
        let mor = self.clone();
        let src = w.clone();
        struct MorSource {
            mor: Morphism,
            src: InfiniteWord,
            pos: usize,
        }
        impl LetterSource for MorSource {
            fn fill(&mut self, cache: &mut Vec<Letter>, target: usize) {
                while cache.len() < target {
                    let l = self.src.letter(self.pos);
                    self.pos += 1;
                    cache.extend_from_slice(self.mor.image(l));
                }
            }
        }
        Ok(InfiniteWord::new(
            self.codomain.clone(),
            Box::new(MorSource { mor, src, pos: 0 }),
        ))
    }

    /// The unique fixed point starting at `a`, for a non-erasing morphism
    /// with `mu(a) = a...` and `|mu(a)| >= 2`.
    pub fn fixed_point(&self, a: Letter) -> Result<InfiniteWord, WordError> {
        if self.domain != self.codomain {
            return Err(WordError::AlphabetMismatch);
        }
        if self.is_erasing() {
            let l = (0..self.images.len())
                .find(|i| self.images[*i].is_empty())
                .unwrap();
            return Err(WordError::Erasing(self.domain.name(Letter::new(l)).into()));
        }
        let img = self.image(a);
        if img.len() < 2 || img[0] != a {
            return Err(WordError::NotProlongable(self.domain.name(a).into()));
        }
        // pump: the fixed point is mu(x0) mu(x1) mu(x2) ...; the cache is
        // seeded with mu(a) and `pos` points at the next letter to expand.
        struct FixSource {
            mor: Morphism,
            pos: usize,
        }
        impl LetterSource for FixSource {
            fn fill(&mut self, cache: &mut Vec<Letter>, target: usize) {
                while cache.len() < target {
                    let l = cache[self.pos];
                    self.pos += 1;
                    cache.extend_from_slice(self.mor.image(l));
                }
            }
        }
        Ok(InfiniteWord {
            alphabet: self.domain.clone(),
            state: Arc::new(Mutex::new(Gen {
                cache: img.to_vec(),
                src: Box::new(FixSource {
                    mor: self.clone(),
                    pos: 1,
                }),
            })),
        })
    }
}

/// Parikh vector of a finite word.
pub fn parikh(u: &FiniteWord) -> Vec<u64> {
    u.parikh()
}
