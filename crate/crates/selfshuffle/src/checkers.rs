//! Necessary-condition predicates for self-shuffling: Abelian borders,
//! Lyndon status, and the shuffling delay of Sturmian words.

use std::cmp::Ordering;

use crate::sturmian::{mechanical, SturmianError, SturmianSpec};
use crate::words::{FiniteWord, InfiniteWord, Letter};
use crate::Quad;

/// Abelian borders of one finite word: lengths `l <= |u|/2` whose prefix
/// and suffix of length `l` have equal Parikh vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorderReport {
    pub word_len: usize,
    pub lengths: Vec<usize>,
    pub border_free: bool,
}

pub fn abelian_borders(u: &FiniteWord) -> BorderReport {
    let n = u.len();
    let sigma = u.alphabet().size();
    let mut pre = vec![0i64; sigma];
    let mut suf = vec![0i64; sigma];
    let mut lengths = Vec::new();
    for l in 1..=n / 2 {
        pre[u.letter(l - 1).index()] += 1;
        suf[u.letter(n - l).index()] += 1;
        if pre == suf {
            lengths.push(l);
        }
    }
    BorderReport {
        word_len: n,
        lengths: lengths.clone(),
        border_free: lengths.is_empty(),
    }
}

/// Is the prefix of length `len` Abelian border-free? Uses cumulative
/// counts so a horizon scan stays quadratic overall with early exit.
fn prefix_is_ab_border_free(cum: &[Vec<u32>], len: usize) -> bool {
    let sigma = cum.len();
    'l: for l in 1..=len / 2 {
        for col in cum.iter().take(sigma) {
            // prefix count vs suffix count of length l
            if col[l] != col[len] - col[len - l] {
                continue 'l;
            }
        }
        return false;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbFreeReport {
    /// Longest Abelian border-free prefix length within the horizon.
    pub length: usize,
    /// Set when the maximum sits in the top half of the horizon: longer
    /// border-free prefixes may well exist beyond it.
    pub saturated: bool,
    pub horizon: usize,
}

pub fn longest_ab_borderfree_prefix(x: &InfiniteWord, horizon: usize) -> AbFreeReport {
    let p = x.prefix(horizon);
    let sigma = x.alphabet().size();
    let mut cum = vec![vec![0u32; horizon + 1]; sigma];
    for (i, l) in p.letters().iter().enumerate() {
        for (sym, col) in cum.iter_mut().enumerate() {
            col[i + 1] = col[i] + u32::from(sym == l.index());
        }
    }
    let mut best = 0;
    for len in 1..=horizon {
        if prefix_is_ab_border_free(&cum, len) {
            best = len;
        }
    }
    AbFreeReport {
        length: best,
        saturated: best * 2 >= horizon,
        horizon,
    }
}

/// Longest ordinary-border-free prefix length within the horizon, via the
/// prefix function.
pub fn longest_borderfree_prefix(x: &InfiniteWord, horizon: usize) -> usize {
    let p = x.prefix(horizon);
    let letters = p.letters();
    let mut fail = vec![0usize; horizon + 1];
    let mut best = 0;
    for i in 1..horizon {
        let mut k = fail[i];
        while k > 0 && letters[i] != letters[k] {
            k = fail[k];
        }
        if letters[i] == letters[k] {
            k += 1;
        }
        fail[i + 1] = k;
        if k == 0 {
            best = i + 1;
        }
    }
    if horizon >= 1 && best == 0 {
        best = 1; // a single letter has no proper border
    }
    best
}

/// Per-shift evidence from the Lyndon scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftEvidence {
    /// The shifted word is lexicographically larger, as a Lyndon word
    /// requires; the position is where the strict difference appeared.
    Larger { position: usize },
    /// The shifted word is strictly smaller: a counterexample.
    Smaller { position: usize },
    /// No difference within the compared window. For a genuinely Lyndon
    /// aperiodic word this can only happen when the window is too short;
    /// persistent full-window equality is periodicity, which rules the
    /// property out.
    EqualThroughWindow,
}

#[derive(Debug, Clone)]
pub struct LyndonReport {
    pub depth: usize,
    /// First shift whose suffix compares smaller or equal-forever, if any.
    pub violation: Option<(usize, ShiftEvidence)>,
    pub consistent_to_depth: bool,
}

/// Compare `x` with each of its shifts `1..depth` under the letter order
/// given by `order` (a permutation listing letters from smallest to
/// largest); windows run to `depth` letters.
pub fn lyndon_status(x: &InfiniteWord, order: &[Letter], depth: usize) -> LyndonReport {
    let mut rank = vec![0usize; order.len()];
    for (r, l) in order.iter().enumerate() {
        rank[l.index()] = r;
    }
    let p = x.prefix(2 * depth);
    let letters = p.letters();
    for shift in 1..depth {
        let mut evidence = ShiftEvidence::EqualThroughWindow;
        for t in 0..depth {
            let a = rank[letters[t].index()];
            let b = rank[letters[shift + t].index()];
            match a.cmp(&b) {
                Ordering::Less => {
                    evidence = ShiftEvidence::Larger { position: t };
                    break;
                }
                Ordering::Greater => {
                    evidence = ShiftEvidence::Smaller { position: t };
                    break;
                }
                Ordering::Equal => {}
            }
        }
        match evidence {
            ShiftEvidence::Larger { .. } => {}
            other => {
                return LyndonReport {
                    depth,
                    violation: Some((shift, other)),
                    consistent_to_depth: false,
                }
            }
        }
    }
    LyndonReport {
        depth,
        violation: None,
        consistent_to_depth: true,
    }
}

#[derive(Debug, Clone)]
pub struct DelayReport {
    /// The common value of the three characterizations.
    pub delay: usize,
    pub ab_borderfree_len: usize,
    pub borderfree_len: usize,
    /// Least n with `T^n(x)` strictly on the expected side of `x`.
    pub lex_index: usize,
    /// Did the word start with 1 (so the lex test used `>`)?
    pub starts_with_one: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DelayError {
    #[error("intercept 0 words are not self-shuffling; no delay exists")]
    ZeroIntercept,
    #[error("the three delay characterizations disagree: {0:?}")]
    Disagreement(String),
    #[error("horizon too small to settle the delay")]
    HorizonExhausted,
    #[error(transparent)]
    Sturmian(#[from] SturmianError),
}

/// For a self-shuffling Sturmian word the delay before a shuffle can start
/// equals the longest Abelian border-free prefix, the longest border-free
/// prefix, and the first lexicographic drop (rise for words starting 1).
/// Computes all three and insists they agree.
pub fn shuffling_delay_sturmian(
    alpha: &Quad,
    rho: &Quad,
    horizon: usize,
) -> Result<DelayReport, DelayError> {
    let spec = SturmianSpec::new(*alpha, *rho)?;
    let point = spec.intercept_point()?;
    if point.is_zero() {
        return Err(DelayError::ZeroIntercept);
    }
    let x = mechanical(&spec)?;
    let ab = longest_ab_borderfree_prefix(&x, horizon);
    if ab.saturated {
        return Err(DelayError::HorizonExhausted);
    }
    let bf = longest_borderfree_prefix(&x, horizon);
    let p = x.prefix(2 * horizon);
    let letters = p.letters();
    let starts_with_one = letters[0].index() == 1;
    let mut lex_index = None;
    'shift: for n in 1..horizon {
        for t in 0..horizon {
            let a = letters[t].index();
            let b = letters[n + t].index();
            if a != b {
                let shifted_below = b < a;
                if shifted_below != starts_with_one {
                    // word starts 0: we want T^n(x) < x; starts 1: the reverse
                    lex_index = Some(n);
                    break 'shift;
                }
                continue 'shift;
            }
        }
        return Err(DelayError::HorizonExhausted);
    }
    let lex_index = lex_index.ok_or(DelayError::HorizonExhausted)?;
    if ab.length != bf || bf != lex_index {
        return Err(DelayError::Disagreement(format!(
            "ab={} borderfree={} lex={}",
            ab.length, bf, lex_index
        )));
    }
    Ok(DelayReport {
        delay: ab.length,
        ab_borderfree_len: ab.length,
        borderfree_len: bf,
        lex_index,
        starts_with_one,
    })
}
