//! Bounded breadth-first search of the shuffle graph.
//!
//! Vertices are k-tuples of per-copy consumption counts whose Parikh
//! vectors add up to the Parikh vector of the corresponding prefix; edges
//! bump one coordinate. A word is k-self-shuffling exactly when this graph
//! connects the origin to infinity with every coordinate diverging, which
//! no finite search can decide outright: outcomes are therefore a
//! depth-limited witness, a death certificate for the pruned frontier, or
//! an inconclusive report.

use std::collections::HashSet;

use crate::shuffle::{ShuffleError, ShuffleWitness, SteeringWord};
use crate::words::InfiniteWord;

/// Divergence policy for the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Keep every reachable vertex and demand, at the final depth only,
    /// that some tuple has all coordinates at least `depth * num / den`.
    FinalThreshold { num: u32, den: u32 },
    /// Prune any tuple whose minimum coordinate falls below
    /// `n * num / den - slack` at level `n`, enforcing steady divergence
    /// along the whole path. Axis-hugging prefixes die out by themselves,
    /// so an emptied frontier becomes an observable death certificate.
    SteadyDivergence { num: u32, den: u32, slack: u32 },
}

impl Strategy {
    /// Default policy: require rate `1/(2k+1)` with a small additive slack.
    /// The period-doubling block shuffle alternates consumption `2:1`, so
    /// its minimum-coordinate rate along blocks dips to exactly `1/5` for
    /// two copies; `1/(2k)` would reject it.
    pub fn steady_default(k: usize) -> Strategy {
        Strategy::SteadyDivergence {
            num: 1,
            den: (2 * k + 1) as u32,
            slack: 8,
        }
    }

    fn keeps(&self, level: usize, min_coord: usize) -> bool {
        match self {
            Strategy::FinalThreshold { .. } => true,
            Strategy::SteadyDivergence { num, den, slack } => {
                (min_coord as u64 + *slack as u64) * *den as u64 >= level as u64 * *num as u64
            }
        }
    }

    fn accepts_final(&self, depth: usize, min_coord: usize) -> bool {
        match self {
            Strategy::FinalThreshold { num, den } => {
                min_coord as u64 * *den as u64 >= depth as u64 * *num as u64
            }
            Strategy::SteadyDivergence { .. } => true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchParams {
    pub depth: usize,
    pub strategy: Strategy,
    /// Total stored tuples across all levels before giving up.
    pub max_tuples: usize,
}

impl SearchParams {
    pub fn new(depth: usize, k: usize) -> Self {
        SearchParams {
            depth,
            strategy: Strategy::steady_default(k),
            max_tuples: 10_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchStats {
    /// Largest minimum coordinate seen on the deepest computed level.
    pub best_min_final: usize,
    /// Last level at which the best minimum coordinate improved.
    pub last_gain_level: usize,
    /// Deepest level computed.
    pub levels_computed: usize,
    /// Total tuples stored.
    pub tuples: usize,
}

/// Three-valued search outcome. `Dead` certifies that no shuffle survives
/// the strategy's divergence requirement; with `FinalThreshold` it is
/// reported when the best minimum coordinate stagnates for the second half
/// of the run (starvation), with the level of the last improvement.
#[derive(Debug)]
pub enum SearchOutcome {
    Witness {
        witness: ShuffleWitness,
        final_tuple: Vec<usize>,
        stats: SearchStats,
    },
    Dead {
        level: usize,
        frontier_emptied: bool,
        stats: SearchStats,
    },
    Alive {
        truncated: bool,
        stats: SearchStats,
    },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&ShuffleWitness> {
        match self {
            SearchOutcome::Witness { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn is_dead(&self) -> bool {
        matches!(self, SearchOutcome::Dead { .. })
    }
}

/// Cumulative letter counts of a word prefix, the data behind the vertex
/// condition.
pub struct ParikhOracle {
    counts: Vec<Vec<u32>>,
    len: usize,
    word: InfiniteWord,
}

impl ParikhOracle {
    pub fn new(word: &InfiniteWord) -> Self {
        let sigma = word.alphabet().size();
        ParikhOracle {
            counts: vec![vec![0u32]; sigma],
            len: 0,
            word: word.clone(),
        }
    }

    /// Make prefix counts available for positions `0..=n`.
    pub fn ensure(&mut self, n: usize) {
        if n <= self.len {
            return;
        }
        let prefix = self.word.prefix(n);
        for l in prefix.letters()[self.len..].iter() {
            for (sym, col) in self.counts.iter_mut().enumerate() {
                let last = *col.last().unwrap();
                col.push(last + u32::from(sym == l.index()));
            }
        }
        self.len = n;
    }

    /// Parikh vertex condition: the letter counts of the coordinate
    /// prefixes add up to those of the full prefix.
    pub fn is_vertex(&self, coords: &[usize]) -> bool {
        let n: usize = coords.iter().sum();
        debug_assert!(n <= self.len);
        // letter 0 is implied by the total length
        for col in self.counts.iter().skip(1) {
            let whole = col[n];
            let sum: u32 = coords.iter().map(|&i| col[i]).sum();
            if sum != whole {
                return false;
            }
        }
        true
    }
}

/// Level set of the shuffle graph during search: the live k-tuples with a
/// fixed coordinate sum.
#[derive(Debug, Clone)]
pub struct ShuffleFrontier {
    pub level: usize,
    pub tuples: Vec<Vec<usize>>,
}

impl ShuffleFrontier {
    pub fn origin(k: usize) -> Self {
        ShuffleFrontier {
            level: 0,
            tuples: vec![vec![0; k]],
        }
    }
}

/// One unpruned step: all vertices at the next level reachable by bumping
/// exactly one coordinate of a live tuple.
pub fn frontier_step(x: &InfiniteWord, f: &ShuffleFrontier) -> ShuffleFrontier {
    let mut oracle = ParikhOracle::new(x);
    oracle.ensure(f.level + 1);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut tuples = Vec::new();
    for t in &f.tuples {
        for j in 0..t.len() {
            let mut child = t.clone();
            child[j] += 1;
            if oracle.is_vertex(&child) && seen.insert(child.clone()) {
                tuples.push(child);
            }
        }
    }
    tuples.sort();
    ShuffleFrontier {
        level: f.level + 1,
        tuples,
    }
}

// ---------------------------------------------------------------------------
// Two-copy search: levels are bitsets over the first coordinate.

struct Level2 {
    bits: Vec<u64>,
}

impl Level2 {
    fn empty(n: usize) -> Self {
        Level2 {
            bits: vec![0u64; n / 64 + 1],
        }
    }

    fn set(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        (self.bits[i / 64] >> (i % 64)) & 1 == 1
    }

    fn iter_set(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &bits)| {
            let mut b = bits;
            std::iter::from_fn(move || {
                if b == 0 {
                    None
                } else {
                    let tz = b.trailing_zeros() as usize;
                    b &= b - 1;
                    Some(w * 64 + tz)
                }
            })
        })
    }

    fn count(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }
}

pub(crate) enum CorePath {
    /// Copy indices (0 or 1) along a maximal-divergence path, plus the
    /// final tuple.
    Found(Vec<u8>, [usize; 2]),
    Dead {
        level: usize,
    },
    Alive {
        truncated: bool,
    },
}

pub(crate) struct CoreStats {
    pub best_min_final: usize,
    pub last_gain_level: usize,
    pub levels_computed: usize,
    pub tuples: usize,
}

/// Shared two-copy frontier walk, parameterized by the vertex condition so
/// the stepping-stone model can reuse it with an arithmetic membership
/// test instead of Parikh sums.
pub(crate) fn search2_core(
    params: &SearchParams,
    mut is_vertex: impl FnMut(usize, usize) -> bool,
) -> (CorePath, CoreStats) {
    let depth = params.depth;
    let mut levels: Vec<Level2> = Vec::with_capacity(depth + 1);
    let mut l0 = Level2::empty(0);
    l0.set(0);
    levels.push(l0);
    let mut tuples = 1usize;
    let mut best_min_overall = 0usize;
    let mut last_gain_level = 0usize;
    fn make_stats(levels: &[Level2], gain: usize, tuples: usize) -> CoreStats {
        let n = levels.len() - 1;
        CoreStats {
            best_min_final: levels
                .last()
                .map(|l| l.iter_set().map(|i| i.min(n - i)).max().unwrap_or(0))
                .unwrap_or(0),
            last_gain_level: gain,
            levels_computed: n,
            tuples,
        }
    }
    for n in 1..=depth {
        let prev = levels.last().unwrap();
        let mut cur = Level2::empty(n);
        for i in prev.iter_set() {
            // bump copy 1: (i, j) -> (i + 1, j); bump copy 2: j grows
            for child_i in [i + 1, i] {
                if cur.get(child_i) {
                    continue;
                }
                let child_j = n - child_i;
                let m = child_i.min(child_j);
                if !params.strategy.keeps(n, m) {
                    continue;
                }
                if is_vertex(child_i, child_j) {
                    cur.set(child_i);
                }
            }
        }
        let count = cur.count();
        tuples += count;
        if count == 0 {
            levels.push(cur);
            let s = make_stats(&levels, last_gain_level, tuples);
            return (CorePath::Dead { level: n }, s);
        }
        let best_here = cur.iter_set().map(|i| i.min(n - i)).max().unwrap();
        if best_here > best_min_overall {
            best_min_overall = best_here;
            last_gain_level = n;
        }
        levels.push(cur);
        if tuples > params.max_tuples {
            let s = make_stats(&levels, last_gain_level, tuples);
            return (CorePath::Alive { truncated: true }, s);
        }
    }

    // pick the deepest tuple with the largest minimum coordinate,
    // smallest first coordinate on ties
    let last = levels.last().unwrap();
    let mut best_i = None;
    let mut best_min = 0;
    for i in last.iter_set() {
        let m = i.min(depth - i);
        if best_i.is_none() || m > best_min {
            best_i = Some(i);
            best_min = m;
        }
    }
    let s = make_stats(&levels, last_gain_level, tuples);
    let Some(mut i) = best_i else {
        return (CorePath::Dead { level: depth }, s);
    };
    if !params.strategy.accepts_final(depth, best_min) {
        return (CorePath::Alive { truncated: false }, s);
    }

    // backtrack, preferring the copy-1 increment
    let mut symbols = vec![0u8; depth];
    for n in (1..=depth).rev() {
        let prev = &levels[n - 1];
        if i > 0 && prev.get(i - 1) {
            symbols[n - 1] = 0;
            i -= 1;
        } else {
            debug_assert!(prev.get(i));
            symbols[n - 1] = 1;
        }
    }
    let final_tuple = [best_i.unwrap(), depth - best_i.unwrap()];
    (CorePath::Found(symbols, final_tuple), s)
}

fn steering_from_symbols(k: usize, symbols: Vec<u8>) -> SteeringWord {
    // extend beyond the searched depth by cycling the copies; the witness
    // is only ever checked to the searched depth
    let len = symbols.len();
    SteeringWord::from_copy_indices(
        k,
        (0..).map(move |n| {
            if n < len {
                symbols[n] as usize
            } else {
                n % k
            }
        }),
    )
    .unwrap()
}

/// Breadth-first search for a k-self-shuffle of `x` to bounded depth.
pub fn search_self_shuffle(
    x: &InfiniteWord,
    k: usize,
    params: &SearchParams,
) -> Result<SearchOutcome, ShuffleError> {
    if k < 2 {
        return Err(ShuffleError::BadCopyCount(k));
    }
    if k == 2 {
        let mut oracle = ParikhOracle::new(x);
        oracle.ensure(params.depth);
        let (path, s) = search2_core(params, |i, j| oracle.is_vertex(&[i, j]));
        let stats = SearchStats {
            best_min_final: s.best_min_final,
            last_gain_level: s.last_gain_level,
            levels_computed: s.levels_computed,
            tuples: s.tuples,
        };
        return Ok(match path {
            CorePath::Found(symbols, t) => {
                let steering = steering_from_symbols(2, symbols);
                SearchOutcome::Witness {
                    witness: ShuffleWitness::self_shuffle(x.clone(), steering),
                    final_tuple: t.to_vec(),
                    stats,
                }
            }
            CorePath::Dead { level } => SearchOutcome::Dead {
                level,
                frontier_emptied: true,
                stats,
            },
            CorePath::Alive { truncated } => {
                classify_alive(params, truncated, stats)
            }
        });
    }
    search_general(x, k, params)
}

fn classify_alive(params: &SearchParams, truncated: bool, stats: SearchStats) -> SearchOutcome {
    // under a final-threshold policy, a long stagnation of the best
    // minimum coordinate is reported as starvation
    if !truncated
        && matches!(params.strategy, Strategy::FinalThreshold { .. })
        && stats.last_gain_level <= params.depth / 2
    {
        SearchOutcome::Dead {
            level: stats.last_gain_level,
            frontier_emptied: false,
            stats,
        }
    } else {
        SearchOutcome::Alive { truncated, stats }
    }
}

fn search_general(
    x: &InfiniteWord,
    k: usize,
    params: &SearchParams,
) -> Result<SearchOutcome, ShuffleError> {
    let mut oracle = ParikhOracle::new(x);
    oracle.ensure(params.depth);
    let mut levels: Vec<Vec<Vec<usize>>> = vec![vec![vec![0; k]]];
    let mut tuples = 1usize;
    let mut best_min_overall = 0;
    let mut last_gain_level = 0;
    for n in 1..=params.depth {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for t in &levels[n - 1] {
            for j in 0..k {
                let mut child = t.clone();
                child[j] += 1;
                if seen.contains(&child) {
                    continue;
                }
                let m = *child.iter().min().unwrap();
                if !params.strategy.keeps(n, m) {
                    continue;
                }
                if oracle.is_vertex(&child) {
                    seen.insert(child);
                }
            }
        }
        let mut level: Vec<Vec<usize>> = seen.into_iter().collect();
        level.sort();
        tuples += level.len();
        fn level_stats(
            lvl: &[Vec<usize>],
            computed: usize,
            gain: usize,
            tuples: usize,
        ) -> SearchStats {
            SearchStats {
                best_min_final: lvl
                    .iter()
                    .map(|t| *t.iter().min().unwrap())
                    .max()
                    .unwrap_or(0),
                last_gain_level: gain,
                levels_computed: computed,
                tuples,
            }
        }
        if level.is_empty() {
            return Ok(SearchOutcome::Dead {
                level: n,
                frontier_emptied: true,
                stats: level_stats(&levels[n - 1], n, last_gain_level, tuples),
            });
        }
        let best_here = level.iter().map(|t| *t.iter().min().unwrap()).max().unwrap();
        if best_here > best_min_overall {
            best_min_overall = best_here;
            last_gain_level = n;
        }
        levels.push(level);
        if tuples > params.max_tuples {
            let s = level_stats(levels.last().unwrap(), n, last_gain_level, tuples);
            return Ok(SearchOutcome::Alive {
                truncated: true,
                stats: s,
            });
        }
    }

    let last = levels.last().unwrap();
    let best = last
        .iter()
        .max_by_key(|t| (*t.iter().min().unwrap(), std::cmp::Reverse(t[0])))
        .cloned();
    let stats = SearchStats {
        best_min_final: last
            .iter()
            .map(|t| *t.iter().min().unwrap())
            .max()
            .unwrap_or(0),
        last_gain_level,
        levels_computed: params.depth,
        tuples,
    };
    let Some(best) = best else {
        return Ok(SearchOutcome::Dead {
            level: params.depth,
            frontier_emptied: true,
            stats,
        });
    };
    let best_min = *best.iter().min().unwrap();
    if !params.strategy.accepts_final(params.depth, best_min) {
        return Ok(classify_alive(params, false, stats));
    }

    // backtrack
    let mut symbols = vec![0u8; params.depth];
    let mut cur = best.clone();
    for n in (1..=params.depth).rev() {
        let prev: &Vec<Vec<usize>> = &levels[n - 1];
        let mut chosen = None;
        for j in 0..k {
            if cur[j] == 0 {
                continue;
            }
            let mut parent = cur.clone();
            parent[j] -= 1;
            if prev.binary_search(&parent).is_ok() {
                chosen = Some((j, parent));
                break;
            }
        }
        let (j, parent) = chosen.expect("stored tuple must have a stored parent");
        symbols[n - 1] = j as u8;
        cur = parent;
    }
    let steering = steering_from_symbols(k, symbols);
    Ok(SearchOutcome::Witness {
        witness: ShuffleWitness::self_shuffle(x.clone(), steering),
        final_tuple: best,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::shuffle::{shuffle_reachable_pairs, verify_witness};
    use crate::words::{Alphabet, InfiniteWord};

    fn bin(s: &str) -> crate::words::FiniteWord {
        Alphabet::binary().parse_word(s).unwrap()
    }

    #[test]
    fn origin_frontier() {
        let f = ShuffleFrontier::origin(2);
        assert_eq!(f.level, 0);
        assert_eq!(f.tuples, vec![vec![0, 0]]);
    }

    #[test]
    fn frontier_on_zero_ones_word() {
        // x = 01^w: (1,1) fails the vertex condition at level 2,
        // leaving only the axis tuples
        let x = InfiniteWord::periodic(&bin("1")).unwrap().prepend(&bin("0")).unwrap();
        let f0 = ShuffleFrontier::origin(2);
        let f1 = frontier_step(&x, &f0);
        assert_eq!(f1.tuples, vec![vec![0, 1], vec![1, 0]]);
        let f2 = frontier_step(&x, &f1);
        assert_eq!(f2.tuples, vec![vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn frontier_on_alternating_word() {
        // x = (01)^w: level-2 survivors by hand: (2,0), (0,2); (1,1) has
        // Parikh (1,0)+(1,0) != (1,1)
        let x = InfiniteWord::periodic(&bin("01")).unwrap();
        let f2 = frontier_step(&x, &frontier_step(&x, &ShuffleFrontier::origin(2)));
        assert_eq!(f2.tuples, vec![vec![0, 2], vec![2, 0]]);
        // but (2,2) at level 4 works: 0101 splits as 01 / 01
        let f3 = frontier_step(&x, &f2);
        let f4 = frontier_step(&x, &f3);
        assert!(f4.tuples.contains(&vec![2, 2]));
    }

    #[test]
    fn frontier_matches_exhaustive_shuffle_oracle() {
        // deterministic pseudo-random words of length <= 14
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for len in [6usize, 10, 14] {
            for _ in 0..40 {
                let bits = next();
                let letters: Vec<crate::words::Letter> = (0..len)
                    .map(|i| crate::words::Letter::new(((bits >> i) & 1) as usize))
                    .collect();
                let wfin =
                    crate::words::FiniteWord::new(Alphabet::binary(), letters.clone()).unwrap();
                let w = InfiniteWord::from_fn(Alphabet::binary(), move |n| {
                    letters[n.min(len - 1)]
                });
                let truth = shuffle_reachable_pairs(&wfin, len);
                let mut frontier = ShuffleFrontier::origin(2);
                for n in 1..=len {
                    frontier = frontier_step(&w, &frontier);
                    let got: Vec<Vec<usize>> = frontier.tuples.clone();
                    let mut want = Vec::new();
                    for i in 0..=n {
                        if truth[i][n - i] {
                            want.push(vec![i, n - i]);
                        }
                    }
                    want.sort();
                    assert_eq!(got, want, "word {wfin} level {n}");
                }
            }
        }
    }

    #[test]
    fn fibonacci_search_finds_witness() {
        let fib = named::fibonacci();
        let params = SearchParams::new(2000, 2);
        let out = search_self_shuffle(&fib, 2, &params).unwrap();
        let w = out.witness().expect("fibonacci should be self-shuffling");
        assert!(verify_witness(&fib, w, 2000).is_ok());
    }

    #[test]
    fn zero_ones_word_dies() {
        let x = InfiniteWord::periodic(&bin("1")).unwrap().prepend(&bin("0")).unwrap();
        let out = search_self_shuffle(&x, 2, &SearchParams::new(500, 2)).unwrap();
        match out {
            SearchOutcome::Dead {
                level,
                frontier_emptied,
                ..
            } => {
                assert!(frontier_emptied);
                // min coordinate 0 survives while 0 + slack >= n/5
                assert_eq!(level, 41);
            }
            other => panic!("expected death, got {other:?}"),
        }
    }

    #[test]
    fn witness_path_lies_in_unpruned_frontiers() {
        let fib = named::fibonacci();
        let out = search_self_shuffle(&fib, 2, &SearchParams::new(300, 2)).unwrap();
        let w = out.witness().unwrap();
        let mut frontier = ShuffleFrontier::origin(2);
        let mut tuple = vec![0usize, 0];
        for n in 0..300 {
            let j = w.steering.copy_at(n);
            tuple[j] += 1;
            frontier = frontier_step(&fib, &frontier);
            assert!(
                frontier.tuples.contains(&tuple),
                "level {} tuple {tuple:?}",
                n + 1
            );
        }
    }

    #[test]
    fn three_copy_search_on_periodic_word() {
        let x = InfiniteWord::periodic(&bin("01")).unwrap();
        let out = search_self_shuffle(&x, 3, &SearchParams::new(120, 3)).unwrap();
        let w = out.witness().expect("periodic words are k-self-shuffling");
        assert!(verify_witness(&x, w, 120).is_ok());
    }
}
