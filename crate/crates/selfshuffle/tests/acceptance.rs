//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`).

use std::time::Instant;

use selfshuffle::checkers::{
    abelian_borders, shuffling_delay_sturmian,
};
use selfshuffle::construct::{
    characteristic_blocks, characteristic_shuffle, pal_shuffle, sturmian_self_shuffle,
    three_shuffle_example, tm_shuffle, PalVariant, ROTATION_EDGES,
};
use selfshuffle::graph::{search_self_shuffle, SearchOutcome, SearchParams, Strategy};
use selfshuffle::named;
use selfshuffle::shuffle::{
    shuffle_membership, steering_to_word, transport_morphism, verify_witness, ShuffleWitness,
    SteeringWord,
};
use selfshuffle::stones::{
    graph_vs_embedding_check, in_k, path_extract, region_classify, tilde_map, EmbeddingParams,
    OrbitTable, Region, StoneOutcome,
};
use selfshuffle::sturmian::{
    characteristic_from_directive, k_sequence, mechanical, DirectiveSequence, SturmianSpec,
};
use selfshuffle::words::{Alphabet, InfiniteWord, Letter, Morphism};
use selfshuffle::Quad;

fn criterion<F: FnOnce() -> Result<(), String>>(id: u32, name: &str, f: F) {
    match f() {
        Ok(()) => println!("criterion {id:02} {name}: PASS"),
        Err(e) => {
            println!("criterion {id:02} {name}: FAIL ({e})");
            panic!("criterion {id:02} {name}: {e}");
        }
    }
}

fn golden_conjugate() -> Quad {
    // (sqrt(5) - 1) / 2, about 0.618
    Quad::new(-1, 1, 2, 5).unwrap()
}

fn fibonacci_slope() -> Quad {
    // (3 - sqrt(5)) / 2, about 0.382
    Quad::new(3, -1, 2, 5).unwrap()
}

fn sqrt2_slope() -> Quad {
    // sqrt(2) - 1, about 0.414
    Quad::new(-1, 1, 1, 2).unwrap()
}

fn search(w: &InfiniteWord, depth: usize) -> SearchOutcome {
    let params = SearchParams {
        depth,
        strategy: Strategy::steady_default(2),
        max_tuples: 60_000_000,
    };
    search_self_shuffle(w, 2, &params).unwrap()
}

/// Fibonacci block witness: copy 1 dishes `phi(x_i)`, copy 2 dishes `x_i`.
fn fibonacci_witness() -> ShuffleWitness {
    let fib = named::fibonacci();
    let word = fib.clone();
    let runs = (0..).flat_map(move |i| {
        let len = if word.letter(i).index() == 0 { 2 } else { 1 };
        [(0usize, len), (1usize, 1)]
    });
    let steering = SteeringWord::from_runs(2, runs).unwrap();
    ShuffleWitness::self_shuffle(fib, steering)
}

#[test]
fn criterion_01_thue_morse_shuffle() {
    criterion(1, "thue-morse self-shuffle to 2^15", || {
        let t0 = Instant::now();
        let w = tm_shuffle();
        let depth = 1 << 15;
        let rep = w.verify(depth);
        if !rep.is_ok() {
            return Err(format!("verification failed: {:?}", rep.outcome));
        }
        if rep.is_degenerate() {
            return Err("a copy was starved".into());
        }
        let dt = t0.elapsed();
        if dt.as_secs_f64() > 5.0 {
            return Err(format!("took {dt:?}, budget 5 s"));
        }
        Ok(())
    });
}

#[test]
fn criterion_02_steering_word_construction() {
    criterion(2, "steering word construction", || {
        let symbols: Vec<usize> = "1111231223123"
            .chars()
            .map(|c| c.to_digit(10).unwrap() as usize - 1)
            .collect();
        let n = symbols.len();
        let steering = SteeringWord::from_copy_indices(
            3,
            (0..).map(move |i| if i < n { symbols[i] } else { i % 3 }),
        )
        .unwrap();
        let out = steering_to_word(&steering, 13).map_err(|e| e.to_string())?;
        if out.word.to_string() != "abcdaaabcbadc" {
            return Err(format!("word was {}", out.word));
        }
        if out.ell != vec![0, 1, 2, 3, 0, 0, 4, 1, 2, 1, 5, 3, 2] {
            return Err(format!("ell sequence was {:?}", out.ell));
        }
        Ok(())
    });
}

#[test]
fn criterion_03_search_positives() {
    criterion(3, "graph search positives at depth 10^4", || {
        for (name, w) in [
            ("fibonacci", named::fibonacci()),
            ("period-doubling", named::period_doubling()),
        ] {
            let t0 = Instant::now();
            let out = search(&w, 10_000);
            let witness = out
                .witness()
                .ok_or_else(|| format!("{name}: no witness found"))?;
            let rep = verify_witness(&w, witness, 10_000);
            if !rep.is_ok() {
                return Err(format!("{name}: witness failed to re-verify"));
            }
            let dt = t0.elapsed();
            if dt.as_secs_f64() > 30.0 {
                return Err(format!("{name}: took {dt:?}, budget 30 s"));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_04_search_negatives() {
    criterion(4, "graph search negatives", || {
        let alpha = Alphabet::binary();
        let a = golden_conjugate();
        let zero_ones = InfiniteWord::periodic(&alpha.parse_word("1").unwrap())
            .unwrap()
            .prepend(&alpha.parse_word("0").unwrap())
            .unwrap();
        let zero_fib = named::fibonacci()
            .prepend(&alpha.parse_word("0").unwrap())
            .unwrap();
        let zero_c = mechanical(&SturmianSpec::new(a, Quad::zero()).unwrap()).unwrap();
        let one_c = mechanical(&SturmianSpec::new(a, Quad::one()).unwrap()).unwrap();
        // regression constants: levels at which the pruned frontier died
        let cases: [(&str, InfiniteWord, Option<usize>); 6] = [
            ("01^w", zero_ones, Some(41)),
            ("0-fibonacci", zero_fib, None),
            ("paper-folding", named::paper_folding(), None),
            ("0C", zero_c, Some(89)),
            ("1C", one_c, Some(55)),
            ("tm-shift-1", named::thue_morse().drop_prefix(1), None),
        ];
        for (name, w, expect_level) in cases {
            let out = search(&w, 10_000);
            if out.witness().is_some() {
                return Err(format!("{name}: unexpectedly produced a witness"));
            }
            match (expect_level, &out) {
                (Some(level), SearchOutcome::Dead { level: got, .. }) => {
                    if *got != level {
                        return Err(format!("{name}: died at {got}, expected {level}"));
                    }
                }
                (None, SearchOutcome::Dead { .. }) => {}
                (_, other) => {
                    return Err(format!("{name}: expected death, got {other:?}"));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_05_rotation_machine() {
    criterion(5, "sturmian rotation machine", || {
        let a = golden_conjugate();
        let rhos = [
            a,
            Quad::from_ratio(1, 3).unwrap(),
            Quad::new(-1, 1, 4, 5).unwrap(), // (sqrt(5)-1)/4, already in [0,1)
        ];
        for rho in rhos {
            let out = sturmian_self_shuffle(&a, &rho, 10_000).map_err(|e| e.to_string())?;
            let rep = out.witness.verify(10_000);
            if !rep.is_ok() {
                return Err(format!("rho={rho}: witness failed: {:?}", rep.outcome));
            }
            for t in &out.transitions {
                if !ROTATION_EDGES.iter().any(|(x, y)| *x == t.from && *y == t.to) {
                    return Err(format!("rho={rho}: transition {} -> {}", t.from, t.to));
                }
            }
        }
        if sturmian_self_shuffle(&a, &Quad::zero(), 100).is_ok() {
            return Err("rho = 0 was not rejected".into());
        }
        Ok(())
    });
}

#[test]
fn criterion_06_characteristic_shuffle() {
    criterion(6, "characteristic block shuffle", || {
        let dirs = [
            ("golden", DirectiveSequence::parse("0,1").unwrap()),
            (
                "periodic-8",
                DirectiveSequence::parse("0,0,1,0,1,1,0,1").unwrap(),
            ),
            (
                "eventually-periodic",
                DirectiveSequence::parse("0,1,1,0,[1,0,0,1]").unwrap(),
            ),
        ];
        for (name, dir) in dirs {
            let c = characteristic_from_directive(&dir);
            let ks = k_sequence(&c, 2001, 200_000).map_err(|e| format!("{name}: {e}"))?;
            let blocks =
                characteristic_blocks(&ks, 1000).map_err(|e| format!("{name}: {e}"))?;
            if blocks.len() != 1000 {
                return Err(format!("{name}: only {} blocks", blocks.len()));
            }
            let (witness, _) =
                characteristic_shuffle(&c, 1000, 200_000).map_err(|e| format!("{name}: {e}"))?;
            let rep = witness.verify(1000);
            if !rep.is_ok() {
                return Err(format!("{name}: witness failed: {:?}", rep.outcome));
            }
            // no two consecutive 1s of the word share a copy
            let prefix = c.prefix(1000);
            let mut last_one: Option<usize> = None;
            for (pos, l) in prefix.letters().iter().enumerate() {
                if l.index() == 1 {
                    if let Some(prev) = last_one {
                        let a = witness.steering.copy_at(prev);
                        let b = witness.steering.copy_at(pos);
                        if a == b {
                            return Err(format!(
                                "{name}: consecutive 1s at {prev} and {pos} share copy {a}"
                            ));
                        }
                    }
                    last_one = Some(pos);
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_07_palindromic_shuffles() {
    criterion(7, "palindromic-closure shuffles of 01C and 10C", || {
        let dir = DirectiveSequence::parse("0,0,1,0,1,1,0,1").unwrap();
        let printed_01: Vec<(usize, &str)> = vec![
            (0, "01"),
            (1, "0"),
            (0, "0"),
            (1, "100"),
            (0, "0100"),
            (1, "1000100"),
            (1, "1000100"),
            (0, "010010001001000100"),
        ];
        let printed_10: Vec<(usize, &str)> = vec![
            (0, "1000"),
            (1, "100"),
            (1, "0100"),
            (0, "1000100"),
            (0, "1000100"),
            (1, "010010001001000100"),
        ];
        let bin = |s: &str| Alphabet::binary().parse_word(s).unwrap();
        for (variant, printed) in [
            (PalVariant::ZeroOne, printed_01),
            (PalVariant::OneZero, printed_10),
        ] {
            let out = pal_shuffle(&dir, variant, 1000).map_err(|e| e.to_string())?;
            for (idx, (copy, text)) in printed.iter().enumerate() {
                let chunk = &out.chunks[idx];
                if chunk.copy != *copy || chunk.word != bin(text) {
                    return Err(format!(
                        "{variant:?} chunk {idx}: got copy {} word {}, want copy {copy} word {text}",
                        chunk.copy, chunk.word
                    ));
                }
            }
            let rep = out.witness.verify(1000);
            if !rep.is_ok() {
                return Err(format!("{variant:?}: witness failed: {:?}", rep.outcome));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_08_delay_characterizations() {
    criterion(8, "delay: borders, lex and machine agree on 50 pairs", || {
        let mut pairs: Vec<(Quad, Quad)> = Vec::new();
        for alpha in [fibonacci_slope(), sqrt2_slope()] {
            for j in 1..=20 {
                pairs.push((alpha, Quad::from_ratio(j, 21).unwrap()));
            }
            // a few quadratic intercepts from the slope's own orbit
            let mut p = selfshuffle::Point::new(&alpha).unwrap();
            for _ in 0..5 {
                pairs.push((alpha, *p.value()));
                p = p.rotate(&alpha).unwrap();
            }
        }
        assert_eq!(pairs.len(), 50);
        for (alpha, rho) in pairs {
            let rep = shuffling_delay_sturmian(&alpha, &rho, 4096)
                .map_err(|e| format!("alpha={alpha} rho={rho}: {e}"))?;
            let machine = sturmian_self_shuffle(&alpha, &rho, 4 * rep.delay + 64)
                .map_err(|e| format!("alpha={alpha} rho={rho}: machine: {e}"))?;
            let run = machine
                .first_run_len(4 * rep.delay + 64)
                .ok_or_else(|| format!("alpha={alpha} rho={rho}: no copy switch"))?;
            if run != rep.delay {
                return Err(format!(
                    "alpha={alpha} rho={rho}: machine delay {run} vs characterization {}",
                    rep.delay
                ));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_09_embedding_equivalence() {
    criterion(9, "graph vs embedding equivalence to 500", || {
        let pairs = [
            (fibonacci_slope(), fibonacci_slope()),
            (fibonacci_slope(), Quad::from_ratio(1, 3).unwrap()),
            (fibonacci_slope(), Quad::zero()),
            (sqrt2_slope(), sqrt2_slope()),
            (sqrt2_slope(), Quad::from_ratio(1, 4).unwrap()),
        ];
        for (alpha, rho) in pairs {
            let params = EmbeddingParams::new(alpha, rho).map_err(|e| e.to_string())?;
            let rep = graph_vs_embedding_check(&params, 500).map_err(|e| e.to_string())?;
            if let Some((i, j)) = rep.counterexample {
                return Err(format!("alpha={alpha} rho={rho}: mismatch at ({i}, {j})"));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_10_stepping_stone_regime() {
    criterion(10, "dead/deterministic/free partition and domain exchange", || {
        // (1-rho)/2 = 0.275 < alpha = 0.382 < min(rho, 1-rho) = 0.45
        let alpha = fibonacci_slope();
        let rho = Quad::from_ratio(9, 20).unwrap();
        let params = EmbeddingParams::new(alpha, rho).map_err(|e| e.to_string())?;
        let orbit = OrbitTable::new(&alpha, 99).map_err(|e| e.to_string())?;
        let mut free_points = Vec::new();
        let mut counts = [0usize; 4];
        for i in 0..100 {
            for j in 0..100 {
                let (x, y) = (orbit.point(i), orbit.point(j));
                let region = region_classify(x, y, &params).map_err(|e| e.to_string())?;
                counts[match region {
                    Region::Dead => 0,
                    Region::T1 => 1,
                    Region::T2 => 2,
                    Region::Free => 3,
                }] += 1;
                let k_here = in_k(x, y, &rho).map_err(|e| e.to_string())?;
                if !k_here && region != Region::Dead {
                    return Err(format!("({i},{j}): outside K but not dead"));
                }
                if region == Region::Free {
                    free_points.push((*x, *y));
                }
            }
        }
        if counts.contains(&0) {
            return Err(format!("some region is empty: {counts:?}"));
        }
        let sample: Vec<_> = free_points.into_iter().take(1000).collect();
        if sample.len() < 1000 {
            return Err(format!("only {} free points sampled", sample.len()));
        }
        for (x, y) in &sample {
            for branch in [0, 1] {
                let res = tilde_map((*x, *y), branch, &params)
                    .map_err(|e| format!("domain exchange died: {e}"))?;
                if res.steps.iter().any(|s| s.landed == Region::Dead) {
                    return Err("transcript touched the dead set".into());
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_11_three_copy_example() {
    criterion(11, "three-copy example word", || {
        let x = named::three_shuffle_word();
        let w = three_shuffle_example();
        let rep = w.verify(10_000);
        if !rep.is_ok() {
            return Err(format!("k=3 witness failed: {:?}", rep.outcome));
        }
        let out = search(&x, 10_000);
        if !out.is_dead() {
            return Err(format!("k=2 search is not dead: {out:?}"));
        }
        // j = 1 gives the two-letter prefix 01, which has no border at all;
        // the length-2 border appears from j = 2 on
        for j in 2..=6u32 {
            let len = 4usize.pow(j) - 2;
            let prefix = x.prefix(len);
            let report = abelian_borders(&prefix);
            let longest = report.lengths.last().copied().unwrap_or(0);
            if longest != 2 {
                return Err(format!(
                    "prefix 4^{j}-2: longest admissible border {longest}, want 2"
                ));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_12_morphic_transport() {
    criterion(12, "morphic invariance transport", || {
        let base = fibonacci_witness();
        if !base.verify(4000).is_ok() {
            return Err("base fibonacci witness failed".into());
        }
        // deterministic pseudo-random non-erasing binary morphisms
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let alpha = Alphabet::binary();
        for case in 0..20 {
            let mut images = Vec::new();
            for _ in 0..2 {
                let r = next();
                let len = 1 + (r % 4) as usize;
                let letters: Vec<Letter> = (0..len)
                    .map(|b| Letter::new(((r >> (8 + b)) & 1) as usize))
                    .collect();
                images.push(
                    selfshuffle::words::FiniteWord::new(alpha.clone(), letters).unwrap(),
                );
            }
            let tau = Morphism::new(alpha.clone(), alpha.clone(), images)
                .map_err(|e| e.to_string())?;
            let moved = transport_morphism(&base, &tau).map_err(|e| e.to_string())?;
            let rep = moved.verify(2000);
            if !rep.is_ok() {
                return Err(format!("case {case}: transported witness failed"));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_13_full_complexity_blocks() {
    criterion(13, "full-complexity block shuffles", || {
        // block lengths double from i = 1 on (|X_0| = |X_1| = 2, so the
        // membership claim starts there)
        for i in 1..=8u64 {
            let xi = named::full_complexity_block(i);
            let xi1 = named::full_complexity_block(i + 1);
            if !shuffle_membership(&xi1, &xi, &xi) {
                return Err(format!("X_{} not in sh(X_{i}, X_{i})", i + 1));
            }
        }
        Ok(())
    });
}

/// Not an acceptance criterion by itself: the witness-to-path equivalence
/// that criteria 4 and 9 lean on, checked both ways at desk scale.
#[test]
fn stones_paths_and_witnesses_translate() {
    let alpha = fibonacci_slope();
    let rho = Quad::from_ratio(1, 3).unwrap();
    let spec = SturmianSpec::new(alpha, rho).unwrap();
    let z = mechanical(&spec).unwrap();
    let params = EmbeddingParams::new(alpha, rho).unwrap();

    // witness -> stepping stones
    let out = search(&z, 500);
    let witness = out.witness().expect("z(alpha, 1/3) is self-shuffling");
    let orbit = OrbitTable::new(&alpha, 500).unwrap();
    let (mut i, mut j) = (0usize, 0usize);
    for n in 0..500 {
        if witness.steering.copy_at(n) == 0 {
            i += 1;
        } else {
            j += 1;
        }
        assert!(
            in_k(orbit.point(i), orbit.point(j), &rho).unwrap(),
            "witness path left K at step {n}"
        );
    }

    // stepping stones -> witness
    let StoneOutcome::Path(path) = path_extract(&params, 500).unwrap() else {
        panic!("expected a stepping stone path");
    };
    let steering = SteeringWord::from_copy_indices(
        2,
        (0..).map(move |n| {
            if n + 1 < path.pairs.len() {
                usize::from(path.pairs[n + 1].0 == path.pairs[n].0)
            } else {
                n % 2
            }
        }),
    )
    .unwrap();
    let w = ShuffleWitness::self_shuffle(z.clone(), steering);
    assert!(w.verify(500).is_ok());
}
