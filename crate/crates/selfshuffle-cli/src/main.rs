//! Command-line interface for the self-shuffling words toolkit.

mod wordspec;
mod witness_io;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use selfshuffle::checkers;
use selfshuffle::construct::{
    characteristic_shuffle, pal_shuffle, sturmian_shuffle, three_shuffle_example, tm_shuffle,
    PalVariant,
};
use selfshuffle::graph::{search_self_shuffle, SearchOutcome, SearchParams, Strategy};
use selfshuffle::shuffle::ShuffleWitness;
use selfshuffle::stones;
use selfshuffle::sturmian::DirectiveSequence;
use selfshuffle::words::Letter;
use selfshuffle::Quad;
use serde::Serialize;

use wordspec::{SpecError, WordOpts, WordSpec};
use witness_io::WitnessFile;

#[derive(Parser)]
#[command(
    name = "selfshuffle",
    about = "Generate, search, construct and verify self-shuffles of infinite words",
    version
)]
struct Cli {
    /// Output format for the primary result.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for randomized words (`random` spec).
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print a prefix of a word.
    Word(WordCmd),
    /// Breadth-first search of the shuffle graph for a k-self-shuffle.
    Search(SearchCmd),
    /// Emit an explicit shuffle construction.
    Shuffle(ShuffleCmd),
    /// Necessary-condition checkers.
    Check(CheckCmd),
    /// Stepping-stone model: paths, region classification, equivalence.
    Stones(StonesCmd),
    /// Re-verify a witness file.
    Verify(VerifyCmd),
}

#[derive(Args)]
struct WordCmd {
    /// Word to generate: a named word (thue-morse, fibonacci,
    /// period-doubling, paper-folding, full-complexity,
    /// three-shuffle-example), `sturmian`, `directive`, `fixed-point`,
    /// `periodic:<pattern>`, or `random`.
    spec: String,
    #[command(flatten)]
    opts: WordOpts,
    /// Number of letters to print.
    #[arg(long)]
    length: usize,
}

#[derive(Args)]
struct SearchCmd {
    /// Word to search (same specs as the `word` command).
    #[arg(long)]
    word: String,
    #[command(flatten)]
    opts: WordOpts,
    /// Number of copies to shuffle.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Levels of the shuffle graph to explore.
    #[arg(long)]
    depth: usize,
    /// Divergence policy.
    #[arg(long, value_enum, default_value_t = StrategyArg::Steady)]
    strategy: StrategyArg,
    /// Stored-tuple budget before giving up.
    #[arg(long, default_value_t = 10_000_000)]
    max_tuples: usize,
    /// Write the witness (if found) to this JSON file.
    #[arg(long)]
    emit_witness: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    /// Prune tuples whose minimum coordinate lags n/(2k+1) - 8.
    Steady,
    /// Keep everything; accept only if the final minimum reaches depth/(2k).
    Final,
}

impl StrategyArg {
    fn to_strategy(self, k: usize) -> Strategy {
        match self {
            StrategyArg::Steady => Strategy::steady_default(k),
            StrategyArg::Final => Strategy::FinalThreshold {
                num: 1,
                den: 2 * k as u32,
            },
        }
    }
}

#[derive(Args)]
struct ShuffleCmd {
    #[command(subcommand)]
    kind: ShuffleKind,
}

#[derive(Subcommand)]
enum ShuffleKind {
    /// The Thue-Morse self-shuffle.
    Tm(DepthArgs),
    /// Rotation-machine shuffle of Sturmian words.
    Sturmian(SturmianShuffleArgs),
    /// Block self-shuffle of a characteristic word from its run exponents.
    Characteristic(CharacteristicArgs),
    /// Palindromic-closure shuffles of 01C and 10C.
    Pal(PalArgs),
    /// The three-copy shuffle of the example word.
    Three(DepthArgs),
}

#[derive(Args)]
struct DepthArgs {
    #[arg(long, default_value_t = 1000)]
    depth: usize,
    #[arg(long)]
    emit_witness: Option<String>,
}

#[derive(Args)]
struct SturmianShuffleArgs {
    /// Slope (irrational, exact literal).
    #[arg(long)]
    alpha: String,
    /// Intercept for a self-shuffle.
    #[arg(long)]
    rho: Option<String>,
    /// Intercepts of the small, target and large word for a general
    /// shuffle M in sh(S, L).
    #[arg(long)]
    rho_s: Option<String>,
    #[arg(long)]
    rho_m: Option<String>,
    #[arg(long)]
    rho_l: Option<String>,
    #[arg(long, default_value_t = 1000)]
    depth: usize,
    /// Print one line per case transition.
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    emit_witness: Option<String>,
}

#[derive(Args)]
struct CharacteristicArgs {
    /// Slope of the characteristic word (exact literal), or use --dir.
    #[arg(long)]
    alpha: Option<String>,
    /// Directive sequence for the characteristic word.
    #[arg(long)]
    dir: Option<String>,
    #[arg(long, default_value_t = 1000)]
    depth: usize,
    /// Scan horizon for extracting the run exponents.
    #[arg(long, default_value_t = 100_000)]
    horizon: usize,
    #[arg(long)]
    emit_witness: Option<String>,
}

#[derive(Args)]
struct PalArgs {
    /// Directive sequence (must begin in 0).
    #[arg(long)]
    dir: String,
    /// Which word to shuffle: 01C or 10C.
    #[arg(long, value_enum, default_value_t = PalVariantArg::ZeroOne)]
    variant: PalVariantArg,
    #[arg(long, default_value_t = 1000)]
    depth: usize,
    #[arg(long)]
    emit_witness: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PalVariantArg {
    #[value(name = "01")]
    ZeroOne,
    #[value(name = "10")]
    OneZero,
}

#[derive(Args)]
struct CheckCmd {
    #[command(subcommand)]
    kind: CheckKind,
}

#[derive(Subcommand)]
enum CheckKind {
    /// Abelian borders: longest border-free prefix within the horizon.
    Borders(BordersArgs),
    /// Lyndon scan: compare the word against its shifts.
    Lyndon(LyndonArgs),
    /// Shuffling delay of a Sturmian word (three characterizations).
    Delay(DelayArgs),
}

#[derive(Args)]
struct BordersArgs {
    /// Word to scan (same specs as the `word` command).
    #[arg(long)]
    word: String,
    #[command(flatten)]
    opts: WordOpts,
    #[arg(long, default_value_t = 4096)]
    horizon: usize,
}

#[derive(Args)]
struct LyndonArgs {
    /// Word to scan (same specs as the `word` command).
    #[arg(long)]
    word: String,
    #[command(flatten)]
    opts: WordOpts,
    /// Letter order, smallest first: "01" or "10".
    #[arg(long, default_value = "01")]
    order: String,
    #[arg(long, default_value_t = 1000)]
    depth: usize,
}

#[derive(Args)]
struct DelayArgs {
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    rho: String,
    #[arg(long, default_value_t = 4096)]
    horizon: usize,
}

#[derive(Args)]
struct StonesCmd {
    #[command(subcommand)]
    kind: StonesKind,
}

#[derive(Subcommand)]
enum StonesKind {
    /// Extract a stepping-stone path (or report death).
    Path(StonesPathArgs),
    /// Classify orbit grid points into dead/deterministic/free.
    Classify(StonesClassifyArgs),
    /// Check graph-vertex vs embedded-membership equivalence.
    Check(StonesCheckArgs),
}

#[derive(Args)]
struct StonesPathArgs {
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    rho: String,
    #[arg(long, default_value_t = 500)]
    n: usize,
    /// Write an SVG picture of the stepping stones and the path.
    #[arg(long)]
    svg: Option<String>,
    /// Write the path as CSV.
    #[arg(long)]
    csv: Option<String>,
}

#[derive(Args)]
struct StonesClassifyArgs {
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    rho: String,
    /// Orbit points {i alpha} for i <= n are paired and classified.
    #[arg(long, default_value_t = 60)]
    n: usize,
}

#[derive(Args)]
struct StonesCheckArgs {
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    rho: String,
    #[arg(long, default_value_t = 500)]
    n: usize,
}

#[derive(Args)]
struct VerifyCmd {
    /// Witness file produced by --emit-witness.
    #[arg(long)]
    witness: String,
    /// Override the verification depth (defaults to the file's depth).
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Serialize)]
struct QuadJson {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
    text: String,
    value_approx: f64,
    approx: bool,
}

impl QuadJson {
    fn of(q: &Quad) -> Self {
        let (a, b, c, d) = q.coeffs();
        QuadJson {
            a,
            b,
            c,
            d,
            text: q.to_string(),
            value_approx: q.to_f64(),
            approx: true,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), SpecError> {
    match cli.command {
        Command::Word(mut cmd) => {
            cmd.opts.seed = cmd.opts.seed.or(cli.seed);
            run_word(cli.format, cmd)
        }
        Command::Search(mut cmd) => {
            cmd.opts.seed = cmd.opts.seed.or(cli.seed);
            run_search(cli.format, cmd)
        }
        Command::Shuffle(cmd) => run_shuffle(cli.format, cmd),
        Command::Check(mut cmd) => {
            match &mut cmd.kind {
                CheckKind::Borders(a) => a.opts.seed = a.opts.seed.or(cli.seed),
                CheckKind::Lyndon(a) => a.opts.seed = a.opts.seed.or(cli.seed),
                CheckKind::Delay(_) => {}
            }
            run_check(cli.format, cmd)
        }
        Command::Stones(cmd) => run_stones(cli.format, cmd),
        Command::Verify(cmd) => run_verify(cli.format, cmd),
    }
}

fn emit_json<T: Serialize>(value: &T) -> Result<(), SpecError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| SpecError::new(format!("serializing output: {e}")))?;
    println!("{text}");
    Ok(())
}

fn run_word(format: Format, cmd: WordCmd) -> Result<(), SpecError> {
    let spec = WordSpec::new(cmd.spec, cmd.opts);
    let w = spec.resolve()?;
    let prefix = w.prefix(cmd.length);
    match format {
        Format::Text => println!("{prefix}"),
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                schema: u32,
                word: &'a WordSpec,
                length: usize,
                letters: String,
            }
            emit_json(&Out {
                schema: 1,
                word: &spec,
                length: cmd.length,
                letters: prefix.to_string(),
            })?;
        }
    }
    Ok(())
}

fn write_witness_file(
    path: &str,
    witness: &ShuffleWitness,
    word: Option<WordSpec>,
    target: Option<(WordSpec, Vec<WordSpec>)>,
    depth: usize,
) -> Result<(), SpecError> {
    let file = match (word, target) {
        (Some(w), _) => WitnessFile::from_self_shuffle(witness, w, depth),
        (None, Some((t, s))) => WitnessFile::from_shuffle(witness, t, s, depth),
        _ => return Err(SpecError::new("witness file needs a word description")),
    };
    let text = serde_json::to_string_pretty(&file)
        .map_err(|e| SpecError::new(format!("serializing witness: {e}")))?;
    std::fs::write(path, text).map_err(|e| SpecError::new(format!("writing {path}: {e}")))?;
    Ok(())
}

fn run_search(format: Format, cmd: SearchCmd) -> Result<(), SpecError> {
    let spec = WordSpec::new(cmd.word.clone(), cmd.opts.clone());
    let w = spec.resolve()?;
    let params = SearchParams {
        depth: cmd.depth,
        strategy: cmd.strategy.to_strategy(cmd.k),
        max_tuples: cmd.max_tuples,
    };
    let out = search_self_shuffle(&w, cmd.k, &params)
        .map_err(|e| SpecError::new(e.to_string()))?;

    #[derive(Serialize)]
    struct Out {
        schema: u32,
        outcome: &'static str,
        depth: usize,
        k: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        final_tuple: Option<Vec<usize>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        death_level: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        truncated: Option<bool>,
        best_min_final: usize,
        last_gain_level: usize,
        tuples: usize,
    }

    let (outcome_name, final_tuple, death_level, truncated, stats) = match &out {
        SearchOutcome::Witness {
            final_tuple, stats, ..
        } => ("witness", Some(final_tuple.clone()), None, None, stats),
        SearchOutcome::Dead { level, stats, .. } => ("dead", None, Some(*level), None, stats),
        SearchOutcome::Alive { truncated, stats } => {
            ("alive", None, None, Some(*truncated), stats)
        }
    };

    if let (Some(path), SearchOutcome::Witness { witness, .. }) = (&cmd.emit_witness, &out) {
        write_witness_file(path, witness, Some(spec.clone()), None, cmd.depth)?;
    }

    match format {
        Format::Text => match &out {
            SearchOutcome::Witness { final_tuple, .. } => {
                println!(
                    "witness to depth {} with final consumption {:?}",
                    cmd.depth, final_tuple
                );
            }
            SearchOutcome::Dead { level, .. } => println!("dead at level {level}"),
            SearchOutcome::Alive { truncated, stats } => println!(
                "alive (inconclusive); truncated={truncated} best_min={}",
                stats.best_min_final
            ),
        },
        Format::Json => emit_json(&Out {
            schema: 1,
            outcome: outcome_name,
            depth: cmd.depth,
            k: cmd.k,
            final_tuple,
            death_level,
            truncated,
            best_min_final: stats.best_min_final,
            last_gain_level: stats.last_gain_level,
            tuples: stats.tuples,
        })?,
    }
    Ok(())
}

fn run_shuffle(format: Format, cmd: ShuffleCmd) -> Result<(), SpecError> {
    #[derive(Serialize)]
    struct Out {
        schema: u32,
        construction: &'static str,
        depth: usize,
        verified: bool,
        consumed: Vec<usize>,
        steering_prefix: String,
    }
    let print = |format: Format,
                 construction: &'static str,
                 witness: &ShuffleWitness,
                 depth: usize|
     -> Result<bool, SpecError> {
        let rep = witness.verify(depth);
        match format {
            Format::Text => println!(
                "{construction}: verified={} to depth {depth}, consumed {:?}",
                rep.is_ok(),
                rep.consumed
            ),
            Format::Json => emit_json(&Out {
                schema: 1,
                construction,
                depth,
                verified: rep.is_ok(),
                consumed: rep.consumed.clone(),
                steering_prefix: witness.steering.digits_prefix(depth.min(200)),
            })?,
        }
        Ok(rep.is_ok())
    };

    match cmd.kind {
        ShuffleKind::Tm(args) => {
            let w = tm_shuffle();
            print(format, "thue-morse", &w, args.depth)?;
            if let Some(path) = &args.emit_witness {
                write_witness_file(path, &w, Some(WordSpec::named("thue-morse")), None, args.depth)?;
            }
        }
        ShuffleKind::Three(args) => {
            let w = three_shuffle_example();
            print(format, "three-copy", &w, args.depth)?;
            if let Some(path) = &args.emit_witness {
                write_witness_file(
                    path,
                    &w,
                    Some(WordSpec::named("three-shuffle-example")),
                    None,
                    args.depth,
                )?;
            }
        }
        ShuffleKind::Sturmian(args) => {
            let alpha: Quad = args
                .alpha
                .parse()
                .map_err(|e| SpecError::new(format!("--alpha: {e}")))?;
            let (rs, rm, rl) = match (&args.rho, &args.rho_s, &args.rho_m, &args.rho_l) {
                (Some(r), None, None, None) => {
                    let v: Quad = r.parse().map_err(|e| SpecError::new(format!("--rho: {e}")))?;
                    (v, v, v)
                }
                (None, Some(s), Some(m), Some(l)) => (
                    s.parse().map_err(|e| SpecError::new(format!("--rho-s: {e}")))?,
                    m.parse().map_err(|e| SpecError::new(format!("--rho-m: {e}")))?,
                    l.parse().map_err(|e| SpecError::new(format!("--rho-l: {e}")))?,
                ),
                _ => {
                    return Err(SpecError::new(
                        "give either --rho (self-shuffle) or all of --rho-s/--rho-m/--rho-l",
                    ))
                }
            };
            let out = sturmian_shuffle(&alpha, &rs, &rm, &rl, args.depth)
                .map_err(|e| SpecError::new(e.to_string()))?;
            if args.trace {
                for t in &out.transitions {
                    println!(
                        "case {} -> {}: dished={} consumed_s_copy={} consumed_l_copy={} consumed_m={}",
                        t.from,
                        t.to,
                        t.dished,
                        t.consumed[0],
                        t.consumed[1],
                        t.consumed[0] + t.consumed[1]
                    );
                }
            }
            print(format, "sturmian-rotation", &out.witness, args.depth)?;
            if let Some(path) = &args.emit_witness {
                let spec_of = |rho: &Quad| WordSpec::sturmian(&alpha, rho);
                if rs == rm && rm == rl {
                    write_witness_file(path, &out.witness, Some(spec_of(&rs)), None, args.depth)?;
                } else {
                    write_witness_file(
                        path,
                        &out.witness,
                        None,
                        Some((spec_of(&rm), vec![spec_of(&rs), spec_of(&rl)])),
                        args.depth,
                    )?;
                }
            }
        }
        ShuffleKind::Characteristic(args) => {
            let word_args = match (&args.alpha, &args.dir) {
                (Some(a), None) => {
                    let alpha: Quad = a
                        .parse()
                        .map_err(|e| SpecError::new(format!("--alpha: {e}")))?;
                    WordSpec::sturmian(&alpha, &alpha)
                }
                (None, Some(d)) => WordSpec::new(
                    "directive",
                    WordOpts {
                        dir: Some(d.clone()),
                        ..WordOpts::default()
                    },
                ),
                _ => return Err(SpecError::new("give exactly one of --alpha or --dir")),
            };
            let word = word_args.resolve()?;
            let (witness, _blocks) = characteristic_shuffle(&word, args.depth, args.horizon)
                .map_err(|e| SpecError::new(e.to_string()))?;
            print(format, "characteristic", &witness, args.depth)?;
            if let Some(path) = &args.emit_witness {
                write_witness_file(path, &witness, Some(word_args), None, args.depth)?;
            }
        }
        ShuffleKind::Pal(args) => {
            let dir = DirectiveSequence::parse(&args.dir)
                .map_err(|e| SpecError::new(e.to_string()))?;
            let variant = match args.variant {
                PalVariantArg::ZeroOne => PalVariant::ZeroOne,
                PalVariantArg::OneZero => PalVariant::OneZero,
            };
            let out = pal_shuffle(&dir, variant, args.depth)
                .map_err(|e| SpecError::new(e.to_string()))?;
            print(format, "palindromic", &out.witness, args.depth)?;
            if let Some(path) = &args.emit_witness {
                let w = WordSpec::new(
                    "directive",
                    WordOpts {
                        dir: Some(args.dir.clone()),
                        prepend: Some(
                            match variant {
                                PalVariant::ZeroOne => "01",
                                PalVariant::OneZero => "10",
                            }
                            .to_string(),
                        ),
                        ..WordOpts::default()
                    },
                );
                write_witness_file(path, &out.witness, Some(w), None, args.depth)?;
            }
        }
    }
    Ok(())
}

fn run_check(format: Format, cmd: CheckCmd) -> Result<(), SpecError> {
    match cmd.kind {
        CheckKind::Borders(args) => {
            let w = WordSpec::new(args.word, args.opts).resolve()?;
            let rep = checkers::longest_ab_borderfree_prefix(&w, args.horizon);
            let ordinary = checkers::longest_borderfree_prefix(&w, args.horizon);
            match format {
                Format::Text => println!(
                    "longest Abelian border-free prefix: {} (saturated={}), \
                     longest border-free prefix: {ordinary}, horizon {}",
                    rep.length, rep.saturated, rep.horizon
                ),
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out {
                        schema: u32,
                        ab_borderfree_len: usize,
                        saturated: bool,
                        borderfree_len: usize,
                        horizon: usize,
                    }
                    emit_json(&Out {
                        schema: 1,
                        ab_borderfree_len: rep.length,
                        saturated: rep.saturated,
                        borderfree_len: ordinary,
                        horizon: rep.horizon,
                    })?;
                }
            }
        }
        CheckKind::Lyndon(args) => {
            let w = WordSpec::new(args.word, args.opts).resolve()?;
            let order: Vec<Letter> = witness_io::letters_of(&args.order);
            if order.len() != w.alphabet().size() {
                return Err(SpecError::new("order must list every letter once"));
            }
            let rep = checkers::lyndon_status(&w, &order, args.depth);
            match format {
                Format::Text => match &rep.violation {
                    None => println!("consistent with Lyndon to depth {}", rep.depth),
                    Some((shift, ev)) => println!("not Lyndon: shift {shift} gives {ev:?}"),
                },
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out {
                        schema: u32,
                        consistent_to_depth: bool,
                        depth: usize,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        violating_shift: Option<usize>,
                    }
                    emit_json(&Out {
                        schema: 1,
                        consistent_to_depth: rep.consistent_to_depth,
                        depth: rep.depth,
                        violating_shift: rep.violation.as_ref().map(|(s, _)| *s),
                    })?;
                }
            }
        }
        CheckKind::Delay(args) => {
            let alpha: Quad = args
                .alpha
                .parse()
                .map_err(|e| SpecError::new(format!("--alpha: {e}")))?;
            let rho: Quad = args
                .rho
                .parse()
                .map_err(|e| SpecError::new(format!("--rho: {e}")))?;
            let rep = checkers::shuffling_delay_sturmian(&alpha, &rho, args.horizon)
                .map_err(|e| SpecError::new(e.to_string()))?;
            match format {
                Format::Text => println!(
                    "shuffling delay {} (Abelian border-free {}, border-free {}, lex index {})",
                    rep.delay, rep.ab_borderfree_len, rep.borderfree_len, rep.lex_index
                ),
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out {
                        schema: u32,
                        delay: usize,
                        ab_borderfree_len: usize,
                        borderfree_len: usize,
                        lex_index: usize,
                        starts_with_one: bool,
                    }
                    emit_json(&Out {
                        schema: 1,
                        delay: rep.delay,
                        ab_borderfree_len: rep.ab_borderfree_len,
                        borderfree_len: rep.borderfree_len,
                        lex_index: rep.lex_index,
                        starts_with_one: rep.starts_with_one,
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn parse_params(alpha: &str, rho: &str) -> Result<stones::EmbeddingParams, SpecError> {
    let a: Quad = alpha
        .parse()
        .map_err(|e| SpecError::new(format!("--alpha: {e}")))?;
    let r: Quad = rho
        .parse()
        .map_err(|e| SpecError::new(format!("--rho: {e}")))?;
    stones::EmbeddingParams::new(a, r).map_err(|e| SpecError::new(e.to_string()))
}

fn run_stones(format: Format, cmd: StonesCmd) -> Result<(), SpecError> {
    match cmd.kind {
        StonesKind::Path(args) => {
            let params = parse_params(&args.alpha, &args.rho)?;
            let outcome =
                stones::path_extract(&params, args.n).map_err(|e| SpecError::new(e.to_string()))?;
            match &outcome {
                stones::StoneOutcome::Path(path) => {
                    if let Some(file) = &args.svg {
                        std::fs::write(file, stones::svg_render(&params, Some(path), 4))
                            .map_err(|e| SpecError::new(format!("writing {file}: {e}")))?;
                    }
                    if let Some(file) = &args.csv {
                        let csv = stones::csv_render(&params, path)
                            .map_err(|e| SpecError::new(e.to_string()))?;
                        std::fs::write(file, csv)
                            .map_err(|e| SpecError::new(format!("writing {file}: {e}")))?;
                    }
                    match format {
                        Format::Text => {
                            let head: Vec<String> = path
                                .pairs
                                .iter()
                                .take(12)
                                .map(|(i, j)| format!("({i},{j})"))
                                .collect();
                            println!("path to n={}: {} ...", args.n, head.join(" -> "));
                        }
                        Format::Json => {
                            #[derive(Serialize)]
                            struct Out {
                                schema: u32,
                                outcome: &'static str,
                                n: usize,
                                pairs: Vec<(usize, usize)>,
                            }
                            emit_json(&Out {
                                schema: 1,
                                outcome: "path",
                                n: args.n,
                                pairs: path.pairs.clone(),
                            })?;
                        }
                    }
                }
                stones::StoneOutcome::Dead { level } => match format {
                    Format::Text => println!("dead at level {level}"),
                    Format::Json => {
                        #[derive(Serialize)]
                        struct Out {
                            schema: u32,
                            outcome: &'static str,
                            death_level: usize,
                        }
                        emit_json(&Out {
                            schema: 1,
                            outcome: "dead",
                            death_level: *level,
                        })?;
                    }
                },
                stones::StoneOutcome::Alive { truncated } => match format {
                    Format::Text => println!("alive (inconclusive); truncated={truncated}"),
                    Format::Json => {
                        #[derive(Serialize)]
                        struct Out {
                            schema: u32,
                            outcome: &'static str,
                            truncated: bool,
                        }
                        emit_json(&Out {
                            schema: 1,
                            outcome: "alive",
                            truncated: *truncated,
                        })?;
                    }
                },
            }
        }
        StonesKind::Classify(args) => {
            let params = parse_params(&args.alpha, &args.rho)?;
            let orbit = stones::OrbitTable::new(params.alpha(), args.n)
                .map_err(|e| SpecError::new(e.to_string()))?;
            let mut counts = [0usize; 4];
            for i in 0..=args.n {
                for j in 0..=args.n {
                    let r = stones::region_classify(orbit.point(i), orbit.point(j), &params)
                        .map_err(|e| SpecError::new(e.to_string()))?;
                    counts[match r {
                        stones::Region::Dead => 0,
                        stones::Region::T1 => 1,
                        stones::Region::T2 => 2,
                        stones::Region::Free => 3,
                    }] += 1;
                }
            }
            match format {
                Format::Text => println!(
                    "classified {} orbit pairs: dead={} t1={} t2={} free={}",
                    (args.n + 1) * (args.n + 1),
                    counts[0],
                    counts[1],
                    counts[2],
                    counts[3]
                ),
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out {
                        schema: u32,
                        n: usize,
                        dead: usize,
                        t1: usize,
                        t2: usize,
                        free: usize,
                        alpha: QuadJson,
                        rho: QuadJson,
                    }
                    emit_json(&Out {
                        schema: 1,
                        n: args.n,
                        dead: counts[0],
                        t1: counts[1],
                        t2: counts[2],
                        free: counts[3],
                        alpha: QuadJson::of(params.alpha()),
                        rho: QuadJson::of(params.rho()),
                    })?;
                }
            }
        }
        StonesKind::Check(args) => {
            let params = parse_params(&args.alpha, &args.rho)?;
            let rep = stones::graph_vs_embedding_check(&params, args.n)
                .map_err(|e| SpecError::new(e.to_string()))?;
            match format {
                Format::Text => match rep.counterexample {
                    None => println!("equivalence holds for all i+j <= {} ({} pairs)", rep.n_max, rep.checked),
                    Some((i, j)) => println!("counterexample at ({i}, {j})"),
                },
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out {
                        schema: u32,
                        n: usize,
                        checked: usize,
                        passed: bool,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        counterexample: Option<(usize, usize)>,
                    }
                    emit_json(&Out {
                        schema: 1,
                        n: rep.n_max,
                        checked: rep.checked,
                        passed: rep.passed(),
                        counterexample: rep.counterexample,
                    })?;
                }
            }
            if !rep.passed() {
                return Err(SpecError::new("graph/embedding equivalence failed"));
            }
        }
    }
    Ok(())
}

fn run_verify(format: Format, cmd: VerifyCmd) -> Result<(), SpecError> {
    let text = std::fs::read_to_string(&cmd.witness)
        .map_err(|e| SpecError::new(format!("reading {}: {e}", cmd.witness)))?;
    let file: WitnessFile = serde_json::from_str(&text)
        .map_err(|e| SpecError::new(format!("parsing witness: {e}")))?;
    let (ok, consumed, position) = file.reverify(cmd.depth)?;
    match format {
        Format::Text => {
            if ok {
                println!("ok: verified to depth {position}, consumed {consumed:?}");
            } else {
                println!("mismatch at position {position}");
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                schema: u32,
                ok: bool,
                position: usize,
                consumed: Vec<usize>,
            }
            emit_json(&Out {
                schema: 1,
                ok,
                position,
                consumed,
            })?;
        }
    }
    if !ok {
        return Err(SpecError::new("witness failed to verify"));
    }
    Ok(())
}
