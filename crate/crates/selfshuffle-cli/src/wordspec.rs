//! Word specifications shared by the CLI arguments and the witness files.

use selfshuffle::named::named_word;
use selfshuffle::sturmian::{characteristic_from_directive, mechanical, DirectiveSequence, SturmianSpec};
use selfshuffle::words::{Alphabet, InfiniteWord, Letter, Morphism};
use selfshuffle::Quad;
use serde::{Deserialize, Serialize};

/// Option flags accepted wherever a word can be specified.
#[derive(Debug, Clone, Default, Serialize, Deserialize, clap::Args)]
pub struct WordOpts {
    /// Slope as an exact literal, e.g. "(3-1*sqrt(5))/2" or "1/3".
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<String>,

    /// Intercept in [0, 1]; 1 selects the word starting 1 over intercept 0.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rho: Option<String>,

    /// Directive sequence, e.g. "0,0,1,0,1,1" (repeats) or `0,0,[1,0]`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dir: Option<String>,

    /// Substitution rules, e.g. "0:01,1:0".
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub morphism: Option<String>,

    /// Start letter for a fixed point.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub start: Option<String>,

    /// Seed for the `random` word (filled from the global --seed flag).
    #[arg(skip)]
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,

    /// Drop this many leading letters.
    #[arg(long, default_value_t = 0)]
    #[serde(default, skip_serializing_if = "is_zero")]
    pub shift: usize,

    /// Prepend these letters (single-character symbols).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub prepend: Option<String>,
}

fn is_zero(v: &usize) -> bool {
    *v == 0
}

/// A complete word description: the generator name plus its options. This
/// is what witness files embed so `verify` can rebuild the word.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WordSpec {
    pub word: String,
    #[serde(flatten)]
    pub opts: WordOpts,
}

/// Flat error string; the CLI maps every domain failure to exit code 1.
#[derive(Debug)]
pub struct SpecError(String);

impl SpecError {
    pub fn new(msg: impl Into<String>) -> Self {
        SpecError(msg.into())
    }
}

impl std::fmt::Display for SpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SpecError {}

fn xorshift_word(seed: u64) -> InfiniteWord {
    let mut state = seed | 1;
    InfiniteWord::from_iter_src(
        Alphabet::binary(),
        std::iter::from_fn(move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            Some(Letter::new((state & 1) as usize))
        }),
    )
}

impl WordSpec {
    pub fn new(word: impl Into<String>, opts: WordOpts) -> Self {
        WordSpec {
            word: word.into(),
            opts,
        }
    }

    pub fn named(name: &str) -> Self {
        WordSpec {
            word: name.to_string(),
            opts: WordOpts::default(),
        }
    }

    pub fn sturmian(alpha: &Quad, rho: &Quad) -> Self {
        WordSpec {
            word: "sturmian".to_string(),
            opts: WordOpts {
                alpha: Some(alpha.to_string()),
                rho: Some(rho.to_string()),
                ..WordOpts::default()
            },
        }
    }

    /// Build the lazy word this specification describes.
    pub fn resolve(&self) -> Result<InfiniteWord, SpecError> {
        let base = self.resolve_base()?;
        let shifted = if self.opts.shift > 0 {
            base.drop_prefix(self.opts.shift)
        } else {
            base
        };
        match &self.opts.prepend {
            None => Ok(shifted),
            Some(text) => {
                let head = shifted
                    .alphabet()
                    .parse_word(text)
                    .map_err(|e| SpecError::new(format!("--prepend: {e}")))?;
                shifted
                    .prepend(&head)
                    .map_err(|e| SpecError::new(format!("--prepend: {e}")))
            }
        }
    }

    fn resolve_base(&self) -> Result<InfiniteWord, SpecError> {
        if let Some(pattern) = self.word.strip_prefix("periodic:") {
            let alpha = Alphabet::binary();
            let p = alpha
                .parse_word(pattern)
                .map_err(|e| SpecError::new(format!("periodic pattern: {e}")))?;
            return InfiniteWord::periodic(&p).map_err(|e| SpecError::new(e.to_string()));
        }
        match self.word.as_str() {
            "sturmian" => {
                let alpha = parse_quad_arg("alpha", &self.opts.alpha)?;
                let rho = parse_quad_arg("rho", &self.opts.rho)?;
                let spec = SturmianSpec::new(alpha, rho)
                    .map_err(|e| SpecError::new(e.to_string()))?;
                mechanical(&spec).map_err(|e| SpecError::new(e.to_string()))
            }
            "directive" => {
                let text = self
                    .opts
                    .dir
                    .as_ref()
                    .ok_or_else(|| SpecError::new("--dir is required for directive words"))?;
                let d = DirectiveSequence::parse(text)
                    .map_err(|e| SpecError::new(e.to_string()))?;
                Ok(characteristic_from_directive(&d))
            }
            "fixed-point" => {
                let rules = self.opts.morphism.as_ref().ok_or_else(|| {
                    SpecError::new("--morphism is required for fixed-point words")
                })?;
                let mu = Morphism::parse(rules).map_err(|e| SpecError::new(e.to_string()))?;
                let start_name = self.opts.start.clone().unwrap_or_else(|| "0".to_string());
                let start = mu
                    .domain()
                    .letter_by_name(&start_name)
                    .ok_or_else(|| SpecError::new(format!("unknown start letter {start_name:?}")))?;
                mu.fixed_point(start).map_err(|e| SpecError::new(e.to_string()))
            }
            "random" => Ok(xorshift_word(self.opts.seed.unwrap_or(0))),
            name => named_word(name).map_err(|e| SpecError::new(e.to_string())),
        }
    }
}

pub fn parse_quad_arg(name: &str, value: &Option<String>) -> Result<Quad, SpecError> {
    let text = value
        .as_ref()
        .ok_or_else(|| SpecError::new(format!("--{name} is required here")))?;
    text.parse::<Quad>()
        .map_err(|e| SpecError::new(format!("--{name}: {e}")))
}
