//! Witness files: schema-versioned JSON that a `verify` run can replay.

use selfshuffle::shuffle::{ShuffleWitness, SteeringWord, VerifyOutcome};
use selfshuffle::words::{InfiniteWord, Letter};
use serde::{Deserialize, Serialize};

use crate::wordspec::{SpecError, WordSpec};

#[derive(Debug, Serialize, Deserialize)]
pub struct WitnessFile {
    pub schema: u32,
    pub k: usize,
    pub depth: usize,
    /// Steering prefix as copy digits `1..=k`.
    pub steering: String,
    /// Letters consumed per copy over the emitted prefix.
    pub consumed: Vec<usize>,
    /// Self-shuffled word, when the witness is a self-shuffle.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub word: Option<WordSpec>,
    /// Target and sources for a general shuffle.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub target: Option<WordSpec>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sources: Option<Vec<WordSpec>>,
}

impl WitnessFile {
    pub fn from_self_shuffle(w: &ShuffleWitness, word: WordSpec, depth: usize) -> Self {
        let rep = w.verify(depth);
        WitnessFile {
            schema: 1,
            k: w.k,
            depth,
            steering: w.steering.digits_prefix(depth),
            consumed: rep.consumed,
            word: Some(word),
            target: None,
            sources: None,
        }
    }

    pub fn from_shuffle(
        w: &ShuffleWitness,
        target: WordSpec,
        sources: Vec<WordSpec>,
        depth: usize,
    ) -> Self {
        let rep = w.verify(depth);
        WitnessFile {
            schema: 1,
            k: w.k,
            depth,
            steering: w.steering.digits_prefix(depth),
            consumed: rep.consumed,
            word: None,
            target: Some(target),
            sources: Some(sources),
        }
    }

    fn steering_word(&self) -> Result<SteeringWord, SpecError> {
        let digits: Vec<usize> = self
            .steering
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .filter(|d| (1..=self.k).contains(d))
                    .map(|d| d - 1)
                    .ok_or_else(|| SpecError::new(format!("bad steering digit {c:?}")))
            })
            .collect::<Result<_, _>>()?;
        if digits.len() < self.depth {
            return Err(SpecError::new(
                "steering prefix shorter than the declared depth",
            ));
        }
        let k = self.k;
        SteeringWord::from_copy_indices(
            k,
            (0..).map(move |n| if n < digits.len() { digits[n] } else { n % k }),
        )
        .map_err(|e| SpecError::new(e.to_string()))
    }

    /// Rebuild the witness and verify it to `depth` (defaults to the file's
    /// own depth, capped by the steering prefix length).
    pub fn reverify(&self, depth: Option<usize>) -> Result<(bool, Vec<usize>, usize), SpecError> {
        if self.schema != 1 {
            return Err(SpecError::new(format!("unknown schema {}", self.schema)));
        }
        let depth = depth.unwrap_or(self.depth).min(self.steering.chars().count());
        let steering = self.steering_word()?;
        let witness = if let Some(word) = &self.word {
            ShuffleWitness::self_shuffle(word.resolve()?, steering)
        } else {
            let target = self
                .target
                .as_ref()
                .ok_or_else(|| SpecError::new("witness carries neither word nor target"))?
                .resolve()?;
            let sources: Vec<InfiniteWord> = self
                .sources
                .as_ref()
                .ok_or_else(|| SpecError::new("general witness is missing sources"))?
                .iter()
                .map(|s| s.resolve())
                .collect::<Result<_, _>>()?;
            ShuffleWitness::new(target, sources, steering)
                .map_err(|e| SpecError::new(e.to_string()))?
        };
        let rep = witness.verify(depth);
        let pos = match rep.outcome {
            VerifyOutcome::Ok => depth,
            VerifyOutcome::Mismatch { position, .. } => position,
        };
        Ok((rep.is_ok(), rep.consumed, pos))
    }
}

pub fn letters_of(s: &str) -> Vec<Letter> {
    s.chars()
        .filter_map(|c| c.to_digit(10))
        .map(|d| Letter::new(d as usize))
        .collect()
}
