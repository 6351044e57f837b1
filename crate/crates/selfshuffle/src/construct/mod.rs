//! Explicit shuffle constructions. Each constructor emits a
//! [`ShuffleWitness`](crate::shuffle::ShuffleWitness) that the verifier can
//! check letter-for-letter.

mod characteristic;
mod pal;
mod rotation;
mod thue_morse;
mod three;

pub use characteristic::{characteristic_blocks, characteristic_shuffle, CharBlocks};
pub use pal::{pal_shuffle, PalChunk, PalShuffle, PalVariant};
pub use rotation::{
    sturmian_self_shuffle, sturmian_shuffle, sturmian_shuffle_tracks, CaseLabel, RotationError,
    RotationOutput, SturmianTrack, TransitionRecord, ROTATION_EDGES,
};
pub use three::{three_shuffle_blocks, three_shuffle_example, ThreeBlocks};
pub use thue_morse::tm_shuffle;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("word is not a concatenation of 0-runs followed by 1 within the horizon")]
    NotRunEncodable,
    #[error("the block construction needs a word beginning in 0")]
    MustBeginInZero,
    #[error("block exponent would be negative at n = {0}: not a characteristic word")]
    NegativeExponent(usize),
    #[error("directive sequence must begin in 0")]
    DirectiveMustStartZero,
    #[error("directive sequence must contain both symbols")]
    DirectiveMissingSymbol,
    #[error(transparent)]
    Sturmian(#[from] crate::sturmian::SturmianError),
    #[error(transparent)]
    Shuffle(#[from] crate::shuffle::ShuffleError),
    #[error(transparent)]
    Word(#[from] crate::words::WordError),
}
