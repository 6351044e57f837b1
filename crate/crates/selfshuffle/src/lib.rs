//! Toolkit for self-shuffling infinite words.
//!
//! An infinite word `x` is k-self-shuffling when some interleaving of k
//! copies of `x` reproduces `x` itself. This crate provides:
//!
//! * exact arithmetic over real quadratic fields ([`quad`]), so circle
//!   rotations and all positional predicates are decided without floats;
//! * finite/infinite word machinery and the standard example words
//!   ([`words`], [`named`]);
//! * Sturmian generators, both mechanical and by palindromic closure
//!   ([`sturmian`]);
//! * steering words, shuffle witnesses and their verification, the
//!   steering-word-to-word construction, and a bounded search of the
//!   shuffle graph ([`shuffle`], [`graph`]);
//! * explicit shuffle constructions: Thue-Morse, the Sturmian rotation
//!   machine, characteristic and palindromic shuffles, and a three-copy
//!   example ([`construct`]);
//! * necessary-condition checkers: Abelian borders, Lyndon status,
//!   shuffling delay ([`checkers`]);
//! * the dynamical embedding of the shuffle graph into a circle rotation
//!   and the stepping-stone model ([`stones`]).

pub mod checkers;
pub mod construct;
pub mod graph;
pub mod named;
pub mod quad;
pub mod shuffle;
pub mod stones;
pub mod sturmian;
pub mod words;

/// Coefficient integer used by the concrete aliases below.
pub type Int = i128;
/// Exact quadratic number over [`Int`] coefficients.
pub type Quad = quad::QuadExt<Int>;
/// Exact point of the unit circle over [`Int`] coefficients.
pub type Point = quad::CirclePoint<Int>;
