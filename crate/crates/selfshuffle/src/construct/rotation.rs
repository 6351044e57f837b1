//! Shuffling Sturmian words by circle rotation.
//!
//! Three words of the same irrational slope ride the circle together: the
//! target tail `m` and two source tails labeled `s` (small) and `l`
//! (large). At every step the designated follower dishes its own next
//! letter, which must match `m`'s, and both rotate by the slope. Ten cases
//! prescribe who follows, when to stop, and when the `s`/`l` labels swap;
//! all positional predicates are decided exactly. The machine refuses
//! configurations outside its transition graph instead of guessing.

use std::cmp::Ordering;

use crate::quad::QuadError;
use crate::shuffle::{ShuffleError, ShuffleWitness, SteeringWord};
use crate::sturmian::{mechanical, SturmianError, SturmianSpec};
use crate::words::{InfiniteWord, Letter};
use crate::{Point, Quad};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    C11,
    C12,
    C21,
    C22,
    C31,
    C32,
    C4,
    C5,
    C61,
    C62,
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseLabel::C11 => "1.1",
            CaseLabel::C12 => "1.2",
            CaseLabel::C21 => "2.1",
            CaseLabel::C22 => "2.2",
            CaseLabel::C31 => "3.1",
            CaseLabel::C32 => "3.2",
            CaseLabel::C4 => "4",
            CaseLabel::C5 => "5",
            CaseLabel::C61 => "6.1",
            CaseLabel::C62 => "6.2",
        };
        f.write_str(s)
    }
}

/// The transition graph: every step of the machine must move along one of
/// these edges.
pub const ROTATION_EDGES: [(CaseLabel, CaseLabel); 16] = [
    (CaseLabel::C12, CaseLabel::C11),
    (CaseLabel::C11, CaseLabel::C21),
    (CaseLabel::C21, CaseLabel::C31),
    (CaseLabel::C21, CaseLabel::C32),
    (CaseLabel::C21, CaseLabel::C4),
    (CaseLabel::C31, CaseLabel::C21),
    (CaseLabel::C31, CaseLabel::C22),
    (CaseLabel::C31, CaseLabel::C5),
    (CaseLabel::C32, CaseLabel::C11),
    (CaseLabel::C4, CaseLabel::C11),
    (CaseLabel::C4, CaseLabel::C12),
    (CaseLabel::C5, CaseLabel::C61),
    (CaseLabel::C5, CaseLabel::C62),
    (CaseLabel::C22, CaseLabel::C61),
    (CaseLabel::C62, CaseLabel::C61),
    (CaseLabel::C61, CaseLabel::C31),
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RotationError {
    #[error("inputs must satisfy S <= M <= L lexicographically")]
    OrderViolated,
    #[error("equal-intercept pair with the third intercept 0 cannot be shuffled")]
    NecessaryConditionViolated,
    #[error("no case matches the configuration: {0}")]
    Stuck(String),
    #[error("transition {0} -> {1} is not an edge of the case graph")]
    EdgeViolation(CaseLabel, CaseLabel),
    #[error("case {0} invariant failed: {1}")]
    InvariantViolation(CaseLabel, String),
    #[error("no letters consumed across two consecutive transitions")]
    NoProgress,
    #[error("lexicographic comparison did not resolve within {0} letters")]
    LexHorizon(usize),
    #[error(transparent)]
    Sturmian(#[from] SturmianError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Shuffle(#[from] ShuffleError),
}

/// A Sturmian word together with the exact intercept of its current tail.
///
/// When two tracks sit on the same intercept point they must be the same
/// word, except for the boundary pair distinguished by its first letter
/// (the two codings of a point on the orbit of 0); the comparator checks
/// the first letter to tell those apart.
#[derive(Clone)]
pub struct SturmianTrack {
    pub word: InfiniteWord,
    pub intercept: Point,
}

impl SturmianTrack {
    pub fn from_spec(spec: &SturmianSpec) -> Result<Self, SturmianError> {
        Ok(SturmianTrack {
            word: mechanical(spec)?,
            intercept: spec.intercept_point()?,
        })
    }
}

struct Traj {
    word: InfiniteWord,
    consumed: usize,
    point: Point,
    /// Physical copy this trajectory dishes from (0 or 1); the target
    /// trajectory carries `None`.
    copy: Option<usize>,
}

impl Traj {
    fn new(track: &SturmianTrack, copy: Option<usize>) -> Self {
        Traj {
            word: track.word.clone(),
            consumed: 0,
            point: track.intercept,
            copy,
        }
    }

    fn peek(&self, t: usize) -> Letter {
        self.word.letter(self.consumed + t)
    }

    fn cell(&self) -> usize {
        self.peek(0).index()
    }

    fn advance(&mut self, alpha: &Quad) -> Result<(), RotationError> {
        self.consumed += 1;
        self.point = self.point.rotate(alpha)?;
        Ok(())
    }
}

const LEX_HORIZON: usize = 2_000_000;

/// Lexicographic comparison of two tails. Equal intercepts short-circuit:
/// the tails can then differ only in their very first letter (boundary
/// codings), and agree forever after it.
fn tails_cmp(a: &Traj, b: &Traj) -> Result<Ordering, RotationError> {
    if a.point == b.point {
        return Ok(a.peek(0).cmp(&b.peek(0)));
    }
    for t in 0..LEX_HORIZON {
        let (x, y) = (a.peek(t), b.peek(t));
        if x != y {
            return Ok(x.cmp(&y));
        }
    }
    Err(RotationError::LexHorizon(LEX_HORIZON))
}

#[derive(Debug, Clone)]
pub struct TransitionRecord {
    pub from: CaseLabel,
    pub to: CaseLabel,
    /// Letters dished during the `from` instruction.
    pub dished: usize,
    /// Consumed totals per physical copy after the transition.
    pub consumed: [usize; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Follower {
    S,
    L,
}

#[derive(Debug)]
pub struct RotationOutput {
    /// Witness for `M` as a shuffle of `S` (copy 1) and `L` (copy 2).
    pub witness: ShuffleWitness,
    pub transitions: Vec<TransitionRecord>,
    pub initial_case: CaseLabel,
    /// The machine ran on the 0/1-exchanged words of slope `1 - alpha`.
    pub complemented: bool,
}

impl RotationOutput {
    /// Index of the first steering symbol differing from the first one:
    /// from there on both copies have consumed at least one letter.
    pub fn first_run_len(&self, scan: usize) -> Option<usize> {
        let first = self.witness.steering.copy_at(0);
        (1..scan).find(|&n| self.witness.steering.copy_at(n) != first)
    }
}

struct Machine {
    alpha: Quad,
    s: Traj,
    m: Traj,
    l: Traj,
    steering: Vec<u8>,
    depth: usize,
    transitions: Vec<TransitionRecord>,
    consumed: [usize; 2],
}

impl Machine {
    fn zero() -> Point {
        Point::zero()
    }

    fn point_cmp(a: &Point, b: &Point) -> Result<Ordering, RotationError> {
        Ok(a.try_cmp(b)?)
    }

    /// The degenerate-pair predicate: both sources glued to the target
    /// with the remaining intercept at 0.
    fn pred_c(&self) -> Result<bool, RotationError> {
        let zero = Self::zero();
        let pm_ps = self.m.point == self.s.point;
        let pm_pl = self.m.point == self.l.point;
        Ok((pm_ps && self.l.point == zero) || (pm_pl && self.s.point == zero))
    }

    fn pred_p1(&self) -> Result<bool, RotationError> {
        let alpha_pt = Point::new(&self.alpha)?;
        let one_minus = Point::new(&Quad::one().try_sub(&self.alpha)?)?;
        Ok(self.s.point == alpha_pt && self.m.point == Self::zero() && self.l.point == one_minus)
    }

    fn pred_p2(&self) -> Result<bool, RotationError> {
        let one_minus = Point::new(&Quad::one().try_sub(&self.alpha)?)?;
        let gap = self
            .l
            .point
            .value()
            .try_sub(self.m.point.value())?
            .frac()?;
        let gap_is_alpha = gap == self.alpha.frac()?;
        Ok((gap_is_alpha && self.s.point == one_minus) || self.m.point == Self::zero())
    }

    fn gap_l_minus_m_le_alpha(&self) -> Result<bool, RotationError> {
        let gap = self
            .l
            .point
            .value()
            .try_sub(self.m.point.value())?
            .frac()?;
        Ok(gap.try_cmp(&self.alpha)? != Ordering::Greater)
    }

    /// Decide the current case from the observable configuration.
    /// Preference order mirrors the case graph: the one-step overflow
    /// cases fire only on strict inversions, and with the target in the
    /// long cell the `l`-following family is preferred (symmetrically the
    /// `s`-following family in the short cell).
    fn dispatch(&self, allow_one_step: bool) -> Result<CaseLabel, RotationError> {
        let am = self.m.cell();
        let as_ = self.s.cell();
        let al = self.l.cell();
        let m_vs_s = tails_cmp(&self.m, &self.s)?;
        let m_vs_l = tails_cmp(&self.m, &self.l)?;
        if allow_one_step && as_ == am && m_vs_s == Ordering::Less {
            return Ok(CaseLabel::C5);
        }
        if allow_one_step && al == am && m_vs_l == Ordering::Greater {
            return Ok(CaseLabel::C4);
        }
        if am == 0 {
            if al == 0 && m_vs_s != Ordering::Less {
                return Ok(match m_vs_l {
                    Ordering::Equal => CaseLabel::C12,
                    Ordering::Less => CaseLabel::C11,
                    Ordering::Greater => {
                        return Err(RotationError::Stuck(
                            "target above l in the short cell".into(),
                        ))
                    }
                });
            }
            if as_ == 0 {
                return Ok(match m_vs_s {
                    Ordering::Equal => CaseLabel::C22,
                    Ordering::Greater => CaseLabel::C21,
                    Ordering::Less => {
                        return Err(RotationError::Stuck("s above target, l away".into()))
                    }
                });
            }
        } else {
            if as_ == 1 && m_vs_s != Ordering::Less {
                return Ok(match m_vs_s {
                    Ordering::Equal => CaseLabel::C62,
                    _ => CaseLabel::C61,
                });
            }
            if al == 1 {
                return Ok(match m_vs_l {
                    Ordering::Equal => CaseLabel::C32,
                    Ordering::Less => CaseLabel::C31,
                    Ordering::Greater => {
                        return Err(RotationError::Stuck(
                            "target above l with s in the other cell".into(),
                        ))
                    }
                });
            }
        }
        Err(RotationError::Stuck(format!(
            "cells (s,m,l)=({as_},{am},{al}) admit no follower"
        )))
    }

    fn assert_case(&self, case: CaseLabel) -> Result<(), RotationError> {
        let fail = |msg: &str| Err(RotationError::InvariantViolation(case, msg.to_string()));
        let m_vs_s = tails_cmp(&self.m, &self.s)?;
        let m_vs_l = tails_cmp(&self.m, &self.l)?;
        match case {
            CaseLabel::C11 | CaseLabel::C12 => {
                if self.pred_c()? {
                    return fail("C holds");
                }
                if m_vs_s == Ordering::Less {
                    return fail("s > m");
                }
                let want = if case == CaseLabel::C11 {
                    Ordering::Less
                } else {
                    Ordering::Equal
                };
                if m_vs_l != want {
                    return fail("m vs l out of shape");
                }
            }
            CaseLabel::C21 | CaseLabel::C22 => {
                if self.pred_c()? {
                    return fail("C holds");
                }
                let want = if case == CaseLabel::C21 {
                    Ordering::Greater
                } else {
                    Ordering::Equal
                };
                if m_vs_s != want {
                    return fail("s vs m out of shape");
                }
            }
            CaseLabel::C31 | CaseLabel::C32 => {
                if self.pred_c()? {
                    return fail("C holds");
                }
                let want = if case == CaseLabel::C31 {
                    Ordering::Less
                } else {
                    Ordering::Equal
                };
                if m_vs_l != want {
                    return fail("m vs l out of shape");
                }
            }
            CaseLabel::C4 => {
                if self.pred_p1()? {
                    return fail("P1 holds");
                }
                if m_vs_l != Ordering::Greater {
                    return fail("m <= l");
                }
                if Self::point_cmp(&self.s.point, &Point::new(&self.alpha)?)? == Ordering::Less {
                    return fail("rho(s) < alpha");
                }
            }
            CaseLabel::C5 => {
                if self.pred_p2()? {
                    return fail("P2 holds");
                }
                if m_vs_s != Ordering::Less {
                    return fail("m >= s");
                }
                if !self.gap_l_minus_m_le_alpha()? {
                    return fail("(rho(l) - rho(m)) mod 1 > alpha");
                }
            }
            CaseLabel::C61 | CaseLabel::C62 => {
                if self.pred_c()? {
                    return fail("C holds");
                }
                let want = if case == CaseLabel::C61 {
                    Ordering::Greater
                } else {
                    Ordering::Equal
                };
                if m_vs_s != want {
                    return fail("s vs m out of shape");
                }
                if m_vs_l == Ordering::Greater {
                    return fail("m > l");
                }
            }
        }
        Ok(())
    }

    fn dish(&mut self, who: Follower) -> Result<(), RotationError> {
        let f = match who {
            Follower::S => &mut self.s,
            Follower::L => &mut self.l,
        };
        let fl = f.peek(0);
        let ml = self.m.peek(0);
        if fl != ml {
            return Err(RotationError::Stuck(format!(
                "follower letter {} does not match target letter {} at position {}",
                fl.index(),
                ml.index(),
                self.steering.len()
            )));
        }
        let copy = f.copy.expect("sources carry copy ids");
        self.steering.push(copy as u8);
        self.consumed[copy] += 1;
        f.advance(&self.alpha)?;
        self.m.advance(&self.alpha)?;
        Ok(())
    }

    fn full(&self) -> bool {
        self.steering.len() >= self.depth
    }

    /// Run one instruction for `case`; returns whether the labels swap.
    fn run_instruction(&mut self, case: CaseLabel) -> Result<bool, RotationError> {
        match case {
            CaseLabel::C11 | CaseLabel::C31 => {
                while !self.full() && self.m.cell() == self.l.cell() {
                    self.dish(Follower::L)?;
                }
                Ok(false)
            }
            CaseLabel::C21 | CaseLabel::C61 => {
                while !self.full() && self.m.cell() == self.s.cell() {
                    self.dish(Follower::S)?;
                }
                Ok(false)
            }
            CaseLabel::C12 | CaseLabel::C32 => {
                // l follows m until 0 < rho(m) = rho(l) < rho(s)
                loop {
                    if self.full() {
                        break;
                    }
                    let pm = &self.m.point;
                    if !pm.is_zero()
                        && Self::point_cmp(pm, &self.s.point)? == Ordering::Less
                    {
                        break;
                    }
                    self.dish(Follower::L)?;
                }
                Ok(true)
            }
            CaseLabel::C22 | CaseLabel::C62 => {
                // s follows m until rho(m) = rho(s) > rho(l)
                loop {
                    if self.full() {
                        break;
                    }
                    if Self::point_cmp(&self.m.point, &self.l.point)? == Ordering::Greater {
                        break;
                    }
                    self.dish(Follower::S)?;
                }
                Ok(true)
            }
            CaseLabel::C4 => {
                if !self.full() {
                    self.dish(Follower::L)?;
                }
                Ok(true)
            }
            CaseLabel::C5 => {
                if !self.full() {
                    self.dish(Follower::S)?;
                }
                Ok(true)
            }
        }
    }
}

fn is_edge(from: CaseLabel, to: CaseLabel) -> bool {
    ROTATION_EDGES.iter().any(|(a, b)| *a == from && *b == to)
}

/// Run the machine on explicit tracks. Requires `0 < alpha < 1/2` and
/// `S <= M <= L`; sources are copy 0 = S, copy 1 = L.
pub fn sturmian_shuffle_tracks(
    alpha: &Quad,
    s_track: &SturmianTrack,
    m_track: &SturmianTrack,
    l_track: &SturmianTrack,
    depth: usize,
) -> Result<RotationOutput, RotationError> {
    let half = Quad::from_ratio(1, 2).map_err(RotationError::Quad)?;
    if alpha.is_rational()
        || alpha.try_cmp(&Quad::zero())? != Ordering::Greater
        || alpha.try_cmp(&half)? == Ordering::Greater
    {
        return Err(RotationError::Sturmian(SturmianError::SlopeOutOfRange));
    }

    let s = Traj::new(s_track, Some(0));
    let m = Traj::new(m_track, None);
    let l = Traj::new(l_track, Some(1));

    // necessary conditions: an equal-intercept pair forces the third
    // intercept away from 0
    let zero = Point::zero();
    if (m.point == s.point && l.point == zero) || (m.point == l.point && s.point == zero) {
        return Err(RotationError::NecessaryConditionViolated);
    }
    if tails_cmp(&s, &m)? == Ordering::Greater || tails_cmp(&m, &l)? == Ordering::Greater {
        return Err(RotationError::OrderViolated);
    }

    let mut machine = Machine {
        alpha: *alpha,
        s,
        m,
        l,
        steering: Vec::with_capacity(depth),
        depth,
        transitions: Vec::new(),
        consumed: [0, 0],
    };

    let mut case = machine.dispatch(false)?;
    machine.assert_case(case)?;
    let initial_case = case;
    let mut last_two_dished = usize::MAX;
    while !machine.full() {
        let before = machine.steering.len();
        let swap = machine.run_instruction(case)?;
        if swap {
            std::mem::swap(&mut machine.s, &mut machine.l);
        }
        let dished = machine.steering.len() - before;
        if machine.full() {
            break;
        }
        let next = machine.dispatch(true)?;
        if !is_edge(case, next) {
            return Err(RotationError::EdgeViolation(case, next));
        }
        machine.assert_case(next)?;
        machine.transitions.push(TransitionRecord {
            from: case,
            to: next,
            dished,
            consumed: machine.consumed,
        });
        if last_two_dished == 0 && dished == 0 {
            return Err(RotationError::NoProgress);
        }
        last_two_dished = dished;
        case = next;
    }

    let symbols = machine.steering;
    let len = symbols.len();
    let steering = SteeringWord::from_copy_indices(
        2,
        (0..).map(move |n| {
            if n < len {
                symbols[n] as usize
            } else {
                n % 2
            }
        }),
    )?;
    let witness = ShuffleWitness::new(
        m_track.word.clone(),
        vec![s_track.word.clone(), l_track.word.clone()],
        steering,
    )?;
    Ok(RotationOutput {
        witness,
        transitions: machine.transitions,
        initial_case,
        complemented: false,
    })
}

/// Shuffle `M` from `S` and `L`, all of slope `alpha`, given as intercepts.
/// Slopes above 1/2 are handled by exchanging the letters (slope becomes
/// `1 - alpha`, intercepts `1 - rho`) and mapping the steering back.
pub fn sturmian_shuffle(
    alpha: &Quad,
    rho_s: &Quad,
    rho_m: &Quad,
    rho_l: &Quad,
    depth: usize,
) -> Result<RotationOutput, RotationError> {
    let half = Quad::from_ratio(1, 2).map_err(RotationError::Quad)?;
    if alpha.try_cmp(&half)? == Ordering::Greater {
        let alpha2 = Quad::one().try_sub(alpha)?;
        let flip = |rho: &Quad| Quad::one().try_sub(rho);
        // complementation reverses the lexicographic order, so S and L trade
        // places; the steering comes back with its copy labels flipped
        let out = sturmian_shuffle(&alpha2, &flip(rho_l)?, &flip(rho_m)?, &flip(rho_s)?, depth)?;
        let inner = out.witness.steering.clone();
        let steering = SteeringWord::from_copy_indices(2, (0..).map(move |n| 1 - inner.copy_at(n)))?;
        let s_spec = SturmianSpec::new(*alpha, *rho_s)?;
        let m_spec = SturmianSpec::new(*alpha, *rho_m)?;
        let l_spec = SturmianSpec::new(*alpha, *rho_l)?;
        let witness = ShuffleWitness::new(
            mechanical(&m_spec)?,
            vec![mechanical(&s_spec)?, mechanical(&l_spec)?],
            steering,
        )?;
        return Ok(RotationOutput {
            witness,
            transitions: out.transitions,
            initial_case: out.initial_case,
            complemented: true,
        });
    }
    let s_track = SturmianTrack::from_spec(&SturmianSpec::new(*alpha, *rho_s)?)?;
    let m_track = SturmianTrack::from_spec(&SturmianSpec::new(*alpha, *rho_m)?)?;
    let l_track = SturmianTrack::from_spec(&SturmianSpec::new(*alpha, *rho_l)?)?;
    sturmian_shuffle_tracks(alpha, &s_track, &m_track, &l_track, depth)
}

/// Self-shuffle of the Sturmian word of slope `alpha` and intercept `rho`.
pub fn sturmian_self_shuffle(
    alpha: &Quad,
    rho: &Quad,
    depth: usize,
) -> Result<RotationOutput, RotationError> {
    sturmian_shuffle(alpha, rho, rho, rho, depth)
}
