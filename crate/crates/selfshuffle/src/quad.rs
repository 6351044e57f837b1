//! Exact arithmetic over real quadratic extensions.
//!
//! A [`QuadExt`] stores `(a + b*sqrt(d)) / c` with integer coefficients in
//! canonical form, so ordering, floor and fractional part are decided by
//! integer arithmetic alone. [`CirclePoint`] wraps a value reduced into
//! `[0, 1)` and supports rotation, which is all the positional machinery
//! the rotation algorithm and the stepping-stone model need.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_integer::{Integer, Roots};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed};

/// Integer coefficient type for [`QuadExt`]. `i64` and `i128` qualify.
pub trait Coeff:
    Integer
    + Signed
    + Roots
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Copy
    + Hash
    + fmt::Debug
    + fmt::Display
    + TryFrom<i64>
    + 'static
{
}

impl<T> Coeff for T where
    T: Integer
        + Signed
        + Roots
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + Copy
        + Hash
        + fmt::Debug
        + fmt::Display
        + TryFrom<i64>
        + 'static
{
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadError {
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("radicand {0} is not square-free")]
    NotSquareFree(String),
    #[error("radicand {0} is negative")]
    NegativeRadicand(String),
    #[error("values live in different quadratic fields")]
    MixedRadicands,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("cannot parse {0:?} as a quadratic number")]
    Parse(String),
}

/// The exact number `(a + b*sqrt(d)) / c`.
///
/// Canonical form: `c > 0`, `gcd(a, b, c) = 1`, and rational values are
/// stored with `b = 0, d = 0`. Equality of values is equality of
/// representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadExt<I> {
    a: I,
    b: I,
    c: I,
    d: I,
}

fn conv<I: Coeff>(v: i64) -> Result<I, QuadError> {
    I::try_from(v).map_err(|_| QuadError::Overflow)
}

impl<I: Coeff> QuadExt<I> {
    /// Canonical `(a + b*sqrt(d)) / c`. Rejects `c = 0`, negative or
    /// non-square-free `d` (when `b != 0`); `d` in `{0, 1}` folds into the
    /// rational part.
    pub fn new(a: I, b: I, c: I, d: I) -> Result<Self, QuadError> {
        if c.is_zero() {
            return Err(QuadError::ZeroDenominator);
        }
        let (mut a, mut b, mut c, mut d) = (a, b, c, d);
        if b.is_zero() || d.is_zero() {
            b = I::zero();
            d = I::zero();
        } else if d == I::one() {
            a = a.checked_add(&b).ok_or(QuadError::Overflow)?;
            b = I::zero();
            d = I::zero();
        } else {
            if d.is_negative() {
                return Err(QuadError::NegativeRadicand(d.to_string()));
            }
            if !square_free(d)? {
                return Err(QuadError::NotSquareFree(d.to_string()));
            }
        }
        if c.is_negative() {
            a = I::zero().checked_sub(&a).ok_or(QuadError::Overflow)?;
            b = I::zero().checked_sub(&b).ok_or(QuadError::Overflow)?;
            c = I::zero().checked_sub(&c).ok_or(QuadError::Overflow)?;
        }
        let g = a.abs().gcd(&b.abs()).gcd(&c.abs());
        if g > I::one() {
            a = a / g;
            b = b / g;
            c = c / g;
        }
        Ok(QuadExt { a, b, c, d })
    }

    pub fn from_int(n: I) -> Self {
        QuadExt {
            a: n,
            b: I::zero(),
            c: I::one(),
            d: I::zero(),
        }
    }

    pub fn from_ratio(a: I, c: I) -> Result<Self, QuadError> {
        Self::new(a, I::zero(), c, I::zero())
    }

    /// `sqrt(d)` as a quadratic number.
    pub fn sqrt(d: I) -> Result<Self, QuadError> {
        Self::new(I::zero(), I::one(), I::one(), d)
    }

    pub fn zero() -> Self {
        Self::from_int(I::zero())
    }

    pub fn one() -> Self {
        Self::from_int(I::one())
    }

    pub fn coeffs(&self) -> (I, I, I, I) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_irrational(&self) -> bool {
        !self.is_rational()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Radicand shared by both operands, or an error when they live in
    /// genuinely different fields. Rationals are compatible with everything.
    fn join_radicand(&self, other: &Self) -> Result<I, QuadError> {
        if self.b.is_zero() {
            Ok(other.d)
        } else if other.b.is_zero() || self.d == other.d {
            Ok(self.d)
        } else {
            Err(QuadError::MixedRadicands)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, QuadError> {
        let d = self.join_radicand(other)?;
        let a = mul_chk(self.a, other.c)?.checked_add(&mul_chk(other.a, self.c)?);
        let b = mul_chk(self.b, other.c)?.checked_add(&mul_chk(other.b, self.c)?);
        let c = mul_chk(self.c, other.c)?;
        Self::new(
            a.ok_or(QuadError::Overflow)?,
            b.ok_or(QuadError::Overflow)?,
            c,
            d,
        )
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, QuadError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QuadExt {
            a: -self.a,
            b: -self.b,
            c: self.c,
            d: self.d,
        }
    }

    pub fn mul_int(&self, k: I) -> Result<Self, QuadError> {
        Self::new(mul_chk(self.a, k)?, mul_chk(self.b, k)?, self.c, self.d)
    }

    /// Sign of the value: -1, 0 or +1.
    pub fn signum(&self) -> Result<i32, QuadError> {
        // c > 0, so this is the sign of a + b*sqrt(d).
        if self.b.is_zero() {
            return Ok(sig(self.a));
        }
        let bb_d = mul_chk(mul_chk(self.b, self.b)?, self.d)?;
        let aa = mul_chk(self.a, self.a)?;
        if self.b.is_positive() {
            if !self.a.is_negative() {
                Ok(1)
            } else {
                // a < 0 < b: sign of b*sqrt(d) - |a|
                Ok(match bb_d.cmp(&aa) {
                    Ordering::Greater => 1,
                    Ordering::Less => -1,
                    Ordering::Equal => 0,
                })
            }
        } else if !self.a.is_positive() {
            Ok(-1)
        } else {
            Ok(match aa.cmp(&bb_d) {
                Ordering::Greater => 1,
                Ordering::Less => -1,
                Ordering::Equal => 0,
            })
        }
    }

    /// Exact total order; errors on incompatible radicands.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, QuadError> {
        if self == other {
            return Ok(Ordering::Equal);
        }
        let diff = self.try_sub(other)?;
        Ok(match diff.signum()? {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        })
    }

    /// Exact floor, via integer square-root bracketing of `b*sqrt(d)`.
    pub fn floor(&self) -> Result<I, QuadError> {
        if self.b.is_zero() {
            return Ok(self.a.div_floor(&self.c));
        }
        let bb_d = mul_chk(mul_chk(self.b, self.b)?, self.d)?;
        let s = bb_d.sqrt();
        // b*sqrt(d) is irrational here, so it lies strictly between
        // consecutive integers and the bracketing below is exact.
        debug_assert!(mul_chk(s, s)? != bb_d);
        let fb = if self.b.is_positive() { s } else { -s - I::one() };
        let t = self.a.checked_add(&fb).ok_or(QuadError::Overflow)?;
        Ok(t.div_floor(&self.c))
    }

    /// `self - floor(self)`, always in `[0, 1)`.
    pub fn frac(&self) -> Result<Self, QuadError> {
        let f = self.floor()?;
        self.try_sub(&Self::from_int(f))
    }

    /// `f64` approximation; decision paths never use this.
    pub fn to_f64(&self) -> f64 {
        let fa = to_f64_i(self.a);
        let fb = to_f64_i(self.b);
        let fc = to_f64_i(self.c);
        let fd = to_f64_i(self.d);
        (fa + fb * fd.sqrt()) / fc
    }
}

fn to_f64_i<I: fmt::Display>(v: I) -> f64 {
    // Coeff does not require ToPrimitive; go through the decimal rendering.
    v.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

fn sig<I: Coeff>(v: I) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn mul_chk<I: Coeff>(x: I, y: I) -> Result<I, QuadError> {
    x.checked_mul(&y).ok_or(QuadError::Overflow)
}

fn square_free<I: Coeff>(d: I) -> Result<bool, QuadError> {
    let mut p = conv::<I>(2)?;
    while mul_chk(p, p)? <= d {
        if (d % mul_chk(p, p)?).is_zero() {
            return Ok(false);
        }
        p = p + I::one();
    }
    Ok(true)
}

impl<I: Coeff> PartialOrd for QuadExt<I> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl<I: Coeff> fmt::Display for QuadExt<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            if self.c == I::one() {
                write!(f, "{}", self.a)
            } else {
                write!(f, "{}/{}", self.a, self.c)
            }
        } else {
            let (bs, babs) = if self.b.is_negative() {
                ("-", -self.b)
            } else {
                ("+", self.b)
            };
            write!(f, "({}{}{}*sqrt({}))/{}", self.a, bs, babs, self.d, self.c)
        }
    }
}

impl<I: Coeff> FromStr for QuadExt<I> {
    type Err = QuadError;

    fn from_str(s: &str) -> Result<Self, QuadError> {
        parse_quad(s)
    }
}

/// Point of the unit circle `[0, 1)`, stored exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CirclePoint<I> {
    v: QuadExt<I>,
}

impl<I: Coeff> CirclePoint<I> {
    /// Reduce any quadratic number mod 1.
    pub fn new(q: &QuadExt<I>) -> Result<Self, QuadError> {
        Ok(CirclePoint { v: q.frac()? })
    }

    pub fn zero() -> Self {
        CirclePoint {
            v: QuadExt::zero(),
        }
    }

    pub fn value(&self) -> &QuadExt<I> {
        &self.v
    }

    /// Rotation by `alpha`: the fractional part of `self + alpha`.
    pub fn rotate(&self, alpha: &QuadExt<I>) -> Result<Self, QuadError> {
        Self::new(&self.v.try_add(alpha)?)
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, QuadError> {
        self.v.try_cmp(&other.v)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }
}

impl<I: Coeff> fmt::Display for CirclePoint<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.v.fmt(f)
    }
}

// ---------------------------------------------------------------------------
// Parsing: `a`, `a/c`, `(a+b*sqrt(d))/c`, `sqrt(d)`, and simple sums thereof.

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Sqrt(i64),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, QuadError> {
    let err = || QuadError::Parse(s.to_string());
    let mut toks = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        match ch {
            ' ' | '\t' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '/' => {
                toks.push(Tok::Slash);
                i += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: i64 = s[start..i].parse().map_err(|_| err())?;
                toks.push(Tok::Int(n));
            }
            's' => {
                let rest = &s[i..];
                if let Some(stripped) = rest.strip_prefix("sqrt(") {
                    let close = stripped.find(')').ok_or_else(err)?;
                    let n: i64 = stripped[..close].trim().parse().map_err(|_| err())?;
                    toks.push(Tok::Sqrt(n));
                    i += "sqrt(".len() + close + 1;
                } else {
                    return Err(err());
                }
            }
            _ => return Err(err()),
        }
    }
    Ok(toks)
}

/// Parse the CLI literal syntax for quadratic numbers.
pub fn parse_quad<I: Coeff>(s: &str) -> Result<QuadExt<I>, QuadError> {
    let err = || QuadError::Parse(s.to_string());
    let toks = tokenize(s)?;
    let mut pos = 0;

    // numerator: either a parenthesized sum or a bare sum
    let parenthesized = toks.first() == Some(&Tok::LParen);
    if parenthesized {
        pos = 1;
    }
    let (mut a, mut b, mut d): (i64, i64, i64) = (0, 0, 0);
    let mut sign = 1i64;
    let mut expect_term = true;
    while pos < toks.len() {
        match &toks[pos] {
            Tok::Plus if !expect_term => {
                sign = 1;
                expect_term = true;
                pos += 1;
            }
            Tok::Minus if !expect_term => {
                sign = -1;
                expect_term = true;
                pos += 1;
            }
            Tok::Minus if expect_term => {
                sign = -sign;
                pos += 1;
            }
            Tok::Int(n) if expect_term => {
                // either a rational term or coefficient of sqrt
                if toks.get(pos + 1) == Some(&Tok::Star) {
                    match toks.get(pos + 2) {
                        Some(Tok::Sqrt(rad)) => {
                            merge_radicand(&mut d, *rad, s)?;
                            b = b
                                .checked_add(sign.checked_mul(*n).ok_or_else(err)?)
                                .ok_or_else(err)?;
                            pos += 3;
                        }
                        _ => return Err(err()),
                    }
                } else {
                    a = a
                        .checked_add(sign.checked_mul(*n).ok_or_else(err)?)
                        .ok_or_else(err)?;
                    pos += 1;
                }
                sign = 1;
                expect_term = false;
            }
            Tok::Sqrt(rad) if expect_term => {
                merge_radicand(&mut d, *rad, s)?;
                b = b.checked_add(sign).ok_or_else(err)?;
                pos += 1;
                sign = 1;
                expect_term = false;
            }
            Tok::RParen if parenthesized && !expect_term => break,
            Tok::Slash if !parenthesized && !expect_term => break,
            _ => return Err(err()),
        }
    }
    if expect_term {
        return Err(err());
    }
    if parenthesized {
        if toks.get(pos) != Some(&Tok::RParen) {
            return Err(err());
        }
        pos += 1;
    }
    let mut c = 1i64;
    if pos < toks.len() {
        if toks.get(pos) != Some(&Tok::Slash) {
            return Err(err());
        }
        let mut csign = 1i64;
        pos += 1;
        if toks.get(pos) == Some(&Tok::Minus) {
            csign = -1;
            pos += 1;
        }
        match toks.get(pos) {
            Some(Tok::Int(n)) => {
                c = csign * n;
                pos += 1;
            }
            _ => return Err(err()),
        }
    }
    if pos != toks.len() {
        return Err(err());
    }
    QuadExt::new(conv(a)?, conv(b)?, conv(c)?, conv(d)?)
}

fn merge_radicand(d: &mut i64, rad: i64, s: &str) -> Result<(), QuadError> {
    if *d == 0 || *d == rad {
        *d = rad;
        Ok(())
    } else {
        Err(QuadError::Parse(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = QuadExt<i128>;

    fn q(a: i128, b: i128, c: i128, d: i128) -> Q {
        Q::new(a, b, c, d).unwrap()
    }

    #[test]
    fn make_canonicalizes() {
        assert_eq!(q(1, 0, 2, 0).coeffs(), (1, 0, 2, 0));
        // golden slope (sqrt(5)-1)/2 is already canonical
        assert_eq!(q(-1, 1, 2, 5).coeffs(), (-1, 1, 2, 5));
        // gcd reduction
        assert_eq!(q(2, 2, 4, 5), q(1, 1, 2, 5));
        // sign normalization
        assert_eq!(q(1, 1, -2, 5), q(-1, -1, 2, 5));
        // d = 1 folds into the rational part, d with b = 0 is dropped
        assert_eq!(q(2, 3, 1, 1), Q::from_int(5));
        assert_eq!(q(7, 0, 3, 5).coeffs(), (7, 0, 3, 0));
    }

    #[test]
    fn make_rejects_bad_inputs() {
        assert_eq!(Q::new(1, 1, 0, 5), Err(QuadError::ZeroDenominator));
        assert!(matches!(Q::new(1, 1, 2, 8), Err(QuadError::NotSquareFree(_))));
        assert!(matches!(
            Q::new(1, 1, 2, -5),
            Err(QuadError::NegativeRadicand(_))
        ));
    }

    #[test]
    fn cmp_examples() {
        let half = q(1, 0, 2, 0);
        assert_eq!(half.try_cmp(&half).unwrap(), Ordering::Equal);
        // (sqrt(5)-1)/2 > 3/5
        let golden = q(-1, 1, 2, 5);
        let three_fifths = q(3, 0, 5, 0);
        assert_eq!(golden.try_cmp(&three_fifths).unwrap(), Ordering::Greater);
        // 0 < (3-sqrt(5))/2
        let conj = q(3, -1, 2, 5);
        assert_eq!(Q::zero().try_cmp(&conj).unwrap(), Ordering::Less);
    }

    #[test]
    fn cmp_rejects_mixed_radicands() {
        let a = q(0, 1, 1, 5);
        let b = q(0, 1, 1, 2);
        assert_eq!(a.try_cmp(&b), Err(QuadError::MixedRadicands));
    }

    #[test]
    fn floor_and_frac() {
        assert_eq!(q(3, 0, 2, 0).floor().unwrap(), 1);
        assert_eq!(q(3, 0, 2, 0).frac().unwrap(), q(1, 0, 2, 0));
        // (sqrt(5)-1)/2 is already in [0,1)
        let golden = q(-1, 1, 2, 5);
        assert_eq!(golden.floor().unwrap(), 0);
        assert_eq!(golden.frac().unwrap(), golden);
        // frac(sqrt(5)) = sqrt(5) - 2
        let s5 = Q::sqrt(5).unwrap();
        assert_eq!(s5.floor().unwrap(), 2);
        assert_eq!(s5.frac().unwrap(), q(-2, 1, 1, 5));
        // negative values floor downward
        assert_eq!(q(-1, 0, 2, 0).floor().unwrap(), -1);
        assert_eq!(golden.neg().floor().unwrap(), -1);
    }

    #[test]
    fn frac_plus_floor_reconstructs() {
        for (a, b, c, d) in [(7, 3, 2, 5), (-9, 2, 4, 3), (11, -5, 3, 2), (4, 0, 7, 0)] {
            let x = q(a, b, c, d);
            let back = x
                .frac()
                .unwrap()
                .try_add(&Q::from_int(x.floor().unwrap()))
                .unwrap();
            assert_eq!(back, x);
        }
    }

    #[test]
    fn rotate_examples() {
        let alpha = q(3, -1, 2, 5); // (3-sqrt(5))/2
        let p0 = CirclePoint::zero();
        assert_eq!(p0.rotate(&alpha).unwrap().value(), &alpha);
        // rotate(1/2, 1/2) wraps to 0
        let half = q(1, 0, 2, 0);
        let ph = CirclePoint::new(&half).unwrap();
        assert!(ph.rotate(&half).unwrap().is_zero());
        // rotate golden by golden: sqrt(5) - 2
        let golden = q(-1, 1, 2, 5);
        let pg = CirclePoint::new(&golden).unwrap();
        assert_eq!(pg.rotate(&golden).unwrap().value(), &q(-2, 1, 1, 5));
    }

    #[test]
    fn rotate_inverse() {
        let alpha = q(-1, 1, 2, 5);
        let inv = Q::one().try_sub(&alpha).unwrap();
        for k in 0..40i128 {
            let p = CirclePoint::new(&q(k, 3, 17, 5)).unwrap();
            let back = p.rotate(&alpha).unwrap().rotate(&inv).unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in [
            "(3-1*sqrt(5))/2",
            "(-1+1*sqrt(5))/2",
            "1/3",
            "0",
            "2",
            "(0+1*sqrt(2))/1",
        ] {
            let v: Q = s.parse().unwrap();
            let rt: Q = v.to_string().parse().unwrap();
            assert_eq!(v, rt, "{s}");
        }
        // tolerant forms
        assert_eq!("(3-sqrt(5))/2".parse::<Q>().unwrap(), q(3, -1, 2, 5));
        assert_eq!("sqrt(5)".parse::<Q>().unwrap(), q(0, 1, 1, 5));
        assert_eq!("sqrt(5)/2".parse::<Q>().unwrap(), q(0, 1, 2, 5));
        assert_eq!("-1/2".parse::<Q>().unwrap(), q(-1, 0, 2, 0));
        assert!("(1+2*sqrt(5)+sqrt(2))/3".parse::<Q>().is_err());
        assert!("foo".parse::<Q>().is_err());
    }

    #[test]
    fn approx_matches_exact_ordering() {
        // light deterministic sweep; the heavier randomized check lives in proptests
        let mut vals = Vec::new();
        for a in -6..=6 {
            for b in -3..=3 {
                for c in 1..=4 {
                    vals.push(q(a, b, c, 5));
                }
            }
        }
        for x in &vals {
            for y in &vals {
                let fx = x.to_f64();
                let fy = y.to_f64();
                if (fx - fy).abs() > 1e-6 {
                    let want = fx.partial_cmp(&fy).unwrap();
                    assert_eq!(x.try_cmp(y).unwrap(), want);
                }
            }
        }
    }
}
