//! Exact arithmetic on the circle group, written additively as Q/Z.
//!
//! An [`Angle`] is a fraction of a full turn kept in lowest terms with
//! `0 <= num < den`, so the N-torsion points are exactly the angles whose
//! denominator divides N, and the additive order of an angle is its
//! denominator. An [`Arc`] is an open interval mod 1 given by a start and a
//! positive length. Every operation and membership test here is exact
//! rational arithmetic; nothing ever rounds.

use crate::error::{Error, ParseError};
use crate::numtheory;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// A rational fraction of a full turn, reduced mod 1.
///
/// Invariants: `0 <= num < den`, `gcd(num, den) = 1`, and the zero angle is
/// stored as `0/1`. Construction through [`Angle::new`] enforces all three.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Angle {
    num: BigUint,
    den: BigUint,
}

impl Angle {
    /// Reduce `num/den` mod 1. Panics if `den` is zero.
    pub fn new(num: impl Into<BigUint>, den: impl Into<BigUint>) -> Self {
        let num = num.into();
        let den = den.into();
        assert!(!den.is_zero(), "angle denominator must be nonzero");
        let num = num % &den;
        let g = num.gcd(&den);
        Angle {
            num: &num / &g,
            den: &den / &g,
        }
    }

    pub fn zero() -> Self {
        Angle {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }

    /// Additive order: the least `n >= 1` with `n * self = 0`, i.e. the
    /// denominator.
    pub fn order(&self) -> &BigUint {
        &self.den
    }

    /// Group law: addition mod 1.
    pub fn add(&self, other: &Angle) -> Angle {
        Angle::new(
            &self.num * &other.den + &other.num * &self.den,
            &self.den * &other.den,
        )
    }

    /// Additive inverse mod 1.
    pub fn neg(&self) -> Angle {
        if self.num.is_zero() {
            return Angle::zero();
        }
        Angle {
            num: &self.den - &self.num,
            den: self.den.clone(),
        }
    }

    /// Multiplication by a nonnegative integer: `k * self` mod 1. This is
    /// what the k-th power map does to a coordinate.
    pub fn scale(&self, k: &BigUint) -> Angle {
        Angle::new(&self.num * k, self.den.clone())
    }

    /// The unique preimage of `self` under scaling by `p` that has the same
    /// order, i.e. `num * p^{-1} mod den` over the same denominator. Exists
    /// exactly when `gcd(p, den) = 1`.
    pub fn unscale(&self, p: u64) -> Result<Angle, Error> {
        let inv = numtheory::mod_inverse(&BigUint::from(p), &self.den).ok_or_else(|| {
            Error::NotCoprime {
                factor: p,
                order: self.den.clone(),
            }
        })?;
        // Multiplying by a unit mod den keeps the fraction reduced.
        Ok(Angle {
            num: (&self.num * inv) % &self.den,
            den: self.den.clone(),
        })
    }

    /// The angle as an exact rational in [0, 1).
    pub fn to_ratio(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.num.clone()),
            BigInt::from(self.den.clone()),
        )
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Angle {
    type Err = ParseError;

    /// Accepts `num/den` or a bare integer; the value is reduced mod 1.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        match s.split_once('/') {
            Some((num, den)) => {
                let n = parse_uint_token(num, 0)?;
                let d = parse_uint_token(den, num.len() + 1)?;
                if d.is_zero() {
                    return Err(ParseError::syntax(num.len() + 1, "a nonzero denominator"));
                }
                Ok(Angle::new(n, d))
            }
            None => Ok(Angle::new(parse_uint_token(s, 0)?, 1u32)),
        }
    }
}

pub(crate) fn parse_uint_token(s: &str, offset: usize) -> Result<BigUint, ParseError> {
    if s.is_empty() {
        return Err(ParseError::syntax(offset, "a decimal integer"));
    }
    if let Some(i) = s.find(|c: char| !c.is_ascii_digit()) {
        return Err(ParseError::syntax(offset + i, "a decimal digit"));
    }
    Ok(s.parse().expect("all-digit string parses"))
}

/// An open arc of the circle: the points strictly between `start` and
/// `start + length`, taken mod 1.
///
/// `start` lies in [0, 1) and `length` in (0, 1]; an arc of length 1 is the
/// whole circle minus its start point. Arcs may wrap through 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    start: BigRational,
    length: BigRational,
}

impl Arc {
    /// Normalizes `start` into [0, 1); rejects lengths outside (0, 1].
    pub fn new(start: BigRational, length: BigRational) -> Result<Self, Error> {
        if !length.is_positive() || length > BigRational::one() {
            return Err(Error::InvalidArcLength(ratio_string(&length)));
        }
        let start = &start - start.floor();
        Ok(Arc { start, length })
    }

    pub fn start(&self) -> &BigRational {
        &self.start
    }

    pub fn length(&self) -> &BigRational {
        &self.length
    }

    /// Strict membership of a rational point, taken mod 1.
    pub fn contains_ratio(&self, t: &BigRational) -> bool {
        let t = t - t.floor();
        let end = &self.start + &self.length;
        if t > self.start && t < end {
            return true;
        }
        // Wrapped arcs also cover [0, end - 1).
        end > BigRational::one() && t < end - BigRational::one()
    }

    pub fn contains(&self, angle: &Angle) -> bool {
        self.contains_ratio(&angle.to_ratio())
    }

    /// One connected component of the preimage of this arc under the
    /// `sheets`-fold covering `t -> sheets * t`: component `which` is
    /// `((start + which) / sheets, length / sheets)`.
    pub fn preimage_component(&self, sheets: &BigUint, which: &BigUint) -> Result<Arc, Error> {
        if which >= sheets {
            return Err(Error::IndexOutOfRange {
                index: which.clone(),
                sheets: sheets.clone(),
            });
        }
        let c = BigRational::from_integer(BigInt::from(sheets.clone()));
        let w = BigRational::from_integer(BigInt::from(which.clone()));
        Arc::new((&self.start + w) / &c, &self.length / &c)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}+{}",
            ratio_string(&self.start),
            ratio_string(&self.length)
        )
    }
}

impl FromStr for Arc {
    type Err = ParseError;

    /// Accepts `start+length`, both exact nonnegative rationals
    /// (`a/b` or bare integers), e.g. `1/10+1/10`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let (start_text, length_text) = s
            .split_once('+')
            .ok_or_else(|| ParseError::syntax(s.len(), "'+' between arc start and length"))?;
        let start = parse_ratio_token(start_text, 0)?;
        let length = parse_ratio_token(length_text, start_text.len() + 1)?;
        Arc::new(start, length).map_err(|_| {
            ParseError::syntax(start_text.len() + 1, "an arc length in (0, 1]")
        })
    }
}

fn parse_ratio_token(s: &str, offset: usize) -> Result<BigRational, ParseError> {
    match s.split_once('/') {
        Some((num, den)) => {
            let n = parse_uint_token(num, offset)?;
            let d = parse_uint_token(den, offset + num.len() + 1)?;
            if d.is_zero() {
                return Err(ParseError::syntax(
                    offset + num.len() + 1,
                    "a nonzero denominator",
                ));
            }
            Ok(BigRational::new(BigInt::from(n), BigInt::from(d)))
        }
        None => Ok(BigRational::from_integer(BigInt::from(parse_uint_token(
            s, offset,
        )?))),
    }
}

pub(crate) fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// All N-torsion points (angles `a/N`, reduced or not) strictly inside the
/// arc, in increasing order of their value in [0, 1).
pub fn roots_of_unity_in_arc(n: &BigUint, arc: &Arc) -> Vec<Angle> {
    assert!(!n.is_zero(), "torsion order must be at least 1");
    let n_int = BigInt::from(n.clone());
    let end = arc.start() + arc.length();
    let one = BigRational::one();
    let mut out = Vec::new();
    if end > one {
        // Wrapped: the arc covers [0, end - 1) then (start, 1). Emitting the
        // low segment first keeps the values increasing.
        let hi = (&end - &one) * BigRational::from_integer(n_int.clone());
        push_torsion_range(&mut out, n, BigInt::zero(), strict_upper(&hi));
        let lo = arc.start() * BigRational::from_integer(n_int.clone());
        push_torsion_range(&mut out, n, strict_lower(&lo), &n_int - 1);
    } else {
        let lo = arc.start() * BigRational::from_integer(n_int.clone());
        let hi = &end * BigRational::from_integer(n_int);
        push_torsion_range(&mut out, n, strict_lower(&lo), strict_upper(&hi));
    }
    out
}

/// Smallest integer strictly greater than `r`.
fn strict_lower(r: &BigRational) -> BigInt {
    r.floor().to_integer() + 1
}

/// Largest integer strictly smaller than `r`.
fn strict_upper(r: &BigRational) -> BigInt {
    r.ceil().to_integer() - 1
}

fn push_torsion_range(out: &mut Vec<Angle>, n: &BigUint, lo: BigInt, hi: BigInt) {
    let mut a = lo;
    while a <= hi {
        let num = a
            .to_biguint()
            .expect("torsion indices in an arc are nonnegative");
        out.push(Angle::new(num, n.clone()));
        a += 1;
    }
}
