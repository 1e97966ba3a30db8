//! The group of rationals attached to a prime sequence: fractions whose
//! denominators only use primes the sequence repeats forever, each to any
//! power, together with primes it uses finitely often, bounded by how often.
//! It is an additive subgroup of the rationals (denominators only shrink
//! under addition), though generally not closed under multiplication — a
//! prefix occurrence can be spent once, not squared.
//!
//! Membership is what makes division behave: dividing a member by a prime
//! `q` stays in the group exactly when `q` keeps occurring, which is also
//! what drives the classification of periodic points elsewhere.

use crate::error::Error;
use crate::numtheory;
use crate::primeseq::{PrimeSeqSpec, Tail};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// Whether division by the prime `q` is unrestricted: every member of the
/// group attached to `seq` stays a member after dividing by `q`. That holds
/// exactly when `q` occurs infinitely often in the sequence — each division
/// spends one occurrence, and only an infinite supply never runs out.
pub fn is_q_divisible(seq: &PrimeSeqSpec, q: u64) -> Result<bool, Error> {
    seq.occurs_infinitely_often(q)
}

/// An exact rational carried with no reference sequence; membership in a
/// particular sequence's group is a separate query.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PadicRational(BigRational);

impl PadicRational {
    pub fn new(numer: BigInt, denom: BigInt) -> Option<Self> {
        if denom.is_zero() {
            return None;
        }
        Some(PadicRational(BigRational::new(numer, denom)))
    }

    pub fn from_ratio(r: BigRational) -> Self {
        PadicRational(r)
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    /// Whether this rational lies in the group attached to `seq`.
    ///
    /// Write the reduced denominator as a product of prime powers. Powers of
    /// primes the sequence repeats forever are always absorbable. A prime
    /// occurring finitely often is absorbable only up to its number of
    /// occurrences, all of which sit in the prefix (for a universal tail an
    /// excluded prime may also appear nowhere at all). No factorization of
    /// the denominator is needed: strip the infinitely-recurring primes
    /// wholesale, then divide by the finitely-occurring ones as often as
    /// they are available; membership means nothing is left.
    pub fn is_member(&self, seq: &PrimeSeqSpec) -> bool {
        let mut den = self.0.denom().abs().to_biguint().expect("|d| >= 0");
        // Step 1: remove every prime that occurs infinitely often.
        match seq.tail() {
            Tail::Cycle(cycle) => {
                let mut support: Vec<u64> = cycle.clone();
                support.sort_unstable();
                support.dedup();
                loop {
                    let mut divided = false;
                    for &p in &support {
                        let p = BigUint::from(p);
                        while (&den % &p).is_zero() {
                            den /= &p;
                            divided = true;
                        }
                    }
                    if !divided {
                        break;
                    }
                }
            }
            Tail::Universal { excluded, .. } => {
                // Every prime outside the excluded set recurs forever; the
                // leftover after stripping them is exactly the excluded
                // part of the denominator.
                let mut blocked = BigUint::one();
                for &q in excluded {
                    let q = BigUint::from(q);
                    while (&den % &q).is_zero() {
                        den /= &q;
                        blocked *= &q;
                    }
                }
                den = blocked;
            }
        }
        // Step 2: spend prefix occurrences on what remains.
        for &p in seq.prefix() {
            let p = BigUint::from(p);
            if (&den % &p).is_zero() {
                den /= &p;
            }
        }
        den.is_one()
    }

    /// Divides by the prime `q` when the quotient remains a member of the
    /// group; `Ok(None)` reports a sound refusal. The input itself must be
    /// a member.
    pub fn divide_witness(
        &self,
        seq: &PrimeSeqSpec,
        q: u64,
    ) -> Result<Option<PadicRational>, Error> {
        if !numtheory::is_prime(q) {
            return Err(Error::NotPrime { value: q });
        }
        if !self.is_member(seq) {
            return Err(Error::NotMember {
                value: self.to_string(),
            });
        }
        let quotient = PadicRational(&self.0 / BigRational::from(BigInt::from(q)));
        if quotient.is_member(seq) {
            Ok(Some(quotient))
        } else {
            Ok(None)
        }
    }
}

impl fmt::Display for PadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for PadicRational {
    type Err = crate::error::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (numer_text, denom_text) = match s.find('/') {
            Some(i) => (&s[..i], &s[i + 1..]),
            None => (s, "1"),
        };
        let numer: BigInt = numer_text
            .parse()
            .map_err(|_| crate::error::ParseError::syntax(0, "an integer numerator"))?;
        let denom: BigInt = denom_text.parse().map_err(|_| {
            crate::error::ParseError::syntax(numer_text.len() + 1, "an integer denominator")
        })?;
        if denom.is_zero() {
            return Err(crate::error::ParseError::syntax(
                numer_text.len() + 1,
                "a nonzero denominator",
            ));
        }
        Ok(PadicRational(BigRational::new(numer, denom)))
    }
}
