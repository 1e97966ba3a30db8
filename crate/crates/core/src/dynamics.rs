//! Periodic points of the power maps: counting, classification, and
//! explicit construction of periodic points inside a prescribed arc.
//!
//! A point is k-periodic with period m when the k-th power map applied m
//! times fixes it. On truncated points everything is torsion, so periodicity
//! questions reduce to modular arithmetic on coordinate orders: x has period
//! dividing m exactly when (k^m - 1) x = 0.

use crate::circle::{roots_of_unity_in_arc, Angle, Arc};
use crate::covering::{degree, potency};
use crate::error::Error;
use crate::numtheory;
use crate::primeseq::{PrimeSeqSpec, SClassification, Tail};
use crate::solenoid::TruncatedPoint;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::HashMap;

/// Euler's totient of `n >= 1`.
pub fn euler_totient(n: u64) -> u64 {
    assert!(n >= 1, "the totient is defined for n >= 1");
    let mut result = n;
    for (p, _) in numtheory::factorize(n) {
        result = result / p * (p - 1);
    }
    result
}

/// The least `e >= 1` with `k^e = 1 (mod n)`; requires `gcd(k, n) = 1`.
pub fn multiplicative_order(k: u64, n: u64) -> Result<u64, Error> {
    assert!(n >= 1, "the modulus must be positive");
    if n == 1 {
        return Ok(1);
    }
    let g = {
        use num_integer::Integer;
        (k % n).gcd(&n)
    };
    if g != 1 {
        return Err(Error::NotCoprime {
            factor: g,
            order: BigUint::from(n),
        });
    }
    // The order divides the totient; strip each prime of the totient while
    // the power still maps to 1.
    let mut e = euler_totient(n);
    for (r, _) in numtheory::factorize(e) {
        while e % r == 0 && numtheory::pow_mod(k % n, e / r, n) == 1 {
            e /= r;
        }
    }
    Ok(e)
}

/// The multiplicative order of `k` mod `q^m` for prime `q` not dividing `k`.
/// The totient `q^(m-1) (q - 1)` may exceed machine words, so the descent
/// runs on big integers.
fn order_mod_prime_power(k: u64, q: u64, m: u32) -> BigUint {
    if m == 0 {
        return BigUint::one();
    }
    let modulus = BigUint::from(q).pow(m);
    let base = BigUint::from(k) % &modulus;
    let mut e = BigUint::from(q).pow(m - 1) * BigUint::from(q - 1);
    let mut totient_primes: Vec<u64> = numtheory::factorize(q - 1)
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    if m > 1 {
        totient_primes.push(q);
    }
    for r in totient_primes {
        let r = BigUint::from(r);
        while (&e % &r).is_zero() {
            let candidate = &e / &r;
            if base.modpow(&candidate, &modulus).is_one() {
                e = candidate;
            } else {
                break;
            }
        }
    }
    e
}

/// What the set of k-periodic points looks like.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeriodicClass {
    /// k = 1: the map is the identity, everything is fixed.
    AllPoints,
    /// The identity is the only periodic point. `blocking` lists the primes
    /// that occur finitely often yet all divide k (empty when no prime
    /// occurs finitely often at all, which forces the same conclusion).
    OnlyIdentity { blocking: Vec<u64> },
    /// Periodic points are dense: every arc at every level meets one. `q`
    /// is the least usable prime — occurring finitely often and coprime to
    /// k — whose power torsion realizes them.
    Dense { q: u64 },
}

/// Classifies the k-periodic points over `seq`.
///
/// Nontrivial periodic points come from q-power torsion for primes q that
/// occur finitely often in the sequence and do not divide k; they are dense
/// as soon as one such prime exists, and absent otherwise.
pub fn classify_periodic(seq: &PrimeSeqSpec, k: &BigUint) -> PeriodicClass {
    assert!(!k.is_zero(), "power maps are indexed by k >= 1");
    if k.is_one() {
        return PeriodicClass::AllPoints;
    }
    match seq.s_classification() {
        SClassification::Empty => PeriodicClass::OnlyIdentity {
            blocking: Vec::new(),
        },
        SClassification::Infinite => {
            let support: std::collections::BTreeSet<u64> = match seq.tail() {
                Tail::Cycle(cycle) => cycle.iter().copied().collect(),
                Tail::Universal { .. } => unreachable!("universal tails have finite complement"),
            };
            // Infinitely many primes avoid the support, and k has finitely
            // many divisors, so the scan terminates.
            let mut q = 2u64;
            loop {
                if numtheory::is_prime(q)
                    && !support.contains(&q)
                    && !(k % BigUint::from(q)).is_zero()
                {
                    return PeriodicClass::Dense { q };
                }
                q += 1;
            }
        }
        SClassification::FiniteNonempty(excluded) => {
            match excluded
                .iter()
                .find(|&&q| !(k % BigUint::from(q)).is_zero())
            {
                Some(&q) => PeriodicClass::Dense { q },
                None => PeriodicClass::OnlyIdentity {
                    blocking: excluded.into_iter().collect(),
                },
            }
        }
    }
}

/// The number of points of period dividing `m` under the k-th power map:
/// the fiber cardinality of the (k^m - 1)-th power map over the identity.
pub fn count_periodic(seq: &PrimeSeqSpec, k: u64, m: u32) -> BigUint {
    assert!(k >= 2, "counting is for genuinely expanding maps");
    assert!(m >= 1, "periods are at least 1");
    let torsion = BigUint::from(k).pow(m) - BigUint::one();
    degree(seq, &torsion)
}

/// An explicitly constructed periodic point lying in a prescribed arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicWitness {
    /// The periodic point itself.
    pub point: TruncatedPoint,
    /// The torsion prime used.
    pub q: u64,
    /// The witness is q^m-torsion at its root level.
    pub m: u32,
    /// A period guaranteed by construction: q^(m-1) (q - 1).
    pub claimed_period: BigUint,
    /// The exact least period: the order of k mod the point's actual order.
    pub least_period: BigUint,
    /// The level at which the arc constraint lives.
    pub arc_level: usize,
    /// The arc the point's level-`arc_level` coordinate lies in.
    pub arc: Arc,
}

impl Serialize for PeriodicWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut state = serializer.serialize_struct("PeriodicWitness", 7)?;
        state.serialize_field("q", &self.q)?;
        state.serialize_field("m", &self.m)?;
        state.serialize_field("claimed_period", &self.claimed_period.to_string())?;
        state.serialize_field("least_period", &self.least_period.to_string())?;
        state.serialize_field("arc_level", &self.arc_level)?;
        state.serialize_field("arc", &self.arc.to_string())?;
        state.serialize_field("point", &self.point)?;
        state.end()
    }
}

/// Constructs a k-periodic point whose level-`arc_level` coordinate lies in
/// `arc`, using q-power torsion for a prime `q` that occurs finitely often
/// in the sequence and does not divide k.
///
/// The construction hunts at a level `n` deep enough that (a) the arc pulls
/// back to a concrete window and (b) no occurrence of `q` lies beyond it.
/// The window has positive length, so some power q^m has a torsion point
/// inside it — the least such m is used, with the first root in the window.
/// Dividing by later bonding primes (all coprime to q) extends the root to
/// any depth, and multiplying climbs back to level 1. Periodicity is then
/// arithmetic: the point's order is a power of q coprime to k, so iterating
/// multiplication by k returns to start within the totient.
pub fn construct_periodic_witness(
    seq: &PrimeSeqSpec,
    k: u64,
    arc_level: usize,
    arc: &Arc,
    q: u64,
    min_depth: Option<usize>,
) -> Result<PeriodicWitness, Error> {
    assert!(k >= 2, "witnesses are for genuinely expanding maps");
    assert!(arc_level >= 1, "levels are 1-based");
    if !numtheory::is_prime(q) {
        return Err(Error::NotPrime { value: q });
    }
    if seq.occurs_infinitely_often(q)? {
        return Err(Error::QNotUsable {
            q,
            reason: "it occurs infinitely often in the sequence".into(),
        });
    }
    if k % q == 0 {
        return Err(Error::QNotUsable {
            q,
            reason: "it divides k".into(),
        });
    }

    // Every occurrence of q sits in the prefix; hunt past the last one.
    let last_q_position = seq
        .prefix()
        .iter()
        .rposition(|&p| p == q)
        .map(|i| i + 1)
        .unwrap_or(0);
    let n = arc_level.max(last_q_position + 1);

    // The component of the arc's preimage at level n that bonds back into
    // the arc: divide through by the primes between the two levels.
    let mut c = BigUint::one();
    for j in arc_level..n {
        c *= BigUint::from(seq.nth_prime(j as u64));
    }
    let window = arc.preimage_component(&c, &BigUint::zero())?;

    // Minimal q-power torsion in the window; the window is open with
    // positive length, so q^m-torsion lands inside once q^m exceeds the
    // reciprocal of that length.
    let mut m = 1u32;
    let root = loop {
        let mut roots = roots_of_unity_in_arc(&BigUint::from(q).pow(m), &window);
        if !roots.is_empty() {
            break roots.remove(0);
        }
        m += 1;
    };

    let depth = (n + 3).max(min_depth.unwrap_or(0));
    let mut coords = vec![Angle::zero(); depth];
    coords[n - 1] = root.clone();
    for j in n + 1..=depth {
        let p = seq.nth_prime(j as u64 - 1);
        coords[j - 1] = coords[j - 2]
            .unscale(p)
            .expect("no bonding prime beyond the hunt level equals q");
    }
    for j in (1..n).rev() {
        let p = seq.nth_prime(j as u64);
        coords[j - 1] = coords[j].scale(&BigUint::from(p));
    }
    let point = TruncatedPoint::from_parts_unchecked(seq.clone(), coords);
    debug_assert!(arc.contains(point.project(arc_level).expect("depth >= arc_level")));

    // The root may have reduced to a smaller q-power (or to the identity if
    // the arc wraps through 0); the least period honours the actual order.
    let mut actual_m = 0u32;
    let mut d = root.den().clone();
    let qq = BigUint::from(q);
    while (&d % &qq).is_zero() {
        d /= &qq;
        actual_m += 1;
    }
    debug_assert!(d.is_one());

    Ok(PeriodicWitness {
        point,
        q,
        m,
        claimed_period: BigUint::from(q).pow(m - 1) * BigUint::from(q - 1),
        least_period: order_mod_prime_power(k, q, actual_m),
        arc_level,
        arc: arc.clone(),
    })
}

/// Outcome of iterating the k-th power map from a starting point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitResult {
    /// The orbit entered a cycle: `pre_period` steps of tail, then a cycle
    /// of length `period`.
    Found { pre_period: u64, period: u64 },
    /// No state repeated within the step budget.
    NotFoundWithin(u64),
}

/// Iterates the k-th power map from `point`, reporting the eventual cycle
/// structure. Truncated points are torsion, so a repeat always exists;
/// `max_steps` bounds the search anyway.
pub fn orbit(point: &TruncatedPoint, k: &BigUint, max_steps: u64) -> OrbitResult {
    let mut seen: HashMap<Vec<Angle>, u64> = HashMap::new();
    let mut current = point.clone();
    for step in 0..=max_steps {
        if let Some(&first) = seen.get(current.coords()) {
            return OrbitResult::Found {
                pre_period: first,
                period: step - first,
            };
        }
        seen.insert(current.coords().to_vec(), step);
        current = potency(&current, k);
    }
    OrbitResult::NotFoundWithin(max_steps)
}
