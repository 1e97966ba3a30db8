//! Power maps on truncated points: their degrees and fibers.
//!
//! The k-th power map acts coordinatewise, multiplying every angle by k. Its
//! degree — the number of preimages of any point, stably in the depth — is
//! controlled entirely by how the prime factors of k interact with the
//! primes that occur infinitely often in the sequence: factors that recur in
//! the sequence can be absorbed by passing to deeper levels, while factors
//! that stop occurring contribute sheets permanently.

use crate::circle::Angle;
use crate::error::Error;
use crate::numtheory;
use crate::primeseq::{PrimeSeqSpec, Tail};
use crate::solenoid::TruncatedPoint;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

/// The k-th power map applied coordinatewise.
pub fn potency(point: &TruncatedPoint, k: &BigUint) -> TruncatedPoint {
    assert!(!k.is_zero(), "power maps are indexed by k >= 1");
    let coords = point.coords().iter().map(|a| a.scale(k)).collect();
    TruncatedPoint::from_parts_unchecked(point.seq().clone(), coords)
}

/// The stable number of sheets of the k-th power map over `seq`.
///
/// No factorization of `k` is needed: for a cycle tail, every prime in the
/// cycle's support is absorbable, so the degree is what remains of `k` after
/// dividing out all of them; for a universal tail, only the excluded primes
/// contribute, so the degree is the product of their full powers in `k`.
pub fn degree(seq: &PrimeSeqSpec, k: &BigUint) -> BigUint {
    assert!(!k.is_zero(), "power maps are indexed by k >= 1");
    match seq.tail() {
        Tail::Cycle(cycle) => {
            let mut rest = k.clone();
            let support: Vec<BigUint> = {
                let mut s: Vec<u64> = cycle.clone();
                s.sort_unstable();
                s.dedup();
                s.into_iter().map(BigUint::from).collect()
            };
            loop {
                let mut divided = false;
                for p in &support {
                    while (&rest % p).is_zero() {
                        rest /= p;
                        divided = true;
                    }
                }
                if !divided {
                    break;
                }
            }
            rest
        }
        Tail::Universal { excluded, .. } => {
            let mut blocked = BigUint::one();
            for &q in excluded {
                let q = BigUint::from(q);
                let mut rest = k.clone();
                while (&rest % &q).is_zero() {
                    rest /= &q;
                    blocked *= &q;
                }
            }
            blocked
        }
    }
}

/// Whether the k-th power map is a covering with the full k sheets — i.e.
/// none of k is absorbed, which happens exactly when no prime divisor of k
/// recurs forever in the sequence.
pub fn admits_k_fold(seq: &PrimeSeqSpec, k: &BigUint) -> bool {
    degree(seq, k) == *k
}

/// Whether the k-th power map is invertible (degree exactly 1).
pub fn is_homeomorphism(seq: &PrimeSeqSpec, k: &BigUint) -> bool {
    degree(seq, k).is_one()
}

/// The first level after which every later bonding prime is coprime to the
/// degree of the k-th power map, whatever k is — i.e. the level by which
/// fibers have stabilized. For a cycle tail the degree can share factors
/// with any prime outside the cycle support, which stops appearing after
/// the prefix plus one full period of absorption; the extra cycle length ×
/// max-exponent margin covers powers of the cycle primes still being
/// divided out of k.
pub fn oracle_min_depth(seq: &PrimeSeqSpec, k: &BigUint) -> usize {
    match seq.tail() {
        Tail::Cycle(cycle) => {
            // Exponent bound: dividing by 2 at least each step, k has at
            // most log2(k) prime factors with multiplicity.
            let e_max = k.bits().max(1) as usize;
            seq.prefix().len() + cycle.len() * e_max + 1
        }
        Tail::Universal { .. } => seq.prefix().len() + 1,
    }
}

/// The first 1-based level `n` such that every bonding prime beyond `n` is
/// coprime to `s`: past the prefix the tail behaviour is uniform, so only
/// prefix entries dividing `s` can delay stabilization.
fn stabilization_level(seq: &PrimeSeqSpec, s: &BigUint) -> usize {
    let mut level = 1;
    for (i, &p) in seq.prefix().iter().enumerate() {
        if (s % BigUint::from(p)).is_zero() {
            level = i + 2;
        }
    }
    level
}

/// A fiber of the k-th power map over the identity, at a fixed depth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    /// Map index, stringified to survive arbitrary magnitudes.
    pub k: String,
    /// Number of sheets, stringified likewise.
    pub degree: String,
    /// Level by which the fiber has its stable size.
    pub stabilization_level: usize,
    /// The fiber, sorted lexicographically by coordinates. It forms a
    /// cyclic group of order `degree` under coordinatewise addition.
    pub representatives: Vec<TruncatedPoint>,
}

/// Computes the fiber of the k-th power map over the identity at `depth`,
/// by exhibiting a generator and taking its multiples.
///
/// The generator is built at the stabilization level, where an angle of
/// order `degree` first persists: deeper coordinates divide by later bonding
/// primes (all coprime to the degree there, so the division is exact), and
/// shallower ones multiply back down.
pub fn fiber_over_identity(
    seq: &PrimeSeqSpec,
    k: &BigUint,
    depth: usize,
) -> Result<FiberReport, Error> {
    if depth == 0 {
        return Err(Error::ZeroDepth);
    }
    let s = degree(seq, k);
    let n0 = stabilization_level(seq, &s);
    if depth < n0 {
        return Err(Error::DepthTooShallow {
            depth,
            required: n0,
        });
    }

    // Generator coordinates: 1/s at level n0, divided back at deeper levels,
    // multiplied forward at shallower ones.
    let mut coords = vec![Angle::zero(); depth];
    coords[n0 - 1] = Angle::new(BigUint::one(), s.clone());
    for n in n0 + 1..=depth {
        let p = seq.nth_prime(n as u64 - 1);
        coords[n - 1] = coords[n - 2]
            .unscale(p)
            .expect("beyond the stabilization level every bonding prime is coprime to the degree");
    }
    for n in (1..n0).rev() {
        let p = seq.nth_prime(n as u64);
        coords[n - 1] = coords[n].scale(&BigUint::from(p));
    }
    let generator = TruncatedPoint::from_parts_unchecked(seq.clone(), coords);

    let mut representatives = Vec::new();
    let mut current = TruncatedPoint::identity(seq.clone(), depth)?;
    let mut j = BigUint::zero();
    while j < s {
        representatives.push(current.clone());
        current = current
            .multiply(&generator)
            .expect("multiples of the generator share its sequence and depth");
        j += BigUint::one();
    }
    representatives.sort_by(|a, b| a.coords().cmp(b.coords()));

    Ok(FiberReport {
        k: k.to_string(),
        degree: s.to_string(),
        stabilization_level: n0,
        representatives,
    })
}

/// The stabilized gcd of products of consecutive bonding primes with `k`:
/// the largest factor of `k` the sequence can absorb from `start_level` on.
/// The walk stops once every absorbable prime power in `k` has been seen,
/// which a finite window suffices for in both tail shapes.
fn stable_image_factor(seq: &PrimeSeqSpec, k: u64, start_level: usize) -> u64 {
    if k == 1 {
        return 1;
    }
    let factors = numtheory::factorize(k);
    let window = match seq.tail() {
        Tail::Cycle(cycle) => {
            let e_max = factors.iter().map(|&(_, e)| e).max().unwrap_or(1) as usize;
            cycle.len() * e_max
        }
        Tail::Universal { .. } => {
            // Count, for each prime divisor of k that the tail repeats, how
            // many occurrences are needed; the enumeration revisits every
            // admissible prime each block, so walking until each target
            // count is hit terminates.
            let needed: Vec<(u64, u32)> = factors
                .iter()
                .copied()
                .filter(|&(q, _)| seq.occurs_infinitely_often(q).unwrap_or(false))
                .collect();
            if needed.is_empty() {
                0
            } else {
                let mut remaining: std::collections::BTreeMap<u64, u32> =
                    needed.into_iter().collect();
                let mut window = 0usize;
                for term in seq.terms().skip(start_level - 1) {
                    if remaining.is_empty() {
                        break;
                    }
                    window += 1;
                    if let Some(count) = remaining.get_mut(&term) {
                        *count -= 1;
                        if *count == 0 {
                            remaining.remove(&term);
                        }
                    }
                }
                window
            }
        }
    };
    let mut absorbed = 1u64;
    let mut rest = k;
    for term in seq.terms().skip(start_level - 1).take(window) {
        let g = numtheory_gcd(rest, term);
        absorbed *= g;
        rest /= g;
        if rest == 1 {
            break;
        }
    }
    absorbed
}

fn numtheory_gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Computes the same fiber as [`fiber_over_identity`] by a different route:
/// enumerate the k-torsion angles at the deepest level whose towers extend
/// consistently to that depth, and build each tuple downward by scaling.
///
/// An angle a/k at the deepest level is extendable exactly when a is a
/// multiple of the absorbable part of k from that level on, so the fiber
/// size is k divided by that factor — which must equal the degree.
pub fn fiber_oracle(seq: &PrimeSeqSpec, k: u64, depth: usize) -> Result<FiberReport, Error> {
    assert!(k >= 1, "power maps are indexed by k >= 1");
    if depth == 0 {
        return Err(Error::ZeroDepth);
    }
    let required = oracle_min_depth(seq, &BigUint::from(k));
    if depth < required {
        return Err(Error::DepthTooShallow {
            depth,
            required,
        });
    }

    let absorbable = stable_image_factor(seq, k, depth);
    let sheets = k / absorbable;

    let mut representatives = Vec::new();
    for a in 0..k {
        if a % absorbable != 0 {
            continue;
        }
        let mut coords = vec![Angle::zero(); depth];
        coords[depth - 1] = Angle::new(BigUint::from(a), BigUint::from(k));
        for n in (1..depth).rev() {
            let p = seq.nth_prime(n as u64);
            coords[n - 1] = coords[n].scale(&BigUint::from(p));
        }
        representatives.push(TruncatedPoint::from_parts_unchecked(seq.clone(), coords));
    }
    debug_assert_eq!(representatives.len(), sheets as usize);
    representatives.sort_by(|a, b| a.coords().cmp(b.coords()));

    let s = BigUint::from(sheets);
    debug_assert_eq!(s, degree(seq, &BigUint::from(k)));
    Ok(FiberReport {
        k: k.to_string(),
        degree: s.to_string(),
        stabilization_level: stabilization_level(seq, &s),
        representatives,
    })
}

/// Convenience accessor used by callers that only need the count.
pub fn fiber_cardinality(seq: &PrimeSeqSpec, k: &BigUint) -> BigUint {
    degree(seq, k)
}

impl FiberReport {
    pub fn degree_value(&self) -> BigUint {
        self.degree
            .parse()
            .expect("degree strings are produced from BigUint values")
    }

    pub fn k_value(&self) -> BigUint {
        self.k
            .parse()
            .expect("k strings are produced from BigUint values")
    }

    /// The fiber size as usize when it fits.
    pub fn cardinality(&self) -> Option<usize> {
        self.degree_value().to_usize()
    }
}
