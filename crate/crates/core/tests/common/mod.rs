//! Fixtures shared by the integration suites.

#![allow(dead_code)]

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use solenoid_core::{Angle, Arc, PrimeSeqSpec, TruncatedPoint};

/// A spread of sequence shapes: pure cycles, prefixed cycles, and universal
/// tails with and without exclusions.
pub fn spec_grid() -> Vec<PrimeSeqSpec> {
    [
        "cycle=[2]",
        "cycle=[3]",
        "cycle=[2,3]",
        "prefix=[5];cycle=[2]",
        "prefix=[3];cycle=[2]",
        "universal",
        "universal=exclude[2]",
        "universal=exclude[2,3]",
    ]
    .iter()
    .map(|s| s.parse().expect("grid specs parse"))
    .collect()
}

/// A random compatible point: a random torsion angle at the deepest level,
/// scaled down level by level through the bonding primes.
pub fn random_point(seq: &PrimeSeqSpec, depth: usize, rng: &mut ChaCha8Rng) -> TruncatedPoint {
    assert!(depth >= 1);
    let den = rng.gen_range(1..=600u64);
    let num = rng.gen_range(0..den);
    let mut coords = vec![Angle::zero(); depth];
    coords[depth - 1] = Angle::new(num, den);
    for n in (1..depth).rev() {
        let p = seq.nth_prime(n as u64);
        coords[n - 1] = coords[n].scale(&BigUint::from(p));
    }
    TruncatedPoint::new(seq.clone(), coords).expect("downward scaling is always compatible")
}

/// A random open arc with length at least 1/1000, paired with a level in
/// 1..=5 for witness hunts.
pub fn random_arc(rng: &mut ChaCha8Rng) -> (Arc, usize) {
    let level = rng.gen_range(1..=5usize);
    let start = BigRational::new(rng.gen_range(0..1000u64).into(), 1000.into());
    let length = BigRational::new(rng.gen_range(1..=1000u64).into(), 1000.into());
    (
        Arc::new(start, length).expect("lengths drawn from (0, 1]"),
        level,
    )
}

/// Whether applying the k-th power map `t` times fixes `point`, decided
/// arithmetically: every coordinate a/d must satisfy (k^t - 1) a = 0 mod d.
pub fn potency_power_fixes(point: &TruncatedPoint, k: u64, t: &BigUint) -> bool {
    point.coords().iter().all(|a| {
        let d = a.order();
        if d.is_one() {
            return true;
        }
        let kt = BigUint::from(k).modpow(t, d);
        (((kt + d - BigUint::one()) % d) * a.num() % d).is_zero()
    })
}
