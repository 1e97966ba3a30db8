//! Exact arithmetic for truncated solenoids.
//!
//! A prime sequence P = (p_1, p_2, ...) defines a tower of circles, each
//! mapped onto the previous by raising to the p-th power. This crate works
//! with the finite truncations of that tower: vectors of torsion angles
//! compatible under the bonding maps, represented exactly as reduced
//! fractions of a turn. On top of that sit the k-th power maps, whose sheet
//! counts, fibers, and periodic points are all computable from a finite
//! description of the sequence — a prefix plus either a repeating cycle or
//! a universal enumeration hitting every admissible prime forever.
//!
//! The main entry points:
//!
//! - [`PrimeSeqSpec`]: finite descriptions of prime sequences, their text
//!   grammar, shifts, and the equivalence that ignores finite differences.
//! - [`Angle`], [`Arc`], [`roots_of_unity_in_arc`]: exact circle arithmetic.
//! - [`TruncatedPoint`], [`bonding`]: compatible coordinate vectors and the
//!   transition maps between levels.
//! - [`degree`], [`fiber_over_identity`], [`fiber_oracle`]: sheet counts and
//!   fibers of the power maps, by two independent routes.
//! - [`PadicRational`], [`is_q_divisible`]: the fraction group a sequence
//!   can absorb, and which primes divide it without limit.
//! - [`classify_periodic`], [`count_periodic`],
//!   [`construct_periodic_witness`], [`orbit`]: the dynamics of the power
//!   maps.

#![forbid(unsafe_code)]

pub mod circle;
pub mod covering;
pub mod dynamics;
pub mod error;
pub mod numtheory;
pub mod padic;
pub mod primeseq;
pub mod solenoid;

pub use circle::{roots_of_unity_in_arc, Angle, Arc};
pub use covering::{
    admits_k_fold, degree, fiber_cardinality, fiber_oracle, fiber_over_identity,
    is_homeomorphism, oracle_min_depth, potency, FiberReport,
};
pub use dynamics::{
    classify_periodic, construct_periodic_witness, count_periodic, euler_totient,
    multiplicative_order, orbit, OrbitResult, PeriodicClass, PeriodicWitness,
};
pub use error::{Error, ParseError};
pub use padic::{is_q_divisible, PadicRational};
pub use primeseq::{InfOccurSet, PrimeSeqSpec, SClassification, Tail};
pub use solenoid::{bonding, TruncatedPoint};
