//! Shared fixtures for the benchmark suite.

use solenoid_core::PrimeSeqSpec;

/// A spread of sequence shapes the benchmarks exercise.
pub fn sample_specs() -> Vec<(&'static str, PrimeSeqSpec)> {
    [
        ("dyadic", "cycle=[2]"),
        ("six-adic", "cycle=[2,3]"),
        ("prefixed", "prefix=[5,7,11];cycle=[2]"),
        ("universal", "universal"),
        ("universal-odd", "universal=exclude[2]"),
    ]
    .into_iter()
    .map(|(name, text)| (name, text.parse().expect("fixture specs parse")))
    .collect()
}
