//! Truncated points: finite vectors of circle coordinates compatible under
//! the bonding maps of a prime sequence.
//!
//! A depth-`d` truncated point over a sequence P = (p_1, p_2, ...) is a
//! vector (x_1, ..., x_d) of torsion angles with x_n = p_n · x_{n+1} for
//! every n < d: the n-th bonding prime couples levels n and n + 1.
//! Coordinatewise addition makes the points of a fixed depth an abelian
//! group; the identity is the all-zero vector.

use crate::circle::Angle;
use crate::error::Error;
use crate::primeseq::PrimeSeqSpec;
use num_bigint::BigUint;
use num_traits::One;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A compatible finite coordinate vector over a prime sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPoint {
    seq: PrimeSeqSpec,
    coords: Vec<Angle>,
}

impl TruncatedPoint {
    /// Validates compatibility: each coordinate must map to its predecessor
    /// under multiplication by the bonding prime.
    pub fn new(seq: PrimeSeqSpec, coords: Vec<Angle>) -> Result<Self, Error> {
        if coords.is_empty() {
            return Err(Error::ZeroDepth);
        }
        for n in 2..=coords.len() {
            let p = seq.nth_prime(n as u64 - 1);
            if coords[n - 2] != coords[n - 1].scale(&BigUint::from(p)) {
                return Err(Error::IncompatibleCoordinates { level: n });
            }
        }
        Ok(TruncatedPoint { seq, coords })
    }

    /// For construction sites that have already established compatibility.
    pub(crate) fn from_parts_unchecked(seq: PrimeSeqSpec, coords: Vec<Angle>) -> Self {
        debug_assert!(!coords.is_empty());
        debug_assert!((2..=coords.len()).all(|n| {
            coords[n - 2] == coords[n - 1].scale(&BigUint::from(seq.nth_prime(n as u64 - 1)))
        }));
        TruncatedPoint { seq, coords }
    }

    /// The identity element at the given depth: all coordinates zero.
    pub fn identity(seq: PrimeSeqSpec, depth: usize) -> Result<Self, Error> {
        if depth == 0 {
            return Err(Error::ZeroDepth);
        }
        Ok(TruncatedPoint {
            seq,
            coords: vec![Angle::zero(); depth],
        })
    }

    pub fn seq(&self) -> &PrimeSeqSpec {
        &self.seq
    }

    pub fn depth(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Angle] {
        &self.coords
    }

    /// The coordinate at 1-based level `n`.
    pub fn project(&self, n: usize) -> Result<&Angle, Error> {
        if n == 0 || n > self.coords.len() {
            return Err(Error::BadIndex {
                index: n,
                depth: self.coords.len(),
            });
        }
        Ok(&self.coords[n - 1])
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(Angle::is_zero)
    }

    /// Coordinatewise sum; both points must live over the same sequence
    /// description and depth.
    pub fn multiply(&self, other: &TruncatedPoint) -> Result<TruncatedPoint, Error> {
        if self.seq != other.seq {
            return Err(Error::MismatchedSpec);
        }
        if self.depth() != other.depth() {
            return Err(Error::MismatchedDepth {
                left: self.depth(),
                right: other.depth(),
            });
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(TruncatedPoint {
            seq: self.seq.clone(),
            coords,
        })
    }

    /// The group inverse: coordinatewise negation.
    pub fn inverse(&self) -> TruncatedPoint {
        TruncatedPoint {
            seq: self.seq.clone(),
            coords: self.coords.iter().map(Angle::neg).collect(),
        }
    }

    /// Extends the point to a greater depth by dividing the deepest
    /// coordinate through the further bonding primes. Each step requires
    /// the next prime to be invertible mod the coordinate's order; the
    /// division then has a unique same-order solution. Fails with the level
    /// at which invertibility breaks down.
    pub fn extend_back(&self, new_depth: usize) -> Result<TruncatedPoint, Error> {
        if new_depth < self.depth() {
            return Err(Error::DepthTooShallow {
                depth: new_depth,
                required: self.depth(),
            });
        }
        let mut coords = self.coords.clone();
        for n in self.depth() + 1..=new_depth {
            let p = self.seq.nth_prime(n as u64 - 1);
            let deeper = coords[n - 2].unscale(p).map_err(|_| {
                Error::NotCoprimeAtLevel {
                    level: n,
                    prime: p,
                    order: coords[n - 2].order().clone(),
                }
            })?;
            coords.push(deeper);
        }
        Ok(TruncatedPoint {
            seq: self.seq.clone(),
            coords,
        })
    }

    /// Drops the first `m - 1` coordinates, re-rooting the point over the
    /// shifted sequence. `m` is the 1-based level that becomes the new
    /// first coordinate.
    pub fn shift(&self, m: usize) -> Result<TruncatedPoint, Error> {
        if m == 0 || m > self.depth() {
            return Err(Error::BadIndex {
                index: m,
                depth: self.depth(),
            });
        }
        Ok(TruncatedPoint {
            seq: self.seq.shift(m - 1),
            coords: self.coords[m - 1..].to_vec(),
        })
    }
}

/// The transition map from level `n` down to level `m`: multiplication by
/// the product of the bonding primes p_m ... p_{n-1}. With `m == n` this is
/// the identity.
pub fn bonding(seq: &PrimeSeqSpec, m: usize, n: usize, angle: &Angle) -> Result<Angle, Error> {
    if m < 1 || m > n {
        return Err(Error::BadIndices { m, n });
    }
    let mut factor = BigUint::one();
    for j in m..n {
        factor *= BigUint::from(seq.nth_prime(j as u64));
    }
    Ok(angle.scale(&factor))
}

impl Serialize for TruncatedPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut state = serializer.serialize_struct("TruncatedPoint", 2)?;
        state.serialize_field("seq", &self.seq.to_string())?;
        let coords: Vec<String> = self.coords.iter().map(|a| a.to_string()).collect();
        state.serialize_field("coords", &coords)?;
        state.end()
    }
}

#[derive(Deserialize)]
struct PointRepr {
    seq: String,
    coords: Vec<String>,
}

impl<'de> Deserialize<'de> for TruncatedPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PointRepr::deserialize(deserializer)?;
        let seq: PrimeSeqSpec = repr
            .seq
            .parse()
            .map_err(|e| D::Error::custom(format!("seq: {e}")))?;
        let coords = repr
            .coords
            .iter()
            .map(|s| s.parse::<Angle>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| D::Error::custom(format!("coords: {e}")))?;
        TruncatedPoint::new(seq, coords).map_err(|e| D::Error::custom(e.to_string()))
    }
}
