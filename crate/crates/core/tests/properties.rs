//! Structural invariants checked across the whole spread of sequence
//! shapes, mostly against independent re-computations.

mod common;

use common::{potency_power_fixes, random_arc, random_point, spec_grid};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use solenoid_core::{
    bonding, classify_periodic, construct_periodic_witness, degree, is_q_divisible,
    multiplicative_order, orbit, Angle, OrbitResult, PadicRational, PeriodicClass, PrimeSeqSpec,
    TruncatedPoint,
};
use std::collections::HashMap;

fn seq(s: &str) -> PrimeSeqSpec {
    s.parse().unwrap()
}

#[test]
fn points_form_abelian_groups_over_every_spec_shape() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for spec in spec_grid() {
        for _ in 0..20 {
            let depth = rng.gen_range(1..=6);
            let a = random_point(&spec, depth, &mut rng);
            let b = random_point(&spec, depth, &mut rng);
            let c = random_point(&spec, depth, &mut rng);
            let id = TruncatedPoint::identity(spec.clone(), depth).unwrap();
            assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
            assert_eq!(a.multiply(&id).unwrap(), a);
            assert!(a.multiply(&a.inverse()).unwrap().is_identity());
            assert_eq!(
                a.multiply(&b).unwrap().multiply(&c).unwrap(),
                a.multiply(&b.multiply(&c).unwrap()).unwrap(),
            );
        }
    }
}

#[test]
fn bonding_maps_compose_transitively() {
    let specs = [
        seq("cycle=[2,3]"),
        seq("prefix=[5];cycle=[2]"),
        seq("universal"),
    ];
    let mut angles: Vec<Angle> = Vec::new();
    for d in 1..=12u64 {
        for a in 0..d {
            angles.push(Angle::new(a, d));
        }
    }
    angles.push(Angle::new(7u64, 60u64));
    angles.push(Angle::new(31u64, 64u64));
    for spec in &specs {
        for l in 1..=7 {
            for n in 1..=l {
                for m in 1..=n {
                    for x in &angles {
                        let via_n = bonding(spec, m, n, &bonding(spec, n, l, x).unwrap()).unwrap();
                        let direct = bonding(spec, m, l, x).unwrap();
                        assert_eq!(via_n, direct, "{spec}: {m} <- {n} <- {l} at {x}");
                    }
                }
            }
        }
    }
}

#[test]
fn degree_is_completely_multiplicative() {
    for spec in spec_grid() {
        for l in 1..=40u64 {
            for m in 1..=40u64 {
                assert_eq!(
                    degree(&spec, &BigUint::from(l * m)),
                    degree(&spec, &BigUint::from(l)) * degree(&spec, &BigUint::from(m)),
                    "{spec}: {l} x {m}",
                );
            }
        }
    }
}

/// Independent recomputation of the absorbable factor: walk actual sequence
/// terms from `from_level`, absorbing common factors until nothing is left.
/// A 400-term window stabilizes every modulus this suite uses.
fn stable_absorbable(spec: &PrimeSeqSpec, m: u64, from_level: usize) -> u64 {
    let mut c = 1u64;
    let mut rest = m;
    for p in spec.terms().skip(from_level - 1).take(400) {
        let g = rest.gcd(&p);
        c *= g;
        rest /= g;
        if rest == 1 {
            break;
        }
    }
    c
}

/// Whatever point of the image one sits over, the k-th power map has the
/// same number of preimages: the extendable M-torsion tuples form a group
/// and the map is a homomorphism onto its image. With k dividing M the
/// common count is exactly the degree.
#[test]
fn fibers_over_every_image_point_share_one_cardinality() {
    for spec in spec_grid() {
        for k in 2..=9u64 {
            for j in 1..=4u64 {
                let modulus = k * j;
                // Level 12 is past every prefix in the grid, so only tail
                // primes participate.
                let c = stable_absorbable(&spec, modulus, 12);
                assert_eq!(modulus % c, 0);
                let members: Vec<u64> = (0..modulus).step_by(c as usize).collect();
                let mut counts: HashMap<u64, u64> = HashMap::new();
                for &a in &members {
                    *counts.entry(a * k % modulus).or_default() += 1;
                }
                let expected = degree(&spec, &BigUint::from(k));
                for (&image, &count) in &counts {
                    assert_eq!(
                        BigUint::from(count),
                        expected,
                        "{spec}: fiber over {image}/{modulus} under x{k}",
                    );
                }
                assert_eq!(members.len() as u64 % counts.len() as u64, 0);
            }
        }
    }
}

#[test]
fn equivalence_is_an_equivalence_and_degree_is_a_class_invariant() {
    let grid = spec_grid();
    for a in &grid {
        assert!(a.equivalent(a));
        for b in &grid {
            assert_eq!(a.equivalent(b), b.equivalent(a));
            for c in &grid {
                if a.equivalent(b) && b.equivalent(c) {
                    assert!(a.equivalent(c));
                }
            }
        }
    }
    for a in &grid {
        for m in 0..=20 {
            let shifted = a.shift(m);
            assert!(a.equivalent(&shifted), "{a} vs its {m}-shift");
            for k in 1..=30u64 {
                assert_eq!(
                    degree(a, &BigUint::from(k)),
                    degree(&shifted, &BigUint::from(k)),
                );
            }
        }
    }
}

#[test]
fn member_fractions_are_closed_under_addition_and_negation() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for spec in spec_grid() {
        for _ in 0..40 {
            // Denominators built from actual sequence terms are members by
            // construction: each term is spent at most once.
            let build = |rng: &mut ChaCha8Rng| {
                let t = rng.gen_range(0..=10usize);
                let den: u64 = spec.terms().take(t).product::<u64>().max(1);
                let num = rng.gen_range(0..200u64) as i64 - 100;
                PadicRational::new(num.into(), (den as i64).into()).unwrap()
            };
            let x = build(&mut rng);
            let y = build(&mut rng);
            assert!(x.is_member(&spec), "{spec}: {x}");
            assert!(y.is_member(&spec), "{spec}: {y}");
            let sum = PadicRational::from_ratio(x.as_ratio() + y.as_ratio());
            let diff = PadicRational::from_ratio(x.as_ratio() - y.as_ratio());
            assert!(sum.is_member(&spec), "{spec}: {x} + {y} = {sum}");
            assert!(diff.is_member(&spec), "{spec}: {x} - {y} = {diff}");
        }
    }
}

#[test]
fn recurring_primes_divide_forever_and_finite_ones_run_out() {
    for spec in spec_grid() {
        // A recurring prime divides any member repeatedly.
        let recurring = spec.nth_prime(50); // deep into the tail
        assert!(is_q_divisible(&spec, recurring).unwrap());
        let mut x = PadicRational::new(1.into(), 1.into()).unwrap();
        for _ in 0..5 {
            x = x
                .divide_witness(&spec, recurring)
                .unwrap()
                .expect("recurring primes always divide");
            assert!(x.is_member(&spec));
        }
    }
    // A prefix-only prime divides exactly as often as it occurs.
    let spec = seq("prefix=[3,3];cycle=[2]");
    assert!(!is_q_divisible(&spec, 3).unwrap());
    let x = PadicRational::new(1.into(), 1.into()).unwrap();
    let once = x.divide_witness(&spec, 3).unwrap().unwrap();
    let twice = once.divide_witness(&spec, 3).unwrap().unwrap();
    assert_eq!(twice.divide_witness(&spec, 3).unwrap(), None);
    // A prime with no occurrences at all refuses immediately.
    assert_eq!(x.divide_witness(&spec, 7).unwrap(), None);
}

#[test]
fn witnesses_have_minimal_least_periods() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let arcs: Vec<_> = (0..10).map(|_| random_arc(&mut rng)).collect();
    for spec in spec_grid() {
        for k in 2..=5u64 {
            let q = match classify_periodic(&spec, &BigUint::from(k)) {
                PeriodicClass::Dense { q } => q,
                _ => continue,
            };
            for (arc, level) in &arcs {
                let w = construct_periodic_witness(&spec, k, *level, arc, q, None)
                    .unwrap_or_else(|e| panic!("{spec}, k={k}, arc {arc}: {e}"));
                assert!(arc.contains(w.point.project(*level).unwrap()));
                assert!((&w.claimed_period % &w.least_period).is_zero());
                assert!(potency_power_fixes(&w.point, k, &w.claimed_period));
                assert!(potency_power_fixes(&w.point, k, &w.least_period));
                // Minimality: no proper divisor of the least period works.
                if let Some(lp) = w.least_period.to_u64_digits().first().copied() {
                    if w.least_period.bits() <= 64 && lp > 1 {
                        for (r, _) in solenoid_core::numtheory::factorize(lp) {
                            assert!(
                                !potency_power_fixes(&w.point, k, &BigUint::from(lp / r)),
                                "{spec}: period {lp} not minimal at divisor {}",
                                lp / r,
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn orbit_periods_are_multiplicative_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for spec in spec_grid() {
        let mut tested = 0;
        while tested < 12 {
            let depth = rng.gen_range(1..=5);
            let n = rng.gen_range(2..=50u64);
            let k = rng.gen_range(2..=20u64);
            if k.gcd(&n) != 1 {
                continue;
            }
            tested += 1;
            // Deepest coordinate 1/n: the point's order is exactly n.
            let mut coords = vec![Angle::zero(); depth];
            coords[depth - 1] = Angle::new(1u64, n);
            for level in (1..depth).rev() {
                coords[level - 1] =
                    coords[level].scale(&BigUint::from(spec.nth_prime(level as u64)));
            }
            let point = TruncatedPoint::new(spec.clone(), coords).unwrap();
            assert_eq!(
                orbit(&point, &BigUint::from(k), 10_000),
                OrbitResult::Found {
                    pre_period: 0,
                    period: multiplicative_order(k, n).unwrap(),
                },
                "{spec}: 1/{n} under x{k}",
            );
        }
    }
}

#[test]
fn point_serialization_round_trips_across_the_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for spec in spec_grid() {
        for _ in 0..10 {
            let depth = rng.gen_range(1..=6);
            let point = random_point(&spec, depth, &mut rng);
            let json = serde_json::to_string(&point).unwrap();
            let back: TruncatedPoint = serde_json::from_str(&json).unwrap();
            assert_eq!(back, point);
            // Text round-trips of the pieces.
            assert_eq!(spec, spec.to_string().parse().unwrap());
            for a in point.coords() {
                assert_eq!(*a, a.to_string().parse().unwrap());
            }
        }
    }
}
