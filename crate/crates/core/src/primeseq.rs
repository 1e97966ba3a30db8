//! Finite descriptions of infinite prime sequences.
//!
//! A [`PrimeSeqSpec`] is a finite prefix followed by an infinite tail: either
//! a repeating cycle of primes, or the "universal" enumeration that walks the
//! blocks B_1, B_2, ... where B_i lists the first i primes outside an
//! excluded set in increasing order (so every admissible prime occurs
//! infinitely often). Everything downstream — degrees, fibers, membership,
//! periodic-point classification — is driven by which primes occur
//! infinitely often in the sequence, and that set is decidable from the
//! description.
//!
//! Text form: `[prefix=[p,...];](cycle=[p,...]|universal[=exclude[p,...]])`,
//! whitespace-insensitive, all entries prime. A trailing `;skip=N` (emitted
//! only when nonzero) marks a universal tail whose first N terms have been
//! dropped; it exists so that shifting a sequence stays exactly
//! representable.

use crate::error::{Error, ParseError};
use crate::numtheory;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// The infinite part of a sequence description.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tail {
    /// The listed primes repeated forever, in order.
    Cycle(Vec<u64>),
    /// Blocks of the first 1, 2, 3, ... primes not in `excluded`, with the
    /// first `skip` terms of that enumeration dropped.
    Universal { excluded: BTreeSet<u64>, skip: u64 },
}

/// A finite description of an infinite sequence of primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeSeqSpec {
    prefix: Vec<u64>,
    tail: Tail,
}

/// The set of primes occurring infinitely often in a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InfOccurSet {
    /// Exactly this finite set (cycle tails).
    ExactlySet(BTreeSet<u64>),
    /// Every prime except this finite set (universal tails).
    AllPrimesExcept(BTreeSet<u64>),
}

/// Shape of the complement: the primes occurring only finitely often.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SClassification {
    Empty,
    FiniteNonempty(BTreeSet<u64>),
    Infinite,
}

impl PrimeSeqSpec {
    /// Builds a description, validating that every entry is prime and that
    /// cycles are nonempty.
    pub fn new(prefix: Vec<u64>, tail: Tail) -> Result<Self, Error> {
        for &p in &prefix {
            if !numtheory::is_prime(p) {
                return Err(Error::NotPrime { value: p });
            }
        }
        match &tail {
            Tail::Cycle(cycle) => {
                if cycle.is_empty() {
                    return Err(Error::EmptyCycle);
                }
                for &p in cycle {
                    if !numtheory::is_prime(p) {
                        return Err(Error::NotPrime { value: p });
                    }
                }
            }
            Tail::Universal { excluded, .. } => {
                for &p in excluded {
                    if !numtheory::is_prime(p) {
                        return Err(Error::NotPrime { value: p });
                    }
                }
            }
        }
        Ok(PrimeSeqSpec { prefix, tail })
    }

    /// A pure cycle with no prefix.
    pub fn cycle(primes: Vec<u64>) -> Result<Self, Error> {
        PrimeSeqSpec::new(Vec::new(), Tail::Cycle(primes))
    }

    /// A universal tail with no prefix; `excluded` may be empty.
    pub fn universal(excluded: impl IntoIterator<Item = u64>) -> Result<Self, Error> {
        PrimeSeqSpec::new(
            Vec::new(),
            Tail::Universal {
                excluded: excluded.into_iter().collect(),
                skip: 0,
            },
        )
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// The n-th term of the sequence, 1-based.
    pub fn nth_prime(&self, n: u64) -> u64 {
        assert!(n >= 1, "sequence positions are 1-based");
        let prefix_len = self.prefix.len() as u64;
        if n <= prefix_len {
            return self.prefix[(n - 1) as usize];
        }
        match &self.tail {
            Tail::Cycle(cycle) => cycle[((n - prefix_len - 1) % cycle.len() as u64) as usize],
            Tail::Universal { excluded, skip } => {
                let pos = n - prefix_len + skip;
                let block = triangular_block(pos);
                let offset = (pos as u128 - triangular(block - 1)) as u64;
                nth_admissible(excluded, offset)
            }
        }
    }

    /// Infinite iterator over the sequence terms, starting at position 1.
    pub fn terms(&self) -> Terms<'_> {
        Terms {
            spec: self,
            next_pos: 1,
            block: 0,
            offset: 0,
            admissible: Vec::new(),
            candidate: 2,
        }
    }

    /// Whether the prime `q` occurs infinitely often in the sequence.
    pub fn occurs_infinitely_often(&self, q: u64) -> Result<bool, Error> {
        if !numtheory::is_prime(q) {
            return Err(Error::NotPrime { value: q });
        }
        Ok(match &self.tail {
            Tail::Cycle(cycle) => cycle.contains(&q),
            Tail::Universal { excluded, .. } => !excluded.contains(&q),
        })
    }

    /// Whether `q` occurs only finitely often (possibly never).
    pub fn in_s(&self, q: u64) -> Result<bool, Error> {
        Ok(!self.occurs_infinitely_often(q)?)
    }

    /// The set of primes occurring infinitely often.
    pub fn inf_occur_set(&self) -> InfOccurSet {
        match &self.tail {
            Tail::Cycle(cycle) => InfOccurSet::ExactlySet(cycle.iter().copied().collect()),
            Tail::Universal { excluded, .. } => InfOccurSet::AllPrimesExcept(excluded.clone()),
        }
    }

    /// Shape of the set of finitely-occurring primes: empty for an
    /// unrestricted universal tail, exactly the excluded set for a
    /// restricted one, and infinite (the complement of the cycle support)
    /// for cycle tails.
    pub fn s_classification(&self) -> SClassification {
        match &self.tail {
            Tail::Cycle(_) => SClassification::Infinite,
            Tail::Universal { excluded, .. } => {
                if excluded.is_empty() {
                    SClassification::Empty
                } else {
                    SClassification::FiniteNonempty(excluded.clone())
                }
            }
        }
    }

    /// Two sequences are equivalent when every prime occurs infinitely often
    /// in both or in neither; finite discrepancies never matter. For these
    /// descriptions that reduces to comparing cycle supports or excluded
    /// sets (a cycle's infinitely-occurring set is finite, a universal
    /// tail's is cofinite, so the two kinds never match).
    pub fn equivalent(&self, other: &PrimeSeqSpec) -> bool {
        match (&self.tail, &other.tail) {
            (Tail::Cycle(a), Tail::Cycle(b)) => {
                let sa: BTreeSet<u64> = a.iter().copied().collect();
                let sb: BTreeSet<u64> = b.iter().copied().collect();
                sa == sb
            }
            (
                Tail::Universal { excluded: ea, .. },
                Tail::Universal { excluded: eb, .. },
            ) => ea == eb,
            _ => false,
        }
    }

    /// The description of the sequence with its first `count` terms removed.
    /// Dropping into a cycle rotates it; dropping into a universal tail
    /// raises its skip, keeping the enumeration exact.
    pub fn shift(&self, count: usize) -> PrimeSeqSpec {
        if count <= self.prefix.len() {
            return PrimeSeqSpec {
                prefix: self.prefix[count..].to_vec(),
                tail: self.tail.clone(),
            };
        }
        let extra = (count - self.prefix.len()) as u64;
        let tail = match &self.tail {
            Tail::Cycle(cycle) => {
                let r = (extra % cycle.len() as u64) as usize;
                let mut rotated = cycle[r..].to_vec();
                rotated.extend_from_slice(&cycle[..r]);
                Tail::Cycle(rotated)
            }
            Tail::Universal { excluded, skip } => Tail::Universal {
                excluded: excluded.clone(),
                skip: skip + extra,
            },
        };
        PrimeSeqSpec {
            prefix: Vec::new(),
            tail,
        }
    }
}

/// Iterator over the terms of a sequence; see [`PrimeSeqSpec::terms`].
pub struct Terms<'a> {
    spec: &'a PrimeSeqSpec,
    next_pos: u64,
    // Incremental state for universal tails: the block/offset of the next
    // tail term, and a growing cache of admissible primes.
    block: u64,
    offset: u64,
    admissible: Vec<u64>,
    candidate: u64,
}

impl Terms<'_> {
    fn admissible_at(&mut self, index: u64, excluded: &BTreeSet<u64>) -> u64 {
        while (self.admissible.len() as u64) < index {
            while !numtheory::is_prime(self.candidate) || excluded.contains(&self.candidate) {
                self.candidate += 1;
            }
            self.admissible.push(self.candidate);
            self.candidate += 1;
        }
        self.admissible[(index - 1) as usize]
    }
}

impl Iterator for Terms<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let prefix_len = self.spec.prefix.len() as u64;
        let pos = self.next_pos;
        self.next_pos += 1;
        if pos <= prefix_len {
            return Some(self.spec.prefix[(pos - 1) as usize]);
        }
        match &self.spec.tail {
            Tail::Cycle(cycle) => {
                Some(cycle[((pos - prefix_len - 1) % cycle.len() as u64) as usize])
            }
            Tail::Universal { excluded, skip } => {
                let excluded = excluded.clone();
                if self.block == 0 {
                    let vpos = pos - prefix_len + skip;
                    self.block = triangular_block(vpos);
                    self.offset = (vpos as u128 - triangular(self.block - 1)) as u64;
                }
                let value = self.admissible_at(self.offset, &excluded);
                self.offset += 1;
                if self.offset > self.block {
                    self.block += 1;
                    self.offset = 1;
                }
                Some(value)
            }
        }
    }
}

fn triangular(i: u64) -> u128 {
    i as u128 * (i as u128 + 1) / 2
}

/// Smallest `i >= 1` with `i (i + 1) / 2 >= pos`, i.e. the index of the
/// block containing 1-based position `pos` of the universal enumeration.
fn triangular_block(pos: u64) -> u64 {
    debug_assert!(pos >= 1);
    let target = pos as u128;
    let mut i = ((numtheory::isqrt_u128(8 * target + 1) + 1) / 2).max(1) as u64;
    while triangular(i) < target {
        i += 1;
    }
    while i > 1 && triangular(i - 1) >= target {
        i -= 1;
    }
    i
}

/// The `index`-th prime not in `excluded`, 1-based.
fn nth_admissible(excluded: &BTreeSet<u64>, index: u64) -> u64 {
    let mut seen = 0u64;
    let mut candidate = 2u64;
    loop {
        if numtheory::is_prime(candidate) && !excluded.contains(&candidate) {
            seen += 1;
            if seen == index {
                return candidate;
            }
        }
        candidate += 1;
    }
}

impl fmt::Display for PrimeSeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_empty() {
            write!(f, "prefix=[{}];", join(&self.prefix))?;
        }
        match &self.tail {
            Tail::Cycle(cycle) => write!(f, "cycle=[{}]", join(cycle)),
            Tail::Universal { excluded, skip } => {
                if excluded.is_empty() {
                    write!(f, "universal")?;
                } else {
                    let listed: Vec<u64> = excluded.iter().copied().collect();
                    write!(f, "universal=exclude[{}]", join(&listed))?;
                }
                if *skip > 0 {
                    write!(f, ";skip={skip}")?;
                }
                Ok(())
            }
        }
    }
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl FromStr for PrimeSeqSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut scanner = Scanner::new(s);
        let mut prefix_tokens = Vec::new();
        if scanner.eat("prefix=") {
            prefix_tokens = scanner.list()?;
            scanner.expect(";", "';' after the prefix list")?;
        }
        let tail = if scanner.eat("cycle=") {
            let tokens = scanner.list()?;
            if tokens.is_empty() {
                return Err(ParseError::syntax(
                    scanner.pos(),
                    "at least one prime in the cycle list",
                ));
            }
            check_primes(&tokens)?;
            Tail::Cycle(tokens.into_iter().map(|(value, _)| value).collect())
        } else if scanner.eat("universal") {
            let tokens = if scanner.eat("=exclude") {
                scanner.list()?
            } else {
                Vec::new()
            };
            check_primes(&tokens)?;
            let skip = if scanner.eat(";skip=") {
                scanner.number()?.0
            } else {
                0
            };
            Tail::Universal {
                excluded: tokens.into_iter().map(|(value, _)| value).collect(),
                skip,
            }
        } else {
            return Err(ParseError::syntax(
                scanner.pos(),
                "'prefix=[...]', 'cycle=[...]', or 'universal'",
            ));
        };
        if !scanner.done() {
            return Err(ParseError::syntax(scanner.pos(), "end of input"));
        }
        check_primes(&prefix_tokens)?;
        let prefix = prefix_tokens.into_iter().map(|(value, _)| value).collect();
        // Entries were validated above, so construction cannot fail.
        PrimeSeqSpec::new(prefix, tail)
            .map_err(|_| ParseError::syntax(0, "a valid sequence description"))
    }
}

fn check_primes(tokens: &[(u64, usize)]) -> Result<(), ParseError> {
    for &(value, position) in tokens {
        if !numtheory::is_prime(value) {
            return Err(ParseError::NotPrime {
                token: value.to_string(),
                position,
            });
        }
    }
    Ok(())
}

/// Character scanner over the input with whitespace removed; positions refer
/// to byte offsets in the original string.
struct Scanner {
    chars: Vec<(usize, char)>,
    index: usize,
    source_len: usize,
}

impl Scanner {
    fn new(s: &str) -> Self {
        Scanner {
            chars: s
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            index: 0,
            source_len: s.len(),
        }
    }

    fn pos(&self) -> usize {
        self.chars
            .get(self.index)
            .map(|&(p, _)| p)
            .unwrap_or(self.source_len)
    }

    fn done(&self) -> bool {
        self.index >= self.chars.len()
    }

    /// Consumes `literal` if it matches here.
    fn eat(&mut self, literal: &str) -> bool {
        let want: Vec<char> = literal.chars().collect();
        let have = self.chars[self.index..]
            .iter()
            .take(want.len())
            .map(|&(_, c)| c);
        if have.eq(want.iter().copied()) {
            self.index += want.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, literal: &str, description: &str) -> Result<(), ParseError> {
        if self.eat(literal) {
            Ok(())
        } else {
            Err(ParseError::syntax(self.pos(), description))
        }
    }

    fn number(&mut self) -> Result<(u64, usize), ParseError> {
        let position = self.pos();
        let mut digits = String::new();
        while let Some(&(_, c)) = self.chars.get(self.index) {
            if c.is_ascii_digit() {
                digits.push(c);
                self.index += 1;
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return Err(ParseError::syntax(position, "a decimal integer"));
        }
        digits
            .parse()
            .map(|value| (value, position))
            .map_err(|_| ParseError::syntax(position, "an integer below 2^64"))
    }

    /// `[n, n, ...]`, possibly empty, returning each entry with its position.
    fn list(&mut self) -> Result<Vec<(u64, usize)>, ParseError> {
        self.expect("[", "'['")?;
        let mut out = Vec::new();
        if self.eat("]") {
            return Ok(out);
        }
        loop {
            out.push(self.number()?);
            if self.eat("]") {
                return Ok(out);
            }
            self.expect(",", "',' or ']'")?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(s: &str) -> PrimeSeqSpec {
        s.parse().unwrap()
    }

    #[test]
    fn universal_enumeration_walks_growing_blocks() {
        let u = PrimeSeqSpec::universal([]).unwrap();
        let first: Vec<u64> = u.terms().take(10).collect();
        // Blocks: 2 | 2,3 | 2,3,5 | 2,3,5,7
        assert_eq!(first, vec![2, 2, 3, 2, 3, 5, 2, 3, 5, 7]);
        assert_eq!(u.nth_prime(4), 2);
        for (i, term) in u.terms().take(200).enumerate() {
            assert_eq!(term, u.nth_prime(i as u64 + 1), "position {}", i + 1);
        }
    }

    #[test]
    fn universal_exclusion_and_skip() {
        let u = PrimeSeqSpec::universal([2, 3]).unwrap();
        let first: Vec<u64> = u.terms().take(6).collect();
        assert_eq!(first, vec![5, 5, 7, 5, 7, 11]);

        let shifted = u.shift(2);
        let rest: Vec<u64> = shifted.terms().take(4).collect();
        assert_eq!(rest, vec![7, 5, 7, 11]);
        assert_eq!(shifted.to_string(), "universal=exclude[2,3];skip=2");
    }

    #[test]
    fn cycle_terms_are_periodic_with_prefix() {
        let p = parse("prefix=[5,7];cycle=[2,3]");
        let first: Vec<u64> = p.terms().take(8).collect();
        assert_eq!(first, vec![5, 7, 2, 3, 2, 3, 2, 3]);
        for n in 1..200u64 {
            let expected = match n {
                1 => 5,
                2 => 7,
                n => {
                    if (n - 3) % 2 == 0 {
                        2
                    } else {
                        3
                    }
                }
            };
            assert_eq!(p.nth_prime(n), expected);
        }
    }

    #[test]
    fn infinite_occurrence_ignores_the_prefix() {
        let p = parse("prefix=[5];cycle=[2]");
        assert!(!p.occurs_infinitely_often(5).unwrap());
        assert!(p.occurs_infinitely_often(2).unwrap());
        assert!(p.in_s(5).unwrap());
        assert!(p.in_s(3).unwrap());
        assert!(!p.in_s(2).unwrap());
        assert_eq!(
            p.occurs_infinitely_often(4),
            Err(Error::NotPrime { value: 4 })
        );

        let u = parse("prefix=[2];universal=exclude[2]");
        assert!(!u.occurs_infinitely_often(2).unwrap());
        assert!(u.occurs_infinitely_often(97).unwrap());
    }

    #[test]
    fn occurrence_flags_match_term_counts_over_a_long_window() {
        // Oracle: XOR check against actual occurrence counts. A prime that
        // occurs infinitely often shows up repeatedly in a long window; one
        // that does not occurs at most prefix-many times.
        let specs = [
            parse("cycle=[2]"),
            parse("cycle=[2,3]"),
            parse("prefix=[5,5,7];cycle=[3]"),
            parse("universal"),
            parse("universal=exclude[2,3]"),
            parse("prefix=[2,2];universal=exclude[2]"),
        ];
        for spec in &specs {
            let window: Vec<u64> = spec.terms().take(10_000).collect();
            for q in (2u64..=200).filter(|&q| numtheory::is_prime(q)) {
                let count = window.iter().filter(|&&t| t == q).count();
                let infinite = spec.occurs_infinitely_often(q).unwrap();
                // Horizon: more than 20 occurrences in 10^4 terms can only
                // come from the tail; at most prefix-many can come otherwise.
                if infinite {
                    assert!(count > 20, "{spec}: {q} occurred {count} times");
                } else {
                    assert!(
                        count <= spec.prefix().len(),
                        "{spec}: {q} occurred {count} times"
                    );
                }
                assert!(infinite ^ spec.in_s(q).unwrap());
            }
        }
    }

    #[test]
    fn s_classification_covers_all_three_shapes() {
        assert_eq!(parse("universal").s_classification(), SClassification::Empty);
        assert_eq!(
            parse("universal=exclude[2,3]").s_classification(),
            SClassification::FiniteNonempty([2, 3].into_iter().collect())
        );
        assert_eq!(parse("cycle=[2]").s_classification(), SClassification::Infinite);
        assert_eq!(
            parse("cycle=[2]").inf_occur_set(),
            InfOccurSet::ExactlySet([2].into_iter().collect())
        );
        assert_eq!(
            parse("universal=exclude[5]").inf_occur_set(),
            InfOccurSet::AllPrimesExcept([5].into_iter().collect())
        );
    }

    #[test]
    fn equivalence_is_structural() {
        assert!(parse("cycle=[2,3]").equivalent(&parse("prefix=[5];cycle=[3,2]")));
        assert!(!parse("cycle=[2]").equivalent(&parse("cycle=[3]")));
        assert!(!parse("universal").equivalent(&parse("cycle=[2]")));
        assert!(parse("universal=exclude[2]").equivalent(&parse("prefix=[2,2];universal=exclude[2]")));
        assert!(!parse("universal").equivalent(&parse("universal=exclude[2]")));
        assert!(parse("cycle=[2,2,3]").equivalent(&parse("cycle=[3,2]")));
    }

    #[test]
    fn shifts_are_exact_and_equivalent() {
        let specs = [
            parse("cycle=[2]"),
            parse("cycle=[2,3,5]"),
            parse("prefix=[5,7];cycle=[2]"),
            parse("universal"),
            parse("universal=exclude[2,3]"),
            parse("prefix=[3,3];universal=exclude[3]"),
        ];
        for spec in &specs {
            let window: Vec<u64> = spec.terms().take(200).collect();
            for m in 0..=20usize {
                let shifted = spec.shift(m);
                let tail_window: Vec<u64> = shifted.terms().take(100).collect();
                assert_eq!(&window[m..m + 100], tail_window.as_slice(), "{spec} shifted {m}");
                assert!(spec.equivalent(&shifted), "{spec} shifted {m}");
                // Round-trips through text, including the skip extension.
                assert_eq!(shifted, shifted.to_string().parse().unwrap());
            }
        }
    }

    #[test]
    fn parsing_matches_the_grammar() {
        assert_eq!(parse("cycle=[2]"), PrimeSeqSpec::cycle(vec![2]).unwrap());
        assert_eq!(
            parse("prefix=[2,5];cycle=[3]"),
            PrimeSeqSpec::new(vec![2, 5], Tail::Cycle(vec![3])).unwrap()
        );
        assert_eq!(parse("prefix=[];universal"), PrimeSeqSpec::universal([]).unwrap());
        assert_eq!(parse("universal=exclude[]"), parse("universal"));
        assert_eq!(
            parse(" prefix = [ 2 , 5 ] ; cycle = [ 3 ] "),
            parse("prefix=[2,5];cycle=[3]")
        );

        match "cycle=[4]".parse::<PrimeSeqSpec>() {
            Err(ParseError::NotPrime { token, position }) => {
                assert_eq!(token, "4");
                assert_eq!(position, 7);
            }
            other => panic!("expected a primality rejection, got {other:?}"),
        }
        assert!(matches!(
            "cycle=[]".parse::<PrimeSeqSpec>(),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            "prefix=[2]".parse::<PrimeSeqSpec>(),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            "cycle=[2];skip=1".parse::<PrimeSeqSpec>(),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            "cycle=[2]extra".parse::<PrimeSeqSpec>(),
            Err(ParseError::Syntax { .. })
        ));
        assert!("prefix=[9];cycle=[2]".parse::<PrimeSeqSpec>().is_err());
    }

    #[test]
    fn printing_then_parsing_is_the_identity() {
        let specs = [
            "cycle=[2]",
            "cycle=[2,3]",
            "prefix=[5];cycle=[2]",
            "prefix=[5,7,11];cycle=[3,2]",
            "universal",
            "universal=exclude[2]",
            "universal=exclude[2,3,5]",
            "prefix=[13];universal=exclude[13]",
        ];
        for text in specs {
            let spec = parse(text);
            assert_eq!(spec.to_string(), text);
            assert_eq!(parse(&spec.to_string()), spec);
        }
    }

    prop_compose! {
        fn arb_primes(max_len: usize)(
            values in proptest::collection::vec(
                proptest::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19]),
                0..=max_len,
            )
        ) -> Vec<u64> {
            values
        }
    }

    fn arb_spec() -> impl Strategy<Value = PrimeSeqSpec> {
        (arb_primes(4), arb_primes(3), any::<bool>(), 0u64..40).prop_map(
            |(prefix, tail, universal, skip)| {
                let tail = if universal {
                    Tail::Universal {
                        excluded: tail.into_iter().collect(),
                        skip,
                    }
                } else if tail.is_empty() {
                    Tail::Cycle(vec![2])
                } else {
                    Tail::Cycle(tail)
                };
                PrimeSeqSpec::new(prefix, tail).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn text_round_trip(spec in arb_spec()) {
            let text = spec.to_string();
            let reparsed: PrimeSeqSpec = text.parse().unwrap();
            prop_assert_eq!(&reparsed, &spec);
            prop_assert_eq!(reparsed.to_string(), text);
        }

        #[test]
        fn equivalence_is_reflexive_and_symmetric(a in arb_spec(), b in arb_spec()) {
            prop_assert!(a.equivalent(&a));
            prop_assert_eq!(a.equivalent(&b), b.equivalent(&a));
        }

        #[test]
        fn shift_then_terms_matches_skipped_terms(spec in arb_spec(), m in 0usize..12) {
            let shifted = spec.shift(m);
            let direct: Vec<u64> = spec.terms().skip(m).take(40).collect();
            let via_shift: Vec<u64> = shifted.terms().take(40).collect();
            prop_assert_eq!(direct, via_shift);
        }
    }
}
