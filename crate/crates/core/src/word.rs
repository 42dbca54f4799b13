//! Words over `[m] = {1, …, m}` and their profiles.
//!
//! Symbols are stored 1-based, exactly as they are printed. The packed index
//! of a word reads the digits `symbol - 1` in base `m` with coordinate 1 as
//! the least significant digit, so `"123"` over `[3]` packs to
//! `0 + 1·3 + 2·9 = 21`.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use crate::combinatorics::{multinomial, next_permutation};
use crate::error::{Error, Result};

/// Largest supported alphabet. Keeps the digit-string format unambiguous.
pub const MAX_ALPHABET: u8 = 9;

pub(crate) fn check_alphabet(m: u8) -> Result<()> {
    if (2..=MAX_ALPHABET).contains(&m) {
        Ok(())
    } else {
        Err(Error::InvalidAlphabet(m))
    }
}

/// Largest `n` with `m^n <= 2^64`, i.e. every word of length `n` has a `u64` index.
pub fn capacity(m: u8) -> usize {
    let mut n = 0;
    let mut size: u128 = 1;
    while size * m as u128 <= 1u128 << 64 {
        size *= m as u128;
        n += 1;
    }
    n
}

/// `m^n`, or `None` when it does not fit in a `u64`.
pub fn space_size(n: usize, m: u8) -> Option<u64> {
    let mut size: u64 = 1;
    for _ in 0..n {
        size = size.checked_mul(m as u64)?;
    }
    Some(size)
}

/// A fixed-length word over `[m]`.
///
/// Equality, ordering and hashing look only at the symbol sequence.
#[derive(Clone)]
pub struct Word {
    m: u8,
    symbols: Vec<u8>,
}

impl Word {
    /// Builds a word from 1-based symbols.
    pub fn new(symbols: &[u8], m: u8) -> Result<Word> {
        check_alphabet(m)?;
        let capacity = capacity(m);
        if symbols.len() > capacity {
            return Err(Error::CapacityExceeded {
                len: symbols.len(),
                m,
                capacity,
            });
        }
        if let Some(&symbol) = symbols.iter().find(|&&s| s == 0 || s > m) {
            return Err(Error::InvalidSymbol { symbol, m });
        }
        Ok(Word {
            m,
            symbols: symbols.to_vec(),
        })
    }

    /// Parses the digit-string form, e.g. `"1321333212"`.
    pub fn parse(s: &str, m: u8) -> Result<Word> {
        let symbols = s
            .bytes()
            .map(|b| match b {
                b'0'..=b'9' => Ok(b - b'0'),
                _ => Err(Error::InvalidSymbol { symbol: b, m }),
            })
            .collect::<Result<Vec<u8>>>()?;
        Word::new(&symbols, m)
    }

    /// Inverse of [`Word::index`].
    pub fn from_index(mut index: u64, n: usize, m: u8) -> Result<Word> {
        check_alphabet(m)?;
        let capacity = capacity(m);
        if n > capacity {
            return Err(Error::CapacityExceeded {
                len: n,
                m,
                capacity,
            });
        }
        if let Some(size) = space_size(n, m) {
            if index >= size {
                return Err(Error::InvalidParameter(alloc::format!(
                    "index {index} is outside [{m}]^{n}"
                )));
            }
        }
        let mut symbols = Vec::with_capacity(n);
        for _ in 0..n {
            symbols.push((index % m as u64) as u8 + 1);
            index /= m as u64;
        }
        Ok(Word { m, symbols })
    }

    /// Packed base-`m` index; coordinate 1 is the least significant digit.
    pub fn index(&self) -> u64 {
        let m = self.m as u64;
        self.symbols.iter().rev().fold(0u64, |acc, &s| {
            acc.wrapping_mul(m).wrapping_add((s - 1) as u64)
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet(&self) -> u8 {
        self.m
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Symbol at 1-based coordinate `coord`.
    pub fn symbol(&self, coord: usize) -> Option<u8> {
        coord
            .checked_sub(1)
            .and_then(|i| self.symbols.get(i).copied())
    }

    /// A copy with coordinate `coord` (1-based) set to `symbol`.
    pub fn with_symbol(&self, coord: usize, symbol: u8) -> Result<Word> {
        if coord == 0 || coord > self.len() {
            return Err(Error::IndexOutOfRange {
                index: coord,
                max: self.len(),
            });
        }
        if symbol == 0 || symbol > self.m {
            return Err(Error::InvalidSymbol { symbol, m: self.m });
        }
        let mut out = self.clone();
        out.symbols[coord - 1] = symbol;
        Ok(out)
    }

    /// Number of coordinates holding `symbol`.
    pub fn count(&self, symbol: u8) -> usize {
        self.symbols.iter().filter(|&&s| s == symbol).count()
    }

    /// 1-based coordinates holding `symbol`, ascending.
    pub fn positions(&self, symbol: u8) -> Vec<usize> {
        self.symbols
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == symbol)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn profile(&self) -> Profile {
        let mut counts = alloc::vec![0usize; self.m as usize];
        for &s in &self.symbols {
            counts[(s - 1) as usize] += 1;
        }
        Profile { counts }
    }

    // Scratch access for the search loops; public API stays immutable.
    pub(crate) fn from_raw(symbols: Vec<u8>, m: u8) -> Word {
        debug_assert!(symbols.iter().all(|&s| s >= 1 && s <= m));
        Word { m, symbols }
    }

    pub(crate) fn symbols_mut(&mut self) -> &mut [u8] {
        &mut self.symbols
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Word) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.symbols.hash(state);
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Word) -> Ordering {
        self.symbols.cmp(&other.symbols)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Occurrence counts `(n_1, …, n_m)` of each symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    counts: Vec<usize>,
}

impl Profile {
    pub fn new(counts: &[usize]) -> Profile {
        Profile {
            counts: counts.to_vec(),
        }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn alphabet(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Number of words with this profile.
    pub fn word_count(&self) -> Option<u128> {
        multinomial(&self.counts)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn check_profile(n: usize, m: u8, profile: &Profile) -> Result<()> {
    check_alphabet(m)?;
    if profile.alphabet() != m as usize {
        return Err(Error::ProfileMismatch(alloc::format!(
            "profile {profile} has {} entries, alphabet size is {m}",
            profile.alphabet()
        )));
    }
    if profile.total() != n {
        return Err(Error::ProfileMismatch(alloc::format!(
            "profile {profile} sums to {}, length is {n}",
            profile.total()
        )));
    }
    let capacity = capacity(m);
    if n > capacity {
        return Err(Error::CapacityExceeded {
            len: n,
            m,
            capacity,
        });
    }
    Ok(())
}

/// Every word of length `n` over `[m]` with the given profile, in strictly
/// increasing lexicographic order.
pub fn enumerate_with_profile(n: usize, m: u8, profile: &Profile) -> Result<ProfileWords> {
    check_profile(n, m, profile)?;
    let mut first = Vec::with_capacity(n);
    for (i, &c) in profile.counts().iter().enumerate() {
        first.extend(core::iter::repeat_n(i as u8 + 1, c));
    }
    Ok(ProfileWords {
        m,
        next: Some(first),
    })
}

/// The word of lexicographic rank `rank` among those with `profile`.
/// Lets callers split the profile class into independent index ranges.
pub fn word_with_profile_at(n: usize, m: u8, profile: &Profile, mut rank: u128) -> Result<Word> {
    check_profile(n, m, profile)?;
    let total = profile.word_count().ok_or(Error::ColourOverflow)?;
    if rank >= total {
        return Err(Error::InvalidParameter(alloc::format!(
            "rank {rank} is outside 0..{total}"
        )));
    }
    let mut counts = profile.counts().to_vec();
    let mut symbols = Vec::with_capacity(n);
    for _ in 0..n {
        for s in 0..counts.len() {
            if counts[s] == 0 {
                continue;
            }
            counts[s] -= 1;
            let below = multinomial(&counts).ok_or(Error::ColourOverflow)?;
            if rank < below {
                symbols.push(s as u8 + 1);
                break;
            }
            rank -= below;
            counts[s] += 1;
        }
    }
    Ok(Word::from_raw(symbols, m))
}

/// Iterator returned by [`enumerate_with_profile`].
#[derive(Debug, Clone)]
pub struct ProfileWords {
    m: u8,
    next: Option<Vec<u8>>,
}

impl Iterator for ProfileWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Word::from_raw(cur, self.m))
    }
}

/// All words of length `n` over `[m]`, in packed-index order.
pub fn all_words(n: usize, m: u8) -> Result<impl Iterator<Item = Word>> {
    check_alphabet(m)?;
    let size = space_size(n, m).ok_or(Error::CapacityExceeded {
        len: n,
        m,
        capacity: capacity(m) - 1,
    })?;
    Ok((0..size).map(move |i| Word::from_index(i, n, m).expect("index in range")))
}

/// Digit-string rendering without going through `Display`.
pub fn to_digits(symbols: &[u8]) -> String {
    symbols.iter().map(|&s| (b'0' + s) as char).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn packed_index_examples() {
        assert_eq!(Word::parse("111", 3).unwrap().index(), 0);
        assert_eq!(Word::parse("123", 3).unwrap().index(), 21);
        assert_eq!(Word::from_index(21, 3, 3).unwrap().to_string(), "123");
    }

    #[test]
    fn encode_errors() {
        assert_eq!(
            Word::new(&[1, 4], 3),
            Err(Error::InvalidSymbol { symbol: 4, m: 3 })
        );
        assert_eq!(
            Word::new(&[0], 3),
            Err(Error::InvalidSymbol { symbol: 0, m: 3 })
        );
        assert!(matches!(
            Word::new(&[1; 41], 3),
            Err(Error::CapacityExceeded { capacity: 40, .. })
        ));
        assert!(Word::new(&[1; 40], 3).is_ok());
        assert_eq!(Word::new(&[1], 1), Err(Error::InvalidAlphabet(1)));
        assert_eq!(capacity(2), 64);
    }

    #[test]
    fn round_trip_all_short_ternary_words() {
        for n in 0..=6 {
            for w in all_words(n, 3).unwrap() {
                let again = Word::parse(&w.to_string(), 3).unwrap();
                assert_eq!(again, w);
                assert_eq!(Word::from_index(w.index(), n, 3).unwrap(), w);
            }
        }
    }

    #[test]
    fn index_is_a_bijection_at_length_8() {
        let size = space_size(8, 3).unwrap();
        let mut seen = vec![false; size as usize];
        for w in all_words(8, 3).unwrap() {
            let i = w.index() as usize;
            assert!(!seen[i]);
            seen[i] = true;
        }
        assert!(seen.into_iter().all(|b| b));
    }

    #[test]
    fn profiles() {
        assert_eq!(
            Word::parse("2322333222", 3).unwrap().profile().counts(),
            &[0, 6, 4]
        );
        assert_eq!(
            Word::parse("111", 3).unwrap().profile().counts(),
            &[3, 0, 0]
        );
        assert_eq!(Word::parse("", 3).unwrap().profile().counts(), &[0, 0, 0]);
    }

    #[test]
    fn enumerate_with_profile_examples() {
        let p = Profile::new(&[2, 2, 1]);
        assert_eq!(enumerate_with_profile(5, 3, &p).unwrap().count(), 30);

        let words: Vec<String> = enumerate_with_profile(3, 3, &Profile::new(&[1, 1, 1]))
            .unwrap()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["123", "132", "213", "231", "312", "321"]);

        assert!(matches!(
            enumerate_with_profile(2, 2, &Profile::new(&[2, 1])),
            Err(Error::ProfileMismatch(_))
        ));
    }

    #[test]
    fn enumeration_matches_naive_filter() {
        for m in 2..=3u8 {
            for n in 0..=10usize {
                let mut by_profile = std::collections::BTreeMap::<Profile, Vec<Word>>::new();
                for w in all_words(n, m).unwrap() {
                    by_profile.entry(w.profile()).or_default().push(w);
                }
                for (p, mut naive) in by_profile {
                    naive.sort();
                    let fast: Vec<Word> = enumerate_with_profile(n, m, &p).unwrap().collect();
                    assert!(fast.windows(2).all(|w| w[0] < w[1]));
                    assert_eq!(fast.len() as u128, p.word_count().unwrap());
                    assert_eq!(fast, naive);
                }
            }
        }
    }

    #[test]
    fn unranking_matches_enumeration() {
        let p = Profile::new(&[2, 3, 2]);
        for (rank, w) in enumerate_with_profile(7, 3, &p).unwrap().enumerate() {
            assert_eq!(word_with_profile_at(7, 3, &p, rank as u128).unwrap(), w);
        }
        assert!(word_with_profile_at(7, 3, &p, 210).is_err());
    }

    proptest! {
        #[test]
        fn encode_decode_round_trip(m in 2u8..=9, symbols in proptest::collection::vec(1u8..=9, 0..20)) {
            let symbols: Vec<u8> = symbols.into_iter().map(|s| (s - 1) % m + 1).collect();
            let w = Word::new(&symbols, m).unwrap();
            prop_assert_eq!(w.symbols(), &symbols[..]);
            prop_assert_eq!(Word::from_index(w.index(), symbols.len(), m).unwrap(), w);
        }
    }
}
